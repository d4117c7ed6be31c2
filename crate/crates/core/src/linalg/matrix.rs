use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex square matrix stored row-major.
///
/// Every constructor rejects non-finite entries, so any `CMatrix` in hand is a
/// valid input for the spectral routines.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

/// Serialized form: `{"n": 2, "entries": [[re, im], ...]}` row-major.
#[derive(Serialize, Deserialize)]
struct RawMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl TryFrom<RawMatrix> for CMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        CMatrix::from_vec(raw.n, raw.entries)
    }
}

impl From<CMatrix> for RawMatrix {
    fn from(m: CMatrix) -> Self {
        RawMatrix {
            n: m.n,
            entries: m.data,
        }
    }
}

impl CMatrix {
    pub fn from_vec(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("dimension must be positive".into()));
        }
        if data.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for a {n}x{n} matrix, found {}",
                n * n,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "non-finite entry at ({}, {})",
                pos / n,
                pos % n
            )));
        }
        Ok(CMatrix { n, data })
    }

    /// Builds a matrix from rows; fails unless the rows form a square array.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!(
                "non-square input: {n} rows but a row of length {}",
                bad.len()
            )));
        }
        Self::from_vec(n, rows.concat())
    }

    /// Real-valued rows, convenient for fixtures.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "dimension must be positive");
        CMatrix {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![ONE; n])
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Crate-internal constructor for values produced by arithmetic on valid matrices.
    pub(crate) fn from_parts(n: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        CMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_parts(self.n, self.data.iter().map(|&z| z * s).collect())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == ZERO)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn mat_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨Ax, x⟩ = x* A x`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        let ax = self.mat_vec(x);
        ax.iter().zip(x).map(|(a, b)| a * b.conj()).sum()
    }

    /// `A*A`, computed on the upper triangle and mirrored so the result is
    /// exactly Hermitian.
    pub fn gram(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut s = ZERO;
                for k in 0..n {
                    s += self[(k, i)].conj() * self[(k, j)];
                }
                if i == j {
                    s.im = 0.0;
                }
                out[(i, j)] = s;
                out[(j, i)] = s.conj();
            }
        }
        out
    }

    /// Hermitian part of `e^{-iθ}A`, i.e. `(e^{-iθ}A + e^{iθ}A*)/2`.
    pub fn rotated_hermitian_part(&self, theta: f64) -> Self {
        let n = self.n;
        let phase = Complex64::from_polar(1.0, -theta);
        let mut out = Self::zeros(n);
        for i in 0..n {
            out[(i, i)] = Complex64::new((phase * self[(i, i)]).re, 0.0);
            for j in i + 1..n {
                let v = (phase * self[(i, j)] + (phase * self[(j, i)]).conj()) * 0.5;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        out
    }

    /// Frobenius norm of `H - H*` relative to the Frobenius norm of `H`.
    pub fn hermitian_deviation(&self) -> f64 {
        let scale = self.frobenius_norm();
        if scale == 0.0 {
            return 0.0;
        }
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        s.sqrt() / scale
    }

    /// Frobenius norm of the commutator `A*A - AA*`.
    pub fn commutator_norm(&self) -> f64 {
        let adj = self.adjoint();
        (&(&adj * self) - &(self * &adj)).frobenius_norm()
    }

    /// `[[self, top_right], [0, bottom_right]]`.
    pub fn block_upper(
        &self,
        top_right: &[Vec<Complex64>],
        bottom_right: &CMatrix,
    ) -> Result<CMatrix> {
        let h = self.n;
        let g = bottom_right.n;
        if top_right.len() != h {
            return Err(Error::DimensionMismatch {
                expected: h,
                found: top_right.len(),
            });
        }
        if let Some(r) = top_right.iter().find(|r| r.len() != g) {
            return Err(Error::DimensionMismatch {
                expected: g,
                found: r.len(),
            });
        }
        let n = h + g;
        let mut out = Self::zeros(n);
        for i in 0..h {
            for j in 0..h {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..g {
                out[(i, h + j)] = top_right[i][j];
            }
        }
        for i in 0..g {
            for j in 0..g {
                out[(h + i, h + j)] = bottom_right[(i, j)];
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in product");
        let n = self.n;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        CMatrix::from_parts(n, out)
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in sum");
        CMatrix::from_parts(
            self.n,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in difference");
        CMatrix::from_parts(
            self.n,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        )
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
