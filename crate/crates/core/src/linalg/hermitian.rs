//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

/// Relative tolerance on `‖H - H*‖_F / ‖H‖_F` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Sweeps stop once the off-diagonal Frobenius mass drops below this
/// fraction of `‖H‖_F`.
const OFF_DIAGONAL_TOL: f64 = 1e-14;

const MAX_SWEEPS: usize = 60;

/// Eigen-decomposition of a Hermitian matrix. `values` ascend and column `i`
/// of `vectors` is the unit eigenvector for `values[i]`.
#[derive(Debug, Clone)]
pub struct HermEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermEigen {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }

    pub fn max_value(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    /// Unit eigenvector of the largest eigenvalue.
    pub fn top_vector(&self) -> Vec<Complex64> {
        self.vector(self.values.len() - 1)
    }
}

/// Full eigen-decomposition of a Hermitian matrix.
pub fn herm_eigen(h: &CMatrix) -> Result<HermEigen> {
    let work = symmetrized(h)?;
    let basis = CMatrix::identity(h.dim());
    jacobi(work, basis)
}

/// Same as [`herm_eigen`], but starts from an approximate eigenbasis.
///
/// `guess` is re-orthonormalized first; the Jacobi sweeps then run on
/// `guess* H guess`, which is nearly diagonal when `guess` comes from a
/// neighbouring problem, so one or two sweeps usually suffice.
pub fn herm_eigen_warm(h: &CMatrix, guess: &CMatrix) -> Result<HermEigen> {
    if guess.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: guess.dim(),
        });
    }
    let h = symmetrized(h)?;
    let Some(q) = orthonormalize_columns(guess) else {
        let n = h.dim();
        return jacobi(h, CMatrix::identity(n));
    };
    let rotated = &(&q.adjoint() * &h) * &q;
    jacobi(force_hermitian(rotated), q)
}

fn symmetrized(h: &CMatrix) -> Result<CMatrix> {
    let deviation = h.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(force_hermitian(h.clone()))
}

fn force_hermitian(mut h: CMatrix) -> CMatrix {
    let n = h.dim();
    for i in 0..n {
        h[(i, i)].im = 0.0;
        for j in i + 1..n {
            let avg = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            h[(i, j)] = avg;
            h[(j, i)] = avg.conj();
        }
    }
    h
}

/// Modified Gram-Schmidt on the columns; `None` if they are (numerically)
/// dependent.
fn orthonormalize_columns(m: &CMatrix) -> Option<CMatrix> {
    let n = m.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| m.column(j)).collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = cols[k].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
            let (done, rest) = cols.split_at_mut(j);
            for (x, y) in rest[0].iter_mut().zip(&done[k]) {
                *x -= proj * y;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 0.5 {
            return None;
        }
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    let mut out = CMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            out[(i, j)] = z;
        }
    }
    Some(out)
}

fn off_diagonal_mass(h: &CMatrix) -> f64 {
    let n = h.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += h[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(mut h: CMatrix, mut v: CMatrix) -> Result<HermEigen> {
    let n = h.dim();
    let scale = h.frobenius_norm();
    let threshold = OFF_DIAGONAL_TOL * scale;
    let mut converged = scale == 0.0 || n == 1;
    let mut sweeps = 0;
    while !converged {
        if off_diagonal_mass(&h) <= threshold {
            converged = true;
            break;
        }
        if sweeps == MAX_SWEEPS {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut h, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::EigenFailure { iterations: sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h[(i, i)].re.total_cmp(&h[(j, j)].re));
    let values = order.iter().map(|&i| h[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(HermEigen { values, vectors })
}

/// Annihilates `h[p][q]` with the unitary `diag(1, e^{-iφ}) · R(c, s)` acting
/// on coordinates `p, q`, where `e^{iφ}` is the phase of `h[p][q]`.
fn rotate(h: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let hpq = h[(p, q)];
    let g = hpq.norm();
    if g == 0.0 {
        return;
    }
    let a = h[(p, p)].re;
    let b = h[(q, q)].re;
    let tau = (b - a) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase = (hpq / g).conj();
    let g00 = Complex64::new(c, 0.0);
    let g01 = Complex64::new(s, 0.0);
    let g10 = phase * -s;
    let g11 = phase * c;

    let n = h.dim();
    for k in 0..n {
        let x = h[(k, p)];
        let y = h[(k, q)];
        h[(k, p)] = x * g00 + y * g10;
        h[(k, q)] = x * g01 + y * g11;
    }
    for k in 0..n {
        let x = h[(p, k)];
        let y = h[(q, k)];
        h[(p, k)] = g00.conj() * x + g10.conj() * y;
        h[(q, k)] = g01.conj() * x + g11.conj() * y;
    }
    h[(p, q)] = Complex64::new(0.0, 0.0);
    h[(q, p)] = Complex64::new(0.0, 0.0);
    h[(p, p)] = Complex64::new(a - t * g, 0.0);
    h[(q, q)] = Complex64::new(b + t * g, 0.0);

    for k in 0..n {
        let x = v[(k, p)];
        let y = v[(k, q)];
        v[(k, p)] = x * g00 + y * g10;
        v[(k, q)] = x * g01 + y * g11;
    }
}
