//! Dense complex matrices and the spectral primitives built on them.

mod eigen;
mod hermitian;
mod matrix;

pub use eigen::eigenvalues;
pub use hermitian::{herm_eigen, herm_eigen_warm, HermEigen, HERMITIAN_TOL};
pub use matrix::CMatrix;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Subspace of `C^n` given by an orthonormal basis (stored column by column).
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vec<Complex64>>,
}

impl Subspace {
    /// Wraps a list of columns; they must be orthonormal to within `1e-10`.
    pub fn from_columns(n: usize, basis: Vec<Vec<Complex64>>) -> Result<Self> {
        if basis.is_empty() || basis.len() > n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: basis.len(),
            });
        }
        if let Some(col) = basis.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: col.len(),
            });
        }
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate().skip(i) {
                let dot: Complex64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                if (dot - expect).norm() > 1e-10 {
                    return Err(Error::InvalidMatrix(format!(
                        "subspace basis is not orthonormal (column pair {i}, {j})"
                    )));
                }
            }
        }
        Ok(Subspace { n, basis })
    }

    /// Span of the given standard basis vectors.
    pub fn standard(n: usize, indices: &[usize]) -> Result<Self> {
        let basis = indices
            .iter()
            .map(|&i| {
                let mut e = vec![Complex64::new(0.0, 0.0); n];
                *e.get_mut(i).ok_or(Error::DimensionMismatch { expected: n, found: i + 1 })? =
                    Complex64::new(1.0, 0.0);
                Ok(e)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(n, basis)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Complex64>] {
        &self.basis
    }

    /// Orthogonal projector onto the subspace, as an `n x n` matrix.
    pub fn projector(&self) -> CMatrix {
        let mut p = CMatrix::zeros(self.n);
        for col in &self.basis {
            for i in 0..self.n {
                for j in 0..self.n {
                    p[(i, j)] += col[i] * col[j].conj();
                }
            }
        }
        p
    }
}

/// Largest singular value.
pub fn operator_norm(a: &CMatrix) -> Result<f64> {
    let eig = herm_eigen(&a.gram())?;
    Ok(eig.max_value().max(0.0).sqrt())
}

/// Cluster tolerance on eigenvalues of `A*A`: `max(1e-10, 1e-8 ‖A‖²)`.
pub fn default_cluster_tol(norm: f64) -> f64 {
    f64::max(1e-10, 1e-8 * norm * norm)
}

/// Orthonormal basis of the span of eigenvectors of `A*A` whose eigenvalue is
/// within `cluster_tol` of the largest one.
pub fn top_singular_subspace(a: &CMatrix, cluster_tol: f64) -> Result<Subspace> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let eig = herm_eigen(&a.gram())?;
    let top = eig.max_value();
    let basis = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= top - cluster_tol)
        .map(|(i, _)| eig.vector(i))
        .collect();
    Ok(Subspace {
        n: a.dim(),
        basis,
    })
}

/// `V* A V` for the isometry `V` whose columns are the basis of `subspace`.
pub fn compress(a: &CMatrix, subspace: &Subspace) -> Result<CMatrix> {
    if subspace.n != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: subspace.n,
        });
    }
    let k = subspace.dim();
    let images: Vec<Vec<Complex64>> = subspace.basis.iter().map(|v| a.mat_vec(v)).collect();
    let mut out = Vec::with_capacity(k * k);
    for u in &subspace.basis {
        for av in &images {
            out.push(u.iter().zip(av).map(|(x, y)| x.conj() * y).sum());
        }
    }
    Ok(CMatrix::from_parts(k, out))
}
