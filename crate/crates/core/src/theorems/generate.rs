use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rng::MatrixRng;
use crate::error::{Error, Result};
use crate::linalg::{operator_norm, CMatrix, HERMITIAN_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", try_from = "String", into = "String")]
pub enum Family {
    Ginibre,
    Normal,
    Unitary,
    Nilpotent,
    NormaloidDirectSum,
    BlockUpperNormal,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Ginibre,
        Family::Normal,
        Family::Unitary,
        Family::Nilpotent,
        Family::NormaloidDirectSum,
        Family::BlockUpperNormal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Ginibre => "ginibre",
            Family::Normal => "normal",
            Family::Unitary => "unitary",
            Family::Nilpotent => "nilpotent",
            Family::NormaloidDirectSum => "normaloid_direct_sum",
            Family::BlockUpperNormal => "block_upper_normal",
        }
    }

    /// Stable numeric id used in seed derivation.
    pub fn id(&self) -> u64 {
        *self as u64 + 1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family `{s}`")))
    }
}

impl TryFrom<String> for Family {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.name().to_string()
    }
}

/// A reproducible draw: the same spec always yields a bit-identical matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub seed: u64,
    /// Matrix size; for `block_upper_normal` the size of the top-left block.
    pub dim: usize,
    pub family: Family,
    /// Size of the bottom-right block for `block_upper_normal`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_dim: Option<usize>,
}

impl GenSpec {
    pub fn new(family: Family, dim: usize, seed: u64) -> Self {
        GenSpec {
            seed,
            dim,
            family,
            tail_dim: None,
        }
    }
}

/// `N = [[A, B], [0, C]]` with `N` normal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockExtension {
    pub a: CMatrix,
    /// `h x g` block, row-major.
    pub b: Vec<Vec<Complex64>>,
    pub c: CMatrix,
    pub n: CMatrix,
}

impl BlockExtension {
    /// Assembles `N` and rejects it unless `‖N*N - NN*‖_F ≤ 1e-12 ‖N‖_F²`.
    pub fn new(a: CMatrix, b: Vec<Vec<Complex64>>, c: CMatrix) -> Result<Self> {
        let n = a.block_upper(&b, &c)?;
        check_normal(&n)?;
        Ok(BlockExtension { a, b, c, n })
    }
}

/// Normality within `1e-12 ‖N‖_F²` on the Frobenius commutator.
pub fn check_normal(m: &CMatrix) -> Result<()> {
    let commutator = m.commutator_norm();
    if commutator > HERMITIAN_TOL * m.frobenius_norm().powi(2) {
        return Err(Error::NotNormal { commutator });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub matrix: CMatrix,
    pub extension: Option<BlockExtension>,
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    let n = spec.dim;
    if n == 0 {
        return Err(Error::InvalidSpec("dim must be at least 1".into()));
    }
    let mut rng = MatrixRng::new(spec.seed);
    let matrix = match spec.family {
        Family::Ginibre => ginibre(&mut rng, n),
        Family::Unitary => haar_unitary(&mut rng, n),
        Family::Normal => {
            let eigs: Vec<Complex64> = (0..n).map(|_| rng.unit_disk()).collect();
            unitary_similarity(&mut rng, &CMatrix::diagonal(&eigs))
        }
        Family::Nilpotent => {
            if n < 2 {
                return Err(Error::InvalidSpec(
                    "nilpotent draws need dim >= 2 (dim 1 is the zero matrix)".into(),
                ));
            }
            let mut m = ginibre(&mut rng, n);
            for i in 0..n {
                for j in 0..=i {
                    m[(i, j)] = Complex64::new(0.0, 0.0);
                }
            }
            m
        }
        Family::NormaloidDirectSum => {
            let phase = rng.unit_circle();
            let mut m = CMatrix::zeros(n);
            m[(0, 0)] = phase;
            if n > 1 {
                let k = ginibre(&mut rng, n - 1);
                let target = rng.uniform_in(0.2, 0.9);
                let k = k.scale(Complex64::new(target / operator_norm(&k)?, 0.0));
                for i in 0..n - 1 {
                    for j in 0..n - 1 {
                        m[(i + 1, j + 1)] = k[(i, j)];
                    }
                }
            }
            unitary_similarity(&mut rng, &m)
        }
        Family::BlockUpperNormal => {
            let g = spec.tail_dim.ok_or_else(|| {
                Error::InvalidSpec("block_upper_normal needs tail_dim".into())
            })?;
            if g == 0 {
                return Err(Error::InvalidSpec("tail_dim must be at least 1".into()));
            }
            let top: Vec<Complex64> = (0..n).map(|_| rng.unit_disk()).collect();
            // the bottom block never exceeds the top block in norm, so ‖A‖ = ‖N‖
            let top_norm = top.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let bottom: Vec<Complex64> = (0..g).map(|_| rng.unit_disk() * top_norm).collect();
            let a = unitary_similarity(&mut rng, &CMatrix::diagonal(&top));
            let c = unitary_similarity(&mut rng, &CMatrix::diagonal(&bottom));
            let b = vec![vec![Complex64::new(0.0, 0.0); g]; n];
            let ext = BlockExtension::new(a, b, c)?;
            return Ok(Generated {
                matrix: ext.n.clone(),
                extension: Some(ext),
            });
        }
    };
    Ok(Generated {
        matrix,
        extension: None,
    })
}

pub fn ginibre(rng: &mut MatrixRng, n: usize) -> CMatrix {
    let data = (0..n * n).map(|_| rng.complex_normal()).collect();
    CMatrix::from_parts(n, data)
}

/// Q factor of a Ginibre draw, with the phases of `R`'s diagonal moved into
/// `Q` so the distribution is Haar.
pub fn haar_unitary(rng: &mut MatrixRng, n: usize) -> CMatrix {
    let g = ginibre(rng, n);
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| g.column(j)).collect();
    for j in 0..n {
        // two passes of modified Gram-Schmidt keep Q orthonormal to rounding
        for _ in 0..2 {
            for k in 0..j {
                let proj: Complex64 = cols[k].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                let (done, rest) = cols.split_at_mut(j);
                for (x, y) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= proj * y;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    let mut q = CMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            q[(i, j)] = z;
        }
    }
    q
}

/// `U M U*` for a fresh Haar unitary `U`.
pub fn unitary_similarity(rng: &mut MatrixRng, m: &CMatrix) -> CMatrix {
    let u = haar_unitary(rng, m.dim());
    &(&u * m) * &u.adjoint()
}
