//! Closed-form numerical range of a 2x2 matrix (elliptical range theorem).
//!
//! `W(A)` is the closed elliptical disk with foci at the eigenvalues
//! `λ1, λ2` and minor semi-axis `sqrt(tr(A*A) - |λ1|² - |λ2|²) / 2`. The
//! eigenvalues come from the characteristic polynomial, independently of the
//! iterative eigensolvers.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{hull, project, ConvexRegion};
use crate::linalg::CMatrix;

pub const ELLIPSE_VERTICES: usize = 720;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub center: Complex64,
    pub foci: (Complex64, Complex64),
    /// Direction of the major axis, radians.
    pub orientation: f64,
    pub semi_major: f64,
    pub semi_minor: f64,
}

impl Ellipse {
    /// Exact support function.
    pub fn support(&self, theta: f64) -> f64 {
        let phi = theta - self.orientation;
        project(self.center, theta)
            + (self.semi_major.powi(2) * phi.cos().powi(2)
                + self.semi_minor.powi(2) * phi.sin().powi(2))
            .sqrt()
    }

    /// Boundary point at parameter `t`.
    pub fn point(&self, t: f64) -> Complex64 {
        self.center
            + Complex64::from_polar(1.0, self.orientation)
                * Complex64::new(self.semi_major * t.cos(), self.semi_minor * t.sin())
    }
}

pub fn ellipse_params(a: &CMatrix) -> Result<Ellipse> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: a.dim(),
        });
    }
    let half_trace = a.trace() * 0.5;
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    let root = (half_trace * half_trace - det).sqrt();
    let (l1, l2) = (half_trace + root, half_trace - root);
    let frob2 = a.frobenius_norm().powi(2);
    let semi_minor = ((frob2 - l1.norm_sqr() - l2.norm_sqr()).max(0.0) / 4.0).sqrt();
    let focal = root.norm();
    Ok(Ellipse {
        center: half_trace,
        foci: (l1, l2),
        orientation: if focal == 0.0 { 0.0 } else { root.arg() },
        semi_major: (semi_minor * semi_minor + focal * focal).sqrt(),
        semi_minor,
    })
}

/// `W(A)` for 2x2 `A` as a hull of 720 boundary points, uniformly spaced in
/// the ellipse parameter.
pub fn ellipse_2x2(a: &CMatrix) -> Result<ConvexRegion> {
    ellipse_2x2_with(a, ELLIPSE_VERTICES)
}

pub fn ellipse_2x2_with(a: &CMatrix, vertices: usize) -> Result<ConvexRegion> {
    let e = ellipse_params(a)?;
    let pts: Vec<Complex64> = (0..vertices)
        .map(|k| e.point(TAU * k as f64 / vertices as f64))
        .collect();
    hull(&pts)
}
