//! Numerical range `W(A)`, maximal numerical range `W0(A)`, peripheral
//! spectrum, normaloid classification and boundary chords.
//!
//! `W(A)` is sampled through its support function: for each direction `θ`
//! the top eigenpair `(λ, x)` of `Re(e^{-iθ}A)` gives `h(θ) = λ` and the
//! boundary point `⟨Ax, x⟩`. `W0(A)` is the numerical range of the
//! compression of `A` onto the top eigenspace of `A*A`.

mod ellipse;

pub use ellipse::{ellipse_2x2, ellipse_2x2_with, ellipse_params, Ellipse};

use std::cell::OnceCell;
use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    self, hull, project, AngleGrid, Chord, ConvexRegion, DEFAULT_ANGLES, GEO_TOL, SET_TOL,
};
use crate::linalg::{
    compress, default_cluster_tol, eigenvalues, herm_eigen, herm_eigen_warm, operator_norm,
    top_singular_subspace, CMatrix, HermEigen,
};

/// Tolerances governing all approximate set logic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Clustering width for eigenvalues of `A*A`. `None` selects
    /// `max(1e-10, 1e-8 ‖A‖²)` per matrix.
    pub tau_cluster: Option<f64>,
    pub tau_set: f64,
    pub n_angles: usize,
    pub tau_eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tau_cluster: None,
            tau_set: SET_TOL,
            n_angles: DEFAULT_ANGLES,
            tau_eig: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.tau_set) || !positive(self.tau_eig) {
            return Err(Error::InvalidSpec("tolerances must be strictly positive".into()));
        }
        if let Some(c) = self.tau_cluster {
            if !positive(c) {
                return Err(Error::InvalidSpec("tau_cluster must be strictly positive".into()));
            }
        }
        if self.n_angles < 8 {
            return Err(Error::InvalidSpec("n_angles must be at least 8".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> AngleGrid {
        AngleGrid::new(self.n_angles)
    }

    pub fn cluster_for(&self, norm: f64) -> f64 {
        self.tau_cluster.unwrap_or_else(|| default_cluster_tol(norm))
    }

    /// Copy with `tau_cluster` fixed to the value used for a matrix of the
    /// given norm.
    pub fn resolved(&self, norm: f64) -> Self {
        Tolerances {
            tau_cluster: Some(self.cluster_for(norm)),
            ..*self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub eigenvalues: Vec<Complex64>,
    /// `‖A‖`, the radius of the circle `C_A`.
    pub norm: f64,
    pub spectral_radius: f64,
    /// Eigenvalues with `|λ| ≥ ‖A‖ - tau_set`.
    pub peripheral: Vec<Complex64>,
}

impl SpectralData {
    pub fn is_peripheral_empty(&self) -> bool {
        self.peripheral.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeReport {
    pub norm: f64,
    pub numerical_radius: f64,
    pub w: ConvexRegion,
    pub w0: ConvexRegion,
    pub spectral: SpectralData,
    pub normaloid: bool,
    pub chords: Vec<Chord>,
    /// Hull of the peripheral spectrum; `None` when it is empty.
    pub hull_peripheral: Option<ConvexRegion>,
    /// `hausdorff(W0, hull_peripheral)`; `None` when the peripheral spectrum
    /// is empty.
    pub ch_equality_gap: Option<f64>,
    pub tolerances: Tolerances,
}

impl RangeReport {
    /// `w0(A) = max |z|` over `W0(A)`.
    pub fn w0(&self) -> f64 {
        self.w0.max_modulus()
    }
}

/// A boundary sample of `W(A)` in direction `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    pub theta: f64,
    /// `λ_max(Re(e^{-iθ}A))`.
    pub support: f64,
    /// `⟨Ax, x⟩` for the corresponding unit eigenvector.
    pub point: Complex64,
}

/// `λ_max(Re(e^{-iθ}A))`, the exact support function of `W(A)`.
pub fn support_value(a: &CMatrix, theta: f64) -> Result<f64> {
    if a.dim() == 1 {
        return Ok(project(a[(0, 0)], theta));
    }
    Ok(herm_eigen(&a.rotated_hermitian_part(theta))?.max_value())
}

/// Boundary samples at the given angles, in input order.
///
/// Consecutive angles reuse the previous eigenbasis as a starting guess.
pub fn boundary_samples(a: &CMatrix, angles: &[f64]) -> Result<Vec<BoundarySample>> {
    if a.dim() == 1 {
        let z = a[(0, 0)];
        return Ok(angles
            .iter()
            .map(|&theta| BoundarySample {
                theta,
                support: project(z, theta),
                point: z,
            })
            .collect());
    }
    let mut previous: Option<HermEigen> = None;
    let mut out = Vec::with_capacity(angles.len());
    for &theta in angles {
        let h = a.rotated_hermitian_part(theta);
        let eig = match &previous {
            Some(prev) => herm_eigen_warm(&h, &prev.vectors)?,
            None => herm_eigen(&h)?,
        };
        let x = eig.top_vector();
        out.push(BoundarySample {
            theta,
            support: eig.max_value(),
            point: a.quadratic_form(&x),
        });
        previous = Some(eig);
    }
    Ok(out)
}

/// Hull of the boundary points at `angles`, carrying the support samples.
pub fn numerical_range_at(a: &CMatrix, angles: &[f64]) -> Result<ConvexRegion> {
    let samples = boundary_samples(a, angles)?;
    region_from_samples(&samples)
}

fn region_from_samples(samples: &[BoundarySample]) -> Result<ConvexRegion> {
    let points: Vec<Complex64> = samples.iter().map(|s| s.point).collect();
    Ok(hull(&points)?.with_support_samples(samples.iter().map(|s| (s.theta, s.support)).collect()))
}

/// `W(A)` sampled on the tolerance grid.
pub fn numerical_range(a: &CMatrix, tol: &Tolerances) -> Result<ConvexRegion> {
    let angles: Vec<f64> = tol.grid().angles().collect();
    numerical_range_at(a, &angles)
}

/// Golden-section refinement of `max_θ h(θ)` around a grid maximum.
fn refine_radius(a: &CMatrix, center: f64, half_width: f64, best: f64) -> Result<f64> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut lo, mut hi) = (center - half_width, center + half_width);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = support_value(a, x1)?;
    let mut f2 = support_value(a, x2)?;
    let mut best = best.max(f1).max(f2);
    while hi - lo > 1e-10 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = support_value(a, x2)?;
            best = best.max(f2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = support_value(a, x1)?;
            best = best.max(f1);
        }
    }
    Ok(best)
}

fn radius_from_samples(a: &CMatrix, samples: &[(f64, f64)]) -> Result<f64> {
    let (theta, best) = samples
        .iter()
        .copied()
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .expect("non-empty grid");
    let step = TAU / samples.len() as f64;
    refine_radius(a, theta, step, best)
}

/// `w(A) = max |z|` over `W(A)`, i.e. `max_θ λ_max(Re(e^{-iθ}A))`.
pub fn numerical_radius(a: &CMatrix, tol: &Tolerances) -> Result<f64> {
    let w = numerical_range(a, tol)?;
    radius_from_samples(a, w.support_samples().expect("sampled region"))
}

/// `W0(A)`: the numerical range of the compression of `A` onto the top
/// eigenspace of `A*A`. Fails with [`Error::ZeroMatrix`] for `A = 0`.
pub fn maximal_numerical_range(a: &CMatrix, tol: &Tolerances) -> Result<ConvexRegion> {
    let norm = operator_norm(a)?;
    let v = top_singular_subspace(a, tol.cluster_for(norm))?;
    numerical_range(&compress(a, &v)?, tol)
}

pub fn peripheral_spectrum(a: &CMatrix, tol: &Tolerances) -> Result<SpectralData> {
    let norm = operator_norm(a)?;
    let eigenvalues = eigenvalues(a)?;
    let spectral_radius = eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let peripheral = eigenvalues
        .iter()
        .copied()
        .filter(|z| z.norm() >= norm - tol.tau_set)
        .collect();
    Ok(SpectralData {
        eigenvalues,
        norm,
        spectral_radius,
        peripheral,
    })
}

fn classify(spectral: &SpectralData, numerical_radius: f64, tol: &Tolerances) -> Result<bool> {
    let threshold = spectral.norm - tol.tau_set;
    let by_spectrum = spectral.spectral_radius >= threshold;
    let by_range = numerical_radius >= threshold;
    if by_spectrum != by_range {
        return Err(Error::AmbiguousClassification {
            spectral_radius: spectral.spectral_radius,
            numerical_radius,
            norm: spectral.norm,
        });
    }
    Ok(by_spectrum)
}

/// Normaloid test `r(A) ≥ ‖A‖ - tau_set`, cross-checked against
/// `w(A) ≥ ‖A‖ - tau_set`.
pub fn is_normaloid(a: &CMatrix, tol: &Tolerances) -> Result<bool> {
    Analysis::new(a, tol).normaloid()
}

/// Peripheral eigenvalues with coincident values merged, sorted by argument.
pub fn merged_peripheral(spectral: &SpectralData) -> Vec<Complex64> {
    let merge = GEO_TOL * (1.0 + spectral.norm);
    let mut pts = spectral.peripheral.clone();
    pts.sort_by(|a, b| a.arg().total_cmp(&b.arg()).then(a.norm().total_cmp(&b.norm())));
    let mut out: Vec<Complex64> = Vec::with_capacity(pts.len());
    for z in pts {
        if out.iter().all(|w| (w - z).norm() > merge) {
            out.push(z);
        }
    }
    out
}

/// Chords of `C_A` lying on `∂W(A)`, degenerate chords included.
pub fn chords_on_boundary(a: &CMatrix, tol: &Tolerances) -> Result<Vec<Chord>> {
    Analysis::new(a, tol).chords()
}

/// Full record for `A ≠ 0`.
pub fn full_report(a: &CMatrix, tol: &Tolerances) -> Result<RangeReport> {
    Analysis::new(a, tol).report()
}

/// Like [`full_report`], but the zero matrix yields `W = W0 = {0}` instead
/// of an error.
pub fn full_report_allow_zero(a: &CMatrix, tol: &Tolerances) -> Result<RangeReport> {
    if !a.is_zero() {
        return full_report(a, tol);
    }
    let origin = ConvexRegion::point(Complex64::new(0.0, 0.0));
    let grid = tol.grid();
    let w = origin
        .clone()
        .with_support_samples(grid.angles().map(|t| (t, 0.0)).collect());
    let spectral = peripheral_spectrum(a, tol)?;
    let hull_peripheral = hull(&spectral.peripheral)?;
    Ok(RangeReport {
        norm: 0.0,
        numerical_radius: 0.0,
        w: w.clone(),
        w0: w,
        normaloid: true,
        chords: vec![Chord::point(origin.vertices()[0])],
        ch_equality_gap: Some(geometry::hausdorff_on(&origin, &hull_peripheral, &grid)),
        hull_peripheral: Some(hull_peripheral),
        spectral,
        tolerances: tol.resolved(0.0),
    })
}

/// Lazily computed quantities for one matrix, shared between the public
/// operations and the checkers so each expensive piece is computed once.
pub struct Analysis<'a> {
    a: &'a CMatrix,
    tol: Tolerances,
    grid: AngleGrid,
    spectral: OnceCell<SpectralData>,
    w: OnceCell<ConvexRegion>,
    w0: OnceCell<ConvexRegion>,
    radius: OnceCell<f64>,
}

impl<'a> Analysis<'a> {
    pub fn new(a: &'a CMatrix, tol: &Tolerances) -> Self {
        Analysis {
            a,
            tol: *tol,
            grid: tol.grid(),
            spectral: OnceCell::new(),
            w: OnceCell::new(),
            w0: OnceCell::new(),
            radius: OnceCell::new(),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        self.a
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn grid(&self) -> &AngleGrid {
        &self.grid
    }

    pub fn spectral(&self) -> Result<&SpectralData> {
        if let Some(s) = self.spectral.get() {
            return Ok(s);
        }
        let s = peripheral_spectrum(self.a, &self.tol)?;
        Ok(self.spectral.get_or_init(|| s))
    }

    pub fn norm(&self) -> Result<f64> {
        Ok(self.spectral()?.norm)
    }

    pub fn w(&self) -> Result<&ConvexRegion> {
        if let Some(w) = self.w.get() {
            return Ok(w);
        }
        let w = numerical_range(self.a, &self.tol)?;
        Ok(self.w.get_or_init(|| w))
    }

    pub fn w0(&self) -> Result<&ConvexRegion> {
        if let Some(w0) = self.w0.get() {
            return Ok(w0);
        }
        let v = top_singular_subspace(self.a, self.tol.cluster_for(self.norm()?))?;
        let w0 = numerical_range(&compress(self.a, &v)?, &self.tol)?;
        Ok(self.w0.get_or_init(|| w0))
    }

    pub fn numerical_radius(&self) -> Result<f64> {
        if let Some(r) = self.radius.get() {
            return Ok(*r);
        }
        let samples = self.w()?.support_samples().expect("sampled region");
        let r = radius_from_samples(self.a, samples)?;
        Ok(*self.radius.get_or_init(|| r))
    }

    pub fn normaloid(&self) -> Result<bool> {
        classify(self.spectral()?, self.numerical_radius()?, &self.tol)
    }

    /// `W(A)` resampled on the grid plus the normals of every candidate chord.
    fn w_with_chord_normals(&self, peripheral: &[Complex64]) -> Result<ConvexRegion> {
        let mut angles: Vec<f64> = self.grid.angles().collect();
        for (i, &p) in peripheral.iter().enumerate() {
            for &q in &peripheral[i + 1..] {
                let phi = (q - p).arg();
                angles.push((phi - FRAC_PI_2).rem_euclid(TAU));
                angles.push((phi + FRAC_PI_2).rem_euclid(TAU));
            }
        }
        angles.sort_by(f64::total_cmp);
        numerical_range_at(self.a, &angles)
    }

    pub fn chords(&self) -> Result<Vec<Chord>> {
        let peripheral = merged_peripheral(self.spectral()?);
        if peripheral.is_empty() {
            return Ok(Vec::new());
        }
        let region = if peripheral.len() >= 2 {
            self.w_with_chord_normals(&peripheral)?
        } else {
            self.w()?.clone()
        };
        let mut chords = Vec::new();
        let mut is_endpoint = vec![false; peripheral.len()];
        for i in 0..peripheral.len() {
            for j in i + 1..peripheral.len() {
                let chord = Chord::new(peripheral[i], peripheral[j]);
                if geometry::segment_on_boundary_on(&region, &chord, self.tol.tau_set, &self.grid)? {
                    chords.push(chord);
                    is_endpoint[i] = true;
                    is_endpoint[j] = true;
                }
            }
        }
        for (z, used) in peripheral.iter().zip(is_endpoint) {
            if !used {
                chords.push(Chord::point(*z));
            }
        }
        Ok(chords)
    }

    pub fn hull_peripheral(&self) -> Result<Option<ConvexRegion>> {
        let spectral = self.spectral()?;
        if spectral.peripheral.is_empty() {
            return Ok(None);
        }
        Ok(Some(hull(&spectral.peripheral)?))
    }

    pub fn report(&self) -> Result<RangeReport> {
        if self.a.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        let hull_peripheral = self.hull_peripheral()?;
        let ch_equality_gap = match &hull_peripheral {
            Some(h) => Some(geometry::hausdorff_on(self.w0()?, h, &self.grid)),
            None => None,
        };
        Ok(RangeReport {
            norm: self.norm()?,
            numerical_radius: self.numerical_radius()?,
            w: self.w()?.clone(),
            w0: self.w0()?.clone(),
            spectral: self.spectral()?.clone(),
            normaloid: self.normaloid()?,
            chords: self.chords()?,
            hull_peripheral,
            ch_equality_gap,
            tolerances: self.tol.resolved(self.norm()?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn example() -> CMatrix {
        CMatrix::from_real_rows(&[&[0., 1., 0.], &[0., 0., 0.], &[0., 0., 1.]]).unwrap()
    }

    fn jordan() -> CMatrix {
        CMatrix::from_real_rows(&[&[0., 1.], &[0., 0.]]).unwrap()
    }

    fn unitary_diag() -> CMatrix {
        CMatrix::diagonal(&[c(1., 0.), c(-1., 0.), c(0., 1.)])
    }

    fn disk(r: f64) -> ConvexRegion {
        let pts: Vec<Complex64> = (0..1440)
            .map(|k| Complex64::from_polar(r, TAU * k as f64 / 1440.0))
            .collect();
        hull(&pts).unwrap()
    }

    #[test]
    fn example_range_is_ice_cone() {
        let tol = Tolerances::default();
        let w = numerical_range(&example(), &tol).unwrap();
        for (t, h) in tol.grid().angles().zip(w.support_on(&tol.grid())) {
            assert!((h - f64::max(0.5, t.cos())).abs() < 1e-12, "θ = {t}");
        }
    }

    #[test]
    fn trivial_ranges() {
        let tol = Tolerances::default();
        let w = numerical_range(&CMatrix::identity(3), &tol).unwrap();
        assert!(w.is_point());
        assert!((w.vertices()[0] - c(1., 0.)).norm() < 1e-12);
        let w = numerical_range(&jordan(), &tol).unwrap();
        assert!(geometry::hausdorff(&w, &disk(0.5)) < 1e-5);
    }

    #[test]
    fn radii() {
        let tol = Tolerances::default();
        assert!((numerical_radius(&example(), &tol).unwrap() - 1.0).abs() < 1e-8);
        assert!((numerical_radius(&CMatrix::identity(3), &tol).unwrap() - 1.0).abs() < 1e-8);
        assert!((numerical_radius(&jordan(), &tol).unwrap() - 0.5).abs() < 1e-8);
    }

    #[test]
    fn maximal_ranges() {
        let tol = Tolerances::default();
        let w0 = maximal_numerical_range(&example(), &tol).unwrap();
        let seg = hull(&[c(0., 0.), c(1., 0.)]).unwrap();
        assert!(geometry::hausdorff(&w0, &seg) < 1e-9);
        let w0 = maximal_numerical_range(&jordan(), &tol).unwrap();
        assert!(w0.is_point() && w0.vertices()[0].norm() < 1e-12);
        let w0 = maximal_numerical_range(&unitary_diag(), &tol).unwrap();
        let tri = hull(&[c(1., 0.), c(-1., 0.), c(0., 1.)]).unwrap();
        assert!(geometry::hausdorff(&w0, &tri) < 1e-9);
        assert_eq!(
            maximal_numerical_range(&CMatrix::zeros(2), &tol),
            Err(Error::ZeroMatrix)
        );
    }

    #[test]
    fn peripheral_sets() {
        let tol = Tolerances::default();
        let s = peripheral_spectrum(&example(), &tol).unwrap();
        assert_eq!(s.peripheral.len(), 1);
        assert!((s.peripheral[0] - c(1., 0.)).norm() < 1e-12);
        let s = peripheral_spectrum(&unitary_diag(), &tol).unwrap();
        assert_eq!(s.peripheral.len(), 3);
        let s = peripheral_spectrum(&jordan(), &tol).unwrap();
        assert!(s.peripheral.is_empty());
        assert!(s.spectral_radius < 1e-12);
    }

    #[test]
    fn normaloid_examples() {
        let tol = Tolerances::default();
        assert!(is_normaloid(&example(), &tol).unwrap());
        assert!(is_normaloid(&CMatrix::identity(3), &tol).unwrap());
        assert!(!is_normaloid(&jordan(), &tol).unwrap());
    }

    #[test]
    fn chord_examples() {
        let tol = Tolerances::default();
        let chords = chords_on_boundary(&example(), &tol).unwrap();
        assert_eq!(chords.len(), 1);
        assert!(chords[0].is_degenerate());
        assert!((chords[0].a - c(1., 0.)).norm() < 1e-12);

        let d = CMatrix::diagonal(&[c(1., 0.), c(-1., 0.)]);
        let chords = chords_on_boundary(&d, &tol).unwrap();
        assert_eq!(chords.len(), 1);
        assert!((chords[0].length() - 2.0).abs() < 1e-12);

        assert!(chords_on_boundary(&jordan(), &tol).unwrap().is_empty());

        // triangle inscribed in the unit circle: every edge is a boundary chord
        let chords = chords_on_boundary(&unitary_diag(), &tol).unwrap();
        assert_eq!(chords.len(), 3);
        assert!(chords.iter().all(|c| !c.is_degenerate()));
    }

    #[test]
    fn reports() {
        let tol = Tolerances::default();
        let r = full_report(&example(), &tol).unwrap();
        assert!(r.normaloid);
        assert!((r.ch_equality_gap.unwrap() - 1.0).abs() < 1e-6);
        assert!((r.w0() - 1.0).abs() < 1e-12);

        let r = full_report(&unitary_diag(), &tol).unwrap();
        assert!(r.ch_equality_gap.unwrap() <= tol.tau_set);

        let r = full_report(&jordan(), &tol).unwrap();
        assert!(!r.normaloid);
        assert!(r.chords.is_empty());
        assert!(r.hull_peripheral.is_none() && r.ch_equality_gap.is_none());

        assert_eq!(full_report(&CMatrix::zeros(2), &tol), Err(Error::ZeroMatrix));
        let z = full_report_allow_zero(&CMatrix::zeros(2), &tol).unwrap();
        assert!(z.w.is_point() && z.w0.is_point() && z.normaloid);
    }

    #[test]
    fn support_value_matches_formula() {
        for k in 0..16 {
            let t = k as f64 * PI / 8.0;
            let h = support_value(&example(), t).unwrap();
            assert!((h - f64::max(0.5, t.cos())).abs() < 1e-14);
        }
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerances::default().validate().is_ok());
        let bad = Tolerances {
            n_angles: 4,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = Tolerances {
            tau_set: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
