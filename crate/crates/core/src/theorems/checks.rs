//! One executable checker per structural fact about `W`, `W0` and the
//! peripheral spectrum.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::generate::{check_normal, BlockExtension, GenSpec};
use super::rng::MatrixRng;
use crate::error::{Error, Result};
use crate::geometry::{
    self, point_set_distance, project, segment_set_distance, Chord,
};
use crate::linalg::{herm_eigen, operator_norm, CMatrix};
use crate::numrange::{
    ellipse_2x2, ellipse_params, merged_peripheral, numerical_range, support_value, Analysis,
    Tolerances,
};

/// Hausdorff bound for the 2x2 elliptical-range comparison.
pub const ELLIPSE_ORACLE_TOL: f64 = 1e-5;

/// Lower bound on `hausdorff(W0(E), conv σ_per(E))` asserted by the
/// strict-inclusion regression.
pub const CH_FAILURE_THRESHOLD: f64 = 0.5;

/// Points sampled along each segment in segment-union distances.
const SEGMENT_SAMPLES: usize = 65;

/// Seed of the default 2x2 boundary-condition battery.
pub const BOUNDARY_2X2_SEED: u64 = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Checker {
    Lemma1,
    Theorem1,
    CorollaryChords,
    Theorem2,
    ChMayFail,
    BlockExtension,
    Boundary2x2,
    Ellipse2x2,
    Containment,
}

impl Checker {
    pub const ALL: [Checker; 9] = [
        Checker::Lemma1,
        Checker::Theorem1,
        Checker::CorollaryChords,
        Checker::Theorem2,
        Checker::ChMayFail,
        Checker::BlockExtension,
        Checker::Boundary2x2,
        Checker::Ellipse2x2,
        Checker::Containment,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Checker::Lemma1 => "lemma1",
            Checker::Theorem1 => "theorem1",
            Checker::CorollaryChords => "corollary_chords",
            Checker::Theorem2 => "theorem2",
            Checker::ChMayFail => "ch_may_fail",
            Checker::BlockExtension => "block_extension",
            Checker::Boundary2x2 => "boundary_2x2",
            Checker::Ellipse2x2 => "ellipse_2x2",
            Checker::Containment => "containment",
        }
    }
}

impl fmt::Display for Checker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Checker {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Checker::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown checker `{s}`")))
    }
}

impl TryFrom<String> for Checker {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Checker> for String {
    fn from(c: Checker) -> String {
        c.name().to_string()
    }
}

/// How the measured gap is compared against the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub matrix: CMatrix,
    #[serde(with = "extended_f64")]
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// The classification was ambiguous at this tolerance; not a failure.
    #[serde(default)]
    pub inconclusive: bool,
    #[serde(with = "extended_f64")]
    pub gap: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub draw: Option<GenSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    /// `passed` iff `gap ≤ tolerance`; failures carry `matrix` as witness.
    pub fn at_most(name: &str, gap: f64, tolerance: f64, matrix: &CMatrix) -> Self {
        Self::judge(name, gap, tolerance, Comparison::AtMost, matrix)
    }

    /// `passed` iff `gap ≥ tolerance`.
    pub fn at_least(name: &str, gap: f64, tolerance: f64, matrix: &CMatrix) -> Self {
        Self::judge(name, gap, tolerance, Comparison::AtLeast, matrix)
    }

    fn judge(name: &str, gap: f64, tolerance: f64, comparison: Comparison, m: &CMatrix) -> Self {
        let passed = match comparison {
            Comparison::AtMost => gap <= tolerance,
            Comparison::AtLeast => gap >= tolerance,
        };
        CheckResult {
            name: name.to_string(),
            passed,
            inconclusive: false,
            gap,
            tolerance,
            comparison,
            draw: None,
            witness: (!passed).then(|| Witness {
                matrix: m.clone(),
                gap,
            }),
            note: None,
        }
    }

    /// Failed check caused by an error rather than a measured gap.
    pub fn errored(name: &str, err: &Error, matrix: Option<&CMatrix>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: false,
            inconclusive: false,
            gap: f64::INFINITY,
            tolerance: 0.0,
            comparison: Comparison::AtMost,
            draw: None,
            witness: matrix.map(|m| Witness {
                matrix: m.clone(),
                gap: f64::INFINITY,
            }),
            note: Some(err.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Re-judges against a different tolerance.
    pub fn rejudged(mut self, tolerance: f64, matrix: &CMatrix) -> Self {
        if self.inconclusive {
            self.tolerance = tolerance;
            return self;
        }
        let fresh = Self::judge(&self.name, self.gap, tolerance, self.comparison, matrix);
        self.passed = fresh.passed;
        self.tolerance = tolerance;
        self.witness = fresh.witness;
        self
    }
}

/// Infinite gaps (empty vs non-empty sets) serialize as the string `"inf"`.
mod extended_f64 {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if x.is_infinite() && *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*x)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) if t == "inf" => Ok(f64::INFINITY),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("invalid number `{t}`"))),
        }
    }
}

/// The fixed matrix `[[0,1,0],[0,0,0],[0,0,1]]` whose maximal numerical range
/// is strictly larger than the hull of its peripheral spectrum.
pub fn example_matrix() -> CMatrix {
    CMatrix::from_real_rows(&[&[0., 1., 0.], &[0., 0., 0.], &[0., 0., 1.]])
        .expect("valid fixture")
}

fn on_circle(points: &[Complex64], radius: f64, tol: f64) -> Vec<Complex64> {
    points
        .iter()
        .copied()
        .filter(|z| z.norm() >= radius - tol)
        .collect()
}

/// The three sets `{W0 vertices on C_A}`, `{W vertices on C_A}` and the
/// peripheral spectrum must coincide.
pub fn lemma1(an: &Analysis) -> Result<CheckResult> {
    let tol = an.tolerances().tau_set;
    let norm = an.norm()?;
    let from_w0 = on_circle(an.w0()?.vertices(), norm, tol);
    let from_w = on_circle(an.w()?.vertices(), norm, tol);
    let peripheral = merged_peripheral(an.spectral()?);
    let gap = point_set_distance(&from_w0, &from_w)
        .max(point_set_distance(&from_w0, &peripheral))
        .max(point_set_distance(&from_w, &peripheral));
    Ok(CheckResult::at_most("lemma1", gap, tol, an.matrix()))
}

pub fn check_lemma1(a: &CMatrix, tol: &Tolerances) -> Result<CheckResult> {
    lemma1(&Analysis::new(a, tol))
}

/// Normaloid iff `W0` reaches `∂W`.
///
/// The gap is 0 when the two indicators agree and `1 + margin` otherwise,
/// where `margin` is the smallest support gap between `W0` and `W`.
pub fn theorem1(an: &Analysis) -> Result<CheckResult> {
    let tol = an.tolerances().tau_set;
    let normaloid = match an.normaloid() {
        Ok(v) => v,
        Err(err @ Error::AmbiguousClassification { .. }) => {
            let mut r = CheckResult::at_most("theorem1", 0.0, 0.0, an.matrix());
            r.inconclusive = true;
            return Ok(r.with_note(err.to_string()));
        }
        Err(e) => return Err(e),
    };
    let margin = geometry::support_margin(an.w0()?, an.w()?, tol, an.grid())?;
    let touches = margin <= tol;
    let gap = if touches == normaloid { 0.0 } else { 1.0 + margin.max(0.0) };
    Ok(CheckResult::at_most("theorem1", gap, 0.0, an.matrix())
        .with_note(format!("normaloid={normaloid} touches={touches} margin={margin:e}")))
}

pub fn check_theorem1(a: &CMatrix, tol: &Tolerances) -> Result<CheckResult> {
    theorem1(&Analysis::new(a, tol))
}

/// Direct scan of `W0 ∩ ∂W`: edges and vertices of the sampled `W0` whose
/// support gap to `W` is within `tau_set`, judged with the exact support of
/// `W` at the relevant normals.
pub fn scan_boundary_intersection(an: &Analysis) -> Result<Vec<Chord>> {
    let tol = an.tolerances().tau_set;
    let a = an.matrix();
    let w = an.w()?;
    let w0 = an.w0()?;
    let grid = an.grid();
    let h_grid = w.support_on(grid);

    // `w.support` is a lower bound of the true support, so points far below
    // it are skipped without an eigensolve.
    let touches_at = |z: Complex64, theta: f64| -> Result<bool> {
        if project(z, theta) < w.support(theta) - tol {
            return Ok(false);
        }
        Ok(project(z, theta) >= support_value(a, theta)? - tol)
    };
    let touches_on_grid = |z: Complex64, in_cone: &dyn Fn(f64) -> bool| {
        grid.angles()
            .zip(&h_grid)
            .any(|(t, h)| in_cone(t) && project(z, t) >= h - tol)
    };

    let v = w0.vertices();
    let mut found = Vec::new();
    match v.len() {
        1 => {
            let z = v[0];
            let radial = z.norm() > 0.0 && touches_at(z, z.arg())?;
            if radial || touches_on_grid(z, &|_| true) {
                found.push(Chord::point(z));
            }
        }
        2 => {
            let (p, q) = (v[0], v[1]);
            let phi = (q - p).arg();
            let normals = [phi - FRAC_PI_2, phi + FRAC_PI_2];
            let mut edge = false;
            for t in normals {
                if touches_at(p, t)? && touches_at(q, t)? {
                    edge = true;
                }
            }
            if edge {
                found.push(Chord::new(p, q));
            } else {
                for (z, other) in [(p, q), (q, p)] {
                    let facing = |t: f64| project(z - other, t) >= 0.0;
                    let mut hit = touches_on_grid(z, &facing);
                    for t in normals {
                        hit = hit || touches_at(z, t)?;
                    }
                    if hit {
                        found.push(Chord::point(z));
                    }
                }
            }
        }
        m => {
            let normals: Vec<f64> = (0..m)
                .map(|i| ((v[(i + 1) % m] - v[i]).arg() - FRAC_PI_2).rem_euclid(TAU))
                .collect();
            let mut edge_hit = vec![false; m];
            for i in 0..m {
                let j = (i + 1) % m;
                edge_hit[i] = touches_at(v[i], normals[i])? && touches_at(v[j], normals[i])?;
                if edge_hit[i] {
                    found.push(Chord::new(v[i], v[j]));
                }
            }
            for i in 0..m {
                let prev = (i + m - 1) % m;
                if edge_hit[i] || edge_hit[prev] {
                    continue;
                }
                let (lo, hi) = (normals[prev], normals[i]);
                let width = (hi - lo).rem_euclid(TAU);
                let in_cone = |t: f64| (t - lo).rem_euclid(TAU) <= width;
                if touches_on_grid(v[i], &in_cone)
                    || touches_at(v[i], lo)?
                    || touches_at(v[i], hi)?
                {
                    found.push(Chord::point(v[i]));
                }
            }
        }
    }
    Ok(found)
}

/// `W0 ∩ ∂W` equals the union of boundary chords of `C_A`.
pub fn corollary_chords(an: &Analysis) -> Result<CheckResult> {
    let chords = an.chords()?;
    let scanned = scan_boundary_intersection(an)?;
    let gap = segment_set_distance(&chords, &scanned, SEGMENT_SAMPLES);
    Ok(CheckResult::at_most(
        "corollary_chords",
        gap,
        an.tolerances().tau_set,
        an.matrix(),
    ))
}

pub fn check_corollary_chords(a: &CMatrix, tol: &Tolerances) -> Result<CheckResult> {
    corollary_chords(&Analysis::new(a, tol))
}

/// `hausdorff(W0, conv σ_per)`, infinite when the peripheral spectrum is empty.
fn ch_gap(an: &Analysis) -> Result<f64> {
    Ok(match an.hull_peripheral()? {
        Some(h) => geometry::hausdorff_on(an.w0()?, &h, an.grid()),
        None => f64::INFINITY,
    })
}

/// For normal `A`, `W0(A)` is the hull of the peripheral spectrum.
pub fn theorem2(an: &Analysis) -> Result<CheckResult> {
    check_normal(an.matrix())?;
    let gap = ch_gap(an)?;
    Ok(CheckResult::at_most("theorem2", gap, an.tolerances().tau_set, an.matrix()))
}

pub fn check_theorem2(a: &CMatrix, tol: &Tolerances) -> Result<CheckResult> {
    theorem2(&Analysis::new(a, tol))
}

/// The strict inclusion `conv σ_per ⊊ W0` for the fixed example matrix.
pub fn check_ch_may_fail() -> Result<CheckResult> {
    check_ch_may_fail_on(&example_matrix(), &Tolerances::default())
}

/// Same regression on an arbitrary fixture: passes iff the gap is at least
/// `0.5` (an empty peripheral spectrum counts as an infinite gap).
pub fn check_ch_may_fail_on(a: &CMatrix, tol: &Tolerances) -> Result<CheckResult> {
    let gap = ch_gap(&Analysis::new(a, tol))?;
    Ok(CheckResult::at_least("ch_may_fail", gap, CH_FAILURE_THRESHOLD, a))
}

/// `W0(A) ⊂ W0(N)` on the grid and, when `‖A‖ ≈ ‖N‖`, every peripheral
/// eigenvalue of `A` is a peripheral eigenvalue of `N`.
pub fn check_block_extension(ext: &BlockExtension, tol: &Tolerances) -> Result<CheckResult> {
    check_normal(&ext.n)?;
    let top = Analysis::new(&ext.a, tol);
    let full = Analysis::new(&ext.n, tol);
    let grid = tol.grid();
    let inclusion = top
        .w0()?
        .support_on(&grid)
        .iter()
        .zip(full.w0()?.support_on(&grid))
        .map(|(a, n)| a - n)
        .fold(0.0, f64::max);
    let mut gap = inclusion;
    let mut note = format!("inclusion excess {inclusion:e}");
    if top.norm()? >= full.norm()? - tol.tau_set {
        let pa = merged_peripheral(top.spectral()?);
        let pn = merged_peripheral(full.spectral()?);
        let spectral = pa
            .iter()
            .map(|z| pn.iter().map(|w| (z - w).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max);
        gap = gap.max(spectral);
        note.push_str(&format!("; peripheral excess {spectral:e}"));
    }
    Ok(CheckResult::at_most("block_extension", gap, tol.tau_set, &ext.n).with_note(note))
}

/// `W(A) ⊂ W(B)` for the compression used by `W0`, `W0 ⊂ W` and `w(A) ≤ ‖A‖`.
pub fn containment(an: &Analysis) -> Result<CheckResult> {
    let tol = an.tolerances().tau_set;
    let grid = an.grid();
    let excess = an
        .w0()?
        .support_on(grid)
        .iter()
        .zip(an.w()?.support_on(grid))
        .map(|(a, b)| a - b)
        .fold(0.0, f64::max);
    let radius_excess = (an.numerical_radius()? - an.norm()?).max(0.0);
    Ok(CheckResult::at_most(
        "containment",
        excess.max(radius_excess),
        tol,
        an.matrix(),
    ))
}

pub fn check_containment(a: &CMatrix, tol: &Tolerances) -> Result<CheckResult> {
    containment(&Analysis::new(a, tol))
}

/// Sampled `W(A)` against the elliptical-range oracle, after scaling `A` to
/// unit norm.
pub fn check_ellipse_oracle(a: &CMatrix, tol: &Tolerances) -> Result<CheckResult> {
    let norm = operator_norm(a)?;
    if norm == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let scaled = a.scale(Complex64::new(1.0 / norm, 0.0));
    let sampled = numerical_range(&scaled, tol)?;
    let oracle = ellipse_2x2(&scaled)?;
    let gap = geometry::hausdorff_on(&sampled, &oracle, &tol.grid());
    Ok(CheckResult::at_most("ellipse_2x2", gap, ELLIPSE_ORACLE_TOL, a))
}

/// Unitary similarity of `m` whose first basis vector is the top eigenvector
/// of `Re(e^{-iθ}m)`, so the `(1,1)` entry is a boundary point of `W(m)`.
pub fn boundary_instance(m: &CMatrix, theta: f64) -> Result<CMatrix> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: m.dim(),
        });
    }
    let x = herm_eigen(&m.rotated_hermitian_part(theta))?.top_vector();
    let y = [-x[1].conj(), x[0].conj()];
    let mut u = CMatrix::zeros(2);
    u[(0, 0)] = x[0];
    u[(1, 0)] = x[1];
    u[(0, 1)] = y[0];
    u[(1, 1)] = y[1];
    Ok(&(&u.adjoint() * m) * &u)
}

/// For 2x2 `A` whose `(1,1)` entry lies on `∂W(A)` (tested against the exact
/// ellipse), returns `||b| - |c||`; `None` when the entry is not on the
/// boundary.
pub fn boundary_condition_instance(a: &CMatrix, tol: &Tolerances) -> Result<Option<f64>> {
    let e = ellipse_params(a)?;
    let corner = a[(0, 0)];
    let gap = |t: f64| e.support(t) - project(corner, t);
    let grid = tol.grid();
    let (best_t, best) = grid
        .angles()
        .map(|t| (t, gap(t)))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("non-empty grid");
    let step = TAU / grid.len() as f64;
    let refined = golden_min(gap, best_t - step, best_t + step).min(best);
    if refined > tol.tau_set {
        return Ok(None);
    }
    Ok(Some((a[(0, 1)].norm() - a[(1, 0)].norm()).abs()))
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut best = f1.min(f2);
    while hi - lo > 1e-12 {
        if f1 > f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
            best = best.min(f2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
            best = best.min(f1);
        }
    }
    best
}

/// Boundary-condition check on one draw: conjugates `m` at a random
/// direction and measures `||b| - |c||`.
pub fn boundary_2x2(m: &CMatrix, seed: u64, tol: &Tolerances) -> Result<CheckResult> {
    let theta = MatrixRng::new(seed ^ 0x2B0D_2B0D).uniform_in(0.0, TAU);
    let a = boundary_instance(m, theta)?;
    Ok(match boundary_condition_instance(&a, tol)? {
        Some(gap) => CheckResult::at_most("boundary_2x2", gap, tol.tau_set, &a),
        None => CheckResult::at_most("boundary_2x2", 0.0, tol.tau_set, &a)
            .with_note("corner entry not on the boundary; instance excluded"),
    })
}

/// `trials` constructed instances from seed 11; gap is the worst violation.
pub fn check_2x2_boundary_condition(tol: &Tolerances, trials: usize) -> Result<CheckResult> {
    check_2x2_boundary_condition_seeded(tol, trials, BOUNDARY_2X2_SEED)
}

pub fn check_2x2_boundary_condition_seeded(
    tol: &Tolerances,
    trials: usize,
    seed: u64,
) -> Result<CheckResult> {
    if trials == 0 {
        return Err(Error::InvalidSpec("trials must be at least 1".into()));
    }
    let mut rng = MatrixRng::new(seed);
    let mut worst = (0.0, CMatrix::zeros(2));
    let mut excluded = 0;
    for _ in 0..trials {
        let m = super::generate::ginibre(&mut rng, 2);
        let a = boundary_instance(&m, rng.uniform_in(0.0, TAU))?;
        match boundary_condition_instance(&a, tol)? {
            Some(gap) if gap >= worst.0 => worst = (gap, a),
            Some(_) => {}
            None => excluded += 1,
        }
    }
    Ok(
        CheckResult::at_most("boundary_2x2", worst.0, tol.tau_set, &worst.1)
            .with_note(format!("{trials} instances, {excluded} excluded")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::generate::{generate, Family};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn jordan() -> CMatrix {
        CMatrix::from_real_rows(&[&[0., 1.], &[0., 0.]]).unwrap()
    }

    fn unitary_diag() -> CMatrix {
        CMatrix::diagonal(&[c(1., 0.), c(-1., 0.), c(0., 1.)])
    }

    #[test]
    fn lemma1_examples() {
        let tol = Tolerances::default();
        for a in [example_matrix(), jordan(), unitary_diag()] {
            let r = check_lemma1(&a, &tol).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(r.gap <= 1e-9);
        }
    }

    #[test]
    fn theorem1_examples() {
        let tol = Tolerances::default();
        assert!(check_theorem1(&example_matrix(), &tol).unwrap().passed);
        assert!(check_theorem1(&jordan(), &tol).unwrap().passed);
        let g = generate(&GenSpec::new(Family::NormaloidDirectSum, 4, 3)).unwrap();
        let r = check_theorem1(&g.matrix, &tol).unwrap();
        assert!(r.passed && r.note.unwrap().contains("normaloid=true touches=true"));
    }

    #[test]
    fn corollary_examples() {
        let tol = Tolerances::default();
        let e = example_matrix();
        let an = Analysis::new(&e, &tol);
        let scanned = scan_boundary_intersection(&an).unwrap();
        assert_eq!(scanned.len(), 1);
        assert!((scanned[0].a - c(1., 0.)).norm() < 1e-12 && scanned[0].is_degenerate());
        assert!(corollary_chords(&an).unwrap().passed);

        let d = CMatrix::diagonal(&[c(1., 0.), c(-1., 0.)]);
        let an = Analysis::new(&d, &tol);
        let scanned = scan_boundary_intersection(&an).unwrap();
        assert_eq!(scanned.len(), 1);
        assert!((scanned[0].length() - 2.0).abs() < 1e-12);
        assert!(corollary_chords(&an).unwrap().passed);

        let g = generate(&GenSpec::new(Family::Ginibre, 5, 1)).unwrap();
        assert!(check_corollary_chords(&g.matrix, &tol).unwrap().passed);

        // inscribed triangle: W0 = W, every edge is a chord
        let r = check_corollary_chords(&unitary_diag(), &tol).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn theorem2_examples() {
        let tol = Tolerances::default();
        assert!(check_theorem2(&unitary_diag(), &tol).unwrap().passed);
        let d = CMatrix::diagonal(&[c(1., 0.), c(0.5, 0.)]);
        let r = check_theorem2(&d, &tol).unwrap();
        assert!(r.passed && r.gap < 1e-12);
        let g = generate(&GenSpec::new(Family::Normal, 6, 2)).unwrap();
        assert!(check_theorem2(&g.matrix, &tol).unwrap().passed);
        assert!(matches!(check_theorem2(&jordan(), &tol), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn ch_may_fail_examples() {
        let tol = Tolerances::default();
        let r = check_ch_may_fail().unwrap();
        assert!(r.passed && (r.gap - 1.0).abs() < 1e-6);
        let r = check_ch_may_fail_on(&CMatrix::diagonal(&[c(1., 0.), c(0., 0.)]), &tol).unwrap();
        assert!(!r.passed && r.gap < 1e-12 && r.witness.is_some());
        let r = check_ch_may_fail_on(&example_matrix().scale(c(2., 0.)), &tol).unwrap();
        assert!(r.passed && (r.gap - 2.0).abs() < 1e-6);
    }

    #[test]
    fn block_extension_examples() {
        let tol = Tolerances::default();
        let ext = BlockExtension::new(
            CMatrix::diagonal(&[c(1., 0.)]),
            vec![vec![c(0., 0.)]],
            CMatrix::diagonal(&[c(-1., 0.)]),
        )
        .unwrap();
        let r = check_block_extension(&ext, &tol).unwrap();
        assert!(r.passed, "{r:?}");

        let spec = GenSpec {
            tail_dim: Some(2),
            ..GenSpec::new(Family::BlockUpperNormal, 3, 17)
        };
        let ext = generate(&spec).unwrap().extension.unwrap();
        assert!(check_block_extension(&ext, &tol).unwrap().passed);
    }

    #[test]
    fn boundary_condition_examples() {
        let tol = Tolerances::default();
        let a = CMatrix::from_real_rows(&[&[1., 0.], &[0., 0.]]).unwrap();
        assert_eq!(boundary_condition_instance(&a, &tol).unwrap(), Some(0.0));
        let r = check_2x2_boundary_condition(&tol, 200).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(check_2x2_boundary_condition(&tol, 0).is_err());
    }

    #[test]
    fn interior_corner_is_excluded() {
        let tol = Tolerances::default();
        // the corner entry 0 is the centre of W = D(0, 1/2)
        assert_eq!(boundary_condition_instance(&jordan(), &tol).unwrap(), None);
    }

    #[test]
    fn ellipse_oracle_on_jordan_block() {
        let r = check_ellipse_oracle(&jordan(), &Tolerances::default()).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn infinite_gap_serializes() {
        let r = CheckResult::at_most("x", f64::INFINITY, 1e-6, &jordan());
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains(r#""gap":"inf""#));
        let back: CheckResult = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
