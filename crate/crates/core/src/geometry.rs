//! Compact convex subsets of the complex plane.
//!
//! Regions are stored as counterclockwise vertex lists and compared through
//! their support functions `h(θ) = max Re(e^{-iθ} z)` evaluated on a shared
//! uniform angle grid. A single vertex is a point, two vertices a segment; a
//! segment and a point are their own (relative) boundary.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arithmetic tolerance for vertex merging and collinearity.
pub const GEO_TOL: f64 = 1e-9;

/// Default tolerance for set comparisons.
pub const SET_TOL: f64 = 1e-6;

pub const DEFAULT_ANGLES: usize = 1440;

/// Uniform grid `θ_k = 2πk/n`, `k = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngleGrid {
    n: usize,
}

impl AngleGrid {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "angle grid needs at least one angle");
        AngleGrid { n }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn angle(&self, k: usize) -> f64 {
        TAU * k as f64 / self.n as f64
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|k| self.angle(k))
    }
}

impl Default for AngleGrid {
    fn default() -> Self {
        AngleGrid::new(DEFAULT_ANGLES)
    }
}

/// `Re(e^{-iθ} z)`.
#[inline]
pub fn project(z: Complex64, theta: f64) -> f64 {
    z.re * theta.cos() + z.im * theta.sin()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexRegion {
    vertices: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    support_samples: Option<Vec<(f64, f64)>>,
}

impl ConvexRegion {
    pub fn point(z: Complex64) -> Self {
        ConvexRegion {
            vertices: vec![z],
            support_samples: None,
        }
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn support_samples(&self) -> Option<&[(f64, f64)]> {
        self.support_samples.as_deref()
    }

    /// Attaches `(θ, h(θ))` samples; each value must agree with the vertex
    /// support to within `GEO_TOL` (relative to the region size).
    pub fn with_support_samples(mut self, samples: Vec<(f64, f64)>) -> Self {
        debug_assert!(samples.iter().all(|&(t, h)| {
            (self.support(t) - h).abs() <= 10.0 * GEO_TOL * (1.0 + self.max_modulus())
        }));
        self.support_samples = Some(samples);
        self
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    pub fn max_modulus(&self) -> f64 {
        self.vertices.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn support(&self, theta: f64) -> f64 {
        self.vertices
            .iter()
            .map(|&z| project(z, theta))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Vertex attaining the support value at `theta`.
    pub fn support_point(&self, theta: f64) -> Complex64 {
        *self
            .vertices
            .iter()
            .max_by(|a, b| project(**a, theta).total_cmp(&project(**b, theta)))
            .expect("regions are non-empty")
    }

    /// Support values on every grid angle, in grid order.
    ///
    /// Uses a rotating pointer over the counterclockwise vertex list, so the
    /// cost is linear in `vertices + angles`.
    pub fn support_on(&self, grid: &AngleGrid) -> Vec<f64> {
        let m = self.vertices.len();
        if m <= 3 {
            return grid.angles().map(|t| self.support(t)).collect();
        }
        let first = grid.angle(0);
        let mut idx = (0..m)
            .max_by(|&i, &j| {
                project(self.vertices[i], first).total_cmp(&project(self.vertices[j], first))
            })
            .unwrap_or(0);
        grid.angles()
            .map(|t| {
                let mut steps = 0;
                while steps < m {
                    let next = (idx + 1) % m;
                    if project(self.vertices[next], t) > project(self.vertices[idx], t) {
                        idx = next;
                        steps += 1;
                    } else {
                        break;
                    }
                }
                project(self.vertices[idx], t)
            })
            .collect()
    }

    /// Membership by support test on `grid`, with slack `tol`.
    pub fn contains(&self, z: Complex64, tol: f64, grid: &AngleGrid) -> bool {
        self.support_on(grid)
            .iter()
            .zip(grid.angles())
            .all(|(h, t)| project(z, t) <= h + tol)
    }

    /// Image under `z -> s z` for real `s > 0`, or any complex multiplier.
    pub fn mapped(&self, factor: Complex64) -> Self {
        ConvexRegion {
            vertices: self.vertices.iter().map(|z| z * factor).collect(),
            support_samples: None,
        }
    }

    /// Polygon boundary as a list of edges (a point yields one degenerate
    /// edge, a segment one edge).
    pub fn edges(&self) -> Vec<Chord> {
        match self.vertices.len() {
            1 => vec![Chord::point(self.vertices[0])],
            2 => vec![Chord::new(self.vertices[0], self.vertices[1])],
            m => (0..m)
                .map(|i| Chord::new(self.vertices[i], self.vertices[(i + 1) % m]))
                .collect(),
        }
    }
}

/// Segment `[a, b]` in the plane; `a == b` is a degenerate (zero-length) chord.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub a: Complex64,
    pub b: Complex64,
}

impl Chord {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        Chord { a, b }
    }

    pub fn point(z: Complex64) -> Self {
        Chord { a: z, b: z }
    }

    pub fn length(&self) -> f64 {
        (self.b - self.a).norm()
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn distance_to(&self, z: Complex64) -> f64 {
        let d = self.b - self.a;
        let len2 = d.norm_sqr();
        if len2 == 0.0 {
            return (z - self.a).norm();
        }
        let t = ((z - self.a) * d.conj()).re / len2;
        let t = t.clamp(0.0, 1.0);
        (z - (self.a + d * t)).norm()
    }

    /// `count` evenly spaced points including both endpoints.
    pub fn sample(&self, count: usize) -> Vec<Complex64> {
        if self.is_degenerate() || count < 2 {
            return vec![self.a];
        }
        (0..count)
            .map(|k| self.a + (self.b - self.a) * (k as f64 / (count - 1) as f64))
            .collect()
    }

    /// Same chord with endpoints in a canonical order.
    pub fn normalized(&self) -> Self {
        let key = |z: &Complex64| (z.re, z.im);
        if key(&self.a).partial_cmp(&key(&self.b)) == Some(std::cmp::Ordering::Greater) {
            Chord::new(self.b, self.a)
        } else {
            *self
        }
    }
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    let u = a - o;
    let v = b - o;
    u.re * v.im - u.im * v.re
}

/// Turn at `a` on the way `o -> a -> b` is strictly counterclockwise (beyond
/// the angular tolerance).
fn left_turn(o: Complex64, a: Complex64, b: Complex64) -> bool {
    cross(o, a, b) > GEO_TOL * (a - o).norm() * (b - o).norm()
}

/// Smallest convex region containing `points`.
pub fn hull(points: &[Complex64]) -> Result<ConvexRegion> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let scale = 1.0 + points.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let merge = GEO_TOL * scale;

    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup_by(|next, kept| (*next - *kept).norm() <= merge);

    let mut vertices = if pts.len() <= 2 {
        pts
    } else {
        monotone_chain(&pts)
    };
    simplify(&mut vertices, merge);
    Ok(ConvexRegion {
        vertices,
        support_samples: None,
    })
}

fn monotone_chain(pts: &[Complex64]) -> Vec<Complex64> {
    let mut lower: Vec<Complex64> = Vec::with_capacity(pts.len());
    for &p in pts {
        while lower.len() >= 2 && !left_turn(lower[lower.len() - 2], lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && !left_turn(upper[upper.len() - 2], upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Drops near-duplicate and non-extreme vertices from a cyclic vertex list
/// until every vertex is a strict left turn.
fn simplify(v: &mut Vec<Complex64>, merge: f64) {
    loop {
        let before = v.len();
        if v.len() >= 2 {
            let mut kept: Vec<Complex64> = Vec::with_capacity(v.len());
            for &z in v.iter() {
                if kept.last().is_none_or(|last| (z - *last).norm() > merge) {
                    kept.push(z);
                }
            }
            while kept.len() >= 2 && (kept[0] - kept[kept.len() - 1]).norm() <= merge {
                kept.pop();
            }
            *v = kept;
        }
        if v.len() >= 3 {
            let m = v.len();
            let keep: Vec<bool> = (0..m)
                .map(|i| left_turn(v[(i + m - 1) % m], v[i], v[(i + 1) % m]))
                .collect();
            if keep.iter().filter(|&&k| k).count() >= 2 {
                let mut i = 0;
                v.retain(|_| {
                    i += 1;
                    keep[i - 1]
                });
            } else {
                // all collinear: keep the two extreme points
                let (a, b) = farthest_pair(v);
                *v = vec![a, b];
            }
        }
        if v.len() == before {
            break;
        }
    }
}

fn farthest_pair(v: &[Complex64]) -> (Complex64, Complex64) {
    let mut best = (v[0], v[0], 0.0);
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            let d = (a - b).norm();
            if d > best.2 {
                best = (a, b, d);
            }
        }
    }
    (best.0, best.1)
}

/// Support value of `region` at `theta`.
pub fn support(region: &ConvexRegion, theta: f64) -> f64 {
    region.support(theta)
}

/// Largest support-function gap over `grid`.
pub fn hausdorff_on(r1: &ConvexRegion, r2: &ConvexRegion, grid: &AngleGrid) -> f64 {
    r1.support_on(grid)
        .iter()
        .zip(r2.support_on(grid))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// [`hausdorff_on`] over the default 1440-angle grid.
pub fn hausdorff(r1: &ConvexRegion, r2: &ConvexRegion) -> f64 {
    hausdorff_on(r1, r2, &AngleGrid::default())
}

/// Smallest value of `h_outer - h_inner` over the grid, after checking
/// `inner ⊂ outer` within `tol`.
pub fn support_margin(
    inner: &ConvexRegion,
    outer: &ConvexRegion,
    tol: f64,
    grid: &AngleGrid,
) -> Result<f64> {
    let hi = inner.support_on(grid);
    let ho = outer.support_on(grid);
    let mut excess = f64::NEG_INFINITY;
    let mut margin = f64::INFINITY;
    for (a, b) in hi.iter().zip(&ho) {
        excess = excess.max(a - b);
        margin = margin.min(b - a);
    }
    if excess > tol {
        return Err(Error::NotContained { excess });
    }
    Ok(margin)
}

/// Whether `inner` (assumed inside `outer`) reaches the boundary of `outer`:
/// some grid direction has support gap at most `tol`.
pub fn touches_boundary_on(
    inner: &ConvexRegion,
    outer: &ConvexRegion,
    tol: f64,
    grid: &AngleGrid,
) -> Result<bool> {
    Ok(support_margin(inner, outer, tol, grid)? <= tol)
}

pub fn touches_boundary(inner: &ConvexRegion, outer: &ConvexRegion, tol: f64) -> Result<bool> {
    touches_boundary_on(inner, outer, tol, &AngleGrid::default())
}

/// Whether the chord lies on the boundary of `region`.
///
/// A proper chord is tested only along the two normals of `b - a`; a
/// degenerate chord is tested on every grid direction.
pub fn segment_on_boundary_on(
    region: &ConvexRegion,
    chord: &Chord,
    tol: f64,
    grid: &AngleGrid,
) -> Result<bool> {
    let h = region.support_on(grid);
    for z in [chord.a, chord.b] {
        let excess = grid
            .angles()
            .zip(&h)
            .map(|(t, h)| project(z, t) - h)
            .fold(f64::NEG_INFINITY, f64::max);
        if excess > tol {
            return Err(Error::NotContained { excess });
        }
    }
    let merge = GEO_TOL * (1.0 + region.max_modulus());
    if chord.length() <= merge {
        return Ok(grid
            .angles()
            .zip(&h)
            .any(|(t, h)| project(chord.a, t) >= h - tol));
    }
    let phi = (chord.b - chord.a).arg();
    Ok([phi - FRAC_PI_2, phi + FRAC_PI_2].into_iter().any(|t| {
        let h = region.support(t);
        project(chord.a, t) >= h - tol && project(chord.b, t) >= h - tol
    }))
}

pub fn segment_on_boundary(region: &ConvexRegion, chord: &Chord, tol: f64) -> Result<bool> {
    segment_on_boundary_on(region, chord, tol, &AngleGrid::default())
}

/// Hausdorff distance between finite point sets. Two empty sets are at
/// distance 0; an empty and a non-empty set at infinite distance.
pub fn point_set_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    let directed = |from: &[Complex64], to: &[Complex64]| {
        from.iter()
            .map(|p| to.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Hausdorff distance between two finite unions of segments, measured from
/// `samples` points along each segment to the exact other union. Empty-set
/// conventions follow [`point_set_distance`].
pub fn segment_set_distance(a: &[Chord], b: &[Chord], samples: usize) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    let directed = |from: &[Chord], to: &[Chord]| {
        from.iter()
            .flat_map(|c| c.sample(samples))
            .map(|p| to.iter().map(|c| c.distance_to(p)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle(n: usize, r: f64) -> Vec<Complex64> {
        (0..n)
            .map(|k| Complex64::from_polar(r, TAU * k as f64 / n as f64))
            .collect()
    }

    fn ice_cone() -> ConvexRegion {
        let mut pts = circle(1440, 0.5);
        pts.push(c(1.0, 0.0));
        hull(&pts).unwrap()
    }

    #[test]
    fn hull_shapes() {
        assert_eq!(hull(&[c(1., 0.)]).unwrap().vertices(), &[c(1., 0.)]);
        let seg = hull(&[c(0., 0.), c(1., 0.), c(0.5, 0.)]).unwrap();
        assert!(seg.is_segment());
        assert!(seg.vertices().contains(&c(0., 0.)) && seg.vertices().contains(&c(1., 0.)));
        let tri = hull(&[c(1., 0.), c(-1., 0.), c(0., 1.)]).unwrap();
        assert_eq!(tri.vertices().len(), 3);
        assert_eq!(hull(&[]), Err(Error::EmptySet));
        let same = hull(&[c(2., 2.), c(2., 2.), c(2. + 1e-12, 2.)]).unwrap();
        assert!(same.is_point());
    }

    #[test]
    fn hull_is_counterclockwise() {
        let r = hull(&[c(0., 0.), c(1., 0.), c(1., 1.), c(0., 1.), c(0.5, 0.5)]).unwrap();
        let v = r.vertices();
        assert_eq!(v.len(), 4);
        for i in 0..4 {
            assert!(cross(v[i], v[(i + 1) % 4], v[(i + 2) % 4]) > 0.0);
        }
    }

    #[test]
    fn support_examples() {
        let seg = hull(&[c(0., 0.), c(1., 0.)]).unwrap();
        assert_eq!(support(&seg, 0.0), 1.0);
        assert_eq!(support(&seg, PI).abs(), 0.0);
        let tri = hull(&[c(1., 0.), c(-1., 0.), c(0., 1.)]).unwrap();
        assert!((support(&tri, FRAC_PI_2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn grid_sweep_matches_brute_force() {
        let r = ice_cone();
        let grid = AngleGrid::new(997);
        let swept = r.support_on(&grid);
        for (t, h) in grid.angles().zip(swept) {
            assert!((r.support(t) - h).abs() < 1e-15);
        }
    }

    #[test]
    fn hausdorff_examples() {
        let one = hull(&[c(1., 0.)]).unwrap();
        assert_eq!(hausdorff(&one, &one), 0.0);
        let seg = hull(&[c(0., 0.), c(1., 0.)]).unwrap();
        assert!((hausdorff(&seg, &one) - 1.0).abs() < 1e-15);
        // 1440-gon inscribed in the unit circle vs the exact disk
        let poly = hull(&circle(1440, 1.0)).unwrap();
        let fine = AngleGrid::new(1440 * 7);
        let gap = fine
            .angles()
            .map(|t| 1.0 - poly.support(t))
            .fold(0.0, f64::max);
        assert!(gap <= 1.0 - (PI / 1440.0).cos() + 1e-15);
        assert!(gap <= 1e-5);
    }

    #[test]
    fn touches_examples() {
        let seg = hull(&[c(0., 0.), c(1., 0.)]).unwrap();
        assert!(touches_boundary(&seg, &ice_cone(), SET_TOL).unwrap());
        let origin = hull(&[c(0., 0.)]).unwrap();
        let disk = hull(&circle(1440, 0.5)).unwrap();
        assert!(!touches_boundary(&origin, &disk, SET_TOL).unwrap());
        assert!(touches_boundary(&disk, &disk, SET_TOL).unwrap());
        assert!(matches!(
            touches_boundary(&ice_cone(), &disk, SET_TOL),
            Err(Error::NotContained { .. })
        ));
    }

    #[test]
    fn boundary_chord_examples() {
        let seg = hull(&[c(-1., 0.), c(1., 0.)]).unwrap();
        assert!(segment_on_boundary(&seg, &Chord::new(c(-1., 0.), c(1., 0.)), SET_TOL).unwrap());
        assert!(segment_on_boundary(&ice_cone(), &Chord::point(c(1., 0.)), SET_TOL).unwrap());
        let disk = hull(&circle(1440, 1.0)).unwrap();
        assert!(!segment_on_boundary(&disk, &Chord::new(c(1., 0.), c(-1., 0.)), SET_TOL).unwrap());
        assert!(matches!(
            segment_on_boundary(&seg, &Chord::point(c(0., 1.)), SET_TOL),
            Err(Error::NotContained { .. })
        ));
    }

    #[test]
    fn set_distances() {
        assert_eq!(point_set_distance(&[], &[]), 0.0);
        assert_eq!(point_set_distance(&[c(1., 0.)], &[]), f64::INFINITY);
        assert!((point_set_distance(&[c(0., 0.), c(1., 0.)], &[c(1., 0.)]) - 1.0).abs() < 1e-15);
        let chord = Chord::new(c(-1., 0.), c(1., 0.));
        let ends = [Chord::point(c(-1., 0.)), Chord::point(c(1., 0.))];
        assert!((segment_set_distance(&[chord], &ends, 65) - 1.0).abs() < 1e-15);
        assert_eq!(segment_set_distance(&[chord], &[chord], 65), 0.0);
        assert!((chord.distance_to(c(0.5, 2.0)) - 2.0).abs() < 1e-15);
        assert!((chord.distance_to(c(4.0, 4.0)) - 5.0).abs() < 1e-15);
    }
}
