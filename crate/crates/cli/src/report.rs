//! The JSON report schema and the CSV boundary table.

use std::io;

use nrange_core::numrange::boundary_samples;
use nrange_core::{CMatrix, Chord, Complex64, RangeReport, Tolerances};
use serde::{Deserialize, Serialize};

/// Serialized form of a [`RangeReport`]. Complex numbers are `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub norm: f64,
    pub numerical_radius: f64,
    pub spectral_radius: f64,
    pub eigenvalues: Vec<Complex64>,
    pub peripheral: Vec<Complex64>,
    pub normaloid: bool,
    #[serde(rename = "W_vertices")]
    pub w_vertices: Vec<Complex64>,
    /// `[θ, h_W(θ)]` on the angle grid.
    #[serde(rename = "W_support")]
    pub w_support: Vec<(f64, f64)>,
    #[serde(rename = "W0_vertices")]
    pub w0_vertices: Vec<Complex64>,
    pub chords: Vec<Chord>,
    /// `null` when the peripheral spectrum is empty.
    pub hull_peripheral_vertices: Option<Vec<Complex64>>,
    /// `null` when the peripheral spectrum is empty.
    pub ch_equality_gap: Option<f64>,
    pub tolerances: Tolerances,
}

impl From<&RangeReport> for ReportJson {
    fn from(r: &RangeReport) -> Self {
        let grid = r.tolerances.grid();
        let w_support = match r.w.support_samples() {
            Some(s) => s.to_vec(),
            None => grid.angles().zip(r.w.support_on(&grid)).collect(),
        };
        ReportJson {
            norm: r.norm,
            numerical_radius: r.numerical_radius,
            spectral_radius: r.spectral.spectral_radius,
            eigenvalues: r.spectral.eigenvalues.clone(),
            peripheral: r.spectral.peripheral.clone(),
            normaloid: r.normaloid,
            w_vertices: r.w.vertices().to_vec(),
            w_support,
            w0_vertices: r.w0.vertices().to_vec(),
            chords: r.chords.clone(),
            hull_peripheral_vertices: r.hull_peripheral.as_ref().map(|h| h.vertices().to_vec()),
            ch_equality_gap: r.ch_equality_gap,
            tolerances: r.tolerances,
        }
    }
}

impl ReportJson {
    pub fn to_json(&self) -> String {
        crate::json::to_string(self).expect("reports always serialize")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error(transparent)]
    Compute(#[from] nrange_core::Error),
    #[error(transparent)]
    Write(#[from] csv::Error),
}

/// Rows `theta,h_w,h_w0,re_p,im_p` after a header, one per grid angle, where
/// `p(θ)` is the boundary point of `W` in direction `θ`.
pub fn write_csv<W: io::Write>(a: &CMatrix, report: &RangeReport, out: W) -> Result<(), CsvError> {
    let grid = report.tolerances.grid();
    let angles: Vec<f64> = grid.angles().collect();
    let samples = boundary_samples(a, &angles)?;
    let h0 = report.w0.support_on(&grid);
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["theta", "h_w", "h_w0", "re_p", "im_p"])?;
    for (s, h0) in samples.iter().zip(h0) {
        w.write_record([s.theta, s.support, h0, s.point.re, s.point.im].map(crate::json::float))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
