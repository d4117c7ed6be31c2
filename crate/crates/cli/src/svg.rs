//! Deterministic SVG rendering of `W`, `W0`, the circle `C_A`, the
//! peripheral spectrum and the boundary chords.

use std::fmt::Write as _;

use nrange_core::{Complex64, RangeReport};

pub const CANVAS: f64 = 800.0;

struct View {
    half_width: f64,
}

impl View {
    fn x(&self, z: Complex64) -> f64 {
        CANVAS / 2.0 * (1.0 + z.re / self.half_width)
    }

    fn y(&self, z: Complex64) -> f64 {
        CANVAS / 2.0 * (1.0 - z.im / self.half_width)
    }

    fn point(&self, z: Complex64) -> String {
        format!("{:.3},{:.3}", self.x(z), self.y(z))
    }

    fn path(&self, vertices: &[Complex64]) -> String {
        vertices.iter().map(|&z| self.point(z)).collect::<Vec<_>>().join(" ")
    }

    fn length(&self, r: f64) -> f64 {
        CANVAS / 2.0 * r / self.half_width
    }
}

pub fn render(report: &RangeReport) -> String {
    let norm = report.norm;
    let view = View {
        half_width: if norm > 0.0 { 1.1 * norm } else { 1.0 },
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let mid = CANVAS / 2.0;
    let _ = writeln!(
        s,
        r##"<g id="axes" stroke="#bbbbbb" stroke-width="1"><line x1="0" y1="{mid}" x2="{CANVAS}" y2="{mid}"/><line x1="{mid}" y1="0" x2="{mid}" y2="{CANVAS}"/></g>"##
    );

    let _ = writeln!(
        s,
        r##"<circle id="circle" cx="{mid}" cy="{mid}" r="{:.3}" fill="none" stroke="#555555" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
        view.length(norm)
    );

    let _ = writeln!(
        s,
        r##"<polygon id="w" points="{}" fill="none" stroke="#1f4e9c" stroke-width="2" stroke-linejoin="round"/>"##,
        view.path(report.w.vertices())
    );

    let w0 = report.w0.vertices();
    match w0.len() {
        1 => {
            let _ = writeln!(
                s,
                r##"<circle id="w0" cx="{:.3}" cy="{:.3}" r="5" fill="#e07b00" fill-opacity="0.45"/>"##,
                view.x(w0[0]),
                view.y(w0[0])
            );
        }
        2 => {
            let _ = writeln!(
                s,
                r##"<polyline id="w0" points="{}" fill="none" stroke="#e07b00" stroke-opacity="0.6" stroke-width="8" stroke-linecap="round"/>"##,
                view.path(w0)
            );
        }
        _ => {
            let _ = writeln!(
                s,
                r##"<polygon id="w0" points="{}" fill="#e07b00" fill-opacity="0.35" stroke="#e07b00" stroke-width="1"/>"##,
                view.path(w0)
            );
        }
    }

    let _ = writeln!(s, r##"<g id="peripheral" fill="#c0392b">"##);
    for &z in &report.spectral.peripheral {
        let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="6"/>"#, view.x(z), view.y(z));
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g id="chords" stroke="#111111" stroke-width="4" stroke-linecap="round">"##);
    for c in report.chords.iter().filter(|c| !c.is_degenerate()) {
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            view.x(c.a),
            view.y(c.a),
            view.x(c.b),
            view.y(c.b)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}
