//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::Command;

use nrange_core::geometry::{hausdorff_on, hull, point_set_distance, AngleGrid};
use nrange_core::linalg::operator_norm;
use nrange_core::numrange::{merged_peripheral, numerical_radius, support_value, Analysis};
use nrange_core::theorems::checks::{example_matrix, scan_boundary_intersection};
use nrange_core::theorems::suite::{SuiteEntry, SuiteReport};
use nrange_core::theorems::{run_suite, Checker, Family, SuiteConfig};
use nrange_core::{CMatrix, Complex64, Tolerances};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn worked_example() -> Outcome {
    let e = example_matrix();
    let tol = Tolerances::default();
    let an = Analysis::new(&e, &tol);
    let report = an.report().unwrap();
    let grid = AngleGrid::default();
    let segment = hull(&[c(0., 0.), c(1., 0.)]).unwrap();
    let one = [c(1., 0.)];

    let norm_err = (report.norm - 1.0).abs();
    let radius_err = (report.numerical_radius - 1.0).abs();
    let w0_err = hausdorff_on(&report.w0, &segment, &grid);
    let peripheral_err = point_set_distance(&merged_peripheral(&report.spectral), &one);
    let chord_points: Vec<Complex64> = report.chords.iter().flat_map(|ch| [ch.a, ch.b]).collect();
    let scanned: Vec<Complex64> = scan_boundary_intersection(&an)
        .unwrap()
        .iter()
        .flat_map(|ch| [ch.a, ch.b])
        .collect();
    let boundary_err = point_set_distance(&chord_points, &one).max(point_set_distance(&scanned, &one));
    let hull_err = report
        .hull_peripheral
        .as_ref()
        .map_or(f64::INFINITY, |h| point_set_distance(h.vertices(), &one));
    let gap_err = report.ch_equality_gap.map_or(f64::INFINITY, |g| (g - 1.0).abs());

    let passed = norm_err <= 1e-10
        && radius_err <= 1e-8
        && w0_err <= 1e-6
        && peripheral_err <= 1e-6
        && report.normaloid
        && report.chords.iter().all(|ch| ch.is_degenerate())
        && boundary_err <= 1e-6
        && hull_err <= 1e-6
        && gap_err <= 1e-6;
    outcome(
        passed,
        format!(
            "|‖E‖-1|={norm_err:.1e} |w-1|={radius_err:.1e} d(W0,[0,1])={w0_err:.1e} \
             d(σ_per,{{1}})={peripheral_err:.1e} normaloid={} d(W0∩∂W,{{1}})={boundary_err:.1e} \
             |gap-1|={gap_err:.1e}",
            report.normaloid
        ),
    )
}

fn ice_cone_support() -> Outcome {
    let e = example_matrix();
    let tol = Tolerances::default();
    let an = Analysis::new(&e, &tol);
    let grid = tol.grid();
    let sampled = an.w().unwrap().support_on(&grid);
    let mut worst: f64 = 0.0;
    for (theta, h) in grid.angles().zip(sampled) {
        let expected = theta.cos().max(0.5);
        worst = worst
            .max((h - expected).abs())
            .max((support_value(&e, theta).unwrap() - expected).abs());
    }
    outcome(worst <= 1e-6, format!("max |h(θ) - max(1/2, cos θ)| = {worst:.2e} over 1440 angles"))
}

/// Runs `config` with `containment` appended to every entry; the containment
/// results feed the invariant criterion.
fn run_with_containment(mut config: SuiteConfig, containment: &mut Vec<(bool, f64)>) -> SuiteReport {
    for entry in &mut config.entries {
        entry.checkers.push(Checker::Containment);
    }
    let report = run_suite(&config).expect("valid suite config");
    containment.extend(
        report
            .results
            .iter()
            .filter(|r| r.result.name == "containment")
            .map(|r| (r.result.passed, r.result.gap)),
    );
    report
}

fn entry(family: Family, dims: (usize, usize), trials: usize, seed: u64, checkers: &[Checker]) -> SuiteEntry {
    SuiteEntry::random(family, dims, trials, seed).with_checkers(checkers)
}

fn config(entries: Vec<SuiteEntry>) -> SuiteConfig {
    SuiteConfig {
        entries,
        tolerances: Tolerances::default(),
    }
}

/// (runs, failures, inconclusive, worst finite gap, first failure note)
fn tally(report: &SuiteReport, name: &str) -> (usize, usize, usize, f64, Option<String>) {
    let rs: Vec<_> = report.results.iter().filter(|r| r.result.name == name).collect();
    let failed: Vec<_> = rs.iter().filter(|r| !r.result.passed && !r.result.inconclusive).collect();
    let inconclusive = rs.iter().filter(|r| r.result.inconclusive).count();
    let worst = rs
        .iter()
        .filter(|r| !r.result.inconclusive && r.result.gap.is_finite())
        .map(|r| r.result.gap)
        .fold(0.0, f64::max);
    let note = failed.first().map(|r| {
        format!(
            "first failure: {:?} gap={:e} {}",
            r.result.draw,
            r.result.gap,
            r.result.note.clone().unwrap_or_default()
        )
    });
    (rs.len(), failed.len(), inconclusive, worst, note)
}

fn summary(report: &SuiteReport, name: &str, expected_runs: usize) -> Outcome {
    let (runs, failed, inconclusive, worst, note) = tally(report, name);
    let mut detail = format!("{runs} runs, {failed} failures, worst gap {worst:.2e}");
    if inconclusive > 0 {
        detail.push_str(&format!(", {inconclusive} inconclusive"));
    }
    if let Some(n) = note {
        detail.push_str("; ");
        detail.push_str(&n);
    }
    outcome(runs == expected_runs && failed == 0 && inconclusive == 0, detail)
}

const DIMS: (usize, usize) = (2, 8);
const SEED: u64 = 42;

fn lemma1(containment: &mut Vec<(bool, f64)>) -> Outcome {
    // 500 draws spread over every family
    let families = [
        Family::Ginibre,
        Family::Normal,
        Family::Unitary,
        Family::Nilpotent,
        Family::NormaloidDirectSum,
    ];
    let mut entries: Vec<SuiteEntry> = families
        .iter()
        .map(|&f| entry(f, DIMS, 84, SEED, &[Checker::Lemma1]))
        .collect();
    let mut block = entry(Family::BlockUpperNormal, (2, 5), 80, SEED, &[Checker::Lemma1]);
    block.tail_dim_range = Some((1, 3));
    entries.push(block);
    let report = run_with_containment(config(entries), containment);
    summary(&report, "lemma1", 500)
}

fn theorem1(containment: &mut Vec<(bool, f64)>) -> Outcome {
    let families = [Family::Nilpotent, Family::NormaloidDirectSum, Family::Ginibre];
    let entries = families
        .iter()
        .map(|&f| entry(f, DIMS, 500, SEED, &[Checker::Theorem1]))
        .collect();
    let report = run_with_containment(config(entries), containment);
    let (runs, failed, inconclusive, _, note) = tally(&report, "theorem1");

    // generator contracts: nilpotent never normaloid, direct sums always
    let mut contract_violations = 0;
    for r in report.results.iter().filter(|r| r.result.name == "theorem1" && !r.result.inconclusive) {
        let normaloid = r.result.note.as_deref().unwrap_or("").contains("normaloid=true");
        let expected = match r.result.draw.map(|d| d.family) {
            Some(Family::Nilpotent) => Some(false),
            Some(Family::NormaloidDirectSum) => Some(true),
            _ => None,
        };
        if expected.is_some_and(|e| e != normaloid) {
            contract_violations += 1;
        }
    }
    let rate = inconclusive as f64 / runs as f64;
    let mut detail = format!(
        "{runs} draws, {failed} disagreements, {contract_violations} family-contract violations, \
         ambiguity rate {:.2}%",
        100.0 * rate
    );
    if let Some(n) = note {
        detail.push_str("; ");
        detail.push_str(&n);
    }
    outcome(
        runs == 1500 && failed == 0 && contract_violations == 0 && rate < 0.01,
        detail,
    )
}

fn theorem2(containment: &mut Vec<(bool, f64)>) -> Outcome {
    let report = run_with_containment(
        config(vec![entry(Family::Normal, DIMS, 500, SEED, &[Checker::Theorem2])]),
        containment,
    );
    summary(&report, "theorem2", 500)
}

fn corollary(containment: &mut Vec<(bool, f64)>) -> Outcome {
    let report = run_with_containment(
        config(vec![
            entry(Family::Ginibre, DIMS, 200, SEED, &[Checker::CorollaryChords]),
            entry(Family::Normal, DIMS, 200, SEED, &[Checker::CorollaryChords]),
        ]),
        containment,
    );
    summary(&report, "corollary_chords", 400)
}

fn ellipse(containment: &mut Vec<(bool, f64)>) -> Outcome {
    let report = run_with_containment(
        config(vec![entry(Family::Ginibre, (2, 2), 200, SEED, &[Checker::Ellipse2x2])]),
        containment,
    );
    let base = summary(&report, "ellipse_2x2", 200);
    let jordan = CMatrix::from_real_rows(&[&[0., 1.], &[0., 0.]]).unwrap();
    let tol = Tolerances::default();
    let w = numerical_radius(&jordan, &tol).unwrap();
    let disk = Analysis::new(&jordan, &tol)
        .w()
        .unwrap()
        .support_on(&tol.grid())
        .iter()
        .map(|h| (h - 0.5).abs())
        .fold(0.0, f64::max);
    containment.push((w <= operator_norm(&jordan).unwrap() + 1e-6, 0.0));
    outcome(
        base.passed && (w - 0.5).abs() <= 1e-8 && disk <= 1e-6,
        format!("{}; Jordan block |w-0.5|={:.1e}, d(W, disk(0,1/2))={disk:.1e}", base.detail, (w - 0.5).abs()),
    )
}

fn block_extension(containment: &mut Vec<(bool, f64)>) -> Outcome {
    let mut e = entry(Family::BlockUpperNormal, (2, 4), 200, SEED, &[Checker::BlockExtension]);
    e.tail_dim_range = Some((1, 3));
    let report = run_with_containment(config(vec![e]), containment);
    summary(&report, "block_extension", 200)
}

fn invariants(containment: &[(bool, f64)]) -> Outcome {
    let failures = containment.iter().filter(|(ok, _)| !ok).count();
    let worst = containment.iter().map(|(_, g)| *g).fold(0.0, f64::max);
    outcome(
        failures == 0 && !containment.is_empty(),
        format!(
            "{} matrices, {failures} violations, worst excess {worst:.2e}",
            containment.len()
        ),
    )
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_nrange"))
            .args(["verify", "--seed", "42"])
            .output()
            .expect("nrange binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout;
    outcome(
        same && a.status.success() && b.status.success() && !a.stdout.is_empty(),
        format!(
            "two runs: {} bytes, identical={same}, exit codes {:?}/{:?}",
            a.stdout.len(),
            a.status.code(),
            b.status.code()
        ),
    )
}

fn main() {
    let mut containment = Vec::new();
    let mut results: Vec<(&str, Outcome)> = vec![
        ("worked example E", worked_example()),
        ("ice-cone support function", ice_cone_support()),
        ("peripheral vertices = peripheral spectrum", lemma1(&mut containment)),
        ("normaloid iff W0 meets the boundary of W", theorem1(&mut containment)),
        ("W0 = hull of peripheral spectrum (normal)", theorem2(&mut containment)),
        ("chord union = W0 ∩ ∂W", corollary(&mut containment)),
        ("2x2 elliptical range", ellipse(&mut containment)),
    ];
    let block = block_extension(&mut containment);
    results.push(("W0 containment and w ≤ ‖A‖", invariants(&containment)));
    results.push(("block-normal inclusion", block));
    results.push(("verify determinism", determinism()));

    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2}. {name}: {}", i + 1, o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
