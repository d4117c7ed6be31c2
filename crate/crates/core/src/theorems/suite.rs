//! Randomized batteries of checkers driven by a JSON-serializable config.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{self, example_matrix, CheckResult, Checker};
use super::generate::{generate, Family, GenSpec, Generated};
use super::rng::derive_seed;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::numrange::{Analysis, Tolerances};

/// Where the matrices of an entry come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Source {
    Random(Family),
    /// A fixed matrix (the entry's `matrix`, or the strict-inclusion example).
    Fixture,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Random(family) => family.fmt(f),
            Source::Fixture => f.write_str("fixture"),
        }
    }
}

impl TryFrom<String> for Source {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        if s == "fixture" {
            Ok(Source::Fixture)
        } else {
            s.parse().map(Source::Random)
        }
    }
}

impl From<Source> for String {
    fn from(s: Source) -> String {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub family: Source,
    /// Inclusive range of matrix sizes.
    #[serde(default = "default_dims")]
    pub dim_range: (usize, usize),
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    pub checkers: Vec<Checker>,
    /// Inclusive range of bottom-block sizes for `block_upper_normal`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_dim_range: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<CMatrix>,
    /// Overrides the per-checker tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

fn default_dims() -> (usize, usize) {
    (2, 8)
}

impl SuiteEntry {
    pub fn random(family: Family, dims: (usize, usize), trials: usize, seed: u64) -> Self {
        SuiteEntry {
            family: Source::Random(family),
            dim_range: dims,
            trials,
            seed,
            checkers: Vec::new(),
            tail_dim_range: None,
            matrix: None,
            tolerance: None,
        }
    }

    pub fn fixture(matrix: Option<CMatrix>) -> Self {
        SuiteEntry {
            family: Source::Fixture,
            dim_range: default_dims(),
            trials: 1,
            seed: 0,
            checkers: Vec::new(),
            tail_dim_range: None,
            matrix,
            tolerance: None,
        }
    }

    pub fn with_checkers(mut self, checkers: &[Checker]) -> Self {
        self.checkers = checkers.to_vec();
        self
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.dim_range;
        if lo == 0 || lo > hi {
            return Err(Error::InvalidSpec(format!("bad dim_range ({lo}, {hi})")));
        }
        if let Some((lo, hi)) = self.tail_dim_range {
            if lo == 0 || lo > hi {
                return Err(Error::InvalidSpec(format!("bad tail_dim_range ({lo}, {hi})")));
            }
        }
        if self.trials == 0 {
            return Err(Error::InvalidSpec("trials must be at least 1".into()));
        }
        if self.checkers.is_empty() {
            return Err(Error::InvalidSpec(format!("entry `{}` has no checkers", self.family)));
        }
        if self.matrix.is_some() && self.family != Source::Fixture {
            return Err(Error::InvalidSpec("`matrix` is only allowed on fixture entries".into()));
        }
        Ok(())
    }

    /// The `index`-th draw of this entry.
    pub fn draw_spec(&self, index: usize) -> Option<GenSpec> {
        let Source::Random(family) = self.family else {
            return None;
        };
        let seed = derive_seed(self.seed, family.id(), index as u64);
        let pick = |(lo, hi): (usize, usize), salt: u64| {
            lo + (derive_seed(seed, salt, 0) % (hi - lo + 1) as u64) as usize
        };
        let tail_dim = match family {
            Family::BlockUpperNormal => Some(pick(self.tail_dim_range.unwrap_or((1, 3)), 2)),
            _ => None,
        };
        Some(GenSpec {
            seed,
            dim: pick(self.dim_range, 1),
            family,
            tail_dim,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub entries: Vec<SuiteEntry>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl SuiteConfig {
    /// The standard battery: every checker on the families it applies to.
    pub fn standard(seed: u64, trials: usize, dims: (usize, usize)) -> Self {
        use Checker::*;
        let shared = [Lemma1, Theorem1, CorollaryChords, Containment];
        let entry = |family, dims, checkers: &[Checker]| {
            SuiteEntry::random(family, dims, trials, seed).with_checkers(checkers)
        };
        let mut block = entry(Family::BlockUpperNormal, dims, &[BlockExtension]);
        block.tail_dim_range = Some((1, 3));
        SuiteConfig {
            entries: vec![
                entry(Family::Ginibre, dims, &shared),
                entry(Family::Normal, dims, &[Lemma1, Theorem1, CorollaryChords, Theorem2, Containment]),
                entry(Family::Unitary, dims, &shared),
                entry(Family::Nilpotent, dims, &shared),
                entry(Family::NormaloidDirectSum, dims, &shared),
                block,
                entry(Family::Ginibre, (2, 2), &[Ellipse2x2, Boundary2x2]),
                SuiteEntry::fixture(None)
                    .with_checkers(&[ChMayFail, Lemma1, Theorem1, CorollaryChords, Containment]),
            ],
            tolerances: Tolerances::default(),
        }
    }
}

/// Outcome of one draw under one checker, plus the draw it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub entry: usize,
    pub source: Source,
    pub index: usize,
    pub result: CheckResult,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckerSummary {
    pub runs: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub results: Vec<SuiteResult>,
    pub summary: BTreeMap<String, CheckerSummary>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.result.passed || r.result.inconclusive)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteResult> {
        self.results
            .iter()
            .filter(|r| !r.result.passed && !r.result.inconclusive)
    }
}

fn matrix_for(entry: &SuiteEntry, index: usize) -> Result<(Generated, Option<GenSpec>)> {
    match entry.draw_spec(index) {
        Some(spec) => Ok((generate(&spec)?, Some(spec))),
        None => {
            let matrix = entry.matrix.clone().unwrap_or_else(example_matrix);
            Ok((Generated { matrix, extension: None }, None))
        }
    }
}

fn run_checker(
    checker: Checker,
    an: &Analysis,
    draw: &Generated,
    seed: u64,
    tol: &Tolerances,
) -> Result<CheckResult> {
    match checker {
        Checker::Lemma1 => checks::lemma1(an),
        Checker::Theorem1 => checks::theorem1(an),
        Checker::CorollaryChords => checks::corollary_chords(an),
        Checker::Theorem2 => checks::theorem2(an),
        Checker::Containment => checks::containment(an),
        Checker::ChMayFail => checks::check_ch_may_fail_on(an.matrix(), tol),
        Checker::Ellipse2x2 => checks::check_ellipse_oracle(an.matrix(), tol),
        Checker::Boundary2x2 => checks::boundary_2x2(an.matrix(), seed, tol),
        Checker::BlockExtension => match &draw.extension {
            Some(ext) => checks::check_block_extension(ext, tol),
            None => Err(Error::InvalidSpec(
                "block_extension needs a block_upper_normal draw".into(),
            )),
        },
    }
}

fn run_draw(config: &SuiteConfig, entry_idx: usize, index: usize) -> Vec<SuiteResult> {
    let entry = &config.entries[entry_idx];
    let tol = &config.tolerances;
    let wrap = |result: CheckResult| SuiteResult {
        entry: entry_idx,
        source: entry.family,
        index,
        result,
    };
    let (draw, spec) = match matrix_for(entry, index) {
        Ok(d) => d,
        Err(err) => {
            return entry
                .checkers
                .iter()
                .map(|c| wrap(CheckResult::errored(c.name(), &err, None)))
                .collect();
        }
    };
    let seed = spec.map_or(entry.seed, |s| s.seed);
    let an = Analysis::new(&draw.matrix, tol);
    entry
        .checkers
        .iter()
        .map(|&checker| {
            let mut result = match run_checker(checker, &an, &draw, seed, tol) {
                Ok(r) => r,
                Err(err) => CheckResult::errored(checker.name(), &err, Some(&draw.matrix)),
            };
            if let Some(t) = entry.tolerance {
                let witness = result
                    .witness
                    .as_ref()
                    .map_or_else(|| draw.matrix.clone(), |w| w.matrix.clone());
                result = result.rejudged(t, &witness);
            }
            result.draw = spec;
            wrap(result)
        })
        .collect()
}

/// Runs every entry of `config`. Results come back in entry order, then draw
/// order, then checker order, independent of thread scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    if config.entries.is_empty() {
        return Err(Error::InvalidSpec("suite config has no entries".into()));
    }
    config.tolerances.validate()?;
    for entry in &config.entries {
        entry.validate()?;
    }
    let jobs: Vec<(usize, usize)> = config
        .entries
        .iter()
        .enumerate()
        .flat_map(|(e, entry)| (0..entry.trials).map(move |i| (e, i)))
        .collect();
    let results: Vec<SuiteResult> = jobs
        .par_iter()
        .map(|&(e, i)| run_draw(config, e, i))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let mut summary: BTreeMap<String, CheckerSummary> = BTreeMap::new();
    for r in &results {
        let s = summary.entry(r.result.name.clone()).or_default();
        s.runs += 1;
        if r.result.inconclusive {
            s.inconclusive += 1;
        } else if r.result.passed {
            s.passed += 1;
        } else {
            s.failed += 1;
        }
    }
    Ok(SuiteReport { results, summary })
}
