//! Randomized and fixed-matrix checks of the structural facts relating `W`,
//! `W0`, normaloidity and the peripheral spectrum.

pub mod checks;
pub mod generate;
pub mod rng;
pub mod suite;

pub use checks::{
    check_2x2_boundary_condition, check_block_extension, check_ch_may_fail,
    check_ch_may_fail_on, check_containment, check_corollary_chords, check_ellipse_oracle,
    check_lemma1, check_theorem1, check_theorem2, CheckResult, Checker, Comparison, Witness,
};
pub use generate::{generate, BlockExtension, Family, GenSpec, Generated};
pub use rng::MatrixRng;
pub use suite::{run_suite, SuiteConfig, SuiteEntry, SuiteReport, SuiteResult};
