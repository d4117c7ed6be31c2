//! File formats, report emission, plotting and the `nrange` command line.

pub mod app;
pub mod json;
pub mod matrix_file;
pub mod report;
pub mod svg;

pub use app::run;
pub use matrix_file::{parse_matrix, Format, ParseError};
pub use report::ReportJson;
