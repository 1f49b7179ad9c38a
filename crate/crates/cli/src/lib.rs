//! Command-line front end for `eisenstein-core`: polynomial parsing, command
//! dispatch and JSON/TSV reports.

pub mod app;
pub mod expr;
pub mod report;

pub use app::run;
pub use expr::{parse_poly, ParseError, PolyExpr};
