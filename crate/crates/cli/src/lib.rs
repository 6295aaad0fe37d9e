//! Command-line front end, JSON and Graphviz formats for `ciliate-core`.

mod app;
pub mod dot;
pub mod input;
pub mod json;

pub use app::run;
