//! Library side of the `zf` command: argument definitions, report
//! documents, the command runner and the CSV/table renderers.

pub mod args;
pub mod render;
pub mod report;
pub mod run;
