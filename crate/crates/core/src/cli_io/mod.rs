//! The line-oriented spec format, JSON reports and the command-line front end.
//!
//! ```text
//! algebra sl2
//! basis E F H
//! bracket E F = 1 H
//! bracket H E = 2 E
//! bracket H F = -2 F
//! frame E F H
//! ```
//!
//! `#` starts a comment. Unlisted pairs bracket to zero. The frame line names
//! the `E¹` direction, the `E²` direction and the Reeb field, in that order.

mod cli;
mod report;
mod spec_format;

pub use cli::{cli_dispatch, random_heis_point, CliOutcome, EXIT_FAILURE, EXIT_USAGE};
pub use report::{
    analyze, emit_report, frame_echo, ClassificationSection, ConnectionSection, FrameSection, MetricSection,
    PipelineError, Report, Stage, TransformSection, TOOL,
};
pub use spec_format::{parse_algebra_spec, render_spec, ParseError, ParseErrorKind, ParsedSpec};
