//! Input parsing, report assembly and the property suite behind the CLI.

pub mod input;
pub mod report;
pub mod selftest;

pub use input::{parse_input, read_input, InputDocument, Payload};
pub use report::{
    run_classify, run_dims, run_expmap, run_family, ClassificationReport, DimsReport, ExpReport,
    FamilyRunReport, OutputFormat,
};
pub use selftest::{run_property_suite, PropertyResult, SuiteReport};
