//! Scenario runner for the `kmdual` binary.

pub mod parse;
pub mod report;
pub mod scenario;

pub use parse::{parse_algebra_file, AlgebraFile};
pub use report::{Check, ScenarioReport};
pub use scenario::{run, InputError, Options, Scenario};
