//! Parameter sweeps, threshold searches and random-state studies built on
//! `netsteer`, with CSV/JSON report output.

pub mod bisect;
pub mod error;
pub mod formulas;
pub mod report;
pub mod spec;
pub mod sweeps;

pub use bisect::{bisect, Bisection};
pub use error::{RunError, RunResult};
pub use report::{ExperimentReport, Table, Value};
pub use spec::{OutputFormat, SweepKind, SweepSpec, ToleranceProfile};
