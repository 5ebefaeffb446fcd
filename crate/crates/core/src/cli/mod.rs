//! Spec-file language and command driver.

pub mod model;
pub mod run;
pub mod show;
pub mod syntax;

pub use model::{resolve, Model};
pub use run::{error_exit_code, run, Flags, Report};
pub use syntax::{parse_spec, SpecFile};
