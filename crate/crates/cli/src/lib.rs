//! Front end for `tanner-zx`: alist and process-document I/O plus the
//! `tanner-zx` command set.

pub mod alist;
pub mod commands;
pub mod document;
pub mod error;

pub use alist::{emit_alist, parse_alist, parse_dense};
pub use commands::{run, EXIT_ERROR, EXIT_FAIL, EXIT_PASS};
pub use document::{from_json, to_json, ProcessDocument};
pub use error::CliError;
