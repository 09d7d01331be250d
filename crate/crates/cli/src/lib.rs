//! Command-line front end for `rough-matroid`: instance documents, query
//! dispatch and verification campaigns. The `rmat` binary is a thin wrapper
//! around [`app::run`].

pub mod app;
pub mod campaign;
pub mod instance_file;

pub use app::{run, Outcome};
