//! Front ends for the termination prover: the REPL command language, batch
//! replay and the HTTP API.

pub mod api;
pub mod batch;
pub mod shell;
