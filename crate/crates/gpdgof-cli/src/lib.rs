//! Library side of the command-line tool: bundled data, CSV ingestion and
//! report assembly. The binary in `main.rs` is a thin wrapper over this.

pub mod datasets;
pub mod ingest;
pub mod report;
