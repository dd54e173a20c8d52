//! File formats, bundled datasets and the verification suite behind the `nagata` command.

pub mod acceptance;
pub mod datasets;
pub mod wire;
