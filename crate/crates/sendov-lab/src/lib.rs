//! IO companion for `sendov-core`: polynomial file formats, config
//! handling, and the verification suite behind the CLI.

pub mod config;
pub mod formats;
pub mod verify;
