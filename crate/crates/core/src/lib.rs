pub mod catalog;
pub mod engine;
pub mod error;
pub mod exact;
pub mod gram;
pub mod io;
pub mod maps;
pub mod rings;
pub mod scale;
pub mod verify;

pub use error::{Error, Result};
