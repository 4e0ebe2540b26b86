pub mod angular;
pub mod circle;
pub mod clark;
pub mod cli;
pub mod discmap;
pub mod error;
pub mod harmonic;
pub mod io;
pub mod numeric;
pub mod profile;
pub mod quad;
pub mod theorem;
pub mod verdict;

pub use error::{Error, Result};
