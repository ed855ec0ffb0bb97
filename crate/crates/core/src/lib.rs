//! Classification of equivariant line bundles, local systems and filtered
//! objects on fastened orbit chains, computed on character lattices.

pub mod chaincore;
mod error;
pub mod filtobj;
pub mod groupdata;
pub mod intlin;
pub mod report;
pub mod tamering;

pub use error::{Error, Result};
