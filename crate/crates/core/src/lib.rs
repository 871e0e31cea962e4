//! Combinatorics of the modular generalized Springer correspondence for
//! classical and exceptional groups in rather good characteristic.

pub mod cli;
pub mod cuspidal;
pub mod levi;
pub mod orbits;
pub mod partitions;
pub mod springerdata;
pub mod weylrep;
