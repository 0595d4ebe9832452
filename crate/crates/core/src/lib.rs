//! Bijections between restricted partition families: Zeilberger's Algorithm Z, the
//! refinement `ψ`, the map `φ_M`, the Rogers-Ramanujan correspondence `χ`, and the
//! k-rank injections, with an exact q-series engine and a brute-force oracle.

pub mod algz;
pub mod chi;
pub mod error;
pub mod krank;
pub mod oracle;
pub mod partition;
pub mod phi;
pub mod psi;
pub mod qseries;

pub use error::{Error, Result};
pub use partition::{DurfeeChain, FrequencyView, PaddedPartition, Partition};
