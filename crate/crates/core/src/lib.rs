//! Exact construction of the rational `sl2` R-matrix in arbitrary spin from
//! localization data of stable bases at `n = 2`.
//!
//! Everything is computed over `Q` in the equivariant parameters `z`, `phi`,
//! `eps`; the spin chain is reached by `eps = -ell phi`, `phi = 1`.

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod export;
pub mod moduli;
pub mod oracle;
pub mod report;
pub mod rmatrix;
pub mod stablebasis;

pub use error::{Error, Result};
