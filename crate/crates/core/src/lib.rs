//! Certified evaluation of infinite products over Fibonacci numbers and of
//! Jacobi theta values at the golden-ratio nome.
//!
//! * [`exactnum`]: exact Q(√5) arithmetic and midpoint-radius balls
//! * [`fibonacci`]: Fibonacci numbers and the index-convention probe
//! * [`products`]: Fibonacci products and sums with certified tails
//! * [`theta`]: ϑ₂, ϑ₃, ϑ₄ at nomes in Q(√5) ∩ (0, 1)
//! * [`qseries`]: exact truncated q-series and formal identity checks
//! * [`relations`]: LLL-based integer-relation search with certified acceptance
//! * [`verify`]: the named check registry and its JSON report
//! * [`cli`]: the `fibotheta` command line

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod fibonacci;
pub mod products;
pub mod qseries;
pub mod relations;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
