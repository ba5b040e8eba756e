//! Exact-arithmetic toolkit for q^r-divisible sets of k-subspaces of GF(q)^v.
//!
//! The crate covers four layers:
//!
//! * [`algebra`]: big integers, Gaussian numbers, prime-power fields, extension
//!   fields and dense linear algebra over GF(q).
//! * [`subspace`] and [`incidence`]: canonical subspaces, hyperplane and triple
//!   spectra, the counting identities and the divisibility exponent.
//! * [`constructions`]: spreads, lifted MRD partial spreads and direct sums.
//! * [`criteria`], [`lp`] and [`spectrum`]: analytic exclusion criteria, tight
//!   lower bounds, the exact LP method and per-cardinality reports.
//!
//! The `divsets` binary exposes everything through [`cli::run`].

pub mod algebra;
pub mod cli;
pub mod constructions;
pub mod criteria;
mod error;
pub mod format;
pub mod incidence;
pub mod limits;
pub mod lp;
pub mod spectrum;
pub mod subspace;

pub use error::{Error, Result};
pub use limits::Limits;
