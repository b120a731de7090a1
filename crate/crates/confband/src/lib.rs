//! Confidence bands for sets of time series.
//!
//! Given `n` time series over `m` positions and a designated seed series,
//! this crate computes:
//!
//! * exact *regularized* bands (minimizers of envelope area minus
//!   `alpha` times the member count) via a minimum-cut reduction,
//! * the complete nested chain of all regularized bands together with the
//!   `alpha` breakpoints where the solution changes,
//! * fixed-size approximate bands minimizing envelope area (with a
//!   `sqrt(n) + 1` guarantee) or envelope width (2-approximation),
//! * brute-force exact solvers for small instances, used as ground truth
//!   in tests and exposed through the CLI.

pub mod approx;
pub mod chain;
pub mod flow;
pub mod model;
pub mod oracle;
pub mod regband;

pub use approx::{find_inf, find_sum, greedy_extend, peel, resolve_k, Algorithm, ApproxResult};
pub use chain::{delta_gap, enumerate_chain, enumerate_chain_with, BandChain, ChainOptions};
pub use flow::{CutResult, FlowNetwork};
pub use model::{
    area_score, derive_seed, envelope, reg_score, width_score, Band, SeedPolicy, SeriesMatrix,
};
pub use oracle::{exact_infband, exact_regband, exact_sumband, generate, Flavor, InstanceSpec};
pub use regband::{build_value_grid, solve_regband, RegBandSolution, ValueGrid};

use thiserror::Error;

/// Errors shared by every solver in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty band")]
    EmptyBand,
    #[error("seed not in band")]
    SeedNotInBand,
    #[error("series index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("invalid alpha")]
    InvalidAlpha,
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("residual unavailable")]
    ResidualUnavailable,
    #[error("degenerate data")]
    DegenerateData,
    #[error("k below minimal band (smallest regularized band has {minimal} members)")]
    KBelowMinimalBand { minimal: usize },
    #[error("k out of range")]
    KOutOfRange,
    #[error("insufficient candidates")]
    InsufficientCandidates,
    #[error("instance too large for oracle")]
    InstanceTooLarge,
}

pub type Result<T> = std::result::Result<T, Error>;
