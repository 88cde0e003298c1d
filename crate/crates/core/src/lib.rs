//! Exact-arithmetic tools for the blow-up compactifications `T_{s,p,n}` of
//! Grassmannians and the associated complete-collineation spaces `M_{s,p,n}`.
//!
//! Everything here is exact: integers are arbitrary precision, scalars are
//! big rationals, and no floating point appears anywhere. The crate covers
//!
//! * index-set combinatorics, the dual/upside-down involutions and orbit
//!   closure signatures ([`params`]),
//! * a small sparse multivariate polynomial ring over big integers with
//!   symbolic determinants ([`poly`]),
//! * Pluecker coordinates, quadratic relations, dual/reversal point maps and
//!   the layered coordinate charts with their pullback verification
//!   ([`grassmann`]),
//! * divisor-class arithmetic on the Picard lattices of both spaces,
//!   canonical bundles and the induced lattice automorphisms ([`picard`]),
//! * the catalog of torus-invariant curves with exact intersection vectors,
//!   anticanonical degrees and positivity verdicts ([`curves`]),
//! * exact rational cone membership and extremal-ray computation ([`cone`]),
//! * the automorphism-group classifier ([`classify`]),
//! * and the batched verification sweep used by the CLI ([`verify`]).

pub mod classify;
pub mod cone;
pub mod curves;
pub mod grassmann;
pub mod params;
pub mod picard;
pub mod poly;
pub mod rat;
pub mod verify;

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters (s={s}, p={p}, n={n}): {reason}")]
    InvalidParams { s: usize, p: usize, n: usize, reason: String },

    #[error("parameters (s={0}, p={1}, n={2}) are not normalized: need 2p <= n <= 2s")]
    NotNormalized(usize, usize, usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid index tuple: {0}")]
    InvalidIndexTuple(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix side {side} exceeds the determinant bound {bound}")]
    DeterminantBound { side: usize, bound: usize },

    #[error("missing variable in assignment: {0}")]
    MissingVariable(String),

    #[error("matrix is rank deficient")]
    RankDeficient,

    #[error("chart index is not admissible: {0}")]
    InvalidChart(String),

    #[error("divisor lives on space {got}, expected space {expected}")]
    SpaceMismatch { expected: String, got: String },

    #[error("{0}")]
    ConstraintViolation(String),

    #[error("incomplete Pluecker index coverage: {0}")]
    IncompleteCoverage(String),

    #[error("negative anticanonical degree on {curve}: {value}")]
    NegativeDegree { curve: String, value: String },

    #[error("bad rational literal: {0}")]
    BadRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
