//! Exact computation of probabilistic Stirling numbers and probabilistic
//! (degenerate, higher-order) Frobenius–Euler polynomials, and expansion of
//! arbitrary polynomials in those bases.
//!
//! Everything is carried out over exact rationals on truncated formal power
//! series stored in the exponential-generating convention (`c_n` against
//! `t^n/n!`).

pub mod closedforms;
pub mod exact;
pub mod export;
pub mod families;
pub mod parse;
pub mod represent;
pub mod rvmodels;
pub mod series;
pub mod stirling;
pub mod umbral;
pub mod verify;

pub use exact::Rational;
pub use families::{build_family, FamilySpec, PolynomialFamily};
pub use represent::{BasisExpansion, Formula, Representer};
pub use rvmodels::MomentModel;
pub use series::{BivariateSeries, TruncatedSeries, XPolynomial};
pub use stirling::{StirlingFamily, StirlingTable};

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    RationalSyntax(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series must have zero constant term")]
    NonzeroConstant,
    #[error("series must have invertible constant term")]
    ZeroConstant,
    #[error("series must have constant term 1")]
    ConstantNotOne,
    #[error("not a delta series (need c_0 = 0 and c_1 != 0)")]
    NotDeltaSeries,
    #[error("u = 1 is not allowed (every family assumes u != 1)")]
    UEqualsOne,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("model has E[Y] = 0")]
    ZeroMean,
    #[error("moment of order {requested} requested, only {available} supplied")]
    MomentOutOfRange { requested: usize, available: usize },
    #[error("operator order {have} is below polynomial degree {needed}")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("zero diagonal entry at row {0}")]
    SingularDiagonal(usize),
    #[error("incompatible specs: {0}")]
    SpecMismatch(String),
    #[error("unsupported model for this operation: {0}")]
    UnsupportedModel(String),
    #[error("syntax error at {pos}: {msg}")]
    PolySyntax { pos: usize, msg: String },
    #[error("bad document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
