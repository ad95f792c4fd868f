//! Error types shared across the crate.

use thiserror::Error;

use crate::model::Face;
use crate::numfmt::sig;

/// Problems with a model document or with the model conditions.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown face name {0:?}")]
    UnknownFace(String),
    #[error("missing face {0}")]
    MissingFace(Face),
    #[error("increment outside 𝕌: ({di}, {dj})")]
    IncrementOutside { di: i64, dj: i64 },
    #[error("probability {value} outside [0, 1] on face {face}")]
    ProbabilityRange { face: Face, value: f64 },
    #[error("duplicate increment ({di}, {dj}) on face {face}")]
    Duplicate { face: Face, di: i8, dj: i8 },
    #[error("increment ({di}, {dj}) leaves the quarter plane from face {face}")]
    SupportViolation { face: Face, di: i8, dj: i8 },
    #[error("mass {} ≠ 1 on face {face}", sig(*.mass))]
    Mass { face: Face, mass: f64 },
    #[error("condition (i) violated: interior walk is not irreducible ({0})")]
    InteriorNotIrreducible(String),
    #[error("condition (ii) violated: reflecting chain is not irreducible ({0})")]
    ChainNotIrreducible(String),
    #[error("condition (ii) violated: reflecting chain has period {0}")]
    ChainPeriodic(u32),
    #[error("condition (iii) violated: interior drift is zero")]
    ZeroDrift,
}

/// Errors raised by the numerical modules.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("model is not stable")]
    Unstable,
    #[error("generating function evaluated at a zero argument")]
    ZeroArgument,
    #[error("abscissa {0} lies on a cut of the branch function")]
    OnCut(String),
    #[error("degenerate kernel quadratic at abscissa {0}")]
    Degenerate(String),
    #[error("branch points: {0}")]
    BranchPoints(String),
    #[error("geometry: {0}")]
    Geometry(String),
    #[error("internal error: both category orderings fail")]
    ImpossibleCategory,
    #[error("no root above 1: {0}")]
    NoRootAboveOne(String),
    #[error("oracle: {0}")]
    Oracle(String),
    #[error("tail fit: {0}")]
    Fit(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
