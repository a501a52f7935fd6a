use thiserror::Error;

use crate::scalar::Rat;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("series orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term is not invertible")]
    NonInvertibleConstant,
    #[error("{0} requires constant term 1")]
    ConstantTermNotOne(&'static str),
    #[error("{0} requires constant term 0")]
    ConstantTermNotZero(&'static str),
    #[error("series reversion requires an invertible linear term")]
    NonUnitLinearTerm,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinearError {
    #[error("system has rank {rank} < {unknowns}; undetermined direction {null_direction:?}")]
    RankDeficient {
        rank: usize,
        unknowns: usize,
        null_direction: Vec<Rat>,
    },
    #[error("row {row} has nonzero residual {residual}")]
    Inconsistent { row: usize, residual: Rat },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("intersection form is singular")]
    SingularGram,
    #[error("intersection form must be symmetric")]
    AsymmetricGram,
    #[error("expected {expected} entries, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("unknown surface preset {0:?}")]
    UnknownPreset(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("vector is not homogeneous of conformal degree {expected}")]
    NotHomogeneous { expected: usize },
    #[error("monomial of top algebraic degree other than q_1(pt)^n found")]
    UnexpectedTopMonomial,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChiError {
    #[error("surface {0:?} has no toric model")]
    UnsupportedSurface(String),
    #[error("line bundle degree has {got} entries, surface needs {expected}")]
    DegreeShape { expected: usize, got: usize },
    #[error("no generic specialization found")]
    NoGenericSpecialization,
    #[error("specializations {first:?} and {second:?} disagree: {a} vs {b}")]
    SpecializationMismatch {
        first: (i64, i64),
        second: (i64, i64),
        a: Box<Rat>,
        b: Box<Rat>,
    },
    #[error("bad bundle spec {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("order {order}: {source}")]
    Linear {
        order: usize,
        #[source]
        source: LinearError,
    },
    #[error("datapoint {index} has rank {got}, expected {expected}")]
    WrongRank { index: usize, expected: i64, got: i64 },
    #[error("need at least {needed} datapoints, have {have}")]
    TooFewDatapoints { needed: usize, have: usize },
    #[error("order {order}: datapoint {datapoint} misses the fit by {residual}")]
    Residual { order: usize, datapoint: usize, residual: Rat },
    #[error("coefficient of degree {index}: rank {rank} misses the interpolant by {residual}")]
    Interpolation { index: usize, rank: i64, residual: Rat },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Chi(#[from] ChiError),
    #[error(transparent)]
    Fock(#[from] FockError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linear(#[from] LinearError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Chi(#[from] ChiError),
    #[error(transparent)]
    Fit(#[from] FitError),
}
