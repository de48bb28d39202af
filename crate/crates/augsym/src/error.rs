use thiserror::Error;

/// Errors raised by the engine.
///
/// `GuardExceeded` and friends are size guards, not arithmetic failures: the
/// underlying sums are finite but grow like Bell numbers, so every entry
/// point that can blow up checks its input first.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty multiset has no subdivisions")]
    EmptyMultiset,

    #[error("set partitions of {k} elements exceed the guard (1 ..= {max})")]
    SetPartitionGuard { k: u32, max: u32 },

    #[error("total order {order} exceeds the configured maximum {max}")]
    OrderGuard { order: u32, max: u32 },

    #[error("total degree {degree} exceeds the supported maximum {max}")]
    DegreeGuard { degree: u32, max: u32 },

    #[error("labeled monomials are not accepted here; labels belong to bracket products")]
    LabeledInput,

    #[error("exponent vectors must share one width, found {left} and {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("denominator must be a polynomial in n")]
    NonScalarDenominator,

    #[error("products of bracket atoms must be expanded before taking expectations")]
    BracketProduct,

    #[error("formal sample size {n} outside the supported range 1 ..= {max}")]
    SampleSizeGuard { n: u32, max: u32 },

    #[error("specializing at n = {n} is invalid for an expression of total degree {degree}")]
    SpecializationTooSmall { n: u32, degree: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid partition: parts must be positive and weakly decreasing")]
    InvalidPartition,

    #[error("bracket parts and power-sum indices must be non-zero exponent vectors")]
    ZeroExponentVector,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
