use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar literal {0:?}")]
pub struct ParseScalarError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSize { size: usize, rows: usize, cols: usize },
    #[error("polynomial is not univariate in t: {0}")]
    NotUnivariate(String),
    #[error("datum does not satisfy the ADHM equation")]
    NotAdhm,
    #[error("datum is not stable")]
    NotStable,
    #[error("expected a rank-0 datum, got r = {0}")]
    NonzeroRank(usize),
    #[error("module relations fail")]
    RelationsFail,
    #[error("matrix is singular")]
    Singular,
    #[error("all coordinates of a projective point are zero")]
    ZeroPoint,
    #[error("line endpoints coincide")]
    CoincidentPoints,
    #[error("framing along l_inf fails: {0}")]
    Framing(String),
    #[error("size guard exceeded: c = {c} > {max}")]
    SizeGuard { c: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
