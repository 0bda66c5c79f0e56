use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("permutation {0} is not vexillary (contains 2143)")]
    NotVexillary(String),
    #[error("permutation {0} is not 1432-avoiding")]
    Not1432Avoiding(String),
    #[error("permutation {0} is not 321-avoiding")]
    Not321Avoiding(String),
    #[error("permutation {0} is not Grassmannian")]
    NotGrassmannian(String),
    #[error("descents differ: {0} vs {1}")]
    DescentMismatch(usize, usize),
    #[error("{w} is not below {v} in Bruhat order")]
    NotBruhatComparable { w: String, v: String },
    #[error("shape {inner} is not contained in {outer}")]
    ShapeNotContained { inner: String, outer: String },
    #[error("partition {0} has more than {1} parts")]
    TooManyParts(String, usize),
    #[error("the identity permutation has no maximal corner")]
    IdentityHasNoCorner,
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(String),
    #[error("enumeration exceeded budget of {0} items")]
    EnumerationBudgetExceeded(u64),
    #[error("invalid ladder corners: {0}")]
    InvalidCorners(String),
    #[error("marked point ({0},{1}) is not on the ladder boundary")]
    PointOffBoundary(usize, usize),
    #[error("rank chain violation: {0}")]
    RankChainViolation(String),
    #[error("ladder cell ({0},{1}) lies in no minor region")]
    UncoveredVariable(usize, usize),
    #[error("no permutation realizes the rank data: {0}")]
    NoSuchPermutation(String),
    #[error("division by x{0} - x{1} left a nonzero remainder")]
    NonExactDivision(u32, u32),
    #[error("diagram is not the Rothe diagram of a permutation: {0}")]
    ReconstructionFailure(String),
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
}

impl Error {
    /// Errors caused by bad input, as opposed to broken internal invariants.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::NonExactDivision(..)
                | Error::ReconstructionFailure(_)
                | Error::InternalMismatch(_)
        )
    }
}
