use thiserror::Error;

use crate::geometry::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polyomino has no cells")]
    EmptyPolyomino,
    #[error("cell set is not edge-connected")]
    Disconnected,
    #[error("cell coordinate ({0}, {1}) is out of range")]
    CoordinateOutOfRange(i64, i64),
    #[error("placement references piece {0}, library has {1} pieces")]
    UnknownPiece(usize, usize),
    #[error("transform id {0} is not an element of the dihedral group")]
    UnknownTransform(u8),
    #[error("shape is not available in the library under the requested symmetry")]
    ShapeNotInLibrary,
    #[error("tiling is invalid: {} violation(s)", .0.len())]
    InvalidTiling(Vec<Violation>),
    #[error("piece {0} is not a rectangle")]
    NotRectangular(usize),
    #[error("multiset does not tile the {n}x{m} rectangle")]
    MultisetDoesNotTile { n: usize, m: usize },
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("frontier of {0} cells exceeds the supported profile width")]
    ProfileTooWide(usize),
    #[error("residual count state space too large to memoize")]
    StateSpaceTooLarge,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bound {bound} = {value} is below the empirical threshold {empirical}")]
    BoundViolated {
        bound: &'static str,
        value: String,
        empirical: usize,
    },
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_))
    }
}
