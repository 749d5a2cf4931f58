//! Exact search for subtilings of polyomino tilings of rectangles.
//!
//! A tiling of the `n x m` rectangle admits a *subtiling* when its pieces can
//! be rearranged into a tiling of an `n x m'` rectangle placed beside a tiling
//! of an `n x (m - m')` rectangle. This crate provides a memoized
//! broken-profile tiling kernel ([`enumerate`]), the subtiling decision
//! procedures and threshold searches built on it ([`subtile`]), row-assigned
//! tilings ([`represent`]), closed-form constructions for rectangles
//! ([`constructive`]), the reduction from number partitioning ([`reduce`]),
//! and exact evaluation of the known degree bounds ([`bounds`]).

pub mod bounds;
pub mod budget;
pub mod constructive;
pub mod enumerate;
mod error;
pub mod geometry;
pub mod reduce;
pub mod represent;
pub mod subtile;

pub use budget::Budget;
pub use error::{Error, Result};
pub use geometry::{
    close_library, multiset_of, normalize, transforms, validate_tiling, vertical_faults, Cell, Library,
    PieceMultiset, Placement, Polyomino, Symmetry, Tiling, Transform, TransformMode, Violation,
};
