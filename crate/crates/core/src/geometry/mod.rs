//! Polyominoes, their symmetries, libraries of pieces, and tilings of
//! rectangles.

mod library;
mod multiset;
mod polyomino;
mod tiling;
mod transform;

pub use library::{close_library, Library};
pub use multiset::{multiset_of, multiset_of_with, PieceMultiset};
pub use polyomino::{Cell, Polyomino, PolyominoSpec};
pub(crate) use tiling::check_cover;
pub use tiling::{validate_tiling, validate_tiling_with, vertical_faults, Placement, Tiling, Violation};
pub use transform::{transforms, Symmetry, Transform, TransformMode};

/// Normalizes a raw cell set into a polyomino.
pub fn normalize<I>(cells: I) -> crate::Result<Polyomino>
where
    I: IntoIterator<Item = (i64, i64)>,
{
    Polyomino::from_cells(cells)
}
