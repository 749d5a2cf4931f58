use std::fmt;

use serde::{Deserialize, Serialize};

use super::library::Library;
use super::polyomino::{Cell, Polyomino};
use super::transform::{Symmetry, Transform};
use crate::error::{Error, Result};

/// One piece of a tiling: library index, transform, and the bottom-left
/// corner of the transformed piece's bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub piece: usize,
    #[serde(default)]
    pub transform: Transform,
    pub at: Cell,
}

impl Placement {
    pub fn new(piece: usize, transform: Transform, at: Cell) -> Self {
        Placement {
            piece,
            transform,
            at,
        }
    }

    /// The placed shape (translation-normalized).
    pub fn shape(&self, lib: &Library) -> Result<Polyomino> {
        Ok(self.transform.apply(lib.piece(self.piece)?))
    }

    /// Absolute cells covered by this placement.
    pub fn cells(&self, lib: &Library) -> Result<Vec<Cell>> {
        let shape = self.shape(lib)?;
        Ok(shape
            .cells()
            .iter()
            .map(|c| Cell::new(c.x + self.at.x, c.y + self.at.y))
            .collect())
    }
}

/// A claimed tiling of the `n x m` rectangle (`n` rows, `m` columns).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub n: usize,
    pub m: usize,
    pub placements: Vec<Placement>,
}

impl Tiling {
    pub fn new(n: usize, m: usize, placements: Vec<Placement>) -> Self {
        Tiling { n, m, placements }
    }

    pub fn empty(n: usize) -> Self {
        Tiling::new(n, 0, Vec::new())
    }

    /// Juxtaposes `right` to the right of `self`.
    pub fn juxtapose(&self, right: &Tiling) -> Tiling {
        assert_eq!(self.n, right.n, "juxtaposed tilings must share a height");
        let shift = self.m as u32;
        let mut placements = self.placements.clone();
        placements.extend(right.placements.iter().map(|p| Placement {
            at: Cell::new(p.at.x + shift, p.at.y),
            ..*p
        }));
        Tiling::new(self.n, self.m + right.m, placements)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    UnknownPiece { placement: usize },
    ForbiddenTransform { placement: usize },
    OutOfBounds { placement: usize, cell: Cell },
    Overlap { cell: Cell },
    Uncovered { cell: Cell },
    /// The placement does not span the rows it was assigned.
    OffAssignedRows { placement: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownPiece { placement } => write!(f, "placement {placement}: unknown piece"),
            Violation::ForbiddenTransform { placement } => {
                write!(f, "placement {placement}: transform not permitted")
            }
            Violation::OutOfBounds { placement, cell } => {
                write!(f, "placement {placement}: cell {cell} outside the board")
            }
            Violation::Overlap { cell } => write!(f, "overlap at {cell}"),
            Violation::Uncovered { cell } => write!(f, "uncovered {cell}"),
            Violation::OffAssignedRows { placement } => {
                write!(f, "placement {placement}: off its assigned rows")
            }
        }
    }
}

/// Checks that placements exactly cover the cells accepted by `target`
/// inside the `n x m` box. Placement-level problems come first, then
/// per-cell problems in column-major order.
pub(crate) fn check_cover(
    lib: &Library,
    n: usize,
    m: usize,
    placements: &[Placement],
    sym: Symmetry,
    target: impl Fn(Cell) -> bool,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut cover = vec![0u32; n * m];
    for (i, p) in placements.iter().enumerate() {
        let Ok(cells) = p.cells(lib) else {
            out.push(Violation::UnknownPiece { placement: i });
            continue;
        };
        if !sym.contains(p.transform) {
            out.push(Violation::ForbiddenTransform { placement: i });
        }
        for c in cells {
            if (c.x as usize) < m && (c.y as usize) < n && target(c) {
                cover[c.x as usize * n + c.y as usize] += 1;
            } else {
                out.push(Violation::OutOfBounds { placement: i, cell: c });
            }
        }
    }
    for x in 0..m {
        for y in 0..n {
            let cell = Cell::new(x as u32, y as u32);
            match cover[x * n + y] {
                0 if target(cell) => out.push(Violation::Uncovered { cell }),
                0 | 1 => {}
                _ => out.push(Violation::Overlap { cell }),
            }
        }
    }
    out
}

/// Violations of the library's own placement rules; empty iff the tiling
/// exactly partitions the rectangle.
pub fn validate_tiling(lib: &Library, t: &Tiling) -> Vec<Violation> {
    validate_tiling_with(lib, t, lib.symmetry())
}

/// As [`validate_tiling`], permitting any transform in `sym`.
pub fn validate_tiling_with(lib: &Library, t: &Tiling, sym: Symmetry) -> Vec<Violation> {
    check_cover(lib, t.n, t.m, &t.placements, sym, |_| true)
}

pub(crate) fn ensure_valid(lib: &Library, t: &Tiling, sym: Symmetry) -> Result<()> {
    let v = validate_tiling_with(lib, t, sym);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidTiling(v))
    }
}

/// Interior vertical lines `x` in `1..m` not crossing any piece.
pub fn vertical_faults(lib: &Library, t: &Tiling) -> Result<Vec<usize>> {
    ensure_valid(lib, t, Symmetry::Full)?;
    Ok(faults_unchecked(lib, t))
}

fn faults_unchecked(lib: &Library, t: &Tiling) -> Vec<usize> {
    let mut crossed = vec![false; t.m.max(1)];
    for p in &t.placements {
        let Ok(shape) = p.shape(lib) else { continue };
        for c in shape.cells() {
            if shape.contains(Cell::new(c.x + 1, c.y)) {
                if let Some(slot) = crossed.get_mut((p.at.x + c.x + 1) as usize) {
                    *slot = true;
                }
            }
        }
    }
    (1..t.m).filter(|&x| !crossed[x]).collect()
}
