use crate::error::{Error, Result};
use crate::geometry::{Library, PieceMultiset, Polyomino, Symmetry, Transform};

/// One placeable orientation of a library piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Candidate {
    pub piece: usize,
    pub transform: Transform,
    pub shape: Polyomino,
    pub class: usize,
    /// When set, the bottom row of the placed shape must be this row.
    pub fixed_row: Option<u32>,
}

/// The shape classes of a library under a symmetry, and every distinct
/// oriented shape the library can place. Classes are listed in the order
/// their first member appears in the library.
#[derive(Debug, Clone)]
pub(crate) struct Catalogue {
    pub sym: Symmetry,
    pub classes: Vec<Polyomino>,
    pub candidates: Vec<Candidate>,
}

impl Catalogue {
    /// `sym` is widened to include the library's own transforms.
    pub fn new(lib: &Library, sym: Symmetry) -> Self {
        let sym = sym.join(lib.symmetry());
        let mut classes: Vec<Polyomino> = Vec::new();
        let mut candidates: Vec<Candidate> = Vec::new();
        for (piece, p) in lib.pieces().iter().enumerate() {
            let rep = sym.canonical(p);
            let class = match classes.iter().position(|c| *c == rep) {
                Some(i) => i,
                None => {
                    classes.push(rep);
                    classes.len() - 1
                }
            };
            for &transform in sym.elements() {
                let shape = transform.apply(p);
                if candidates.iter().any(|c| c.shape == shape) {
                    continue;
                }
                candidates.push(Candidate {
                    piece,
                    transform,
                    shape,
                    class,
                    fixed_row: None,
                });
            }
        }
        Catalogue {
            sym,
            classes,
            candidates,
        }
    }

    pub fn class_of(&self, shape: &Polyomino) -> Option<usize> {
        let rep = self.sym.canonical(shape);
        self.classes.iter().position(|c| *c == rep)
    }

    pub fn area(&self, class: usize) -> u64 {
        self.classes[class].area() as u64
    }

    /// Count vector of `ms` after coarsening it to this catalogue's classes.
    pub fn vector(&self, ms: &PieceMultiset) -> Result<Vec<u32>> {
        let ms = ms.coarsen(self.sym);
        let mut v = vec![0; self.classes.len()];
        for (shape, c) in ms.iter() {
            let k = self.class_of(shape).ok_or(Error::ShapeNotInLibrary)?;
            v[k] += c;
        }
        Ok(v)
    }

    pub fn multiset(&self, v: &[u32]) -> PieceMultiset {
        PieceMultiset::from_counts(
            self.sym,
            self.classes.iter().cloned().zip(v.iter().copied()),
        )
    }

    pub fn vector_area(&self, v: &[u32]) -> u64 {
        v.iter().enumerate().map(|(k, &c)| c as u64 * self.area(k)).sum()
    }
}
