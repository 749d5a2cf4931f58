use serde::{Deserialize, Serialize};

use super::polyomino::Polyomino;
use super::transform::{Symmetry, TransformMode};
use crate::error::{Error, Result};

/// A finite set of shapes together with the transforms placements may use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawLibrary")]
pub struct Library {
    pieces: Vec<Polyomino>,
    #[serde(default)]
    mode: TransformMode,
}

#[derive(Deserialize)]
struct RawLibrary {
    #[serde(default)]
    mode: TransformMode,
    pieces: Vec<Polyomino>,
}

impl From<RawLibrary> for Library {
    fn from(raw: RawLibrary) -> Self {
        Library::new(raw.pieces, raw.mode)
    }
}

impl Library {
    /// Keeps the first copy of translation-equivalent pieces.
    pub fn new(pieces: impl IntoIterator<Item = Polyomino>, mode: TransformMode) -> Self {
        let mut out: Vec<Polyomino> = Vec::new();
        for p in pieces {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Library { pieces: out, mode }
    }

    pub fn rectangles(dims: &[(u32, u32)], mode: TransformMode) -> Self {
        Library::new(dims.iter().map(|&(h, w)| Polyomino::rect(h, w)), mode)
    }

    pub fn pieces(&self) -> &[Polyomino] {
        &self.pieces
    }

    pub fn piece(&self, index: usize) -> Result<&Polyomino> {
        self.pieces
            .get(index)
            .ok_or(Error::UnknownPiece(index, self.pieces.len()))
    }

    pub fn mode(&self) -> TransformMode {
        self.mode
    }

    pub fn symmetry(&self) -> Symmetry {
        self.mode.symmetry()
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn with_mode(&self, mode: TransformMode) -> Library {
        Library {
            pieces: self.pieces.clone(),
            mode,
        }
    }

    pub fn index_of(&self, p: &Polyomino) -> Option<usize> {
        self.pieces.iter().position(|q| q == p)
    }

    /// Every piece as `(height, width)`, or the index of the first
    /// non-rectangular piece.
    pub fn rect_dims(&self) -> Result<Vec<(u32, u32)>> {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| p.rect_dims().ok_or(Error::NotRectangular(i)))
            .collect()
    }

    pub fn is_rectangular(&self) -> bool {
        self.pieces.iter().all(Polyomino::is_rectangle)
    }
}

/// Extends the piece list with every image under the mode's group.
/// Original pieces keep their indices; new images follow in order.
pub fn close_library(lib: &Library) -> Library {
    let sym = lib.symmetry();
    let extra = lib
        .pieces
        .iter()
        .flat_map(|p| sym.elements().iter().map(move |t| t.apply(p)));
    Library::new(lib.pieces.iter().cloned().chain(extra), lib.mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn non_noetherian_seed() -> Library {
        let a = Polyomino::from_cells([(0, 0), (0, 1), (1, 1)]).unwrap();
        let b = Polyomino::from_cells([(0, 0), (1, 0), (1, 1)]).unwrap();
        let c = Polyomino::from_cells([(0, 0), (1, 0), (1, 1), (2, 1)]).unwrap();
        Library::new([a, b, c], TransformMode::VerticalReflections)
    }

    #[test]
    fn fixed_closure_is_identity() {
        let lib = Library::rectangles(&[(1, 2)], TransformMode::Fixed);
        assert_eq!(close_library(&lib), lib);
    }

    #[test]
    fn rotation_closure_adds_transpose() {
        let lib = Library::rectangles(&[(1, 2)], TransformMode::RotationsAndReflections);
        let closed = close_library(&lib);
        assert_eq!(closed.pieces(), &[Polyomino::rect(1, 2), Polyomino::rect(2, 1)]);
    }

    #[test]
    fn reflection_closure_of_three_seeds_has_six_pieces() {
        let closed = close_library(&non_noetherian_seed());
        assert_eq!(closed.len(), 6);
        assert_eq!(close_library(&closed), closed);
    }

    #[test]
    fn closure_is_monotone_in_mode() {
        let seed = non_noetherian_seed();
        let sizes: Vec<usize> = [
            TransformMode::Fixed,
            TransformMode::VerticalReflections,
            TransformMode::RotationsAndReflections,
        ]
        .iter()
        .map(|&m| close_library(&seed.with_mode(m)).len())
        .collect();
        assert_eq!(sizes, vec![3, 6, 8]);
    }

    #[test]
    fn dedups_translates() {
        let lib = Library::new(
            [
                Polyomino::rect(1, 2),
                Polyomino::from_cells([(5, 5), (6, 5)]).unwrap(),
            ],
            TransformMode::Fixed,
        );
        assert_eq!(lib.len(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let lib: Library =
            serde_json::from_str(r#"{"mode":"rotations-and-reflections","pieces":[{"rect":[2,3]},[[0,0],[1,0],[1,1]]]}"#)
                .unwrap();
        assert_eq!(lib.len(), 2);
        assert_eq!(lib.mode(), TransformMode::RotationsAndReflections);
        let back: Library = serde_json::from_str(&serde_json::to_string(&lib).unwrap()).unwrap();
        assert_eq!(back, lib);
        let default_mode: Library = serde_json::from_str(r#"{"pieces":[{"rect":[1,1]}]}"#).unwrap();
        assert_eq!(default_mode.mode(), TransformMode::Fixed);
    }
}
