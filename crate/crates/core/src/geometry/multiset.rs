use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::library::Library;
use super::polyomino::Polyomino;
use super::tiling::{ensure_valid, Tiling};
use super::transform::Symmetry;
use crate::error::Result;

/// Counts of pieces by shape class. A class is the orbit of a shape under
/// `symmetry`, keyed by its canonical (least) member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PieceMultiset {
    symmetry: Symmetry,
    counts: BTreeMap<Polyomino, u32>,
}

impl PieceMultiset {
    pub fn new(symmetry: Symmetry) -> Self {
        PieceMultiset {
            symmetry,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_counts<I>(symmetry: Symmetry, items: I) -> Self
    where
        I: IntoIterator<Item = (Polyomino, u32)>,
    {
        let mut ms = PieceMultiset::new(symmetry);
        for (p, c) in items {
            ms.add(&p, c);
        }
        ms
    }

    pub fn add(&mut self, shape: &Polyomino, count: u32) {
        if count == 0 {
            return;
        }
        *self.counts.entry(self.symmetry.canonical(shape)).or_insert(0) += count;
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn count(&self, shape: &Polyomino) -> u32 {
        self.counts
            .get(&self.symmetry.canonical(shape))
            .copied()
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Polyomino, u32)> {
        self.counts.iter().map(|(p, &c)| (p, c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total_pieces(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn area(&self) -> u64 {
        self.iter().map(|(p, c)| p.area() as u64 * c as u64).sum()
    }

    /// Merges classes that become equivalent under a larger group.
    pub fn coarsen(&self, symmetry: Symmetry) -> PieceMultiset {
        let symmetry = self.symmetry.join(symmetry);
        PieceMultiset::from_counts(symmetry, self.iter().map(|(p, c)| (p.clone(), c)))
    }

    /// Multiset union.
    pub fn union(&self, other: &PieceMultiset) -> PieceMultiset {
        let symmetry = self.symmetry.join(other.symmetry);
        PieceMultiset::from_counts(
            symmetry,
            self.iter()
                .chain(other.iter())
                .map(|(p, c)| (p.clone(), c)),
        )
    }
}

impl fmt::Display for PieceMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}: {c}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    shape: Polyomino,
    count: u32,
}

#[derive(Serialize, Deserialize)]
struct RawMultiset {
    symmetry: Symmetry,
    counts: Vec<RawEntry>,
}

impl Serialize for PieceMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawMultiset {
            symmetry: self.symmetry,
            counts: self
                .iter()
                .map(|(p, c)| RawEntry {
                    shape: p.clone(),
                    count: c,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PieceMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMultiset::deserialize(d)?;
        Ok(PieceMultiset::from_counts(
            raw.symmetry,
            raw.counts.into_iter().map(|e| (e.shape, e.count)),
        ))
    }
}

/// Counts the pieces of a valid tiling, classed by the library's mode.
pub fn multiset_of(lib: &Library, t: &Tiling) -> Result<PieceMultiset> {
    multiset_of_with(lib, t, lib.symmetry())
}

/// As [`multiset_of`], accepting transforms in `sym` and classing by it.
pub fn multiset_of_with(lib: &Library, t: &Tiling, sym: Symmetry) -> Result<PieceMultiset> {
    let sym = sym.join(lib.symmetry());
    ensure_valid(lib, t, sym)?;
    let mut ms = PieceMultiset::new(sym);
    for p in &t.placements {
        ms.add(&p.shape(lib)?, 1);
    }
    Ok(ms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Cell, Placement, Transform, TransformMode};

    fn at(piece: usize, x: u32, y: u32) -> Placement {
        Placement::new(piece, Transform::IDENTITY, Cell::new(x, y))
    }

    #[test]
    fn four_monominoes() {
        let lib = Library::rectangles(&[(1, 1)], TransformMode::Fixed);
        let t = Tiling::new(2, 2, vec![at(0, 0, 0), at(0, 0, 1), at(0, 1, 0), at(0, 1, 1)]);
        let ms = multiset_of(&lib, &t).unwrap();
        assert_eq!(ms.count(&Polyomino::rect(1, 1)), 4);
        assert_eq!(ms.area(), 4);
    }

    #[test]
    fn two_dominoes() {
        let lib = Library::rectangles(&[(1, 2)], TransformMode::Fixed);
        let t = Tiling::new(2, 2, vec![at(0, 0, 0), at(0, 0, 1)]);
        let ms = multiset_of(&lib, &t).unwrap();
        assert_eq!(ms, PieceMultiset::from_counts(Symmetry::Identity, [(Polyomino::rect(1, 2), 2)]));
    }

    #[test]
    fn rotation_classes_merge_orientations() {
        let lib = Library::rectangles(&[(1, 2)], TransformMode::RotationsAndReflections);
        let horizontal = Tiling::new(2, 2, vec![at(0, 0, 0), at(0, 0, 1)]);
        let vertical = Tiling::new(
            2,
            2,
            vec![
                Placement::new(0, Transform::QUARTER_TURN, Cell::new(0, 0)),
                Placement::new(0, Transform::QUARTER_TURN, Cell::new(1, 0)),
            ],
        );
        assert_eq!(multiset_of(&lib, &horizontal).unwrap(), multiset_of(&lib, &vertical).unwrap());
    }

    #[test]
    fn invalid_tiling_is_rejected() {
        let lib = Library::rectangles(&[(1, 2)], TransformMode::Fixed);
        let t = Tiling::new(2, 2, vec![at(0, 0, 0)]);
        assert!(multiset_of(&lib, &t).is_err());
    }

    #[test]
    fn coarsen_and_union() {
        let a = PieceMultiset::from_counts(Symmetry::Identity, [(Polyomino::rect(1, 2), 1)]);
        let b = PieceMultiset::from_counts(Symmetry::Identity, [(Polyomino::rect(2, 1), 2)]);
        let u = a.union(&b);
        assert_eq!(u.total_pieces(), 3);
        assert_eq!(u.coarsen(Symmetry::Rotations).count(&Polyomino::rect(1, 2)), 3);
    }

    #[test]
    fn json_roundtrip() {
        let a = PieceMultiset::from_counts(
            Symmetry::Rotations,
            [(Polyomino::rect(2, 3), 2), (Polyomino::rect(1, 1), 1)],
        );
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<PieceMultiset>(&s).unwrap(), a);
    }
}
