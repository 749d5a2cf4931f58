//! Tiling existence, counting, witnesses and multiset enumeration for
//! rectangles, all backed by one memoized broken-profile search.

mod catalogue;
mod frontier;
mod kernel;

use num_bigint::BigUint;

use crate::budget::Budget;
use crate::error::Result;
use crate::geometry::{Library, PieceMultiset, Tiling};

pub(crate) use catalogue::{Candidate, Catalogue};
pub(crate) use kernel::{achievable, count, find, find_counted};

/// Whether some multiset over `lib` tiles the `n x m` rectangle.
pub fn can_tile(lib: &Library, n: usize, m: usize, budget: &Budget) -> Result<bool> {
    Ok(find_tiling(lib, n, m, budget)?.is_some())
}

/// Number of distinct tilings of the `n x m` rectangle. Two tilings differ
/// when some cell lies in differently shaped or differently placed pieces.
pub fn count_tilings(lib: &Library, n: usize, m: usize, budget: &Budget) -> Result<BigUint> {
    let cat = Catalogue::new(lib, lib.symmetry());
    count(&cat.candidates, n, m, budget)
}

/// The first tiling in sweep order, if one exists.
pub fn find_tiling(lib: &Library, n: usize, m: usize, budget: &Budget) -> Result<Option<Tiling>> {
    let cat = Catalogue::new(lib, lib.symmetry());
    Ok(find(&cat.candidates, n, m, budget)?.map(|p| Tiling::new(n, m, p)))
}

/// A tiling of the `n x m` rectangle using exactly the pieces of `counts`.
/// Each copy may use any transform in the multiset's symmetry or the
/// library's mode.
pub fn tile_with_counts(
    lib: &Library,
    n: usize,
    m: usize,
    counts: &PieceMultiset,
    budget: &Budget,
) -> Result<Option<Tiling>> {
    let cat = Catalogue::new(lib, counts.symmetry());
    let v = cat.vector(counts)?;
    tile_vector(&cat, n, m, &v, budget)
}

pub(crate) fn tile_vector(
    cat: &Catalogue,
    n: usize,
    m: usize,
    v: &[u32],
    budget: &Budget,
) -> Result<Option<Tiling>> {
    if cat.vector_area(v) != (n * m) as u64 {
        return Ok(None);
    }
    Ok(find_counted(&cat.candidates, n, m, v, budget)?.map(|p| Tiling::new(n, m, p)))
}

/// Per-class caps implied by area alone.
pub(crate) fn area_caps(cat: &Catalogue, n: usize, m: usize) -> Vec<u32> {
    (0..cat.classes.len())
        .map(|k| ((n * m) as u64 / cat.area(k)) as u32)
        .collect()
}

/// Count vectors that tile the board, in descending lexicographic order.
pub(crate) fn tiling_vectors(
    cat: &Catalogue,
    n: usize,
    m: usize,
    caps: &[u32],
    budget: &Budget,
) -> Result<Vec<Vec<u32>>> {
    let mut v = achievable(&cat.candidates, n, m, caps, budget)?;
    v.sort_unstable_by(|a, b| b.cmp(a));
    Ok(v)
}

/// Every multiset that tiles the `n x m` rectangle, once each, ordered by
/// descending count vector over the library's classes.
pub fn enumerate_multisets(lib: &Library, n: usize, m: usize, budget: &Budget) -> Result<Vec<PieceMultiset>> {
    let cat = Catalogue::new(lib, lib.symmetry());
    let caps = area_caps(&cat, n, m);
    Ok(tiling_vectors(&cat, n, m, &caps, budget)?
        .iter()
        .map(|v| cat.multiset(v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{multiset_of, validate_tiling, Polyomino, Symmetry, TransformMode};
    use crate::Error;

    fn b() -> Budget {
        Budget::default()
    }

    fn dominoes() -> Library {
        Library::rectangles(&[(1, 2), (2, 1)], TransformMode::Fixed)
    }

    #[test]
    fn monomino_always_tiles() {
        let lib = Library::rectangles(&[(1, 1)], TransformMode::Fixed);
        for n in 1..5 {
            for m in 1..5 {
                assert!(can_tile(&lib, n, m, &b()).unwrap());
            }
        }
    }

    #[test]
    fn square_cannot_tile_odd_height() {
        let lib = Library::rectangles(&[(2, 2)], TransformMode::Fixed);
        assert!(!can_tile(&lib, 3, 4, &b()).unwrap());
        assert_eq!(find_tiling(&lib, 3, 4, &b()).unwrap(), None);
    }

    #[test]
    fn rotated_2x3_tiles_6x6() {
        let lib = Library::rectangles(&[(2, 3)], TransformMode::RotationsAndReflections);
        let t = find_tiling(&lib, 6, 6, &b()).unwrap().unwrap();
        assert!(validate_tiling(&lib, &t).is_empty());
        assert_eq!(t.placements.len(), 6);
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_tilings(&dominoes(), 2, 3, &b()).unwrap(), BigUint::from(3u32));
        let mono = Library::rectangles(&[(1, 1)], TransformMode::Fixed);
        assert_eq!(count_tilings(&mono, 2, 2, &b()).unwrap(), BigUint::from(1u32));
        assert_eq!(count_tilings(&dominoes(), 2, 0, &b()).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn rotation_mode_does_not_double_count() {
        let lib = Library::rectangles(&[(1, 2), (2, 1)], TransformMode::RotationsAndReflections);
        assert_eq!(count_tilings(&lib, 2, 3, &b()).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn two_horizontal_dominoes() {
        let lib = Library::rectangles(&[(1, 2)], TransformMode::Fixed);
        let t = find_tiling(&lib, 1, 4, &b()).unwrap().unwrap();
        assert_eq!(t.placements.len(), 2);
        assert!(validate_tiling(&lib, &t).is_empty());
    }

    #[test]
    fn counted_tilings() {
        let lib = Library::rectangles(&[(1, 1), (1, 2), (1, 3)], TransformMode::Fixed);
        let ms = |items: &[((u32, u32), u32)]| {
            PieceMultiset::from_counts(
                Symmetry::Identity,
                items.iter().map(|&((h, w), c)| (Polyomino::rect(h, w), c)),
            )
        };
        assert!(tile_with_counts(&lib, 1, 2, &ms(&[((1, 1), 2)]), &b()).unwrap().is_some());
        assert!(tile_with_counts(&lib, 2, 2, &ms(&[((1, 2), 1), ((1, 1), 1)]), &b())
            .unwrap()
            .is_none());
        let t = tile_with_counts(&lib, 2, 3, &ms(&[((1, 3), 2)]), &b()).unwrap().unwrap();
        assert_eq!(multiset_of(&lib, &t).unwrap(), ms(&[((1, 3), 2)]));
        let stray = ms(&[((2, 2), 1)]);
        assert_eq!(tile_with_counts(&lib, 2, 2, &stray, &b()), Err(Error::ShapeNotInLibrary));
    }

    #[test]
    fn multiset_enumeration_order() {
        let lib = Library::rectangles(&[(1, 1), (1, 2)], TransformMode::Fixed);
        let got = enumerate_multisets(&lib, 1, 2, &b()).unwrap();
        let mono = PieceMultiset::from_counts(Symmetry::Identity, [(Polyomino::rect(1, 1), 2)]);
        let dom = PieceMultiset::from_counts(Symmetry::Identity, [(Polyomino::rect(1, 2), 1)]);
        assert_eq!(got, vec![mono, dom]);
        let square = Library::rectangles(&[(2, 2)], TransformMode::Fixed);
        assert!(enumerate_multisets(&square, 1, 5, &b()).unwrap().is_empty());
    }

    #[test]
    fn rotated_dominoes_share_one_multiset() {
        let lib = Library::rectangles(&[(1, 2)], TransformMode::RotationsAndReflections);
        let got = enumerate_multisets(&lib, 2, 2, &b()).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].count(&Polyomino::rect(2, 1)), 2);
    }

    #[test]
    fn empty_library() {
        let lib = Library::new([], TransformMode::Fixed);
        assert!(!can_tile(&lib, 2, 3, &b()).unwrap());
        assert!(can_tile(&lib, 2, 0, &b()).unwrap());
    }
}
