use proptest::prelude::*;
use rand::SeedableRng;
use subtile_core::bounds::{bound_general, bound_unit_height, ratio};
use subtile_core::constructive::{rect_tiles, rect_tiling_witness, tall_beta, tall_rearrange};
use subtile_core::enumerate::{can_tile, enumerate_multisets, find_tiling};
use subtile_core::represent::{tile_row_convex, RowAssignedPiece, RowConvexRegion};
use subtile_core::{
    close_library, multiset_of, normalize, transforms, validate_tiling, vertical_faults, Budget, Library, Polyomino,
    Symmetry, TransformMode,
};
use subtile_testkit as tk;

fn cell_set() -> impl Strategy<Value = Vec<(i64, i64)>> {
    // random walks are always connected
    prop::collection::vec(0u8..4, 0..8).prop_map(|steps| {
        let mut at = (0i64, 0i64);
        let mut out = vec![at];
        for s in steps {
            at = match s {
                0 => (at.0 + 1, at.1),
                1 => (at.0 - 1, at.1),
                2 => (at.0, at.1 + 1),
                _ => (at.0, at.1 - 1),
            };
            out.push(at);
        }
        out
    })
}

fn rect_dims(max_h: u32, max_w: u32) -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((1..=max_h, 1..=max_w), 1..=3)
}

proptest! {
    #[test]
    fn normalize_is_translation_invariant(cells in cell_set(), dx in -5i64..5, dy in -5i64..5) {
        let p = normalize(cells.iter().copied()).unwrap();
        let q = normalize(cells.iter().map(|&(x, y)| (x + dx, y + dy))).unwrap();
        prop_assert_eq!(&p, &q);
        let again = normalize(p.cells().iter().map(|c| (c.x as i64, c.y as i64))).unwrap();
        prop_assert_eq!(p, again);
    }

    #[test]
    fn orbits_match_matrix_images(cells in cell_set()) {
        let p = normalize(cells.iter().copied()).unwrap();
        let raw: Vec<(i32, i32)> = p.cells().iter().map(|c| (c.x as i32, c.y as i32)).collect();
        for (mode, rot, refl) in [
            (TransformMode::Fixed, false, false),
            (TransformMode::VerticalReflections, false, true),
            (TransformMode::RotationsAndReflections, true, true),
        ] {
            let mut ours: Vec<Vec<(i32, i32)>> = transforms(&p, mode)
                .iter()
                .map(|q| tk::normalize(&q.cells().iter().map(|c| (c.x as i32, c.y as i32)).collect::<Vec<_>>()))
                .collect();
            let mut theirs = tk::orientations(&raw, rot, refl);
            ours.sort();
            theirs.sort();
            prop_assert_eq!(ours, theirs);
        }
        prop_assert_eq!(Symmetry::Rotations.orbit(&p).len(), tk::orientations(&raw, true, false).len());
    }

    #[test]
    fn closure_is_idempotent(cells in cell_set(), refl in any::<bool>()) {
        let mode = if refl { TransformMode::VerticalReflections } else { TransformMode::RotationsAndReflections };
        let lib = Library::new([normalize(cells.iter().copied()).unwrap()], mode);
        let once = close_library(&lib);
        let twice = close_library(&once);
        prop_assert_eq!(once.len(), twice.len());
    }

    #[test]
    fn witnesses_validate(dims in rect_dims(3, 3), n in 1usize..5, m in 1usize..7) {
        let lib = Library::rectangles(&dims, TransformMode::Fixed);
        let b = Budget::default();
        if let Some(t) = find_tiling(&lib, n, m, &b).unwrap() {
            prop_assert!(validate_tiling(&lib, &t).is_empty());
            let ms = multiset_of(&lib, &t).unwrap();
            prop_assert_eq!(ms.area(), (n * m) as u64);
            prop_assert!(enumerate_multisets(&lib, n, m, &b).unwrap().contains(&ms));
        } else {
            prop_assert!(enumerate_multisets(&lib, n, m, &b).unwrap().is_empty());
        }
    }

    #[test]
    fn rect_packing_is_symmetric(a in 1usize..8, b in 1usize..8, n in 1usize..12, m in 1usize..12) {
        let v = rect_tiles(a, b, n, m);
        prop_assert_eq!(v.tiles, rect_tiles(b, a, n, m).tiles);
        prop_assert_eq!(v.tiles, rect_tiles(a, b, m, n).tiles);
        match rect_tiling_witness(a, b, n, m) {
            Some(t) => {
                prop_assert!(v.tiles);
                prop_assert!(validate_tiling(&subtile_core::constructive::rect_library(a, b), &t).is_empty());
            }
            None => prop_assert!(!v.tiles),
        }
    }

    #[test]
    fn row_convex_fills(seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let case = tk::random_row_convex(&mut rng, 6, 10);
        let region = RowConvexRegion { m: case.m, rows: case.rows.clone() };
        let pieces: Vec<RowAssignedPiece> =
            case.pieces.iter().map(|&(y, w)| RowAssignedPiece::new(1, w, y + 1)).collect();
        let t = tile_row_convex(&region, &pieces).unwrap();
        prop_assert!(t.violations(&region).is_empty());
        prop_assert_eq!(t.tiling.placements.len(), pieces.len());
    }

    #[test]
    fn bounds_are_at_least_two_and_monotone(dims in rect_dims(3, 4), extra in (1u32..=3, 1u32..=4), n in 1usize..4) {
        let lib = Library::rectangles(&dims, TransformMode::Fixed);
        let mut bigger = dims.clone();
        bigger.push(extra);
        let big = Library::rectangles(&bigger, TransformMode::Fixed);
        let g = bound_general(&lib, n).unwrap();
        prop_assert!(g >= ratio(2, 1));
        if extra.0 as usize <= n {
            prop_assert!(bound_general(&big, n).unwrap() >= g);
        }
        let units: Vec<(u32, u32)> = dims.iter().map(|&(_, w)| (1, w)).collect();
        let u = bound_unit_height(&Library::rectangles(&units, TransformMode::Fixed), n).unwrap();
        prop_assert!(u >= ratio(2, 1));
        let mut more = units.clone();
        more.push((1, extra.1));
        prop_assert!(bound_unit_height(&Library::rectangles(&more, TransformMode::Fixed), n).unwrap() >= u);
    }
}

#[test]
fn tall_rearrangements_validate_and_split() {
    let b = Budget::default();
    let lib = Library::rectangles(&[(5, 2), (4, 2), (3, 2), (1, 1)], TransformMode::Fixed);
    let beta = tall_beta(&lib, 5).unwrap() as usize;
    for m in 1..=8 {
        for ms in enumerate_multisets(&lib, 5, m, &b).unwrap() {
            let t = tall_rearrange(&lib, &ms, 5, m).unwrap();
            assert!(validate_tiling(&lib, &t).is_empty());
            assert_eq!(multiset_of(&lib, &t).unwrap(), ms);
            if m > beta {
                assert!(!vertical_faults(&lib, &t).unwrap().is_empty(), "width {m}");
            }
        }
    }
}

#[test]
fn can_tile_agrees_with_backtracking_on_rectangles() {
    let b = Budget::default();
    for (h, w) in [(1, 3), (2, 3), (2, 2)] {
        let lib = Library::new([Polyomino::rect(h, w)], TransformMode::RotationsAndReflections);
        let shapes = tk::orientations(&tk::rect(h as i32, w as i32), true, true);
        for n in 1..=6 {
            for m in 1..=6 {
                let slow = !tk::all_tilings(&shapes, n, m, 1).is_empty();
                assert_eq!(can_tile(&lib, n, m, &b).unwrap(), slow, "{h}x{w} on {n}x{m}");
            }
        }
    }
}
