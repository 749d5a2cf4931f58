use std::collections::BTreeSet;

use num_bigint::BigUint;
use subtile_core::enumerate::{count_tilings, enumerate_multisets, find_tiling};
use subtile_core::subtile::{beta_empirical, has_subtiling, staircase_library, staircase_tiling, RearrangeMode};
use subtile_core::geometry::multiset_of_with;
use subtile_core::{multiset_of, validate_tiling, Budget, Library, Polyomino, Symmetry, TransformMode};
use subtile_testkit as tk;

fn shape(p: &Polyomino) -> tk::Shape {
    tk::normalize(&p.cells().iter().map(|c| (c.x as i32, c.y as i32)).collect::<Vec<_>>())
}

/// Every placeable shape of `lib` under `sym`, with its orbit class.
fn expand(lib: &Library, sym: Symmetry) -> (Vec<tk::Shape>, Vec<usize>, usize) {
    let (rot, refl) = match sym {
        Symmetry::Identity => (false, false),
        Symmetry::VerticalReflection => (false, true),
        Symmetry::Rotations => (true, false),
        Symmetry::Full => (true, true),
    };
    let mut shapes: Vec<tk::Shape> = Vec::new();
    let mut class: Vec<usize> = Vec::new();
    let mut orbits: Vec<BTreeSet<tk::Shape>> = Vec::new();
    for p in lib.pieces() {
        let orbit: BTreeSet<tk::Shape> = tk::orientations(&shape(p), rot, refl).into_iter().collect();
        let k = match orbits.iter().position(|o| *o == orbit) {
            Some(k) => k,
            None => {
                orbits.push(orbit.clone());
                orbits.len() - 1
            }
        };
        for s in orbit {
            if !shapes.contains(&s) {
                shapes.push(s);
                class.push(k);
            }
        }
    }
    (shapes, class, orbits.len())
}

fn pool() -> Vec<Polyomino> {
    vec![
        Polyomino::rect(1, 1),
        Polyomino::rect(1, 2),
        Polyomino::rect(2, 1),
        Polyomino::rect(1, 3),
        Polyomino::rect(2, 2),
        Polyomino::from_cells([(0, 0), (0, 1), (1, 1)]).unwrap(),
        Polyomino::from_cells([(0, 0), (1, 0), (2, 0), (1, 1)]).unwrap(),
    ]
}

fn corpus() -> Vec<Library> {
    let p = pool();
    let mut out = Vec::new();
    for i in 0..p.len() {
        out.push(Library::new([p[i].clone()], TransformMode::Fixed));
        out.push(Library::new([p[i].clone()], TransformMode::RotationsAndReflections));
        for j in i + 1..p.len() {
            out.push(Library::new([p[i].clone(), p[j].clone()], TransformMode::Fixed));
        }
    }
    out.push(Library::new([p[1].clone(), p[2].clone(), p[5].clone()], TransformMode::Fixed));
    out.push(Library::new([p[0].clone(), p[3].clone(), p[6].clone()], TransformMode::VerticalReflections));
    out
}

#[test]
fn counts_match_backtracking() {
    let b = Budget::default();
    for lib in corpus() {
        let (shapes, _, _) = expand(&lib, lib.symmetry());
        for n in 1..=4 {
            for m in 1..=4 {
                let fast = count_tilings(&lib, n, m, &b).unwrap();
                let slow = tk::count_tilings(&shapes, n, m);
                assert_eq!(fast, BigUint::from(slow), "{lib:?} {n}x{m}");
            }
        }
    }
}

#[test]
fn witnesses_exist_exactly_when_counts_are_positive() {
    let b = Budget::default();
    for lib in corpus() {
        let (shapes, _, _) = expand(&lib, lib.symmetry());
        for n in 1..=4 {
            for m in 1..=5 {
                let t = find_tiling(&lib, n, m, &b).unwrap();
                let slow = tk::all_tilings(&shapes, n, m, 1);
                assert_eq!(t.is_some(), !slow.is_empty(), "{lib:?} {n}x{m}");
                if let Some(t) = t {
                    assert!(validate_tiling(&lib, &t).is_empty());
                }
            }
        }
    }
}

#[test]
fn multisets_match_backtracking() {
    let b = Budget::default();
    for lib in corpus() {
        let (shapes, class, k) = expand(&lib, lib.symmetry());
        for (n, m) in [(2, 3), (3, 3), (2, 4), (3, 4)] {
            let fast = enumerate_multisets(&lib, n, m, &b).unwrap();
            let slow = tk::count_vectors(&shapes, &class, k, n, m);
            assert_eq!(fast.len(), slow.len(), "{lib:?} {n}x{m}");
            let mut prev: Option<Vec<u32>> = None;
            for ms in &fast {
                assert_eq!(ms.area(), (n * m) as u64);
                let mut cv = vec![0u32; k];
                for (s, c) in ms.iter() {
                    let i = shapes.iter().position(|x| *x == shape(s)).unwrap();
                    cv[class[i]] += c;
                }
                assert!(slow.contains(&cv), "{lib:?} {n}x{m} {cv:?}");
                if let Some(p) = &prev {
                    assert!(*p > cv, "not descending");
                }
                prev = Some(cv);
            }
        }
    }
}

#[test]
fn subtiling_matches_split_oracle() {
    let b = Budget::default();
    let libs = [
        Library::rectangles(&[(1, 2), (2, 1)], TransformMode::Fixed),
        Library::rectangles(&[(1, 1), (1, 3)], TransformMode::Fixed),
        Library::rectangles(&[(1, 2), (2, 2)], TransformMode::Fixed),
        Library::new(
            [Polyomino::from_cells([(0, 0), (0, 1), (1, 1)]).unwrap(), Polyomino::rect(1, 1)],
            TransformMode::Fixed,
        ),
    ];
    for lib in libs {
        for mode in [RearrangeMode::Translations, RearrangeMode::Rotations] {
            let sym = mode.symmetry().join(lib.symmetry());
            let (shapes, class, k) = expand(&lib, sym);
            for (n, m) in [(2, 3), (2, 4), (3, 4), (2, 6)] {
                for ms in enumerate_multisets(&lib, n, m, &b).unwrap() {
                    let mut v = vec![0u32; k];
                    for (s, c) in ms.iter() {
                        let i = shapes.iter().position(|x| *x == shape(s)).unwrap();
                        v[class[i]] += c;
                    }
                    let fast = has_subtiling(&lib, &ms, n, m, mode, &b).unwrap();
                    let slow = tk::splits(&shapes, &class, k, n, m, &v);
                    assert_eq!(fast.is_some(), slow, "{lib:?} {n}x{m} {mode:?} {v:?}");
                    if let Some(w) = fast {
                        assert_eq!(w.left.m + w.right.m, m);
                        let whole = w.combined();
                        assert!(subtile_core::geometry::validate_tiling_with(&lib, &whole, sym).is_empty());
                        assert_eq!(multiset_of_with(&lib, &whole, sym).unwrap(), ms.coarsen(sym));
                    }
                }
            }
        }
    }
}

#[test]
fn thresholds_match_split_oracle() {
    let b = Budget::default();
    let cases = [
        (Library::rectangles(&[(1, 2)], TransformMode::Fixed), 1, 6),
        (Library::rectangles(&[(1, 2), (1, 3)], TransformMode::Fixed), 1, 8),
        (Library::rectangles(&[(1, 2), (2, 1)], TransformMode::Fixed), 2, 6),
        (Library::rectangles(&[(2, 3)], TransformMode::Fixed), 3, 8),
        (Library::rectangles(&[(1, 1), (2, 2)], TransformMode::Fixed), 2, 6),
    ];
    for (lib, n, m_max) in cases {
        for mode in [RearrangeMode::Translations, RearrangeMode::Rotations] {
            // tilings use the library's own placements; rearrangements may
            // also use the mode's transforms
            let (shapes, class, k) = expand(&lib, mode.symmetry().join(lib.symmetry()));
            let (own, _, _) = expand(&lib, lib.symmetry());
            let own_class: Vec<usize> = own
                .iter()
                .map(|s| class[shapes.iter().position(|x| x == s).unwrap()])
                .collect();
            let mut slow = 0;
            for m in 1..=m_max {
                let vs = tk::count_vectors(&own, &own_class, k, n, m);
                if vs.iter().any(|v| !tk::splits(&shapes, &class, k, n, m, v)) {
                    slow = m;
                }
            }
            let fast = beta_empirical(&lib, n, m_max, mode, &b).unwrap();
            assert!(fast.exhaustive);
            assert_eq!(fast.beta, slow, "{lib:?} n={n} {mode:?}");
        }
    }
}

#[test]
fn staircase_has_no_split_by_brute_force() {
    let lib = staircase_library();
    let (shapes, class, k) = expand(&lib, Symmetry::Full);
    for w in [5, 7] {
        let t = staircase_tiling(w).unwrap();
        assert!(validate_tiling(&lib, &t).is_empty());
        let ms = multiset_of(&lib, &t).unwrap().coarsen(Symmetry::Full);
        let mut v = vec![0u32; k];
        for (s, c) in ms.iter() {
            let i = shapes.iter().position(|x| tk::orientations(x, true, true).contains(&shape(s))).unwrap();
            v[class[i]] += c;
        }
        assert!(!tk::splits(&shapes, &class, k, 2, w, &v), "width {w}");
    }
}
