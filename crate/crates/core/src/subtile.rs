//! Deciding whether the pieces of a tiling can be rearranged into two
//! side-by-side rectangles, and searching for the widest tilings that
//! cannot.

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::enumerate::{area_caps, tile_vector, tiling_vectors, Catalogue};
use crate::error::{Error, Result};
use crate::geometry::{
    close_library, multiset_of, vertical_faults, Cell, Library, PieceMultiset, Placement, Polyomino, Symmetry,
    Tiling, Transform, TransformMode,
};

/// Which motions a rearrangement may apply to each piece copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RearrangeMode {
    Translations,
    /// Quarter turns, chosen independently per copy.
    Rotations,
    /// Quarter turns and reflections.
    RotationsAndReflections,
}

impl RearrangeMode {
    pub fn symmetry(self) -> Symmetry {
        match self {
            RearrangeMode::Translations => Symmetry::Identity,
            RearrangeMode::Rotations => Symmetry::Rotations,
            RearrangeMode::RotationsAndReflections => Symmetry::Full,
        }
    }
}

/// Tilings of `n x split` and `n x (m - split)` that together use the
/// queried pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtilingWitness {
    pub split: usize,
    pub left: Tiling,
    pub right: Tiling,
    /// Transforms the sides may use.
    pub symmetry: Symmetry,
}

impl SubtilingWitness {
    /// The juxtaposed tiling of the whole rectangle.
    pub fn combined(&self) -> Tiling {
        self.left.juxtapose(&self.right)
    }
}

fn query_symmetry(lib: &Library, ms: &PieceMultiset, mode: RearrangeMode) -> Symmetry {
    ms.symmetry().join(mode.symmetry()).join(lib.symmetry())
}

/// Searches for a subtiling of the multiset `ms` of `lib` pieces, which
/// must tile the `n x m` rectangle. Splits are tried by ascending left
/// width, then by descending left count vector. `None` means every split
/// was ruled out.
pub fn has_subtiling(
    lib: &Library,
    ms: &PieceMultiset,
    n: usize,
    m: usize,
    mode: RearrangeMode,
    budget: &Budget,
) -> Result<Option<SubtilingWitness>> {
    let own = Catalogue::new(lib, ms.symmetry());
    let own_v = own.vector(ms)?;
    if tile_vector(&own, n, m, &own_v, budget)?.is_none() {
        return Err(Error::MultisetDoesNotTile { n, m });
    }
    let cat = Catalogue::new(lib, query_symmetry(lib, ms, mode));
    let v = cat.vector(ms)?;
    split_search(&cat, &v, n, m, budget)
}

fn split_search(
    cat: &Catalogue,
    v: &[u32],
    n: usize,
    m: usize,
    budget: &Budget,
) -> Result<Option<SubtilingWitness>> {
    for split in 1..=m / 2 {
        for left_v in tiling_vectors(cat, n, split, v, budget)? {
            let right_v: Vec<u32> = v.iter().zip(&left_v).map(|(a, b)| a - b).collect();
            if let Some(right) = tile_vector(cat, n, m - split, &right_v, budget)? {
                let left = tile_vector(cat, n, split, &left_v, budget)?
                    .expect("left vectors come from achievable tilings");
                return Ok(Some(SubtilingWitness {
                    split,
                    left,
                    right,
                    symmetry: cat.sym,
                }));
            }
        }
    }
    Ok(None)
}

/// [`has_subtiling`] for the pieces of a concrete tiling.
pub fn tiling_has_subtiling(
    lib: &Library,
    t: &Tiling,
    mode: RearrangeMode,
    budget: &Budget,
) -> Result<Option<SubtilingWitness>> {
    let ms = multiset_of(lib, t)?;
    has_subtiling(lib, &ms, t.n, t.m, mode, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum WidthStatus {
    Searched {
        m: usize,
        multisets: usize,
        counterexamples: usize,
    },
    BudgetExceeded {
        m: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub m: usize,
    pub multiset: PieceMultiset,
    pub tiling: Tiling,
}

/// Result of a bounded threshold search. `beta` is the largest width at
/// which some tiling has no subtiling, or 0 when none was found. It is a
/// lower bound on the true threshold: finite search cannot rule out wider
/// counterexamples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaReport {
    pub n: usize,
    pub mode: RearrangeMode,
    pub m_max: usize,
    pub beta: usize,
    pub counterexample: Option<Counterexample>,
    pub widths: Vec<WidthStatus>,
    pub exhaustive: bool,
}

impl BetaReport {
    /// Widths with at least one counterexample.
    pub fn counterexample_widths(&self) -> Vec<usize> {
        self.widths
            .iter()
            .filter_map(|w| match w {
                WidthStatus::Searched {
                    m,
                    counterexamples,
                    ..
                } if *counterexamples > 0 => Some(*m),
                _ => None,
            })
            .collect()
    }
}

/// Tests every multiset tiling `n x m` for `m <= m_max`. Sides of a split
/// are compared through the sets of count vectors tiling each narrower
/// rectangle; the reported counterexample is re-certified by
/// [`has_subtiling`].
pub fn beta_empirical(
    lib: &Library,
    n: usize,
    m_max: usize,
    mode: RearrangeMode,
    budget: &Budget,
) -> Result<BetaReport> {
    let own = Catalogue::new(lib, lib.symmetry());
    let side = Catalogue::new(lib, lib.symmetry().join(mode.symmetry()));
    let coarse: Vec<usize> = own
        .classes
        .iter()
        .map(|c| side.class_of(c).expect("coarser catalogue covers every class"))
        .collect();
    let side_caps = area_caps(&side, n, m_max);

    let mut sides: Vec<FxHashSet<Vec<u32>>> = vec![FxHashSet::default()];
    let mut widths = Vec::new();
    let mut best: Option<(usize, Vec<u32>)> = None;
    let mut exhaustive = true;

    for m in 1..=m_max {
        let step = (|| -> Result<(usize, Vec<Vec<u32>>)> {
            let vs = tiling_vectors(&side, n, m, &side_caps, budget)?;
            sides.push(vs.into_iter().collect());
            let tilings = tiling_vectors(&own, n, m, &area_caps(&own, n, m), budget)?;
            let mut bad = Vec::new();
            for t in &tilings {
                let mut c = vec![0u32; side.classes.len()];
                for (k, &count) in t.iter().enumerate() {
                    c[coarse[k]] += count;
                }
                budget.charge(1)?;
                if !splits(&sides, &c, m) {
                    bad.push(t.clone());
                }
            }
            Ok((tilings.len(), bad))
        })();
        match step {
            Ok((multisets, bad)) => {
                widths.push(WidthStatus::Searched {
                    m,
                    multisets,
                    counterexamples: bad.len(),
                });
                if let Some(first) = bad.into_iter().next() {
                    best = Some((m, first));
                }
            }
            Err(e) if e.is_budget() => {
                exhaustive = false;
                widths.extend((m..=m_max).map(|m| WidthStatus::BudgetExceeded { m }));
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let beta = best.as_ref().map_or(0, |b| b.0);
    let counterexample = match best {
        Some((m, v)) => match certify_vector(&own, &side, n, m, &v, budget) {
            Ok(c) => Some(c),
            Err(e) if e.is_budget() => {
                exhaustive = false;
                None
            }
            Err(e) => return Err(e),
        },
        None => None,
    };
    Ok(BetaReport {
        n,
        mode,
        m_max,
        beta,
        counterexample,
        widths,
        exhaustive,
    })
}

fn certify_vector(
    own: &Catalogue,
    side: &Catalogue,
    n: usize,
    m: usize,
    v: &[u32],
    budget: &Budget,
) -> Result<Counterexample> {
    let tiling = tile_vector(own, n, m, v, budget)?.expect("enumerated vectors tile");
    let multiset = own.multiset(v);
    let cert = split_search(side, &side.vector(&multiset)?, n, m, budget)?;
    assert!(cert.is_none(), "sumset test and split search disagree at width {m}");
    Ok(Counterexample { m, multiset, tiling })
}

fn splits(sides: &[FxHashSet<Vec<u32>>], c: &[u32], m: usize) -> bool {
    (1..=m / 2).any(|split| {
        sides[split].iter().any(|l| {
            l.iter().zip(c).all(|(a, b)| a <= b) && {
                let r: Vec<u32> = c.iter().zip(l).map(|(a, b)| a - b).collect();
                sides[m - split].contains(&r)
            }
        })
    })
}

/// The three seed pieces of the staircase family: two L-trominoes and a
/// skew tetromino. Their vertical mirror images are added by closure.
pub fn staircase_library() -> Library {
    let a = Polyomino::from_cells([(0, 0), (0, 1), (1, 1)]).expect("connected");
    let b = Polyomino::from_cells([(0, 0), (1, 0), (1, 1)]).expect("connected");
    let c = Polyomino::from_cells([(0, 0), (1, 0), (1, 1), (2, 1)]).expect("connected");
    close_library(&Library::new([a, b, c], TransformMode::VerticalReflections))
}

/// The fault-free staircase of height 2 and odd width `w >= 5`: an
/// L-tromino, `(w - 3) / 2` skew tetrominoes, and the opposite L-tromino.
pub fn staircase_tiling(w: usize) -> Result<Tiling> {
    if w < 5 || w.is_multiple_of(2) {
        return Err(Error::precondition(format!(
            "staircase widths are odd and at least 5, got {w}"
        )));
    }
    let t = (w - 3) / 2;
    let mut placements = vec![Placement::new(0, Transform::IDENTITY, Cell::new(0, 0))];
    for i in 1..=t {
        placements.push(Placement::new(2, Transform::IDENTITY, Cell::new(2 * i as u32 - 1, 0)));
    }
    placements.push(Placement::new(1, Transform::IDENTITY, Cell::new(2 * t as u32 + 1, 0)));
    Ok(Tiling::new(2, w, placements))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseCertificate {
    pub width: usize,
    pub tiling: Tiling,
    pub faults: Vec<usize>,
    /// A rearrangement with a fault, if the exhaustive search found one.
    pub witness: Option<SubtilingWitness>,
    pub nodes: u64,
}

impl StaircaseCertificate {
    pub fn certified(&self) -> bool {
        self.faults.is_empty() && self.witness.is_none()
    }
}

/// Builds the width-`w` staircase and searches exhaustively for a
/// subtiling allowing every rotation and reflection.
pub fn certify_staircase_family(w: usize, budget: &Budget) -> Result<StaircaseCertificate> {
    let lib = staircase_library();
    let tiling = staircase_tiling(w)?;
    let faults = vertical_faults(&lib, &tiling)?;
    let before = budget.used();
    let witness = tiling_has_subtiling(&lib, &tiling, RearrangeMode::RotationsAndReflections, budget)?;
    Ok(StaircaseCertificate {
        width: w,
        tiling,
        faults,
        witness,
        nodes: budget.used() - before,
    })
}
