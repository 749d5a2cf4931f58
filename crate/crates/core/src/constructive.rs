//! Closed-form results for rectangles: when one rectangle tiles another,
//! explicit block tilings, threshold values for a single rectangle, and the
//! staircase rearrangement for libraries of tall rectangles.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{Cell, Library, PieceMultiset, Placement, Tiling, Transform, TransformMode};
use crate::subtile::{beta_empirical, RearrangeMode};

/// Which sides of the board a piece side divides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Divides {
    Neither,
    Height,
    Width,
    Both,
}

impl Divides {
    fn of(k: usize, n: usize, m: usize) -> Self {
        match (n.is_multiple_of(k), m.is_multiple_of(k)) {
            (false, false) => Divides::Neither,
            (true, false) => Divides::Height,
            (false, true) => Divides::Width,
            (true, true) => Divides::Both,
        }
    }

    pub fn any(self) -> bool {
        self != Divides::Neither
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectPackVerdict {
    pub tiles: bool,
    pub a_divides: Divides,
    pub b_divides: Divides,
    /// `(x, y)` with `n = a*x + b*y`.
    pub n_combination: Option<(usize, usize)>,
    /// `(x, y)` with `m = a*x + b*y`.
    pub m_combination: Option<(usize, usize)>,
}

impl RectPackVerdict {
    pub fn divisibility_holds(&self) -> bool {
        self.a_divides.any() && self.b_divides.any()
    }

    pub fn combinations_hold(&self) -> bool {
        self.n_combination.is_some() && self.m_combination.is_some()
    }
}

/// Non-negative `(x, y)` with `a*x + b*y = t`, smallest `x` first.
pub fn nonneg_combination(a: usize, b: usize, t: usize) -> Option<(usize, usize)> {
    (0..=t / a).find_map(|x| {
        let rest = t - a * x;
        rest.is_multiple_of(b).then_some((x, rest / b))
    })
}

/// Whether copies of an `a x b` rectangle, turned freely, tile `n x m`:
/// each of `a` and `b` divides a side of the board, and both board sides
/// are non-negative combinations of `a` and `b`.
pub fn rect_tiles(a: usize, b: usize, n: usize, m: usize) -> RectPackVerdict {
    assert!(a > 0 && b > 0 && n > 0 && m > 0, "dimensions must be positive");
    let a_divides = Divides::of(a, n, m);
    let b_divides = Divides::of(b, n, m);
    let n_combination = nonneg_combination(a, b, n);
    let m_combination = nonneg_combination(a, b, m);
    RectPackVerdict {
        tiles: a_divides.any() && b_divides.any() && n_combination.is_some() && m_combination.is_some(),
        a_divides,
        b_divides,
        n_combination,
        m_combination,
    }
}

/// The one-piece library used by the witnesses below.
pub fn rect_library(a: usize, b: usize) -> Library {
    Library::rectangles(&[(a as u32, b as u32)], TransformMode::RotationsAndReflections)
}

/// A block tiling of `n x m` by `a x b` rectangles (upright, or turned a
/// quarter), or `None` when none exists. Placements refer to
/// [`rect_library`].
pub fn rect_tiling_witness(a: usize, b: usize, n: usize, m: usize) -> Option<Tiling> {
    if !rect_tiles(a, b, n, m).tiles {
        return None;
    }
    let mut out = Vec::new();
    // upright pieces are a tall and b wide; turned ones b tall and a wide
    let mut grid = |x0: usize, y0: usize, w: usize, h: usize, turned: bool| {
        let (ph, pw, t) = if turned {
            (b, a, Transform::QUARTER_TURN)
        } else {
            (a, b, Transform::IDENTITY)
        };
        for x in (x0..x0 + w).step_by(pw) {
            for y in (y0..y0 + h).step_by(ph) {
                out.push(Placement::new(0, t, Cell::new(x as u32, y as u32)));
            }
        }
    };
    if n.is_multiple_of(a) && m.is_multiple_of(b) {
        grid(0, 0, m, n, false);
    } else if n.is_multiple_of(b) && m.is_multiple_of(a) {
        grid(0, 0, m, n, true);
    } else if n.is_multiple_of(a) && n.is_multiple_of(b) {
        let (x, y) = nonneg_combination(a, b, m)?;
        grid(0, 0, b * y, n, false);
        grid(b * y, 0, a * x, n, true);
    } else {
        let (x, y) = nonneg_combination(a, b, n)?;
        grid(0, 0, m, a * x, false);
        grid(0, a * x, m, b * y, true);
    }
    Some(Tiling::new(n, m, out))
}

/// How the board height relates to the piece sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SingleRectCase {
    DivisibleByNeither,
    ExactlyOne,
    /// Both `a` and `b` divide `n`.
    BothDivide,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleRectBeta {
    pub a: usize,
    pub b: usize,
    pub n: usize,
    pub case: SingleRectCase,
    /// The closed-form value claimed for this case, if one is claimed.
    pub published: Option<usize>,
    /// Largest counterexample width up to `m_max`, or `None` when the
    /// search ran out of budget.
    pub empirical: Option<usize>,
    pub m_max: usize,
    /// Whether `published` and `empirical` coincide, when both exist.
    pub agrees: Option<bool>,
}

/// Classifies `n` against the piece sides, states the claimed threshold
/// (`2ab`, or twice the side that does not divide `n`), and measures the
/// threshold with quarter turns up to `m_max = 3ab`. Disagreement is
/// reported, not resolved.
pub fn single_rect_beta(a: usize, b: usize, n: usize, budget: &Budget) -> Result<SingleRectBeta> {
    let (da, db) = (n.is_multiple_of(a), n.is_multiple_of(b));
    let (case, published) = match (da, db) {
        (false, false) => (SingleRectCase::DivisibleByNeither, Some(2 * a * b)),
        (true, false) => (SingleRectCase::ExactlyOne, Some(2 * b)),
        (false, true) => (SingleRectCase::ExactlyOne, Some(2 * a)),
        (true, true) => (SingleRectCase::BothDivide, None),
    };
    let m_max = 3 * a * b;
    let report = beta_empirical(&rect_library(a, b), n, m_max, RearrangeMode::Rotations, budget)?;
    let empirical = report.exhaustive.then_some(report.beta);
    let agrees = match (published, empirical) {
        (Some(p), Some(e)) => Some(p == e),
        _ => None,
    };
    Ok(SingleRectBeta {
        a,
        b,
        n,
        case,
        published,
        empirical,
        m_max,
        agrees,
    })
}

/// Library data confirming the tall-rectangle hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TallData {
    /// Library indices of pieces taller than half the board.
    pub tall: Vec<usize>,
    /// Library index of the unit-height piece, if any.
    pub unit: Option<usize>,
    /// gcd of the tall widths (0 when there are none).
    pub gcd: u32,
}

/// Checks that every piece that fits is either taller than `n / 2` or the
/// single unit-height piece, whose width divides the gcd of the others.
pub fn tall_precondition(lib: &Library, n: usize) -> Result<Option<TallData>> {
    let dims = lib.rect_dims()?;
    let mut tall = Vec::new();
    let mut short = Vec::new();
    for (i, &(h, _)) in dims.iter().enumerate() {
        let h = h as usize;
        if h > n {
            continue;
        }
        if 2 * h > n {
            tall.push(i);
        } else {
            short.push(i);
        }
    }
    let gcd = tall.iter().fold(0u32, |g, &i| g.gcd(&dims[i].1));
    let unit = match short.as_slice() {
        [] => None,
        [u] if dims[*u].0 == 1 && gcd % dims[*u].1 == 0 => Some(*u),
        _ => return Ok(None),
    };
    Ok(Some(TallData { tall, unit, gcd }))
}

/// Lays out the pieces of `ms` as contiguous bottom-aligned blocks by
/// descending height, then fills each row's remaining suffix with the
/// unit-height piece.
pub fn tall_rearrange(lib: &Library, ms: &PieceMultiset, n: usize, m: usize) -> Result<Tiling> {
    let data = tall_precondition(lib, n)?
        .ok_or_else(|| Error::precondition("library is not a tall-rectangle library"))?;
    let dims = lib.rect_dims()?;
    let sym = ms.symmetry().join(lib.symmetry());
    let mut counts = vec![0u32; dims.len()];
    for (shape, c) in ms.iter() {
        let i = lib
            .pieces()
            .iter()
            .position(|p| sym.canonical(p) == sym.canonical(shape))
            .ok_or(Error::ShapeNotInLibrary)?;
        counts[i] += c;
    }
    if ms.area() != (n * m) as u64 {
        return Err(Error::MultisetDoesNotTile { n, m });
    }
    if counts.iter().enumerate().any(|(i, &c)| c > 0 && dims[i].0 as usize > n) {
        return Err(Error::MultisetDoesNotTile { n, m });
    }

    let mut order = data.tall.clone();
    order.sort_by(|&i, &j| dims[j].0.cmp(&dims[i].0));
    let mut placements = Vec::new();
    let mut x = 0u32;
    for &i in &order {
        for _ in 0..counts[i] {
            placements.push(Placement::new(i, Transform::IDENTITY, Cell::new(x, 0)));
            x += dims[i].1;
        }
    }
    if x as usize > m {
        return Err(Error::MultisetDoesNotTile { n, m });
    }

    let mut used = 0u32;
    for y in 0..n as u32 {
        let start: u32 = order
            .iter()
            .filter(|&&i| dims[i].0 > y)
            .map(|&i| dims[i].1 * counts[i])
            .sum();
        let free = m as u32 - start;
        if free == 0 {
            continue;
        }
        let u = data.unit.ok_or(Error::MultisetDoesNotTile { n, m })?;
        let w = dims[u].1;
        if !free.is_multiple_of(w) {
            return Err(Error::MultisetDoesNotTile { n, m });
        }
        for k in 0..free / w {
            placements.push(Placement::new(u, Transform::IDENTITY, Cell::new(start + k * w, y)));
        }
        used += free / w;
    }
    if data.unit.map_or(0, |u| counts[u]) != used {
        return Err(Error::MultisetDoesNotTile { n, m });
    }
    Ok(Tiling::new(n, m, placements))
}

/// The threshold for a tall-rectangle library: the widest piece that fits.
pub fn tall_beta(lib: &Library, n: usize) -> Result<u32> {
    tall_precondition(lib, n)?.ok_or_else(|| Error::precondition("library is not a tall-rectangle library"))?;
    Ok(lib
        .rect_dims()?
        .iter()
        .filter(|&&(h, _)| h as usize <= n)
        .map(|&(_, w)| w)
        .max()
        .unwrap_or(0))
}
