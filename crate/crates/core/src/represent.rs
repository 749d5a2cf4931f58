//! Rectangles pinned to row intervals: the per-row width equations, exact
//! tiling search that respects the pins, row-convex filling, and the
//! staircase layouts that reduce tall pieces to a row-convex remainder.
//!
//! Rows are numbered from 1 at the bottom; row `i` is `y = i - 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::enumerate::{find_counted, Candidate};
use crate::error::{Error, Result};
use crate::geometry::{check_cover, Cell, Library, Placement, Polyomino, Tiling, Transform, TransformMode, Violation};

/// Rows `start, ..., start + len - 1` (1-based). JSON: `[start, len]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct RowInterval {
    pub start: u32,
    pub len: u32,
}

impl RowInterval {
    pub fn new(start: u32, len: u32) -> Self {
        RowInterval { start, len }
    }

    pub fn end(self) -> u32 {
        self.start + self.len - 1
    }

    pub fn contains(self, row: u32) -> bool {
        self.start <= row && row <= self.end()
    }

    pub fn fits(self, n: usize) -> bool {
        self.start >= 1 && self.len >= 1 && self.end() as usize <= n
    }

    /// Bottom `y` coordinate.
    pub fn bottom(self) -> u32 {
        self.start - 1
    }
}

impl From<[u32; 2]> for RowInterval {
    fn from([start, len]: [u32; 2]) -> Self {
        RowInterval { start, len }
    }
}

impl From<RowInterval> for [u32; 2] {
    fn from(r: RowInterval) -> Self {
        [r.start, r.len]
    }
}

/// An `a x b` rectangle that must span exactly `rows`.
/// JSON: `{"rect": [a, b], "rows": [start, len]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RowAssignedPiece {
    pub rect: [u32; 2],
    pub rows: RowInterval,
}

impl RowAssignedPiece {
    pub fn new(height: u32, width: u32, start: u32) -> Self {
        RowAssignedPiece {
            rect: [height, width],
            rows: RowInterval::new(start, height),
        }
    }

    pub fn height(&self) -> u32 {
        self.rect[0]
    }

    pub fn width(&self) -> u32 {
        self.rect[1]
    }

    pub fn is_valid(&self, n: usize) -> bool {
        self.height() >= 1 && self.width() >= 1 && self.rows.len == self.height() && self.rows.fits(n)
    }
}

impl fmt::Display for RowAssignedPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}@{}..{}", self.height(), self.width(), self.rows.start, self.rows.end())
    }
}

/// Per-row horizontal segments `[start, start + len)`, indexed by `y`,
/// inside an `n x m` box. A zero-length segment is an empty row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowConvexRegion {
    pub m: usize,
    pub rows: Vec<(u32, u32)>,
}

impl RowConvexRegion {
    pub fn full(n: usize, m: usize) -> Self {
        RowConvexRegion {
            m,
            rows: vec![(0, m as u32); n],
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.rows
            .get(c.y as usize)
            .is_some_and(|&(s, l)| s <= c.x && c.x < s + l)
    }

    pub fn area(&self) -> u64 {
        self.rows.iter().map(|r| r.1 as u64).sum()
    }

    /// The free cells of an `n x m` occupancy grid (column-major), if every
    /// row's free cells are contiguous.
    pub fn from_free(n: usize, m: usize, occupied: &[bool]) -> Option<Self> {
        let mut rows = Vec::with_capacity(n);
        for y in 0..n {
            let free: Vec<usize> = (0..m).filter(|&x| !occupied[x * n + y]).collect();
            match (free.first(), free.last()) {
                (Some(&a), Some(&b)) if b - a + 1 == free.len() => rows.push((a as u32, free.len() as u32)),
                (None, None) => rows.push((0, 0)),
                _ => return None,
            }
        }
        Some(RowConvexRegion { m, rows })
    }
}

/// A tiling together with the row assignment of each placement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignedTiling {
    pub library: Library,
    pub tiling: Tiling,
    pub assignments: Vec<RowAssignedPiece>,
}

impl AssignedTiling {
    fn build(n: usize, m: usize, placed: Vec<(RowAssignedPiece, Cell)>) -> Self {
        let mut dims: Vec<(u32, u32)> = Vec::new();
        for (p, _) in &placed {
            if !dims.contains(&(p.height(), p.width())) {
                dims.push((p.height(), p.width()));
            }
        }
        let library = Library::rectangles(&dims, TransformMode::Fixed);
        let mut placements = Vec::with_capacity(placed.len());
        let mut assignments = Vec::with_capacity(placed.len());
        for (p, at) in placed {
            let i = dims.iter().position(|&d| d == (p.height(), p.width())).unwrap();
            placements.push(Placement::new(i, Transform::IDENTITY, at));
            assignments.push(p);
        }
        AssignedTiling {
            library,
            tiling: Tiling::new(n, m, placements),
            assignments,
        }
    }

    /// Cover violations against `region`, plus any placement off its
    /// assigned rows.
    pub fn violations(&self, region: &RowConvexRegion) -> Vec<Violation> {
        let mut v = check_cover(
            &self.library,
            self.tiling.n,
            self.tiling.m,
            &self.tiling.placements,
            self.library.symmetry(),
            |c| region.contains(c),
        );
        for (i, (p, a)) in self.tiling.placements.iter().zip(&self.assignments).enumerate() {
            let shape = self.library.piece(p.piece).map(|s| (s.height(), s.width()));
            if p.at.y != a.rows.bottom() || shape != Ok((a.height(), a.width())) {
                v.push(Violation::OffAssignedRows { placement: i });
            }
        }
        v
    }
}

/// The common row width `m` when every row's assigned widths sum to the
/// same value, which also forces total area `n * m`.
pub fn check_rep_equations(pieces: &[RowAssignedPiece], n: usize) -> Option<usize> {
    if pieces.iter().any(|p| !p.is_valid(n)) {
        return None;
    }
    let mut sums = vec![0u64; n];
    for p in pieces {
        for row in p.rows.start..=p.rows.end() {
            sums[row as usize - 1] += p.width() as u64;
        }
    }
    let m = sums.first().copied().unwrap_or(0);
    sums.iter().all(|&s| s == m).then_some(m as usize)
}

fn distinct(pieces: &[RowAssignedPiece]) -> (Vec<RowAssignedPiece>, Vec<u32>) {
    let mut kinds: Vec<RowAssignedPiece> = pieces.to_vec();
    kinds.sort();
    kinds.dedup();
    let counts = kinds
        .iter()
        .map(|k| pieces.iter().filter(|p| *p == k).count() as u32)
        .collect();
    (kinds, counts)
}

/// Exhaustive search for a tiling of `n x m` in which every piece spans
/// exactly its assigned rows.
pub fn tile_with_row_assignments(
    pieces: &[RowAssignedPiece],
    n: usize,
    m: usize,
    budget: &Budget,
) -> Result<Option<AssignedTiling>> {
    if check_rep_equations(pieces, n) != Some(m) && !(pieces.is_empty() && m == 0) {
        return Err(Error::precondition(format!(
            "assigned widths do not sum to {m} in every row"
        )));
    }
    let (kinds, counts) = distinct(pieces);
    let cands: Vec<Candidate> = kinds
        .iter()
        .enumerate()
        .map(|(i, k)| Candidate {
            piece: i,
            transform: Transform::IDENTITY,
            shape: Polyomino::rect(k.height(), k.width()),
            class: i,
            fixed_row: Some(k.rows.bottom()),
        })
        .collect();
    let Some(found) = find_counted(&cands, n, m, &counts, budget)? else {
        return Ok(None);
    };
    let placed = found.into_iter().map(|p| (kinds[p.piece], p.at)).collect();
    Ok(Some(AssignedTiling::build(n, m, placed)))
}

/// Fills a row-convex region with unit-height pieces, each row's pieces
/// placed left to right by descending width.
pub fn tile_row_convex(region: &RowConvexRegion, pieces: &[RowAssignedPiece]) -> Result<AssignedTiling> {
    let n = region.n();
    let mut by_row: Vec<Vec<RowAssignedPiece>> = vec![Vec::new(); n];
    for p in pieces {
        if p.height() != 1 || !p.is_valid(n) {
            return Err(Error::precondition(format!("{p} is not a unit-height piece inside {n} rows")));
        }
        by_row[p.rows.bottom() as usize].push(*p);
    }
    let mut placed = Vec::with_capacity(pieces.len());
    for (y, row) in by_row.iter_mut().enumerate() {
        let (start, len) = region.rows[y];
        let total: u64 = row.iter().map(|p| p.width() as u64).sum();
        if total != len as u64 {
            return Err(Error::precondition(format!(
                "row {} has width {len} but its pieces sum to {total}",
                y + 1
            )));
        }
        row.sort_by(|a, b| b.width().cmp(&a.width()));
        let mut x = start;
        for p in row.iter() {
            placed.push((*p, Cell::new(x, y as u32)));
            x += p.width();
        }
    }
    Ok(AssignedTiling::build(n, region.m, placed))
}

/// Which sufficient condition guarantees every solution of the row
/// equations tiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepJustification {
    /// At most three rows.
    FewRows,
    /// Every piece that fits has height 1, `n - 1` or `n`.
    UnitOrTall,
    /// Four rows, and all height-2 pieces share one width.
    FourRowsUniformHeightTwo,
}

/// The first applicable sufficient condition, or `None` (inconclusive).
pub fn rep_sufficient(lib: &Library, n: usize) -> Result<Option<RepJustification>> {
    let dims = lib.rect_dims()?;
    if n <= 3 {
        return Ok(Some(RepJustification::FewRows));
    }
    let n32 = n as u32;
    let fitting: Vec<(u32, u32)> = dims.into_iter().filter(|&(h, _)| h <= n32).collect();
    if fitting.iter().all(|&(h, _)| h == 1 || h + 1 >= n32) {
        return Ok(Some(RepJustification::UnitOrTall));
    }
    if n == 4 {
        let mut twos = fitting.iter().filter(|&&(h, _)| h == 2).map(|&(_, w)| w);
        if let Some(w) = twos.next() {
            if twos.all(|x| x == w) {
                return Ok(Some(RepJustification::FourRowsUniformHeightTwo));
            }
        }
    }
    Ok(None)
}

/// A multiset satisfying the row equations that cannot be tiled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepCounterexample {
    pub m: usize,
    pub pieces: Vec<RowAssignedPiece>,
}

/// Searches widths `1..=m_max` in order; within a width, assignment count
/// vectors (at most `count_max` per piece and interval) are visited
/// lexicographically with per-row residual pruning.
pub fn find_rep_counterexample(
    lib: &Library,
    n: usize,
    m_max: usize,
    count_max: u32,
    budget: &Budget,
) -> Result<Option<RepCounterexample>> {
    let dims = lib.rect_dims()?;
    let mut vars: Vec<RowAssignedPiece> = Vec::new();
    for &(h, w) in &dims {
        if h as usize > n {
            continue;
        }
        for start in 1..=(n as u32 - h + 1) {
            vars.push(RowAssignedPiece::new(h, w, start));
        }
    }
    // last variable index touching each row; rows nobody touches must be empty
    let last: Vec<Option<usize>> = (1..=n as u32)
        .map(|row| vars.iter().rposition(|v| v.rows.contains(row)))
        .collect();
    for m in 1..=m_max {
        if last.iter().any(Option::is_none) {
            break;
        }
        let mut search = RepSearch {
            vars: &vars,
            last: &last,
            n,
            m,
            count_max,
            counts: vec![0; vars.len()],
            residual: vec![m as u64; n],
            budget,
        };
        if let Some(pieces) = search.run(0)? {
            return Ok(Some(RepCounterexample { m, pieces }));
        }
    }
    Ok(None)
}

struct RepSearch<'a> {
    vars: &'a [RowAssignedPiece],
    last: &'a [Option<usize>],
    n: usize,
    m: usize,
    count_max: u32,
    counts: Vec<u32>,
    residual: Vec<u64>,
    budget: &'a Budget,
}

impl RepSearch<'_> {
    fn run(&mut self, j: usize) -> Result<Option<Vec<RowAssignedPiece>>> {
        self.budget.tick()?;
        if j == self.vars.len() {
            let pieces: Vec<RowAssignedPiece> = self
                .vars
                .iter()
                .zip(&self.counts)
                .flat_map(|(v, &c)| std::iter::repeat_n(*v, c as usize))
                .collect();
            return Ok(match tile_with_row_assignments(&pieces, self.n, self.m, self.budget)? {
                Some(_) => None,
                None => Some(pieces),
            });
        }
        let v = self.vars[j];
        let rows = v.rows.bottom() as usize..=v.rows.end() as usize - 1;
        let room = rows.clone().map(|y| self.residual[y]).min().unwrap() / v.width() as u64;
        let hi = room.min(self.count_max as u64) as u32;
        for c in 0..=hi {
            let closes = rows.clone().all(|y| {
                self.last[y] != Some(j) || self.residual[y] == c as u64 * v.width() as u64
            });
            if closes {
                for y in rows.clone() {
                    self.residual[y] -= c as u64 * v.width() as u64;
                }
                self.counts[j] = c;
                let found = self.run(j + 1)?;
                for y in rows.clone() {
                    self.residual[y] += c as u64 * v.width() as u64;
                }
                self.counts[j] = 0;
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }
}

/// Tall pieces placed so that the untiled remainder is row-convex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseArrangement {
    pub m: usize,
    /// Index into the input pieces and bottom-left corner.
    pub placements: Vec<(usize, Cell)>,
    pub region: RowConvexRegion,
}

/// Places every piece taller than one row by the layouts that make the
/// remainder row-convex: full-height blocks, then bottom-aligned
/// `(n-1)`-blocks from the left and top-aligned ones flush right. With four
/// rows, equal-width height-2 pieces are paired bottom/top in shared
/// columns. Unit-height pieces are left for the remainder.
pub fn staircase_arrangement(pieces: &[RowAssignedPiece], n: usize) -> Result<StaircaseArrangement> {
    let m = check_rep_equations(pieces, n)
        .ok_or_else(|| Error::precondition("assigned widths are inconsistent across rows"))?;
    let n32 = n as u32;
    let tall: Vec<usize> = (0..pieces.len()).filter(|&i| pieces[i].height() > 1).collect();
    let by = |pred: &dyn Fn(&RowAssignedPiece) -> bool| -> Vec<usize> {
        tall.iter().copied().filter(|&i| pred(&pieces[i])).collect()
    };
    let full = by(&|p| p.height() == n32);
    let low = by(&|p| p.height() + 1 == n32 && p.rows.start == 1);
    let high = by(&|p| p.height() + 1 == n32 && p.rows.start == 2);

    let mut left: Vec<Vec<usize>> = vec![full, low];
    let mut right: Vec<usize> = high;
    let handled: usize = left.iter().map(Vec::len).sum::<usize>() + right.len();
    if handled != tall.len() {
        if n != 4 {
            return Err(Error::precondition(format!(
                "pieces must have height 1, {} or {n}",
                n.saturating_sub(1)
            )));
        }
        let twos = by(&|p| p.height() == 2);
        if twos.len() + handled != tall.len() {
            return Err(Error::precondition("unsupported piece height"));
        }
        if twos.windows(2).any(|w| pieces[w[0]].width() != pieces[w[1]].width()) {
            return Err(Error::precondition("height-2 pieces must share one width"));
        }
        let bottom: Vec<usize> = twos.iter().copied().filter(|&i| pieces[i].rows.start == 1).collect();
        let middle: Vec<usize> = twos.iter().copied().filter(|&i| pieces[i].rows.start == 2).collect();
        let top: Vec<usize> = twos.iter().copied().filter(|&i| pieces[i].rows.start == 3).collect();
        let pairs = bottom.len().min(top.len());
        let (full, low) = (left[0].clone(), left[1].clone());
        let stacked: Vec<usize> = bottom[..pairs]
            .iter()
            .zip(&top[..pairs])
            .flat_map(|(&b, &t)| [b, t])
            .collect();
        if bottom.len() >= top.len() {
            left = vec![full, stacked, low, bottom[pairs..].to_vec()];
            right = [middle, right].concat();
        } else {
            left = vec![full, stacked, low, middle];
            right = [top[pairs..].to_vec(), right].concat();
        }
        return place(pieces, n, m, &left, &right, true);
    }
    place(pieces, n, m, &left, &right, false)
}

fn place(
    pieces: &[RowAssignedPiece],
    n: usize,
    m: usize,
    left: &[Vec<usize>],
    right: &[usize],
    paired: bool,
) -> Result<StaircaseArrangement> {
    let mut occupied = vec![false; n * m];
    let mut placements = Vec::new();
    let mut put = |i: usize, x: u32, placements: &mut Vec<(usize, Cell)>| -> Result<()> {
        let p = pieces[i];
        let y0 = p.rows.bottom();
        for dx in 0..p.width() {
            for dy in 0..p.height() {
                let (cx, cy) = ((x + dx) as usize, (y0 + dy) as usize);
                if cx >= m || occupied[cx * n + cy] {
                    return Err(Error::precondition("pieces do not fit the layout"));
                }
                occupied[cx * n + cy] = true;
            }
        }
        placements.push((i, Cell::new(x, y0)));
        Ok(())
    };
    let mut x = 0u32;
    for (g, group) in left.iter().enumerate() {
        // the second group of a paired layout stacks bottom/top couples
        if paired && g == 1 {
            for pair in group.chunks(2) {
                put(pair[0], x, &mut placements)?;
                put(pair[1], x, &mut placements)?;
                x += pieces[pair[0]].width();
            }
            continue;
        }
        for &i in group {
            put(i, x, &mut placements)?;
            x += pieces[i].width();
        }
    }
    let mut x = m as u32;
    for &i in right.iter().rev() {
        x = x
            .checked_sub(pieces[i].width())
            .ok_or_else(|| Error::precondition("pieces do not fit the layout"))?;
        put(i, x, &mut placements)?;
    }
    let region = RowConvexRegion::from_free(n, m, &occupied)
        .ok_or_else(|| Error::precondition("remainder is not row-convex"))?;
    Ok(StaircaseArrangement {
        m,
        placements,
        region,
    })
}

/// The staircase arrangement completed by filling the row-convex
/// remainder with the unit-height pieces.
pub fn tile_by_staircase(pieces: &[RowAssignedPiece], n: usize) -> Result<AssignedTiling> {
    let arr = staircase_arrangement(pieces, n)?;
    let units: Vec<RowAssignedPiece> = pieces.iter().copied().filter(|p| p.height() == 1).collect();
    let fill = tile_row_convex(&arr.region, &units)?;
    let mut placed: Vec<(RowAssignedPiece, Cell)> =
        arr.placements.iter().map(|&(i, at)| (pieces[i], at)).collect();
    placed.extend(fill.assignments.iter().zip(&fill.tiling.placements).map(|(a, p)| (*a, p.at)));
    Ok(AssignedTiling::build(n, arr.m, placed))
}
