//! Broken-profile search over `n x m` boards.
//!
//! Cells are indexed column-major, `x * n + y`. The search always covers the
//! first empty cell `p`; the state is `p` plus a bit window over the cells
//! `p, p+1, ...` that earlier placements already cover. Every shape is
//! anchored at its first cell in the same order, so each tiling is produced
//! by exactly one sequence of choices.

use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rustc_hash::{FxHashMap, FxHashSet};

use super::catalogue::Candidate;
use super::frontier::{Frontier, Wide};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{Cell, Placement};

struct Prep<M> {
    cand: usize,
    class: usize,
    width: usize,
    mask: M,
    anchor_dy: u32,
    rows: Vec<bool>,
}

struct Kernel<'a, M> {
    n: usize,
    m: usize,
    cells: usize,
    preps: Vec<Prep<M>>,
    cands: &'a [Candidate],
    budget: &'a Budget,
}

fn fits(c: &Candidate, n: usize, m: usize) -> bool {
    let (h, w) = (c.shape.height() as usize, c.shape.width() as usize);
    h <= n && w <= m && c.fixed_row.is_none_or(|r| r as usize + h <= n)
}

fn window_bits(cands: &[Candidate], n: usize, m: usize) -> usize {
    cands
        .iter()
        .filter(|c| fits(c, n, m))
        .map(|c| c.shape.width() as usize * n)
        .max()
        .unwrap_or(1)
}

impl<'a, M: Frontier> Kernel<'a, M> {
    fn new(cands: &'a [Candidate], n: usize, m: usize, budget: &'a Budget) -> Self {
        let mut preps = Vec::new();
        for (i, c) in cands.iter().enumerate() {
            if !fits(c, n, m) {
                continue;
            }
            let anchor = *c
                .shape
                .cells()
                .iter()
                .min_by_key(|q| (q.x, q.y))
                .expect("shapes are non-empty");
            let ay = anchor.y;
            let mut mask = M::default();
            for q in c.shape.cells() {
                mask.set((q.x as usize) * n + q.y as usize - ay as usize);
            }
            let h = c.shape.height() as usize;
            let rows = (0..n)
                .map(|ty| {
                    ty >= ay as usize
                        && ty - ay as usize + h <= n
                        && c.fixed_row.is_none_or(|r| ty - ay as usize == r as usize)
                })
                .collect();
            preps.push(Prep {
                cand: i,
                class: c.class,
                width: c.shape.width() as usize,
                mask,
                anchor_dy: ay,
                rows,
            });
        }
        Kernel {
            n,
            m,
            cells: n * m,
            preps,
            cands,
            budget,
        }
    }

    /// Children of state `(p, mask)`: prep index and successor state.
    #[inline]
    fn moves(&self, p: usize, mask: M) -> impl Iterator<Item = (usize, usize, M)> + '_ {
        let (tx, ty) = (p / self.n, p % self.n);
        self.preps.iter().enumerate().filter_map(move |(i, prep)| {
            if !prep.rows[ty] || tx + prep.width > self.m || mask.intersects(&prep.mask) {
                return None;
            }
            let next = mask.union(prep.mask);
            let k = next.trailing_ones();
            Some((i, p + k as usize, next.shr(k)))
        })
    }

    fn placement(&self, prep: usize, p: usize) -> Placement {
        let prep = &self.preps[prep];
        let c = &self.cands[prep.cand];
        let (tx, ty) = ((p / self.n) as u32, (p % self.n) as u32);
        Placement::new(c.piece, c.transform, Cell::new(tx, ty - prep.anchor_dy))
    }

    fn count(&self, p: usize, mask: M, memo: &mut FxHashMap<(usize, M), BigUint>) -> Result<BigUint> {
        if p == self.cells {
            return Ok(BigUint::one());
        }
        if let Some(v) = memo.get(&(p, mask)) {
            return Ok(v.clone());
        }
        self.budget.tick()?;
        let mut total = BigUint::zero();
        for (_, q, next) in self.moves(p, mask) {
            total += self.count(q, next, memo)?;
        }
        memo.insert((p, mask), total.clone());
        Ok(total)
    }

    fn find(
        &self,
        p: usize,
        mask: M,
        dead: &mut FxHashSet<(usize, M)>,
        path: &mut Vec<(usize, usize)>,
    ) -> Result<bool> {
        if p == self.cells {
            return Ok(true);
        }
        if dead.contains(&(p, mask)) {
            return Ok(false);
        }
        self.budget.tick()?;
        let moves: Vec<_> = self.moves(p, mask).collect();
        for (i, q, next) in moves {
            path.push((i, p));
            if self.find(q, next, dead, path)? {
                return Ok(true);
            }
            path.pop();
        }
        dead.insert((p, mask));
        Ok(false)
    }

    fn find_counted(&self, p: usize, mask: M, st: &mut Counted<M>) -> Result<bool> {
        if p == self.cells {
            return Ok(st.residual.iter().all(|&r| r == 0));
        }
        if st.dead.contains(&(p, mask, st.code)) {
            return Ok(false);
        }
        self.budget.tick()?;
        let moves: Vec<_> = self
            .moves(p, mask)
            .filter(|&(i, _, _)| st.residual[self.preps[i].class] > 0)
            .collect();
        for (i, q, next) in moves {
            let k = self.preps[i].class;
            st.residual[k] -= 1;
            st.code -= st.radix[k];
            st.path.push((i, p));
            if self.find_counted(q, next, st)? {
                return Ok(true);
            }
            st.path.pop();
            st.residual[k] += 1;
            st.code += st.radix[k];
        }
        st.dead.insert((p, mask, st.code));
        Ok(false)
    }

    fn achievable(
        &self,
        p: usize,
        mask: M,
        caps: &Caps,
        memo: &mut FxHashMap<(usize, M), Rc<Vec<u128>>>,
    ) -> Result<Rc<Vec<u128>>> {
        if p == self.cells {
            return Ok(Rc::new(vec![0]));
        }
        if let Some(v) = memo.get(&(p, mask)) {
            return Ok(v.clone());
        }
        self.budget.tick()?;
        let mut out: FxHashSet<u128> = FxHashSet::default();
        for (i, q, next) in self.moves(p, mask) {
            let k = self.preps[i].class;
            if caps.caps[k] == 0 {
                continue;
            }
            let child = self.achievable(q, next, caps, memo)?;
            for &code in child.iter() {
                if caps.digit(code, k) < caps.caps[k] {
                    out.insert(code + caps.radix[k]);
                }
            }
        }
        let mut v: Vec<u128> = out.into_iter().collect();
        v.sort_unstable();
        let v = Rc::new(v);
        memo.insert((p, mask), v.clone());
        Ok(v)
    }
}

struct Counted<M> {
    residual: Vec<u32>,
    radix: Vec<u128>,
    code: u128,
    dead: FxHashSet<(usize, M, u128)>,
    path: Vec<(usize, usize)>,
}

/// Mixed-radix encoding of count vectors bounded by `caps`.
struct Caps {
    caps: Vec<u32>,
    radix: Vec<u128>,
}

impl Caps {
    fn new(caps: &[u32]) -> Result<Self> {
        let mut radix = Vec::with_capacity(caps.len());
        let mut r: u128 = 1;
        for &c in caps {
            radix.push(r);
            r = r.checked_mul(c as u128 + 1).ok_or(Error::StateSpaceTooLarge)?;
        }
        Ok(Caps {
            caps: caps.to_vec(),
            radix,
        })
    }

    fn digit(&self, code: u128, k: usize) -> u32 {
        ((code / self.radix[k]) % (self.caps[k] as u128 + 1)) as u32
    }

    fn encode(&self, v: &[u32]) -> u128 {
        v.iter().zip(&self.radix).map(|(&c, &r)| c as u128 * r).sum()
    }

    fn decode(&self, code: u128) -> Vec<u32> {
        (0..self.caps.len()).map(|k| self.digit(code, k)).collect()
    }
}

macro_rules! dispatch {
    ($bits:expr, $f:ident($($arg:expr),*)) => {
        match $bits {
            b if b <= 64 => $f::<u64>($($arg),*),
            b if b <= 128 => $f::<u128>($($arg),*),
            b if b <= 256 => $f::<Wide<4>>($($arg),*),
            b if b <= 512 => $f::<Wide<8>>($($arg),*),
            b => Err(Error::ProfileTooWide(b)),
        }
    };
}

/// Number of tilings of the board by the candidate shapes.
pub(crate) fn count(cands: &[Candidate], n: usize, m: usize, budget: &Budget) -> Result<BigUint> {
    fn run<M: Frontier>(cands: &[Candidate], n: usize, m: usize, budget: &Budget) -> Result<BigUint> {
        let k = Kernel::<M>::new(cands, n, m, budget);
        k.count(0, M::default(), &mut FxHashMap::default())
    }
    if n * m == 0 {
        return Ok(BigUint::one());
    }
    dispatch!(window_bits(cands, n, m), run(cands, n, m, budget))
}

/// The first tiling in search order, if any.
pub(crate) fn find(cands: &[Candidate], n: usize, m: usize, budget: &Budget) -> Result<Option<Vec<Placement>>> {
    fn run<M: Frontier>(
        cands: &[Candidate],
        n: usize,
        m: usize,
        budget: &Budget,
    ) -> Result<Option<Vec<Placement>>> {
        let k = Kernel::<M>::new(cands, n, m, budget);
        let mut path = Vec::new();
        if k.find(0, M::default(), &mut FxHashSet::default(), &mut path)? {
            Ok(Some(path.iter().map(|&(i, p)| k.placement(i, p)).collect()))
        } else {
            Ok(None)
        }
    }
    if n * m == 0 {
        return Ok(Some(Vec::new()));
    }
    dispatch!(window_bits(cands, n, m), run(cands, n, m, budget))
}

/// A tiling using exactly `counts[k]` candidates of class `k`.
pub(crate) fn find_counted(
    cands: &[Candidate],
    n: usize,
    m: usize,
    counts: &[u32],
    budget: &Budget,
) -> Result<Option<Vec<Placement>>> {
    fn run<M: Frontier>(
        cands: &[Candidate],
        n: usize,
        m: usize,
        counts: &[u32],
        budget: &Budget,
    ) -> Result<Option<Vec<Placement>>> {
        let k = Kernel::<M>::new(cands, n, m, budget);
        let caps = Caps::new(counts)?;
        let mut st = Counted {
            residual: counts.to_vec(),
            code: caps.encode(counts),
            radix: caps.radix,
            dead: FxHashSet::default(),
            path: Vec::new(),
        };
        if k.find_counted(0, M::default(), &mut st)? {
            Ok(Some(st.path.iter().map(|&(i, p)| k.placement(i, p)).collect()))
        } else {
            Ok(None)
        }
    }
    if n * m == 0 {
        return Ok(counts.iter().all(|&c| c == 0).then(Vec::new));
    }
    dispatch!(window_bits(cands, n, m), run(cands, n, m, counts, budget))
}

/// Every count vector bounded by `caps` with which the board can be tiled,
/// ascending by encoding.
pub(crate) fn achievable(
    cands: &[Candidate],
    n: usize,
    m: usize,
    caps: &[u32],
    budget: &Budget,
) -> Result<Vec<Vec<u32>>> {
    fn run<M: Frontier>(
        cands: &[Candidate],
        n: usize,
        m: usize,
        caps: &[u32],
        budget: &Budget,
    ) -> Result<Vec<Vec<u32>>> {
        let k = Kernel::<M>::new(cands, n, m, budget);
        let caps = Caps::new(caps)?;
        let codes = k.achievable(0, M::default(), &caps, &mut FxHashMap::default())?;
        Ok(codes.iter().map(|&c| caps.decode(c)).collect())
    }
    if n * m == 0 {
        return Ok(vec![vec![0; caps.len()]]);
    }
    dispatch!(window_bits(cands, n, m), run(cands, n, m, caps, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Polyomino, Transform};

    fn cands(shapes: &[(u32, u32)]) -> Vec<Candidate> {
        shapes
            .iter()
            .enumerate()
            .map(|(i, &(h, w))| Candidate {
                piece: i,
                transform: Transform::IDENTITY,
                shape: Polyomino::rect(h, w),
                class: i,
                fixed_row: None,
            })
            .collect()
    }

    #[test]
    fn domino_counts() {
        let d = cands(&[(1, 2), (2, 1)]);
        let b = Budget::default();
        let fib: Vec<u64> = (0..8)
            .map(|m| count(&d, 2, m, &b).unwrap().try_into().unwrap())
            .collect();
        assert_eq!(fib, vec![1, 1, 2, 3, 5, 8, 13, 21]);
        assert_eq!(count(&d, 4, 4, &b).unwrap(), BigUint::from(36u32));
        assert_eq!(count(&d, 8, 8, &b).unwrap(), BigUint::from(12_988_816u32));
    }

    #[test]
    fn counted_search_respects_counts() {
        let c = cands(&[(1, 1), (1, 2)]);
        let b = Budget::default();
        assert!(find_counted(&c, 1, 3, &[1, 1], &b).unwrap().is_some());
        assert!(find_counted(&c, 1, 3, &[3, 0], &b).unwrap().is_some());
        assert!(find_counted(&c, 1, 3, &[2, 1], &b).unwrap().is_none());
    }

    #[test]
    fn achievable_vectors() {
        let c = cands(&[(1, 1), (1, 2)]);
        let b = Budget::default();
        let mut got = achievable(&c, 1, 4, &[4, 2], &b).unwrap();
        got.sort();
        assert_eq!(got, vec![vec![0, 2], vec![2, 1], vec![4, 0]]);
        let capped = achievable(&c, 1, 4, &[2, 2], &b).unwrap();
        assert_eq!(capped.len(), 2);
    }

    #[test]
    fn fixed_rows_pin_pieces() {
        let mut c = cands(&[(1, 2)]);
        c[0].fixed_row = Some(1);
        let b = Budget::default();
        assert_eq!(count(&c, 2, 2, &b).unwrap(), BigUint::zero());
        c.push(Candidate {
            fixed_row: Some(0),
            ..c[0].clone()
        });
        c[1].class = 1;
        assert_eq!(count(&c, 2, 2, &b).unwrap(), BigUint::one());
    }

    #[test]
    fn wide_windows_dispatch() {
        let c = cands(&[(1, 5), (20, 1)]);
        let b = Budget::default();
        // window 20 * 5 = 100 bits
        assert_eq!(count(&c, 20, 5, &b).unwrap(), BigUint::from(2u32));
        let c = cands(&[(1, 20), (20, 1)]);
        // window 400 bits
        assert_eq!(count(&c, 20, 20, &b).unwrap(), BigUint::from(2u32));
        let c = cands(&[(1, 30), (30, 1)]);
        assert_eq!(count(&c, 30, 30, &b), Err(Error::ProfileTooWide(900)));
    }

    #[test]
    fn budget_is_enforced() {
        let d = cands(&[(1, 2), (2, 1)]);
        let b = Budget::new(10);
        assert!(count(&d, 6, 6, &b).unwrap_err().is_budget());
    }
}
