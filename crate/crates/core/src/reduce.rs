//! Number partitioning as a subtiling question. The values of `M` become
//! `(2N+1) x m_i` columns standing side by side under two `1 x N` bars on a
//! `(2N+2) x 2N` board, where `2N` is the sum of `M`; the board splits into
//! two rectangles exactly when `M` splits into two halves of equal sum.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::enumerate::{find_counted, Candidate};
use crate::error::{Error, Result};
use crate::geometry::{multiset_of, Cell, Library, Placement, Tiling, Transform, TransformMode};
use crate::subtile::{has_subtiling, RearrangeMode, SubtilingWitness};

/// Largest input the subset scan accepts.
pub const MAX_PARTITION_LEN: usize = 30;

/// An equal-sum split of `values`, taking the first subset in binary
/// counting order (bit `i` selects `values[i]`).
pub fn partition_brute(values: &[u64]) -> Result<Option<(Vec<u64>, Vec<u64>)>> {
    if values.len() > MAX_PARTITION_LEN {
        return Err(Error::precondition(format!(
            "at most {MAX_PARTITION_LEN} values, got {}",
            values.len()
        )));
    }
    let total: u64 = values.iter().sum();
    if total % 2 == 1 {
        return Ok(None);
    }
    for mask in 0u64..1 << values.len() {
        let sum: u64 = (0..values.len()).filter(|i| mask >> i & 1 == 1).map(|i| values[i]).sum();
        if sum * 2 == total {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (i, &v) in values.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.push(v);
                } else {
                    right.push(v);
                }
            }
            return Ok(Some((left, right)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionInstance {
    pub values: Vec<u64>,
    /// Half the sum of `values`.
    pub half: usize,
    /// Tall `(2N+1) x v` pieces for each distinct value, then the `1 x N` bar.
    pub library: Library,
    pub tiling: Tiling,
}

impl ReductionInstance {
    pub fn n(&self) -> usize {
        self.tiling.n
    }

    pub fn m(&self) -> usize {
        self.tiling.m
    }

    /// Splits `values` by the side of `w` each tall piece lands on.
    pub fn project(&self, w: &SubtilingWitness) -> Result<(Vec<u64>, Vec<u64>)> {
        let widths = |t: &Tiling| -> Result<Vec<u64>> {
            let mut out = Vec::new();
            for p in &t.placements {
                let shape = p.shape(&self.library)?;
                if shape.height() as usize == 2 * self.half + 1 {
                    out.push(shape.width() as u64);
                }
            }
            out.sort_unstable();
            Ok(out)
        };
        Ok((widths(&w.left)?, widths(&w.right)?))
    }
}

/// The instance for `values`, or `None` when their sum is odd.
pub fn reduce_partition(values: &[u64]) -> Result<Option<ReductionInstance>> {
    if values.is_empty() {
        return Err(Error::precondition("partition instance is empty"));
    }
    if values.contains(&0) {
        return Err(Error::precondition("partition values must be positive"));
    }
    let total: u64 = values.iter().sum();
    if total % 2 == 1 {
        return Ok(None);
    }
    let half = (total / 2) as usize;
    let h = 2 * half as u32 + 1;
    let mut distinct: Vec<u64> = Vec::new();
    for &v in values {
        if !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    let mut dims: Vec<(u32, u32)> = distinct.iter().map(|&v| (h, v as u32)).collect();
    dims.push((1, half as u32));
    let library = Library::rectangles(&dims, TransformMode::Fixed);

    let mut placements = Vec::new();
    let mut x = 0u32;
    for &v in values {
        let i = distinct.iter().position(|&d| d == v).unwrap();
        placements.push(Placement::new(i, Transform::IDENTITY, Cell::new(x, 0)));
        x += v as u32;
    }
    let bar = distinct.len();
    placements.push(Placement::new(bar, Transform::IDENTITY, Cell::new(0, h)));
    placements.push(Placement::new(bar, Transform::IDENTITY, Cell::new(half as u32, h)));
    Ok(Some(ReductionInstance {
        values: values.to_vec(),
        half,
        library,
        tiling: Tiling::new(2 * half + 2, 2 * half, placements),
    }))
}

/// Searches the reduced instance for a subtiling allowing quarter turns.
pub fn subtiling_of_instance(inst: &ReductionInstance, budget: &Budget) -> Result<Option<SubtilingWitness>> {
    let ms = multiset_of(&inst.library, &inst.tiling)?;
    has_subtiling(&inst.library, &ms, inst.n(), inst.m(), RearrangeMode::Rotations, budget)
}

/// Decides partitionability of `values` through the subtiling search.
pub fn solve_partition_via_tiling(values: &[u64], budget: &Budget) -> Result<bool> {
    match reduce_partition(values)? {
        None => Ok(false),
        Some(inst) => Ok(subtiling_of_instance(&inst, budget)?.is_some()),
    }
}

/// True when no tiling of the instance's board by its pieces turns any
/// piece a quarter. Every split of each piece count into upright and turned
/// copies with at least one turned copy is searched exhaustively.
pub fn rotation_rigidity_check(inst: &ReductionInstance, budget: &Budget) -> Result<bool> {
    let mut counts = vec![0u32; inst.library.len()];
    for p in &inst.tiling.placements {
        counts[p.piece] += 1;
    }
    let mut cands = Vec::new();
    for (i, piece) in inst.library.pieces().iter().enumerate() {
        cands.push(Candidate {
            piece: i,
            transform: Transform::IDENTITY,
            shape: piece.clone(),
            class: 2 * i,
            fixed_row: None,
        });
        let turned = Transform::QUARTER_TURN.apply(piece);
        if turned != *piece {
            cands.push(Candidate {
                piece: i,
                transform: Transform::QUARTER_TURN,
                shape: turned,
                class: 2 * i + 1,
                fixed_row: None,
            });
        }
    }
    let turnable: Vec<bool> = inst
        .library
        .pieces()
        .iter()
        .map(|p| Transform::QUARTER_TURN.apply(p) != *p)
        .collect();
    // odometer over turned counts
    let mut turned = vec![0u32; counts.len()];
    loop {
        let mut k = 0;
        while k < counts.len() {
            if turnable[k] && turned[k] < counts[k] {
                turned[k] += 1;
                break;
            }
            turned[k] = 0;
            k += 1;
        }
        if k == counts.len() {
            return Ok(true);
        }
        let v: Vec<u32> = (0..counts.len())
            .flat_map(|i| [counts[i] - turned[i], turned[i]])
            .collect();
        if find_counted(&cands, inst.n(), inst.m(), &v, budget)?.is_some() {
            return Ok(false);
        }
    }
}
