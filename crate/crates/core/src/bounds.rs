//! Exact evaluation of two closed-form upper bounds on the subtiling
//! threshold, and a harness comparing them with measured thresholds.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::Library;
use crate::represent::{rep_sufficient, RepJustification};
use crate::subtile::{beta_empirical, RearrangeMode};

/// Library statistics the bounds are built from, over pieces that fit in
/// `n` rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundInputs {
    pub n: usize,
    /// Number of pieces of each height.
    pub per_height: BTreeMap<u32, usize>,
    pub max_area: u64,
    pub max_width: u64,
    pub widths: Vec<u64>,
}

impl BoundInputs {
    pub fn new(lib: &Library, n: usize) -> Result<Self> {
        let dims: Vec<(u32, u32)> = lib
            .rect_dims()?
            .into_iter()
            .filter(|&(h, _)| h as usize <= n)
            .collect();
        let mut per_height = BTreeMap::new();
        for &(h, _) in &dims {
            *per_height.entry(h).or_insert(0) += 1;
        }
        let mut widths: Vec<u64> = dims.iter().map(|&(_, w)| w as u64).collect();
        widths.sort_unstable();
        widths.dedup();
        Ok(BoundInputs {
            n,
            per_height,
            max_area: dims.iter().map(|&(h, w)| h as u64 * w as u64).max().unwrap_or(0),
            max_width: widths.last().copied().unwrap_or(0),
            widths,
        })
    }

    /// `sum over heights i of (n - i + 1) * (pieces of height i)`.
    pub fn weighted_count(&self) -> u64 {
        self.per_height
            .iter()
            .map(|(&i, &c)| (self.n as u64 - i as u64 + 1) * c as u64)
            .sum()
    }

    /// lcm of the distinct widths.
    pub fn width_lcm(&self) -> u64 {
        self.widths.iter().fold(1u64, |l, &w| l.lcm(&w))
    }
}

fn rat(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn at_least_two(v: BigRational) -> BigRational {
    let two = rat(2, 1);
    if v > two {
        v
    } else {
        two
    }
}

/// `max(2, 3/4 * A^(n-1) * sum_i (n - i + 1) |L(i)|)` where `A` is the
/// largest area of a piece that fits. Meaningful for libraries whose row
/// equations always tile (see [`rep_sufficient`]).
pub fn bound_general(lib: &Library, n: usize) -> Result<BigRational> {
    let inp = BoundInputs::new(lib, n)?;
    let sum = inp.weighted_count();
    if sum == 0 {
        return Ok(rat(2, 1));
    }
    let power: BigInt = Pow::pow(BigInt::from(inp.max_area), n.saturating_sub(1));
    let v = rat(3, 4) * BigRational::from_integer(power * BigInt::from(sum));
    Ok(at_least_two(v))
}

/// `max(2, 3/8 * w^n * lcm(widths)^2)` for libraries of unit-height pieces,
/// `w` the largest width.
pub fn bound_unit_height(lib: &Library, n: usize) -> Result<BigRational> {
    let dims = lib.rect_dims()?;
    if let Some(i) = dims.iter().position(|&(h, _)| h != 1) {
        return Err(Error::precondition(format!("piece {i} does not have unit height")));
    }
    let inp = BoundInputs::new(lib, n)?;
    if inp.widths.is_empty() {
        return Ok(rat(2, 1));
    }
    let l = BigInt::from(inp.width_lcm());
    let power: BigInt = Pow::pow(BigInt::from(inp.max_width), n);
    let v = rat(3, 8) * BigRational::from_integer(power * &l * &l);
    Ok(at_least_two(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    /// Exact value, `p/q` or an integer.
    pub value: String,
    pub ceiling: String,
    #[serde(skip)]
    pub exact: BigRational,
}

impl BoundValue {
    pub fn new(exact: BigRational) -> Self {
        BoundValue {
            value: exact.to_string(),
            ceiling: exact.ceil().to_integer().to_string(),
            exact,
        }
    }

    pub fn ceiling(&self) -> BigInt {
        self.exact.ceil().to_integer()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub m_max: usize,
    pub inputs: BoundInputs,
    pub justification: Option<RepJustification>,
    /// Present only when its hypotheses hold.
    pub general: Option<BoundValue>,
    pub unit_height: Option<BoundValue>,
    pub width_lcm: u64,
    /// Largest counterexample width found (translations only).
    pub empirical: usize,
    pub exhaustive: bool,
}

/// Measures the threshold up to `m_max` and checks it against every bound
/// whose hypotheses hold. Exceeding a bound is reported as
/// [`Error::BoundViolated`].
pub fn bound_vs_empirical(lib: &Library, n: usize, m_max: usize, budget: &Budget) -> Result<BoundReport> {
    let inputs = BoundInputs::new(lib, n)?;
    let justification = rep_sufficient(lib, n)?;
    let general = match justification {
        Some(_) => Some(BoundValue::new(bound_general(lib, n)?)),
        None => None,
    };
    let unit_height = match bound_unit_height(lib, n) {
        Ok(v) => Some(BoundValue::new(v)),
        Err(Error::Precondition(_)) => None,
        Err(e) => return Err(e),
    };
    let report = beta_empirical(lib, n, m_max, RearrangeMode::Translations, budget)?;
    let empirical = report.beta;
    for (name, b) in [("general", &general), ("unit-height", &unit_height)] {
        if let Some(b) = b {
            if BigInt::from(empirical) > b.ceiling() {
                return Err(Error::BoundViolated {
                    bound: name,
                    value: b.value.clone(),
                    empirical,
                });
            }
        }
    }
    Ok(BoundReport {
        n,
        m_max,
        width_lcm: inputs.width_lcm(),
        inputs,
        justification,
        general,
        unit_height,
        empirical,
        exhaustive: report.exhaustive,
    })
}

impl BoundReport {
    /// True when some bound applied.
    pub fn checked(&self) -> bool {
        self.general.is_some() || self.unit_height.is_some()
    }
}

/// Convenience for tests and callers holding plain integers.
pub fn ratio(num: i64, den: i64) -> BigRational {
    assert!(!den.is_zero(), "zero denominator");
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::TransformMode;

    fn rects(d: &[(u32, u32)]) -> Library {
        Library::rectangles(d, TransformMode::Fixed)
    }

    #[test]
    fn general_values() {
        assert_eq!(bound_general(&rects(&[(1, 2)]), 1).unwrap(), ratio(2, 1));
        assert_eq!(bound_general(&rects(&[(1, 2), (2, 1)]), 2).unwrap(), ratio(9, 2));
        assert_eq!(bound_general(&rects(&[(5, 5)]), 3).unwrap(), ratio(2, 1));
    }

    #[test]
    fn unit_height_values() {
        assert_eq!(bound_unit_height(&rects(&[(1, 1), (1, 2), (1, 3)]), 2).unwrap(), ratio(243, 2));
        assert_eq!(bound_unit_height(&rects(&[(1, 1)]), 3).unwrap(), ratio(2, 1));
        assert_eq!(bound_unit_height(&rects(&[(1, 2)]), 1).unwrap(), ratio(3, 1));
        assert!(bound_unit_height(&rects(&[(2, 1)]), 3).is_err());
    }

    #[test]
    fn ceilings() {
        let v = BoundValue::new(ratio(9, 2));
        assert_eq!(v.value, "9/2");
        assert_eq!(v.ceiling, "5");
    }

    #[test]
    fn domino_is_within_bounds() {
        let r = bound_vs_empirical(&rects(&[(1, 2)]), 1, 8, &Budget::default()).unwrap();
        assert_eq!(r.empirical, 2);
        assert_eq!(r.unit_height.as_ref().unwrap().value, "3");
        assert!(r.checked());
    }
}
