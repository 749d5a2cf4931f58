use std::cell::Cell;

use crate::error::{Error, Result};

/// Node counter shared by one search invocation. Exceeding the cap is an
/// error, never a negative answer.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: Cell<u64>,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 200_000_000;

    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: Cell::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    #[inline]
    pub fn tick(&self) -> Result<()> {
        self.charge(1)
    }

    #[inline]
    pub fn charge(&self, nodes: u64) -> Result<()> {
        let used = self.used.get().saturating_add(nodes);
        self.used.set(used);
        if used > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}
