//! Floating-point operation tallies.
//!
//! Only penalty-domain additions and comparisons are counted; XORs on
//! syndrome words are free. Each operation lands in one of two buckets:
//! `*_finite` when every operand is finite, `*_infinite` when at least one
//! operand is `+inf`. Conventions applied by the decoders:
//!
//! * a candidate sum `M(left) + M(right)` is one addition;
//! * a min-reduction over `m` candidates costs `m - 1` comparisons, of which
//!   `max(0, f - 1)` are finite when `f` candidates are finite;
//! * final size selection follows the same rule over the candidate sizes.

use std::ops::{Add, AddAssign, Sub};

use serde::Serialize;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OpCounter {
    pub adds_finite: u64,
    pub cmps_finite: u64,
    pub adds_infinite: u64,
    pub cmps_infinite: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn record_add(&mut self, both_finite: bool) {
        if both_finite {
            self.adds_finite += 1;
        } else {
            self.adds_infinite += 1;
        }
    }

    #[inline]
    pub fn record_cmp(&mut self, both_finite: bool) {
        if both_finite {
            self.cmps_finite += 1;
        } else {
            self.cmps_infinite += 1;
        }
    }

    /// Records one min-reduction over `candidates` sums, `finite` of which
    /// had two finite operands.
    #[inline]
    pub fn record_scan(&mut self, candidates: u64, finite: u64) {
        debug_assert!(finite <= candidates);
        let finite_cmps = finite.saturating_sub(1);
        self.adds_finite += finite;
        self.adds_infinite += candidates - finite;
        self.cmps_finite += finite_cmps;
        self.cmps_infinite += candidates.saturating_sub(1) - finite_cmps;
    }

    /// Records a min-selection over `candidates` values, `finite` of them
    /// finite. No additions are involved.
    #[inline]
    pub fn record_selection(&mut self, candidates: u64, finite: u64) {
        let finite_cmps = finite.saturating_sub(1);
        self.cmps_finite += finite_cmps;
        self.cmps_infinite += candidates.saturating_sub(1) - finite_cmps;
    }

    pub fn snapshot(&self) -> OpCounter {
        *self
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }

    /// Additions plus comparisons that never touched `+inf`.
    pub fn finite_ops(&self) -> u64 {
        self.adds_finite + self.cmps_finite
    }

    /// Every counted operation, `+inf` included.
    pub fn total_ops(&self) -> u64 {
        self.finite_ops() + self.adds_infinite + self.cmps_infinite
    }
}

impl Add for OpCounter {
    type Output = OpCounter;

    fn add(mut self, rhs: OpCounter) -> OpCounter {
        self += rhs;
        self
    }
}

impl AddAssign for OpCounter {
    fn add_assign(&mut self, rhs: OpCounter) {
        self.adds_finite += rhs.adds_finite;
        self.cmps_finite += rhs.cmps_finite;
        self.adds_infinite += rhs.adds_infinite;
        self.cmps_infinite += rhs.cmps_infinite;
    }
}

impl Sub for OpCounter {
    type Output = OpCounter;

    fn sub(self, rhs: OpCounter) -> OpCounter {
        OpCounter {
            adds_finite: self.adds_finite - rhs.adds_finite,
            cmps_finite: self.cmps_finite - rhs.cmps_finite,
            adds_infinite: self.adds_infinite - rhs.adds_infinite,
            cmps_infinite: self.cmps_infinite - rhs.cmps_infinite,
        }
    }
}
