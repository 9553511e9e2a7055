//! Online exclusion.
//!
//! Before a step of size `t = t1 + t2` runs, its input tables are filtered
//! against `M(Z^{t-1}(s))`, the best syndrome penalty found at smaller
//! sizes: an entry survives only if it is strictly cheaper. Since the
//! threshold never increases, the filtered view of each size is updated in
//! place: entries already removed stay removed, and nothing is touched when
//! the threshold has not moved since the last pass.
//!
//! A pass visits every slot of the table's scope once. An empty slot is
//! settled by an emptiness check, a filled one by a threshold comparison;
//! either way the visit is counted as one comparison, finite exactly when
//! the threshold is.

use super::schedule::StepScope;
use crate::accounting::OpCounter;
use crate::framework::LevelTable;
use crate::gf2::Syndrome;
use crate::{Error, Result};

/// The slots of a `len`-entry table that a table of `scope` can fill.
fn scope_slots(scope: StepScope, len: usize, finite: &[u64]) -> Vec<u64> {
    match scope {
        StepScope::AllY => (1..len as u64).step_by(2).collect(),
        StepScope::AllW => (2..len as u64).step_by(2).collect(),
        StepScope::SyndromeOnly => finite.to_vec(),
    }
}

/// Copy of `table` with every entry of `scope` whose penalty is
/// `>= threshold` emptied.
pub fn filter_table(table: &LevelTable, scope: StepScope, threshold: f64, counter: &mut OpCounter) -> LevelTable {
    let mut out = table.clone();
    for v in scope_slots(scope, table.len(), &table.finite_indices()) {
        counter.record_cmp(threshold.is_finite());
        if table.penalty(Syndrome(v)) >= threshold {
            out.clear(Syndrome(v));
        }
    }
    out
}

/// Filtered penalties `D` for one block size.
#[derive(Debug, Clone)]
pub struct FilteredTable {
    scope: StepScope,
    penalty: Vec<f64>,
    finite: Vec<u64>,
    threshold: f64,
    refreshed_at: usize,
}

impl FilteredTable {
    pub fn scope(&self) -> StepScope {
        self.scope
    }

    pub fn penalties(&self) -> &[f64] {
        &self.penalty
    }

    /// Surviving entries, ascending.
    pub fn finite(&self) -> &[u64] {
        &self.finite
    }

    /// Threshold of the most recent pass.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Schedule step of the most recent pass that changed the threshold.
    pub fn refreshed_at(&self) -> usize {
        self.refreshed_at
    }
}

/// Per-decode state of the online exclusion.
#[derive(Debug, Clone)]
pub struct OnlineState {
    filtered: Vec<Option<FilteredTable>>,
    best: f64,
    best_size: Option<usize>,
    step: usize,
}

impl Default for OnlineState {
    fn default() -> Self {
        OnlineState {
            filtered: Vec::new(),
            best: f64::INFINITY,
            best_size: None,
            step: 0,
        }
    }
}

impl OnlineState {
    pub fn new() -> Self {
        Self::default()
    }

    /// `M(Z^{t-1}(s))` so far.
    pub fn best(&self) -> f64 {
        self.best
    }

    pub fn best_size(&self) -> Option<usize> {
        self.best_size
    }

    pub fn filtered(&self, size: usize) -> Option<&FilteredTable> {
        self.filtered.get(size).and_then(Option::as_ref)
    }

    pub(crate) fn begin_step(&mut self, step: usize) {
        self.step = step;
    }

    /// Folds a newly built `Z_t(s)` into the running best. A comparison is
    /// counted when both values are finite.
    pub(crate) fn offer(&mut self, size: usize, penalty: f64, counter: &mut OpCounter) {
        if !penalty.is_finite() {
            return;
        }
        if self.best.is_finite() {
            counter.record_cmp(true);
        }
        if penalty < self.best {
            self.best = penalty;
            self.best_size = Some(size);
        }
    }

    /// Makes the filtered view of `table` current for the running best:
    /// filters from scratch the first time, updates in place afterwards.
    pub(crate) fn prepare(&mut self, table: &LevelTable, scope: StepScope, counter: &mut OpCounter) {
        let size = table.size();
        let threshold = self.best;
        if self.filtered(size).is_some() {
            refresh_filter_inplace(self, size, threshold, counter).expect("view exists");
            return;
        }
        let mut penalty = table.penalties().to_vec();
        let mut finite = Vec::new();
        for v in scope_slots(scope, penalty.len(), &table.finite_indices()) {
            counter.record_cmp(threshold.is_finite());
            let p = &mut penalty[v as usize];
            if *p < threshold {
                finite.push(v);
            } else {
                *p = f64::INFINITY;
            }
        }
        if self.filtered.len() <= size {
            self.filtered.resize_with(size + 1, || None);
        }
        self.filtered[size] = Some(FilteredTable {
            scope,
            penalty,
            finite,
            threshold,
            refreshed_at: self.step,
        });
    }
}

/// Re-applies the filter of size `size` with a new threshold. Entries that
/// are already empty stay empty; an unchanged threshold costs nothing.
pub fn refresh_filter_inplace(
    state: &mut OnlineState,
    size: usize,
    new_threshold: f64,
    counter: &mut OpCounter,
) -> Result<()> {
    let step = state.step;
    let view = state
        .filtered
        .get_mut(size)
        .and_then(Option::as_mut)
        .ok_or(Error::EmptyEntry { size, v: 0 })?;
    debug_assert!(new_threshold <= view.threshold, "thresholds never increase");
    if new_threshold == view.threshold {
        return Ok(());
    }
    let visited = match view.scope {
        StepScope::AllY => view.penalty.len() / 2,
        StepScope::AllW => view.penalty.len() / 2 - 1,
        StepScope::SyndromeOnly => view.finite.len(),
    };
    for _ in 0..visited {
        counter.record_cmp(new_threshold.is_finite());
    }
    let penalty = &mut view.penalty;
    view.finite.retain(|&v| {
        let p = &mut penalty[v as usize];
        if *p < new_threshold {
            true
        } else {
            *p = f64::INFINITY;
            false
        }
    });
    view.threshold = new_threshold;
    view.refreshed_at = step;
    Ok(())
}
