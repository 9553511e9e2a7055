//! Decoders specialised to extended Hamming codes.
//!
//! With an all-ones row in `H`, the parity of a block's size fixes which
//! class its target lies in, so most of the general framework's table
//! entries are provably empty. [`ExHamDecoder`] follows a precomputed
//! [`Schedule`] that only fills the entries that can matter (offline
//! exclusion) and, in [`ExclusionMode::Full`], additionally prunes table
//! entries that cannot beat the best syndrome penalty found so far (online
//! exclusion).

mod online;
mod schedule;

pub use online::{filter_table, refresh_filter_inplace, FilteredTable, OnlineState};
pub use schedule::{build_schedule, Schedule, ScheduleStep, StepScope};

use serde::Serialize;

use crate::accounting::OpCounter;
use crate::framework::{
    init_level_one, scan_splits, select_global, BackRef, DecodeResult, LevelTable, SoftDecoder, TableSet,
    MAX_TABLE_REDUNDANCY,
};
use crate::gf2::{hard_decision, ParityCheckMatrix, Syndrome};
use crate::{Error, Result};

/// Partition of `F_2^q` by coordinate 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ParityClass {
    Zero,
    /// Nonzero with `v[0] = 0`: reachable by an even number of columns.
    W,
    /// `v[0] = 1`: reachable by an odd number of columns.
    Y,
}

pub fn classify(v: Syndrome) -> ParityClass {
    if v.is_zero() {
        ParityClass::Zero
    } else if v.bit(0) {
        ParityClass::Y
    } else {
        ParityClass::W
    }
}

/// Which exclusions the decoder applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExclusionMode {
    /// Offline exclusion only.
    Offline,
    /// Offline and online exclusion.
    Full,
}

fn in_scope(scope: StepScope, v: u64) -> bool {
    match scope {
        StepScope::AllW => v != 0 && v & 1 == 0,
        StepScope::AllY => v & 1 == 1,
        StepScope::SyndromeOnly => false,
    }
}

/// A schedule plus, per step, the number of decomposition candidates whose
/// two operands both lie in a stored region. That count is the same for
/// every target of the step, and is what an implementation iterating over
/// the stored regions would touch.
#[derive(Debug, Clone)]
struct Plan {
    schedule: Schedule,
    candidates: Vec<u64>,
}

impl Plan {
    fn new(q: usize, s0: bool) -> Result<Self> {
        let schedule = build_schedule(q, s0)?;
        let candidates = schedule
            .steps
            .iter()
            .map(|step| {
                let target_in_y = match step.scope {
                    StepScope::AllW => false,
                    StepScope::AllY => true,
                    StepScope::SyndromeOnly => s0,
                };
                // any member of the class gives the same count
                let v: u64 = if target_in_y { 1 } else { 2 };
                let left = schedule.table_scope(step.left).expect("schedule is well formed");
                let right = schedule.table_scope(step.right).expect("schedule is well formed");
                (0..1u64 << q)
                    .filter(|&vi| {
                        let vj = vi ^ v;
                        in_scope(left, vi) && in_scope(right, vj) && (!step.symmetric || vi < vj)
                    })
                    .count() as u64
            })
            .collect();
        Ok(Plan { schedule, candidates })
    }
}

/// Per-decode view of the decoder's internals, for inspection and tests.
#[derive(Debug, Clone)]
pub struct DecodeTrace {
    /// Every table built, unfiltered.
    pub tables: TableSet,
    /// Running best `M(Z^{t-1}(s))` in force before each schedule step
    /// (online mode only; empty offline).
    pub thresholds: Vec<f64>,
}

/// Offline/online-exclusion decoder for codes whose `H` has an all-ones
/// row 0 (extended Hamming codes and their shortenings).
#[derive(Debug, Clone)]
pub struct ExHamDecoder {
    h: ParityCheckMatrix,
    mode: ExclusionMode,
    plans: [Plan; 2],
    w_class: Vec<Syndrome>,
    y_class: Vec<Syndrome>,
}

impl ExHamDecoder {
    pub fn new(h: ParityCheckMatrix, mode: ExclusionMode) -> Result<Self> {
        if !h.has_all_ones_row() {
            return Err(Error::NotExtendedHamming("row 0 of H is not all ones".into()));
        }
        if h.q() < 4 {
            return Err(Error::NotExtendedHamming(format!("q = {} is below 4", h.q())));
        }
        if h.q() > MAX_TABLE_REDUNDANCY {
            return Err(Error::OutOfRange {
                name: "q",
                value: h.q(),
                min: 4,
                max: MAX_TABLE_REDUNDANCY,
            });
        }
        let q = h.q();
        let plans = [Plan::new(q, false)?, Plan::new(q, true)?];
        let w_class = (1..1u64 << q).filter(|v| v & 1 == 0).map(Syndrome).collect();
        let y_class = (1..1u64 << q).filter(|v| v & 1 == 1).map(Syndrome).collect();
        Ok(ExHamDecoder {
            h,
            mode,
            plans,
            w_class,
            y_class,
        })
    }

    pub fn mode(&self) -> ExclusionMode {
        self.mode
    }

    /// The schedule used for syndromes with `s[0] = s0`.
    pub fn schedule(&self, s0: bool) -> &Schedule {
        &self.plans[usize::from(s0)].schedule
    }

    /// Decodes and also returns the tables and thresholds.
    pub fn decode_with_trace(&mut self, lambda: &[f64]) -> Result<(DecodeResult, DecodeTrace)> {
        if lambda.len() != self.h.n() {
            return Err(Error::LengthMismatch {
                expected: self.h.n(),
                actual: lambda.len(),
            });
        }
        let b = hard_decision(lambda);
        let s = self.h.syndrome(&b)?;
        if s.is_zero() {
            let trace = DecodeTrace {
                tables: TableSet::new(),
                thresholds: Vec::new(),
            };
            return Ok((DecodeResult::zero_syndrome(b), trace));
        }
        let mut counter = OpCounter::new();
        let mut tables = TableSet::new();
        tables.insert(init_level_one(&self.h, lambda)?);
        let plan = &self.plans[usize::from(s.bit(0))];
        let mut thresholds = Vec::new();

        let chosen = match self.mode {
            ExclusionMode::Offline => {
                for (step, &candidates) in plan.schedule.steps.iter().zip(&plan.candidates) {
                    let left = tables.require(step.left)?;
                    let right = tables.require(step.right)?;
                    let sources = left.finite_indices();
                    let table = self.run_step(
                        step,
                        left.penalties(),
                        right.penalties(),
                        &sources,
                        s,
                        candidates,
                        &mut counter,
                    );
                    tables.insert(table);
                }
                let per_size: Vec<(usize, f64)> = plan
                    .schedule
                    .candidate_sizes
                    .iter()
                    .map(|&t| (t, tables.penalty(t, s)))
                    .collect();
                select_global(&per_size, &mut counter)?.0
            }
            ExclusionMode::Full => {
                let mut state = OnlineState::new();
                if s.bit(0) {
                    // Z_1(s) seeds the running best without a comparison
                    state.offer(1, tables.penalty(1, s), &mut counter);
                }
                for (i, (step, &candidates)) in plan.schedule.steps.iter().zip(&plan.candidates).enumerate() {
                    state.begin_step(i);
                    thresholds.push(state.best());
                    for size in [step.left, step.right] {
                        let scope = plan.schedule.table_scope(size).expect("schedule is well formed");
                        state.prepare(tables.require(size)?, scope, &mut counter);
                    }
                    let left = state.filtered(step.left).expect("prepared");
                    let right = state.filtered(step.right).expect("prepared");
                    let table = self.run_step(
                        step,
                        left.penalties(),
                        right.penalties(),
                        left.finite(),
                        s,
                        candidates,
                        &mut counter,
                    );
                    let reaches_s = match step.scope {
                        StepScope::SyndromeOnly => true,
                        StepScope::AllW => !s.bit(0),
                        StepScope::AllY => s.bit(0),
                    };
                    if reaches_s {
                        state.offer(step.size, table.penalty(s), &mut counter);
                    }
                    tables.insert(table);
                }
                state.best_size().ok_or(Error::DecodeFailure)?
            }
        };

        let size_penalties = plan
            .schedule
            .candidate_sizes
            .iter()
            .map(|&t| (t, tables.penalty(t, s)))
            .collect();
        let result = DecodeResult::from_tables(b, s, &tables, chosen, lambda, size_penalties, counter)?;
        Ok((result, DecodeTrace { tables, thresholds }))
    }

    /// Fills one schedule step, iterating only over `sources` (the finite
    /// entries of the left operand) and charging the in-scope candidate count.
    #[allow(clippy::too_many_arguments)]
    fn run_step(
        &self,
        step: &ScheduleStep,
        left: &[f64],
        right: &[f64],
        sources: &[u64],
        s: Syndrome,
        candidates: u64,
        counter: &mut OpCounter,
    ) -> LevelTable {
        let single = [s];
        let targets: &[Syndrome] = match step.scope {
            StepScope::AllW => &self.w_class,
            StepScope::AllY => &self.y_class,
            StepScope::SyndromeOnly => &single,
        };
        let mut out = LevelTable::empty(step.size, self.h.q());
        for &v in targets {
            let scan = scan_splits(left, right, v.0, sources.iter().copied(), step.symmetric);
            counter.record_scan(candidates, scan.finite);
            if scan.finite > 0 {
                out.set(
                    v,
                    scan.best,
                    BackRef::Pair {
                        vb: Syndrome(scan.vb),
                        left: step.left as u16,
                        right: step.right as u16,
                    },
                );
            }
        }
        out
    }
}

impl SoftDecoder for ExHamDecoder {
    fn decode(&mut self, lambda: &[f64]) -> Result<DecodeResult> {
        self.decode_with_trace(lambda).map(|(result, _)| result)
    }

    fn parity_check(&self) -> &ParityCheckMatrix {
        &self.h
    }
}

/// One-shot decode with offline exclusion only.
pub fn decode_offopt(h: &ParityCheckMatrix, lambda: &[f64]) -> Result<DecodeResult> {
    ExHamDecoder::new(h.clone(), ExclusionMode::Offline)?.decode(lambda)
}

/// One-shot decode with offline and online exclusion.
pub fn decode_fullopt(h: &ParityCheckMatrix, lambda: &[f64]) -> Result<DecodeResult> {
    ExHamDecoder::new(h.clone(), ExclusionMode::Full)?.decode(lambda)
}
