use super::combine::{combine_full, combine_into, combine_symmetric, init_level_one, select_global};
use super::table::TableSet;
use super::{DecodeResult, SoftDecoder};
use crate::accounting::OpCounter;
use crate::gf2::{hard_decision, ParityCheckMatrix, Syndrome};
use crate::{Error, Result};

/// Largest `q` the dense `2^q`-entry tables are allowed to reach.
pub const MAX_TABLE_REDUNDANCY: usize = 20;

/// The code-agnostic decoder: works for any full-rank `H` with
/// `q <= MAX_TABLE_REDUNDANCY`.
#[derive(Debug, Clone)]
pub struct GeneralDecoder {
    h: ParityCheckMatrix,
    all: Vec<Syndrome>,
    nonzero: Vec<Syndrome>,
}

impl GeneralDecoder {
    pub fn new(h: ParityCheckMatrix) -> Result<Self> {
        if h.q() > MAX_TABLE_REDUNDANCY {
            return Err(Error::OutOfRange {
                name: "q",
                value: h.q(),
                min: 1,
                max: MAX_TABLE_REDUNDANCY,
            });
        }
        let all: Vec<Syndrome> = (0..1u64 << h.q()).map(Syndrome).collect();
        let nonzero = all[1..].to_vec();
        Ok(GeneralDecoder { h, all, nonzero })
    }

    fn tables(&self, lambda: &[f64], s: Syndrome, counter: &mut OpCounter) -> Result<TableSet> {
        let q = self.h.q();
        let half = q.div_ceil(2);
        let mut tables = TableSet::new();
        tables.insert(init_level_one(&self.h, lambda)?);

        for t in 2..=half {
            let table = if t % 2 == 0 {
                let base = tables.require(t / 2)?;
                // pairs {vi, vi} are degenerate, so v = 0 takes the full scan
                let mut out = combine_symmetric(base, &self.nonzero, counter)?;
                combine_into(&mut out, base, base, &self.all[..1], false, None, counter);
                out
            } else {
                combine_full(tables.require(t - 1)?, tables.require(1)?, &self.all, counter)
            };
            tables.insert(table);
        }
        for t in half + 1..=q {
            let table = if t % 2 == 0 {
                combine_symmetric(tables.require(t / 2)?, &[s], counter)?
            } else {
                combine_full(tables.require(t - half)?, tables.require(half)?, &[s], counter)
            };
            tables.insert(table);
        }
        Ok(tables)
    }
}

impl SoftDecoder for GeneralDecoder {
    fn decode(&mut self, lambda: &[f64]) -> Result<DecodeResult> {
        if lambda.len() != self.h.n() {
            return Err(Error::LengthMismatch {
                expected: self.h.n(),
                actual: lambda.len(),
            });
        }
        let b = hard_decision(lambda);
        let s = self.h.syndrome(&b)?;
        if s.is_zero() {
            return Ok(DecodeResult::zero_syndrome(b));
        }
        let mut counter = OpCounter::new();
        let tables = self.tables(lambda, s, &mut counter)?;
        let per_size: Vec<(usize, f64)> = (1..=self.h.q()).map(|t| (t, tables.penalty(t, s))).collect();
        let (chosen, _) = select_global(&per_size, &mut counter)?;
        DecodeResult::from_tables(b, s, &tables, chosen, lambda, per_size, counter)
    }

    fn parity_check(&self) -> &ParityCheckMatrix {
        &self.h
    }
}

/// Runs the general framework's table construction for syndrome `s` and
/// returns every table built (sizes `1..=q`).
pub fn build_general_tables(
    h: &ParityCheckMatrix,
    lambda: &[f64],
    s: Syndrome,
    counter: &mut OpCounter,
) -> Result<TableSet> {
    if s.is_zero() {
        return Err(Error::ZeroSymmetricTarget);
    }
    GeneralDecoder::new(h.clone())?.tables(lambda, s, counter)
}

/// One-shot general decode.
pub fn decode_general(h: &ParityCheckMatrix, lambda: &[f64]) -> Result<DecodeResult> {
    GeneralDecoder::new(h.clone())?.decode(lambda)
}

/// Worst-case operation count of the general framework for redundancy `q`:
/// `ceil(q/2 - 1) * 2^(2q+1) + floor(q/2) * 2^(q+1)`.
pub fn general_op_upper_bound(q: usize) -> u64 {
    let blocks_all = (q as f64 / 2.0 - 1.0).ceil().max(0.0) as u64;
    blocks_all * (1u64 << (2 * q + 1)) + (q / 2) as u64 * (1u64 << (q + 1))
}
