//! The general error-building decoder and the pieces it is built from.
//!
//! Tables are filled level by level. Level 1 comes straight from `H` and
//! `|lambda|`. A size-`t` table is the pointwise best combination of a
//! size-`t1` and a size-`t2` table with `t1 + t2 = t`; when `t1 = t2` the
//! two operands are interchangeable and only unordered pairs are scanned.
//! Sizes up to `ceil(q/2)` are built for every `v`, larger sizes only for the
//! syndrome, and the answer is the cheapest of the `q` syndrome entries.

mod block;
mod combine;
mod general;
mod table;

pub use block::{reconstruct_block, reduce_block, ErrorBlock};
pub(crate) use combine::scan_splits;
pub use combine::{combine_full, combine_symmetric, init_level_one, select_global};
pub use general::{build_general_tables, decode_general, general_op_upper_bound, GeneralDecoder, MAX_TABLE_REDUNDANCY};
pub use table::{BackRef, LevelTable, TableSet};

use serde::Serialize;

use crate::accounting::OpCounter;
use crate::gf2::{BinaryWord, ParityCheckMatrix, Syndrome};
use crate::Result;

/// Output of one soft-decision decode.
#[derive(Debug, Clone, Serialize)]
pub struct DecodeResult {
    #[serde(skip)]
    pub hard_decision: BinaryWord,
    pub syndrome: Syndrome,
    #[serde(skip)]
    pub codeword: BinaryWord,
    /// Positions of `hard_decision` that were flipped, ascending.
    pub flip_set: Vec<usize>,
    /// Size of the winning block; `None` when the syndrome was zero.
    pub chosen_size: Option<usize>,
    /// Pattern penalty of the flip set.
    pub penalty: f64,
    pub ops: OpCounter,
    /// `M(Z_t(s))` for each size the decoder built for the syndrome.
    pub size_penalties: Vec<(usize, f64)>,
    /// False only for Chase-II frames where no test pattern produced a
    /// codeword.
    pub valid_codeword: bool,
}

impl DecodeResult {
    pub(crate) fn zero_syndrome(b: BinaryWord) -> Self {
        DecodeResult {
            codeword: b.clone(),
            hard_decision: b,
            syndrome: Syndrome::ZERO,
            flip_set: Vec::new(),
            chosen_size: None,
            penalty: 0.0,
            ops: OpCounter::default(),
            size_penalties: Vec::new(),
            valid_codeword: true,
        }
    }

    /// Reconstructs the winning block, reduces it and flips `b`.
    pub(crate) fn from_tables(
        b: BinaryWord,
        s: Syndrome,
        tables: &TableSet,
        chosen: usize,
        lambda: &[f64],
        size_penalties: Vec<(usize, f64)>,
        ops: OpCounter,
    ) -> Result<Self> {
        let block = reconstruct_block(tables, chosen, s, lambda)?;
        let flip_set = reduce_block(&block);
        let mut codeword = b.clone();
        for &i in &flip_set {
            codeword.flip(i);
        }
        let penalty = flip_set.iter().map(|&i| lambda[i].abs()).sum();
        Ok(DecodeResult {
            hard_decision: b,
            syndrome: s,
            codeword,
            flip_set,
            chosen_size: Some(chosen),
            penalty,
            ops,
            size_penalties,
            valid_codeword: true,
        })
    }
}

/// A decoder that maps an LLR vector to a codeword estimate.
///
/// Instances keep per-code precomputation and are reused across frames; run
/// one instance per worker thread.
pub trait SoftDecoder {
    fn decode(&mut self, lambda: &[f64]) -> Result<DecodeResult>;

    fn parity_check(&self) -> &ParityCheckMatrix;
}
