//! Chase-II over an extended-Hamming hard-decision decoder.

use std::collections::HashMap;

use crate::accounting::OpCounter;
use crate::framework::{DecodeResult, SoftDecoder};
use crate::gf2::{hard_decision, BinaryWord, ParityCheckMatrix, Syndrome};
use crate::{Error, Result};

/// Number of least-reliable positions perturbed by default, `floor(d/2)`
/// for distance-4 codes.
pub const DEFAULT_CHASE_POSITIONS: usize = 2;

/// Result of hard-decision decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HddOutcome {
    Codeword(BinaryWord),
    /// An even-weight nonzero syndrome (or an odd one matching no column):
    /// more than one error, detected but not corrected.
    DetectedFailure,
}

/// Single-error-correcting, double-error-detecting decoder.
#[derive(Debug, Clone)]
struct HardDecoder {
    by_column: HashMap<Syndrome, usize>,
}

impl HardDecoder {
    fn new(h: &ParityCheckMatrix) -> Result<Self> {
        if !h.has_all_ones_row() {
            return Err(Error::NotExtendedHamming("row 0 of H is not all ones".into()));
        }
        let mut by_column = HashMap::with_capacity(h.n());
        for (i, &c) in h.columns().iter().enumerate() {
            by_column.entry(c).or_insert(i);
        }
        Ok(HardDecoder { by_column })
    }

    fn decode(&self, h: &ParityCheckMatrix, word: &BinaryWord) -> Result<HddOutcome> {
        let s = h.syndrome(word)?;
        if s.is_zero() {
            return Ok(HddOutcome::Codeword(word.clone()));
        }
        if !s.bit(0) {
            return Ok(HddOutcome::DetectedFailure);
        }
        Ok(match self.by_column.get(&s) {
            Some(&i) => {
                let mut c = word.clone();
                c.flip(i);
                HddOutcome::Codeword(c)
            }
            None => HddOutcome::DetectedFailure,
        })
    }
}

/// Hard-decision decoding of an extended Hamming code: corrects any single
/// error and detects any double error.
pub fn hdd_extended_hamming(h: &ParityCheckMatrix, word: &BinaryWord) -> Result<HddOutcome> {
    HardDecoder::new(h)?.decode(h, word)
}

/// Chase-II decoder: perturbs the `p` least reliable positions in all `2^p`
/// ways, hard-decodes each, and keeps the candidate with the smallest
/// pattern penalty relative to the hard decision.
#[derive(Debug, Clone)]
pub struct ChaseDecoder {
    h: ParityCheckMatrix,
    hdd: HardDecoder,
    positions: usize,
}

impl ChaseDecoder {
    pub fn new(h: ParityCheckMatrix, positions: usize) -> Result<Self> {
        if positions > h.n() || positions >= 32 {
            return Err(Error::OutOfRange {
                name: "p",
                value: positions,
                min: 0,
                max: h.n().min(31),
            });
        }
        let hdd = HardDecoder::new(&h)?;
        Ok(ChaseDecoder { h, hdd, positions })
    }

    pub fn positions(&self) -> usize {
        self.positions
    }
}

impl SoftDecoder for ChaseDecoder {
    fn decode(&mut self, lambda: &[f64]) -> Result<DecodeResult> {
        let n = self.h.n();
        if lambda.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: lambda.len(),
            });
        }
        let b = hard_decision(lambda);
        let syndrome = self.h.syndrome(&b)?;

        let mut order: Vec<usize> = (0..n).collect();
        // stable sort keeps ties in index order
        order.sort_by(|&i, &j| lambda[i].abs().total_cmp(&lambda[j].abs()));
        let weak = &order[..self.positions];

        let mut best: Option<(BinaryWord, f64)> = None;
        for pattern in 0u32..1 << self.positions {
            let mut trial = b.clone();
            for (bit, &pos) in weak.iter().enumerate() {
                if pattern >> bit & 1 == 1 {
                    trial.flip(pos);
                }
            }
            if let HddOutcome::Codeword(c) = self.hdd.decode(&self.h, &trial)? {
                let penalty: f64 = (&c ^ &b).ones().map(|k| lambda[k].abs()).sum();
                if best.as_ref().is_none_or(|(_, p)| penalty < *p) {
                    best = Some((c, penalty));
                }
            }
        }

        let (codeword, penalty, valid_codeword) = match best {
            Some((c, p)) => (c, p, true),
            // no test pattern decoded: fall back to the unperturbed hard decision
            None => (b.clone(), 0.0, false),
        };
        let flip_set = (&codeword ^ &b).ones().collect();
        Ok(DecodeResult {
            hard_decision: b,
            syndrome,
            codeword,
            flip_set,
            chosen_size: None,
            penalty,
            ops: OpCounter::default(),
            size_penalties: Vec::new(),
            valid_codeword,
        })
    }

    fn parity_check(&self) -> &ParityCheckMatrix {
        &self.h
    }
}

/// One-shot Chase-II decode with `p` perturbed positions.
pub fn chase2_decode(h: &ParityCheckMatrix, lambda: &[f64], p: usize) -> Result<DecodeResult> {
    ChaseDecoder::new(h.clone(), p)?.decode(lambda)
}
