//! Independent reference decoders and enumerators.
//!
//! Everything here is deliberately naive: exhaustive codebook search for the
//! maximum-likelihood codeword, exhaustive multiset enumeration for
//! error-building blocks, and a classical Chase-II decoder as the
//! suboptimal baseline. Enumerations are guarded and fail loudly rather than
//! truncating.

mod chase;

pub use chase::{chase2_decode, hdd_extended_hamming, ChaseDecoder, HddOutcome, DEFAULT_CHASE_POSITIONS};

use std::fmt;

use crate::accounting::OpCounter;
use crate::framework::{DecodeResult, ErrorBlock, SoftDecoder};
use crate::gf2::{hard_decision, BinaryWord, GeneratorMatrix, ParityCheckMatrix, Syndrome};
use crate::{Error, Result};

/// Largest dimension `k` the exhaustive ML search accepts.
pub const MAX_BRUTE_FORCE_K: usize = 24;

/// Largest number of size-`t` multisets [`enumerate_blocks`] will visit.
pub const MAX_ENUMERATED_BLOCKS: u128 = 10_000_000;

/// `sum e[k] * |lambda[k]|`.
pub fn pattern_penalty(e: &BinaryWord, lambda: &[f64]) -> Result<f64> {
    if e.len() != lambda.len() {
        return Err(Error::LengthMismatch {
            expected: lambda.len(),
            actual: e.len(),
        });
    }
    Ok(e.ones().map(|k| lambda[k].abs()).sum())
}

/// All `2^k` codewords of a code, for repeated exhaustive searches.
#[derive(Debug, Clone)]
pub struct Codebook {
    codewords: Vec<BinaryWord>,
}

impl Codebook {
    pub fn new(g: &GeneratorMatrix) -> Result<Self> {
        let k = g.spec().k;
        if k > MAX_BRUTE_FORCE_K {
            return Err(Error::EnumerationGuard {
                count: 1u128 << k,
                limit: 1u128 << MAX_BRUTE_FORCE_K,
            });
        }
        // Gray-code walk: each codeword differs from the previous by one row
        let mut codewords = Vec::with_capacity(1 << k);
        let mut c = BinaryWord::zeros(g.spec().n);
        codewords.push(c.clone());
        for i in 1u64..1 << k {
            c ^= &g.rows()[i.trailing_zeros() as usize];
            codewords.push(c.clone());
        }
        codewords.sort_by_key(BinaryWord::to_bits);
        Ok(Codebook { codewords })
    }

    pub fn codewords(&self) -> &[BinaryWord] {
        &self.codewords
    }

    /// The codeword maximising `sum (1 - 2c[k]) lambda[k]`, ties to the
    /// lexicographically smallest, and its pattern penalty `P(c ^ b)`.
    pub fn ml(&self, lambda: &[f64]) -> Result<(BinaryWord, f64)> {
        let n = self.codewords[0].len();
        if lambda.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: lambda.len(),
            });
        }
        let mut best: Option<(usize, f64)> = None;
        for (idx, c) in self.codewords.iter().enumerate() {
            let correlation: f64 = lambda
                .iter()
                .enumerate()
                .map(|(k, &l)| if c.get(k) { -l } else { l })
                .sum();
            if best.is_none_or(|(_, b)| correlation > b) {
                best = Some((idx, correlation));
            }
        }
        let c = self.codewords[best.expect("codebook is never empty").0].clone();
        let e = &c ^ &hard_decision(lambda);
        let penalty = pattern_penalty(&e, lambda)?;
        Ok((c, penalty))
    }
}

/// Exhaustive maximum-likelihood decoding over all `2^k` codewords.
pub fn brute_force_ml(g: &GeneratorMatrix, lambda: &[f64]) -> Result<(BinaryWord, f64)> {
    Codebook::new(g)?.ml(lambda)
}

/// The minimum pattern penalty over the coset of `b`, by exhaustive search.
pub fn min_penalty_codeword(g: &GeneratorMatrix, lambda: &[f64]) -> Result<(BinaryWord, f64)> {
    let book = Codebook::new(g)?;
    let b = hard_decision(lambda);
    let mut best: Option<(usize, f64)> = None;
    for (idx, c) in book.codewords().iter().enumerate() {
        let p = pattern_penalty(&(c ^ &b), lambda)?;
        if best.is_none_or(|(_, q)| p < q) {
            best = Some((idx, p));
        }
    }
    let (idx, p) = best.expect("codebook is never empty");
    Ok((book.codewords()[idx].clone(), p))
}

/// Exhaustive ML as a [`SoftDecoder`], reusing one codebook.
#[derive(Debug, Clone)]
pub struct BruteForceDecoder {
    h: ParityCheckMatrix,
    book: Codebook,
}

impl BruteForceDecoder {
    pub fn new(h: ParityCheckMatrix) -> Result<Self> {
        let book = Codebook::new(&h.derive_generator())?;
        Ok(BruteForceDecoder { h, book })
    }
}

impl SoftDecoder for BruteForceDecoder {
    fn decode(&mut self, lambda: &[f64]) -> Result<DecodeResult> {
        let (codeword, penalty) = self.book.ml(lambda)?;
        let b = hard_decision(lambda);
        let flip_set = (&codeword ^ &b).ones().collect();
        Ok(DecodeResult {
            syndrome: self.h.syndrome(&b)?,
            hard_decision: b,
            codeword,
            flip_set,
            chosen_size: None,
            penalty,
            ops: OpCounter::default(),
            size_penalties: Vec::new(),
            valid_codeword: true,
        })
    }

    fn parity_check(&self) -> &ParityCheckMatrix {
        &self.h
    }
}

/// All size-`t` multisets of column indices XOR-ing to a vector, each
/// stored as a sorted index list, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSet {
    pub v: Syndrome,
    pub t: usize,
    pub blocks: Vec<Vec<usize>>,
}

fn has_repeats(block: &[usize]) -> bool {
    block.windows(2).any(|w| w[0] == w[1])
}

impl BlockSet {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks with no repeated index: supports of error patterns.
    pub fn repeat_free(&self) -> impl Iterator<Item = &[usize]> {
        self.blocks.iter().map(Vec::as_slice).filter(|b| !has_repeats(b))
    }

    /// Blocks with at least one repeated index.
    pub fn with_repeats(&self) -> impl Iterator<Item = &[usize]> {
        self.blocks.iter().map(Vec::as_slice).filter(|b| has_repeats(b))
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let idx: Vec<String> = b.iter().map(usize::to_string).collect();
                format!("⟦{}⟧", idx.join(", "))
            })
            .collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// `C(n + t - 1, t)`, the number of size-`t` multisets over `n` items.
fn multiset_count(n: usize, t: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..t as u128 {
        c = c * (n as u128 + i) / (i + 1);
        if c > u128::from(u64::MAX) {
            return c;
        }
    }
    c
}

/// Visits every non-decreasing index sequence of length `t`.
fn for_each_multiset(h: &ParityCheckMatrix, t: usize, mut visit: impl FnMut(&[usize], Syndrome)) -> Result<()> {
    if t == 0 {
        return Err(Error::OutOfRange {
            name: "t",
            value: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    let count = multiset_count(h.n(), t);
    if count > MAX_ENUMERATED_BLOCKS {
        return Err(Error::EnumerationGuard {
            count,
            limit: MAX_ENUMERATED_BLOCKS,
        });
    }
    fn rec(
        h: &ParityCheckMatrix,
        start: usize,
        left: usize,
        acc: Syndrome,
        current: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], Syndrome),
    ) {
        if left == 0 {
            visit(current, acc);
            return;
        }
        for a in start..h.n() {
            current.push(a);
            rec(h, a, left - 1, acc ^ h.column(a), current, visit);
            current.pop();
        }
    }
    rec(h, 0, t, Syndrome::ZERO, &mut Vec::with_capacity(t), &mut visit);
    Ok(())
}

/// Every size-`t` multiset of columns whose XOR is `v`.
pub fn enumerate_blocks(h: &ParityCheckMatrix, v: Syndrome, t: usize) -> Result<BlockSet> {
    let mut blocks = Vec::new();
    for_each_multiset(h, t, |block, x| {
        if x == v {
            blocks.push(block.to_vec());
        }
    })?;
    Ok(BlockSet { v, t, blocks })
}

/// The cheapest size-`t` block for `v` (first in lexicographic order among
/// equals), or `None` with penalty `+inf` when no block exists.
pub fn optimal_block_bruteforce(
    h: &ParityCheckMatrix,
    lambda: &[f64],
    v: Syndrome,
    t: usize,
) -> Result<(Option<ErrorBlock>, f64)> {
    if lambda.len() != h.n() {
        return Err(Error::LengthMismatch {
            expected: h.n(),
            actual: lambda.len(),
        });
    }
    let mut best: Option<(Vec<usize>, f64)> = None;
    for_each_multiset(h, t, |block, x| {
        if x != v {
            return;
        }
        let p: f64 = block.iter().map(|&a| lambda[a].abs()).sum();
        if best.as_ref().is_none_or(|(_, b)| p < *b) {
            best = Some((block.to_vec(), p));
        }
    })?;
    Ok(match best {
        Some((indices, p)) => (Some(ErrorBlock::new(indices, lambda)), p),
        None => (None, f64::INFINITY),
    })
}

/// Cheapest penalty of a size-`t` block for every `v` at once, indexed by
/// `v`; one enumeration pass instead of `2^q`.
pub fn optimal_penalties_bruteforce(h: &ParityCheckMatrix, lambda: &[f64], t: usize) -> Result<Vec<f64>> {
    if lambda.len() != h.n() {
        return Err(Error::LengthMismatch {
            expected: h.n(),
            actual: lambda.len(),
        });
    }
    let mut best = vec![f64::INFINITY; 1 << h.q()];
    for_each_multiset(h, t, |block, x| {
        let p: f64 = block.iter().map(|&a| lambda[a].abs()).sum();
        let slot = &mut best[x.index()];
        if p < *slot {
            *slot = p;
        }
    })?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> ParityCheckMatrix {
        // columns 1, 2, ..., 7
        ParityCheckMatrix::hamming(3).unwrap()
    }

    #[test]
    fn toy_matrix_is_columns_one_to_seven() {
        let cols: Vec<u64> = toy().columns().iter().map(|c| c.value()).collect();
        assert_eq!(cols, (1..=7).collect::<Vec<_>>());
    }

    #[test]
    fn size_two_blocks_for_three() {
        let set = enumerate_blocks(&toy(), Syndrome(3), 2).unwrap();
        assert_eq!(set.blocks, vec![vec![0, 1], vec![3, 6], vec![4, 5]]);
        assert_eq!(set.to_string(), "{⟦0, 1⟧, ⟦3, 6⟧, ⟦4, 5⟧}");
    }

    #[test]
    fn size_three_blocks_for_three() {
        let set = enumerate_blocks(&toy(), Syndrome(3), 3).unwrap();
        let mut expected = vec![
            vec![0, 0, 2],
            vec![1, 1, 2],
            vec![2, 2, 2],
            vec![2, 3, 3],
            vec![2, 4, 4],
            vec![2, 5, 5],
            vec![2, 6, 6],
            vec![0, 3, 5],
            vec![0, 4, 6],
            vec![1, 3, 4],
            vec![1, 5, 6],
        ];
        expected.sort();
        assert_eq!(set.blocks, expected);
        assert_eq!(set.with_repeats().count(), 7);
        assert_eq!(set.repeat_free().count(), 4);
    }

    #[test]
    fn zero_has_no_single_column_block() {
        assert!(enumerate_blocks(&toy(), Syndrome(0), 1).unwrap().is_empty());
    }

    #[test]
    fn guard_is_an_error() {
        let h = ParityCheckMatrix::hamming(6).unwrap();
        assert!(matches!(
            enumerate_blocks(&h, Syndrome(1), 8),
            Err(Error::EnumerationGuard { .. })
        ));
    }

    #[test]
    fn optimal_block_singleton_and_empty() {
        let lambda = [0.5, 0.1, 0.9, 0.3, 0.2, 0.7, 0.4];
        let (block, p) = optimal_block_bruteforce(&toy(), &lambda, Syndrome(3), 1).unwrap();
        assert_eq!(block.unwrap().indices, vec![2]);
        assert_eq!(p, 0.9);
        let (block, p) = optimal_block_bruteforce(&toy(), &lambda, Syndrome(0), 1).unwrap();
        assert!(block.is_none());
        assert!(p.is_infinite());
    }

    #[test]
    fn pattern_penalty_basics() {
        let lambda = [1.0, -2.0, 0.5];
        assert_eq!(pattern_penalty(&BinaryWord::zeros(3), &lambda).unwrap(), 0.0);
        let e = BinaryWord::from_positions(3, &[1, 2]);
        assert_eq!(pattern_penalty(&e, &lambda).unwrap(), 2.5);
        assert!(pattern_penalty(&BinaryWord::zeros(2), &lambda).is_err());
    }

    #[test]
    fn all_positive_lambda_decodes_to_zero() {
        let g = ParityCheckMatrix::hamming(3).unwrap().derive_generator();
        let (c, p) = brute_force_ml(&g, &[1.0; 7]).unwrap();
        assert!(c.is_zero());
        assert_eq!(p, 0.0);
    }

    #[test]
    fn codebook_size_and_guard() {
        let g = ParityCheckMatrix::extended_hamming(3).unwrap().derive_generator();
        assert_eq!(Codebook::new(&g).unwrap().codewords().len(), 16);
        let g = ParityCheckMatrix::hamming(5).unwrap().derive_generator();
        assert!(matches!(Codebook::new(&g), Err(Error::EnumerationGuard { .. })));
    }
}
