//! Binary linear-code primitives.
//!
//! A parity-check matrix is stored column-wise: column `h_i` is a
//! [`Syndrome`] whose bit `j` is row `j` of `H`. Row 0 is the coordinate the
//! extended-Hamming machinery calls `v[0]` (the all-ones row).

mod io;
mod word;

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use serde::Serialize;

pub use io::{load_parity_check, parse_alist, parse_plain, write_plain, MatrixFormat};
pub use word::BinaryWord;

use crate::{Error, Result};

/// Largest redundancy `q = n - k` a syndrome word can hold.
pub const MAX_REDUNDANCY: usize = 64;

/// Largest `log2(n)` accepted by the Hamming constructors.
pub const MAX_CONSTRUCTOR_ORDER: usize = 24;

/// A `q`-bit vector in `F_2^q` held in one machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Syndrome(pub u64);

impl Syndrome {
    pub const ZERO: Syndrome = Syndrome(0);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn bit(self, j: usize) -> bool {
        (self.0 >> j) & 1 == 1
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl BitXor for Syndrome {
    type Output = Syndrome;

    #[inline]
    fn bitxor(self, rhs: Syndrome) -> Syndrome {
        Syndrome(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Syndrome {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Syndrome) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syndrome({})", self.0)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `(n, k, d)` parameters with `q = n - k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeSpec {
    pub n: usize,
    pub k: usize,
    pub q: usize,
    /// Minimum distance when known; informational only.
    pub d: Option<usize>,
}

impl CodeSpec {
    pub fn new(n: usize, k: usize, d: Option<usize>) -> Result<Self> {
        if k < 1 || k >= n {
            return Err(Error::InvalidDimensions { n, k });
        }
        let q = n - k;
        if q > MAX_REDUNDANCY {
            return Err(Error::OutOfRange {
                name: "q",
                value: q,
                min: 1,
                max: MAX_REDUNDANCY,
            });
        }
        Ok(CodeSpec { n, k, q, d })
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "({},{},{})", self.n, self.k, d),
            None => write!(f, "({},{})", self.n, self.k),
        }
    }
}

/// GF(2) rank of a set of `q`-bit column words.
pub fn rank_of(columns: &[Syndrome]) -> usize {
    // basis[j] holds a vector whose highest set bit is j
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for c in columns {
        let mut x = c.0;
        while x != 0 {
            let top = 63 - x.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = x;
                rank += 1;
                break;
            }
            x ^= basis[top];
        }
    }
    rank
}

/// A validated `q x n` parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    spec: CodeSpec,
    columns: Vec<Syndrome>,
}

impl ParityCheckMatrix {
    /// Validates and wraps `columns`. Fails on a zero column or if the
    /// columns do not span `F_2^q`. Repeated columns are allowed.
    pub fn from_columns(q: usize, columns: Vec<Syndrome>, d: Option<usize>) -> Result<Self> {
        let n = columns.len();
        if q == 0 || q >= n {
            return Err(Error::InvalidDimensions {
                n,
                k: n.saturating_sub(q),
            });
        }
        let spec = CodeSpec::new(n, n - q, d)?;
        let limit = if q == 64 { u64::MAX } else { (1u64 << q) - 1 };
        for (i, c) in columns.iter().enumerate() {
            if c.is_zero() {
                return Err(Error::ZeroColumn(i));
            }
            if c.0 > limit {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("column {i} has bits beyond row {}", q - 1),
                });
            }
        }
        let rank = rank_of(&columns);
        if rank != q {
            return Err(Error::RankDeficient { rank, q });
        }
        Ok(ParityCheckMatrix { spec, columns })
    }

    /// Builds from row vectors (`q` rows, each of length `n`).
    pub fn from_rows(rows: &[BinaryWord], d: Option<usize>) -> Result<Self> {
        let q = rows.len();
        if q > MAX_REDUNDANCY {
            return Err(Error::OutOfRange {
                name: "q",
                value: q,
                min: 1,
                max: MAX_REDUNDANCY,
            });
        }
        let n = rows.first().map_or(0, BinaryWord::len);
        let mut columns = vec![Syndrome::ZERO; n];
        for (j, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            for i in row.ones() {
                columns[i].0 |= 1 << j;
            }
        }
        Self::from_columns(q, columns, d)
    }

    /// The `(2^m - 1, 2^m - 1 - m, 3)` Hamming code: column `i` is the
    /// integer `i + 1`, bit `j` of the integer on row `j`.
    pub fn hamming(m: usize) -> Result<Self> {
        check_order(m, MAX_CONSTRUCTOR_ORDER)?;
        let columns = (1..(1u64 << m)).map(Syndrome).collect();
        Self::from_columns(m, columns, Some(3))
    }

    /// The `(2^m, 2^m - 1 - m, 4)` extended Hamming code with an all-ones
    /// row 0. Column `i` is `(i << 1) | 1`: row 0 is one, rows `1..=m` carry
    /// the binary expansion of `i` with its least significant bit on row 1.
    pub fn extended_hamming(m: usize) -> Result<Self> {
        check_order(m, MAX_CONSTRUCTOR_ORDER)?;
        let columns = (0..(1u64 << m)).map(|i| Syndrome((i << 1) | 1)).collect();
        Self::from_columns(m + 1, columns, Some(4))
    }

    /// Replaces the informational minimum distance.
    pub fn with_d(mut self, d: Option<usize>) -> Self {
        self.spec.d = d;
        self
    }

    pub fn spec(&self) -> CodeSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    pub fn q(&self) -> usize {
        self.spec.q
    }

    #[inline]
    pub fn column(&self, i: usize) -> Syndrome {
        self.columns[i]
    }

    pub fn columns(&self) -> &[Syndrome] {
        &self.columns
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.columns)
    }

    /// Row `j` as a length-`n` word.
    pub fn row(&self, j: usize) -> BinaryWord {
        let mut row = BinaryWord::zeros(self.n());
        for (i, c) in self.columns.iter().enumerate() {
            if c.bit(j) {
                row.set(i, true);
            }
        }
        row
    }

    pub fn rows(&self) -> Vec<BinaryWord> {
        (0..self.q()).map(|j| self.row(j)).collect()
    }

    /// `H w^T`: XOR of the columns selected by `w`.
    pub fn syndrome(&self, w: &BinaryWord) -> Result<Syndrome> {
        if w.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: w.len(),
            });
        }
        Ok(w.ones().fold(Syndrome::ZERO, |s, i| s ^ self.columns[i]))
    }

    /// XOR of the columns at `positions` (repeats cancel).
    pub fn syndrome_of_positions(&self, positions: &[usize]) -> Syndrome {
        positions.iter().fold(Syndrome::ZERO, |s, &i| s ^ self.columns[i])
    }

    /// True when every column has row 0 set, the property the
    /// extended-Hamming decoders exploit.
    pub fn has_all_ones_row(&self) -> bool {
        self.columns.iter().all(|c| c.bit(0))
    }

    pub fn has_repeated_columns(&self) -> bool {
        let mut sorted = self.columns.clone();
        sorted.sort_unstable();
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    /// Generator matrix by Gauss-Jordan elimination of `H` with column
    /// pivoting. Free (non-pivot) columns become the information positions,
    /// so each generator row has a single one among them and codewords come
    /// out in the original column order.
    pub fn derive_generator(&self) -> GeneratorMatrix {
        let n = self.n();
        let mut rows = self.rows();
        let mut pivots = Vec::with_capacity(self.q());
        let mut r = 0;
        for col in 0..n {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    *row ^= &pivot_row;
                }
            }
            pivots.push(col);
            r += 1;
        }
        debug_assert_eq!(pivots.len(), self.q(), "H was validated to full rank");

        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let info_positions: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
        let gen_rows = info_positions
            .iter()
            .map(|&f| {
                let mut g = BinaryWord::zeros(n);
                g.set(f, true);
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row.get(f) {
                        g.set(p, true);
                    }
                }
                g
            })
            .collect();
        GeneratorMatrix {
            spec: self.spec,
            rows: gen_rows,
            info_positions,
        }
    }
}

fn check_order(m: usize, max: usize) -> Result<()> {
    if !(3..=max).contains(&m) {
        return Err(Error::OutOfRange {
            name: "m",
            value: m,
            min: 3,
            max,
        });
    }
    Ok(())
}

/// A `k x n` generator matrix in systematic form on `info_positions`.
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    spec: CodeSpec,
    rows: Vec<BinaryWord>,
    info_positions: Vec<usize>,
}

impl GeneratorMatrix {
    pub fn spec(&self) -> CodeSpec {
        self.spec
    }

    pub fn rows(&self) -> &[BinaryWord] {
        &self.rows
    }

    /// Positions where a codeword carries its message bits verbatim.
    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    pub fn encode(&self, message: &BinaryWord) -> Result<BinaryWord> {
        if message.len() != self.spec.k {
            return Err(Error::LengthMismatch {
                expected: self.spec.k,
                actual: message.len(),
            });
        }
        let mut c = BinaryWord::zeros(self.spec.n);
        for i in message.ones() {
            c ^= &self.rows[i];
        }
        Ok(c)
    }

    /// Reads the message back from the information positions.
    pub fn extract_message(&self, codeword: &BinaryWord) -> Result<BinaryWord> {
        if codeword.len() != self.spec.n {
            return Err(Error::LengthMismatch {
                expected: self.spec.n,
                actual: codeword.len(),
            });
        }
        let mut m = BinaryWord::zeros(self.spec.k);
        for (i, &p) in self.info_positions.iter().enumerate() {
            if codeword.get(p) {
                m.set(i, true);
            }
        }
        Ok(m)
    }
}

/// `HD(x) = 1` iff `x < 0`; an exact zero maps to 0.
pub fn hard_decision(lambda: &[f64]) -> BinaryWord {
    let mut b = BinaryWord::zeros(lambda.len());
    for (i, &x) in lambda.iter().enumerate() {
        if x < 0.0 {
            b.set(i, true);
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_columns_are_consecutive_integers() {
        let h = ParityCheckMatrix::hamming(4).unwrap();
        assert_eq!(h.n(), 15);
        assert_eq!(h.q(), 4);
        let cols: Vec<u64> = h.columns().iter().map(|c| c.0).collect();
        assert_eq!(cols, (1..=15).collect::<Vec<_>>());

        let h3 = ParityCheckMatrix::hamming(3).unwrap();
        assert_eq!(
            h3.columns().iter().map(|c| c.0).collect::<Vec<_>>(),
            (1..=7).collect::<Vec<_>>()
        );
        assert_eq!(h3.rank(), 3);
    }

    #[test]
    fn extended_hamming_layout() {
        let h = ParityCheckMatrix::extended_hamming(3).unwrap();
        assert_eq!((h.n(), h.q()), (8, 4));
        assert_eq!(h.column(0), Syndrome(0b0001));
        // i = 5 = 101b sets rows 1 and 3 plus the all-ones row
        assert_eq!(h.column(5), Syndrome(0b1011));
        assert!(h.has_all_ones_row());
        // row 1 alternates 0,1,0,1,...
        assert_eq!(h.row(1).to_string(), "01010101");
        assert_eq!(h.row(3).to_string(), "00001111");

        let h6 = ParityCheckMatrix::extended_hamming(6).unwrap();
        assert_eq!(
            h6.spec(),
            CodeSpec {
                n: 64,
                k: 57,
                q: 7,
                d: Some(4)
            }
        );
    }

    #[test]
    fn extended_hamming_columns_are_exactly_odd_words() {
        let h = ParityCheckMatrix::extended_hamming(5).unwrap();
        let mut cols: Vec<u64> = h.columns().iter().map(|c| c.0).collect();
        cols.sort_unstable();
        cols.dedup();
        let odd: Vec<u64> = (0..64u64).filter(|v| v & 1 == 1).collect();
        assert_eq!(cols, odd);
    }

    #[test]
    fn constructor_range_errors() {
        assert!(matches!(ParityCheckMatrix::hamming(2), Err(Error::OutOfRange { .. })));
        assert!(matches!(
            ParityCheckMatrix::extended_hamming(MAX_CONSTRUCTOR_ORDER + 1),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn validation_rejects_zero_column_and_rank_deficiency() {
        let cols = vec![Syndrome(1), Syndrome(0), Syndrome(2), Syndrome(3)];
        assert!(matches!(
            ParityCheckMatrix::from_columns(2, cols, None),
            Err(Error::ZeroColumn(1))
        ));
        let cols = vec![Syndrome(1), Syndrome(1), Syndrome(1), Syndrome(1)];
        assert!(matches!(
            ParityCheckMatrix::from_columns(2, cols, None),
            Err(Error::RankDeficient { rank: 1, q: 2 })
        ));
    }

    #[test]
    fn repeated_columns_are_accepted() {
        let cols = vec![Syndrome(1), Syndrome(2), Syndrome(1), Syndrome(3)];
        let h = ParityCheckMatrix::from_columns(2, cols, None).unwrap();
        assert!(h.has_repeated_columns());
    }

    #[test]
    fn redundancy_capacity() {
        assert!(matches!(
            CodeSpec::new(200, 100, None),
            Err(Error::OutOfRange { name: "q", .. })
        ));
        assert!(CodeSpec::new(100, 36, None).is_ok());
    }

    #[test]
    fn hamming_7_4_codebook() {
        let h = ParityCheckMatrix::hamming(3).unwrap();
        let g = h.derive_generator();
        assert_eq!(g.rows().len(), 4);
        let mut seen = std::collections::HashSet::new();
        for m in 0..16u8 {
            let msg = BinaryWord::from_bits(&[(m & 1), (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1]);
            let c = g.encode(&msg).unwrap();
            assert!(h.syndrome(&c).unwrap().is_zero());
            assert_eq!(g.extract_message(&c).unwrap(), msg);
            seen.insert(c);
        }
        assert_eq!(seen.len(), 16);
        let zero = g.encode(&BinaryWord::zeros(4)).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn extended_hamming_8_4_codewords_have_even_weight() {
        let h = ParityCheckMatrix::extended_hamming(3).unwrap();
        let g = h.derive_generator();
        for m in 0..16usize {
            let bits: Vec<u8> = (0..4).map(|j| ((m >> j) & 1) as u8).collect();
            let c = g.encode(&BinaryWord::from_bits(&bits)).unwrap();
            assert_eq!(c.weight() % 2, 0);
            assert!(h.syndrome(&c).unwrap().is_zero());
        }
    }

    #[test]
    fn syndrome_basics() {
        let h = ParityCheckMatrix::hamming(4).unwrap();
        assert!(h.syndrome(&BinaryWord::zeros(15)).unwrap().is_zero());
        let e0 = BinaryWord::from_positions(15, &[0]);
        assert_eq!(h.syndrome(&e0).unwrap(), Syndrome(1));
        assert!(matches!(
            h.syndrome(&BinaryWord::zeros(14)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn hard_decision_convention() {
        let b = hard_decision(&[-0.2, 0.1, 0.0, -0.0, 3.0, -7.0]);
        assert_eq!(b.to_bits(), vec![1, 0, 0, 0, 0, 1]);
        assert!(hard_decision(&[0.5; 9]).is_zero());
    }
}
