use std::fmt;
use std::ops::{BitXor, BitXorAssign};

/// A length-`n` binary vector packed into 64-bit words, bit `i` of the
/// vector at bit `i % 64` of word `i / 64`.
///
/// Codewords, hard decisions and error patterns all use this type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    len: usize,
    words: Vec<u64>,
}

impl BinaryWord {
    pub fn zeros(len: usize) -> Self {
        BinaryWord {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Builds a word from `0`/`1` values; any nonzero entry counts as one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut w = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                w.set(i, true);
            }
        }
        w
    }

    pub fn from_positions(len: usize, positions: &[usize]) -> Self {
        let mut w = Self::zeros(len);
        for &p in positions {
            w.flip(p);
        }
        w
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of the one bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    pub fn as_words(&self) -> &[u64] {
        &self.words
    }
}

impl BitXorAssign<&BinaryWord> for BinaryWord {
    fn bitxor_assign(&mut self, rhs: &BinaryWord) {
        assert_eq!(self.len, rhs.len, "xor of words with different lengths");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&BinaryWord> for &BinaryWord {
    type Output = BinaryWord;

    fn bitxor(self, rhs: &BinaryWord) -> BinaryWord {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_across_word_boundary() {
        let mut w = BinaryWord::zeros(130);
        w.set(63, true);
        w.set(64, true);
        w.set(129, true);
        assert!(w.get(63) && w.get(64) && w.get(129));
        assert!(!w.get(65));
        assert_eq!(w.ones().collect::<Vec<_>>(), vec![63, 64, 129]);
        assert_eq!(w.weight(), 3);
    }

    #[test]
    fn xor_cancels() {
        let a = BinaryWord::from_bits(&[1, 0, 1, 1]);
        let b = BinaryWord::from_bits(&[1, 1, 0, 1]);
        assert_eq!((&a ^ &b).to_bits(), vec![0, 1, 1, 0]);
        assert!((&a ^ &a).is_zero());
    }

    #[test]
    fn from_positions_toggles_repeats() {
        let w = BinaryWord::from_positions(6, &[1, 4, 1, 5]);
        assert_eq!(w.to_string(), "000011");
    }
}
