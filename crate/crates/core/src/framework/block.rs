use std::fmt;

use super::table::{BackRef, TableSet};
use crate::gf2::{ParityCheckMatrix, Syndrome};
use crate::{Error, Result};

/// A multiset of column indices, kept sorted, with its penalty
/// `sum |lambda[a]|` over every member (repeats counted each time).
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorBlock {
    pub indices: Vec<usize>,
    pub penalty: f64,
}

impl ErrorBlock {
    pub fn new(mut indices: Vec<usize>, lambda: &[f64]) -> Self {
        indices.sort_unstable();
        let penalty = indices.iter().map(|&a| lambda[a].abs()).sum();
        ErrorBlock { indices, penalty }
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    /// The vector the block builds: XOR of its columns.
    pub fn target(&self, h: &ParityCheckMatrix) -> Syndrome {
        h.syndrome_of_positions(&self.indices)
    }

    pub fn has_repeats(&self) -> bool {
        self.indices.windows(2).any(|w| w[0] == w[1])
    }
}

impl fmt::Display for ErrorBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        write!(f, "⟦{}⟧", items.join(", "))
    }
}

/// Expands the back-references of entry `(size, v)` down to column leaves.
pub fn reconstruct_block(tables: &TableSet, size: usize, v: Syndrome, lambda: &[f64]) -> Result<ErrorBlock> {
    let mut indices = Vec::with_capacity(size);
    let mut stack = vec![(size, v)];
    while let Some((t, v)) = stack.pop() {
        let table = tables.get(t).ok_or(Error::EmptyEntry { size: t, v: v.0 })?;
        match table.back(v) {
            BackRef::Empty => return Err(Error::EmptyEntry { size: t, v: v.0 }),
            BackRef::Leaf(a) => indices.push(a as usize),
            BackRef::Pair { vb, left, right } => {
                stack.push((right as usize, vb ^ v));
                stack.push((left as usize, vb));
            }
        }
    }
    Ok(ErrorBlock::new(indices, lambda))
}

/// Reduced form: drops indices that occur an even number of times and keeps
/// one copy of the others. The result is the flip set of an error pattern.
pub fn reduce_block(block: &ErrorBlock) -> Vec<usize> {
    let mut out = Vec::new();
    for run in block.indices.chunk_by(|a, b| a == b) {
        if run.len() % 2 == 1 {
            out.push(run[0]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form() {
        let lambda = [1.0; 8];
        let b = ErrorBlock::new(vec![1, 1, 1, 2, 2, 3, 4], &lambda);
        assert_eq!(reduce_block(&b), vec![1, 3, 4]);
        let b = ErrorBlock::new(vec![5, 5], &lambda);
        assert!(reduce_block(&b).is_empty());
        assert!(b.has_repeats());
    }

    #[test]
    fn display_uses_multiset_brackets() {
        let b = ErrorBlock::new(vec![5, 1], &[1.0; 6]);
        assert_eq!(b.to_string(), "⟦1, 5⟧");
    }

    #[test]
    fn missing_entry_is_an_error() {
        let tables = TableSet::new();
        assert!(matches!(
            reconstruct_block(&tables, 2, Syndrome(3), &[1.0; 7]),
            Err(Error::EmptyEntry { size: 2, .. })
        ));
    }
}
