use crate::gf2::Syndrome;
use crate::{Error, Result};

/// How a level-table entry was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackRef {
    /// No block of this size reaches the vector (`M = +inf`).
    Empty,
    /// Size-1 block made of column `0`.
    Leaf(u32),
    /// Union of the size-`left` block for `vb` and the size-`right` block
    /// for `vb ^ v`.
    Pair { vb: Syndrome, left: u16, right: u16 },
}

/// Best known size-`t` block for every `v` in `F_2^q`, stored densely as a
/// penalty and a back-reference per vector.
#[derive(Debug, Clone)]
pub struct LevelTable {
    size: usize,
    penalty: Vec<f64>,
    back: Vec<BackRef>,
}

impl LevelTable {
    /// An all-empty table for blocks of `size` over `F_2^q`.
    pub fn empty(size: usize, q: usize) -> Self {
        let len = 1usize << q;
        LevelTable {
            size,
            penalty: vec![f64::INFINITY; len],
            back: vec![BackRef::Empty; len],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of entries, `2^q`.
    pub fn len(&self) -> usize {
        self.penalty.len()
    }

    pub fn is_empty(&self) -> bool {
        self.penalty.is_empty()
    }

    #[inline]
    pub fn penalty(&self, v: Syndrome) -> f64 {
        self.penalty[v.index()]
    }

    #[inline]
    pub fn back(&self, v: Syndrome) -> BackRef {
        self.back[v.index()]
    }

    #[inline]
    pub fn is_finite(&self, v: Syndrome) -> bool {
        self.penalty[v.index()].is_finite()
    }

    pub fn penalties(&self) -> &[f64] {
        &self.penalty
    }

    pub(crate) fn set(&mut self, v: Syndrome, penalty: f64, back: BackRef) {
        debug_assert_eq!(penalty.is_finite(), back != BackRef::Empty);
        self.penalty[v.index()] = penalty;
        self.back[v.index()] = back;
    }

    pub(crate) fn clear(&mut self, v: Syndrome) {
        self.penalty[v.index()] = f64::INFINITY;
        self.back[v.index()] = BackRef::Empty;
    }

    /// Indices of the finite entries, ascending.
    pub fn finite_indices(&self) -> Vec<u64> {
        self.penalty
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_finite())
            .map(|(i, _)| i as u64)
            .collect()
    }

    pub fn finite_count(&self) -> usize {
        self.penalty.iter().filter(|p| p.is_finite()).count()
    }
}

/// The level tables of one decode, indexed by block size.
#[derive(Debug, Clone, Default)]
pub struct TableSet {
    tables: Vec<Option<LevelTable>>,
}

impl TableSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, table: LevelTable) {
        let t = table.size();
        if self.tables.len() <= t {
            self.tables.resize_with(t + 1, || None);
        }
        self.tables[t] = Some(table);
    }

    pub fn get(&self, size: usize) -> Option<&LevelTable> {
        self.tables.get(size).and_then(Option::as_ref)
    }

    pub(crate) fn require(&self, size: usize) -> Result<&LevelTable> {
        self.get(size).ok_or(Error::EmptyEntry { size, v: 0 })
    }

    /// `M(O_t(v))`, `+inf` when the size was never built.
    pub fn penalty(&self, size: usize, v: Syndrome) -> f64 {
        self.get(size).map_or(f64::INFINITY, |t| t.penalty(v))
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.tables
            .iter()
            .enumerate()
            .filter_map(|(t, tab)| tab.as_ref().map(|_| t))
    }
}
