//! Level-one initialisation, the recursive combiners and global selection.

use super::table::{BackRef, LevelTable};
use crate::accounting::OpCounter;
use crate::gf2::{ParityCheckMatrix, Syndrome};
use crate::{Error, Result};

/// Outcome of the decomposition search for one target vector.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scan {
    pub best: f64,
    pub vb: u64,
    pub candidates: u64,
    pub finite: u64,
}

/// Minimises `left[vi] + right[vi ^ v]` over the `vi` yielded by
/// `sources`. With `symmetric`, only `vi < vi ^ v` is considered. The first
/// strict minimum in iteration order wins.
#[inline]
pub(crate) fn scan_splits(
    left: &[f64],
    right: &[f64],
    v: u64,
    sources: impl Iterator<Item = u64>,
    symmetric: bool,
) -> Scan {
    let mut scan = Scan {
        best: f64::INFINITY,
        vb: 0,
        candidates: 0,
        finite: 0,
    };
    for vi in sources {
        let vj = vi ^ v;
        if symmetric && vi >= vj {
            continue;
        }
        scan.candidates += 1;
        let a = left[vi as usize];
        let b = right[vj as usize];
        if a.is_finite() && b.is_finite() {
            scan.finite += 1;
            let sum = a + b;
            if sum < scan.best {
                scan.best = sum;
                scan.vb = vi;
            }
        }
    }
    scan
}

/// `O_1(v)` for every `v`: the least reliable column equal to `v`, ties to
/// the smaller column index. Entries no column reaches stay empty.
pub fn init_level_one(h: &ParityCheckMatrix, lambda: &[f64]) -> Result<LevelTable> {
    if lambda.len() != h.n() {
        return Err(Error::LengthMismatch {
            expected: h.n(),
            actual: lambda.len(),
        });
    }
    let mut table = LevelTable::empty(1, h.q());
    for (i, (&col, &l)) in h.columns().iter().zip(lambda).enumerate() {
        let p = l.abs();
        if p < table.penalty(col) {
            table.set(col, p, BackRef::Leaf(i as u32));
        }
    }
    Ok(table)
}

/// Fills `out` at each target. `sources` restricts the `vi` scanned (they
/// must include every finite entry of `left`, ascending); `None` scans all of
/// `F_2^q` and counts every candidate.
pub(crate) fn combine_into(
    out: &mut LevelTable,
    left: &LevelTable,
    right: &LevelTable,
    targets: &[Syndrome],
    symmetric: bool,
    sources: Option<&[u64]>,
    counter: &mut OpCounter,
) {
    let (lp, rp) = (left.penalties(), right.penalties());
    let back_left = left.size() as u16;
    let back_right = right.size() as u16;
    for &v in targets {
        let scan = match sources {
            Some(list) => scan_splits(lp, rp, v.0, list.iter().copied(), symmetric),
            None => scan_splits(lp, rp, v.0, 0..lp.len() as u64, symmetric),
        };
        counter.record_scan(scan.candidates, scan.finite);
        if scan.finite > 0 {
            out.set(
                v,
                scan.best,
                BackRef::Pair {
                    vb: Syndrome(scan.vb),
                    left: back_left,
                    right: back_right,
                },
            );
        }
    }
}

fn q_of(table: &LevelTable) -> usize {
    table.len().trailing_zeros() as usize
}

/// Builds the size `t1 + t2` table at `targets` by scanning every
/// decomposition vector `vi`; other entries stay empty.
pub fn combine_full(
    left: &LevelTable,
    right: &LevelTable,
    targets: &[Syndrome],
    counter: &mut OpCounter,
) -> LevelTable {
    assert_eq!(left.len(), right.len(), "tables over different spaces");
    let mut out = LevelTable::empty(left.size() + right.size(), q_of(left));
    combine_into(&mut out, left, right, targets, false, None, counter);
    out
}

/// Builds the size `2t` table at nonzero `targets` from one size-`t` table,
/// visiting each unordered pair `{vi, vi ^ v}` once (from its smaller
/// member). Zero targets must go through [`combine_full`].
pub fn combine_symmetric(table: &LevelTable, targets: &[Syndrome], counter: &mut OpCounter) -> Result<LevelTable> {
    if targets.iter().any(|v| v.is_zero()) {
        return Err(Error::ZeroSymmetricTarget);
    }
    let mut out = LevelTable::empty(2 * table.size(), q_of(table));
    combine_into(&mut out, table, table, targets, true, None, counter);
    Ok(out)
}

/// Picks the first size with the smallest finite penalty.
pub fn select_global(per_size: &[(usize, f64)], counter: &mut OpCounter) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    let mut finite = 0u64;
    for &(t, p) in per_size {
        if !p.is_finite() {
            continue;
        }
        finite += 1;
        if best.is_none_or(|(_, bp)| p < bp) {
            best = Some((t, p));
        }
    }
    counter.record_selection(per_size.len() as u64, finite);
    best.ok_or(Error::DecodeFailure)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> ParityCheckMatrix {
        ParityCheckMatrix::hamming(3).unwrap()
    }

    #[test]
    fn level_one_picks_matching_column() {
        let h = toy();
        let lambda = [0.5, -0.7, 0.9, 1.1, -1.3, 1.5, 1.7];
        let t1 = init_level_one(&h, &lambda).unwrap();
        assert_eq!(t1.back(Syndrome(3)), BackRef::Leaf(2));
        assert_eq!(t1.penalty(Syndrome(2)), 0.7);
        assert_eq!(t1.back(Syndrome(0)), BackRef::Empty);
        assert!(t1.penalty(Syndrome(0)).is_infinite());
    }

    #[test]
    fn level_one_ties_go_to_smaller_index() {
        let cols = vec![Syndrome(1), Syndrome(2), Syndrome(1), Syndrome(3)];
        let h = ParityCheckMatrix::from_columns(2, cols, None).unwrap();
        let t1 = init_level_one(&h, &[0.4, 1.0, 0.4, 1.0]).unwrap();
        assert_eq!(t1.back(Syndrome(1)), BackRef::Leaf(0));
        let t1 = init_level_one(&h, &[0.4, 1.0, -0.3, 1.0]).unwrap();
        assert_eq!(t1.back(Syndrome(1)), BackRef::Leaf(2));
    }

    #[test]
    fn level_one_length_mismatch() {
        assert!(matches!(
            init_level_one(&toy(), &[1.0; 6]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn combining_empty_tables_gives_empty_table() {
        let a = LevelTable::empty(1, 3);
        let targets: Vec<_> = (0..8).map(Syndrome).collect();
        let mut c = OpCounter::new();
        let out = combine_full(&a, &a, &targets, &mut c);
        assert_eq!(out.finite_count(), 0);
        assert_eq!(c.finite_ops(), 0);
        assert_eq!(c.adds_infinite, 64);
    }

    #[test]
    fn symmetric_pair_count_for_hamming_15_11() {
        // v = 1 over F_2^4 has pairs {0,1}, {2,3}, ..., {14,15}; the first
        // involves the empty O_1(0).
        let h = ParityCheckMatrix::hamming(4).unwrap();
        let lambda: Vec<f64> = (0..15).map(|i| 0.1 * (i + 1) as f64).collect();
        let t1 = init_level_one(&h, &lambda).unwrap();
        let mut c = OpCounter::new();
        combine_symmetric(&t1, &[Syndrome(1)], &mut c).unwrap();
        assert_eq!(
            (c.adds_finite + c.adds_infinite, c.cmps_finite + c.cmps_infinite),
            (8, 7)
        );
        assert_eq!((c.adds_finite, c.cmps_finite), (7, 6));
    }

    #[test]
    fn symmetric_rejects_zero_target() {
        let t1 = init_level_one(&toy(), &[1.0; 7]).unwrap();
        let mut c = OpCounter::new();
        assert!(matches!(
            combine_symmetric(&t1, &[Syndrome(0)], &mut c),
            Err(Error::ZeroSymmetricTarget)
        ));
    }

    #[test]
    fn symmetric_entry_without_finite_pair_is_empty() {
        let mut t = LevelTable::empty(1, 2);
        t.set(Syndrome(1), 0.5, BackRef::Leaf(0));
        let mut c = OpCounter::new();
        let out = combine_symmetric(&t, &[Syndrome(3)], &mut c).unwrap();
        assert!(out.penalty(Syndrome(3)).is_infinite());
        assert_eq!(out.back(Syndrome(3)), BackRef::Empty);
    }

    #[test]
    fn selection_rules() {
        let mut c = OpCounter::new();
        let (t, p) = select_global(&[(1, f64::INFINITY), (2, 0.4), (3, 0.6), (4, 0.4)], &mut c).unwrap();
        assert_eq!((t, p), (2, 0.4));
        assert_eq!(c.cmps_finite, 2);
        assert_eq!(c.cmps_infinite, 1);

        let mut c = OpCounter::new();
        assert_eq!(select_global(&[(3, 1.5)], &mut c).unwrap(), (3, 1.5));
        assert_eq!(c.total_ops(), 0);

        let mut c = OpCounter::new();
        assert!(matches!(
            select_global(&[(1, f64::INFINITY), (2, f64::INFINITY)], &mut c),
            Err(Error::DecodeFailure)
        ));
    }
}
