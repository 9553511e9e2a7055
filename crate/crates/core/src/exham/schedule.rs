//! Construction schedules for extended Hamming codes.
//!
//! Every column has row 0 set, so an odd number of columns always lands in
//! `Y` (row 0 set) and an even number in `W ∪ {0}`. Blocks of odd size for
//! `W` and of even size for `Y` are therefore empty, and even-size blocks for
//! `0` only contain repeats. A schedule only builds what can matter: even
//! sizes over `W`, odd sizes over `Y`, and the tail sizes for the syndrome
//! alone.
//!
//! Let `Qe`/`Qo` be the largest even/odd integer `<= q`.
//!
//! * `s ∈ W`: `w` is the even one of `Qe/2`, `Qe/2 + 1`. Build size 2 over
//!   `W` as `1 + 1`; then even `t = 4..=w` over `W` as `t/2 + t/2` when `t/2`
//!   is even, else `(t - 2) + 2`; then even `t = w+2..=Qe` for `s` only as
//!   `(t - w) + w`, or `t/2 + t/2` when a `W` table of size `t/2` exists.
//! * `s ∈ Y`, `ceil(Qo/2)` even: `w = ceil(Qo/2)`. Size 2 over `W`; odd
//!   `t = 3..=w-1` over `Y` as `(t - 2) + 2`; size `w` over `W` (unless
//!   `w = 2`) as `w/2 + w/2` when `w/2 = 2` or `w/2` is odd, else
//!   `(w - 1) + 1`; odd `t = w+1..=Qo` for `s` as `(t - w) + w`.
//! * `s ∈ Y`, `ceil(Qo/2)` odd: `w = ceil(Qo/2) + 1`. Size 2 over `W`; odd
//!   `t = 3..=w-3` over `Y` as `(t - 2) + 2`; size `w - 1` for `s` as
//!   `(w - 3) + 2`; size `w` over `W` as `w/2 + w/2` when `w/2 = 2` or `w/2`
//!   is odd, else `(w - 3) + 3`; odd `t = w+1..=Qo` for `s` as `(t - w) + w`.

use std::fmt;

use crate::{Error, Result};

/// Which vectors a step fills.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepScope {
    /// Every nonzero `v` with `v[0] = 0`.
    AllW,
    /// Every `v` with `v[0] = 1`.
    AllY,
    /// The syndrome only.
    SyndromeOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScheduleStep {
    pub size: usize,
    pub left: usize,
    pub right: usize,
    pub scope: StepScope,
    /// `left == right` and unordered pairs are scanned.
    pub symmetric: bool,
}

impl ScheduleStep {
    fn new(size: usize, left: usize, right: usize, scope: StepScope) -> Self {
        debug_assert_eq!(left + right, size);
        ScheduleStep {
            size,
            left,
            right,
            scope,
            symmetric: left == right,
        }
    }
}

/// Ordered construction steps for one `(q, s[0])`. Level 1 over `Y` is
/// implicit and always comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub q: usize,
    pub syndrome_in_y: bool,
    pub steps: Vec<ScheduleStep>,
    /// Sizes whose table holds an entry for the syndrome, ascending.
    pub candidate_sizes: Vec<usize>,
}

impl Schedule {
    /// Scope of the table holding blocks of `size`, or `None` if the size is
    /// never built over a whole class.
    pub fn table_scope(&self, size: usize) -> Option<StepScope> {
        if size == 1 {
            return Some(StepScope::AllY);
        }
        self.steps.iter().find(|s| s.size == size).map(|s| s.scope)
    }
}

impl fmt::Display for Schedule {
    /// Bracket list of whole-class sizes, then the syndrome-only sizes in
    /// parentheses; a combining tilde marks symmetric steps.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = |s: &ScheduleStep| {
            if s.symmetric {
                format!("{}\u{303}", s.size)
            } else {
                s.size.to_string()
            }
        };
        let mut bracket = vec!["1".to_string()];
        let mut paren = Vec::new();
        for s in &self.steps {
            match s.scope {
                StepScope::SyndromeOnly => paren.push(label(s)),
                _ => bracket.push(label(s)),
            }
        }
        write!(f, "[{}], ({})", bracket.join(", "), paren.join(", "))
    }
}

/// Generates the schedule for redundancy `q` (`q >= 4`) and syndrome class
/// given by `s0 = s[0]`.
pub fn build_schedule(q: usize, s0: bool) -> Result<Schedule> {
    use StepScope::*;
    if q < 4 {
        return Err(Error::OutOfRange {
            name: "q",
            value: q,
            min: 4,
            max: 64,
        });
    }
    let q_even = q - (q % 2);
    let q_odd = q - 1 + (q % 2);
    let mut steps = vec![ScheduleStep::new(2, 1, 1, AllW)];
    let mut candidates = Vec::new();

    if !s0 {
        let half = q_even / 2;
        let w = if half.is_multiple_of(2) { half } else { half + 1 };
        candidates.push(2);
        for t in (4..=w).step_by(2) {
            let step = if (t / 2) % 2 == 0 {
                ScheduleStep::new(t, t / 2, t / 2, AllW)
            } else {
                ScheduleStep::new(t, t - 2, 2, AllW)
            };
            steps.push(step);
            candidates.push(t);
        }
        for t in (w + 2..=q_even).step_by(2) {
            // an even t/2 <= w has a W table, so the halving split is free
            let step = if (t / 2) % 2 == 0 && t / 2 <= w {
                ScheduleStep::new(t, t / 2, t / 2, SyndromeOnly)
            } else {
                ScheduleStep::new(t, t - w, w, SyndromeOnly)
            };
            steps.push(step);
            candidates.push(t);
        }
    } else {
        let c = q_odd.div_ceil(2);
        candidates.push(1);
        let w = if c.is_multiple_of(2) {
            for t in (3..c).step_by(2) {
                steps.push(ScheduleStep::new(t, t - 2, 2, AllY));
                candidates.push(t);
            }
            if c != 2 {
                let step = if c / 2 == 2 || (c / 2) % 2 == 1 {
                    ScheduleStep::new(c, c / 2, c / 2, AllW)
                } else {
                    ScheduleStep::new(c, c - 1, 1, AllW)
                };
                steps.push(step);
            }
            c
        } else {
            let w = c + 1;
            for t in (3..=w.saturating_sub(3)).step_by(2) {
                steps.push(ScheduleStep::new(t, t - 2, 2, AllY));
                candidates.push(t);
            }
            steps.push(ScheduleStep::new(w - 1, w - 3, 2, SyndromeOnly));
            candidates.push(w - 1);
            let step = if w / 2 == 2 || (w / 2) % 2 == 1 {
                ScheduleStep::new(w, w / 2, w / 2, AllW)
            } else {
                ScheduleStep::new(w, w - 3, 3, AllW)
            };
            steps.push(step);
            w
        };
        for t in (w + 1..=q_odd).step_by(2) {
            steps.push(ScheduleStep::new(t, t - w, w, SyndromeOnly));
            candidates.push(t);
        }
    }

    Ok(Schedule {
        q,
        syndrome_in_y: s0,
        steps,
        candidate_sizes: candidates,
    })
}
