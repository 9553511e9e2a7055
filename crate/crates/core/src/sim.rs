//! Monte-Carlo FER runs, complexity measurements and the published-table
//! checks behind the command-line harness.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::accounting::OpCounter;
use crate::channel::{generate_frame, ChannelConfig, MessageMode};
use crate::exham::{build_schedule, classify, ExHamDecoder, ExclusionMode, ParityClass};
use crate::framework::{GeneralDecoder, SoftDecoder};
use crate::gf2::{load_parity_check, GeneratorMatrix, MatrixFormat, ParityCheckMatrix};
use crate::oracles::{BruteForceDecoder, ChaseDecoder, DEFAULT_CHASE_POSITIONS};
use crate::{Error, Result};

/// Which code to simulate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CodeSelector {
    /// `hamming:m`, the `(2^m - 1, 2^m - 1 - m)` Hamming code.
    Hamming(usize),
    /// `exthamming:m`, the `(2^m, 2^m - 1 - m)` extended Hamming code.
    ExtendedHamming(usize),
    /// `file:path`, a plain or alist parity-check matrix.
    File(PathBuf),
}

impl CodeSelector {
    pub fn parity_check(&self) -> Result<ParityCheckMatrix> {
        match self {
            CodeSelector::Hamming(m) => ParityCheckMatrix::hamming(*m),
            CodeSelector::ExtendedHamming(m) => ParityCheckMatrix::extended_hamming(*m),
            CodeSelector::File(path) => load_parity_check(path, MatrixFormat::from_path(path)),
        }
    }
}

impl FromStr for CodeSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("code selector `{s}` is not of the form kind:arg")))?;
        let order = || {
            arg.parse::<usize>()
                .map_err(|_| Error::Config(format!("`{arg}` is not a valid code order")))
        };
        match kind {
            "hamming" => Ok(CodeSelector::Hamming(order()?)),
            "exthamming" => Ok(CodeSelector::ExtendedHamming(order()?)),
            "file" => Ok(CodeSelector::File(PathBuf::from(arg))),
            _ => Err(Error::Config(format!("unknown code kind `{kind}`"))),
        }
    }
}

impl fmt::Display for CodeSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSelector::Hamming(m) => write!(f, "hamming:{m}"),
            CodeSelector::ExtendedHamming(m) => write!(f, "exthamming:{m}"),
            CodeSelector::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Parses an LLR list: one real per line; blank lines and `#` comments
/// are skipped.
pub fn parse_lambda(text: &str) -> Result<Vec<f64>> {
    let mut lambda = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let value = line.parse::<f64>().map_err(|_| Error::Parse {
            line: i + 1,
            msg: format!("`{line}` is not a real number"),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                line: i + 1,
                msg: "LLRs must be finite".into(),
            });
        }
        lambda.push(value);
    }
    Ok(lambda)
}

/// Reads an LLR file in the [`parse_lambda`] format.
pub fn load_lambda(path: &Path) -> Result<Vec<f64>> {
    parse_lambda(&std::fs::read_to_string(path)?)
}

/// Which decoder to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderKind {
    General,
    OffOpt,
    FullOpt,
    Chase2,
    BruteForce,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 5] = [
        DecoderKind::General,
        DecoderKind::OffOpt,
        DecoderKind::FullOpt,
        DecoderKind::Chase2,
        DecoderKind::BruteForce,
    ];

    /// Instantiates the decoder for `h`; `chase_positions` only affects
    /// Chase-II.
    pub fn build(self, h: &ParityCheckMatrix, chase_positions: usize) -> Result<Box<dyn SoftDecoder + Send>> {
        let h = h.clone();
        Ok(match self {
            DecoderKind::General => Box::new(GeneralDecoder::new(h)?),
            DecoderKind::OffOpt => Box::new(ExHamDecoder::new(h, ExclusionMode::Offline)?),
            DecoderKind::FullOpt => Box::new(ExHamDecoder::new(h, ExclusionMode::Full)?),
            DecoderKind::Chase2 => Box::new(ChaseDecoder::new(h, chase_positions)?),
            DecoderKind::BruteForce => Box::new(BruteForceDecoder::new(h)?),
        })
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DecoderKind::ALL
            .into_iter()
            .find(|d| d.to_string() == s)
            .ok_or_else(|| Error::Config(format!("unknown decoder `{s}`")))
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoderKind::General => "general",
            DecoderKind::OffOpt => "offopt",
            DecoderKind::FullOpt => "fullopt",
            DecoderKind::Chase2 => "chase2",
            DecoderKind::BruteForce => "bruteforce",
        })
    }
}

/// A FER sweep.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub code: CodeSelector,
    pub decoder: DecoderKind,
    pub ebn0_db: Vec<f64>,
    pub max_frames: u64,
    pub max_frame_errors: u64,
    pub seed: u64,
    pub message_mode: MessageMode,
    pub chase_positions: usize,
}

impl RunConfig {
    pub fn new(code: CodeSelector, decoder: DecoderKind, ebn0_db: Vec<f64>) -> Self {
        RunConfig {
            code,
            decoder,
            ebn0_db,
            max_frames: 100_000,
            max_frame_errors: 100,
            seed: 0,
            message_mode: MessageMode::Random,
            chase_positions: DEFAULT_CHASE_POSITIONS,
        }
    }

    /// Checks the numeric fields and that the decoder accepts the code.
    pub fn validate(&self) -> Result<ParityCheckMatrix> {
        if self.max_frames == 0 {
            return Err(Error::Config("max frames must be at least 1".into()));
        }
        if self.max_frame_errors == 0 {
            return Err(Error::Config("max frame errors must be at least 1".into()));
        }
        if self.ebn0_db.is_empty() {
            return Err(Error::Config("at least one Eb/N0 point is required".into()));
        }
        let h = self.code.parity_check()?;
        self.decoder.build(&h, self.chase_positions)?;
        Ok(h)
    }
}

/// Results of one Eb/N0 point. Averages are per frame; the `_nonzero`
/// averages are over frames whose hard decision had a nonzero syndrome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FerRecord {
    pub code: String,
    pub decoder: DecoderKind,
    pub seed: u64,
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub fer: f64,
    pub nonzero_frames: u64,
    /// Frames where the decoder could not produce a codeword.
    pub invalid_outputs: u64,
    pub avg_adds_finite: f64,
    pub avg_cmps_finite: f64,
    pub avg_ops_finite: f64,
    pub avg_ops_total: f64,
    pub avg_ops_finite_nonzero: f64,
    pub avg_ops_total_nonzero: f64,
}

#[derive(Debug, Clone, Copy)]
struct FrameOutcome {
    error: bool,
    nonzero: bool,
    invalid: bool,
    ops: OpCounter,
}

/// Frames decoded between checks of the stopping rule.
const BATCH_FRAMES: u64 = 2048;

fn div(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Runs one Eb/N0 point. Frame `i` uses stream `i` of `seed`; frames are
/// decoded in parallel batches and merged in index order, so the record is
/// independent of the thread count. The point stops after `max_frames`
/// frames or at the frame that brings the error count to
/// `max_frame_errors`, whichever is first.
pub fn run_fer_point(cfg: &RunConfig, h: &ParityCheckMatrix, g: &GeneratorMatrix, ebn0_db: f64) -> Result<FerRecord> {
    let channel = ChannelConfig::new(ebn0_db, h.spec().rate(), cfg.seed, cfg.message_mode)?;
    let mut frames = 0u64;
    let mut errors = 0u64;
    let mut nonzero = 0u64;
    let mut invalid = 0u64;
    let mut ops_all = OpCounter::default();
    let mut ops_nonzero = OpCounter::default();

    'outer: while frames < cfg.max_frames && errors < cfg.max_frame_errors {
        let end = (frames + BATCH_FRAMES * rayon::current_num_threads() as u64).min(cfg.max_frames);
        let outcomes: Vec<Result<FrameOutcome>> = (frames..end)
            .into_par_iter()
            .map_init(
                || cfg.decoder.build(h, cfg.chase_positions),
                |decoder, i| {
                    let decoder = decoder.as_mut().map_err(|e| Error::Config(e.to_string()))?;
                    let frame = generate_frame(g, &channel, i);
                    let out = decoder.decode(&frame.lambda)?;
                    Ok(FrameOutcome {
                        error: out.codeword != frame.tx_codeword,
                        nonzero: !out.syndrome.is_zero(),
                        invalid: !out.valid_codeword,
                        ops: out.ops,
                    })
                },
            )
            .collect();
        for outcome in outcomes {
            let o = outcome?;
            frames += 1;
            errors += u64::from(o.error);
            invalid += u64::from(o.invalid);
            ops_all += o.ops;
            if o.nonzero {
                nonzero += 1;
                ops_nonzero += o.ops;
            }
            if errors >= cfg.max_frame_errors {
                break 'outer;
            }
        }
    }

    Ok(FerRecord {
        code: cfg.code.to_string(),
        decoder: cfg.decoder,
        seed: cfg.seed,
        ebn0_db,
        frames,
        frame_errors: errors,
        fer: div(errors, frames),
        nonzero_frames: nonzero,
        invalid_outputs: invalid,
        avg_adds_finite: div(ops_all.adds_finite, frames),
        avg_cmps_finite: div(ops_all.cmps_finite, frames),
        avg_ops_finite: div(ops_all.finite_ops(), frames),
        avg_ops_total: div(ops_all.total_ops(), frames),
        avg_ops_finite_nonzero: div(ops_nonzero.finite_ops(), nonzero),
        avg_ops_total_nonzero: div(ops_nonzero.total_ops(), nonzero),
    })
}

/// Runs every Eb/N0 point of `cfg` in order.
pub fn run_fer(cfg: &RunConfig) -> Result<Vec<FerRecord>> {
    let h = cfg.validate()?;
    let g = h.derive_generator();
    cfg.ebn0_db.iter().map(|&e| run_fer_point(cfg, &h, &g, e)).collect()
}

/// Offline-exclusion operation counts of one extended Hamming code, per
/// syndrome class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffOptCounts {
    pub n: usize,
    pub q: usize,
    /// Finite operations for `s[0] = 0`, if every sampled frame agreed.
    pub finite_w: Option<u64>,
    /// Finite operations for `s[0] = 1`, if every sampled frame agreed.
    pub finite_y: Option<u64>,
    /// Operations including `+inf` ones, if constant.
    pub total_w: Option<u64>,
    pub total_y: Option<u64>,
    pub frames_w: usize,
    pub frames_y: usize,
}

/// Decodes random frames until `frames_per_class` of each syndrome class
/// have been seen and reports the per-class counts (or `None` where they
/// were not constant).
pub fn offopt_constant_counts(m: usize, frames_per_class: usize, seed: u64) -> Result<OffOptCounts> {
    let h = ParityCheckMatrix::extended_hamming(m)?;
    let g = h.derive_generator();
    let mut decoder = ExHamDecoder::new(h.clone(), ExclusionMode::Offline)?;
    // low Eb/N0 keeps both classes frequent
    let channel = ChannelConfig::new(1.0, h.spec().rate(), seed, MessageMode::Random)?;
    let mut seen: [Vec<OpCounter>; 2] = [Vec::new(), Vec::new()];
    let budget = 1000 * frames_per_class as u64 + 1000;
    for i in 0..budget {
        if seen.iter().all(|v| v.len() >= frames_per_class) {
            break;
        }
        let frame = generate_frame(&g, &channel, i);
        let out = decoder.decode(&frame.lambda)?;
        let slot = match classify(out.syndrome) {
            ParityClass::Zero => continue,
            ParityClass::W => 0,
            ParityClass::Y => 1,
        };
        if seen[slot].len() < frames_per_class {
            seen[slot].push(out.ops);
        }
    }
    let constant = |v: &[OpCounter], f: fn(&OpCounter) -> u64| {
        let first = f(v.first()?);
        v.iter().all(|c| f(c) == first).then_some(first)
    };
    Ok(OffOptCounts {
        n: h.n(),
        q: h.q(),
        finite_w: constant(&seen[0], OpCounter::finite_ops),
        finite_y: constant(&seen[1], OpCounter::finite_ops),
        total_w: constant(&seen[0], OpCounter::total_ops),
        total_y: constant(&seen[1], OpCounter::total_ops),
        frames_w: seen[0].len(),
        frames_y: seen[1].len(),
    })
}

/// Published reference values checked by [`verify_tables`].
#[derive(Debug, Clone)]
pub struct GoldenTables {
    /// `(q, s[0], notation)`; a combining tilde marks symmetric steps.
    pub schedules: Vec<(usize, bool, String)>,
    /// `(m, finite ops for s[0] = 0, finite ops for s[0] = 1)`.
    pub offopt: Vec<(usize, u64, u64)>,
}

impl GoldenTables {
    pub fn published() -> Self {
        let t = "\u{303}";
        let schedules = vec![
            (6, false, format!("[1, 2{t}, 4{t}], (6)")),
            (6, true, format!("[1, 2{t}, 4{t}], (3, 5)")),
            (7, false, format!("[1, 2{t}, 4{t}], (6)")),
            (7, true, format!("[1, 2{t}, 3, 4{t}], (5, 7)")),
            (8, false, format!("[1, 2{t}, 4{t}], (6, 8{t})")),
            (8, true, format!("[1, 2{t}, 3, 4{t}], (5, 7)")),
            (9, false, format!("[1, 2{t}, 4{t}], (6, 8{t})")),
            (9, true, format!("[1, 2{t}, 3, 6{t}], (5, 7, 9)")),
            (10, false, format!("[1, 2{t}, 4{t}, 6], (8{t}, 10)")),
            (10, true, format!("[1, 2{t}, 3, 6{t}], (5, 7, 9)")),
        ];
        GoldenTables {
            schedules,
            offopt: vec![(6, 7937, 16065), (7, 32383, 64897), (8, 130303, 261885)],
        }
    }
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "PASS {}: {}", self.name, self.actual)
        } else {
            write!(f, "FAIL {}: expected {}, got {}", self.name, self.expected, self.actual)
        }
    }
}

/// Verification outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Regenerates every golden schedule and offline operation count and
/// compares.
pub fn verify_tables(golden: &GoldenTables) -> Result<Report> {
    let mut checks = Vec::new();
    for (q, s0, expected) in &golden.schedules {
        let actual = build_schedule(*q, *s0)?.to_string();
        checks.push(Check {
            name: format!("schedule q={q} s0={}", u8::from(*s0)),
            passed: &actual == expected,
            expected: expected.clone(),
            actual,
        });
    }
    for &(m, w, y) in &golden.offopt {
        let counts = offopt_constant_counts(m, 20, 1)?;
        for (label, expected, actual) in [("s0=0", w, counts.finite_w), ("s0=1", y, counts.finite_y)] {
            let actual = actual.map_or("not constant".to_string(), |v| v.to_string());
            checks.push(Check {
                name: format!("offopt n={} {label}", counts.n),
                passed: actual == expected.to_string(),
                expected: expected.to_string(),
                actual,
            });
        }
    }
    Ok(Report { checks })
}
