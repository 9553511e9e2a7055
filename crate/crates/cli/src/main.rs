//! `ebd`: decode single frames, run FER sweeps, measure operation counts and
//! check the published schedules and counts.

use std::error::Error;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ebd::channel::{generate_frame, ChannelConfig, MessageMode};
use ebd::exham::build_schedule;
use ebd::gf2::{ParityCheckMatrix, Syndrome};
use ebd::oracles::{enumerate_blocks, DEFAULT_CHASE_POSITIONS};
use ebd::sim::{
    load_lambda, offopt_constant_counts, run_fer, verify_tables, CodeSelector, DecoderKind, FerRecord, GoldenTables,
    RunConfig,
};
use serde::Serialize;

type CliResult<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(
    name = "ebd",
    version,
    about = "Error-building decoding of binary linear block codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decode one LLR vector and print the per-size trace.
    Decode(DecodeArgs),
    /// Frame-error-rate sweep over Eb/N0 points.
    Fer(FerArgs),
    /// Operation counts of the extended-Hamming decoders.
    Complexity(ComplexityArgs),
    /// List every error-building block of a size for a vector.
    Enumerate(EnumerateArgs),
    /// Print the construction schedule of an extended Hamming code.
    Schedule(ScheduleArgs),
    /// Check the schedules and offline operation counts against the
    /// published tables.
    VerifyTables,
}

#[derive(Args)]
struct CodeArgs {
    /// `hamming:m`, `exthamming:m` or `file:path`.
    #[arg(long, default_value = "exthamming:6")]
    code: String,
    /// Parity-check matrix file (plain or `.alist`); overrides `--code`.
    #[arg(long)]
    parity_check: Option<PathBuf>,
}

impl CodeArgs {
    fn selector(&self) -> CliResult<CodeSelector> {
        Ok(match &self.parity_check {
            Some(path) => CodeSelector::File(path.clone()),
            None => self.code.parse()?,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, default_value = "general")]
    decoder: String,
    /// LLR file, one real per line.
    #[arg(long)]
    lambda_file: Option<PathBuf>,
    /// LLRs inline, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Option<Vec<f64>>,
    /// Without an LLR source, draw frame `--frame` at this Eb/N0.
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    ebn0: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    frame: u64,
    #[arg(long, default_value_t = DEFAULT_CHASE_POSITIONS)]
    chase_positions: usize,
    /// Write the JSON record here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FerArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, default_value = "fullopt")]
    decoder: String,
    /// Eb/N0 points in dB, comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    ebn0: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    frames: u64,
    #[arg(long, default_value_t = 100)]
    frame_errors: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CHASE_POSITIONS)]
    chase_positions: usize,
    /// Transmit the all-zero codeword instead of random messages.
    #[arg(long)]
    all_zero: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct ComplexityArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// `offopt` or `fullopt`.
    #[arg(long, default_value = "offopt")]
    decoder: String,
    /// Eb/N0 points for `fullopt`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    ebn0: Vec<f64>,
    /// Frames per syndrome class (`offopt`) or per point (`fullopt`).
    #[arg(long, default_value_t = 100)]
    frames: u64,
    #[arg(long, default_value_t = u64::MAX)]
    frame_errors: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Target vector as an integer (bit j is row j).
    #[arg(long)]
    v: u64,
    /// Block size.
    #[arg(long)]
    t: usize,
}

#[derive(Args)]
struct ScheduleArgs {
    /// Redundancy `q = n - k` (at least 4).
    #[arg(long)]
    q: usize,
    /// Syndrome class `s[0]`; both when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    s0: Option<u8>,
}

fn output(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_records<T: Serialize>(records: &[T], format: Format, out: &Option<PathBuf>) -> CliResult<()> {
    let mut sink = output(out)?;
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, records)?;
            writeln!(sink)?;
        }
    }
    Ok(())
}

fn fmt_penalty(p: f64) -> String {
    if p.is_finite() {
        format!("{p:.6}")
    } else {
        "inf".into()
    }
}

fn decode(args: DecodeArgs) -> CliResult<()> {
    let selector = args.code.selector()?;
    let h = selector.parity_check()?;
    let kind: DecoderKind = args.decoder.parse()?;
    let lambda = match (&args.lambda_file, &args.lambda) {
        (Some(path), _) => load_lambda(path)?,
        (None, Some(values)) => values.clone(),
        (None, None) => {
            let g = h.derive_generator();
            let cfg = ChannelConfig::new(args.ebn0, h.spec().rate(), args.seed, MessageMode::Random)?;
            generate_frame(&g, &cfg, args.frame).lambda
        }
    };
    let mut decoder = kind.build(&h, args.chase_positions)?;
    let result = decoder.decode(&lambda)?;

    println!("code        {selector} {}", h.spec());
    println!("decoder     {kind}");
    println!("hard        {}", result.hard_decision);
    println!("syndrome    {}", result.syndrome);
    for (t, p) in &result.size_penalties {
        println!("M(Z_{t}(s))  {}", fmt_penalty(*p));
    }
    if let Some(t) = result.chosen_size {
        println!("chosen size {t}");
    }
    println!("flip set    {:?}", result.flip_set);
    println!("penalty     {}", fmt_penalty(result.penalty));
    println!("codeword    {}", result.codeword);
    println!(
        "ops         {} finite ({} adds, {} cmps), {} total",
        result.ops.finite_ops(),
        result.ops.adds_finite,
        result.ops.cmps_finite,
        result.ops.total_ops()
    );
    if !result.valid_codeword {
        println!("warning     no test pattern produced a codeword");
    }

    #[derive(Serialize)]
    struct Record<'a> {
        code: String,
        decoder: DecoderKind,
        #[serde(flatten)]
        result: &'a ebd::DecodeResult,
        codeword: String,
    }
    let record = Record {
        code: selector.to_string(),
        decoder: kind,
        codeword: result.codeword.to_string(),
        result: &result,
    };
    let mut sink = output(&args.out)?;
    serde_json::to_writer(&mut sink, &record)?;
    writeln!(sink)?;
    Ok(())
}

fn fer(args: FerArgs) -> CliResult<()> {
    let mut cfg = RunConfig::new(args.code.selector()?, args.decoder.parse()?, args.ebn0);
    cfg.max_frames = args.frames;
    cfg.max_frame_errors = args.frame_errors;
    cfg.seed = args.seed;
    cfg.chase_positions = args.chase_positions;
    if args.all_zero {
        cfg.message_mode = MessageMode::AllZero;
    }
    let records: Vec<FerRecord> = run_fer(&cfg)?;
    write_records(&records, args.format, &args.out)
}

fn complexity(args: ComplexityArgs) -> CliResult<()> {
    let selector = args.code.selector()?;
    let CodeSelector::ExtendedHamming(m) = selector else {
        return Err(format!("complexity needs an exthamming:m code, got {selector}").into());
    };
    match args.decoder.parse::<DecoderKind>()? {
        DecoderKind::OffOpt => {
            let counts = offopt_constant_counts(m, args.frames as usize, args.seed)?;
            write_records(&[counts], args.format, &args.out)
        }
        DecoderKind::FullOpt => {
            if args.ebn0.is_empty() {
                return Err("fullopt complexity needs --ebn0".into());
            }
            let mut cfg = RunConfig::new(selector, DecoderKind::FullOpt, args.ebn0);
            cfg.max_frames = args.frames;
            cfg.max_frame_errors = args.frame_errors;
            cfg.seed = args.seed;
            write_records(&run_fer(&cfg)?, args.format, &args.out)
        }
        other => Err(format!("complexity is defined for offopt and fullopt, not {other}").into()),
    }
}

fn enumerate(args: EnumerateArgs) -> CliResult<()> {
    let h: ParityCheckMatrix = args.code.selector()?.parity_check()?;
    if args.v >> h.q() != 0 {
        return Err(format!("v = {} does not fit in q = {} bits", args.v, h.q()).into());
    }
    let set = enumerate_blocks(&h, Syndrome(args.v), args.t)?;
    println!("B_{}({}) = {set}", args.t, args.v);
    println!(
        "{} blocks: {} repeat-free, {} with repeats",
        set.len(),
        set.repeat_free().count(),
        set.with_repeats().count()
    );
    Ok(())
}

fn schedule(args: ScheduleArgs) -> CliResult<()> {
    let classes: Vec<bool> = match args.s0 {
        Some(s0) => vec![s0 == 1],
        None => vec![false, true],
    };
    for s0 in classes {
        let sched = build_schedule(args.q, s0)?;
        println!("q={} s0={}: {sched}", args.q, u8::from(s0));
        for step in &sched.steps {
            println!(
                "  {:>2} = {:>2} + {:<2} {:?}{}",
                step.size,
                step.left,
                step.right,
                step.scope,
                if step.symmetric { " (symmetric)" } else { "" }
            );
        }
    }
    Ok(())
}

fn verify() -> CliResult<bool> {
    let report = verify_tables(&GoldenTables::published())?;
    for check in &report.checks {
        println!("{check}");
    }
    Ok(report.all_passed())
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Decode(a) => decode(a)?,
        Command::Fer(a) => fer(a)?,
        Command::Complexity(a) => complexity(a)?,
        Command::Enumerate(a) => enumerate(a)?,
        Command::Schedule(a) => schedule(a)?,
        Command::VerifyTables => return verify(),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
