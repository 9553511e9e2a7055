//! Acceptance criteria. Runs as a plain binary so every criterion prints
//! its PASS/FAIL line; exits nonzero if any criterion fails.

use std::time::Instant;

use ebd::channel::{generate_frame, ChannelConfig, MessageMode};
use ebd::exham::{build_schedule, ExHamDecoder, ExclusionMode};
use ebd::framework::{decode_general, general_op_upper_bound, GeneralDecoder};
use ebd::gf2::{ParityCheckMatrix, Syndrome};
use ebd::oracles::{enumerate_blocks, optimal_penalties_bruteforce, Codebook};
use ebd::sim::{offopt_constant_counts, run_fer, CodeSelector, DecoderKind, FerRecord, GoldenTables, RunConfig};
use ebd::SoftDecoder;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn relative_eq(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn channel(h: &ParityCheckMatrix, ebn0: f64, seed: u64) -> ChannelConfig {
    ChannelConfig::new(ebn0, h.spec().rate(), seed, MessageMode::Random).unwrap()
}

/// 1. decode_general reaches the exhaustive ML penalty on small codes.
fn ml_equivalence() -> Outcome {
    const FRAMES: u64 = 10_000;
    let codes = [
        ParityCheckMatrix::hamming(3).unwrap(),
        ParityCheckMatrix::extended_hamming(3).unwrap(),
        ParityCheckMatrix::hamming(4).unwrap(),
        ParityCheckMatrix::extended_hamming(4).unwrap(),
    ];
    let mut total = 0;
    for h in &codes {
        let g = h.derive_generator();
        let book = Codebook::new(&g).unwrap();
        let mut decoder = GeneralDecoder::new(h.clone()).unwrap();
        for (i, ebn0) in [0.0, 3.0, 6.0].into_iter().enumerate() {
            let cfg = channel(h, ebn0, 100 + i as u64);
            for f in 0..FRAMES {
                let frame = generate_frame(&g, &cfg, f);
                let ours = decoder.decode(&frame.lambda).unwrap().penalty;
                let (_, oracle) = book.ml(&frame.lambda).unwrap();
                if !relative_eq(ours, oracle, 1e-12) {
                    return Err(format!(
                        "{} at {ebn0} dB, frame {f}: general {ours} vs ML {oracle}",
                        h.spec()
                    ));
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} frames over 4 codes x 3 Eb/N0 points, all equal"))
}

/// 2. General, offline-optimised and fully optimised decoders agree.
fn optimizer_equivalence() -> Outcome {
    const FRAMES: u64 = 10_000;
    let mut checked = 0;
    for m in 5..=8 {
        let h = ParityCheckMatrix::extended_hamming(m).unwrap();
        let g = h.derive_generator();
        let cfg = channel(&h, 3.0, 200 + m as u64);
        let mut general = GeneralDecoder::new(h.clone()).unwrap();
        let mut off = ExHamDecoder::new(h.clone(), ExclusionMode::Offline).unwrap();
        let mut full = ExHamDecoder::new(h.clone(), ExclusionMode::Full).unwrap();
        for f in 0..FRAMES {
            let frame = generate_frame(&g, &cfg, f);
            let a = general.decode(&frame.lambda).unwrap().penalty;
            let b = off.decode(&frame.lambda).unwrap().penalty;
            let c = full.decode(&frame.lambda).unwrap().penalty;
            if !(relative_eq(a, b, 1e-12) && relative_eq(a, c, 1e-12)) {
                return Err(format!("n = {}, frame {f}: {a} / {b} / {c}", h.n()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} frames at 3 dB over n = 32..256, all equal"))
}

/// 3. Offline operation counts equal the published constants exactly.
fn offopt_counts() -> Outcome {
    let golden = GoldenTables::published();
    let mut parts = Vec::new();
    for &(m, w, y) in &golden.offopt {
        let c = offopt_constant_counts(m, 100, 300 + m as u64).map_err(|e| e.to_string())?;
        if c.frames_w < 100 || c.frames_y < 100 {
            return Err(format!(
                "n = {}: only {}/{} frames per class",
                c.n, c.frames_w, c.frames_y
            ));
        }
        if c.finite_w != Some(w) || c.finite_y != Some(y) {
            return Err(format!(
                "n = {}: got {:?}/{:?}, expected {w}/{y}",
                c.n, c.finite_w, c.finite_y
            ));
        }
        parts.push(format!("{}: {w}/{y}", c.n));
    }
    Ok(format!("{} (100 frames per class, constant)", parts.join(", ")))
}

/// 4. Schedules reproduce every published row.
fn schedules() -> Outcome {
    let golden = GoldenTables::published();
    for (q, s0, expected) in &golden.schedules {
        let actual = build_schedule(*q, *s0).map_err(|e| e.to_string())?.to_string();
        if &actual != expected {
            return Err(format!("q = {q}, s0 = {s0}: {actual} != {expected}"));
        }
    }
    Ok(format!("{} rows match", golden.schedules.len()))
}

/// 5. The (15,11) worked example.
fn worked_example() -> Outcome {
    let text = include_str!("fixtures/hamming15_example.llr");
    let lambda = ebd::sim::parse_lambda(text).unwrap();
    let h = ParityCheckMatrix::hamming(4).unwrap();
    let out = decode_general(&h, &lambda).map_err(|e| e.to_string())?;
    let finite = out.ops.finite_ops();
    let total = out.ops.total_ops();
    let detail = format!(
        "flip set {:?}, {finite} finite ops (268 +/- 5), {total} total (302 +/- 5)",
        out.flip_set
    );
    if out.flip_set == [1, 5] && finite.abs_diff(268) <= 5 && total.abs_diff(302) <= 5 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fullopt_point(m: usize, ebn0: f64, frames: u64) -> FerRecord {
    let mut cfg = RunConfig::new(CodeSelector::ExtendedHamming(m), DecoderKind::FullOpt, vec![ebn0]);
    cfg.max_frames = frames;
    cfg.max_frame_errors = u64::MAX;
    cfg.seed = 600 + m as u64;
    run_fer(&cfg).unwrap().remove(0)
}

/// 6. Average fully optimised cost near FER 1e-3.
fn fullopt_averages() -> Outcome {
    const FRAMES: u64 = 1_000_000;
    // (m, published average, starting Eb/N0 guess)
    let targets = [(6, 839.0, 5.75), (7, 3231.0, 6.2), (8, 13213.0, 6.55)];
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, published, mut ebn0) in targets {
        // coarse search for an Eb/N0 whose FER is close to 1e-3
        for _ in 0..8 {
            let r = fullopt_point(m, ebn0, 200_000);
            if r.fer > 1.6e-3 {
                ebn0 += 0.1;
            } else if r.fer < 0.65e-3 {
                ebn0 -= 0.1;
            } else {
                break;
            }
        }
        let r = fullopt_point(m, ebn0, FRAMES);
        let in_band = (0.5e-3..=2e-3).contains(&r.fer);
        let deviation = r.avg_ops_finite_nonzero / published - 1.0;
        let pass = in_band && deviation.abs() <= 0.15;
        ok &= pass;
        parts.push(format!(
            "n={} @ {ebn0:.2} dB: FER {:.2e}, avg {:.0} vs {published} ({:+.1}%)",
            1 << m,
            r.fer,
            r.avg_ops_finite_nonzero,
            100.0 * deviation
        ));
    }
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fixed_run(m: usize, decoder: DecoderKind, points: &[f64], frames: u64) -> Vec<FerRecord> {
    let mut cfg = RunConfig::new(CodeSelector::ExtendedHamming(m), decoder, points.to_vec());
    cfg.max_frames = frames;
    cfg.max_frame_errors = u64::MAX;
    cfg.seed = 700 + m as u64;
    run_fer(&cfg).unwrap()
}

/// 7. Chase-II never beats ML; the three EBD variants coincide.
fn fer_ordering() -> Outcome {
    let points = [3.0, 4.0, 5.0];
    let mut compared = 0;
    for m in 6..=8 {
        let ebd = fixed_run(m, DecoderKind::FullOpt, &points, 20_000);
        let chase = fixed_run(m, DecoderKind::Chase2, &points, 20_000);
        for (e, c) in ebd.iter().zip(&chase) {
            if e.frame_errors.min(c.frame_errors) < 100 {
                continue;
            }
            compared += 1;
            if c.fer < e.fer {
                return Err(format!(
                    "n={} @ {} dB: Chase-II {} < EBD {}",
                    1 << m,
                    e.ebn0_db,
                    c.fer,
                    e.fer
                ));
            }
        }
        let frames = if m == 8 { 3_000 } else { 10_000 };
        let runs: Vec<_> = [DecoderKind::General, DecoderKind::OffOpt, DecoderKind::FullOpt]
            .into_iter()
            .map(|d| fixed_run(m, d, &[4.0], frames).remove(0))
            .collect();
        if runs.iter().any(|r| r.frame_errors != runs[0].frame_errors) {
            let errs: Vec<u64> = runs.iter().map(|r| r.frame_errors).collect();
            return Err(format!("n={}: general/offopt/fullopt errors {errs:?}", 1 << m));
        }
    }
    if compared == 0 {
        return Err("no point reached 100 frame errors".into());
    }
    Ok(format!(
        "Chase-II >= EBD at {compared} points with >= 100 errors; EBD variants identical"
    ))
}

/// 8a. Offline exclusion: parity decides emptiness on (8,4).
fn offline_emptiness() -> Result<(), String> {
    let h = ParityCheckMatrix::extended_hamming(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(800);
    let lambdas: Vec<Vec<f64>> = (0..20)
        .map(|_| (0..h.n()).map(|_| rng.random_range(-2.0..2.0)).collect())
        .collect();
    for t in 1..=h.n() {
        for v in 0..1u64 << h.q() {
            let set = enumerate_blocks(&h, Syndrome(v), t).map_err(|e| e.to_string())?;
            let odd_target = v & 1 == 1;
            if v != 0 && odd_target != (t % 2 == 1) && !set.is_empty() {
                return Err(format!("B_{t}({v}) should be empty"));
            }
            if v == 0 && t % 2 == 0 {
                // repeat-free blocks for 0 exist (codewords), but a block
                // with repeats is always at least as cheap
                for lambda in &lambdas {
                    let cost = |b: &[usize]| b.iter().map(|&i| lambda[i].abs()).sum::<f64>();
                    let with = set.with_repeats().map(cost).fold(f64::INFINITY, f64::min);
                    let free = set.repeat_free().map(cost).fold(f64::INFINITY, f64::min);
                    if free < with {
                        return Err(format!("B_{t}(0): repeat-free block beats every repeated one"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// 8b. Sizes above q never improve the syndrome penalty on (7,4).
fn size_q_sufficiency() -> Result<(), String> {
    let h = ParityCheckMatrix::hamming(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    for _ in 0..200 {
        let lambda: Vec<f64> = (0..h.n()).map(|_| rng.random_range(-2.0..2.0)).collect();
        let per_size: Vec<Vec<f64>> = (1..=h.n())
            .map(|t| optimal_penalties_bruteforce(&h, &lambda, t).unwrap())
            .collect();
        for v in 1..1usize << h.q() {
            let up_to_q = per_size[..h.q()].iter().map(|p| p[v]).fold(f64::INFINITY, f64::min);
            let up_to_n = per_size.iter().map(|p| p[v]).fold(f64::INFINITY, f64::min);
            if up_to_n < up_to_q {
                return Err(format!("v = {v}: size > q reached {up_to_n} < {up_to_q}"));
            }
        }
    }
    Ok(())
}

/// 8c. Every stored entry of the optimised decoders is at least the true
/// optimum of its size.
fn penalty_dominance() -> Result<(), String> {
    for m in [3, 4] {
        let h = ParityCheckMatrix::extended_hamming(m).unwrap();
        let g = h.derive_generator();
        let cfg = channel(&h, 2.0, 810 + m as u64);
        for mode in [ExclusionMode::Offline, ExclusionMode::Full] {
            let mut decoder = ExHamDecoder::new(h.clone(), mode).unwrap();
            for f in 0..40 {
                let frame = generate_frame(&g, &cfg, f);
                let lambda = &frame.lambda;
                let (_, trace) = decoder.decode_with_trace(lambda).map_err(|e| e.to_string())?;
                for t in trace.tables.sizes() {
                    let optimum = optimal_penalties_bruteforce(&h, lambda, t).map_err(|e| e.to_string())?;
                    let table = trace.tables.get(t).unwrap();
                    for v in table.finite_indices() {
                        let stored = table.penalty(Syndrome(v));
                        if stored < optimum[v as usize] - 1e-12 {
                            return Err(format!("{} t={t} v={v}: {stored} < {}", h.spec(), optimum[v as usize]));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// 8d. The general decoder never exceeds its worst-case operation bound.
fn op_upper_bound() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(820);
    let mut tested = 0;
    while tested < 300 {
        let q = rng.random_range(2..=6);
        let n = rng.random_range(q + 1..=q + 14);
        let columns: Vec<Syndrome> = (0..n).map(|_| Syndrome(rng.random_range(1..1u64 << q))).collect();
        let Ok(h) = ParityCheckMatrix::from_columns(q, columns, None) else {
            continue;
        };
        let lambda: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        let out = decode_general(&h, &lambda).map_err(|e| e.to_string())?;
        let bound = general_op_upper_bound(q);
        if out.ops.total_ops() > bound {
            return Err(format!("q={q} n={n}: {} ops > bound {bound}", out.ops.total_ops()));
        }
        tested += 1;
    }
    Ok(())
}

/// 8. Invariant suites.
fn invariants() -> Outcome {
    offline_emptiness().map_err(|e| format!("offline emptiness: {e}"))?;
    size_q_sufficiency().map_err(|e| format!("size-q sufficiency: {e}"))?;
    penalty_dominance().map_err(|e| format!("penalty dominance: {e}"))?;
    op_upper_bound().map_err(|e| format!("op bound: {e}"))?;
    Ok("offline emptiness (8,4), size-q sufficiency (7,4), penalty dominance (8,4)/(16,11), op bound q<=6".into())
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture` or a filter;
    // a filter that names no criterion skips the suite.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    if let Some(f) = &filter {
        if !"acceptance".contains(f.as_str()) && !f.starts_with("criterion") {
            return;
        }
    }
    let criteria: [Criterion; 8] = [
        ("ML equivalence", ml_equivalence),
        ("optimizer equivalence", optimizer_equivalence),
        ("OffOpt counts", offopt_counts),
        ("schedules", schedules),
        ("worked example", worked_example),
        ("FullOpt averages", fullopt_averages),
        ("FER ordering", fer_ordering),
        ("invariant suites", invariants),
    ];
    let mut failed = 0;
    // ACCEPTANCE_ONLY=3,5 runs a subset
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut skipped = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.as_ref().is_some_and(|o| !o.contains(&(i + 1))) {
            skipped += 1;
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.1}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.1}s] {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed, {skipped} skipped",
        criteria.len() - failed - skipped
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
