//! BPSK over AWGN with reproducible per-frame randomness.
//!
//! Frame `i` of a run with seed `seed` is drawn from
//! `ChaCha8Rng::seed_from_u64(seed)` switched to stream `i`, so any worker
//! can produce any frame independently and the result does not depend on
//! scheduling. Within a frame the draw order is fixed: `k` message bits (one
//! `bool` each, random mode only), then `n` standard normal samples
//! (`rand_distr::StandardNormal`, a ziggurat transform of uniform draws)
//! scaled by `sigma`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::gf2::{BinaryWord, GeneratorMatrix};
use crate::{Error, Result};

/// How transmitted messages are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MessageMode {
    Random,
    AllZero,
}

/// Channel parameters. Build with [`ChannelConfig::new`] to validate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    pub rate: f64,
    pub seed: u64,
    pub message_mode: MessageMode,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64, seed: u64, message_mode: MessageMode) -> Result<Self> {
        check_rate(rate)?;
        if !ebn0_db.is_finite() {
            return Err(Error::Config(format!("Eb/N0 must be finite, got {ebn0_db}")));
        }
        Ok(ChannelConfig {
            ebn0_db,
            rate,
            seed,
            message_mode,
        })
    }

    /// Noise variance `1 / (2 R 10^(EbN0/10))`.
    pub fn sigma2(&self) -> f64 {
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebn0_db / 10.0))
    }

    pub fn sigma(&self) -> f64 {
        self.sigma2().sqrt()
    }
}

fn check_rate(rate: f64) -> Result<()> {
    if rate > 0.0 && rate < 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("code rate must lie in (0, 1), got {rate}")))
    }
}

/// Noise standard deviation for unit-energy BPSK at `ebn0_db` and code rate
/// `rate`.
pub fn ebn0_to_sigma(ebn0_db: f64, rate: f64) -> Result<f64> {
    check_rate(rate)?;
    Ok((1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))).sqrt())
}

/// One transmitted codeword and its received LLRs.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub tx_codeword: BinaryWord,
    /// `2 y / sigma^2` with `y = (1 - 2c) + noise`.
    pub lambda: Vec<f64>,
}

/// The random stream for frame `stream_index`.
pub fn frame_rng(seed: u64, stream_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_index);
    rng
}

/// Draws frame `stream_index` of the run described by `cfg`.
pub fn generate_frame(g: &GeneratorMatrix, cfg: &ChannelConfig, stream_index: u64) -> Frame {
    let spec = g.spec();
    let mut rng = frame_rng(cfg.seed, stream_index);
    let tx_codeword = match cfg.message_mode {
        MessageMode::AllZero => BinaryWord::zeros(spec.n),
        MessageMode::Random => {
            let bits: Vec<u8> = (0..spec.k).map(|_| u8::from(rng.random::<bool>())).collect();
            g.encode(&BinaryWord::from_bits(&bits)).expect("message has length k")
        }
    };
    let sigma2 = cfg.sigma2();
    let sigma = sigma2.sqrt();
    let lambda = (0..spec.n)
        .map(|i| {
            let x = if tx_codeword.get(i) { -1.0 } else { 1.0 };
            let noise: f64 = rng.sample(StandardNormal);
            2.0 * (x + sigma * noise) / sigma2
        })
        .collect();
    Frame { tx_codeword, lambda }
}
