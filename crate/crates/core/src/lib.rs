//! Error-building decoding (EBD) for binary linear block codes.
//!
//! EBD performs maximum-likelihood soft-decision decoding using nothing but
//! the parity-check matrix `H`. For a hard-decision word `b` with syndrome
//! `s`, it searches for the cheapest multiset of columns of `H` whose XOR is
//! `s`, where the cost of a column is the magnitude of its channel LLR. Tables
//! of locally optimal blocks are grown level by level: a block of size
//! `t1 + t2` for `v` is the best combination of a size-`t1` block for some
//! `vb` and a size-`t2` block for `vb ^ v`.
//!
//! Crate layout:
//!
//! * [`gf2`]: parity-check and generator matrices, syndromes, hard decisions,
//!   matrix files.
//! * [`framework`]: level tables, the recursive combiners, block
//!   reconstruction and the general decoder.
//! * [`exham`]: the extended-Hamming specialisation with offline and online
//!   exclusion.
//! * [`oracles`]: brute-force references and the Chase-II baseline.
//! * [`channel`]: BPSK over AWGN with reproducible per-frame random streams.
//! * [`accounting`]: floating-point operation tallies.
//! * [`sim`]: Monte-Carlo FER runs, complexity measurements and the
//!   published-table checks used by the CLI.
//!
//! ```
//! use ebd::framework::decode_general;
//! use ebd::gf2::ParityCheckMatrix;
//!
//! let h = ParityCheckMatrix::hamming(3).unwrap();
//! // Bit 2 is the least reliable and is received in error.
//! let lambda = [2.0, 1.5, -0.3, 1.8, 2.2, 1.1, 0.9];
//! let out = decode_general(&h, &lambda).unwrap();
//! assert_eq!(out.flip_set, vec![2]);
//! assert_eq!(h.syndrome(&out.codeword).unwrap().value(), 0);
//! ```

pub mod accounting;
pub mod channel;
mod error;
pub mod exham;
pub mod framework;
pub mod gf2;
pub mod oracles;
pub mod sim;

pub use accounting::OpCounter;
pub use error::{Error, Result};
pub use framework::{DecodeResult, SoftDecoder};
