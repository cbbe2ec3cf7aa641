//! Fault-tolerant coded matrix multiplication.
//!
//! A master splits `A` and `B` into blocks, hands each of `N` workers a
//! polynomial-coded pair, and collects `A~_i^T B~_i`. Stacking the
//! vectorized worker outputs gives an `L x N` word of an interleaved
//! generalized Reed-Solomon code, so a faulty worker is one corrupted
//! column. Decoding all `L` rows collaboratively tolerates up to
//! `floor(L (N-K) / (L+1))` faulty workers, well past the classical
//! `floor((N-K)/2)`.
//!
//! ```
//! use polyirs::harness::{demo_matmul, DemoConfig};
//! use polyirs::field::FieldSpec;
//!
//! // m = n = 2 blocks, 12 workers of which 6 are faulty; L = 4 gives t_max = 6.
//! let cfg = DemoConfig::new(FieldSpec::Prime { p: 257 }, 2, 2, 12, 6, 7);
//! let report = demo_matmul(&cfg).unwrap();
//! assert!(report.recovered);
//! ```
//!
//! Modules, bottom up: [`field`] (GF(p) and tolerance-aware reals),
//! [`grs`], [`polycode`] (encoding, workers, recovery), [`errmodel`],
//! [`decoder`] (CPDA and shift-register synthesis) and [`harness`]
//! (Monte Carlo studies and the demo).

pub mod decoder;
pub mod errmodel;
pub mod error;
pub mod field;
pub mod grs;
pub mod harness;
pub mod matrix;
pub mod polycode;

pub use decoder::{cpda_decode, mssr_decode, DecodeOutcome, DecoderKind, FailureReason};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, RealField, ToleranceProfile};
pub use grs::GrsCode;
pub use matrix::Matrix;
