//! Exact construction and analysis of polar-code synthetic channels.
//!
//! Binary-input channels are represented by their likelihood ratio profiles
//! — exact rational distributions of the posterior — and, for symmetric
//! channels, by canonical switches of binary symmetric sub-channels. The
//! kernel transforms become algebra on those forms, so every synthetic
//! channel of the recursive construction is computed exactly: no density
//! quantization, no floating-point drift in the reliability ordering.
//!
//! The crate bundles:
//!
//! * [`channel`] — profiles, canonical switches, explicit transition tables
//!   and the reliability functionals;
//! * [`algebra`] — the `⋆`/`⋄` scalar operations, both transform routes,
//!   multi-step compounds, closed-form expansions and counting bounds;
//! * [`construct`] — full synthesis tables, frozen-set selection and a
//!   brute-force explicit-channel oracle;
//! * [`codec`] — generator matrix, butterfly encoder, successive-cancellation
//!   decoder and a Monte-Carlo harness;
//! * [`spec`] — the textual channel grammar used by the CLI and bindings;
//! * [`verify`] — self-check suites wired to the `verify` CLI subcommand.

pub mod algebra;
pub mod channel;
pub mod codec;
pub mod construct;
pub mod error;
pub mod pattern;
pub mod rational;
pub mod spec;
pub mod verify;

pub use channel::{BscMixture, Lrp, Metrics, TransitionMatrix};
pub use error::{Error, Result};
pub use pattern::PatternIndex;
pub use rational::Rational;
