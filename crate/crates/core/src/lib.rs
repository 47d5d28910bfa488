//! Link-level simulator for a downlink where a satellite and a terrestrial
//! base station share users through a reconfigurable intelligent surface,
//! with NOMA superposition on the BS side.
//!
//! The crate models large-scale path loss per link, shadowed Rician and
//! Rayleigh small-scale fading, RIS phase control, and per-user SINR and
//! capacity under successive interference cancellation. A sigmoid weight
//! splits transmit power between the satellite-bound and BS-bound signal as
//! a function of elevation; its steepness can be tuned online by a
//! capacity-tracking feedback loop. Monte Carlo drivers sweep elevation,
//! user count, and controller settings, and a CLI exposes them as
//! reproducible CSV-producing experiments.

// Validation deliberately writes `!(x > 0.0)` style guards: the negated
// comparison is true for NaN, so a NaN input fails validation instead of
// slipping through a direct `x <= 0.0`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod config;
pub mod controller;
pub mod environment;
pub mod error;
pub mod linklevel;
pub mod montecarlo;
pub mod output;
pub mod pathloss;
pub mod rng;

pub use error::{Error, Result};
