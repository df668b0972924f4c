//! Anti-Stokes optical cryocooling of NV⁻ and SiV⁻ doped diamond microcrystals.
//!
//! * [`spectra`]: cross-section spectra, Füchtbauer–Ladenburg and McCumber
//!   conversions, absolute absorption calibration, the bundled NV/SiV data.
//! * [`cooling`]: two-level cooling power and equilibrium temperature change.
//! * [`brownian`]: cold/hot Brownian motion observables in a liquid trap.
//! * [`scenarios`]: named parameter sets and sweep drivers producing tables.
//! * [`cli`]: the `cryocool` command-line front end.
//!
//! Everything is SI internally (meters, watts, kelvin).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod brownian;
pub mod cli;
pub mod constants;
pub mod cooling;
pub mod datapath;
pub mod error;
pub mod scenarios;
pub mod spectra;

pub use error::{Error, Result};
