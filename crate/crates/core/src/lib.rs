//! Simulation and fault-tolerance analysis for the `[4,2,2]` error-detecting code.
//!
//! The crate is organised around the experiment pipeline:
//!
//! - [`sim`]: dense statevector simulation of few-qubit circuits, exact outcome
//!   distributions, seeded shot sampling and a line-based circuit text format.
//! - [`code422`]: codewords, encoder circuits, the logical gate set, decoding and
//!   post-selection.
//! - [`noise`]: stochastic Pauli gate faults, preparation and readout bit-flips,
//!   coherent rotation insertion, the depolarizing mixture and the Monte-Carlo
//!   trajectory engine.
//! - [`analytics`]: trace distance, closed-form error-model predictions and
//!   worst-case bounds.
//! - [`ftcheck`]: exhaustive single-fault injection against the fault-tolerance
//!   definition (no single fault may produce an undetected logical error).
//! - [`experiments`]: random logical sequences, paired uncoded/coded runs, sweeps
//!   and CSV/JSON persistence.
//! - [`cli`]: the command-line front end used by the `qec422` binary.
//!
//! Runnable walkthroughs of each capability live in the crate's `examples/`
//! directory.

pub mod analytics;
pub mod cli;
pub mod code422;
mod error;
pub mod experiments;
pub mod ftcheck;
pub mod noise;
pub mod sim;

pub use error::{Error, ParseError, Result};
