//! Floquet dynamics of the two-region Lipkin-Meshkov-Glick model.
//!
//! Two equal halves of an all-to-all coupled spin-1/2 system share a uniform
//! Ising interaction `(2J/N)(Σσᶻ)²` for the first half period and receive
//! independent transverse kicks of strength `h1` and `h2` in the second.
//! The crate evolves this model in two ways:
//!
//! * [`semiclassical`]: the thermodynamic-limit stroboscopic map for the two
//!   regional Bloch vectors, plus the drive-perturbation decorrelator.
//! * [`quantum`]: exact finite-N evolution inside the maximal collective-spin
//!   sector of each region, the fidelity OTOC, and a full Hilbert-space
//!   reference in [`quantum::oracle`] for small N.
//!
//! [`diagnostics`] turns stroboscopic series into spectra and assigns
//! discrete time-crystal orders; [`sweep`] runs deterministic parallel
//! parameter sweeps that write delimited text files; [`cli`] is the command
//! line front end used by the `lmg-floquet` binary.

pub mod cli;
pub mod config;
pub mod diagnostics;
mod error;
pub mod format;
mod initial;
pub mod quantum;
pub mod semiclassical;
pub mod spin;
pub mod sweep;
mod window;

pub use error::{Error, Result};
pub use initial::InitialAngles;
pub use window::CycleWindow;
