//! Gazeau–Klauder coherent states for discrete spectra, specialised to
//! position-dependent-mass nonlinear oscillators.
//!
//! The crate is organised bottom-up: [`specfun`] supplies the special
//! functions, [`spectrum`] the level sequences, [`coherent`] builds states,
//! [`statistics`] and [`dynamics`] analyse them, [`wavefunctions`] works in
//! position space and [`cli`] wires everything to the `gkstates` binary.

pub mod cli;
pub mod coherent;
pub mod dynamics;
pub mod error;
pub mod specfun;
pub mod spectrum;
pub mod statistics;
pub mod wavefunctions;

pub use coherent::{build_state, CoherentState, Radius};
pub use error::{Error, Result};
pub use spectrum::{ShapeInvarianceChain, Spectrum, SpectrumModel};
