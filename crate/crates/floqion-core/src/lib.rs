//! Simulation core for Floquet-dressed long-range XY spin chains as realized
//! in trapped-ion crystals.
//!
//! The pipeline mirrors the experiment: trapping potentials determine ion
//! positions and transverse phonon modes ([`trap`]), phonon-mediated Raman
//! couplings produce the bare Ising bond matrix ([`coupling`]), a site-resolved
//! periodic drive dresses the bonds into an SSH-like dimerized pattern
//! ([`floquet`]), and spin states are evolved exactly under the effective XY
//! model or the full time-dependent Hamiltonian ([`dynamics`]), with a
//! free-fermion baseline ([`fermion`]) and derived observables ([`analysis`]).
//!
//! The crate is `no_std` (alloc required); all I/O, file formats, and the
//! scenario CLI live in the companion `floqion` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod bessel;
pub mod constants;
pub mod coupling;
pub mod dynamics;
mod error;
pub mod fermion;
pub mod floquet;
pub mod integrate;
pub mod linalg;
pub mod presets;
pub mod sparse;
pub mod trap;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
