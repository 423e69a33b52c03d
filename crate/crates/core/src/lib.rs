//! Numerical kernel for a quasistable two-outcome market model.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: log-gamma, digamma, its inverse and the digamma gap
//!   `Ψ(G+k) − Ψ(k+1)` with an independent quadrature route.
//! * [`entropy`]: log-space multiplicity counts (Bose, Boltzmann), entropy
//!   symbols over finite atomic measures and the Bose/Fermi relative entropies.
//! * [`occupancy`]: implicit digamma equations for Gibbs, Bose and Fermi
//!   occupation numbers, statistics entropies and the free energy.
//! * [`deposit`]: the pyramid vs. strong-banks allocation model, its critical
//!   prices, large-`N` limits and phase labels.
//! * [`oracle`]: exhaustive integer ground truth used by the test suites.

pub mod deposit;
pub mod entropy;
mod error;
pub mod occupancy;
pub mod oracle;
mod quadrature;
mod roots;
pub mod specfun;

pub use error::{Error, Result};
