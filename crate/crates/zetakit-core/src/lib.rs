//! High-precision evaluation of zeta constants by independent routes, plus
//! the Diophantine side: certified continued fractions, best-approximation
//! checks, Dirichlet-kernel sums and sine-nonvanishing probes.
//!
//! The crate is `no_std` (with `alloc`); all I/O, file formats and the CLI
//! live in the companion `zetakit-cli` crate.
//!
//! Organization:
//!
//! * [`rational`] — exact Bernoulli/Euler numbers and formula coefficients
//! * [`real`] — arbitrary-precision reals with certified error bounds
//! * [`zeta`] — zeta constants by direct summation, Euler formula, and
//!   Lerch/Ramanujan series; pi-representation splits
//! * [`diophantine`] — certified continued fractions and approximation checks
//! * [`equidist`] — Dirichlet-kernel/Weyl-sum experiments and sine probes

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod diophantine;
pub mod equidist;
pub mod error;
pub mod rational;
pub mod real;
pub mod zeta;

pub use error::{Error, Result};
pub use rational::BigRational;
pub use real::HReal;
