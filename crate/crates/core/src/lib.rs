//! Exact analysis of generalized Riemann difference schemes.
//!
//! A scheme `sum A_i f(x + a_i h)` with rational coefficients and nodes is
//! analysed for its order and parity structure, encoded in the group
//! algebra of the nonzero rationals, and compared with other schemes by
//! principal-ideal divisibility of Laurent polynomials over the primes.
//! Negative verdicts can be backed by explicit witness functions.
//!
//! Modules, bottom up:
//!
//! - [`exact`]: rationals, `Q(sqrt 2)`, prime exponent vectors, linear solving
//! - [`schemes`]: difference schemes, moments, parity split, catalog
//! - [`algebra`]: group-algebra elements, Laurent images, exact division
//! - [`classify`]: implication, equivalence and canonical forms
//! - [`witness`]: counterexample functions and difference-quotient probes

pub mod algebra;
pub mod classify;
mod error;
pub mod exact;
mod lexer;
pub mod report;
pub mod schemes;
pub mod witness;

pub use error::{Error, Result};
