//! Local hidden-variable models whose observables take complex or quaternion
//! values, checked against exact enumeration and a small quantum oracle.
//!
//! - [`chsh`]: complex-valued CHSH models, the 2√2 bound and a phase optimizer
//! - [`ghz`]: quaternion-valued GHZ assignments, condition sets and their
//!   x-product
//! - [`qubit`]: the eight-point hidden-variable qubit with signed weights and
//!   permutation evolution
//! - [`oracle`]: dense complex matrices for the quantum-mechanical reference
//!   values
//! - [`quaternion`]: the exact group Q8 and floating quaternions
//! - [`cli`] and [`report`]: the `fieldlhv` command-line runner

pub mod chsh;
pub mod cli;
pub mod error;
pub mod ghz;
pub mod oracle;
pub mod quaternion;
pub mod qubit;
pub mod report;

pub use error::{Error, Result};
pub use quaternion::{q8_mul, q8_product, Basis, Phase, Q8Element, Quaternion, Sign};
