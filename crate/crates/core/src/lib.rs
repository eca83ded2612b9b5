//! Quasi-exactly-solvable radial Schrodinger problems in `D` dimensions.
//!
//! States of the Coulomb-plus-linear-plus-harmonic (CLH) potential
//! `-a/r + b r + c r^2` and of the sextic oscillator
//! `mu r^2 + lambda r^4 + eta r^6` are built from a polynomial times an
//! exponential. Matching powers gives a three-term recurrence; the series
//! stops when one coefficient vanishes and the continuant of the remaining
//! ones is zero. Units are `hbar = m = 1` and dimension and angular
//! momentum enter only through `k = D + 2l`.
//!
//! ```
//! use qes_core::{solver, ClhCouplings, QuantumNumbers};
//!
//! let c = ClhCouplings { a: 4.0, b: 1.0, c: 1.0 / 32.0 };
//! let q = QuantumNumbers::new(3, 0, 0).unwrap();
//! let state = solver::clh_wavefunction(&c, &q).unwrap();
//! assert_eq!(state.energy, -7.625);
//! ```
//!
//! The [`oracle`] module solves the same radial equation by finite
//! differences and is used to check the closed forms.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod duality;
pub mod error;
pub mod oracle;
pub mod potentials;
pub mod quadrature;
pub mod recurrence;
pub mod solver;
pub mod tables;
pub mod tridiag;

pub use duality::{clh_to_sextic, sextic_to_clh, verify_duality, DualityImage, DualityReport};
pub use error::{QesError, Result};
pub use oracle::GridSpec;
pub use potentials::{
    ClhCouplings, Family, Potential, PotentialSpec, QuantumNumbers, SexticCouplings,
};
pub use recurrence::{AnsatzExponent, ExponentForm, Recurrence};
pub use solver::{BoundState, ConstraintReport, RootReport, Tolerances};
