//! Shared inputs for the benchmarks.

use qes_core::{ClhCouplings, QuantumNumbers, SexticCouplings};

/// Table 1, row 1.
pub fn clh_row1() -> (ClhCouplings, QuantumNumbers) {
    (
        ClhCouplings { a: 4.0, b: 1.0, c: 1.0 / 32.0 },
        QuantumNumbers::new(3, 0, 0).expect("valid quantum numbers"),
    )
}

/// A sextic oscillator with `mu` chosen so the series stops at degree `p`.
pub fn sextic_on_surface(p: u32, k: u32) -> SexticCouplings {
    let (lambda, eta) = (2.0, 0.5);
    let mu = qes_core::solver::sextic_mu_for_termination(p, lambda, eta, k)
        .expect("eta > 0");
    SexticCouplings { mu, lambda, eta }
}
