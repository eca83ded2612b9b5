//! The substitution `r = gamma rho^2 / 2`, `psi = chi / rho`, which maps a
//! `D`-dimensional CLH problem at energy `E < 0` onto a sextic oscillator in
//! `D' = 2D - 4` dimensions with angular momentum `L = 2l + 1`.
//!
//! With `gamma = 1/sqrt(-E)` the image couplings are `mu = 1`,
//! `lambda = b / (2(-E)^(3/2))`, `eta = c / (4E^2)` and the image eigenvalue
//! is `E_hat = 2a / sqrt(-E)`. On the sextic side `k' = D' + 2L = 2k - 2`.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::potentials::{ClhCouplings, PotentialSpec, QuantumNumbers, SexticCouplings};
use crate::solver::{self, ConstraintReport, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityImage {
    pub sextic: SexticCouplings,
    pub dim_prime: u32,
    pub ell_prime: u32,
    pub gamma: f64,
    pub e_hat: f64,
}

impl DualityImage {
    pub fn k_prime(&self) -> u32 {
        self.dim_prime + 2 * self.ell_prime
    }

    pub fn quantum_numbers(&self, p: u32) -> Result<QuantumNumbers> {
        QuantumNumbers::new(i64::from(self.dim_prime), i64::from(self.ell_prime), i64::from(p))
    }
}

pub fn clh_to_sextic(c: &ClhCouplings, energy: f64, q: &QuantumNumbers) -> Result<DualityImage> {
    if !(energy < 0.0) {
        return domain(format!("duality needs E < 0, got E = {energy}"));
    }
    if q.dim() < 3 {
        return domain(format!("duality needs D >= 3 (D' = 2D - 4 >= 2), got D = {}", q.dim()));
    }
    let minus_e = -energy;
    let root = minus_e.sqrt();
    Ok(DualityImage {
        sextic: SexticCouplings {
            mu: 1.0,
            lambda: c.b / (2.0 * minus_e * root),
            eta: c.c / (4.0 * minus_e * minus_e),
        },
        dim_prime: 2 * q.dim() - 4,
        ell_prime: 2 * q.ell() + 1,
        gamma: 1.0 / root,
        e_hat: 2.0 * c.a / root,
    })
}

/// Preimage of a sextic problem. The forward map absorbs one scale, so the
/// CLH energy `gauge_energy` must be supplied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClhPreimage {
    pub couplings: ClhCouplings,
    pub dim: u32,
    pub ell: u32,
}

pub fn sextic_to_clh(
    s: &SexticCouplings,
    e_hat: f64,
    gauge_energy: f64,
    dim_prime: u32,
    ell_prime: u32,
) -> Result<ClhPreimage> {
    if s.mu != 1.0 {
        return domain(format!("inverse duality needs mu = 1, got mu = {}", s.mu));
    }
    if !(gauge_energy < 0.0) {
        return domain(format!("gauge energy must be negative, got {gauge_energy}"));
    }
    if dim_prime < 2 || !dim_prime.is_multiple_of(2) {
        return domain(format!("D' = {dim_prime} must be even and >= 2"));
    }
    if ell_prime % 2 != 1 {
        return domain(format!("L = {ell_prime} must be odd"));
    }
    let minus_e = -gauge_energy;
    let root = minus_e.sqrt();
    Ok(ClhPreimage {
        couplings: ClhCouplings {
            a: e_hat * root / 2.0,
            b: 2.0 * s.lambda * minus_e * root,
            c: 4.0 * s.eta * minus_e * minus_e,
        },
        dim: (dim_prime + 4) / 2,
        ell: (ell_prime - 1) / 2,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReport {
    pub clh_energy: f64,
    pub image: DualityImage,
    /// Determinant levels of the image problem at the same degree.
    pub sextic_levels: Vec<f64>,
    /// Level closest to `E_hat`.
    pub matched_level: f64,
    pub deviation: f64,
    pub termination: ConstraintReport,
}

/// Solves the CLH state of degree `q.p()`, maps it, solves the image by its
/// determinant and compares with `E_hat`.
pub fn verify_duality(c: &ClhCouplings, q: &QuantumNumbers) -> Result<DualityReport> {
    let p = q.p();
    let state = solver::clh_wavefunction(c, q)?;
    let image = clh_to_sextic(c, state.energy, q)?;
    let termination = solver::sextic_termination_constraint(p, &image.sextic, image.k_prime())?;
    let q_prime = image.quantum_numbers(p)?;
    let levels = if image.sextic.eta > 0.0 {
        let spec = PotentialSpec::sextic(image.sextic.mu, image.sextic.lambda, image.sextic.eta)?;
        solver::solve(&spec, &q_prime, &Tolerances::default())?
            .into_iter()
            .map(|s| s.energy)
            .collect()
    } else {
        // c = 0 maps to a pure oscillator with mu = 1
        let spec = PotentialSpec::harmonic(image.sextic.mu)?;
        solver::determinant_energy_roots(&spec, &q_prime)?.roots
    };
    let matched = levels
        .iter()
        .copied()
        .min_by(|x, y| (x - image.e_hat).abs().total_cmp(&(y - image.e_hat).abs()))
        .unwrap_or(f64::NAN);
    Ok(DualityReport {
        clh_energy: state.energy,
        deviation: (matched - image.e_hat).abs(),
        matched_level: matched,
        sextic_levels: levels,
        termination,
        image,
    })
}
