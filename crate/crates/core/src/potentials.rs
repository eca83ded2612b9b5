//! Potential families, quantum numbers and the reduced radial function.
//!
//! Dimension and angular momentum enter the reduced radial equation only
//! through `k = D + 2l`; the centrifugal coefficient is `(k-1)(k-3)/4`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Spatial dimension, angular momentum and polynomial truncation index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    dim: u32,
    ell: u32,
    p: u32,
}

impl QuantumNumbers {
    pub fn new(dim: i64, ell: i64, p: i64) -> Result<Self> {
        k_param(dim, ell)?;
        if p < 0 {
            return domain(format!("truncation index p = {p} must be >= 0"));
        }
        Ok(Self {
            dim: dim as u32,
            ell: ell as u32,
            p: p as u32,
        })
    }

    /// Representative `(D = k, l = 0)` for problems specified by `k` alone.
    ///
    /// Energies only see `k`, so any pair with the same `D + 2l` is equivalent.
    pub fn from_k(k: i64, p: i64) -> Result<Self> {
        Self::new(k, 0, p)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.dim + 2 * self.ell
    }

    pub fn with_p(self, p: u32) -> Self {
        Self { p, ..self }
    }
}

/// `k = D + 2l`.
pub fn k_param(dim: i64, ell: i64) -> Result<u32> {
    if dim < 2 {
        return domain(format!("spatial dimension D = {dim} must be >= 2"));
    }
    if ell < 0 {
        return domain(format!("angular momentum l = {ell} must be >= 0"));
    }
    let k = dim + 2 * ell;
    u32::try_from(k).or_else(|_| domain(format!("k = {k} out of range")))
}

/// Coulomb + linear + harmonic couplings, `V = -a/r + b r + c r^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClhCouplings {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Sextic oscillator couplings, `V = mu r^2 + lambda r^4 + eta r^6`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SexticCouplings {
    pub mu: f64,
    pub lambda: f64,
    pub eta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Clh,
    Sextic,
    Harmonic,
    Coulomb,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Clh => "clh",
            Family::Sextic => "sextic",
            Family::Harmonic => "harmonic",
            Family::Coulomb => "coulomb",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    /// `c > 0`.
    Clh(ClhCouplings),
    /// `eta > 0`.
    Sextic(SexticCouplings),
    /// `V = mu r^2`, `mu > 0`.
    Harmonic { mu: f64 },
    /// `V = -z / r`, `z > 0`.
    Coulomb { z: f64 },
}

/// A validated potential. Degenerate couplings are re-tagged to the
/// dedicated family at construction, so the tag always matches the record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    kind: Potential,
}

fn finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} = {x} is not finite"))
    }
}

impl PotentialSpec {
    /// Confining CLH potential. `c = 0, b = 0` becomes Coulomb with `z = a`;
    /// `c = 0, b != 0` (the Cornell case) is rejected.
    pub fn clh(a: f64, b: f64, c: f64) -> Result<Self> {
        finite("a", a)?;
        finite("b", b)?;
        finite("c", c)?;
        if c < 0.0 {
            return domain(format!("harmonic strength c = {c} must be >= 0"));
        }
        if c == 0.0 {
            if b != 0.0 {
                return domain("c = 0 with b != 0 (Cornell potential) is not quasi-exactly solvable here");
            }
            return Self::coulomb(a);
        }
        Ok(Self {
            kind: Potential::Clh(ClhCouplings { a, b, c }),
        })
    }

    /// Sextic oscillator. `eta = 0, lambda = 0` becomes harmonic; `eta = 0,
    /// lambda != 0` is rejected.
    pub fn sextic(mu: f64, lambda: f64, eta: f64) -> Result<Self> {
        finite("mu", mu)?;
        finite("lambda", lambda)?;
        finite("eta", eta)?;
        if eta < 0.0 {
            return domain(format!("sextic strength eta = {eta} must be >= 0"));
        }
        if eta == 0.0 {
            if lambda != 0.0 {
                return domain("eta = 0 with lambda != 0 has no normalizable ansatz");
            }
            return Self::harmonic(mu);
        }
        Ok(Self {
            kind: Potential::Sextic(SexticCouplings { mu, lambda, eta }),
        })
    }

    pub fn harmonic(mu: f64) -> Result<Self> {
        finite("mu", mu)?;
        if mu <= 0.0 {
            return domain(format!("harmonic strength mu = {mu} must be > 0"));
        }
        Ok(Self {
            kind: Potential::Harmonic { mu },
        })
    }

    /// Harmonic oscillator with frequency `omega`, i.e. `mu = omega^2 / 2`.
    pub fn harmonic_omega(omega: f64) -> Result<Self> {
        if !(omega > 0.0) {
            return domain(format!("frequency omega = {omega} must be > 0"));
        }
        Self::harmonic(0.5 * omega * omega)
    }

    pub fn coulomb(z: f64) -> Result<Self> {
        finite("z", z)?;
        if z <= 0.0 {
            return domain(format!("Coulomb charge z = {z} must be > 0"));
        }
        Ok(Self {
            kind: Potential::Coulomb { z },
        })
    }

    pub fn kind(&self) -> &Potential {
        &self.kind
    }

    pub fn family(&self) -> Family {
        match self.kind {
            Potential::Clh(_) => Family::Clh,
            Potential::Sextic(_) => Family::Sextic,
            Potential::Harmonic { .. } => Family::Harmonic,
            Potential::Coulomb { .. } => Family::Coulomb,
        }
    }

    /// `V(r)`; `r` must be positive.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return domain(format!("radius r = {r} must be > 0"));
        }
        Ok(self.value(r))
    }

    /// Unchecked `V(r)` for internal callers that already hold `r > 0`.
    pub(crate) fn value(&self, r: f64) -> f64 {
        match self.kind {
            Potential::Clh(ClhCouplings { a, b, c }) => -a / r + b * r + c * r * r,
            Potential::Sextic(SexticCouplings { mu, lambda, eta }) => {
                let r2 = r * r;
                r2 * (mu + r2 * (lambda + r2 * eta))
            }
            Potential::Harmonic { mu } => mu * r * r,
            Potential::Coulomb { z } => -z / r,
        }
    }

    /// Coefficients of `V` as a Laurent polynomial: index `i` holds the
    /// coefficient of `r^(i-1)`, covering `r^-1 ..= r^6`.
    pub fn laurent(&self) -> [f64; 8] {
        let mut v = [0.0; 8];
        match self.kind {
            Potential::Clh(ClhCouplings { a, b, c }) => {
                v[0] = -a;
                v[2] = b;
                v[3] = c;
            }
            Potential::Sextic(SexticCouplings { mu, lambda, eta }) => {
                v[3] = mu;
                v[5] = lambda;
                v[7] = eta;
            }
            Potential::Harmonic { mu } => v[3] = mu,
            Potential::Coulomb { z } => v[0] = -z,
        }
        v
    }

    /// True when `V` grows without bound at large `r`.
    pub fn is_confining(&self) -> bool {
        !matches!(self.kind, Potential::Coulomb { .. })
    }
}

/// `R(r) = r^((D-1)/2) psi(r)`.
pub fn reduce_radial(psi: f64, r: f64, dim: u32) -> Result<f64> {
    Ok(psi * reduction_factor(r, dim)?)
}

/// Inverse of [`reduce_radial`].
pub fn unreduce_radial(reduced: f64, r: f64, dim: u32) -> Result<f64> {
    Ok(reduced / reduction_factor(r, dim)?)
}

fn reduction_factor(r: f64, dim: u32) -> Result<f64> {
    if !(r > 0.0) {
        return domain(format!("radius r = {r} must be > 0"));
    }
    Ok(r.powf((f64::from(dim) - 1.0) / 2.0))
}
