use serde::Serialize;

use crate::error::{domain, QesError, Result};
use crate::potentials::{Family, PotentialSpec, QuantumNumbers};
use crate::quadrature;
use crate::recurrence::{recurrence_for, AnsatzExponent};

/// Where the exponent of the reference function drops below this, the
/// integrand is zero in double precision.
const EXPONENT_CUTOFF: f64 = -700.0;

/// A quasi-exact bound state
/// `psi(r) = r^l (sum_m a_m r^(h m)) exp[f(r)]`, with `a_0 = 1` unless
/// explicitly normalized.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundState {
    pub energy: f64,
    pub coeffs: Vec<f64>,
    pub exponent: AnsatzExponent,
    pub q: QuantumNumbers,
    pub family: Family,
}

impl BoundState {
    /// Runs the forward recurrence at `energy` and checks that it stops at
    /// degree `q.p()`: `|a_{p+1}|, |a_{p+2}| <= tol * max |a_i|`.
    pub fn build(
        spec: &PotentialSpec,
        exponent: AnsatzExponent,
        energy: f64,
        q: QuantumNumbers,
        tol: f64,
    ) -> Result<Self> {
        let rec = recurrence_for(&spec.laurent(), &exponent, energy, q.k())?;
        let p = q.p() as usize;
        let series = rec.series(p + 3);
        let max = series[..=p].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let tail = series[p + 1].abs().max(series[p + 2].abs()) / max;
        if !(tail <= tol) {
            return Err(QesError::NonTerminating(tail));
        }
        Ok(Self {
            energy,
            coeffs: series[..=p].to_vec(),
            exponent,
            q,
            family: spec.family(),
        })
    }

    pub fn step(&self) -> u32 {
        self.exponent.ladder_step()
    }

    /// Polynomial factor and its first two derivatives.
    pub fn polynomial(&self, r: f64) -> (f64, f64, f64) {
        let h = self.step() as i32;
        let (mut p, mut dp, mut ddp) = (0.0, 0.0, 0.0);
        for (m, a) in self.coeffs.iter().enumerate() {
            let e = h * m as i32;
            p += a * r.powi(e);
            if e >= 1 {
                dp += a * f64::from(e) * r.powi(e - 1);
            }
            if e >= 2 {
                ddp += a * f64::from(e * (e - 1)) * r.powi(e - 2);
            }
        }
        (p, dp, ddp)
    }

    pub fn psi(&self, r: f64) -> f64 {
        self.polynomial(r).0 * r.powi(self.q.ell() as i32) * self.exponent.value(r).exp()
    }

    /// `R(r) = r^((D-1)/2) psi(r) = r^((k-1)/2) P(r) exp[f(r)]`.
    pub fn reduced(&self, r: f64) -> f64 {
        self.polynomial(r).0
            * r.powf((f64::from(self.q.k()) - 1.0) / 2.0)
            * self.exponent.value(r).exp()
    }

    /// Radius beyond the maximum of `f` where `f` drops below -700.
    fn cutoff(&self) -> Option<f64> {
        let mut r = 1e-3;
        while r < 1e8 {
            if self.exponent.value(r) < EXPONENT_CUTOFF {
                let (mut lo, mut hi) = (r / 2.0, r);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.exponent.value(mid) < EXPONENT_CUTOFF {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                return Some(hi);
            }
            r *= 2.0;
        }
        None
    }

    /// `int_0^inf R(r)^2 dr`, checked for convergence by doubling the cutoff.
    pub fn norm_squared(&self) -> Result<f64> {
        let integrand = |r: f64| {
            let v = self.reduced(r);
            v * v
        };
        let base = self.cutoff().unwrap_or(50.0);
        let (i1, _) = integrate_split(&integrand, base);
        let (i2, _) = integrate_split(&integrand, 2.0 * base);
        if !(i1.is_finite() && i2.is_finite()) || (i2 - i1).abs() > 1e-10 * i1.abs() || i1 <= 0.0 {
            return Err(QesError::NoConvergence(format!(
                "norm integral changes from {i1:e} to {i2:e} when the cutoff doubles from {base}"
            )));
        }
        Ok(i2)
    }

    /// Copy scaled to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_squared()?.sqrt();
        if !(n > 0.0) {
            return domain("state has zero norm");
        }
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|a| *a /= n);
        Ok(out)
    }
}

fn integrate_split<F: Fn(f64) -> f64>(f: &F, upper: f64) -> (f64, f64) {
    // geometric panels resolve the small-r structure without many subdivisions
    let mut total = 0.0;
    let mut err = 0.0;
    let mut lo = 0.0;
    let mut hi = upper * 1e-6;
    while lo < upper {
        let (v, e) = quadrature::integrate(f, lo, hi.min(upper), 1e-13);
        total += v;
        err += e;
        lo = hi;
        hi *= 4.0;
    }
    (total, err)
}
