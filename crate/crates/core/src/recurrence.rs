//! Ansatz exponents and the three-term recurrences they induce.
//!
//! The reduced radial function is written as
//! `R(r) = exp[f(r)] * sum_m a_m r^(h m + (k-1)/2)`, with `f` one of three
//! exponent forms and `h` the ladder step (1 for the Coulomb-type exponent,
//! 2 for the even ones). Substituting into
//! `R'' - (k-1)(k-3)/(4r^2) R + 2(E - V) R = 0` and matching powers gives
//!
//! ```text
//! A_{m-1} a_{m-1} + B_m a_m + C_{m+1} a_{m+1} = 0,   m >= 0,  A_{-1} = 0.
//! ```
//!
//! All families go through [`PowerMatching`], which expands the operator
//! acting on a single power `r^(j + (k-1)/2)` symbolically. The coefficients
//! are never transcribed per family.

use serde::{Deserialize, Serialize};

use crate::error::{domain, QesError, Result};
use crate::potentials::{ClhCouplings, SexticCouplings};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExponentForm {
    /// `f = alpha r^2 / 2 + beta r`
    QuadLinear,
    /// `f = alpha r^2 / 2 + beta r^4 / 4`
    QuartQuad,
    /// `f = alpha r^2 / 2`
    QuadOnly,
}

impl ExponentForm {
    /// Spacing between successive powers of the polynomial factor.
    pub fn ladder_step(self) -> u32 {
        match self {
            ExponentForm::QuadLinear => 1,
            ExponentForm::QuartQuad | ExponentForm::QuadOnly => 2,
        }
    }
}

/// The reference-function exponent `f(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnsatzExponent {
    alpha: f64,
    beta: f64,
    form: ExponentForm,
}

impl AnsatzExponent {
    /// Rejects exponents whose highest-power coefficient is not negative.
    pub fn new(alpha: f64, beta: f64, form: ExponentForm) -> Result<Self> {
        let e = Self::non_normalizable(alpha, beta, form);
        if !e.is_normalizable() {
            return domain(format!(
                "exponent ({alpha}, {beta}, {form:?}) does not decay at large r"
            ));
        }
        Ok(e)
    }

    /// Any sign branch, including the growing one. Only for probing the
    /// sign-blind parts of the method.
    pub fn non_normalizable(alpha: f64, beta: f64, form: ExponentForm) -> Self {
        let beta = if form == ExponentForm::QuadOnly { 0.0 } else { beta };
        Self { alpha, beta, form }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn form(&self) -> ExponentForm {
        self.form
    }

    pub fn ladder_step(&self) -> u32 {
        self.form.ladder_step()
    }

    /// Coefficients `f_0 ..= f_4` of `f(r) = sum f_i r^i`.
    pub fn power_coefficients(&self) -> [f64; 5] {
        let mut f = [0.0; 5];
        f[2] = 0.5 * self.alpha;
        match self.form {
            ExponentForm::QuadLinear => f[1] = self.beta,
            ExponentForm::QuartQuad => f[4] = 0.25 * self.beta,
            ExponentForm::QuadOnly => {}
        }
        f
    }

    /// The coefficient of the highest power present must be negative.
    pub fn is_normalizable(&self) -> bool {
        self.power_coefficients()
            .iter()
            .rev()
            .find(|c| **c != 0.0)
            .is_some_and(|c| *c < 0.0)
    }

    pub fn value(&self, r: f64) -> f64 {
        let f = self.power_coefficients();
        r * (f[1] + r * (f[2] + r * (f[3] + r * f[4])))
    }

    pub fn derivative(&self, r: f64) -> f64 {
        let f = self.power_coefficients();
        f[1] + r * (2.0 * f[2] + r * (3.0 * f[3] + r * 4.0 * f[4]))
    }

    pub fn second_derivative(&self, r: f64) -> f64 {
        let f = self.power_coefficients();
        2.0 * f[2] + r * (6.0 * f[3] + r * 12.0 * f[4])
    }
}

/// `alpha = -sqrt(2c)`, `beta = -b / sqrt(2c)`.
pub fn clh_exponent(c: &ClhCouplings) -> Result<AnsatzExponent> {
    if !(c.c > 0.0) {
        return domain(format!("CLH exponent needs c > 0, got c = {}", c.c));
    }
    let s = (2.0 * c.c).sqrt();
    Ok(AnsatzExponent {
        alpha: -s,
        beta: -c.b / s,
        form: ExponentForm::QuadLinear,
    })
}

/// `beta = -sqrt(2 eta)`, `alpha = -lambda / sqrt(2 eta)`.
pub fn sextic_exponent(s: &SexticCouplings) -> Result<AnsatzExponent> {
    if !(s.eta > 0.0) {
        return domain(format!("sextic exponent needs eta > 0, got eta = {}", s.eta));
    }
    let root = (2.0 * s.eta).sqrt();
    Ok(AnsatzExponent {
        alpha: -s.lambda / root,
        beta: -root,
        form: ExponentForm::QuartQuad,
    })
}

/// `alpha = -sqrt(2 mu)`.
pub fn harmonic_exponent(mu: f64) -> Result<AnsatzExponent> {
    if !(mu > 0.0) {
        return domain(format!("harmonic exponent needs mu > 0, got mu = {mu}"));
    }
    Ok(AnsatzExponent {
        alpha: -(2.0 * mu).sqrt(),
        beta: 0.0,
        form: ExponentForm::QuadOnly,
    })
}

/// Pure Coulomb: `alpha = 0`, `beta = -2z / (2n + k - 1)`; the decay rate
/// depends on the level.
pub fn coulomb_exponent(z: f64, n: u32, k: u32) -> Result<AnsatzExponent> {
    if !(z > 0.0) {
        return domain(format!("Coulomb exponent needs z > 0, got z = {z}"));
    }
    Ok(AnsatzExponent {
        alpha: 0.0,
        beta: -2.0 * z / f64::from(2 * n + k - 1),
        form: ExponentForm::QuadLinear,
    })
}

/// `c0 + c1 j + c2 j^2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Quadratic {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Quadratic {
    pub fn eval(&self, j: f64) -> f64 {
        self.c0 + j * (self.c1 + j * self.c2)
    }

    fn is_negligible(&self, scale: &Quadratic, rel: f64) -> bool {
        self.c0.abs() <= rel * scale.c0
            && self.c1.abs() <= rel * scale.c1
            && self.c2.abs() <= rel * scale.c2
    }
}

const MIN_SHIFT: i32 = -2;
const MAX_SHIFT: i32 = 6;
const N_SHIFTS: usize = (MAX_SHIFT - MIN_SHIFT + 1) as usize;
const VANISHING_REL: f64 = 1e-12;

/// Symbolic action of the conjugated radial operator on one power.
///
/// With `u = r^(j+s)`, `s = (k-1)/2`, the operator
/// `u'' + 2 f' u' + (f'' + f'^2 + 2E - 2V - s(s-1)/r^2) u`
/// yields `sum_d S_d(j) r^(j+s+d)`; each `S_d` is quadratic in `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerMatching {
    shifts: [Quadratic; N_SHIFTS],
    scales: [Quadratic; N_SHIFTS],
}

impl PowerMatching {
    /// `potential` uses the layout of [`crate::PotentialSpec::laurent`].
    pub fn new(potential: &[f64; 8], exponent: &AnsatzExponent, energy: f64, k: u32) -> Self {
        let f = exponent.power_coefficients();
        let k = f64::from(k);

        // Q(r) = f'' + f'^2 + 2E - 2V, stored as coefficients of r^d
        let mut q = [0.0; N_SHIFTS];
        let mut q_scale = [0.0f64; N_SHIFTS];
        let mut add = |d: i32, x: f64| {
            let i = (d - MIN_SHIFT) as usize;
            q[i] += x;
            q_scale[i] += x.abs();
        };
        for i in 2..=4 {
            add(i as i32 - 2, (i * (i - 1)) as f64 * f[i]);
        }
        for i in 1..=4 {
            for j in 1..=4 {
                add((i + j) as i32 - 2, (i * j) as f64 * f[i] * f[j]);
            }
        }
        add(0, 2.0 * energy);
        for (i, v) in potential.iter().enumerate() {
            add(i as i32 - 1, -2.0 * v);
        }

        let mut shifts = [Quadratic::default(); N_SHIFTS];
        let mut scales = [Quadratic::default(); N_SHIFTS];
        for (idx, (s, sc)) in shifts.iter_mut().zip(scales.iter_mut()).enumerate() {
            let d = idx as i32 + MIN_SHIFT;
            s.c0 = q[idx];
            sc.c0 = q_scale[idx];
            if d == -2 {
                s.c1 += k - 2.0;
                s.c2 += 1.0;
                sc.c1 += (k - 2.0).abs();
                sc.c2 += 1.0;
            }
            // 2 f' u' contributes (d+2) f_{d+2} (2j + k - 1)
            let fi = d + 2;
            if (1..=4).contains(&fi) {
                let w = f64::from(fi) * f[fi as usize];
                s.c0 += w * (k - 1.0);
                s.c1 += 2.0 * w;
                sc.c0 += (w * (k - 1.0)).abs();
                sc.c1 += (2.0 * w).abs();
            }
        }
        Self { shifts, scales }
    }

    /// `S_d` for `d` in `-2 ..= 6`; zero outside.
    pub fn shift(&self, d: i32) -> Quadratic {
        if (MIN_SHIFT..=MAX_SHIFT).contains(&d) {
            self.shifts[(d - MIN_SHIFT) as usize]
        } else {
            Quadratic::default()
        }
    }

    /// The three-term recurrence on a ladder of step `step`. Fails unless
    /// every shift other than `-2`, `step - 2`, `2 step - 2` cancels.
    pub fn recurrence(&self, step: u32) -> Result<Recurrence> {
        if !(1..=2).contains(&step) {
            return domain(format!("ladder step {step} must be 1 or 2"));
        }
        let h = step as i32;
        let used = [-2, h - 2, 2 * h - 2];
        for d in MIN_SHIFT..=MAX_SHIFT {
            if used.contains(&d) {
                continue;
            }
            let i = (d - MIN_SHIFT) as usize;
            if !self.shifts[i].is_negligible(&self.scales[i], VANISHING_REL) {
                return Err(QesError::Ansatz(format!(
                    "coefficient of shift r^{d} does not vanish: {:?}",
                    self.shifts[i]
                )));
            }
        }
        Ok(Recurrence {
            a: self.shift(2 * h - 2),
            b: self.shift(h - 2),
            c: self.shift(-2),
            step,
        })
    }
}

/// Evaluable `A_m, B_m, C_m` on one ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recurrence {
    a: Quadratic,
    b: Quadratic,
    c: Quadratic,
    step: u32,
}

impl Recurrence {
    pub fn step(&self) -> u32 {
        self.step
    }

    fn offset(&self, m: u32) -> f64 {
        f64::from(self.step * m)
    }

    pub fn a(&self, m: u32) -> f64 {
        self.a.eval(self.offset(m))
    }

    pub fn b(&self, m: u32) -> f64 {
        self.b.eval(self.offset(m))
    }

    pub fn c(&self, m: u32) -> f64 {
        self.c.eval(self.offset(m))
    }

    pub fn coeffs(&self, m: u32) -> (f64, f64, f64) {
        (self.a(m), self.b(m), self.c(m))
    }

    /// Forward recurrence from `a_0 = 1`, returning `a_0 ..= a_len-1`.
    pub fn series(&self, len: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(len);
        if len == 0 {
            return out;
        }
        out.push(1.0);
        for m in 0..len.saturating_sub(1) {
            let m32 = m as u32;
            let prev = if m == 0 { 0.0 } else { self.a(m32 - 1) * out[m - 1] };
            let next = -(prev + self.b(m32) * out[m]) / self.c(m32 + 1);
            out.push(next);
        }
        out
    }
}

/// Recurrence for a potential (Laurent layout) and exponent at energy `E`.
pub fn recurrence_for(
    potential: &[f64; 8],
    exponent: &AnsatzExponent,
    energy: f64,
    k: u32,
) -> Result<Recurrence> {
    PowerMatching::new(potential, exponent, energy, k).recurrence(exponent.ladder_step())
}

fn clh_laurent(c: &ClhCouplings) -> [f64; 8] {
    [-c.a, 0.0, c.b, c.c, 0.0, 0.0, 0.0, 0.0]
}

fn sextic_laurent(s: &SexticCouplings) -> [f64; 8] {
    [0.0, 0.0, 0.0, s.mu, 0.0, s.lambda, 0.0, s.eta]
}

pub fn clh_recurrence(energy: f64, couplings: &ClhCouplings, k: u32) -> Result<Recurrence> {
    recurrence_for(&clh_laurent(couplings), &clh_exponent(couplings)?, energy, k)
}

pub fn sextic_recurrence(energy: f64, couplings: &SexticCouplings, k: u32) -> Result<Recurrence> {
    recurrence_for(&sextic_laurent(couplings), &sextic_exponent(couplings)?, energy, k)
}

pub fn harmonic_recurrence(energy: f64, mu: f64, k: u32) -> Result<Recurrence> {
    let v = [0.0, 0.0, 0.0, mu, 0.0, 0.0, 0.0, 0.0];
    recurrence_for(&v, &harmonic_exponent(mu)?, energy, k)
}

/// CLH `(A_n, B_n, C_n)` on the unit-step ladder:
/// `A_n = 2E + beta^2 + alpha(2n + k)`, `B_n = 2a + beta(2n + k - 1)`,
/// `C_n = n(n + k - 2)`.
pub fn clh_coeffs(n: u32, energy: f64, couplings: &ClhCouplings, k: u32) -> Result<(f64, f64, f64)> {
    Ok(clh_recurrence(energy, couplings, k)?.coeffs(n))
}

/// Sextic `(A_n, B_n, C_n)`:
/// `A_n = alpha^2 + beta(4n + k + 2) - 2 mu`, `B_n = 2E + alpha(4n + k)`,
/// `C_n = 2n(2n + k - 2)`.
pub fn sextic_coeffs(
    n: u32,
    energy: f64,
    couplings: &SexticCouplings,
    k: u32,
) -> Result<(f64, f64, f64)> {
    Ok(sextic_recurrence(energy, couplings, k)?.coeffs(n))
}

/// Harmonic `(A_n, B_n, C_n)`: `A_n = alpha^2 - 2 mu = 0`,
/// `B_n = 2E + alpha(4n + k)`, `C_n = 2n(2n + k - 2)`.
pub fn harmonic_coeffs(n: u32, energy: f64, mu: f64, k: u32) -> Result<(f64, f64, f64)> {
    Ok(harmonic_recurrence(energy, mu, k)?.coeffs(n))
}
