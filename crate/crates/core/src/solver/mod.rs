//! Quantization conditions and closed-form levels.
//!
//! A state of polynomial degree `p` needs two things: the series must stop
//! (`A_p = 0`) and the `(p+1)`-order continuant of the recurrence must
//! vanish. For CLH, `A_n` carries the energy, so termination fixes `E` and
//! the continuant constrains a coupling. For the sextic and harmonic
//! families, `A_n` carries only couplings, so termination constrains
//! `mu` and the continuant is a polynomial in `E` whose roots are the levels.

pub mod published;
mod state;

pub use state::BoundState;

use serde::Serialize;

use crate::error::{domain, QesError, Result};
use crate::potentials::{ClhCouplings, Potential, PotentialSpec, QuantumNumbers, SexticCouplings};
use crate::recurrence::{
    clh_exponent, clh_recurrence, coulomb_exponent, harmonic_exponent, sextic_exponent,
    sextic_recurrence, Recurrence,
};
use crate::tridiag;

/// Satisfaction thresholds, relative to the scale of the terms involved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub constraint: f64,
    pub termination: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            constraint: 1e-9,
            termination: 1e-10,
        }
    }
}

/// Value of a solvability condition together with its natural scale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub description: String,
    pub residual: f64,
    /// Largest magnitude among the additive terms of the condition.
    pub scale: f64,
    pub tolerance: f64,
    pub satisfied: bool,
}

impl ConstraintReport {
    pub fn new(description: impl Into<String>, residual: f64, scale: f64, tolerance: f64) -> Self {
        let mut report = Self {
            description: description.into(),
            residual,
            scale,
            tolerance,
            satisfied: false,
        };
        report.satisfied = report.satisfied_at(tolerance);
        report
    }

    pub fn satisfied_at(&self, tolerance: f64) -> bool {
        self.residual.abs() <= tolerance * self.scale
    }

    pub fn with_tolerance(self, tolerance: f64) -> Self {
        Self::new(self.description, self.residual, self.scale, tolerance)
    }

    fn require(self) -> Result<Self> {
        if self.satisfied {
            Ok(self)
        } else {
            Err(QesError::ConstraintViolated {
                constraint: self.description,
                residual: self.residual,
                scale: self.scale,
            })
        }
    }
}

/// Determinant of the `(p+1) x (p+1)` band matrix with `B_m` on the
/// diagonal, `C_{m+1}` above and `A_m` below:
/// `D_{-1} = 1`, `D_0 = B_0`, `D_m = B_m D_{m-1} - A_{m-1} C_m D_{m-2}`.
pub fn continuant_det(rec: &Recurrence, p: u32) -> f64 {
    continuant_with_scale(rec, p).0
}

/// The continuant and the same recurrence run on absolute values, which
/// bounds the size of the terms that cancel in it.
pub fn continuant_with_scale(rec: &Recurrence, p: u32) -> (f64, f64) {
    let (mut prev, mut cur) = (1.0, rec.b(0));
    let (mut prev_abs, mut cur_abs) = (1.0, rec.b(0).abs());
    for m in 1..=p {
        let link = rec.a(m - 1) * rec.c(m);
        let b = rec.b(m);
        let next = b * cur - link * prev;
        let next_abs = b.abs() * cur_abs + link.abs() * prev_abs;
        prev = cur;
        cur = next;
        prev_abs = cur_abs;
        cur_abs = next_abs;
    }
    (cur, cur_abs)
}

/// `E_p = -b^2/(4c) + sqrt(c/2) (2p + k)`, from `A_p = 0` on the unit ladder.
pub fn clh_termination_energy(p: u32, couplings: &ClhCouplings, q: &QuantumNumbers) -> Result<f64> {
    clh_termination_energy_k(p, couplings, q.k())
}

fn clh_termination_energy_k(p: u32, c: &ClhCouplings, k: u32) -> Result<f64> {
    if !(c.c > 0.0) {
        return domain(format!("CLH termination needs c > 0, got c = {}", c.c));
    }
    Ok(-c.b * c.b / (4.0 * c.c) + (c.c / 2.0).sqrt() * f64::from(2 * p + k))
}

/// For `p = 0`: `b(k-1) - 2a sqrt(2c)`. For `p >= 1`: the continuant at the
/// termination energy.
pub fn clh_coupling_constraint(p: u32, couplings: &ClhCouplings, k: u32) -> Result<ConstraintReport> {
    let tol = Tolerances::default().constraint;
    let ClhCouplings { a, b, c } = *couplings;
    if !(c > 0.0) {
        return domain(format!("CLH constraint needs c > 0, got c = {c}"));
    }
    if p == 0 {
        let lhs = b * f64::from(k - 1);
        let rhs = 2.0 * a * (2.0 * c).sqrt();
        return Ok(ConstraintReport::new(
            "ground-state coupling constraint b(k-1) = 2a sqrt(2c)",
            lhs - rhs,
            lhs.abs().max(rhs.abs()),
            tol,
        ));
    }
    let energy = clh_termination_energy_k(p, couplings, k)?;
    let rec = clh_recurrence(energy, couplings, k)?;
    let (det, scale) = continuant_with_scale(&rec, p);
    Ok(ConstraintReport::new(
        format!("order-{} continuant at the termination energy", p + 1),
        det,
        scale,
        tol,
    ))
}

/// `1/2 [ b K^2/(2a) + b K/(2a) - 4a^2/K^2 ]` with `K = 2n + k - 1`.
///
/// At `n = 0` this equals the termination energy whenever the ground-state
/// coupling constraint holds.
pub fn clh_closed_form_energy(n: u32, k: u32, a: f64, b: f64) -> Result<f64> {
    if a == 0.0 {
        return domain("closed-form CLH energy needs a != 0");
    }
    if k < 2 {
        return domain(format!("k = {k} must be >= 2"));
    }
    let kk = f64::from(2 * n + k - 1);
    Ok(0.5 * (b * kk * kk / (2.0 * a) + b * kk / (2.0 * a) - 4.0 * a * a / (kk * kk)))
}

/// The degree-`p` CLH state, with `p = q.p()`.
pub fn clh_wavefunction(couplings: &ClhCouplings, q: &QuantumNumbers) -> Result<BoundState> {
    clh_wavefunction_with(couplings, q, &Tolerances::default())
}

pub fn clh_wavefunction_with(
    couplings: &ClhCouplings,
    q: &QuantumNumbers,
    tol: &Tolerances,
) -> Result<BoundState> {
    let p = q.p();
    clh_coupling_constraint(p, couplings, q.k())?
        .with_tolerance(tol.constraint)
        .require()?;
    let spec = PotentialSpec::clh(couplings.a, couplings.b, couplings.c)?;
    let energy = clh_termination_energy(p, couplings, q)?;
    BoundState::build(&spec, clh_exponent(couplings)?, energy, *q, tol.termination)
}

/// Real roots of a continuant whose diagonal is affine in one unknown.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootReport {
    /// Ascending.
    pub roots: Vec<f64>,
    /// Polynomial degree, `p + 1`.
    pub degree: usize,
    /// Roots not found on the real line.
    pub complex_omitted: usize,
}

impl RootReport {
    pub fn is_complete(&self) -> bool {
        self.complex_omitted == 0
    }
}

/// What the continuant is solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unknown {
    /// Sextic and harmonic levels.
    Energy,
    /// CLH Coulomb strength `a` at fixed `b`, `c`.
    CoulombStrength,
    /// Sextic `mu` fixed by termination at fixed `lambda`, `eta`.
    QuadraticStrength,
}

/// Solves the quantization condition of `spec` at degree `q.p()` for the
/// selected unknown; the value of that unknown stored in `spec` is ignored.
pub fn solve_unknown(spec: &PotentialSpec, q: &QuantumNumbers, unknown: Unknown) -> Result<RootReport> {
    let (p, k) = (q.p(), q.k());
    match (unknown, spec.kind()) {
        (Unknown::Energy, Potential::Sextic(s)) => {
            sextic_termination_constraint(p, s, k)?.require()?;
            sextic_levels(s, p, k)
        }
        (Unknown::Energy, Potential::Harmonic { mu }) => {
            let mu = *mu;
            continuant_roots(p, move |e| crate::recurrence::harmonic_recurrence(e, mu, k))
        }
        (Unknown::CoulombStrength, Potential::Clh(c)) => clh_coupling_roots(p, c.b, c.c, k),
        (Unknown::QuadraticStrength, Potential::Sextic(s)) => Ok(RootReport {
            roots: vec![sextic_mu_for_termination(p, s.lambda, s.eta, k)?],
            degree: 1,
            complex_omitted: 0,
        }),
        (u, _) => domain(format!(
            "unknown {u:?} is not a free parameter of the {} quantization condition",
            spec.family()
        )),
    }
}

/// All real energies of the degree-`q.p()` sextic or harmonic states.
pub fn determinant_energy_roots(spec: &PotentialSpec, q: &QuantumNumbers) -> Result<RootReport> {
    solve_unknown(spec, q, Unknown::Energy)
}

fn sextic_levels(s: &SexticCouplings, p: u32, k: u32) -> Result<RootReport> {
    let s = *s;
    continuant_roots(p, move |e| sextic_recurrence(e, &s, k))
}

/// Values of `a` for which a degree-`p` CLH state exists at fixed `b`, `c`.
pub fn clh_coupling_roots(p: u32, b: f64, c: f64, k: u32) -> Result<RootReport> {
    let base = ClhCouplings { a: 0.0, b, c };
    let energy = clh_termination_energy_k(p, &base, k)?;
    continuant_roots(p, move |a| clh_recurrence(energy, &ClhCouplings { a, b, c }, k))
}

/// `mu` solving the sextic termination condition at index `n`.
pub fn sextic_mu_for_termination(n: u32, lambda: f64, eta: f64, k: u32) -> Result<f64> {
    if !(eta > 0.0) {
        return domain(format!("sextic termination needs eta > 0, got eta = {eta}"));
    }
    let root = (2.0 * eta).sqrt();
    Ok(0.5 * (lambda * lambda / (2.0 * eta) - root * f64::from(4 * n + k + 2)))
}

/// Roots in `x` of the order-`p+1` continuant of `build(x)`, where `x`
/// enters only the diagonal `B_m`, affinely and with a common slope.
fn continuant_roots<F>(p: u32, build: F) -> Result<RootReport>
where
    F: Fn(f64) -> Result<Recurrence>,
{
    let at0 = build(0.0)?;
    let at1 = build(1.0)?;
    let slope = at1.b(0) - at0.b(0);
    let n = p as usize + 1;
    if slope == 0.0 || !slope.is_finite() {
        return domain("the continuant does not depend on the unknown");
    }
    let mut diag = Vec::with_capacity(n);
    let mut products = Vec::with_capacity(n - 1);
    for m in 0..=p {
        diag.push(-at0.b(m) / slope);
        if m > 0 {
            products.push(at0.a(m - 1) * at0.c(m) / (slope * slope));
        }
    }
    let det = |x: f64| build(x).map(|r| continuant_det(&r, p));

    let candidates: Vec<f64> = if products.iter().all(|x| *x >= 0.0) {
        // similar to a real symmetric tridiagonal matrix: all roots real
        let off: Vec<f64> = products.iter().map(|x| x.sqrt()).collect();
        tridiag::lowest_eigenvalues(&diag, &off, n)
    } else {
        let off: Vec<f64> = products.iter().map(|x| x.abs().sqrt()).collect();
        scan_sign_changes(&det, tridiag::gershgorin_bounds(&diag, &off), 200 * n)?
    };

    let mut roots: Vec<f64> = Vec::with_capacity(candidates.len());
    for x in candidates {
        let x = polish_root(&det, x)?;
        let dup = roots
            .last()
            .is_some_and(|last| (x - last).abs() <= 1e-9 * x.abs().max(last.abs()).max(1e-300));
        if !dup {
            roots.push(x);
        }
    }
    Ok(RootReport {
        complex_omitted: n - roots.len(),
        degree: n,
        roots,
    })
}

fn scan_sign_changes<F>(det: &F, (lo, hi): (f64, f64), points: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let step = (hi - lo) / points as f64;
    let mut out = Vec::new();
    let mut x0 = lo;
    let mut f0 = det(x0)?;
    for i in 1..=points {
        let x1 = lo + step * i as f64;
        let f1 = det(x1)?;
        if f1 == 0.0 {
            out.push(x1);
        } else if f0 != 0.0 && f0.signum() != f1.signum() {
            out.push(bisect(det, x0, x1, f0)?);
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(out)
}

fn bisect<F>(det: &F, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    for _ in 0..2100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = det(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Re-brackets an approximate root on the continuant itself and bisects.
fn polish_root<F>(det: &F, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let fx = det(x)?;
    if fx == 0.0 {
        return Ok(x);
    }
    let mut width = 1e-13 * x.abs().max(1e-12);
    for _ in 0..60 {
        let (lo, hi) = (x - width, x + width);
        let (fl, fh) = (det(lo)?, det(hi)?);
        if fl == 0.0 {
            return Ok(lo);
        }
        if fh == 0.0 {
            return Ok(hi);
        }
        if fl.signum() != fh.signum() {
            return bisect(det, lo, hi, fl);
        }
        width *= 4.0;
        if width > 1e-6 * x.abs().max(1.0) {
            break;
        }
    }
    // a root of even multiplicity has no sign change; keep the estimate
    Ok(x)
}

/// `2 mu + sqrt(2 eta)(4n + k + 2) - lambda^2/(2 eta)`.
pub fn sextic_termination_constraint(
    n: u32,
    couplings: &SexticCouplings,
    k: u32,
) -> Result<ConstraintReport> {
    let SexticCouplings { mu, lambda, eta } = *couplings;
    if !(eta > 0.0) {
        return domain(format!("sextic termination needs eta > 0, got eta = {eta}"));
    }
    let t1 = 2.0 * mu;
    let t2 = (2.0 * eta).sqrt() * f64::from(4 * n + k + 2);
    let t3 = lambda * lambda / (2.0 * eta);
    Ok(ConstraintReport::new(
        format!("sextic termination condition at n = {n}"),
        t1 + t2 - t3,
        t1.abs().max(t2.abs()).max(t3.abs()),
        Tolerances::default().constraint,
    ))
}

/// `E_0 = lambda k / (2 sqrt(2 eta))`, valid when termination holds at `n = 0`.
pub fn sextic_energy_p0(couplings: &SexticCouplings, k: u32) -> Result<f64> {
    sextic_termination_constraint(0, couplings, k)?.require()?;
    Ok(couplings.lambda * f64::from(k) / (2.0 * (2.0 * couplings.eta).sqrt()))
}

/// Both degree-one levels, lower first:
/// `lambda(k+2)/(2 sqrt(2 eta)) -/+ sqrt(lambda^2 (k+2)/(4 eta) - k/2 (sqrt(2 eta)(k+2) + 2 mu))`.
///
/// On the termination surface the discriminant equals
/// `lambda^2/(2 eta) + 2k sqrt(2 eta) > 0`, so the complex case only arises
/// off it.
pub fn sextic_energy_p1(couplings: &SexticCouplings, k: u32) -> Result<(f64, f64)> {
    let SexticCouplings { mu, lambda, eta } = *couplings;
    if !(eta > 0.0) {
        return domain(format!("sextic levels need eta > 0, got eta = {eta}"));
    }
    let k = f64::from(k);
    let root = (2.0 * eta).sqrt();
    let disc = lambda * lambda * (k + 2.0) / (4.0 * eta) - 0.5 * k * (root * (k + 2.0) + 2.0 * mu);
    if disc < 0.0 {
        return Err(QesError::ComplexPair(disc));
    }
    sextic_termination_constraint(1, couplings, k as u32)?.require()?;
    let center = lambda * (k + 2.0) / (2.0 * root);
    let half = disc.sqrt();
    Ok((center - half, center + half))
}

/// A sextic state of degree `q.p()` at one of its determinant energies.
pub fn sextic_state(couplings: &SexticCouplings, q: &QuantumNumbers, energy: f64) -> Result<BoundState> {
    let spec = PotentialSpec::sextic(couplings.mu, couplings.lambda, couplings.eta)?;
    BoundState::build(
        &spec,
        sextic_exponent(couplings)?,
        energy,
        *q,
        Tolerances::default().termination,
    )
}

/// Oscillator strength given either way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oscillator {
    Omega(f64),
    Mu(f64),
}

impl Oscillator {
    pub fn omega(self) -> Result<f64> {
        let w = match self {
            Oscillator::Omega(w) => w,
            Oscillator::Mu(mu) => (2.0 * mu).sqrt(),
        };
        if w > 0.0 {
            Ok(w)
        } else {
            domain(format!("oscillator strength {self:?} must be positive"))
        }
    }
}

/// `E = omega/2 (4n + k)`.
pub fn harmonic_spectrum(n: u32, osc: Oscillator, q: &QuantumNumbers) -> Result<f64> {
    Ok(osc.omega()? / 2.0 * f64::from(4 * n + q.k()))
}

/// `E = -2 z^2 / (2n + k - 1)^2`.
pub fn coulomb_spectrum(n: u32, z: f64, q: &QuantumNumbers) -> Result<f64> {
    if !(z > 0.0) {
        return domain(format!("Coulomb charge z = {z} must be > 0"));
    }
    let kk = f64::from(2 * n + q.k() - 1);
    Ok(-2.0 * z * z / (kk * kk))
}

/// The `n`-th harmonic state (polynomial of degree `n` in `r^2`).
pub fn harmonic_state(n: u32, mu: f64, q: &QuantumNumbers) -> Result<BoundState> {
    let spec = PotentialSpec::harmonic(mu)?;
    let energy = harmonic_spectrum(n, Oscillator::Mu(mu), q)?;
    BoundState::build(
        &spec,
        harmonic_exponent(mu)?,
        energy,
        q.with_p(n),
        Tolerances::default().termination,
    )
}

/// The `n`-th Coulomb state (polynomial of degree `n` in `r`).
pub fn coulomb_state(n: u32, z: f64, q: &QuantumNumbers) -> Result<BoundState> {
    let spec = PotentialSpec::coulomb(z)?;
    let energy = coulomb_spectrum(n, z, q)?;
    BoundState::build(
        &spec,
        coulomb_exponent(z, n, q.k())?,
        energy,
        q.with_p(n),
        Tolerances::default().termination,
    )
}

/// Every quasi-exact state of `spec` at degree `q.p()`: one for CLH,
/// harmonic and Coulomb (where `p` is the level index), all determinant
/// roots for the sextic family.
pub fn solve(spec: &PotentialSpec, q: &QuantumNumbers, tol: &Tolerances) -> Result<Vec<BoundState>> {
    match spec.kind() {
        Potential::Clh(c) => Ok(vec![clh_wavefunction_with(c, q, tol)?]),
        Potential::Sextic(s) => {
            sextic_termination_constraint(q.p(), s, q.k())?
                .with_tolerance(tol.constraint)
                .require()?;
            let report = sextic_levels(s, q.p(), q.k())?;
            let exponent = sextic_exponent(s)?;
            report
                .roots
                .iter()
                .map(|&e| BoundState::build(spec, exponent, e, *q, tol.termination))
                .collect()
        }
        Potential::Harmonic { mu } => Ok(vec![harmonic_state(q.p(), *mu, q)?]),
        Potential::Coulomb { z } => Ok(vec![coulomb_state(q.p(), *z, q)?]),
    }
}

#[cfg(test)]
mod tests;
