//! Independent check of the analytic results: a finite-difference
//! eigensolver for the reduced radial equation
//! `-R''/2 + [(k-1)(k-3)/(8 r^2) + V(r)] R = E R`, plus a residual test of
//! the unreduced equation using exact derivatives, and node counting.
//!
//! The grid is uniform on `[r_min, r_max]` with Dirichlet walls at both
//! ends. Three-point differences give a symmetric tridiagonal matrix whose
//! lowest eigenvalues come from Sturm bisection; optional Richardson
//! extrapolation in `h^2` uses nested grids. For `k = 2` the regular form
//! in `psi` is discretized by finite volumes on `[0, r_max]` instead, and
//! `r_min` is not used.

use crate::error::{domain, QesError, Result};
use crate::potentials::{PotentialSpec, QuantumNumbers};
use crate::solver::BoundState;
use crate::tridiag;

/// Amplitude decay `exp(-WKB_DECAY)` required beyond the outer turning point.
const WKB_DECAY: f64 = 36.0;
const COARSE_POINTS: usize = 1000;
/// Eigenfunction mass allowed in the outermost 1% of the box.
const CUTOFF_MASS: f64 = 1e-8;
const RESIDUAL_FLOOR: f64 = 1e-30;
/// Share of the largest `|2(E-V) psi|` among the samples added to each
/// denominator, so that a sample on a node of `psi` stays finite.
const RESIDUAL_RELATIVE_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
    /// 1 means no extrapolation.
    pub refinement_levels: u32,
}

impl GridSpec {
    pub fn new(r_min: f64, r_max: f64, n_points: usize, refinement_levels: u32) -> Result<Self> {
        if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
            return domain(format!("need 0 < r_min < r_max, got [{r_min}, {r_max}]"));
        }
        if n_points < 64 {
            return domain(format!("n_points = {n_points} must be >= 64"));
        }
        if refinement_levels == 0 {
            return domain("refinement_levels must be >= 1");
        }
        Ok(Self {
            r_min,
            r_max,
            n_points,
            refinement_levels,
        })
    }

    pub fn step(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n_points - 1) as f64
    }

    /// Default box for the lowest `count` states: `r_max = 200/z` with 8000
    /// points for Coulomb; for confining potentials the box extends until
    /// the WKB amplitude of the highest requested level has decayed by
    /// `e^-36`, with 4000 points. The wall sits at `r_min = 1e-8 r_max`.
    pub fn default_for(spec: &PotentialSpec, q: &QuantumNumbers, count: usize) -> Result<Self> {
        let r_max = match spec.kind() {
            crate::Potential::Coulomb { z } => 200.0 / z,
            _ => confining_extent(spec, q.k(), count.max(1))?,
        };
        let n_points = if spec.is_confining() { 4000 } else { 8000 };
        Self::new(1e-8 * r_max, r_max, n_points, 2)
    }

    pub fn with_points(self, n_points: usize) -> Result<Self> {
        Self::new(self.r_min, self.r_max, n_points, self.refinement_levels)
    }

    pub fn with_levels(self, refinement_levels: u32) -> Result<Self> {
        Self::new(self.r_min, self.r_max, self.n_points, refinement_levels)
    }

    pub fn with_r_max(self, r_max: f64) -> Result<Self> {
        Self::new(self.r_min.min(1e-8 * r_max), r_max, self.n_points, self.refinement_levels)
    }
}

fn effective_potential(spec: &PotentialSpec, k: u32, r: f64) -> f64 {
    let k = f64::from(k);
    (k - 1.0) * (k - 3.0) / (8.0 * r * r) + spec.value(r)
}

/// Largest `r` with `f(r) <= 0`, for `f` positive at large `r`.
fn outer_crossing<F: Fn(f64) -> f64>(f: F) -> Result<f64> {
    const RATIO: f64 = 1.02;
    let mut r = 1e-6;
    let mut last_inside = None;
    while r < 1e6 {
        if f(r) <= 0.0 {
            last_inside = Some(r);
        }
        r *= RATIO;
    }
    let inside = last_inside.ok_or_else(|| QesError::NoConvergence("no classically allowed region".into()))?;
    let (mut lo, mut hi) = (inside, inside * RATIO);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Radius where `int_{r_t}^{r} sqrt(2(V_eff - E)) dr` reaches the decay target.
fn wkb_extent(spec: &PotentialSpec, k: u32, energy: f64) -> Result<f64> {
    let turning = outer_crossing(|r| effective_potential(spec, k, r) - energy)?;
    let mut r = turning;
    let mut action = 0.0;
    let mut dr = turning.max(1e-3) / 200.0;
    while action < WKB_DECAY {
        let g = (2.0 * (effective_potential(spec, k, r + 0.5 * dr) - energy)).max(0.0).sqrt();
        action += g * dr;
        r += dr;
        // keep the increment in action near 0.05 per step
        if g * dr < 0.02 {
            dr *= 1.5;
        } else if g * dr > 0.1 {
            dr /= 1.5;
        }
        if r > 1e9 {
            return Err(QesError::NoConvergence("WKB extent diverges".into()));
        }
    }
    Ok(r)
}

fn confining_extent(spec: &PotentialSpec, k: u32, count: usize) -> Result<f64> {
    let mut energy = {
        let v_at = |r: f64| effective_potential(spec, k, r);
        // a low starting guess: the effective potential at its outer scale
        let r0 = outer_crossing(|r| v_at(r) - v_at(1.0).abs().max(1.0))?;
        v_at(r0 / 2.0)
    };
    let mut r_max = wkb_extent(spec, k, energy)?;
    for _ in 0..40 {
        let grid = GridSpec::new(1e-8 * r_max, r_max, COARSE_POINTS, 1)?;
        let levels = raw_eigenvalues(spec, k, &grid, count);
        energy = *levels.last().expect("count >= 1");
        let next = wkb_extent(spec, k, energy)?;
        if (next - r_max).abs() <= 0.01 * r_max {
            return Ok(next.max(r_max));
        }
        r_max = next;
    }
    Ok(r_max)
}

fn assemble(spec: &PotentialSpec, k: u32, grid: &GridSpec) -> (Vec<f64>, Vec<f64>) {
    if k == 2 {
        return assemble_volume(spec, k, grid);
    }
    let h = grid.step();
    let inv_h2 = 1.0 / (h * h);
    let n = grid.n_points - 2;
    let diag = (1..=n)
        .map(|i| inv_h2 + effective_potential(spec, k, grid.r_min + h * i as f64))
        .collect();
    let off = vec![-0.5 * inv_h2; n.saturating_sub(1)];
    (diag, off)
}

/// Cell-centred finite volumes for the regular form
/// `-1/2 r^(1-k) (r^(k-1) psi')' + V psi = E psi` on `[0, r_max]`, with
/// `n_points - 1` cells. Symmetrized by the square roots of the cell
/// volumes. Used for `k = 2`, where the reduced equation carries an
/// attractive `-1/(8 r^2)` term that a wall near the origin resolves poorly.
fn assemble_volume(spec: &PotentialSpec, k: u32, grid: &GridSpec) -> (Vec<f64>, Vec<f64>) {
    let cells = grid.n_points - 1;
    let h = grid.r_max / cells as f64;
    let kk = k as i32;
    let volume = |i: usize| {
        let i = i as f64;
        h.powi(kk) * (i.powi(kk) - (i - 1.0).powi(kk)) / f64::from(k)
    };
    // face between cells i and i + 1, divided by the spacing
    let face = |i: usize| (i as f64 * h).powi(kk - 1) / h;
    let mut diag = Vec::with_capacity(cells);
    let mut off = Vec::with_capacity(cells - 1);
    for i in 1..=cells {
        // the outer wall sits half a cell from the last centre
        let outer = if i == cells { 2.0 * face(i) } else { face(i) };
        let w = volume(i);
        diag.push((face(i - 1) + outer) / (2.0 * w) + spec.value((i as f64 - 0.5) * h));
        if i < cells {
            off.push(-face(i) / (2.0 * (w * volume(i + 1)).sqrt()));
        }
    }
    (diag, off)
}

fn raw_eigenvalues(spec: &PotentialSpec, k: u32, grid: &GridSpec, count: usize) -> Vec<f64> {
    let (diag, off) = assemble(spec, k, grid);
    tridiag::lowest_eigenvalues(&diag, &off, count)
}

/// Fraction of the norm of each of the lowest `count` eigenvectors that
/// lies in the outermost 1% of the box.
fn edge_mass(spec: &PotentialSpec, k: u32, grid: &GridSpec, levels: &[f64]) -> f64 {
    let (diag, off) = assemble(spec, k, grid);
    let n = diag.len();
    let edge_start = n - (n / 100).max(1);
    levels
        .iter()
        .map(|&e| {
            let v = tridiag::eigenvector(&diag, &off, e);
            v[edge_start..].iter().map(|x| x * x).sum::<f64>()
        })
        .fold(0.0, f64::max)
}

/// Lowest `count` eigenvalues of the reduced radial equation, ascending.
pub fn radial_eigenvalues(
    spec: &PotentialSpec,
    q: &QuantumNumbers,
    grid: &GridSpec,
    count: usize,
) -> Result<Vec<f64>> {
    if count == 0 {
        return domain("count must be >= 1");
    }
    let k = q.k();
    let base = raw_eigenvalues(spec, k, grid, count);
    let mass = edge_mass(spec, k, grid, &base);
    if mass > CUTOFF_MASS {
        return Err(QesError::Cutoff {
            r_max: grid.r_max,
            mass_fraction: mass,
        });
    }

    let levels = grid.refinement_levels as usize;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(levels);
    table.push(base);
    for l in 1..levels {
        let refined = GridSpec {
            n_points: (grid.n_points - 1) * (1 << l) + 1,
            ..*grid
        };
        table.push(raw_eigenvalues(spec, k, &refined, count));
    }
    Ok(richardson(&table))
}

/// Richardson table in `h^2`; rows are successive halvings of `h`.
fn richardson(rows: &[Vec<f64>]) -> Vec<f64> {
    let count = rows[0].len();
    (0..count)
        .map(|i| {
            let mut col: Vec<f64> = rows.iter().map(|r| r[i]).collect();
            let mut factor = 1.0;
            for _ in 1..rows.len() {
                factor *= 4.0;
                col = col
                    .windows(2)
                    .map(|w| w[1] + (w[1] - w[0]) / (factor - 1.0))
                    .collect();
            }
            col[0]
        })
        .collect()
}

/// Residual of `psi'' + (D-1)/r psi' - l(l+D-2)/r^2 psi + 2(E-V) psi` at
/// each sample, relative to `|2(E-V) psi|` plus a floor; returns the maximum.
///
/// The common factor `r^l exp[f(r)]` is divided out analytically, so the
/// result does not under- or overflow far from the origin. The floor is
/// `1e-6` of the largest `|2(E-V) psi|` over the samples.
pub fn residual_check(state: &BoundState, spec: &PotentialSpec, samples: &[f64]) -> f64 {
    let dim = f64::from(state.q.dim());
    let ell = f64::from(state.q.ell());
    let terms: Vec<(f64, f64)> = samples
        .iter()
        .map(|&r| {
            let (p, dp, ddp) = state.polynomial(r);
            let f1 = state.exponent.derivative(r);
            let f2 = state.exponent.second_derivative(r);
            // g = r^l P divided by r^l
            let g1 = ell * p / r + dp;
            let g2 = ell * (ell - 1.0) * p / (r * r) + 2.0 * ell * dp / r + ddp;
            let psi = p;
            let psi1 = g1 + p * f1;
            let psi2 = g2 + 2.0 * g1 * f1 + p * (f2 + f1 * f1);
            let kinetic = 2.0 * (state.energy - spec.value(r)) * psi;
            let residual = psi2 + (dim - 1.0) / r * psi1 - ell * (ell + dim - 2.0) / (r * r) * psi
                + kinetic;
            (residual.abs(), kinetic.abs())
        })
        .collect();
    let largest = terms.iter().fold(0.0f64, |m, t| m.max(t.1));
    let floor = RESIDUAL_FLOOR + RESIDUAL_RELATIVE_FLOOR * largest;
    terms.iter().map(|(res, kin)| res / (kin + floor)).fold(0.0, f64::max)
}

/// `count` radii inside the classically allowed region `E > V(r)`, spread
/// over `(0.05, 0.95)` of the outer turning radius.
pub fn classically_allowed_samples(spec: &PotentialSpec, energy: f64, count: usize) -> Result<Vec<f64>> {
    let turning = outer_crossing(|r| spec.value(r) - energy)?;
    let mut out = Vec::with_capacity(count);
    let mut candidates = 2 * count;
    while out.len() < count && candidates <= 1 << 16 {
        out.clear();
        for i in 0..candidates {
            let r = turning * (0.05 + 0.9 * i as f64 / (candidates - 1) as f64);
            if spec.value(r) < energy {
                out.push(r);
            }
            if out.len() == count {
                break;
            }
        }
        candidates *= 2;
    }
    if out.len() < count {
        return domain(format!("no classically allowed region at E = {energy}"));
    }
    Ok(out)
}

/// Strict sign changes of the polynomial factor on `(0, r_max)`.
///
/// Samples are uniform in `r` and geometric down to `1e-9 r_max`, so nodes
/// crowded near the origin are resolved as well as distant ones.
pub fn node_count(state: &BoundState, r_max: f64) -> usize {
    const SAMPLES: usize = 20_000;
    const DEPTH: f64 = 1e-9;
    let mut radii: Vec<f64> = (1..SAMPLES)
        .map(|i| r_max * i as f64 / SAMPLES as f64)
        .chain((0..SAMPLES).map(|i| r_max * DEPTH.powf(1.0 - i as f64 / SAMPLES as f64)))
        .collect();
    radii.sort_by(f64::total_cmp);
    let mut last = 0.0f64;
    let mut nodes = 0;
    for r in radii {
        let v = state.polynomial(r).0;
        if v != 0.0 {
            if last != 0.0 && v.signum() != last.signum() {
                nodes += 1;
            }
            last = v;
        }
    }
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0.0, 10.0, 100, 1).is_err());
        assert!(GridSpec::new(1.0, 0.5, 100, 1).is_err());
        assert!(GridSpec::new(1e-6, 10.0, 63, 1).is_err());
        assert!(GridSpec::new(1e-6, 10.0, 64, 0).is_err());
        let g = GridSpec::new(1.0, 11.0, 101, 1).unwrap();
        assert_eq!(g.step(), 0.1);
    }

    #[test]
    fn richardson_removes_h2() {
        // E(h) = 1 + 3h^2 + 5h^4
        let e = |h: f64| 1.0 + 3.0 * h * h + 5.0 * h.powi(4);
        let rows = vec![vec![e(0.1)], vec![e(0.05)], vec![e(0.025)]];
        assert!((richardson(&rows)[0] - 1.0).abs() < 1e-12);
        let once = (richardson(&rows[..2])[0] - 1.0).abs();
        assert!(once < (e(0.05) - 1.0) / 50.0);
    }

    #[test]
    fn small_box_is_reported() {
        let spec = PotentialSpec::harmonic(0.5).unwrap();
        let q = QuantumNumbers::new(3, 0, 0).unwrap();
        let grid = GridSpec::new(1e-8, 2.0, 400, 1).unwrap();
        assert!(matches!(
            radial_eigenvalues(&spec, &q, &grid, 1),
            Err(QesError::Cutoff { .. })
        ));
    }

    #[test]
    fn node_counts() {
        let q = QuantumNumbers::new(3, 0, 0).unwrap();
        let s0 = solver::harmonic_state(0, 0.5, &q).unwrap();
        assert_eq!(node_count(&s0, 10.0), 0);
        let s2 = solver::harmonic_state(2, 0.5, &q).unwrap();
        assert_eq!(node_count(&s2, 10.0), 2);
    }

    #[test]
    fn residual_detects_wrong_energy() {
        let q = QuantumNumbers::new(3, 1, 0).unwrap();
        let spec = PotentialSpec::harmonic(0.5).unwrap();
        let mut s = solver::harmonic_state(1, 0.5, &q).unwrap();
        let samples = classically_allowed_samples(&spec, s.energy, 32).unwrap();
        assert!(residual_check(&s, &spec, &samples) <= 1e-10);
        s.energy += 1e-3;
        assert!(residual_check(&s, &spec, &samples) >= 1e-4);
    }

    #[test]
    fn residual_is_finite_on_a_node() {
        // P(r) = 1 - r/120 + r^2/64800 vanishes at r = 180
        let q = QuantumNumbers::new(3, 3, 0).unwrap();
        let spec = PotentialSpec::coulomb(0.1).unwrap();
        let s = solver::coulomb_state(2, 0.1, &q).unwrap();
        assert!(s.polynomial(180.0).0.abs() < 1e-15);
        let samples = [60.0, 180.0, 400.0];
        assert!(residual_check(&s, &spec, &samples) <= 1e-10);
    }

    #[test]
    fn nodes_near_the_origin_are_counted() {
        // P(r) = 1 - 42.05 r + ..., node at r ~ 0.024 with r_max = 1000
        let c = crate::ClhCouplings { a: 31.54449198028197, b: 2.9756264833690045, c: 0.01 };
        let q = QuantumNumbers::from_k(2, 3).unwrap();
        let s = solver::clh_wavefunction(&c, &q).unwrap();
        assert_eq!(node_count(&s, 1e3), 1);
        assert_eq!(node_count(&s, 1e4), 1);
    }
}
