//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, plus
//! eigenvectors by inverse iteration.
//!
//! `diag` has length `n`; `off` has length `n - 1` and holds the
//! sub/super-diagonal.

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        let prev = if q == 0.0 { f64::EPSILON * (1.0 + x.abs()) } else { q };
        q = diag[i] - x - e2 / prev;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Interval containing every eigenvalue.
pub fn gershgorin_bounds(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..diag.len() {
        let left = if i == 0 { 0.0 } else { off[i - 1].abs() };
        let right = if i + 1 == diag.len() { 0.0 } else { off[i].abs() };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    let pad = f64::EPSILON * (lo.abs().max(hi.abs()) + 1.0) * 4.0;
    (lo - pad, hi + pad)
}

/// The `index`-th smallest eigenvalue (zero based), bisected to full precision.
pub fn eigenvalue(diag: &[f64], off: &[f64], index: usize, bounds: (f64, f64)) -> f64 {
    let (mut lo, mut hi) = bounds;
    for _ in 0..2100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The lowest `count` eigenvalues in ascending order.
pub fn lowest_eigenvalues(diag: &[f64], off: &[f64], count: usize) -> Vec<f64> {
    let count = count.min(diag.len());
    let bounds = gershgorin_bounds(diag, off);
    (0..count)
        .map(|i| eigenvalue(diag, off, i, bounds))
        .collect()
}

/// Eigenvector for an eigenvalue estimate, unit 2-norm.
pub fn eigenvector(diag: &[f64], off: &[f64], lambda: f64) -> Vec<f64> {
    let n = diag.len();
    let scale = diag.iter().chain(off).fold(0.0f64, |m, x| m.max(x.abs()));
    let shift = lambda + f64::EPSILON * scale.max(1.0) * 8.0;
    let lu = TridiagLu::factor(diag, off, shift);
    let mut v = vec![1.0; n];
    for _ in 0..3 {
        v = lu.solve(&v);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    v
}

/// LU of `T - shift I` with partial pivoting (LAPACK `gttrf` layout).
struct TridiagLu {
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    dl: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(diag: &[f64], off: &[f64], shift: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
        let mut du = off.to_vec();
        let mut dl = off.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = f64::MIN_POSITIVE.sqrt();
                }
                let l = dl[i] / d[i];
                dl[i] = l;
                d[i + 1] -= l * du[i];
            } else {
                let l = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = l;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - l * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -l;
                }
                swapped[i] = true;
            }
        }
        if n > 0 && d[n - 1] == 0.0 {
            d[n - 1] = f64::MIN_POSITIVE.sqrt();
        }
        Self { d, du, du2, dl, swapped }
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut x = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let tmp = x[i];
                x[i] = x[i + 1];
                x[i + 1] = tmp - self.dl[i] * x[i];
            } else {
                x[i + 1] -= self.dl[i] * x[i];
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            if i + 1 < n {
                s -= self.du[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= self.du2[i] * x[i + 2];
            }
            x[i] = s / self.d[i];
        }
        x
    }
}
