use super::published::{self, ExcitedReading};
use super::*;
use crate::oracle;
use crate::recurrence::{harmonic_recurrence, sextic_coeffs};

const C32: f64 = 1.0 / 32.0;

fn clh(a: f64) -> ClhCouplings {
    ClhCouplings { a, b: 1.0, c: C32 }
}

fn qn(d: i64, l: i64, p: i64) -> QuantumNumbers {
    QuantumNumbers::new(d, l, p).unwrap()
}

#[test]
fn termination_energy_examples() {
    assert_eq!(clh_termination_energy(0, &clh(4.0), &qn(3, 0, 0)).unwrap(), -7.625);
    assert_eq!(clh_termination_energy(0, &clh(6.0), &qn(4, 0, 0)).unwrap(), -7.5);
    let ho = ClhCouplings { a: 0.0, b: 0.0, c: 0.5 };
    assert_eq!(clh_termination_energy(0, &ho, &qn(3, 0, 0)).unwrap(), 1.5);
    let bad = ClhCouplings { a: 1.0, b: 1.0, c: 0.0 };
    assert!(clh_termination_energy(0, &bad, &qn(3, 0, 0)).is_err());
}

#[test]
fn ground_constraint_examples() {
    let r = clh_coupling_constraint(0, &clh(4.0), 3).unwrap();
    assert_eq!(r.residual, 0.0);
    assert!(r.satisfied);
    let r = clh_coupling_constraint(0, &clh(14.0), 8).unwrap();
    assert_eq!(r.residual, 0.0);
    let r = clh_coupling_constraint(0, &clh(1.0), 3).unwrap();
    assert_eq!(r.residual, 1.5);
    assert!(!r.satisfied);
    assert_eq!(r.scale, 2.0);
}

#[test]
fn closed_form_examples() {
    assert_eq!(clh_closed_form_energy(0, 3, 4.0, 1.0).unwrap(), -7.625);
    assert!((clh_closed_form_energy(0, 6, 12.0, 1.0).unwrap() + 10.895).abs() < 1e-12);
    assert!((clh_closed_form_energy(0, 7, 12.0, 1.0).unwrap() + 7.125).abs() < 1e-12);
    assert!(clh_closed_form_energy(0, 3, 0.0, 1.0).is_err());
}

#[test]
fn continuant_examples() {
    let rec = clh_recurrence(-7.625, &clh(4.0), 3).unwrap();
    assert_eq!(continuant_det(&rec, 0), 0.0);
    let rec = clh_recurrence(-7.0, &clh(5.0), 3).unwrap();
    let d1 = rec.b(0) * rec.b(1) - rec.a(0) * rec.c(1);
    assert_eq!(continuant_det(&rec, 1), d1);
    let rec = harmonic_recurrence(2.7, 0.5, 5).unwrap();
    let product: f64 = (0..=4).map(|m| rec.b(m)).product();
    assert_eq!(continuant_det(&rec, 4), product);
}

#[test]
fn ground_state_wavefunction() {
    let s = clh_wavefunction(&clh(4.0), &qn(3, 0, 0)).unwrap();
    assert_eq!(s.energy, -7.625);
    assert_eq!(s.coeffs, vec![1.0]);
    // exp[-4r - r^2/8]
    assert_eq!(s.exponent.alpha(), -0.25);
    assert_eq!(s.exponent.beta(), -4.0);
    for r in [0.1, 0.7, 2.5] {
        let expected = (-4.0 * r - r * r / 8.0_f64).exp();
        assert!((s.psi(r) - expected).abs() <= 1e-15 * expected);
    }
    assert!(matches!(
        clh_wavefunction(&clh(5.0), &qn(3, 0, 0)),
        Err(QesError::ConstraintViolated { .. })
    ));
}

#[test]
fn harmonic_subcase_is_a_gaussian() {
    let s = harmonic_state(0, 0.5, &qn(3, 2, 0)).unwrap();
    assert_eq!(s.energy, 3.5);
    for r in [0.3f64, 1.1, 3.0] {
        let expected = r * r * (-0.5 * r * r).exp();
        assert!((s.psi(r) - expected).abs() <= 1e-15 * expected);
    }
}

#[test]
fn degree_one_clh_states() {
    let roots = clh_coupling_roots(1, 1.0, C32, 3).unwrap();
    assert!(roots.is_complete());
    // 4a^2 - 48a + 127 = 0
    let exact = [6.0 - 17f64.sqrt() / 2.0, 6.0 + 17f64.sqrt() / 2.0];
    for (x, e) in roots.roots.iter().zip(exact) {
        assert!((x - e).abs() <= 1e-12 * e, "{x} vs {e}");
    }
    for (a, nodes) in roots.roots.iter().zip([0, 1]) {
        let c = clh(*a);
        let q = qn(3, 0, 1);
        let s = clh_wavefunction(&c, &q).unwrap();
        assert_eq!(s.energy, -7.375);
        let rec = clh_recurrence(s.energy, &c, 3).unwrap();
        let ratio = s.coeffs[1] / s.coeffs[0];
        assert!((ratio + rec.b(0) / rec.c(1)).abs() <= 1e-14 * ratio.abs().max(1.0));
        assert!((ratio - published::clh_first_coefficient_ratio(&c, 3).unwrap()).abs() <= 1e-12);
        assert_eq!(oracle::node_count(&s, 20.0), nodes);
        assert!(published::clh_degree_one_constraint_expanded(&c, 3).abs() <= 1e-10 * 600.0);
        assert!(published::clh_degree_one_constraint_quoted(&c, 3).abs() > 1.0);
    }
}

#[test]
fn excited_closed_form_is_a_shifted_ground_state() {
    // a = 8 satisfies b(2n + k - 1) = 2a sqrt(2c) at n = 1, k = 3
    let c = clh(8.0);
    let (e, report) = published::clh_excited_energy(1, &c, 3, ExcitedReading::ShiftedConstraint).unwrap();
    assert!(report.satisfied);
    assert!((e + 7.375).abs() < 1e-12);
    // which is the k = 5 ground state, not a degree-one state at k = 3
    assert!(clh_coupling_constraint(0, &c, 5).unwrap().satisfied);
    assert!(!clh_coupling_constraint(1, &c, 3).unwrap().satisfied);
    let (_, ground) = published::clh_excited_energy(1, &c, 3, ExcitedReading::GroundConstraint).unwrap();
    assert!(!ground.satisfied);

    // at a true degree-one root the closed form misses the level
    let a = clh_coupling_roots(1, 1.0, C32, 3).unwrap().roots[0];
    let (e, report) = published::clh_excited_energy(1, &clh(a), 3, ExcitedReading::ShiftedConstraint).unwrap();
    assert!(!report.satisfied);
    assert!((e + 7.375).abs() > 1.0);
}

#[test]
fn half_index_forms() {
    let c = clh(4.0);
    for n in 0..4 {
        let half = published::clh_coeffs_half_index(n, -7.2, &c, 5).unwrap();
        let unit = crate::recurrence::clh_coeffs(2 * n, -7.2, &c, 5).unwrap();
        assert!((half.0 - unit.0).abs() < 1e-13);
        assert!((half.1 - unit.1).abs() < 1e-13);
        assert_eq!(half.2, unit.2);
    }
    let q = qn(3, 0, 0);
    for p in 0..3 {
        let half = published::clh_termination_energy_half_index(p, &c, 3).unwrap();
        assert_eq!(half, clh_termination_energy(2 * p, &c, &q).unwrap());
    }
    // quoted sextic exponent is twice the recurrence exponent
    let s = SexticCouplings { mu: 0.5, lambda: 10f64.sqrt(), eta: 0.5 };
    let f = crate::recurrence::sextic_exponent(&s).unwrap();
    let quoted = published::sextic_ground_exponent_quoted(s.lambda, s.eta, 1.3);
    assert!((quoted - 2.0 * f.value(1.3)).abs() < 1e-12);
}

#[test]
fn sextic_termination_examples() {
    let s = SexticCouplings { mu: 0.5, lambda: 10f64.sqrt(), eta: 0.5 };
    let r = sextic_termination_constraint(1, &s, 3).unwrap();
    assert!(r.residual.abs() < 1e-14);
    let s = SexticCouplings { mu: 1.0, lambda: 0.0, eta: 0.5 };
    let r = sextic_termination_constraint(0, &s, 3).unwrap();
    assert_eq!(r.residual, 7.0);
    assert!(!r.satisfied);
}

#[test]
fn sextic_ground_energy() {
    let e = -7.625f64;
    let s = SexticCouplings {
        mu: 1.0,
        lambda: 1.0 / (2.0 * (-e).powf(1.5)),
        eta: 1.0 / (128.0 * e * e),
    };
    assert!(sextic_termination_constraint(0, &s, 4).unwrap().residual.abs() < 1e-14);
    assert!((sextic_energy_p0(&s, 4).unwrap() - 2.8971438733606).abs() < 1e-12);
    let roots = determinant_energy_roots(&PotentialSpec::sextic(s.mu, s.lambda, s.eta).unwrap(), &QuantumNumbers::from_k(4, 0).unwrap())
        .unwrap();
    assert_eq!(roots.roots.len(), 1);
    assert!((roots.roots[0] - 2.8971438733606).abs() < 1e-12);

    // lambda = 0 on the surface: mu = -sqrt(2 eta)(k + 2)/2
    let s = SexticCouplings { mu: -2.5, lambda: 0.0, eta: 0.5 };
    assert_eq!(sextic_energy_p0(&s, 3).unwrap(), 0.0);
    let off = SexticCouplings { mu: 1.0, ..s };
    assert!(sextic_energy_p0(&off, 3).is_err());
}

#[test]
fn sextic_degree_one_levels() {
    let s = SexticCouplings { mu: 0.5, lambda: 10f64.sqrt(), eta: 0.5 };
    let (lo, hi) = sextic_energy_p1(&s, 3).unwrap();
    let center = 10f64.sqrt() * 2.5;
    assert!((lo - (center - 4.0)).abs() < 1e-13);
    assert!((hi - (center + 4.0)).abs() < 1e-13);

    let spec = PotentialSpec::sextic(s.mu, s.lambda, s.eta).unwrap();
    let q = QuantumNumbers::from_k(3, 1).unwrap();
    let roots = determinant_energy_roots(&spec, &q).unwrap();
    assert_eq!(roots.degree, 2);
    assert!((roots.roots[0] - lo).abs() <= 1e-12 * lo);
    assert!((roots.roots[1] - hi).abs() <= 1e-12 * hi);

    // the quadratic B_0 B_1 - A_0 C_1 vanishes at both
    for e in [lo, hi] {
        let rec = sextic_recurrence(e, &s, 3).unwrap();
        let (det, scale) = continuant_with_scale(&rec, 1);
        assert!(det.abs() <= 1e-13 * scale);
    }

    let states = solve(&spec, &q, &Tolerances::default()).unwrap();
    assert_eq!(states.len(), 2);
    let nodes: Vec<usize> = states.iter().map(|s| oracle::node_count(s, 10.0)).collect();
    assert_eq!(nodes, vec![0, 1]);
}

#[test]
fn sextic_complex_pair() {
    // far off the surface the degree-one discriminant is negative
    let s = SexticCouplings { mu: 50.0, lambda: 1.0, eta: 0.5 };
    assert!(matches!(sextic_energy_p1(&s, 3), Err(QesError::ComplexPair(d)) if d < 0.0));
}

#[test]
fn sextic_first_coefficients_match_recurrence() {
    let s = SexticCouplings { mu: 0.5, lambda: 10f64.sqrt(), eta: 0.5 };
    let rec = sextic_recurrence(3.0, &s, 3).unwrap();
    for n in 0..4 {
        let direct = sextic_coeffs(n, 3.0, &s, 3).unwrap();
        assert_eq!(direct, rec.coeffs(n));
    }
    // termination at n = 1
    assert!(rec.a(1).abs() < 1e-13);
}

#[test]
fn mu_from_termination() {
    let mu = sextic_mu_for_termination(1, 10f64.sqrt(), 0.5, 3).unwrap();
    assert!((mu - 0.5).abs() < 1e-14);
    let spec = PotentialSpec::sextic(123.0, 10f64.sqrt(), 0.5).unwrap();
    let r = solve_unknown(&spec, &QuantumNumbers::from_k(3, 1).unwrap(), Unknown::QuadraticStrength).unwrap();
    assert!((r.roots[0] - 0.5).abs() < 1e-14);
    assert!(solve_unknown(&spec, &QuantumNumbers::from_k(3, 1).unwrap(), Unknown::CoulombStrength).is_err());
}

#[test]
fn harmonic_roots_are_exact() {
    for (mu, k) in [(0.5, 3), (2.0, 6), (0.125, 2)] {
        let spec = PotentialSpec::harmonic(mu).unwrap();
        let q = QuantumNumbers::from_k(k, 5).unwrap();
        let roots = determinant_energy_roots(&spec, &q).unwrap();
        assert_eq!(roots.roots.len(), 6);
        for (n, e) in roots.roots.iter().enumerate() {
            let exact = harmonic_spectrum(n as u32, Oscillator::Mu(mu), &q).unwrap();
            assert!((e - exact).abs() <= 4.0 * f64::EPSILON * exact, "{e} vs {exact}");
        }
    }
}

#[test]
fn spectrum_examples() {
    let q = qn(3, 0, 0);
    assert_eq!(harmonic_spectrum(0, Oscillator::Omega(1.0), &q).unwrap(), 1.5);
    assert_eq!(coulomb_spectrum(0, 1.0, &q).unwrap(), -0.5);
    assert!(harmonic_spectrum(0, Oscillator::Mu(-1.0), &q).is_err());
    assert!(coulomb_spectrum(0, 0.0, &q).is_err());
    for (mu, k) in [(0.5f64, 3u32), (3.0, 8)] {
        let q = QuantumNumbers::from_k(i64::from(k), 0).unwrap();
        let w = (2.0 * mu).sqrt();
        let first = w * f64::from(k + 2) / 2.0 + w;
        assert!((harmonic_spectrum(1, Oscillator::Mu(mu), &q).unwrap() - first).abs() < 1e-14);
    }
}

#[test]
fn coulomb_states_terminate() {
    for (d, l) in [(2, 0), (3, 0), (3, 2), (4, 1)] {
        for n in 0..3 {
            let q = qn(d, l, 0);
            let s = coulomb_state(n, 1.0, &q).unwrap();
            assert_eq!(s.energy, coulomb_spectrum(n, 1.0, &q).unwrap());
            assert_eq!(oracle::node_count(&s, 200.0), n as usize);
        }
    }
}

#[test]
fn states_normalize() {
    let s = clh_wavefunction(&clh(4.0), &qn(3, 0, 0)).unwrap();
    let n = s.normalized().unwrap();
    assert!((n.norm_squared().unwrap() - 1.0).abs() < 1e-12);
    let h = coulomb_state(1, 1.0, &qn(3, 0, 0)).unwrap().normalized().unwrap();
    assert!((h.norm_squared().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn solve_dispatches_by_family() {
    let tol = Tolerances::default();
    let q = qn(3, 0, 0);
    let clh_states = solve(&PotentialSpec::clh(4.0, 1.0, C32).unwrap(), &q, &tol).unwrap();
    assert_eq!(clh_states.len(), 1);
    let ho = solve(&PotentialSpec::harmonic(0.5).unwrap(), &q.with_p(2), &tol).unwrap();
    assert_eq!(ho[0].energy, 5.5);
    assert_eq!(ho[0].coeffs.len(), 3);
    let off = PotentialSpec::sextic(1.0, 0.0, 0.5).unwrap();
    assert!(matches!(
        solve(&off, &QuantumNumbers::from_k(3, 0).unwrap(), &tol),
        Err(QesError::ConstraintViolated { .. })
    ));
}

#[test]
fn k_degeneracy_is_bitwise() {
    let qs = [qn(2, 2, 1), qn(4, 1, 1), qn(6, 0, 1)];
    let s = SexticCouplings {
        mu: sextic_mu_for_termination(1, 1.5, 0.3, 6).unwrap(),
        lambda: 1.5,
        eta: 0.3,
    };
    let spec = PotentialSpec::sextic(s.mu, s.lambda, s.eta).unwrap();
    let sets: Vec<Vec<f64>> = qs
        .iter()
        .map(|q| determinant_energy_roots(&spec, q).unwrap().roots)
        .collect();
    assert_eq!(sets[0], sets[1]);
    assert_eq!(sets[1], sets[2]);
    let e: Vec<f64> = qs
        .iter()
        .map(|q| clh_termination_energy(0, &clh(3.0), q).unwrap())
        .collect();
    assert_eq!(e[0], e[1]);
    assert_eq!(e[1], e[2]);
}
