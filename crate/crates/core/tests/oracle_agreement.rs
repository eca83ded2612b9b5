use qes_core::oracle::{radial_eigenvalues, GridSpec};
use qes_core::solver::{self, Oscillator, Tolerances};
use qes_core::*;

fn lowest(spec: &PotentialSpec, q: &QuantumNumbers, count: usize) -> Vec<f64> {
    let grid = GridSpec::default_for(spec, q, count).unwrap();
    radial_eigenvalues(spec, q, &grid, count).unwrap()
}

#[test]
fn acceptance_examples() {
    let q = QuantumNumbers::new(3, 0, 0).unwrap();
    let e = lowest(&PotentialSpec::harmonic_omega(1.0).unwrap(), &q, 1)[0];
    assert!((e - 1.5).abs() <= 1e-5, "{e}");
    let e = lowest(&PotentialSpec::coulomb(1.0).unwrap(), &q, 1)[0];
    assert!((e + 0.5).abs() <= 1e-4 * 0.5, "{e}");
    let e = lowest(&PotentialSpec::clh(4.0, 1.0, 1.0 / 32.0).unwrap(), &q, 1)[0];
    assert!((e + 7.625).abs() <= 1e-4 * 7.625, "{e}");
}

#[test]
fn harmonic_closed_forms() {
    let spec = PotentialSpec::harmonic_omega(1.0).unwrap();
    for dim in 2..=4 {
        for ell in 0..=2 {
            let q = QuantumNumbers::new(dim, ell, 0).unwrap();
            let levels = lowest(&spec, &q, 3);
            for (n, e) in levels.iter().enumerate() {
                let exact = solver::harmonic_spectrum(n as u32, Oscillator::Omega(1.0), &q).unwrap();
                assert!((e - exact).abs() <= 1e-5, "D={dim} l={ell} n={n}: {e} vs {exact}");
            }
        }
    }
}

#[test]
fn coulomb_closed_forms() {
    let spec = PotentialSpec::coulomb(1.0).unwrap();
    for dim in 2..=4 {
        for ell in 0..=2 {
            let q = QuantumNumbers::new(dim, ell, 0).unwrap();
            let levels = lowest(&spec, &q, 3);
            for (n, e) in levels.iter().enumerate() {
                let exact = solver::coulomb_spectrum(n as u32, 1.0, &q).unwrap();
                assert!((e - exact).abs() <= 1e-4 * exact.abs(), "D={dim} l={ell} n={n}: {e} vs {exact}");
            }
        }
    }
}

#[test]
fn grid_convergence_and_richardson() {
    let spec = PotentialSpec::harmonic_omega(1.0).unwrap();
    let q = QuantumNumbers::new(3, 0, 0).unwrap();
    let base = GridSpec::new(1e-7, 10.0, 500, 1).unwrap();
    let raw = |n: usize| radial_eigenvalues(&spec, &q, &base.with_points(n).unwrap(), 1).unwrap()[0] - 1.5;
    let (e1, e2, e3) = (raw(500), raw(999), raw(1997));
    // second order: halving h divides the error by about four
    assert!((e1 / e2 - 4.0).abs() < 0.2, "{}", e1 / e2);
    assert!((e2 / e3 - 4.0).abs() < 0.2, "{}", e2 / e3);

    let rich = |n: usize| {
        radial_eigenvalues(&spec, &q, &base.with_points(n).unwrap().with_levels(2).unwrap(), 1).unwrap()[0]
    };
    let raw_change = (e2 - e1).abs();
    let rich_change = (rich(999) - rich(500)).abs();
    assert!(rich_change < raw_change, "{rich_change:e} vs {raw_change:e}");
}

#[test]
fn eigenvalues_strictly_ascending() {
    let spec = PotentialSpec::clh(4.0, 1.0, 1.0 / 32.0).unwrap();
    let q = QuantumNumbers::new(3, 1, 0).unwrap();
    let levels = lowest(&spec, &q, 6);
    for w in levels.windows(2) {
        assert!(w[1] - w[0] > 1e-12);
    }
}

#[test]
fn duality_images_match_oracle() {
    for row in tables::published().table1.iter() {
        let q = row.quantum_numbers().unwrap();
        let c = row.couplings();
        let energy = solver::clh_wavefunction(&c, &q).unwrap().energy;
        let image = clh_to_sextic(&c, energy, &q).unwrap();
        let spec = PotentialSpec::sextic(1.0, image.sextic.lambda, image.sextic.eta).unwrap();
        let q_prime = QuantumNumbers::from_k(i64::from(image.k_prime()), 0).unwrap();
        let e = lowest(&spec, &q_prime, 1)[0];
        assert!((e - image.e_hat).abs() <= 1e-4 * image.e_hat, "row {}: {e} vs {}", row.row, image.e_hat);
        // and the CLH level itself
        let e = lowest(&PotentialSpec::clh(c.a, c.b, c.c).unwrap(), &q, 1)[0];
        assert!((e - energy).abs() <= 1e-4 * energy.abs(), "row {}: {e} vs {energy}", row.row);
    }
}

#[test]
fn quasi_exact_levels_sit_at_their_node_count() {
    // sextic: the p + 1 determinant roots are the lowest p + 1 levels
    let k = 3;
    let mu = solver::sextic_mu_for_termination(2, 1.0, 0.5, k).unwrap();
    let spec = PotentialSpec::sextic(mu, 1.0, 0.5).unwrap();
    let q = QuantumNumbers::from_k(i64::from(k), 2).unwrap();
    let states = solver::solve(&spec, &q, &Tolerances::default()).unwrap();
    let levels = lowest(&spec, &q, 3);
    for s in &states {
        let nodes = oracle::node_count(s, 50.0);
        let e = levels[nodes];
        assert!((e - s.energy).abs() <= 1e-4 * s.energy.abs().max(1.0), "{e} vs {}", s.energy);
    }

    // CLH degree one: each root a gives a potential with the level at index = nodes
    let roots = solver::clh_coupling_roots(1, 1.0, 1.0 / 32.0, 3).unwrap();
    for a in roots.roots {
        let c = ClhCouplings { a, b: 1.0, c: 1.0 / 32.0 };
        let q = QuantumNumbers::new(3, 0, 1).unwrap();
        let s = solver::clh_wavefunction(&c, &q).unwrap();
        let nodes = oracle::node_count(&s, 50.0);
        let levels = lowest(&PotentialSpec::clh(a, 1.0, 1.0 / 32.0).unwrap(), &q, nodes + 1);
        assert!((levels[nodes] - s.energy).abs() <= 1e-4 * s.energy.abs(), "a={a}");
    }
}

#[test]
fn k_degenerate_oracle_levels() {
    let spec = PotentialSpec::clh(3.0, 1.0, 0.1).unwrap();
    let grid = GridSpec::new(1e-6, 12.0, 800, 2).unwrap();
    let levels: Vec<Vec<f64>> = [(2, 2), (4, 1), (6, 0)]
        .iter()
        .map(|&(d, l)| radial_eigenvalues(&spec, &QuantumNumbers::new(d, l, 0).unwrap(), &grid, 3).unwrap())
        .collect();
    assert_eq!(levels[0], levels[1]);
    assert_eq!(levels[1], levels[2]);
}
