use qes_core::duality::{clh_to_sextic, sextic_to_clh, verify_duality};
use qes_core::oracle::{self, GridSpec};
use qes_core::solver::{self, sextic_termination_constraint};
use qes_core::tables::{self, ImageRow};
use qes_core::{BoundState, ConstraintReport, Potential, PotentialSpec, QuantumNumbers, Tolerances};
use rayon::prelude::*;

use crate::args::{FamilyArg, ProblemArgs, SolveArgs, TableArgs, TransformArgs, VerifyArgs};
use crate::error::CliError;
use crate::output::{Check, Layout, Record, Report, Value};

/// Default relative tolerance of analytic vs oracle energies.
pub const VERIFY_TOLERANCE: f64 = 1e-4;
/// Limit on the relative Schrodinger residual of an analytic state.
pub const RESIDUAL_LIMIT: f64 = 1e-8;
const RESIDUAL_SAMPLES: usize = 32;

/// A command's report and, when a check failed, the error deciding the exit status.
pub struct Outcome {
    pub report: Report,
    pub failure: Option<CliError>,
}

struct Problem {
    spec: PotentialSpec,
    q: QuantumNumbers,
    inputs: Record,
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::Clh => "clh",
        FamilyArg::Sextic => "sextic",
        FamilyArg::Harmonic => "harmonic",
        FamilyArg::Coulomb => "coulomb",
    }
}

fn problem(args: &ProblemArgs) -> Result<Problem, CliError> {
    let Some(family) = args.family else {
        return usage("--family is required");
    };
    let name = family_name(family);
    let given = [
        ("a", args.a),
        ("b", args.b),
        ("c", args.c),
        ("mu", args.mu),
        ("lambda", args.lambda),
        ("eta", args.eta),
        ("omega", args.omega),
        ("z", args.z),
    ];
    let allowed: &[&str] = match family {
        FamilyArg::Clh => &["a", "b", "c"],
        FamilyArg::Sextic => &["mu", "lambda", "eta"],
        FamilyArg::Harmonic => &["mu", "omega"],
        FamilyArg::Coulomb => &["z"],
    };
    for (flag, value) in given {
        if value.is_some() && !allowed.contains(&flag) {
            return usage(format!("--{flag} does not apply to the {name} family"));
        }
    }
    let need = |flag: &str, value: Option<f64>| {
        value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for the {name} family")))
    };
    let spec = match family {
        FamilyArg::Clh => PotentialSpec::clh(need("a", args.a)?, need("b", args.b)?, need("c", args.c)?)?,
        FamilyArg::Sextic => {
            PotentialSpec::sextic(need("mu", args.mu)?, need("lambda", args.lambda)?, need("eta", args.eta)?)?
        }
        FamilyArg::Harmonic => match (args.mu, args.omega) {
            (Some(mu), None) => PotentialSpec::harmonic(mu)?,
            (None, Some(omega)) => PotentialSpec::harmonic_omega(omega)?,
            (Some(_), Some(_)) => return usage("give one of --mu and --omega"),
            (None, None) => return usage("--mu or --omega is required for the harmonic family"),
        },
        FamilyArg::Coulomb => PotentialSpec::coulomb(need("z", args.z)?)?,
    };
    let p = match (args.p, args.n) {
        (Some(p), Some(n)) if p != n => return usage(format!("--p {p} and --n {n} disagree")),
        (p, n) => p.or(n).unwrap_or(0),
    };
    let q = match args.k {
        Some(k) => {
            if args.dim.is_some() || args.ell.is_some() {
                return usage("--k replaces --D and --ell; give one or the other");
            }
            QuantumNumbers::from_k(k, p)?
        }
        None => {
            let Some(dim) = args.dim else {
                return usage("--D or --k is required");
            };
            QuantumNumbers::new(dim, args.ell.unwrap_or(0), p)?
        }
    };
    let mut inputs: Record = vec![("family", name.into())];
    inputs.extend(given.into_iter().filter_map(|(flag, v)| v.map(|x| (flag, Value::Num(x)))));
    inputs.extend(quantum_fields(&q));
    Ok(Problem { spec, q, inputs })
}

fn quantum_fields(q: &QuantumNumbers) -> Record {
    vec![
        ("D", q.dim().into()),
        ("ell", q.ell().into()),
        ("k", q.k().into()),
        ("p", q.p().into()),
    ]
}

/// The coupling condition of the quasi-exact families.
fn constraint(problem: &Problem, tolerance: f64) -> Result<Option<ConstraintReport>, CliError> {
    let (p, k) = (problem.q.p(), problem.q.k());
    let report = match problem.spec.kind() {
        Potential::Clh(c) => solver::clh_coupling_constraint(p, c, k)?,
        Potential::Sextic(s) => sextic_termination_constraint(p, s, k)?,
        _ => return Ok(None),
    };
    Ok(Some(report.with_tolerance(tolerance)))
}

fn constraint_check(report: &ConstraintReport) -> Check {
    let relative = if report.scale > 0.0 {
        report.residual.abs() / report.scale
    } else {
        report.residual.abs()
    };
    Check::at_most(report.description.clone(), relative, report.tolerance)
}

fn constraint_failure(report: &ConstraintReport) -> CliError {
    CliError::Constraint(format!(
        "{} residual = {:e} (scale {:e})",
        report.description, report.residual, report.scale
    ))
}

fn state_record(state: &BoundState, residual: f64) -> Record {
    let mut record: Record = vec![("family", state.family.to_string().into())];
    record.extend(quantum_fields(&state.q));
    record.extend([
        ("E", state.energy.into()),
        ("constraint_residual", residual.into()),
        ("coeffs", Value::Nums(state.coeffs.clone())),
        ("alpha", state.exponent.alpha().into()),
        ("beta", state.exponent.beta().into()),
    ]);
    record
}

pub fn solve(args: &SolveArgs) -> Result<Outcome, CliError> {
    let problem = problem(&args.problem)?;
    let tol = Tolerances {
        constraint: args.tolerance.unwrap_or(Tolerances::default().constraint),
        ..Tolerances::default()
    };
    let constraint = constraint(&problem, tol.constraint)?;
    if let Some(report) = constraint.as_ref().filter(|r| !r.satisfied) {
        return Err(constraint_failure(report));
    }
    let states = solver::solve(&problem.spec, &problem.q, &tol)?;
    let residual = constraint.as_ref().map_or(0.0, |r| r.residual);

    let mut inputs = problem.inputs;
    inputs.push(("tolerance", tol.constraint.into()));
    let mut report = Report::new("solve", inputs);
    report.results = states.iter().map(|s| state_record(s, residual)).collect();
    report.checks.extend(constraint.as_ref().map(constraint_check));
    Ok(Outcome { report, failure: None })
}

pub fn transform(args: &TransformArgs) -> Result<Outcome, CliError> {
    let problem = problem(&args.problem)?;
    let tolerance = args.tolerance.unwrap_or(Tolerances::default().constraint);
    match problem.spec.kind() {
        Potential::Clh(c) => {
            if args.e_hat.is_some() || args.gauge_energy.is_some() {
                return usage("--e-hat and --gauge-energy apply to the sextic direction");
            }
            let energy = match args.energy {
                Some(e) => e,
                None => {
                    let tol = Tolerances {
                        constraint: tolerance,
                        ..Tolerances::default()
                    };
                    solver::clh_wavefunction_with(c, &problem.q, &tol)?.energy
                }
            };
            let image = clh_to_sextic(c, energy, &problem.q)?;
            let termination =
                sextic_termination_constraint(problem.q.p(), &image.sextic, image.k_prime())?.with_tolerance(tolerance);

            let mut inputs = problem.inputs;
            inputs.push(("energy", energy.into()));
            inputs.push(("tolerance", tolerance.into()));
            let mut report = Report::new("transform", inputs);
            let mut record: Record = vec![
                ("family", "sextic".into()),
                ("mu", image.sextic.mu.into()),
                ("lambda", image.sextic.lambda.into()),
                ("eta", image.sextic.eta.into()),
            ];
            record.extend(quantum_fields(&image.quantum_numbers(problem.q.p())?));
            record.extend([
                ("E", image.e_hat.into()),
                ("gamma", image.gamma.into()),
                ("clh_energy", energy.into()),
            ]);
            report.results.push(record);
            report.checks.push(constraint_check(&termination));
            let failure = (!termination.satisfied).then(|| constraint_failure(&termination));
            Ok(Outcome { report, failure })
        }
        Potential::Sextic(s) => {
            if args.energy.is_some() {
                return usage("--energy applies to the clh direction");
            }
            let (Some(e_hat), Some(gauge)) = (args.e_hat, args.gauge_energy) else {
                return usage("the sextic direction needs --e-hat and --gauge-energy");
            };
            let pre = sextic_to_clh(s, e_hat, gauge, problem.q.dim(), problem.q.ell())?;
            let q_pre = QuantumNumbers::new(i64::from(pre.dim), i64::from(pre.ell), i64::from(problem.q.p()))?;
            let back = clh_to_sextic(&pre.couplings, gauge, &q_pre)?;
            let relative = |x: f64, y: f64| if y == 0.0 { (x - y).abs() } else { ((x - y) / y).abs() };
            let round_trip = relative(back.sextic.lambda, s.lambda)
                .max(relative(back.sextic.eta, s.eta))
                .max(relative(back.e_hat, e_hat));

            let mut inputs = problem.inputs;
            inputs.push(("e_hat", e_hat.into()));
            inputs.push(("gauge_energy", gauge.into()));
            let mut report = Report::new("transform", inputs);
            let mut record: Record = vec![
                ("family", "clh".into()),
                ("a", pre.couplings.a.into()),
                ("b", pre.couplings.b.into()),
                ("c", pre.couplings.c.into()),
            ];
            record.extend(quantum_fields(&q_pre));
            record.push(("E", gauge.into()));
            report.results.push(record);
            report.checks.push(Check::at_most("forward map reproduces the sextic problem", round_trip, 1e-12));
            let failure = (round_trip > 1e-12).then(|| CliError::Solver(format!("round trip deviates by {round_trip:e}")));
            Ok(Outcome { report, failure })
        }
        _ => usage("transform applies to the clh and sextic families"),
    }
}

fn grid_for(args: &VerifyArgs, problem: &Problem, count: usize) -> Result<GridSpec, CliError> {
    let mut grid = GridSpec::default_for(&problem.spec, &problem.q, count)?;
    if let Some(r_max) = args.r_max {
        grid = grid.with_r_max(r_max)?;
    }
    if let Some(n) = args.grid_points {
        grid = grid.with_points(n)?;
    }
    Ok(grid)
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let problem = problem(&args.problem)?;
    let tolerance = args.tolerance.unwrap_or(VERIFY_TOLERANCE);
    let states = solver::solve(&problem.spec, &problem.q, &Tolerances::default())?;

    let span = grid_for(args, &problem, problem.q.p() as usize + 1)?.r_max;
    let nodes: Vec<usize> = states.iter().map(|s| oracle::node_count(s, span)).collect();
    let count = nodes.iter().max().map_or(1, |n| n + 1);
    let grid = grid_for(args, &problem, count)?;
    let levels = oracle::radial_eigenvalues(&problem.spec, &problem.q, &grid, count)?;

    let mut inputs = problem.inputs;
    inputs.extend([
        ("tolerance", tolerance.into()),
        ("r_max", grid.r_max.into()),
        ("grid_points", grid.n_points.into()),
        ("refinement_levels", grid.refinement_levels.into()),
    ]);
    let mut report = Report::new("verify", inputs);

    for (i, (state, &node)) in states.iter().zip(&nodes).enumerate() {
        let oracle_energy = levels[node];
        let delta = (state.energy - oracle_energy).abs();
        let relative = if state.energy == 0.0 { delta } else { delta / state.energy.abs() };
        let samples = oracle::classically_allowed_samples(&problem.spec, state.energy, RESIDUAL_SAMPLES)?;
        let residual = oracle::residual_check(state, &problem.spec, &samples);
        let energy_check = Check::at_most(format!("state {i}: oracle level {node} agrees"), relative, tolerance);
        let residual_check = Check::at_most(format!("state {i}: equation residual"), residual, RESIDUAL_LIMIT);

        let mut record: Record = vec![("family", state.family.to_string().into())];
        record.extend(quantum_fields(&state.q));
        record.extend([
            ("state", i.into()),
            ("nodes", node.into()),
            ("E_analytic", state.energy.into()),
            ("E_oracle", oracle_energy.into()),
            ("abs_delta", delta.into()),
            ("rel_delta", relative.into()),
            ("residual_max", residual.into()),
            ("pass", (energy_check.pass && residual_check.pass).into()),
        ]);
        report.results.push(record);
        report.checks.extend([energy_check, residual_check]);
    }

    if let Potential::Clh(c) = problem.spec.kind() {
        let energy = states[0].energy;
        if energy < 0.0 && problem.q.dim() >= 3 {
            let duality = verify_duality(c, &problem.q)?;
            report.checks.push(constraint_check(&duality.termination));
            report.checks.push(Check::at_most(
                "sextic image has the mapped eigenvalue",
                duality.deviation / duality.image.e_hat.abs(),
                1e-9,
            ));
        }
    }

    if let Some(asserted) = args.assert_energy {
        let nearest = levels
            .iter()
            .map(|l| if *l == 0.0 { (asserted - l).abs() } else { ((asserted - l) / l).abs() })
            .fold(f64::INFINITY, f64::min);
        report.checks.push(Check::at_most(format!("asserted energy {asserted} is an oracle level"), nearest, tolerance));
    }

    let failed = report.failed_checks();
    let failure = (!failed.is_empty()).then(|| {
        CliError::Verification(failed.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join("; "))
    });
    Ok(Outcome { report, failure })
}

/// Limits on the deviations from the printed tables.
const PRINTED_DIGITS: f64 = 1e-11;
const TABLE2_AGREEMENT: f64 = 1e-10;
const TABLE3_EXACT: f64 = 5e-9;

fn max_deviation(pairs: impl Iterator<Item = (f64, f64)>) -> f64 {
    pairs.map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn table(args: &TableArgs) -> Result<Outcome, CliError> {
    let mut report = Report::new("table", vec![("table_id", args.id.into())]);
    report.layout = Layout::Columns;
    let published = tables::published();
    if args.id == 1 {
        let rows = published
            .table1
            .par_iter()
            .map(tables::table1_row)
            .collect::<Result<Vec<_>, _>>()?;
        for row in &rows {
            let s = &row.source;
            report.results.push(vec![
                ("a", s.a.into()),
                ("b", s.b.into()),
                ("c", s.c.into()),
                ("ell", s.ell.into()),
                ("D", s.dim.into()),
                ("present", row.termination_energy.into()),
                ("exact", row.closed_form_energy.into()),
            ]);
        }
        let present = max_deviation(rows.iter().map(|r| (r.termination_energy, r.source.present)));
        let exact = max_deviation(rows.iter().map(|r| (r.closed_form_energy, r.source.susyqm)));
        report.footer.push(vec![
            ("a", "max_abs_deviation".into()),
            ("present", present.into()),
            ("exact", exact.into()),
        ]);
        report.checks.extend([
            Check::at_most("max |present - printed present|", present, PRINTED_DIGITS),
            Check::at_most("max |exact - printed exact|", exact, PRINTED_DIGITS),
        ]);
    } else {
        let source: &[ImageRow] = published.image_rows(args.id)?;
        let rows = source
            .par_iter()
            .map(tables::image_row)
            .collect::<Result<Vec<_>, _>>()?;
        for row in &rows {
            report.results.push(vec![
                ("potential", row.published.potential.clone().into()),
                ("ell", row.published.ell.into()),
                ("present", row.present.into()),
                ("exact", row.exact.into()),
                ("hill", row.published.hill.into()),
            ]);
        }
        let present = max_deviation(rows.iter().map(|r| (r.present, r.published.present)));
        let exact = max_deviation(rows.iter().map(|r| (r.exact, r.published.exact)));
        let hill = rows
            .iter()
            .filter_map(|r| r.published.hill.map(|h| (r.present, h)))
            .collect::<Vec<_>>();
        let hill_deviation = (!hill.is_empty()).then(|| max_deviation(hill.into_iter()));
        report.footer.push(vec![
            ("potential", "max_abs_deviation".into()),
            ("present", present.into()),
            ("exact", exact.into()),
            ("hill", hill_deviation.into()),
        ]);
        report.footer.push(vec![
            ("potential", "source".into()),
            ("present", "computed".into()),
            ("exact", "computed".into()),
            ("hill", if hill_deviation.is_some() { "external".into() } else { Value::Empty }),
        ]);
        report
            .checks
            .push(Check::at_most("max |present - printed present|", present, PRINTED_DIGITS));
        if args.id == 2 {
            let agreement = max_deviation(rows.iter().map(|r| (r.present, r.exact)));
            report
                .checks
                .push(Check::at_most("max |present - exact|", agreement, TABLE2_AGREEMENT));
        } else {
            report
                .checks
                .push(Check::at_most("max |present - printed exact|", exact, TABLE3_EXACT));
        }
    }
    let failed = report.failed_checks();
    let failure = (!failed.is_empty()).then(|| {
        CliError::Verification(failed.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join("; "))
    });
    Ok(Outcome { report, failure })
}
