//! The experiment runners. Every grid point is a full simulation; closed
//! forms are evaluated alongside as a separate column where one exists.

use std::cell::RefCell;
use std::f64::consts::FRAC_PI_2;
use std::time::Instant;

use netsteer::channels::NoiseParams;
use netsteer::linalg::SubsystemDims;
use netsteer::network::{
    conditional_states, correlators3, correlators3_operator, correlators4, Scenario3, Scenario4,
};
use netsteer::quantum::DensityMatrix;
use netsteer::sampling::random_density_matrix_on;
use netsteer::scenario::{fixture_text, Network, ScenarioFile};
use netsteer::witnesses::{
    bilocal_test, nchsh3_lhs, nchsh4_lhs, ppt_min_eigenvalue, steering_by_entanglement,
};
use netsteer::{Assemblage, Density, Table3, Table4, Tolerances, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bisect::{bisect, Bisection};
use crate::error::{RunError, RunResult};
use crate::formulas;
use crate::report::{ExperimentReport, Table, Value};
use crate::spec::{SweepKind, SweepSpec};

/// Largest tolerated gap between the two correlator routes.
const ROUTE_AGREEMENT: f64 = 1e-9;

/// Runs the experiment named by `spec.kind` and stamps the duration.
pub fn run(spec: &SweepSpec) -> RunResult<ExperimentReport> {
    let start = Instant::now();
    let mut report = match spec.kind {
        SweepKind::ThreePartyDepolarizing => sweep_3party_depolarizing(spec),
        SweepKind::ThreePartyAmplitude => sweep_3party_amplitude(spec),
        SweepKind::FourPartyDepolarizing | SweepKind::FourPartyAmplitude => sweep_4party(spec),
        SweepKind::Distance => distance_region(spec),
        SweepKind::CompareBilocal => compare_bilocal_steering(spec),
        SweepKind::RandomStudy => random_state_study(spec),
        SweepKind::Witness => witness(spec),
    }?;
    report.duration_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// `n` evenly spaced points from `lo` to `hi`, both included exactly.
pub fn axis(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn par_map<T: Send>(n: usize, f: impl Fn(usize) -> RunResult<T> + Sync + Send) -> RunResult<Vec<T>> {
    (0..n).into_par_iter().map(f).collect()
}

fn finite(x: f64, what: &str) -> RunResult<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(RunError::Numerical(format!("{what} is not finite")))
    }
}

/// Bisection on a fallible function; the first error aborts the search.
fn search(f: impl Fn(f64) -> RunResult<f64>, lo: f64, hi: f64) -> RunResult<Bisection> {
    let failure = RefCell::new(None);
    let b = bisect(
        |x| match f(x) {
            Ok(y) => y,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        lo,
        hi,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(b),
    }
}

fn source(n: NoiseParams<f64>) -> RunResult<Density> {
    n.source().map_err(RunError::numerical)
}

pub fn simulate3(n1: NoiseParams<f64>, n2: NoiseParams<f64>, theta: f64) -> RunResult<Table3> {
    let s = Scenario3::pauli(source(n1)?, source(n2)?, theta).map_err(RunError::numerical)?;
    correlators3(&s).map_err(RunError::numerical)
}

pub fn simulate4(n: [NoiseParams<f64>; 3]) -> RunResult<Table4> {
    let s = Scenario4::pauli(source(n[0])?, source(n[1])?, source(n[2])?, FRAC_PI_2, FRAC_PI_2)
        .map_err(RunError::numerical)?;
    Ok(correlators4(&s))
}

fn lhs3(n1: NoiseParams<f64>, n2: NoiseParams<f64>, theta: f64) -> RunResult<Verdict> {
    let v = nchsh3_lhs(&simulate3(n1, n2, theta)?);
    finite(v.lhs, "witness value")?;
    Ok(v)
}

fn lhs4(n: [NoiseParams<f64>; 3]) -> RunResult<Verdict> {
    let v = nchsh4_lhs(&simulate4(n)?);
    finite(v.lhs, "witness value")?;
    Ok(v)
}

fn depol(v: f64) -> NoiseParams<f64> {
    NoiseParams::Depolarizing { v }
}

fn amp(p: f64) -> NoiseParams<f64> {
    NoiseParams::AmplitudeDamping { p }
}

fn max_abs_gap(table: &Table, a: &str, b: &str) -> f64 {
    table
        .column(a)
        .zip(table.column(b))
        .filter_map(|(x, y)| Some((x.as_f64()? - y.as_f64()?).abs()))
        .fold(0.0, f64::max)
}

/// (v1, v2) grid at fixed θ, with axis, diagonal and boundary thresholds.
pub fn sweep_3party_depolarizing(spec: &SweepSpec) -> RunResult<ExperimentReport> {
    spec.validate()?;
    let theta = spec.theta;
    let vs = axis(spec.grid, 0.0, 1.0);
    let n = vs.len();
    let rows = par_map(n * n, |i| {
        let (v1, v2) = (vs[i / n], vs[i % n]);
        let w = lhs3(depol(v1), depol(v2), theta)?;
        Ok(vec![
            v1.into(),
            v2.into(),
            w.lhs.into(),
            formulas::depolarized3_lhs(v1, v2, theta).into(),
            w.violated.into(),
            w.inconclusive.into(),
        ])
    })?;
    let mut records = Table::new(&["v1", "v2", "lhs", "closed_form", "violated", "inconclusive"]);
    rows.into_iter().for_each(|r| records.push(r));

    let boundary = par_map(n, |j| {
        let v2 = vs[j];
        let b = search(|v1| Ok(lhs3(depol(v1), depol(v2), theta)?.lhs - 2.0), 0.0, 1.0)?;
        Ok(vec![
            v2.into(),
            b.root.into(),
            formulas::depolarized3_boundary(v2, theta).into(),
        ])
    })?;
    let mut curve = Table::new(&["v2", "v1_boundary", "v1_boundary_closed_form"]);
    boundary.into_iter().for_each(|r| curve.push(r));

    let axis_root = search(|v1| Ok(lhs3(depol(v1), depol(0.0), theta)?.lhs - 2.0), 0.0, 1.0)?;
    let diag_root = search(|v| Ok(lhs3(depol(v), depol(v), theta)?.lhs - 2.0), 0.0, 1.0)?;

    let mut report = ExperimentReport::new(spec.clone(), records);
    report.derive("axis_intercept", axis_root.root);
    report.derive("axis_intercept_closed_form", formulas::depolarized3_boundary(0.0, theta));
    report.derive("visibility_product_threshold", 1.0 - axis_root.root);
    report.derive("diagonal_threshold", diag_root.root);
    report.derive("diagonal_threshold_closed_form", formulas::steering_threshold(theta));
    report.derive("noiseless_lhs", lhs3(depol(0.0), depol(0.0), theta)?.lhs);
    report.derive("max_closed_form_deviation", max_abs_gap(&report.records, "lhs", "closed_form"));
    report.derive(
        "max_boundary_deviation",
        max_abs_gap(&curve, "v1_boundary", "v1_boundary_closed_form"),
    );
    report.curves.insert("boundary".into(), curve);
    Ok(report)
}

/// (p1, p2) grid at θ = π/2.
pub fn sweep_3party_amplitude(spec: &SweepSpec) -> RunResult<ExperimentReport> {
    spec.validate()?;
    let ps = axis(spec.grid, 0.0, 1.0);
    let n = ps.len();
    let rows = par_map(n * n, |i| {
        let (p1, p2) = (ps[i / n], ps[i % n]);
        let w = lhs3(amp(p1), amp(p2), FRAC_PI_2)?;
        Ok(vec![
            p1.into(),
            p2.into(),
            w.lhs.into(),
            formulas::amplitude3_lhs(p1, p2).into(),
            w.violated.into(),
            w.inconclusive.into(),
        ])
    })?;
    let mut records = Table::new(&["p1", "p2", "lhs", "closed_form", "violated", "inconclusive"]);
    rows.into_iter().for_each(|r| records.push(r));

    let boundary = par_map(n, |j| {
        let p2 = ps[j];
        let sim = search(|p1| Ok(lhs3(amp(p1), amp(p2), FRAC_PI_2)?.lhs - 2.0), 0.0, 1.0)?;
        let closed = bisect(|p1| formulas::amplitude3_lhs(p1, p2) - 2.0, 0.0, 1.0);
        Ok(vec![p2.into(), sim.root.into(), closed.root.into()])
    })?;
    let mut curve = Table::new(&["p2", "p1_boundary", "p1_boundary_closed_form"]);
    boundary.into_iter().for_each(|r| curve.push(r));

    let axis_root = search(|p1| Ok(lhs3(amp(p1), amp(0.0), FRAC_PI_2)?.lhs - 2.0), 0.0, 1.0)?;
    let mut report = ExperimentReport::new(spec.clone(), records);
    report.derive("axis_intercept", axis_root.root);
    report.derive("axis_intercept_closed_form", formulas::amplitude3_intercept());
    report.derive("noiseless_lhs", lhs3(amp(0.0), amp(0.0), FRAC_PI_2)?.lhs);
    report.derive("max_closed_form_deviation", max_abs_gap(&report.records, "lhs", "closed_form"));
    report.derive(
        "max_boundary_deviation",
        max_abs_gap(&curve, "p1_boundary", "p1_boundary_closed_form"),
    );
    report.curves.insert("boundary".into(), curve);
    Ok(report)
}

/// Span of the length axes for attenuation `alpha`.
pub fn distance_span(alpha: f64) -> f64 {
    1.5 * formulas::distance_bound(alpha)
}

/// (l1, l2) grids, one per α, each spanning 1.5 times that α's bound.
pub fn distance_region(spec: &SweepSpec) -> RunResult<ExperimentReport> {
    spec.validate()?;
    let n = spec.grid;
    let mut records = Table::new(&[
        "alpha",
        "l1",
        "l2",
        "lhs",
        "closed_form",
        "violated",
        "inside_bound",
        "inconclusive",
    ]);
    let mut report_derived = Vec::new();
    for &alpha in &spec.alphas {
        let bound = formulas::distance_bound(alpha);
        let ls = axis(n, 0.0, distance_span(alpha));
        let step = ls[1] - ls[0];
        let fiber = |l: f64| NoiseParams::Distance { alpha, l };
        let rows: Vec<Vec<Value>> = par_map(n * n, |i| {
            let (l1, l2) = (ls[i / n], ls[i % n]);
            let w = lhs3(fiber(l1), fiber(l2), FRAC_PI_2)?;
            Ok(vec![
                alpha.into(),
                l1.into(),
                l2.into(),
                w.lhs.into(),
                formulas::distance_lhs(alpha, l1, l2).into(),
                w.violated.into(),
                (l1 + l2 < bound).into(),
                w.inconclusive.into(),
            ])
        })?;
        let mut worst = 0.0f64;
        let mut mismatches = 0usize;
        for r in &rows {
            let (l1, l2) = (r[1].as_f64().unwrap(), r[2].as_f64().unwrap());
            if r[5] != r[6] {
                mismatches += 1;
                worst = worst.max((l1 + l2 - bound).abs() / step);
            }
        }
        rows.into_iter().for_each(|r| records.push(r));
        let span = distance_span(alpha);
        let sim = search(|l| Ok(lhs3(fiber(l), fiber(0.0), FRAC_PI_2)?.lhs - 2.0), 0.0, span)?;
        report_derived.push((format!("bound[alpha={alpha}]"), bound));
        report_derived.push((format!("sim_intercept[alpha={alpha}]"), sim.root));
        report_derived.push((format!("grid_step[alpha={alpha}]"), step));
        report_derived.push((format!("boundary_mismatches[alpha={alpha}]"), mismatches as f64));
        report_derived.push((format!("max_mismatch_cells[alpha={alpha}]"), worst));
    }
    let mut report = ExperimentReport::new(spec.clone(), records);
    report.derive("ln_3_over_sqrt2", (3.0 / std::f64::consts::SQRT_2).ln());
    for (k, v) in report_derived {
        report.derive(k, v);
    }
    report.derive("max_closed_form_deviation", max_abs_gap(&report.records, "lhs", "closed_form"));
    Ok(report)
}

/// Equal-noise thresholds of the steering and bilocal tests over θ ∈ [0, π/2].
pub fn compare_bilocal_steering(spec: &SweepSpec) -> RunResult<ExperimentReport> {
    spec.validate()?;
    let thetas = axis(spec.grid, 0.0, FRAC_PI_2);
    let rows = par_map(thetas.len(), |i| {
        let theta = thetas[i];
        let steer = search(|v| Ok(lhs3(depol(v), depol(v), theta)?.lhs - 2.0), 0.0, 1.0)?;
        let biloc = search(
            |v| {
                let b = bilocal_test(&simulate3(depol(v), depol(v), theta)?);
                finite(b.B - b.bound, "bilocal value")
            },
            0.0,
            1.0,
        )?;
        Ok(vec![
            theta.into(),
            steer.root.into(),
            formulas::steering_threshold(theta).into(),
            biloc.root.into(),
            formulas::bilocal_threshold(theta).into(),
            (steer.root - biloc.root).into(),
        ])
    })?;
    let mut records = Table::new(&[
        "theta",
        "steering_threshold",
        "steering_threshold_closed_form",
        "bilocal_threshold",
        "bilocal_threshold_closed_form",
        "gap",
    ]);
    rows.into_iter().for_each(|r| records.push(r));
    let last = records.rows.last().expect("grid has points").clone();
    let min_gap = records
        .column("gap")
        .filter_map(Value::as_f64)
        .fold(f64::INFINITY, f64::min);
    let mut report = ExperimentReport::new(spec.clone(), records);
    report.derive("steering_threshold_at_right_angle", last[1].as_f64().unwrap());
    report.derive("bilocal_threshold_at_right_angle", last[3].as_f64().unwrap());
    report.derive("min_gap", min_gap);
    report.derive(
        "max_steering_deviation",
        max_abs_gap(&report.records, "steering_threshold", "steering_threshold_closed_form"),
    );
    report.derive(
        "max_bilocal_deviation",
        max_abs_gap(&report.records, "bilocal_threshold", "bilocal_threshold_closed_form"),
    );
    Ok(report)
}

/// Contingency cell of a (witness, PPT) outcome pair.
pub fn cell(violated: bool, entangled: bool) -> &'static str {
    match (violated, entangled) {
        (true, true) => "both",
        (true, false) => "inequality-only",
        (false, true) => "ppt-only",
        (false, false) => "neither",
    }
}

pub const CELLS: [&str; 4] = ["both", "inequality-only", "ppt-only", "neither"];

/// Named states accepted by `random_state_study`'s injection list.
pub const INJECTABLE: [&str; 4] = ["ppt-blind-1", "ppt-blind-2", "two-singlets", "product"];

fn injected(name: &str) -> RunResult<(Density, Density)> {
    match name {
        "two-singlets" => Ok((netsteer::channels::singlet(), netsteer::channels::singlet())),
        "product" => {
            let zero = DensityMatrix::new(
                netsteer::CMatrix::diag(&[1.0, 0.0, 0.0, 0.0]),
                SubsystemDims::qubits(2),
            )
            .map_err(RunError::numerical)?;
            Ok((zero.clone(), zero))
        }
        _ => {
            let text = fixture_text(name).ok_or_else(|| {
                RunError::Invalid(format!(
                    "unknown injected state {name:?}; expected one of {}",
                    INJECTABLE.join(", ")
                ))
            })?;
            match ScenarioFile::parse(text).map_err(RunError::input)?.network {
                Network::Three(s) => Ok((s.rho_ac, s.rho_bc)),
                Network::Four(_) => Err(RunError::Invalid(format!("{name} is a four-party file"))),
            }
        }
    }
}

/// The sample's generator: the master seed with the sample index as stream.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn check_assemblage(a: &Assemblage, tol: &Tolerances) -> RunResult<()> {
    let total = a.total_probability();
    if (total - 1.0).abs() > tol.trace.max(1e-9) {
        return Err(RunError::Numerical(format!("outcome probabilities sum to {total}")));
    }
    Ok(())
}

fn classify(rho_ac: Density, rho_bc: Density, tol: &Tolerances) -> RunResult<Vec<Value>> {
    let s = Scenario3::pauli(rho_ac, rho_bc, FRAC_PI_2).map_err(RunError::numerical)?;
    let w = nchsh3_lhs(&correlators3(&s).map_err(RunError::numerical)?);
    finite(w.lhs, "witness value")?;
    let a = conditional_states(&s).map_err(RunError::numerical)?;
    check_assemblage(&a, tol)?;
    let entangled = steering_by_entanglement(&a).map_err(RunError::numerical)?;
    let mut min_ppt: Option<f64> = None;
    for o in &a.outcomes {
        if let Some(st) = &o.state {
            let m = ppt_min_eigenvalue(st).map_err(RunError::numerical)?;
            min_ppt = Some(min_ppt.map_or(m, |x| x.min(m)));
        }
    }
    Ok(vec![
        w.lhs.into(),
        w.violated.into(),
        entangled.into(),
        min_ppt.into(),
        cell(w.violated, entangled).into(),
    ])
}

/// Random source pairs, classified by the witness and the PPT test.
pub fn random_state_study(spec: &SweepSpec) -> RunResult<ExperimentReport> {
    spec.validate()?;
    let tol = spec.tolerance_profile.tolerances();
    let dims = SubsystemDims::qubits(2);
    let draw = |rng: &mut ChaCha8Rng| -> RunResult<Density> {
        let r: Density =
            random_density_matrix_on(dims.clone(), spec.rank, rng).map_err(RunError::numerical)?;
        DensityMatrix::with_tolerances(r.into_matrix(), dims.clone(), &tol)
            .map_err(RunError::numerical)
    };
    let mut rows = par_map(spec.samples, |i| {
        let mut rng = sample_rng(spec.seed, i);
        let (ac, bc) = (draw(&mut rng)?, draw(&mut rng)?);
        let mut row = vec![i.into(), "random".into()];
        row.extend(classify(ac, bc, &tol)?);
        Ok(row)
    })?;
    for (j, name) in spec.inject.iter().enumerate() {
        let (ac, bc) = injected(name)?;
        let mut row = vec![(spec.samples + j).into(), name.as_str().into()];
        row.extend(classify(ac, bc, &tol)?);
        rows.push(row);
    }
    let mut records =
        Table::new(&["index", "source", "lhs", "violated", "entangled", "min_ppt", "cell"]);
    rows.into_iter().for_each(|r| records.push(r));
    let mut report = ExperimentReport::new(spec.clone(), records);
    for c in CELLS {
        let count = report.records.column("cell").filter(|v| v.as_str() == Some(c)).count();
        report.derive(c, count as f64);
    }
    let max_ppt_only = report
        .records
        .rows
        .iter()
        .filter(|r| r[6].as_str() == Some("ppt-only"))
        .filter_map(|r| r[2].as_f64())
        .fold(f64::NEG_INFINITY, f64::max);
    if max_ppt_only.is_finite() {
        report.derive("max_lhs_ppt_only", max_ppt_only);
    }
    Ok(report)
}

/// (x1, x2, x3) grid for the two-relay network at θ = π/2.
pub fn sweep_4party(spec: &SweepSpec) -> RunResult<ExperimentReport> {
    spec.validate()?;
    let amplitude = match spec.kind {
        SweepKind::FourPartyDepolarizing => false,
        SweepKind::FourPartyAmplitude => true,
        other => return Err(RunError::Invalid(format!("{other:?} is not a four-party sweep"))),
    };
    let noise = move |x: f64| if amplitude { amp(x) } else { depol(x) };
    let closed = move |x: [f64; 3]| {
        if amplitude {
            formulas::amplitude4_lhs(x)
        } else {
            formulas::depolarized4_lhs(x)
        }
    };
    let xs = axis(spec.grid, 0.0, 1.0);
    let n = xs.len();
    let rows = par_map(n * n * n, |i| {
        let x = [xs[i / (n * n)], xs[(i / n) % n], xs[i % n]];
        let w = lhs4(x.map(noise))?;
        Ok(vec![
            x[0].into(),
            x[1].into(),
            x[2].into(),
            w.lhs.into(),
            closed(x).into(),
            w.violated.into(),
            w.inconclusive.into(),
        ])
    })?;
    let names = if amplitude { ["p1", "p2", "p3"] } else { ["v1", "v2", "v3"] };
    let mut records = Table::new(&[
        names[0],
        names[1],
        names[2],
        "lhs",
        "closed_form",
        "violated",
        "inconclusive",
    ]);
    rows.into_iter().for_each(|r| records.push(r));
    let mut report = ExperimentReport::new(spec.clone(), records);
    for (axis_index, name) in names.iter().enumerate() {
        let root = search(
            |x| {
                let mut p = [0.0; 3];
                p[axis_index] = x;
                Ok(lhs4(p.map(noise))?.lhs - 4.0)
            },
            0.0,
            1.0,
        )?;
        report.derive(format!("axis_intercept_{name}"), root.root);
    }
    let closed_intercept = if amplitude {
        formulas::amplitude4_intercept()
    } else {
        formulas::depolarized4_intercept()
    };
    report.derive("axis_intercept_closed_form", closed_intercept);
    report.derive("noiseless_lhs", lhs4([0.0; 3].map(noise))?.lhs);
    report.derive("max_closed_form_deviation", max_abs_gap(&report.records, "lhs", "closed_form"));
    Ok(report)
}

/// Reads a scenario from a bundled fixture name or a file path.
pub fn load_scenario(name_or_path: &str, tol: Tolerances) -> RunResult<ScenarioFile> {
    let text = match fixture_text(name_or_path) {
        Some(t) => t.to_owned(),
        None => std::fs::read_to_string(name_or_path)
            .map_err(|e| RunError::io(name_or_path, e))?,
    };
    ScenarioFile::parse_with(&text, tol).map_err(RunError::input)
}

/// Every witness on one scenario file; one record.
pub fn witness(spec: &SweepSpec) -> RunResult<ExperimentReport> {
    spec.validate()?;
    let tol = spec.tolerance_profile.tolerances();
    let file = load_scenario(spec.scenario.as_deref().unwrap_or_default(), tol)?;
    let mut cols: Vec<String> = vec!["lhs".into(), "bound".into(), "violated".into(), "inconclusive".into()];
    let mut row: Vec<Value> = Vec::new();
    let mut derived = Vec::new();
    match &file.network {
        Network::Three(s) => {
            let t = correlators3(s).map_err(RunError::numerical)?;
            let gap = t.max_abs_diff(&correlators3_operator(s));
            if gap.is_nan() || gap > ROUTE_AGREEMENT {
                return Err(RunError::Numerical(format!(
                    "correlator routes disagree by {gap:e}"
                )));
            }
            let w = nchsh3_lhs(&t);
            let b = bilocal_test(&t);
            let a = conditional_states(s).map_err(RunError::numerical)?;
            check_assemblage(&a, &tol)?;
            let entangled = steering_by_entanglement(&a).map_err(RunError::numerical)?;
            row.extend([w.lhs.into(), w.bound.into(), w.violated.into(), w.inconclusive.into()]);
            for (i, term) in w.terms.iter().enumerate() {
                cols.push(format!("term{}", i + 1));
                row.push((*term).into());
            }
            cols.extend(["bilocal_B", "bilocal_bound", "bilocal_violated"].map(String::from));
            row.extend([b.B.into(), b.bound.into(), b.violated.into()]);
            for (c, o) in a.outcomes.iter().enumerate() {
                cols.push(format!("p{}", c + 1));
                row.push(o.probability.into());
                cols.push(format!("ppt_min{}", c + 1));
                let m = match &o.state {
                    Some(st) => Some(ppt_min_eigenvalue(st).map_err(RunError::numerical)?),
                    None => None,
                };
                row.push(m.into());
            }
            cols.push("entangled".into());
            row.push(entangled.into());
            cols.push("cell".into());
            row.push(cell(w.violated, entangled).into());
            derived.push(("route_gap", gap));
        }
        Network::Four(s) => {
            let t = correlators4(s);
            let other = netsteer::network::correlators4_outcome_sum(s).map_err(RunError::numerical)?;
            let gap = t.max_abs_diff(&other);
            if gap.is_nan() || gap > ROUTE_AGREEMENT {
                return Err(RunError::Numerical(format!(
                    "correlator routes disagree by {gap:e}"
                )));
            }
            let w = nchsh4_lhs(&t);
            row.extend([w.lhs.into(), w.bound.into(), w.violated.into(), w.inconclusive.into()]);
            for (i, term) in w.terms.iter().enumerate() {
                cols.push(format!("term{}", i + 1));
                row.push((*term).into());
            }
            derived.push(("route_gap", gap));
        }
    }
    finite(row[0].as_f64().unwrap_or(f64::NAN), "witness value")?;
    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut records = Table::new(&cols);
    records.push(row);
    let mut report = ExperimentReport::new(spec.clone(), records);
    for (k, v) in derived {
        report.derive(k, v);
    }
    Ok(report)
}
