//! Subcommand execution and rendering.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use super::spec::{Command, Format, RunSpec, SystemKind};
use super::{spec_from_json, CliError, EXIT_NUMERICAL, EXIT_OK};
use crate::analysis::{
    degeneracy_radius, degeneracy_scan, runge_defect, uncertainty_check, DefectKind,
};
use crate::eigensolver::{
    build_state, detect_crossings, find_levels, radius_flow, spectral_flow, Diagnostic, FlowAxis,
    Level, SolveConfig, SpectralFlow,
};
use crate::models::{BoundaryCondition, ModelKind, RadialModel};

pub(super) const CSV_HEADER: [&str; 11] = [
    "system",
    "kind",
    "l_or_m",
    "s",
    "R",
    "u",
    "gamma",
    "branch",
    "nodes",
    "energy",
    "energy_units",
];

const FLOW_POINTS: usize = 201;
const CROSSING_POINTS: usize = 81;
const DEFAULT_STATES: usize = 5;
const CROSSING_STATES: usize = 3;
const DEFAULT_DEGENERACY_TOL: f64 = 1e-8;

/// Results of one run, ready to render.
pub(super) struct Output {
    pub results: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub diagnostics: Vec<Value>,
    /// A missed root or missing ground state was reported.
    pub flagged: bool,
}

impl Output {
    fn new(results: Value, header: &[&'static str]) -> Self {
        Self {
            results,
            header: header.to_vec(),
            rows: Vec::new(),
            diagnostics: Vec::new(),
            flagged: false,
        }
    }

    fn diagnose(&mut self, at: Option<f64>, d: &Diagnostic) {
        if matches!(
            d,
            Diagnostic::MissedRoot { .. } | Diagnostic::GroundStateMissing { .. }
        ) {
            self.flagged = true;
        }
        let mut v = serde_json::to_value(d).unwrap_or(Value::Null);
        if let (Some(p), Value::Object(map)) = (at, &mut v) {
            map.insert("parameter".into(), num(p));
        }
        self.diagnostics.push(v);
    }
}

/// JSON number, with non-finite values spelled out.
pub(super) fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn cell(x: f64) -> String {
    let a = x.abs();
    if !x.is_finite() {
        format!("{x}").to_ascii_lowercase()
    } else if a != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn system_label(kind: ModelKind) -> &'static str {
    match kind {
        ModelKind::FreeSphere => "free",
        ModelKind::HydrogenSphere => "hydrogen",
        ModelKind::HydrogenCone => "cone",
    }
}

fn boundary_kind(bc: &BoundaryCondition) -> &'static str {
    if bc.is_dirichlet() {
        "dirichlet"
    } else if bc.is_negative_dirichlet() {
        "neg-dirichlet"
    } else if bc.u() == 0.0 {
        "neumann"
    } else {
        "robin"
    }
}

fn s_of(model: &RadialModel) -> f64 {
    match model.kind() {
        ModelKind::HydrogenCone => model.s(),
        _ => 1.0,
    }
}

fn model_json(spec: &RunSpec, model: &RadialModel) -> Value {
    json!({
        "system": system_label(model.kind()),
        "description": model.describe(),
        "l_or_m": model.angular_label(),
        "s": s_of(model),
        "radius": model.radius(),
        "energy_units": spec.energy_units_label(model),
    })
}

struct Row<'a> {
    spec: &'a RunSpec,
    model: &'a RadialModel,
    bc: &'a BoundaryCondition,
    branch: usize,
    level: Level,
}

impl Row<'_> {
    fn cells(&self) -> Vec<String> {
        let unit = self.spec.energy_unit(self.model);
        vec![
            system_label(self.model.kind()).into(),
            boundary_kind(self.bc).into(),
            self.model.angular_label().to_string(),
            cell(s_of(self.model)),
            cell(self.model.radius()),
            cell(self.bc.u()),
            cell(self.bc.gamma(self.model.radius())),
            self.branch.to_string(),
            self.level.nodes.to_string(),
            cell(self.level.energy / unit),
            self.spec.energy_units_label(self.model).into(),
        ]
    }
}

fn level_json(spec: &RunSpec, model: &RadialModel, branch: usize, lv: &Level) -> Value {
    json!({
        "branch": branch,
        "nodes": lv.nodes,
        "energy": lv.energy / spec.energy_unit(model),
        "energy_raw": lv.energy,
    })
}

pub(super) fn dispatch(spec: &RunSpec) -> Result<Output, CliError> {
    match spec.command {
        Command::Spectrum => spectrum(spec),
        Command::Flow => flow(spec),
        Command::Crossing => crossing(spec),
        Command::Degeneracy | Command::ConeDegeneracy => degeneracy(spec),
        Command::Uncertainty => uncertainty(spec),
        Command::Defect => defect(spec),
        Command::Verify => Err(CliError::Validation(
            "verify takes a JSON output document via --config".into(),
        )),
    }
}

fn spectrum(spec: &RunSpec) -> Result<Output, CliError> {
    let model = spec.model()?;
    let bc = spec.boundary(&model)?;
    let cfg = spec.solve_config(&model, DEFAULT_STATES)?;
    let set = find_levels(&model, &bc, &cfg)?;
    let mut results = model_json(spec, &model);
    results["u"] = num(bc.u());
    results["gamma"] = num(bc.gamma(model.radius()));
    results["levels"] = set
        .levels
        .iter()
        .enumerate()
        .map(|(i, lv)| level_json(spec, &model, i, lv))
        .collect();
    let mut out = Output::new(results, &CSV_HEADER);
    for (i, lv) in set.levels.iter().enumerate() {
        let row = Row {
            spec,
            model: &model,
            bc: &bc,
            branch: i,
            level: *lv,
        };
        out.rows.push(row.cells());
    }
    for d in &set.diagnostics {
        out.diagnose(None, d);
    }
    Ok(out)
}

fn flow(spec: &RunSpec) -> Result<Output, CliError> {
    let flow = match &spec.radii {
        Some(radii) => {
            let first = radii
                .first()
                .ok_or_else(|| CliError::Validation("--radii must not be empty".into()))?;
            let base = RunSpec {
                radius: Some(*first),
                ..spec.clone()
            };
            let model = base.model()?;
            let gamma = match (&spec.boundary, spec.u) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Validation(
                        "give either a boundary value or --u, not both".into(),
                    ))
                }
                (_, Some(_)) => {
                    return Err(CliError::Validation(
                        "a radius flow holds γ fixed; give --boundary instead of --u".into(),
                    ))
                }
                (Some(token), None) => {
                    if base.gamma_units() == super::GammaUnits::Radius
                        && token.trim().parse::<f64>().is_ok()
                    {
                        return Err(CliError::Validation(
                            "a radius flow needs γ in absolute units; pass --gamma-units bohr"
                                .into(),
                        ));
                    }
                    base.parse_gamma(token, &model)?
                }
                (None, None) => f64::INFINITY,
            };
            let cfg = base.solve_config(&model, DEFAULT_STATES)?;
            radius_flow(&model, gamma, radii, &cfg)?
        }
        None => {
            let model = spec.model()?;
            if spec.boundary.is_some() || spec.u.is_some() {
                return Err(CliError::Validation(
                    "a u flow sweeps the boundary; use --urange instead of --boundary/--u".into(),
                ));
            }
            let cfg = spec.solve_config(&model, DEFAULT_STATES)?;
            spectral_flow(&model, &spec.u_grid(FLOW_POINTS)?, &cfg)?
        }
    };
    flow_output(spec, &flow)
}

fn column_of(flow: &SpectralFlow, p: f64) -> Result<(RadialModel, BoundaryCondition), CliError> {
    Ok(flow.column(p)?)
}

fn flow_output(spec: &RunSpec, flow: &SpectralFlow) -> Result<Output, CliError> {
    let mut results = model_json(spec, &flow.model);
    let axis = match flow.axis {
        FlowAxis::BoundaryAngle => json!({"axis": "u"}),
        FlowAxis::Radius { gamma } => json!({"axis": "radius", "gamma": num(gamma)}),
    };
    results["axis"] = axis;
    let mut out = Output::new(Value::Null, &CSV_HEADER);
    let mut branches = Vec::with_capacity(flow.branches.len());
    for b in &flow.branches {
        let mut points = Vec::with_capacity(b.points.len());
        for p in &b.points {
            let (model, bc) = column_of(flow, p.parameter)?;
            let level = Level {
                energy: p.energy,
                nodes: p.nodes,
            };
            points.push(json!({
                "parameter": p.parameter,
                "u": num(bc.u()),
                "gamma": num(bc.gamma(model.radius())),
                "radius": model.radius(),
                "nodes": p.nodes,
                "energy": p.energy / spec.energy_unit(&model),
                "energy_raw": p.energy,
            }));
            let row = Row {
                spec,
                model: &model,
                bc: &bc,
                branch: b.id,
                level,
            };
            out.rows.push(row.cells());
        }
        branches.push(json!({"id": b.id, "node_count": b.node_count, "points": points}));
    }
    results["branches"] = Value::Array(branches);
    out.results = results;
    for (p, d) in &flow.diagnostics {
        out.diagnose(Some(*p), d);
    }
    Ok(out)
}

fn crossing(spec: &RunSpec) -> Result<Output, CliError> {
    let model = spec.model()?;
    if spec.boundary.is_some() || spec.u.is_some() {
        return Err(CliError::Validation(
            "crossing sweeps the boundary; use --urange instead of --boundary/--u".into(),
        ));
    }
    let cfg = spec.solve_config(&model, CROSSING_STATES)?;
    let flow = spectral_flow(&model, &spec.u_grid(CROSSING_POINTS)?, &cfg)?;
    let reports = detect_crossings(&flow)?;
    let unit = spec.energy_unit(&model);
    let mut results = model_json(spec, &model);
    results["urange"] = json!([flow.parameters.first(), flow.parameters.last()]);
    results["crossings"] = reports
        .iter()
        .map(|c| {
            json!({
                "lower_branch": c.lower_branch,
                "upper_branch": c.upper_branch,
                "u_star": c.u_star,
                "gamma_star": num(c.gamma_star),
                "gap": c.gap / unit,
                "gap_raw": c.gap,
                "energy_star": c.e_star / unit,
                "energy_star_raw": c.e_star,
            })
        })
        .collect();
    let header = [
        "system",
        "l_or_m",
        "R",
        "lower_branch",
        "upper_branch",
        "u_star",
        "gamma_star",
        "gap",
        "energy_star",
        "energy_units",
    ];
    let mut out = Output::new(results, &header);
    for c in &reports {
        out.rows.push(vec![
            system_label(model.kind()).into(),
            model.angular_label().to_string(),
            cell(model.radius()),
            c.lower_branch.to_string(),
            c.upper_branch.to_string(),
            cell(c.u_star),
            cell(c.gamma_star),
            cell(c.gap / unit),
            cell(c.e_star / unit),
            spec.energy_units_label(&model).into(),
        ]);
    }
    for (p, d) in &flow.diagnostics {
        out.diagnose(Some(*p), d);
    }
    Ok(out)
}

fn degeneracy(spec: &RunSpec) -> Result<Output, CliError> {
    let model = spec.model()?;
    let on_cone = model.kind() == ModelKind::HydrogenCone;
    if spec.command == Command::Degeneracy && spec.system == SystemKind::Free {
        return Err(CliError::Validation(
            "degeneracy scans need --system hydrogen or cone".into(),
        ));
    }
    let gammas = match &spec.gammas {
        Some(tokens) if tokens.is_empty() => {
            return Err(CliError::Validation("--gammas must not be empty".into()))
        }
        Some(tokens) => tokens
            .iter()
            .map(|t| spec.parse_gamma(t, &model))
            .collect::<Result<Vec<_>, _>>()?,
        None => {
            let r = model.radius();
            let special = if on_cone { 1.5 / r } else { 2.0 / r };
            vec![special, f64::INFINITY, f64::NEG_INFINITY, 1.0 / r]
        }
    };
    let n_pairs = spec.pairs.unwrap_or(if on_cone { 1 } else { 2 });
    let unit = spec.energy_unit(&model);
    let tol = spec.tol.unwrap_or(DEFAULT_DEGENERACY_TOL);
    let reports = degeneracy_scan(&model, &gammas, n_pairs, tol * unit)?;
    let mut results = model_json(spec, &model);
    results["degeneracy_radius"] = degeneracy_radius(&model).map_or(Value::Null, num);
    results["tol"] = json!(tol);
    let header = [
        "system",
        "R",
        "u",
        "gamma",
        "lower",
        "partner",
        "energy_lower",
        "energy_partner",
        "gap",
        "degenerate",
        "energy_units",
    ];
    let mut out = Output::new(Value::Null, &header);
    let mut scans = Vec::with_capacity(reports.len());
    for rep in &reports {
        let pair_json = |p: &crate::analysis::DegeneratePair| {
            json!({
                "lower": p.lower.name,
                "partner": p.partner.name,
                "lower_angular": p.lower.angular,
                "lower_n_r": p.lower.n_r,
                "partner_angular": p.partner.angular,
                "partner_n_r": p.partner.n_r,
                "energy_lower": p.energy_lower / unit,
                "energy_lower_raw": p.energy_lower,
                "energy_partner": p.energy_partner / unit,
                "energy_partner_raw": p.energy_partner,
                "gap": p.gap / unit,
            })
        };
        scans.push(json!({
            "gamma": num(rep.gamma),
            "u": rep.u,
            "degenerate": rep.is_degenerate(),
            "max_gap": rep.max_gap() / unit,
            "pairs": rep.pairs.iter().map(pair_json).collect::<Vec<_>>(),
            "split": rep.split.iter().map(pair_json).collect::<Vec<_>>(),
        }));
        let mut all: Vec<_> = rep.pairs.iter().map(|p| (p, true)).collect();
        all.extend(rep.split.iter().map(|p| (p, false)));
        all.sort_by_key(|(p, _)| p.lower.n_r);
        for (p, degenerate) in all {
            out.rows.push(vec![
                rep.system.clone(),
                cell(rep.radius),
                cell(rep.u),
                cell(rep.gamma),
                p.lower.name.clone(),
                p.partner.name.clone(),
                cell(p.energy_lower / unit),
                cell(p.energy_partner / unit),
                cell(p.gap / unit),
                degenerate.to_string(),
                spec.energy_units_label(&model).into(),
            ]);
        }
    }
    results["scans"] = Value::Array(scans);
    out.results = results;
    Ok(out)
}

/// Solves the spectrum and hands each normalized state to `report`.
fn per_state<F>(spec: &RunSpec, header: &[&'static str], mut report: F) -> Result<Output, CliError>
where
    F: FnMut(&crate::models::EigenState) -> Result<(Value, Vec<String>), CliError>,
{
    let model = spec.model()?;
    let bc = spec.boundary(&model)?;
    let cfg: SolveConfig = spec.solve_config(&model, DEFAULT_STATES)?;
    let set = find_levels(&model, &bc, &cfg)?;
    let unit = spec.energy_unit(&model);
    let mut results = model_json(spec, &model);
    results["u"] = num(bc.u());
    results["gamma"] = num(bc.gamma(model.radius()));
    let mut out = Output::new(Value::Null, header);
    let mut states = Vec::with_capacity(set.levels.len());
    for (i, lv) in set.levels.iter().enumerate() {
        let state = build_state(&model, &bc, &cfg, lv)?;
        let (mut v, tail) = report(&state)?;
        if let Value::Object(map) = &mut v {
            let mut head = Map::new();
            head.insert("branch".into(), json!(i));
            head.insert("nodes".into(), json!(lv.nodes));
            head.insert("energy".into(), json!(lv.energy / unit));
            head.insert("energy_raw".into(), json!(lv.energy));
            head.append(map);
            v = Value::Object(head);
        }
        states.push(v);
        let mut row = vec![
            system_label(model.kind()).into(),
            i.to_string(),
            lv.nodes.to_string(),
            cell(lv.energy / unit),
        ];
        row.extend(tail);
        out.rows.push(row);
    }
    results["states"] = Value::Array(states);
    out.results = results;
    for d in &set.diagnostics {
        out.diagnose(None, d);
    }
    Ok(out)
}

fn uncertainty(spec: &RunSpec) -> Result<Output, CliError> {
    let header = [
        "system",
        "branch",
        "nodes",
        "energy",
        "lhs",
        "delta_x",
        "boundary_rx",
        "boundary_gamma",
        "rhs",
        "slack",
        "holds",
    ];
    per_state(spec, &header, |state| {
        let r = uncertainty_check(state)?;
        let holds = r.slack >= 0.0;
        Ok((
            json!({
                "lhs": r.lhs,
                "delta_x": r.delta_x,
                "boundary_rx": r.boundary_rx,
                "boundary_gamma": r.boundary_gamma,
                "boundary_n": r.boundary_n,
                "rhs": r.rhs,
                "slack": r.slack,
                "holds": holds,
            }),
            vec![
                cell(r.lhs),
                cell(r.delta_x),
                cell(r.boundary_rx),
                cell(r.boundary_gamma),
                cell(r.rhs),
                cell(r.slack),
                holds.to_string(),
            ],
        ))
    })
}

fn defect(spec: &RunSpec) -> Result<Output, CliError> {
    let kind: DefectKind = spec.defect.unwrap_or(super::DefectChoice::Rplus).into();
    let header = [
        "system",
        "branch",
        "nodes",
        "energy",
        "kind",
        "value",
        "robin_value",
        "bracket",
        "scale",
        "relative",
    ];
    let opt = |x: Option<f64>| x.map(cell).unwrap_or_default();
    per_state(spec, &header, |state| {
        let r = runge_defect(state, kind)?;
        let relative = if r.scale > 0.0 {
            r.value.abs() / r.scale
        } else {
            0.0
        };
        let kind_name = serde_json::to_value(r.kind).unwrap_or(Value::Null);
        Ok((
            json!({
                "kind": kind_name,
                "value": r.value,
                "robin_value": r.robin_value,
                "bracket": r.bracket,
                "scale": r.scale,
                "relative": relative,
                "chi": r.chi,
                "dchi": r.dchi,
            }),
            vec![
                kind_name.as_str().unwrap_or_default().to_string(),
                cell(r.value),
                opt(r.robin_value),
                opt(r.bracket),
                cell(r.scale),
                cell(relative),
            ],
        ))
    })
}

fn open_sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(
            std::fs::File::create(p)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("write failed: {e}"))
}

pub(super) fn document(spec: &RunSpec, out: &Output) -> Value {
    json!({
        "spec": spec,
        "results": out.results,
        "diagnostics": out.diagnostics,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

pub(super) fn emit(spec: &RunSpec, out: &Output) -> Result<(), CliError> {
    let mut sink = open_sink(spec.output.as_deref())?;
    match spec.format() {
        Format::Json => {
            let text = serde_json::to_string_pretty(&document(spec, out)).map_err(io_err)?;
            writeln!(sink, "{text}").map_err(io_err)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            w.write_record(&out.header).map_err(io_err)?;
            for row in &out.rows {
                w.write_record(row).map_err(io_err)?;
            }
            w.flush().map_err(io_err)?;
            for d in &out.diagnostics {
                eprintln!("diagnostic: {d}");
            }
        }
    }
    sink.flush().map_err(io_err)?;
    if out.flagged {
        eprintln!("error: the solver reported missed or missing states; results are flagged");
    }
    Ok(())
}

/// Walks `expected` and compares every numeric field whose key starts with
/// `energy` against `actual`.
fn compare_energies(expected: &Value, actual: &Value, path: &str, tol: f64, acc: &mut Comparison) {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                let sub = format!("{path}/{k}");
                match a.get(k) {
                    None => acc.mismatch(sub, "missing"),
                    Some(av) if k.starts_with("energy") && ev.is_number() => {
                        match (ev.as_f64(), av.as_f64()) {
                            (Some(x), Some(y)) => acc.number(sub, x, y, tol),
                            _ => acc.mismatch(sub, "not a number"),
                        }
                    }
                    Some(av) => compare_energies(ev, av, &sub, tol, acc),
                }
            }
        }
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                acc.mismatch(path.into(), &format!("length {} != {}", a.len(), e.len()));
            }
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                compare_energies(ev, av, &format!("{path}/{i}"), tol, acc);
            }
        }
        _ => {}
    }
}

#[derive(Default)]
struct Comparison {
    compared: usize,
    max_rel: f64,
    failures: Vec<String>,
}

impl Comparison {
    fn number(&mut self, path: String, expected: f64, actual: f64, tol: f64) {
        self.compared += 1;
        let rel = (actual - expected).abs() / expected.abs().max(1.0);
        self.max_rel = self.max_rel.max(rel);
        if rel.is_nan() || rel > tol {
            self.failures
                .push(format!("{path}: {actual} vs {expected} (rel {rel:.3e})"));
        }
    }

    fn mismatch(&mut self, path: String, what: &str) {
        self.failures.push(format!("{path}: {what}"));
    }
}

/// Re-runs the run description embedded in an output document and checks the energies.
pub(super) fn verify(doc: &Value, tol: f64, output: Option<&Path>) -> Result<i32, CliError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Validation("--tol must be positive".into()));
    }
    let expected = doc
        .get("results")
        .ok_or_else(|| CliError::Validation("document has no 'results' field".into()))?;
    let mut spec = spec_from_json(doc.clone())?;
    if spec.command == Command::Verify {
        return Err(CliError::Validation(
            "cannot verify a verify document".into(),
        ));
    }
    spec.output = None;
    let out = dispatch(&spec)?;
    let mut acc = Comparison::default();
    compare_energies(expected, &out.results, "", tol, &mut acc);
    let ok = acc.failures.is_empty() && acc.compared > 0;
    let summary = json!({
        "command": spec.command,
        "compared": acc.compared,
        "max_rel_diff": acc.max_rel,
        "tol": tol,
        "ok": ok,
        "failures": acc.failures,
    });
    let mut sink = open_sink(output)?;
    let text = serde_json::to_string_pretty(&summary).map_err(io_err)?;
    writeln!(sink, "{text}").map_err(io_err)?;
    sink.flush().map_err(io_err)?;
    if ok {
        Ok(EXIT_OK)
    } else {
        eprintln!("error: re-solved energies differ from the document");
        Ok(EXIT_NUMERICAL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_comparison_walks_nested_fields() {
        let a =
            json!({"levels": [{"energy": 1.0, "nodes": 0}, {"energy_raw": 2.0}], "gamma": "inf"});
        let b = json!({"levels": [{"energy": 1.0 + 1e-12, "nodes": 3}, {"energy_raw": 2.0}], "gamma": "x"});
        let mut acc = Comparison::default();
        compare_energies(&a, &b, "", 1e-10, &mut acc);
        assert_eq!(acc.compared, 2);
        assert!(acc.failures.is_empty());
        let c = json!({"levels": [{"energy": 1.1}]});
        let mut acc = Comparison::default();
        compare_energies(&a, &c, "", 1e-10, &mut acc);
        assert!(!acc.failures.is_empty());
    }

    #[test]
    fn non_finite_numbers_are_strings() {
        assert_eq!(num(f64::INFINITY), json!("inf"));
        assert_eq!(num(f64::NEG_INFINITY), json!("-inf"));
        assert_eq!(num(0.5), json!(0.5));
        assert_eq!(cell(f64::NEG_INFINITY), "-inf");
        assert_eq!(cell(2.5e-13), "2.5e-13");
        assert_eq!(cell(0.25), "0.25");
    }
}
