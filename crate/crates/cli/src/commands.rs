//! One function per subcommand, each producing a [`Rendered`] result.

use ptmorse::contour::{build_c, build_generalized, build_shifted_line, ContourKind};
use ptmorse::spectra::{
    decompose_coupling, family_energy, find_degeneracies, ho_spectrum, ordering_table, spectrum,
    Family, QuasiParity,
};
use ptmorse::verifier::{run_verification, AnalyticEntry, FoundEntry, Report, Status};
use ptmorse::wavefun::{bound_wavefunction, morse_wavefunction, BoundState};
use ptmorse::{BoundState64, Contour64, ProblemSpec64, ShootingConfig64};
use serde_json::{json, Value};

use crate::args::{
    ContourArgs, ContourChoice, CrossingsArgs, CurveChoice, EquationChoice, HoSpectrumArgs,
    PathArgs, SpectrumArgs, TableArgs, VerifyArgs, WavefunctionArgs,
};
use crate::format::{fmt_float, round_floats, Cell, Table};
use crate::CliError;

/// Output of a command before it is emitted in the requested format.
pub struct Rendered {
    pub params: Value,
    pub data: Value,
    pub table: Table,
    /// Text rendering when the plain table is not enough.
    pub text: Option<String>,
    pub verification_failed: bool,
}

impl Rendered {
    fn from_table(params: Value, table: Table) -> Self {
        Self {
            params,
            data: table.to_json(),
            table,
            text: None,
            verification_failed: false,
        }
    }
}

pub fn spectrum_cmd(a: &SpectrumArgs) -> Result<Rendered, CliError> {
    let levels = spectrum(a.coupling, a.omega, a.levels)?;
    let mut table = Table::new(&["m", "sign", "epsilon", "family", "k"]);
    for l in &levels {
        table.push(vec![
            l.m.into(),
            l.sign.to_string().into(),
            l.epsilon.into(),
            l.family.map(Family::as_str).into(),
            l.family_index.into(),
        ]);
    }
    let params = json!({"coupling": a.coupling, "omega": a.omega, "levels": a.levels});
    Ok(Rendered::from_table(params, table))
}

pub fn families_cmd(a: &SpectrumArgs) -> Result<Rendered, CliError> {
    let dec = decompose_coupling(a.coupling, a.omega)?;
    let mut table = Table::new(&["family", "k", "m", "epsilon"]);
    let mut families = serde_json::Map::new();
    if !dec.degenerate {
        for family in [Family::FinitePlus, Family::InfinitePlus, Family::Minus] {
            let count = match family {
                Family::FinitePlus => dec.big_m.min(a.levels),
                _ => a.levels,
            };
            let mut members = Vec::with_capacity(count);
            for k in 0..count {
                let (epsilon, m) = family_energy(family, k, &dec)?;
                table.push(vec![
                    family.as_str().into(),
                    k.into(),
                    m.into(),
                    epsilon.into(),
                ]);
                members.push(json!({"k": k, "m": m, "epsilon": epsilon}));
            }
            families.insert(family.as_str().into(), Value::Array(members));
        }
    }
    let data = json!({
        "M": dec.big_m,
        "sigma": dec.sigma,
        "t": dec.ratio,
        "degenerate": dec.degenerate,
        "families": if dec.degenerate { Value::Null } else { Value::Object(families) },
    });
    let mut text = format!(
        "M = {}  sigma = {}  D/2w = {}{}\n",
        dec.big_m,
        fmt_float(dec.sigma),
        fmt_float(dec.ratio),
        if dec.degenerate {
            "  (sigma = 0: family labels withheld)"
        } else {
            ""
        }
    );
    if !dec.degenerate {
        text += &table.to_text();
    }
    let params = json!({"coupling": a.coupling, "omega": a.omega, "levels": a.levels});
    Ok(Rendered {
        params,
        data,
        table,
        text: Some(text),
        verification_failed: false,
    })
}

pub fn crossings_cmd(a: &CrossingsArgs) -> Result<Rendered, CliError> {
    let pairs = find_degeneracies(a.coupling, a.omega, a.max_m)?;
    let mut table = Table::new(&["first", "second", "epsilon"]);
    for p in &pairs {
        table.push(vec![
            p.first.to_string().into(),
            p.second.to_string().into(),
            p.epsilon.into(),
        ]);
    }
    let params = json!({"coupling": a.coupling, "omega": a.omega, "max_m": a.max_m});
    Ok(Rendered::from_table(params, table))
}

pub fn table_cmd(a: &TableArgs) -> Result<Rendered, CliError> {
    let columns = ordering_table(a.from, a.to, a.step, a.omega, a.levels)?;
    let mut table = Table::new(&["ratio", "coupling", "rank", "epsilon", "labels"]);
    let mut data = Vec::with_capacity(columns.len());
    let mut text = String::new();
    for col in &columns {
        let mut groups = Vec::with_capacity(col.groups.len());
        let mut rendered = Vec::with_capacity(col.groups.len());
        for (rank, g) in col.groups.iter().enumerate() {
            let labels: Vec<String> = g.labels.iter().map(ToString::to_string).collect();
            table.push(vec![
                col.ratio.into(),
                col.coupling.into(),
                rank.into(),
                g.epsilon.into(),
                labels.join(" ").into(),
            ]);
            rendered.push(if labels.len() > 1 {
                format!("[{}]", labels.join(" "))
            } else {
                labels.join(" ")
            });
            groups.push(json!({"epsilon": g.epsilon, "labels": labels}));
        }
        data.push(json!({"ratio": col.ratio, "coupling": col.coupling, "groups": groups}));
        text += &format!("{:>8}  {}\n", fmt_float(col.ratio), rendered.join(" "));
    }
    let params = json!({
        "from": a.from, "to": a.to, "step": a.step, "omega": a.omega, "levels": a.levels
    });
    Ok(Rendered {
        params,
        data: Value::Array(data),
        table,
        text: Some(format!(
            "{:>8}  levels by ascending epsilon\n{text}",
            "D/4w"
        )),
        verification_failed: false,
    })
}

pub fn ho_spectrum_cmd(a: &HoSpectrumArgs) -> Result<Rendered, CliError> {
    let levels = ho_spectrum(a.alpha, a.omega, a.levels)?;
    let mut table = Table::new(&["n", "q", "energy"]);
    for l in &levels {
        table.push(vec![
            l.n.into(),
            Cell::Int(l.q.value::<f64>() as i64),
            l.energy.into(),
        ]);
    }
    let params = json!({"alpha": a.alpha, "omega": a.omega, "levels": a.levels});
    Ok(Rendered::from_table(params, table))
}

fn build_path(p: &PathArgs) -> Result<Contour64, CliError> {
    Ok(match p.contour {
        ContourChoice::Bent => build_c(p.depth)?,
        ContourChoice::Generalized => build_generalized(p.k, p.l, p.depth)?,
        ContourChoice::Line => build_shifted_line(p.depth, p.extent)?,
    })
}

fn path_params(p: &PathArgs) -> Value {
    let mut v = json!({
        "contour": p.contour_name(),
        "depth": p.depth,
        "points": p.points,
    });
    match p.contour {
        ContourChoice::Generalized => {
            v["k"] = json!(p.k);
            v["l"] = json!(p.l);
            v["clip"] = json!(p.clip);
        }
        ContourChoice::Line => v["extent"] = json!(p.extent),
        ContourChoice::Bent => v["clip"] = json!(p.clip),
    }
    v
}

impl PathArgs {
    fn contour_name(&self) -> &'static str {
        match self.contour {
            ContourChoice::Bent => "bent",
            ContourChoice::Generalized => "generalized",
            ContourChoice::Line => "line",
        }
    }
}

pub fn contour_cmd(a: &ContourArgs) -> Result<Rendered, CliError> {
    let path = build_path(&a.path)?;
    if a.path.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let mut table = Table::new(&["param", "re_x", "im_x", "re_r", "im_r"]);
    for pt in path.sample_clipped(a.path.points, a.path.clip) {
        let r = path.r_at(pt.parameter);
        table.push(vec![
            pt.parameter.into(),
            pt.x.re.into(),
            pt.x.im.into(),
            r.re.into(),
            r.im.into(),
        ]);
    }
    Ok(Rendered::from_table(path_params(&a.path), table))
}

/// The oscillator state behind the request: either given directly or the
/// plus level m of the Morse problem with coupling D, for which n = m and
/// qα = 2m + 1 − D/2ω.
fn wavefunction_state(a: &WavefunctionArgs) -> Result<BoundState64, CliError> {
    if let Some(coupling) = a.coupling {
        let m = a.m.unwrap_or(0);
        let root = 2.0 * m as f64 + 1.0 - coupling / (2.0 * a.omega);
        if root == 0.0 {
            return Err(CliError::Usage(format!(
                "level +{m} at D = {coupling} has alpha = 0 and no oscillator partner"
            )));
        }
        let q = if root > 0.0 {
            QuasiParity::Even
        } else {
            QuasiParity::Odd
        };
        return Ok(BoundState::new(m, q, root.abs(), a.omega)?);
    }
    let (Some(alpha), Some(n), Some(q)) = (a.alpha, a.n, a.q) else {
        return Err(CliError::Usage(
            "give either --coupling [--m] or all of --alpha, --n, --q".into(),
        ));
    };
    let q = QuasiParity::from_sign(q)
        .ok_or_else(|| CliError::Usage(format!("--q must be 1 or -1, got {q}")))?;
    Ok(BoundState::new(n, q, alpha, a.omega)?)
}

pub fn wavefunction_cmd(a: &WavefunctionArgs) -> Result<Rendered, CliError> {
    let path = build_path(&a.path)?;
    if a.path.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let mut state = wavefunction_state(a)?;
    if a.normalize {
        state = state.unit_at_depth(a.path.depth)?;
    }
    let on_line = path.kind() == ContourKind::ShiftedLine;
    let mut table = Table::new(&["param", "re_x", "im_x", "re_phi", "im_phi", "abs_phi"]);
    for pt in path.sample_clipped(a.path.points, a.path.clip) {
        let value = if on_line {
            bound_wavefunction(&state, pt.x)?
        } else {
            morse_wavefunction(&state, pt.x)?
        };
        table.push(vec![
            pt.parameter.into(),
            pt.x.re.into(),
            pt.x.im.into(),
            value.re.into(),
            value.im.into(),
            value.norm().into(),
        ]);
    }
    let mut params = path_params(&a.path);
    params["field"] = json!(if on_line { "psi" } else { "phi" });
    params["omega"] = json!(a.omega);
    params["n"] = json!(state.n);
    params["q"] = json!(state.q.value::<f64>() as i64);
    params["alpha"] = json!(state.alpha);
    params["energy"] = json!(state.energy());
    params["epsilon"] = json!(state.alpha * state.alpha);
    params["normalized"] = json!(a.normalize);
    if let Some(d) = a.coupling {
        params["coupling"] = json!(d);
        params["m"] = json!(a.m.unwrap_or(0));
    }
    Ok(Rendered::from_table(params, table))
}

fn parse_window(s: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("--window expects lo:hi, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo < hi) {
        return Err(CliError::Usage(format!(
            "--window needs lo < hi, got {s:?}"
        )));
    }
    Ok((lo, hi))
}

pub fn verify_cmd(a: &VerifyArgs) -> Result<Rendered, CliError> {
    let (lo, hi) = parse_window(&a.window)?;
    let problem = match a.equation {
        EquationChoice::Ho => {
            let alpha = a
                .alpha
                .ok_or_else(|| CliError::Usage("--equation ho needs --alpha".into()))?;
            ProblemSpec64::ho_line(a.omega, alpha, a.depth)?
        }
        EquationChoice::Morse => {
            let coupling = a
                .coupling
                .ok_or_else(|| CliError::Usage("--equation morse needs --coupling".into()))?;
            let contour = match a.contour {
                CurveChoice::Bent => build_c(a.depth)?,
                CurveChoice::Generalized => build_generalized(a.k, a.l, a.depth)?,
            };
            ProblemSpec64::morse(a.omega, coupling, contour)?
        }
    };
    let mut cfg = match a.grid {
        Some(count) => ShootingConfig64::with_grid(lo, hi, count)?,
        None => ShootingConfig64::new(lo, hi)?,
    };
    if !(a.step_tol > 0.0) || !(a.tol > 0.0) {
        return Err(CliError::Usage(
            "--tol and --step-tol must be positive".into(),
        ));
    }
    cfg.step_tolerance = a.step_tol;
    let (_, report) = run_verification(&problem, &cfg, a.tol)?;
    let params = json!({
        "equation": match a.equation { EquationChoice::Ho => "ho", EquationChoice::Morse => "morse" },
        "alpha": a.alpha,
        "coupling": a.coupling,
        "omega": a.omega,
        "depth": a.depth,
        "window": [lo, hi],
        "grid": cfg.grid.count,
        "tol": a.tol,
        "step_tol": a.step_tol,
    });
    Ok(Rendered {
        params,
        data: round_floats(serde_json::to_value(&report).expect("report serializes")),
        table: verify_table(&report),
        text: Some(verify_text(&report)),
        verification_failed: !report.comparison.summary.pass,
    })
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Matched => "matched",
        Status::Spurious => "spurious",
        Status::Missing => "missing",
    }
}

fn found_row(f: &FoundEntry) -> Vec<Cell> {
    vec![
        "found".into(),
        f.re.into(),
        f.im.into(),
        Cell::Empty,
        status_name(f.status).into(),
        f.mismatch.into(),
        f.multiplicity.into(),
    ]
}

fn analytic_row(e: &AnalyticEntry) -> Vec<Cell> {
    vec![
        if e.required {
            "required"
        } else {
            "informational"
        }
        .into(),
        e.value.into(),
        0.0.into(),
        e.label.as_str().into(),
        status_name(e.status).into(),
        Cell::Empty,
        Cell::Empty,
    ]
}

fn verify_table(report: &Report) -> Table {
    let mut t = Table::new(&[
        "kind",
        "re",
        "im",
        "label",
        "status",
        "mismatch",
        "multiplicity",
    ]);
    for f in &report.comparison.found {
        t.push(found_row(f));
    }
    for e in &report.comparison.analytic {
        t.push(analytic_row(e));
    }
    t
}

fn verify_text(report: &Report) -> String {
    let s = &report.comparison.summary;
    let p = &report.problem;
    let mut out = format!(
        "{} on {} (c = {}), omega = {}",
        p.equation,
        p.contour.kind,
        fmt_float(p.contour.depth),
        fmt_float(p.omega)
    );
    if let Some(d) = p.coupling {
        out += &format!(", D = {}", fmt_float(d));
    }
    if let Some(alpha) = p.alpha {
        out += &format!(", alpha = {}", fmt_float(alpha));
    }
    out += &format!(
        "\nwindow [{}, {}], {} grid points\n\n",
        fmt_float(report.config.grid.lo),
        fmt_float(report.config.grid.hi),
        report.config.grid.count
    );
    out += &verify_table(report).to_text();
    out += &format!(
        "\n{}: {} matched, {} spurious, {} missing ({} required)\n",
        if s.pass { "PASS" } else { "FAIL" },
        s.matched,
        s.spurious,
        s.missing,
        s.required_missing
    );
    out
}
