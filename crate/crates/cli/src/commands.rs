//! Command implementations. Each returns the rendered text so that `main`
//! only decides where it goes.

use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use raman_core::config::ModeId;
use raman_core::oracle::{compare, default_preset, CompareReport, CompareTolerances};
use raman_core::{
    closed_forms, conditional_numbers, difference_dist, eval_coeffs, joint_lv, joint_sv, noise_terms, quasi_lv,
    quasi_sv, Given, PhononState, QuasiDistGrid, WGrid, WitnessReport,
};

use crate::error::CliError;
use crate::figures::{self, Panel};
use crate::output::{emit, pretty, Cell, Format, Table};
use crate::params::Params;
use crate::quantities::{evaluate, nonclassical, Quantity};
use crate::sweep::SweepSpec;

/// Report row carrying the pipeline value of a closed-form key.
fn report_row(key: &str) -> String {
    match key {
        "K_LV" | "K_LV_plus" => "K_plus_LV".into(),
        "K_LV_minus" => "K_minus_LV".into(),
        "K_SV" => "K_plus_SV".into(),
        _ => match key.strip_prefix("C_") {
            Some(pair) => format!("C_shot_{pair}"),
            None => key.into(),
        },
    }
}

/// Every witness at one point; with `closed_form`, the short-time closed
/// expressions are listed next to the pipeline values they approximate.
pub fn witness(p: &Params, closed_form: bool) -> Result<Table, CliError> {
    let cfg = p.config()?;
    let k = eval_coeffs(&cfg);
    let nt = noise_terms(&cfg, &k);
    let rows = WitnessReport::new(&nt, p.form).rows();
    let closed = if closed_form { closed_forms(&cfg, &k) } else { Default::default() };

    let mut columns = vec!["witness".to_string(), "value".into(), "nonclassical".into()];
    if closed_form {
        columns.extend(["closed_form".into(), "closed_form_key".into(), "rel_diff".into()]);
    }
    let mut table = Table::new(columns);
    for (name, value) in rows {
        let mut row = vec![Cell::Text(name.clone()), Cell::Num(value), Cell::Flag(nonclassical(&name, value))];
        if closed_form {
            match closed.iter().find(|(key, _)| report_row(key) == name) {
                Some((key, c)) => {
                    let rel = if value == 0.0 { (c - value).abs() } else { (c - value).abs() / value.abs() };
                    row.extend([Cell::Num(*c), Cell::Text(key.to_string()), Cell::Num(rel)]);
                }
                None => row.extend([Cell::Text("-".into()), Cell::Text("-".into()), Cell::Text("-".into())]),
            }
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// Tabulate quantities over a sweep. Points are evaluated in parallel and
/// written in sweep order.
pub fn scan(base: &Params, sweep: &SweepSpec, qs: &[Quantity]) -> Result<Table, CliError> {
    base.config()?;
    let points = sweep.points();
    let values: Vec<Vec<f64>> = points
        .par_iter()
        .map(|pt| {
            let p = sweep.apply(base, pt)?;
            evaluate(&p, qs).map_err(|e| match e {
                CliError::Validation(msg) => {
                    let at: Vec<String> = sweep.names().iter().zip(pt).map(|(n, v)| format!("{n}={v}")).collect();
                    CliError::Validation(format!("at {}: {msg}", at.join(", ")))
                }
                other => other,
            })
        })
        .collect::<Result<_, _>>()?;

    let mut columns: Vec<String> = sweep.names().iter().map(|s| s.to_string()).collect();
    columns.extend(qs.iter().map(Quantity::name));
    let mut table = Table::new(columns);
    for (pt, vals) in points.iter().zip(values) {
        table.rows.push(pt.iter().chain(&vals).map(|v| Cell::Num(*v)).collect());
    }
    Ok(table)
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

/// Dataset of one figure panel (one file per variant).
pub fn figure_panel(panel: &Panel, dir: &Path, format: Format) -> Result<Vec<PathBuf>, CliError> {
    let qs: Vec<Quantity> = panel.quantities.iter().map(|q| Quantity::parse(q)).collect::<Result<_, _>>()?;
    let mut written = Vec::new();
    for v in panel.variants {
        let table = scan(&panel.params(v)?, &SweepSpec::parse(v.sweep)?, &qs)?;
        let path = dir.join(format!("{}.{}", panel.file_stem(v), extension(format)));
        emit(&table.render(format), Some(&path))?;
        written.push(path);
    }
    Ok(written)
}

pub fn figure(id: &str, dir: &Path, format: Format) -> Result<Vec<PathBuf>, CliError> {
    let panels = figures::select(id)?;
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for panel in panels {
        written.extend(figure_panel(panel, dir, format)?);
    }
    Ok(written)
}

/// Distribution kinds accepted by `dist`.
pub const DIST_KINDS: &[&str] = &["joint_SV", "joint_LV", "cond_L", "cond_V", "difference", "quasi_SV", "quasi_LV"];

fn whole(key: &str, v: f64) -> Result<usize, CliError> {
    if v >= 0.0 && v.fract() == 0.0 {
        Ok(v as usize)
    } else {
        Err(CliError::Validation(format!("'{key}' must be a non-negative integer for this distribution, got {v}")))
    }
}

fn quasi_table(q: &QuasiDistGrid, row: &str, col: &str) -> Table {
    let mut t = Table::new(vec![row.into(), col.into(), "P".into()]);
    for (r, vals) in q.grid.rows.iter().zip(&q.values) {
        for (c, v) in q.grid.cols.iter().zip(vals) {
            t.rows.push(vec![Cell::Num(*r), Cell::Num(*c), Cell::Num(*v)]);
        }
    }
    t
}

/// A full distribution at one point, with its truncated tail mass where one
/// exists (reported in JSON output only).
pub fn dist(p: &Params, kind: &str) -> Result<(Table, Vec<(&'static str, f64)>), CliError> {
    let cfg = p.config()?;
    let nt = noise_terms(&cfg, &eval_coeffs(&cfg));
    let grid = || WGrid::uniform(p.w_max, p.w_max, p.w_points);
    Ok(match kind {
        "joint_SV" | "joint_LV" => {
            let d = if kind == "joint_SV" { joint_sv(&nt, p.cutoff)? } else { joint_lv(&nt, p.cutoff)? };
            let (a, b) = d.labels;
            let mut t = Table::new(vec![format!("n_{a}"), format!("n_{b}"), "p".into()]);
            for (i, row) in d.probs.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    t.rows.push(vec![Cell::Int(i as i64), Cell::Int(j as i64), Cell::Num(*v)]);
                }
            }
            (t, vec![("tail", d.tail)])
        }
        "cond_L" | "cond_V" => {
            let (given, label) = if kind == "cond_L" {
                (Given::Phonons(whole("n_V", p.n_v)?), ModeId::L)
            } else {
                let n_l = whole("n_L", p.n_l)?;
                (Given::Pump(n_l), ModeId::V)
            };
            let max_count = match given {
                Given::Pump(n_l) => n_l + p.cutoff,
                Given::Phonons(_) => 0,
            };
            let d = conditional_numbers(&nt, given, max_count)?;
            let mut t = Table::new(vec![format!("n_{label}"), "p".into()]);
            for (i, v) in d.probs.iter().enumerate() {
                t.rows.push(vec![Cell::Int((d.offset + i) as i64), Cell::Num(*v)]);
            }
            (t, vec![("tail", d.tail)])
        }
        "difference" => {
            let d = difference_dist(&nt, p.cutoff)?;
            let mut t = Table::new(vec!["n".into(), "p_minus".into(), "p_poisson".into()]);
            for (i, (a, b)) in d.p_minus.iter().zip(&d.p_poisson).enumerate() {
                t.rows.push(vec![Cell::Int(i as i64), Cell::Num(*a), Cell::Num(*b)]);
            }
            (t, vec![("tail_minus", d.tail_minus), ("tail_poisson", d.tail_poisson)])
        }
        "quasi_SV" => (quasi_table(&quasi_sv(&nt, p.s, &grid()?)?, "W_S", "W_V"), vec![]),
        "quasi_LV" => (quasi_table(&quasi_lv(&nt, &grid()?)?, "W_L", "W_V"), vec![]),
        _ => {
            return Err(CliError::Validation(format!(
                "unknown distribution '{kind}'; known: {}",
                DIST_KINDS.join(", ")
            )))
        }
    })
}

pub fn render_dist(table: &Table, extras: &[(&str, f64)], format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut v = table.to_json();
            let obj = v.as_object_mut().expect("table JSON is an object");
            for (k, x) in extras {
                obj.insert(k.to_string(), json!(x));
            }
            pretty(&v)
        }
    }
}

fn complex(z: &C64) -> Value {
    json!([z.re, z.im])
}

pub fn report_json(r: &CompareReport) -> Value {
    let quantities: Vec<Value> = r
        .quantities
        .iter()
        .map(|q| {
            json!({
                "name": q.name,
                "exponent": q.exponent,
                "pass": q.pass,
                "abs": q.abs,
                "rel": q.rel,
                "exact": q.exact.iter().map(complex).collect::<Vec<_>>(),
                "perturbative": q.perturbative.iter().map(complex).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut out = Map::new();
    out.insert("pass".into(), json!(r.pass));
    out.insert("regime".into(), json!(r.regime.to_string()));
    out.insert("gts".into(), json!(r.gts));
    out.insert("cutoffs".into(), json!(r.cutoffs));
    out.insert("dim".into(), json!(r.dim));
    out.insert("cutoff_change".into(), json!(r.cutoff_change));
    out.insert("max_norm_error".into(), json!(r.max_norm_error));
    out.insert("max_energy_drift".into(), json!(r.max_energy_drift));
    out.insert("quantities".into(), Value::Array(quantities));
    Value::Object(out)
}

/// Which configuration `oracle-check` runs.
pub enum OracleTarget {
    Params(Params),
    Preset(PhononState),
}

pub fn oracle_preset(name: &str) -> Result<PhononState, CliError> {
    match name {
        "coherent" => Ok(PhononState::Coherent),
        "chaotic" => Ok(PhononState::Chaotic { n_mean: 0.2 }),
        _ => Err(CliError::Validation(format!("unknown oracle preset '{name}'; known: coherent, chaotic"))),
    }
}

/// Exact-versus-perturbative comparison. A failing comparison is still a
/// successful run; only contract violations are errors.
pub fn oracle_check(target: OracleTarget) -> Result<CompareReport, CliError> {
    let (cfg, cutoffs, dim_cap) = match target {
        OracleTarget::Params(p) => (p.config()?, p.oracle_cutoffs, p.dim_cap),
        OracleTarget::Preset(ph) => {
            let (cfg, cutoffs) = default_preset(ph);
            (cfg, cutoffs, CompareTolerances::default().dim_cap)
        }
    };
    let tol = CompareTolerances { dim_cap, ..CompareTolerances::default() };
    Ok(compare(&cfg, cutoffs, &tol)?)
}

pub fn oracle_render(r: &CompareReport, format: Format) -> String {
    match format {
        Format::Json => pretty(&report_json(r)),
        Format::Csv => {
            let mut t = Table::new(vec!["quantity".into(), "exponent".into(), "max_abs".into(), "pass".into()]);
            for q in &r.quantities {
                t.rows.push(vec![
                    Cell::Text(q.name.clone()),
                    q.exponent.map_or(Cell::Text("-".into()), Cell::Num),
                    Cell::Num(q.abs.iter().fold(0.0, |m: f64, v| m.max(*v))),
                    Cell::Flag(Some(q.pass)),
                ]);
            }
            t.to_csv()
        }
    }
}
