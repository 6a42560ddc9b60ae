//! The `psc` command line: generation, coloring, audits, detection,
//! verification and corpus runs.

pub mod args;
mod corpus;
mod input;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use serde_json::{json, Value};
use thiserror::Error;

use psc_core::budget::Budget;
use psc_core::catalog::{detect_all, first_witness, report_json, ConfigWitness, Kind};
use psc_core::discharge::{audit, AuditReport};
use psc_core::embed::{square, EmbeddedGraph, Vertex};
use psc_core::generators::{gen_cycle, gen_grid, gen_random_planar, gen_stacked_triangulation, gen_wegner};
use psc_core::reducer::{color_with, ReduceOptions};
use psc_core::solvers::{
    dsatur_color, exact_chi2, greedy_color, verify, ColoringError, ExactError, SquareColoring, Verdict,
};

pub use args::{Check, Cli, Command, Family, Mode, NRange, DEFAULT_SEED};
use input::{load_graph, read_text, write_file};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) | CliError::Input(_) => 2,
        }
    }
}

/// Runs one command, writing its report to `out`. The error, if any, carries
/// the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Gen {
            family,
            delta,
            n,
            seed,
            output,
        } => cmd_gen(*family, *delta, *n, *seed, output.as_deref(), json, out),
        Command::Color {
            input,
            mode,
            budget,
            timeout,
            output,
            trace,
        } => cmd_color(
            input,
            *mode,
            *budget,
            Duration::from_secs(*timeout),
            output.as_deref(),
            trace.as_deref(),
            json,
            out,
        ),
        Command::Audit { input, output } => cmd_audit(input, output.as_deref(), json, out),
        Command::Detect { input, all } => cmd_detect(input, *all, json, out),
        Command::Verify { graph, coloring } => cmd_verify(graph, coloring, json, out),
        Command::Corpus {
            count,
            n,
            delta,
            delta_max,
            seed,
            checks,
        } => corpus::cmd_corpus(*count, *n, *delta, *delta_max, *seed, checks, json, out),
        Command::Bounds { delta } => cmd_bounds(*delta, json, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .and_then(|_| {
            if text.ends_with('\n') {
                Ok(())
            } else {
                out.write_all(b"\n")
            }
        })
        .map_err(|e| CliError::Input(format!("write failed: {e}")))
}

fn need(v: Option<usize>, flag: &str, family: Family) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--family {family:?} needs {flag}").to_lowercase()))
}

fn cmd_gen(
    family: Family,
    delta: Option<usize>,
    n: Option<usize>,
    seed: u64,
    output: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let g = match family {
        Family::Wegner => gen_wegner(need(delta, "--delta", family)?),
        Family::Stacked => gen_stacked_triangulation(need(n, "--n", family)?, seed),
        Family::Random => gen_random_planar(need(n, "--n", family)?, seed),
        Family::Cycle => gen_cycle(need(n, "--n", family)?),
        Family::Grid => {
            let k = need(n, "--n", family)?;
            gen_grid(k, k)
        }
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let pg = g.to_pg();
    match output {
        Some(path) => {
            write_file(path, &pg)?;
            if json {
                let v = json!({
                    "file": path.display().to_string(),
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "max_degree": g.max_degree(),
                });
                emit(out, &v.to_string())
            } else {
                emit(
                    out,
                    &format!(
                        "wrote {}: {} vertices, {} edges, max degree {}",
                        path.display(),
                        g.vertex_count(),
                        g.edge_count(),
                        g.max_degree()
                    ),
                )
            }
        }
        None => emit(out, &pg),
    }
}

/// Palette the coloring must fit in for `mode`.
fn mode_bound(mode: Mode, delta: usize, budget: Option<usize>) -> usize {
    budget.unwrap_or(match mode {
        Mode::Greedy => 5 * delta + 1,
        Mode::Dsatur | Mode::Constructive | Mode::Exact => Budget::for_delta(delta).palette_size,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_color(
    path: &Path,
    mode: Mode,
    budget: Option<usize>,
    timeout: Duration,
    output: Option<&Path>,
    trace_path: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let input = load_graph(path)?;
    let delta = input.max_degree();
    let bound = mode_bound(mode, delta, budget);
    let mut colors = vec![0usize; input.n];
    let mut trace = String::new();
    let mut chi2: Option<usize> = None;
    let mut exact_note = None;
    let multi = input.parts.len() > 1;
    for (i, (g, ids)) in input.parts.iter().enumerate() {
        let c = match mode {
            Mode::Greedy => greedy_color(g),
            Mode::Dsatur => dsatur_color(&square(g), None).expect("unbounded"),
            Mode::Constructive => {
                let opts = ReduceOptions {
                    budget: Some(match budget {
                        Some(k) => Budget::for_delta(delta).with_palette(k),
                        None => Budget::for_delta(delta),
                    }),
                    ..ReduceOptions::default()
                };
                let (c, t) =
                    color_with(g, &opts).map_err(|e| CliError::Check(format!("constructive coloring failed: {e}")))?;
                if multi {
                    trace.push_str(&json!({"event": "component", "index": i, "vertices": ids}).to_string());
                    trace.push('\n');
                }
                trace.push_str(&t.to_jsonl());
                c
            }
            Mode::Exact => match exact_chi2(g, timeout) {
                Ok(r) => {
                    chi2 = Some(chi2.unwrap_or(0).max(r.chi2));
                    r.witness
                }
                Err(ExactError::Timeout { lower, upper, best, .. }) => {
                    exact_note = Some(format!("component {i}: timed out with {lower} <= chi2 <= {upper}"));
                    best
                }
            },
        };
        for (local, &orig) in ids.iter().enumerate() {
            colors[orig] = c.color_of(local);
        }
    }
    let used_max = colors.iter().copied().max().unwrap_or(0);
    let coloring = SquareColoring::new(used_max, colors).map_err(|e| CliError::Check(e.to_string()))?;
    let verified = input.parts.iter().all(|(g, ids)| component_valid(g, ids, &coloring));
    let palette = coloring.palette_size();
    let within = palette <= bound;
    if let Some(p) = output {
        write_file(p, &coloring.to_json())?;
    }
    if let Some(p) = trace_path {
        if mode != Mode::Constructive {
            return Err(CliError::Usage("--trace needs --mode constructive".into()));
        }
        write_file(p, &trace)?;
    }
    let mode_name = format!("{mode:?}").to_lowercase();
    if json {
        let mut v = json!({
            "mode": mode_name,
            "vertices": input.n,
            "edges": input.edges(),
            "max_degree": delta,
            "bound": bound,
            "palette": palette,
            "colors_used": coloring.colors_used(),
            "verified": verified,
            "within_bound": within,
            "coloring": serde_json::from_str::<Value>(&coloring.to_json()).expect("json"),
        });
        if let Some(k) = chi2.filter(|_| exact_note.is_none()) {
            v["chi2"] = json!(k);
        }
        if let Some(note) = &exact_note {
            v["timeout"] = json!(note);
        }
        emit(out, &v.to_string())?;
    } else {
        let mut text = format!(
            "mode {mode_name}: palette {palette}, {} colors used, bound {bound}, {}\n",
            coloring.colors_used(),
            if verified { "verified" } else { "INVALID" }
        );
        if let Some(k) = chi2.filter(|_| exact_note.is_none()) {
            text.push_str(&format!("chi2 {k}\n"));
        }
        if let Some(note) = &exact_note {
            text.push_str(note);
            text.push('\n');
        }
        emit(out, &text)?;
    }
    if !verified {
        return Err(CliError::Check("coloring does not verify".into()));
    }
    if !within {
        return Err(CliError::Check(format!("palette {palette} exceeds bound {bound}")));
    }
    if let Some(note) = exact_note {
        return Err(CliError::Check(note));
    }
    Ok(())
}

fn component_valid(g: &EmbeddedGraph, ids: &[Vertex], c: &SquareColoring) -> bool {
    let local: Vec<usize> = ids.iter().map(|&x| c.color_of(x)).collect();
    SquareColoring::new(c.palette_size(), local)
        .ok()
        .and_then(|lc| verify(g, &lc).ok())
        .is_some_and(|v| v.is_valid())
}

fn cmd_audit(path: &Path, output: Option<&Path>, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let input = load_graph(path)?;
    let mut reports: Vec<(Vec<Vertex>, AuditReport)> = Vec::new();
    for (g, ids) in &input.parts {
        let r = audit(g).map_err(|e| CliError::Check(e.to_string()))?;
        reports.push((ids.clone(), r));
    }
    let doc = if reports.len() == 1 {
        reports[0].1.to_json()
    } else {
        let items: Vec<Value> = reports
            .iter()
            .enumerate()
            .map(|(i, (ids, r))| {
                json!({"component": i, "vertices": ids, "report": serde_json::from_str::<Value>(&r.to_json()).expect("json")})
            })
            .collect();
        Value::Array(items).to_string()
    };
    if let Some(p) = output {
        write_file(p, &doc)?;
    }
    if json {
        emit(out, &doc)?;
    } else {
        let mut text = String::new();
        for (i, (_, r)) in reports.iter().enumerate() {
            if reports.len() > 1 {
                text.push_str(&format!("component {i}\n"));
            }
            text.push_str(&format!(
                "vertices {} edges {} faces {}\n",
                r.vertices, r.edges, r.faces
            ));
            text.push_str(&format!("initial={} sum={}\n", r.sum_initial, r.sum_final));
            text.push_str(&format!("weak vertices {}\n", r.weak.len()));
            for neg in &r.negative {
                let mut kinds: BTreeMap<Kind, usize> = BTreeMap::new();
                for &w in &neg.witnesses {
                    *kinds.entry(r.witnesses[w].kind).or_insert(0) += 1;
                }
                let kinds: Vec<String> = kinds.iter().map(|(k, c)| format!("{k:?} x{c}")).collect();
                text.push_str(&format!(
                    "negative {}={} near: {}\n",
                    neg.element,
                    neg.charge,
                    kinds.join(", ")
                ));
            }
            for v in &r.violations {
                text.push_str(&format!(
                    "VIOLATION {:?} at {} = {}\n",
                    v.violation, v.element, v.charge
                ));
            }
        }
        emit(out, &text)?;
    }
    if let Some((_, r)) = reports.iter().find(|(_, r)| !r.is_clean()) {
        return Err(CliError::Check(format!(
            "{} charge bound violations",
            r.violations.len()
        )));
    }
    Ok(())
}

fn cmd_detect(path: &Path, all: bool, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let input = load_graph(path)?;
    let budget = Budget::for_delta(input.max_degree());
    let found: Vec<(Vec<Vertex>, Vec<ConfigWitness>)> = input
        .parts
        .iter()
        .map(|(g, ids)| {
            let ws = if all {
                detect_all(g, &budget)
            } else {
                first_witness(g, &budget).into_iter().collect()
            };
            (ids.clone(), ws)
        })
        .collect();
    if json {
        let doc = if found.len() == 1 {
            report_json(&found[0].1)
        } else {
            let items: Vec<Value> = found
                .iter()
                .enumerate()
                .map(|(i, (ids, ws))| {
                    json!({"component": i, "vertices": ids, "witnesses": serde_json::from_str::<Value>(&report_json(ws)).expect("json")})
                })
                .collect();
            Value::Array(items).to_string()
        };
        emit(out, &doc)?;
    } else {
        let mut text = String::new();
        for (i, (_, ws)) in found.iter().enumerate() {
            if found.len() > 1 {
                text.push_str(&format!("component {i}\n"));
            }
            for w in ws {
                text.push_str(&format!(
                    "{:?} actors {:?} faces {:?} recipe {}\n",
                    w.kind,
                    w.actors,
                    w.faces,
                    serde_json::to_string(&w.recipe).expect("json")
                ));
            }
            if ws.is_empty() {
                text.push_str("no configuration found\n");
            }
        }
        emit(out, &text)?;
    }
    if found.iter().any(|(_, ws)| ws.is_empty()) {
        return Err(CliError::Check("a component has no reducible configuration".into()));
    }
    Ok(())
}

fn cmd_verify(graph: &Path, coloring: &Path, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let input = load_graph(graph)?;
    let text = read_text(coloring)?;
    let c = SquareColoring::from_json(&text, input.n).map_err(|e: ColoringError| CliError::Input(e.to_string()))?;
    let mut verdict = Verdict::Valid;
    for (g, ids) in &input.parts {
        let local = SquareColoring::new(c.palette_size(), ids.iter().map(|&x| c.color_of(x)).collect())
            .map_err(|e| CliError::Input(e.to_string()))?;
        match verify(g, &local).map_err(|e| CliError::Input(e.to_string()))? {
            Verdict::Valid => {}
            Verdict::Conflict { u, v, color } => {
                let (u, v) = (ids[u].min(ids[v]), ids[u].max(ids[v]));
                if let Verdict::Conflict { u: u0, v: v0, .. } = verdict {
                    if (u0, v0) <= (u, v) {
                        continue;
                    }
                }
                verdict = Verdict::Conflict { u, v, color };
            }
        }
    }
    match verdict {
        Verdict::Valid => {
            if json {
                emit(out, &json!({"valid": true, "colors_used": c.colors_used()}).to_string())
            } else {
                emit(out, &format!("valid, {} colors used", c.colors_used()))
            }
        }
        Verdict::Conflict { u, v, color } => {
            if json {
                emit(
                    out,
                    &json!({"valid": false, "conflict": {"u": u, "v": v, "color": color}}).to_string(),
                )?;
            } else {
                emit(out, &format!("conflict: vertices {u} and {v} share color {color}"))?;
            }
            Err(CliError::Check(format!("vertices {u} and {v} share color {color}")))
        }
    }
}

fn cmd_bounds(range: NRange, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let rows: Vec<Value> = (range.lo..=range.hi)
        .map(|d| {
            json!({
                "delta": d,
                "trivial_lower": d + 1,
                "wegner_lower": 3 * d / 2 + 1,
                "proven_upper": Budget::for_delta(d).palette_size,
                "greedy_upper": 5 * d + 1,
            })
        })
        .collect();
    if json {
        return emit(out, &Value::Array(rows).to_string());
    }
    let mut text = format!(
        "{:>5} {:>8} {:>8} {:>8} {:>8}\n",
        "delta", "d+1", "wegner", "proven", "5d+1"
    );
    for d in range.lo..=range.hi {
        text.push_str(&format!(
            "{d:>5} {:>8} {:>8} {:>8} {:>8}\n",
            d + 1,
            3 * d / 2 + 1,
            Budget::for_delta(d).palette_size,
            5 * d + 1
        ));
    }
    emit(out, &text)
}
