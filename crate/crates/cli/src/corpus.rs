use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use psc_core::budget::Budget;
use psc_core::catalog::first_witness;
use psc_core::discharge::{discharge, universal_violations, Charge};
use psc_core::embed::EmbeddedGraph;
use psc_core::generators::{gen_corpus, CorpusSpec};
use psc_core::reducer::color_within_budget;
use psc_core::solvers::{greedy_color, verify};

use crate::args::{Check, NRange};
use crate::{emit, CliError};

struct Failure {
    index: usize,
    check: Check,
    detail: String,
}

/// Runs `checks` on one graph; `None` means the check passed.
fn check_graph(g: &EmbeddedGraph, check: Check) -> Option<String> {
    match check {
        Check::Euler | Check::Lemmas => {
            let (ledger, ws) = match discharge(g) {
                Ok(x) => x,
                Err(e) => return Some(e.to_string()),
            };
            if check == Check::Euler {
                let target = Charge::from_int(-12);
                let (a, b) = (ledger.sum_initial(), ledger.sum_final());
                (a != target || b != target).then(|| format!("initial sum {a}, final sum {b}"))
            } else {
                let bad = universal_violations(g, &ledger, &ws);
                (!bad.is_empty()).then(|| {
                    let parts: Vec<String> = bad
                        .iter()
                        .map(|v| format!("{:?} at {} = {}", v.violation, v.element, v.charge))
                        .collect();
                    parts.join("; ")
                })
            }
        }
        Check::Completeness => first_witness(g, &Budget::for_graph(g))
            .is_none()
            .then(|| format!("no witness in\n{}", g.to_pg())),
        Check::Constructive => {
            let budget = Budget::for_graph(g).palette_size;
            match color_within_budget(g) {
                Ok((c, _)) => {
                    let ok = verify(g, &c).is_ok_and(|v| v.is_valid());
                    let k = c.colors().iter().copied().max().unwrap_or(0);
                    (!ok || k > budget).then(|| format!("verified {ok}, max color {k}, budget {budget}"))
                }
                Err(e) => Some(e.to_string()),
            }
        }
        Check::Greedy => {
            let c = greedy_color(g);
            let bound = 5 * g.max_degree() + 1;
            let ok = verify(g, &c).is_ok_and(|v| v.is_valid());
            (!ok || c.colors_used() > bound)
                .then(|| format!("verified {ok}, {} colors, bound {bound}", c.colors_used()))
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_corpus(
    count: usize,
    n: NRange,
    delta: usize,
    delta_max: Option<usize>,
    seed: u64,
    checks: &[Check],
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let mut spec = CorpusSpec::new(count, (n.lo, n.hi), delta, seed);
    if let Some(cap) = delta_max {
        spec = spec.with_delta_max(cap);
    }
    let start = Instant::now();
    let graphs = gen_corpus(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let gen_secs = start.elapsed().as_secs_f64();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &check in checks {
        let t = Instant::now();
        let outcomes: Vec<Option<String>> = graphs.par_iter().map(|g| check_graph(g, check)).collect();
        let secs = t.elapsed().as_secs_f64();
        let failed = outcomes.iter().filter(|o| o.is_some()).count();
        rows.push((check, failed, secs));
        failures.extend(
            outcomes
                .into_iter()
                .enumerate()
                .filter_map(|(index, o)| o.map(|detail| Failure { index, check, detail })),
        );
    }
    if json {
        let v = json!({
            "graphs": graphs.len(),
            "seed": seed,
            "generation_seconds": gen_secs,
            "rows": rows.iter().map(|(c, f, s)| json!({
                "check": c.name(),
                "graphs": graphs.len(),
                "failures": f,
                "status": if *f == 0 { "PASS" } else { "FAIL" },
                "seconds": s,
            })).collect::<Vec<Value>>(),
            "failures": failures.iter().map(|f| json!({
                "index": f.index,
                "check": f.check.name(),
                "detail": f.detail,
            })).collect::<Vec<Value>>(),
        });
        emit(out, &v.to_string())?;
    } else {
        let max_delta = graphs.iter().map(|g| g.max_degree()).max().unwrap_or(0);
        let min_delta = graphs.iter().map(|g| g.max_degree()).min().unwrap_or(0);
        let mut text = format!(
            "{} graphs, max degree {min_delta}..{max_delta}, seed {seed}, generated in {gen_secs:.2}s\n",
            graphs.len()
        );
        text.push_str(&format!(
            "{:<14} {:>7} {:>9} {:>8} {:>6}\n",
            "check", "graphs", "failures", "seconds", "status"
        ));
        for (c, f, s) in &rows {
            text.push_str(&format!(
                "{:<14} {:>7} {:>9} {:>8.2} {:>6}\n",
                c.name(),
                graphs.len(),
                f,
                s,
                if *f == 0 { "PASS" } else { "FAIL" }
            ));
        }
        for f in &failures {
            text.push_str(&format!("graph {} {}: {}\n", f.index, f.check.name(), f.detail));
        }
        emit(out, &text)?;
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(format!("{} check failures", failures.len())))
    }
}
