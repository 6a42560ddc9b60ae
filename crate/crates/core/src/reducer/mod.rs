//! Constructive square coloring within the budget: find a witness, reduce,
//! color the smaller graph, then extend or merge.

mod ops;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::Budget;
use crate::catalog::{check_witness, first_witness, forbidden_bound, ConfigWitness, Kind, Recipe};
use crate::embed::{dist2_neighborhood, square, EmbedError, EmbeddedGraph, Vertex};
use crate::solvers::{dsatur_color, verify, SquareColoring};

/// When a graph is colored directly instead of reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasePolicy {
    /// Try DSATUR within the palette at every level.
    Dsatur,
    /// Only graphs with at most this many vertices (and no more than the
    /// palette) are colored, with all-distinct colors.
    Distinct { max_vertices: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReduceOptions {
    pub policy: BasePolicy,
    /// Overrides `Budget::for_graph`.
    pub budget: Option<Budget>,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            policy: BasePolicy::Dsatur,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseMethod {
    Dsatur,
    Distinct,
}

/// One line of a trace. Vertex ids in a witness refer to the graph it was
/// found in; `vertex` in an extension is an input id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Start {
        graph: String,
        vertices: usize,
        edges: usize,
        budget: Budget,
    },
    Reduce {
        step: usize,
        witness: ConfigWitness,
        before: String,
        after: Vec<String>,
        measure_before: (usize, i64),
        measure_after: Vec<(usize, i64)>,
    },
    Base {
        graph: String,
        vertices: usize,
        method: BaseMethod,
        colors_used: usize,
    },
    Extend {
        step: usize,
        vertex: Vertex,
        color: usize,
        predicted_forbidden: Option<usize>,
        actual_forbidden: usize,
        bound_exceeded: bool,
    },
    Merge {
        step: usize,
        /// Color `c` of the second part becomes `permutation[c - 1]`.
        permutation: Vec<usize>,
    },
    Done {
        palette: usize,
        colors_used: usize,
        steps: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductionTrace {
    pub events: Vec<TraceEvent>,
}

impl ReductionTrace {
    /// One JSON object per line, newline-terminated.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("event serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, serde_json::Error> {
        let events = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<_, _>>()?;
        Ok(ReductionTrace { events })
    }

    pub fn budget(&self) -> Option<Budget> {
        match self.events.first() {
            Some(TraceEvent::Start { budget, .. }) => Some(*budget),
            _ => None,
        }
    }

    pub fn reductions(&self) -> impl Iterator<Item = &ConfigWitness> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::Reduce { witness, .. } => Some(witness),
            _ => None,
        })
    }

    /// Extension records whose forbidden count exceeded the predicted bound.
    pub fn exceeded_bounds(&self) -> Vec<&TraceEvent> {
        self.events
            .iter()
            .filter(|e| {
                matches!(
                    e,
                    TraceEvent::Extend {
                        bound_exceeded: true,
                        ..
                    }
                )
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("no reducible configuration in graph:\n{graph}")]
    NoWitnessFound { graph: String },
    #[error(
        "step {step} ({kind:?}): no free color for vertex {vertex}; {actual} of {palette} forbidden, predicted at most {predicted:?}"
    )]
    ExtensionStuck {
        step: usize,
        kind: Kind,
        vertex: Vertex,
        predicted: Option<usize>,
        actual: usize,
        palette: usize,
    },
    #[error("step {step}: merge infeasible: {detail}")]
    MergeInfeasible { step: usize, detail: String },
    #[error("step {step}: {detail}")]
    InvariantBroken { step: usize, detail: String },
    #[error("trace mismatch at line {position}: {detail}")]
    ReplayMismatch { position: usize, detail: String },
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Colors `g` within `Budget::for_graph(g)` with the default policy.
pub fn color_within_budget(g: &EmbeddedGraph) -> Result<(SquareColoring, ReductionTrace), ReduceError> {
    color_with(g, &ReduceOptions::default())
}

pub fn color_with(g: &EmbeddedGraph, opts: &ReduceOptions) -> Result<(SquareColoring, ReductionTrace), ReduceError> {
    let budget = opts.budget.unwrap_or_else(|| Budget::for_graph(g));
    let mut m = Machine {
        budget,
        policy: opts.policy,
        recorded: None,
        events: Vec::new(),
        steps: 0,
    };
    let c = m.run(g)?;
    Ok((c, ReductionTrace { events: m.events }))
}

/// Re-runs a trace on `g`: every recorded witness is re-checked from the
/// definitions, every base coloring recomputed, and every emitted event must
/// equal the recorded one.
pub fn replay(g: &EmbeddedGraph, trace: &ReductionTrace) -> Result<SquareColoring, ReduceError> {
    let budget = trace.budget().ok_or_else(|| ReduceError::ReplayMismatch {
        position: 0,
        detail: "trace does not start with a start event".into(),
    })?;
    let mut m = Machine {
        budget,
        policy: BasePolicy::Dsatur,
        recorded: Some(&trace.events),
        events: Vec::new(),
        steps: 0,
    };
    let c = m.run(g)?;
    if m.events.len() != trace.events.len() {
        return Err(ReduceError::ReplayMismatch {
            position: m.events.len(),
            detail: "trace has extra lines".into(),
        });
    }
    Ok(c)
}

/// A graph together with the input id of each of its vertices.
struct Part {
    g: EmbeddedGraph,
    ids: Vec<Vertex>,
}

impl Part {
    fn child(&self, g: EmbeddedGraph, map: &[Vertex]) -> Part {
        Part {
            g,
            ids: map.iter().map(|&x| self.ids[x]).collect(),
        }
    }
}

enum Frame {
    Solve(Part),
    Extend {
        part: Part,
        v: Vertex,
        step: usize,
        witness: ConfigWitness,
    },
    Merge {
        part: Part,
        u: Vertex,
        v: Vertex,
        side: Vec<Vertex>,
        step: usize,
    },
}

enum Decision {
    Base(Vec<usize>, BaseMethod),
    Reduce(ConfigWitness),
}

/// Input id to color.
type Colors = HashMap<Vertex, usize>;

struct Machine<'a> {
    budget: Budget,
    policy: BasePolicy,
    recorded: Option<&'a [TraceEvent]>,
    events: Vec<TraceEvent>,
    steps: usize,
}

fn hash_of(g: &EmbeddedGraph) -> String {
    format!("0x{:016x}", g.canonical_hash())
}

impl Machine<'_> {
    fn emit(&mut self, e: TraceEvent) -> Result<(), ReduceError> {
        if let Some(rec) = self.recorded {
            let position = self.events.len();
            match rec.get(position) {
                Some(r) if *r == e => {}
                other => {
                    return Err(ReduceError::ReplayMismatch {
                        position,
                        detail: format!("recorded {other:?}, replayed {e:?}"),
                    })
                }
            }
        }
        self.events.push(e);
        Ok(())
    }

    fn run(&mut self, g: &EmbeddedGraph) -> Result<SquareColoring, ReduceError> {
        if !g.is_connected_without(&[]) {
            return Err(ReduceError::Disconnected);
        }
        self.emit(TraceEvent::Start {
            graph: hash_of(g),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            budget: self.budget,
        })?;
        let palette = self.budget.palette_size;
        let mut stack = vec![Frame::Solve(Part {
            g: g.clone(),
            ids: g.vertices().collect(),
        })];
        let mut results: Vec<Colors> = Vec::new();
        while let Some(frame) = stack.pop() {
            match frame {
                Frame::Solve(part) => self.solve(part, &mut stack, &mut results)?,
                Frame::Extend { part, v, step, witness } => {
                    let mut colors = results.pop().expect("reduced coloring");
                    let ball = dist2_neighborhood(&part.g, v)?;
                    let forbidden: BTreeSet<usize> = ball.iter().map(|&x| colors[&part.ids[x]]).collect();
                    let predicted = forbidden_bound(&part.g, &self.budget, &witness);
                    let actual = forbidden.len();
                    let color = (1..=palette)
                        .find(|c| !forbidden.contains(c))
                        .ok_or(ReduceError::ExtensionStuck {
                            step,
                            kind: witness.kind,
                            vertex: part.ids[v],
                            predicted,
                            actual,
                            palette,
                        })?;
                    self.emit(TraceEvent::Extend {
                        step,
                        vertex: part.ids[v],
                        color,
                        predicted_forbidden: predicted,
                        actual_forbidden: actual,
                        bound_exceeded: predicted.is_some_and(|p| actual > p),
                    })?;
                    colors.insert(part.ids[v], color);
                    results.push(colors);
                }
                Frame::Merge { part, u, v, side, step } => {
                    let c2 = results.pop().expect("second part");
                    let mut c1 = results.pop().expect("first part");
                    let (g, ids) = (&part.g, &part.ids);
                    let in_side: BTreeSet<Vertex> = side.iter().copied().collect();
                    let mut near1 = BTreeSet::new();
                    let mut near2 = BTreeSet::new();
                    for &x in g.neighbors(u).iter().chain(g.neighbors(v)) {
                        if x == u || x == v {
                            continue;
                        }
                        if in_side.contains(&x) {
                            near1.insert(c1[&ids[x]]);
                        } else {
                            near2.insert(c2[&ids[x]]);
                        }
                    }
                    let (iu, iv) = (ids[u], ids[v]);
                    let perm = ops::merge_permutation(palette, (c1[&iu], c1[&iv]), (c2[&iu], c2[&iv]), &near1, &near2)
                        .map_err(|detail| ReduceError::MergeInfeasible { step, detail })?;
                    for (x, c) in c2 {
                        let renamed = perm[c - 1];
                        if let Some(&old) = c1.get(&x) {
                            if old != renamed {
                                return Err(ReduceError::MergeInfeasible {
                                    step,
                                    detail: format!("vertex {x} gets {old} and {renamed}"),
                                });
                            }
                        }
                        c1.insert(x, renamed);
                    }
                    self.emit(TraceEvent::Merge {
                        step,
                        permutation: perm,
                    })?;
                    results.push(c1);
                }
            }
        }
        let colors = results.pop().expect("final coloring");
        let colors: Vec<usize> = g.vertices().map(|v| colors[&v]).collect();
        let coloring = SquareColoring::new(palette, colors).map_err(|e| ReduceError::InvariantBroken {
            step: self.steps,
            detail: e.to_string(),
        })?;
        match verify(g, &coloring) {
            Ok(v) if v.is_valid() => {}
            other => {
                return Err(ReduceError::InvariantBroken {
                    step: self.steps,
                    detail: format!("final coloring does not verify: {other:?}"),
                })
            }
        }
        self.emit(TraceEvent::Done {
            palette,
            colors_used: coloring.colors_used(),
            steps: self.steps,
        })?;
        Ok(coloring)
    }

    fn decide(&self, g: &EmbeddedGraph) -> Result<Decision, ReduceError> {
        let palette = self.budget.palette_size;
        let position = self.events.len();
        let mismatch = |detail: String| ReduceError::ReplayMismatch { position, detail };
        if let Some(rec) = self.recorded {
            return match rec.get(position) {
                Some(TraceEvent::Base { method, .. }) => base_coloring(g, *method, palette, usize::MAX)
                    .map(|c| Decision::Base(c, *method))
                    .ok_or_else(|| mismatch(format!("{method:?} base case does not fit"))),
                Some(TraceEvent::Reduce { witness, .. }) => {
                    if check_witness(g, &self.budget, witness) {
                        Ok(Decision::Reduce(witness.clone()))
                    } else {
                        Err(mismatch(format!("witness {witness:?} does not hold")))
                    }
                }
                other => Err(mismatch(format!("expected a base or reduce line, found {other:?}"))),
            };
        }
        let base = match self.policy {
            BasePolicy::Dsatur => base_coloring(g, BaseMethod::Dsatur, palette, 0).map(|c| (c, BaseMethod::Dsatur)),
            BasePolicy::Distinct { max_vertices } => {
                base_coloring(g, BaseMethod::Distinct, palette, max_vertices).map(|c| (c, BaseMethod::Distinct))
            }
        };
        if let Some((c, method)) = base {
            return Ok(Decision::Base(c, method));
        }
        first_witness(g, &self.budget)
            .map(Decision::Reduce)
            .ok_or_else(|| ReduceError::NoWitnessFound { graph: g.to_pg() })
    }

    fn solve(&mut self, part: Part, stack: &mut Vec<Frame>, results: &mut Vec<Colors>) -> Result<(), ReduceError> {
        let w = match self.decide(&part.g)? {
            Decision::Base(colors, method) => {
                let used = colors.iter().collect::<BTreeSet<_>>().len();
                self.emit(TraceEvent::Base {
                    graph: hash_of(&part.g),
                    vertices: part.g.vertex_count(),
                    method,
                    colors_used: used,
                })?;
                results.push(part.ids.iter().copied().zip(colors).collect());
                return Ok(());
            }
            Decision::Reduce(w) => w,
        };
        let step = self.steps;
        self.steps += 1;
        let broken = |detail: String| ReduceError::InvariantBroken { step, detail };
        let g = &part.g;
        let children: Vec<(EmbeddedGraph, Vec<Vertex>)> = match &w.recipe {
            Recipe::Delete { v } => vec![ops::delete_and_add(g, *v, &[]).map_err(broken)?],
            Recipe::DeleteAndAdd { v, edges } => vec![ops::delete_and_add(g, *v, edges).map_err(broken)?],
            Recipe::AddEdge { u, v, face } => vec![(g.add_edge(*u, *v, *face)?, g.vertices().collect())],
            Recipe::Split { u, v, side } => {
                let mut keep1 = side.clone();
                keep1.extend([*u, *v]);
                let in_side: BTreeSet<Vertex> = side.iter().copied().collect();
                let keep2: Vec<Vertex> = g.vertices().filter(|x| !in_side.contains(x)).collect();
                vec![g.induced(&keep1)?, g.induced(&keep2)?]
            }
        };
        for (h, _) in &children {
            if h.measure() >= g.measure() {
                return Err(broken(format!(
                    "measure {:?} does not drop below {:?}",
                    h.measure(),
                    g.measure()
                )));
            }
            if h.max_degree() > self.budget.delta_context {
                return Err(broken(format!(
                    "max degree {} exceeds {}",
                    h.max_degree(),
                    self.budget.delta_context
                )));
            }
            if !ops::is_plane(h) || !h.is_connected_without(&[]) {
                return Err(broken("reduced graph is not a connected plane graph".into()));
            }
        }
        if let Recipe::Delete { v } | Recipe::DeleteAndAdd { v, .. } = &w.recipe {
            let (h, map) = &children[0];
            let mut new_id = vec![usize::MAX; g.vertex_count()];
            for (i, &old) in map.iter().enumerate() {
                new_id[old] = i;
            }
            let nb = g.neighbors(*v);
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    if !h.within_two_avoiding(new_id[a], new_id[b], &[]) {
                        return Err(broken(format!("neighbors {a} and {b} of {v} end up far apart")));
                    }
                }
            }
        }
        self.emit(TraceEvent::Reduce {
            step,
            witness: w.clone(),
            before: hash_of(g),
            after: children.iter().map(|(h, _)| hash_of(h)).collect(),
            measure_before: g.measure(),
            measure_after: children.iter().map(|(h, _)| h.measure()).collect(),
        })?;
        let mut parts: Vec<Part> = children.into_iter().map(|(h, map)| part.child(h, &map)).collect();
        match w.recipe.clone() {
            Recipe::Delete { v } | Recipe::DeleteAndAdd { v, .. } => {
                let child = parts.pop().expect("one child");
                stack.push(Frame::Extend {
                    part,
                    v,
                    step,
                    witness: w,
                });
                stack.push(Frame::Solve(child));
            }
            Recipe::AddEdge { .. } => stack.push(Frame::Solve(parts.pop().expect("one child"))),
            Recipe::Split { u, v, side } => {
                let second = parts.pop().expect("two children");
                let first = parts.pop().expect("two children");
                stack.push(Frame::Merge { part, u, v, side, step });
                stack.push(Frame::Solve(second));
                stack.push(Frame::Solve(first));
            }
        }
        Ok(())
    }
}

/// Direct coloring, or `None` if the method does not fit the palette.
/// `Distinct` also needs at most `max_vertices` vertices.
fn base_coloring(g: &EmbeddedGraph, method: BaseMethod, palette: usize, max_vertices: usize) -> Option<Vec<usize>> {
    match method {
        BaseMethod::Dsatur => dsatur_color(&square(g), Some(palette))
            .ok()
            .map(|c| c.colors().to_vec()),
        BaseMethod::Distinct => {
            let n = g.vertex_count();
            (n <= palette && n <= max_vertices).then(|| (1..=n).collect())
        }
    }
}
