//! Exact discharging: initial charges, the face rule, weak/strong
//! classification and the vertex rules, with a full audit report.

mod charge;

pub use charge::{Charge, ParseChargeError};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::budget::Budget;
use crate::catalog::{detect_all, ConfigWitness};
use crate::embed::{dist2_neighborhood, EmbeddedGraph, Vertex};

/// A vertex or a face, written `"v:3"` / `"f:2"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(Vertex),
    Face(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v:{v}"),
            Element::Face(x) => write!(f, "f:{x}"),
        }
    }
}

impl FromStr for Element {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bad element {s:?}");
        let (tag, id) = s.split_once(':').ok_or_else(bad)?;
        let id: usize = id.parse().map_err(|_| bad())?;
        match tag {
            "v" => Ok(Element::Vertex(id)),
            "f" => Ok(Element::Face(id)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub rule: Rule,
    pub from: Element,
    pub to: Element,
    pub amount: Charge,
    /// Strong vertices the charge transits through.
    pub via: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeLedger {
    pub initial: BTreeMap<Element, Charge>,
    #[serde(rename = "final")]
    pub final_: BTreeMap<Element, Charge>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn sum_initial(&self) -> Charge {
        self.initial.values().sum()
    }

    pub fn sum_final(&self) -> Charge {
        self.final_.values().sum()
    }

    pub fn final_of(&self, e: Element) -> &Charge {
        &self.final_[&e]
    }

    fn push(&mut self, t: Transfer) {
        *self.final_.get_mut(&t.from).expect("known source") -= &t.amount;
        *self.final_.get_mut(&t.to).expect("known target") += &t.amount;
        self.transfers.push(t);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    Weak,
    Strong,
}

/// Vertex classification after the face rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakStrongMap {
    pub classification: Vec<Strength>,
}

impl WeakStrongMap {
    pub fn is_weak(&self, v: Vertex) -> bool {
        self.classification[v] == Strength::Weak
    }

    pub fn weak_vertices(&self) -> Vec<Vertex> {
        (0..self.classification.len()).filter(|&v| self.is_weak(v)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("vertex {v} of degree {degree} is weak")]
    WeakHighDegree { v: Vertex, degree: usize },
}

/// `deg(v) - 6` per vertex and `2 deg(f) - 6` per face; final equals initial.
pub fn initial_charges(g: &EmbeddedGraph) -> ChargeLedger {
    let mut initial = BTreeMap::new();
    for v in g.vertices() {
        initial.insert(Element::Vertex(v), Charge::from_int(g.degree(v) as i64 - 6));
    }
    for (i, f) in g.faces().iter().enumerate() {
        initial.insert(Element::Face(i), Charge::from_int(2 * f.degree() as i64 - 6));
    }
    ChargeLedger {
        final_: initial.clone(),
        initial,
        transfers: Vec::new(),
    }
}

/// Each face of degree `d >= 4` gives `d - 3` to every incident vertex of
/// degree at most 5, once per incidence.
pub fn apply_r1(ledger: &ChargeLedger, g: &EmbeddedGraph) -> ChargeLedger {
    let mut out = ledger.clone();
    let mut batch = Vec::new();
    for (i, f) in g.faces().iter().enumerate() {
        if f.degree() < 4 {
            continue;
        }
        let amount = Charge::from_int(f.degree() as i64 - 3);
        for v in f.boundary() {
            if g.degree(v) <= 5 {
                batch.push(Transfer {
                    rule: Rule::R1,
                    from: Element::Face(i),
                    to: Element::Vertex(v),
                    amount: amount.clone(),
                    via: vec![],
                });
            }
        }
    }
    sort_transfers(&mut batch);
    for t in batch {
        out.push(t);
    }
    out
}

/// Weak iff the current charge is negative.
pub fn classify(ledger: &ChargeLedger, g: &EmbeddedGraph) -> Result<WeakStrongMap, DischargeError> {
    let mut classification = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        if ledger.final_of(Element::Vertex(v)).is_negative() {
            if g.degree(v) > 5 {
                return Err(DischargeError::WeakHighDegree { v, degree: g.degree(v) });
            }
            classification.push(Strength::Weak);
        } else {
            classification.push(Strength::Strong);
        }
    }
    Ok(WeakStrongMap { classification })
}

/// Vertex rules, all computed from the classification and initial charges.
pub fn apply_r2_r3_r4(ledger: &ChargeLedger, g: &EmbeddedGraph, ws: &WeakStrongMap) -> ChargeLedger {
    let mut batch = Vec::new();
    for v in g.vertices() {
        let d = g.degree(v);
        if d < 7 {
            continue;
        }
        let rot = g.neighbors(v);
        let w0 = d as i64 - 6;
        let transfer = |rule, to: Vertex, amount: Charge, via: Vec<Vertex>| Transfer {
            rule,
            from: Element::Vertex(v),
            to: Element::Vertex(to),
            amount,
            via,
        };
        if d == 11 && rot.iter().all(|&w| ws.is_weak(w)) {
            for &w in rot {
                batch.push(transfer(Rule::R2, w, Charge::ratio(5, 11), vec![]));
            }
            continue;
        }
        for (i, &w) in rot.iter().enumerate() {
            if !ws.is_weak(w) {
                continue;
            }
            let prev = rot[(i + d - 1) % d];
            let next = rot[(i + 1) % d];
            let strong: Vec<Vertex> = [prev, next].into_iter().filter(|&s| !ws.is_weak(s)).collect();
            if d >= 11 {
                batch.push(transfer(Rule::R3, w, Charge::ratio(1, 2), vec![]));
                if strong.len() == 2 {
                    for s in strong {
                        batch.push(transfer(Rule::R3, w, Charge::ratio(1, 4), vec![s]));
                    }
                }
            } else {
                batch.push(transfer(Rule::R4, w, Charge::ratio(w0, d as i64), vec![]));
                for s in strong {
                    batch.push(transfer(Rule::R4, w, Charge::ratio(w0, 2 * d as i64), vec![s]));
                }
            }
        }
    }
    sort_transfers(&mut batch);
    let mut out = ledger.clone();
    for t in batch {
        out.push(t);
    }
    out
}

fn sort_transfers(ts: &mut [Transfer]) {
    ts.sort_by(|a, b| (a.rule, a.from, a.to, &a.via).cmp(&(b.rule, b.from, b.to, &b.via)));
}

/// Ledger after all four rules.
pub fn discharge(g: &EmbeddedGraph) -> Result<(ChargeLedger, WeakStrongMap), DischargeError> {
    let after_r1 = apply_r1(&initial_charges(g), g);
    let ws = classify(&after_r1, g)?;
    Ok((apply_r2_r3_r4(&after_r1, g, &ws), ws))
}

/// A final charge that breaks one of the universal bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    Degree6NonZero,
    Degree7To10Negative,
    Degree11Negative,
    Degree12PlusNegative,
    FaceNegative,
    WeakHighDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaViolation {
    pub element: Element,
    pub violation: Violation,
    pub charge: Charge,
}

/// Checks the bounds that hold on every input: degree 6 ends at 0, degree
/// `>= 7` ends non-negative, faces with at most two incidences of degree
/// `<= 5` end non-negative, weak vertices have degree `<= 5`.
pub fn universal_violations(g: &EmbeddedGraph, ledger: &ChargeLedger, ws: &WeakStrongMap) -> Vec<LemmaViolation> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let e = Element::Vertex(v);
        let c = ledger.final_of(e);
        let d = g.degree(v);
        let bad = match d {
            6 if !c.is_zero() => Some(Violation::Degree6NonZero),
            7..=10 if c.is_negative() => Some(Violation::Degree7To10Negative),
            11 if c.is_negative() => Some(Violation::Degree11Negative),
            12.. if c.is_negative() => Some(Violation::Degree12PlusNegative),
            _ => None,
        };
        let weak_bad = (ws.is_weak(v) && d > 5).then_some(Violation::WeakHighDegree);
        for violation in bad.into_iter().chain(weak_bad) {
            out.push(LemmaViolation {
                element: e,
                violation,
                charge: c.clone(),
            });
        }
    }
    for (i, f) in g.faces().iter().enumerate() {
        let e = Element::Face(i);
        let small = f.boundary().filter(|&v| g.degree(v) <= 5).count();
        let c = ledger.final_of(e);
        if small <= 2 && c.is_negative() {
            out.push(LemmaViolation {
                element: e,
                violation: Violation::FaceNegative,
                charge: c.clone(),
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeElement {
    pub element: Element,
    pub charge: Charge,
    /// Indices into [`AuditReport::witnesses`] with an actor near the element.
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub sum_initial: Charge,
    pub sum_final: Charge,
    pub weak: Vec<Vertex>,
    pub ledger: ChargeLedger,
    pub negative: Vec<NegativeElement>,
    pub witnesses: Vec<ConfigWitness>,
    pub violations: Vec<LemmaViolation>,
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("audit serializes")
    }

    /// `true` when charge is conserved and no universal bound is broken.
    pub fn is_clean(&self) -> bool {
        self.sum_initial == self.sum_final && self.violations.is_empty()
    }
}

/// Full pipeline. Each negative element is matched with the witnesses of
/// `detect_all` having an actor within distance 2 of it (for a face, of one
/// of its boundary vertices).
pub fn audit(g: &EmbeddedGraph) -> Result<AuditReport, DischargeError> {
    let (ledger, ws) = discharge(g)?;
    let witnesses = detect_all(g, &Budget::for_graph(g));
    let mut negative = Vec::new();
    for (&e, c) in &ledger.final_ {
        if !c.is_negative() {
            continue;
        }
        let centers: Vec<Vertex> = match e {
            Element::Vertex(v) => vec![v],
            Element::Face(f) => g.faces().face(f).vertex_set(),
        };
        let mut near = vec![false; g.vertex_count()];
        for &x in &centers {
            near[x] = true;
            for y in dist2_neighborhood(g, x).expect("vertex of g") {
                near[y] = true;
            }
        }
        let hits = witnesses
            .iter()
            .enumerate()
            .filter(|(_, w)| w.actors.iter().any(|&a| near[a]))
            .map(|(i, _)| i)
            .collect();
        negative.push(NegativeElement {
            element: e,
            charge: c.clone(),
            witnesses: hits,
        });
    }
    let violations = universal_violations(g, &ledger, &ws);
    Ok(AuditReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        faces: g.faces().len(),
        sum_initial: ledger.sum_initial(),
        sum_final: ledger.sum_final(),
        weak: ws.weak_vertices(),
        ledger,
        negative,
        witnesses,
        violations,
    })
}
