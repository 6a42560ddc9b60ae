use std::collections::BTreeMap;

use psc_core::budget::Budget;
use psc_core::catalog::Kind;
use psc_core::generators::{gen_corpus, CorpusSpec};
use psc_core::reducer::{color_with, replay, BasePolicy, ReduceOptions, TraceEvent};
use psc_core::solvers::verify;

fn forced() -> ReduceOptions {
    ReduceOptions {
        policy: BasePolicy::Distinct { max_vertices: 1 },
        budget: None,
    }
}

fn run(spec: &CorpusSpec) -> (usize, usize, BTreeMap<Kind, usize>) {
    let mut kinds = BTreeMap::new();
    let mut steps = 0;
    let mut exceeded = 0;
    for g in gen_corpus(spec).unwrap() {
        let (c, t) = color_with(&g, &forced()).unwrap_or_else(|e| panic!("{e}\n{}", g.to_pg()));
        assert!(verify(&g, &c).unwrap().is_valid());
        assert!(c.palette_size() <= Budget::for_graph(&g).palette_size);
        assert_eq!(replay(&g, &t).unwrap(), c);
        steps += t.reductions().count();
        for w in t.reductions() {
            *kinds.entry(w.kind).or_insert(0) += 1;
        }
        exceeded += t.exceeded_bounds().len();
        for e in t.exceeded_bounds() {
            if let TraceEvent::Extend { step, .. } = e {
                let w = t.reductions().nth(*step).unwrap();
                eprintln!("exceeded {:?} {e:?}", w.kind);
            }
        }
    }
    (steps, exceeded, kinds)
}

#[test]
fn forced_reductions_high_delta() {
    let (steps, exceeded, kinds) = run(&CorpusSpec::new(60, (12, 120), 9, 11));
    eprintln!("high: {steps} steps, {exceeded} over bound, {kinds:?}");
    assert_eq!(exceeded, 0);
    assert!(steps > 0);
}

#[test]
fn forced_reductions_low_delta() {
    let (steps, exceeded, kinds) = run(&CorpusSpec::new(60, (4, 120), 0, 12).with_delta_max(6));
    eprintln!("low: {steps} steps, {exceeded} over bound, {kinds:?}");
    assert_eq!(exceeded, 0);
    assert!(steps > 0);
}
