//! Human-readable reports for `--pretty`.

use std::collections::BTreeSet;
use std::fmt::Write;

use qcm_core::{AxiomReport, AxiomStatus, Direction, PointId};

use crate::commands::{ApproxBody, CheckBody, ClassifyBody, VerifyBody};
use crate::file::WitnessFile;

pub fn subscript(direction: Direction) -> &'static str {
    match direction {
        Direction::Forward => "f",
        Direction::Backward => "b",
    }
}

fn set(items: &BTreeSet<PointId>) -> String {
    let inner: Vec<&str> = items.iter().map(PointId::as_str).collect();
    format!("{{{}}}", inner.join(", "))
}

fn axioms(out: &mut String, report: &AxiomReport) {
    for c in &report.checks {
        match &c.status {
            AxiomStatus::Pass => writeln!(out, "  {:<5} pass  ({} checks)", c.axiom.to_string(), c.checks),
            AxiomStatus::Fail(cx) => writeln!(out, "  {:<5} FAIL  {cx}", c.axiom.to_string()),
        }
        .unwrap();
    }
}

pub fn verify(body: &VerifyBody) -> String {
    let mut out = String::new();
    writeln!(out, "cone in Q^{} ({} C2 samples)", body.dimension, body.samples).unwrap();
    axioms(&mut out, &body.cone);
    writeln!(out, "quasi-cone metric on {} points", body.points).unwrap();
    axioms(&mut out, &body.metric);
    out
}

pub fn approx(body: &ApproxBody) -> String {
    let mut out = String::new();
    writeln!(out, "H = {}", set(&body.candidates)).unwrap();
    for r in &body.results {
        let sub = subscript(r.direction);
        writeln!(out, "P_{{H_{sub}}}({}) = {}", r.q, set(&r.best)).unwrap();
        if let Some(c) = &r.common_distance {
            let d = match r.direction {
                Direction::Forward => format!("d({}, h)", r.q),
                Direction::Backward => format!("d(h, {})", r.q),
            };
            writeln!(out, "  {d} = {c} for every h in the set").unwrap();
        }
        writeln!(out, "  minimal front {}", set(&r.minimal_front)).unwrap();
        let s = &r.stats;
        writeln!(out, "  {} pairs: {} ⪯-comparable ({} equal), {} incomparable", s.pairs, s.comparable, s.equal, s.incomparable)
            .unwrap();
    }
    out
}

pub fn witness_emit(body: &WitnessFile) -> String {
    let mut out = String::new();
    for w in &body.witnesses {
        let sub = subscript(w.direction);
        writeln!(out, "q = {}: f certifies {} ⊆ P_{{H_{sub}}}({})", w.q, set(&w.members), w.q).unwrap();
        for (x, v) in &w.f {
            writeln!(out, "  f({x}) = {v}").unwrap();
        }
    }
    out
}

pub fn witness_check(body: &CheckBody) -> String {
    let mut out = String::new();
    writeln!(out, "H = {}", set(&body.candidates)).unwrap();
    for c in &body.checks {
        let sub = subscript(c.direction);
        let claim = format!("{} ⊆ P_{{H_{sub}}}({})", set(&c.members), c.q);
        if c.verdict.holds {
            writeln!(out, "{claim}: holds").unwrap();
        } else {
            let cond = c.verdict.failed_condition.map(|w| w.to_string()).unwrap_or_default();
            let elem = c.verdict.element.as_ref().map(PointId::as_str).unwrap_or("?");
            writeln!(out, "{claim}: fails ({cond} at m = {elem})").unwrap();
            if let Some((x, v)) = &c.verdict.counterexample {
                writeln!(out, "  at {x}: {v}").unwrap();
            }
        }
    }
    out
}

pub fn classify(body: &ClassifyBody) -> String {
    let r = &body.report;
    let sub = subscript(r.direction);
    let yes = |b: bool| if b { "holds" } else { "fails" };
    let mut out = String::new();
    writeln!(out, "H = {} ({})", set(&r.candidates), r.direction).unwrap();
    writeln!(out, "Chebyshev: {}", yes(r.chebyshev.holds)).unwrap();
    for c in &r.chebyshev.counterexamples {
        writeln!(out, "  {{{}, {}}} ⊆ P_{{H_{sub}}}({})", c.h1, c.h2, c.q).unwrap();
    }
    for q in &r.chebyshev.empty {
        writeln!(out, "  P_{{H_{sub}}}({q}) is empty").unwrap();
    }
    writeln!(out, "quasi-Chebyshev: {}", yes(r.quasi.holds)).unwrap();
    for c in &r.quasi.counterexamples {
        writeln!(out, "  at {}: {}", c.q, c.reason).unwrap();
    }
    if let Some(p) = &r.pseudo {
        write!(out, "pseudo-Chebyshev: {}", yes(p.holds)).unwrap();
        match &p.max_rank {
            Some(e) => writeln!(out, " (largest span: rank {} at {})", e.rank, e.q).unwrap(),
            None => writeln!(out).unwrap(),
        }
    }
    writeln!(out, "census").unwrap();
    for e in &r.census {
        write!(out, "  |P_{{H_{sub}}}({})| = {}", e.q, e.cardinality).unwrap();
        match e.rank {
            Some(k) => writeln!(out, ", rank {k}").unwrap(),
            None => writeln!(out).unwrap(),
        }
    }
    out
}
