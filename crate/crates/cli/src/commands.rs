//! The five subcommands. Each returns the rendered report and a status; the
//! binary decides where the text goes and which exit code to use.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use qcm_core::{
    best_approximation_set, canonical_witness, check_cone_axioms, classify, counterexample_to_theorem_form, grid,
    verify_witness_for_set, ApproximationResult, AxiomCheck, AxiomReport, ChebyshevReport, ConeSampling, Direction,
    PointId, QcmInstance, Query, QueryFamily, Rational, TheoremCounterexample, WitnessVerdict,
};
use serde::Serialize;

use crate::failure::Failure;
use crate::file::{self, InstanceFile, Loaded, MetricSpec, PointSpec, QuerySpec, SpaceSpec, WitnessEntry, WitnessFile};
use crate::render;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub seed: u64,
    pub pretty: bool,
    pub direction: Option<Direction>,
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    AxiomFailure(String),
    VerdictFailure(String),
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub status: Status,
}

impl Outcome {
    pub fn code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::AxiomFailure(_) => 4,
            Status::VerdictFailure(_) => 5,
        }
    }
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    command: &'a str,
    input: &'a str,
    seed: u64,
    #[serde(flatten)]
    body: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<u128>,
}

fn finish<T: Serialize>(
    command: &str,
    input: &Path,
    opts: &Options,
    started: Instant,
    body: T,
    pretty: impl FnOnce(&T) -> String,
    status: Status,
) -> Outcome {
    let wall_time_ms = opts.timing.then(|| started.elapsed().as_millis());
    let text = if opts.pretty {
        let mut text = pretty(&body);
        if let Some(ms) = wall_time_ms {
            text.push_str(&format!("wall time {ms} ms\n"));
        }
        text
    } else {
        let input = input.display().to_string();
        let report = Report { command, input: &input, seed: opts.seed, body, wall_time_ms };
        to_json(&report)
    };
    Outcome { text, status }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Query selection: flags first, then the file's `queries`, then defaults
/// (every point as a query, forward direction).
#[derive(Debug, Clone, Default)]
pub struct Selector {
    pub points: Vec<PointId>,
    pub candidates: Vec<PointId>,
}

struct Resolved {
    queries: Vec<PointId>,
    candidates: BTreeSet<PointId>,
    direction: Direction,
}

fn resolve(loaded: &Loaded, sel: &Selector, opts: &Options) -> Result<Resolved, Failure> {
    let file = loaded.queries.as_ref();
    let mut queries = if !sel.points.is_empty() {
        sel.points.clone()
    } else {
        file.map(|q| q.points.clone()).unwrap_or_default()
    };
    if queries.is_empty() {
        queries = loaded.instance.points().to_vec();
    }
    let candidates: BTreeSet<PointId> = if !sel.candidates.is_empty() {
        sel.candidates.iter().cloned().collect()
    } else {
        file.map(|q| q.candidates.iter().cloned().collect()).unwrap_or_default()
    };
    if candidates.is_empty() {
        return Err(Failure::Semantic("no candidate set: pass --candidates or add `queries.candidates`".into()));
    }
    for p in queries.iter().chain(&candidates) {
        if !loaded.instance.contains(p) {
            return Err(Failure::Semantic(format!("unknown point `{p}`")));
        }
    }
    let direction = opts.direction.or(file.and_then(|q| q.direction)).unwrap_or_default();
    Ok(Resolved { queries, candidates, direction })
}

#[derive(Serialize)]
pub struct VerifyBody {
    pub points: usize,
    pub dimension: usize,
    pub samples: usize,
    pub cone: AxiomReport,
    pub metric: AxiomReport,
}

fn failure_message(check: &AxiomCheck) -> String {
    match check.counterexample() {
        Some(c) => format!("{} fails: {c}", check.axiom),
        None => format!("{} fails", check.axiom),
    }
}

pub fn verify(input: &Path, samples: usize, opts: &Options) -> Result<Outcome, Failure> {
    let started = Instant::now();
    let loaded = file::load_instance(input)?;
    let inst = &loaded.instance;
    let cone = check_cone_axioms(inst.space().cone(), &ConeSampling::seeded(opts.seed, samples));
    let metric = inst.verify_axioms();
    let status = match cone.first_failure().or(metric.first_failure()) {
        Some(c) => Status::AxiomFailure(failure_message(c)),
        None => Status::Ok,
    };
    let body = VerifyBody { points: inst.len(), dimension: inst.space().dimension(), samples, cone, metric };
    Ok(finish("verify", input, opts, started, body, render::verify, status))
}

#[derive(Serialize)]
pub struct ApproxBody {
    pub candidates: BTreeSet<PointId>,
    pub results: Vec<ApproximationResult>,
}

pub fn approx(input: &Path, sel: &Selector, opts: &Options) -> Result<Outcome, Failure> {
    let started = Instant::now();
    let loaded = file::load_instance(input)?;
    let r = resolve(&loaded, sel, opts)?;
    let results = r
        .queries
        .iter()
        .map(|q| {
            let query = Query { q: q.clone(), candidates: r.candidates.clone(), direction: r.direction };
            best_approximation_set(&loaded.instance, &query)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let body = ApproxBody { candidates: r.candidates, results };
    Ok(finish("approx", input, opts, started, body, render::approx, Status::Ok))
}

#[derive(Serialize)]
pub struct CheckEntry {
    pub q: PointId,
    pub direction: Direction,
    pub members: BTreeSet<PointId>,
    pub verdict: WitnessVerdict,
}

#[derive(Serialize)]
pub struct CheckBody {
    pub candidates: BTreeSet<PointId>,
    pub checks: Vec<CheckEntry>,
}

/// `emit`: the canonical table for each query, claimed to certify the best
/// set. The output is itself a valid witness file.
pub fn witness_emit(input: &Path, sel: &Selector, opts: &Options) -> Result<Outcome, Failure> {
    let started = Instant::now();
    let loaded = file::load_instance(input)?;
    let r = resolve(&loaded, sel, opts)?;
    let mut witnesses = Vec::with_capacity(r.queries.len());
    for q in &r.queries {
        let table = canonical_witness(&loaded.instance, q, r.direction)?;
        let query = Query { q: q.clone(), candidates: r.candidates.clone(), direction: r.direction };
        let best = best_approximation_set(&loaded.instance, &query)?.best;
        witnesses.push(WitnessEntry::from_table(&table, best));
    }
    let body = WitnessFile { witnesses };
    Ok(finish("witness", input, opts, started, body, render::witness_emit, Status::Ok))
}

pub fn witness_check(input: &Path, witness: &Path, sel: &Selector, opts: &Options) -> Result<Outcome, Failure> {
    let started = Instant::now();
    let loaded = file::load_instance(input)?;
    let r = resolve(&loaded, sel, opts)?;
    let wf: WitnessFile = file::read_json(witness)?;
    let mut checks = Vec::with_capacity(wf.witnesses.len());
    for entry in &wf.witnesses {
        let table = entry.table().map_err(|f| f.context(&witness.display().to_string()))?;
        let verdict = verify_witness_for_set(&loaded.instance, &table, &r.candidates, &entry.members)?;
        checks.push(CheckEntry { q: entry.q.clone(), direction: entry.direction, members: entry.members.clone(), verdict });
    }
    let status = match checks.iter().find(|c| !c.verdict.holds) {
        Some(c) => Status::VerdictFailure(format!(
            "witness for q = {} fails{}",
            c.q,
            c.verdict.failed_condition.map(|w| format!(" ({w})")).unwrap_or_default()
        )),
        None => Status::Ok,
    };
    let body = CheckBody { candidates: r.candidates, checks };
    Ok(finish("witness", input, opts, started, body, render::witness_check, status))
}

#[derive(Serialize)]
pub struct ClassifyBody {
    #[serde(flatten)]
    pub report: ChebyshevReport,
    pub counterexamples: Vec<TheoremCounterexample>,
}

pub fn classify_cmd(input: &Path, sel: &Selector, pseudo: bool, opts: &Options) -> Result<Outcome, Failure> {
    let started = Instant::now();
    let loaded = file::load_instance(input)?;
    let r = resolve(&loaded, sel, opts)?;
    let family = QueryFamily::new(r.queries, r.candidates, r.direction);
    let report = classify(&loaded.instance, &family, loaded.embedding.as_ref(), pseudo)?;
    let counterexamples = counterexample_to_theorem_form(&report, &loaded.instance)?;
    let sub = render::subscript(report.direction);
    let status = if let Some(c) = report.chebyshev.counterexamples.first() {
        Status::VerdictFailure(format!("not Chebyshev: {{{}, {}}} ⊆ P_{{H_{sub}}}({})", c.h1, c.h2, c.q))
    } else if let Some(q) = report.chebyshev.empty.first() {
        Status::VerdictFailure(format!("not Chebyshev: P_{{H_{sub}}}({q}) is empty"))
    } else if let Some(c) = report.quasi.counterexamples.first() {
        Status::VerdictFailure(format!("not quasi-Chebyshev at {}: {}", c.q, c.reason))
    } else {
        Status::Ok
    };
    let body = ClassifyBody { report, counterexamples };
    Ok(finish("classify", input, opts, started, body, render::classify, status))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleKind {
    /// The direction metric, queried at `β²`.
    Example3,
    /// The α-metric, queried at `β`.
    Example4,
}

/// `start:end:step`, each a rational literal.
pub fn parse_grid(spec: &str) -> Result<(Rational, Rational, Rational), Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(Failure::Parse(format!("grid `{spec}`: expected start:end:step")));
    };
    let r = |s: &str| s.trim().parse::<Rational>().map_err(|e| Failure::from(e).context(&format!("grid `{spec}`")));
    let (start, end, step) = (r(a)?, r(b)?, r(c)?);
    if !step.is_positive() {
        return Err(Failure::Semantic(format!("grid `{spec}`: step must be positive")));
    }
    if end < start {
        return Err(Failure::Semantic(format!("grid `{spec}`: end precedes start")));
    }
    Ok((start, end, step))
}

/// Builds an instance file for one of the two closed-form metrics.
///
/// The grid is the candidate set `H`. Each `F(β)` becomes a query point and
/// is added to the ground set when it is not already a grid point.
pub fn example_file(
    kind: ExampleKind,
    grid_spec: &str,
    alpha: Option<&Rational>,
    betas: &[Rational],
    direction: Option<Direction>,
) -> Result<InstanceFile, Failure> {
    let (start, end, step) = parse_grid(grid_spec)?;
    let h = grid(&start, &end, &step);
    let metric = match (kind, alpha) {
        (ExampleKind::Example3, None) => MetricSpec::Example3,
        (ExampleKind::Example3, Some(_)) => return Err(Failure::Semantic("--alpha applies to example4 only".into())),
        (ExampleKind::Example4, Some(a)) if a.is_positive() => MetricSpec::Example4 { alpha: a.clone() },
        (ExampleKind::Example4, Some(a)) => return Err(Failure::Semantic(format!("--alpha {a}: must be positive"))),
        (ExampleKind::Example4, None) => MetricSpec::Example4 { alpha: Rational::ONE },
    };
    let mut points: Vec<(PointId, Rational)> = h.clone();
    let mut queries = Vec::new();
    for beta in betas {
        let x = match kind {
            ExampleKind::Example3 => beta * beta,
            ExampleKind::Example4 => beta.clone(),
        };
        let label = match points.iter().find(|(_, c)| *c == x) {
            Some((l, _)) => l.clone(),
            None => {
                let l = PointId::new(x.to_string());
                points.push((l.clone(), x));
                l
            }
        };
        if !queries.contains(&label) {
            queries.push(label);
        }
    }
    let file = InstanceFile {
        space: Some(SpaceSpec::orthant(2)),
        points: points.into_iter().map(|(label, coordinate)| PointSpec::Located { label, coordinate }).collect(),
        metric,
        queries: Some(QuerySpec { points: queries, candidates: h.into_iter().map(|(l, _)| l).collect(), direction }),
        embedding: None,
    };
    // Catch anything the builders reject before handing the file out.
    file.clone().build()?;
    Ok(file)
}

pub fn example(
    kind: ExampleKind,
    grid_spec: &str,
    alpha: Option<&Rational>,
    betas: &[Rational],
    opts: &Options,
) -> Result<Outcome, Failure> {
    let file = example_file(kind, grid_spec, alpha, betas, opts.direction)?;
    Ok(Outcome { text: to_json(&file), status: Status::Ok })
}

/// The instance [`example_file`] describes.
pub fn example_instance(kind: ExampleKind, grid_spec: &str, alpha: Option<&Rational>, betas: &[Rational]) -> Result<QcmInstance, Failure> {
    Ok(example_file(kind, grid_spec, alpha, betas, None)?.build()?.instance)
}
