//! Chebyshev, quasi-Chebyshev and pseudo-Chebyshev classification of a
//! candidate set over a finite family of query points.
//!
//! On a finite ground set:
//!
//! * Chebyshev: every query has exactly one best approximation.
//! * Quasi-Chebyshev: every best set is nonempty. A finite nonempty set is
//!   sequentially compact, and an empty best set is the only way to fail.
//! * Pseudo-Chebyshev: holds trivially, since a finite set cannot contain
//!   infinitely many independent elements. The span rank of each embedded
//!   best set is recorded instead, as the evidence that would grow without
//!   bound in an infinite ambient.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::approx::{best_approximation_set, ApproximationResult, Direction, Query};
use crate::error::{Error, Result};
use crate::linalg;
use crate::qcm::{PointId, QcmInstance};
use crate::vector::Vector;
use crate::witness::{canonical_witness, verify_witness_for_set, WitnessTable};

/// Coordinates of ground-set points in some Q^k, for the pseudo check.
pub type Embedding = BTreeMap<PointId, Vector>;

pub const QUASI_SEMANTICS: &str =
    "finite instance: a best set fails sequential compactness iff it is empty";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryFamily {
    pub queries: Vec<PointId>,
    pub candidates: BTreeSet<PointId>,
    pub direction: Direction,
}

impl QueryFamily {
    pub fn new(
        queries: impl IntoIterator<Item = PointId>,
        candidates: impl IntoIterator<Item = PointId>,
        direction: Direction,
    ) -> Self {
        QueryFamily { queries: queries.into_iter().collect(), candidates: candidates.into_iter().collect(), direction }
    }

    /// Every ground-set point as a query.
    pub fn all_points(instance: &QcmInstance, candidates: impl IntoIterator<Item = PointId>, direction: Direction) -> Self {
        Self::new(instance.points().iter().cloned(), candidates, direction)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChebyshevCounterexample {
    pub q: PointId,
    pub h1: PointId,
    pub h2: PointId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChebyshevVerdict {
    pub holds: bool,
    /// Queries with two or more best approximations, sorted by label.
    pub counterexamples: Vec<ChebyshevCounterexample>,
    /// Queries with no best approximation at all. These also break
    /// uniqueness but admit no two-member counterexample.
    pub empty: Vec<PointId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiCounterexample {
    pub q: PointId,
    pub reason: String,
    pub minimal_front: BTreeSet<PointId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiVerdict {
    pub holds: bool,
    pub semantics: &'static str,
    pub counterexamples: Vec<QuasiCounterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankEvidence {
    pub q: PointId,
    pub rank: usize,
    /// Best-set members whose embeddings are linearly independent.
    pub independent: Vec<PointId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudoVerdict {
    pub holds: bool,
    /// The query whose best set spans the largest subspace.
    pub max_rank: Option<RankEvidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub q: PointId,
    pub cardinality: usize,
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChebyshevReport {
    pub direction: Direction,
    pub candidates: BTreeSet<PointId>,
    pub chebyshev: ChebyshevVerdict,
    pub quasi: QuasiVerdict,
    pub pseudo: Option<PseudoVerdict>,
    pub census: Vec<CensusEntry>,
}

/// Classifies `family.candidates` over the family's queries.
///
/// The pseudo check runs only when `pseudo` is set and then needs an
/// embedding covering every member of every best set.
pub fn classify(
    instance: &QcmInstance,
    family: &QueryFamily,
    embedding: Option<&Embedding>,
    pseudo: bool,
) -> Result<ChebyshevReport> {
    if pseudo && embedding.is_none() {
        return Err(Error::MissingEmbedding);
    }
    let mut queries = family.queries.clone();
    queries.sort();
    queries.dedup();
    if queries.is_empty() {
        return Err(Error::EmptyQueries);
    }
    let results: Vec<ApproximationResult> = queries
        .par_iter()
        .map(|q| best_approximation_set(instance, &Query::new(q.clone(), family.candidates.iter().cloned(), family.direction)))
        .collect::<Result<_>>()?;

    let embed_dim = match embedding {
        Some(e) if pseudo => Some(embedding_dimension(e)?),
        _ => None,
    };

    let mut chebyshev = Vec::new();
    let mut empty = Vec::new();
    let mut quasi = Vec::new();
    let mut census = Vec::with_capacity(results.len());
    let mut max_rank: Option<RankEvidence> = None;
    for r in &results {
        let mut best = r.best.iter();
        match (best.next(), best.next()) {
            (Some(h1), Some(h2)) => chebyshev.push(ChebyshevCounterexample { q: r.q.clone(), h1: h1.clone(), h2: h2.clone() }),
            (None, _) => {
                empty.push(r.q.clone());
                quasi.push(QuasiCounterexample {
                    q: r.q.clone(),
                    reason: "best-approximation set is empty".into(),
                    minimal_front: r.minimal_front.clone(),
                });
            }
            _ => {}
        }
        let rank = match (embedding, embed_dim) {
            (Some(e), Some(k)) => {
                let members: Vec<&PointId> = r.best.iter().collect();
                let vectors = members
                    .iter()
                    .map(|p| e.get(*p).cloned().ok_or_else(|| Error::EmbeddingMissingPoint(p.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                let picked = linalg::independent_subset(&vectors, k);
                let evidence =
                    RankEvidence { q: r.q.clone(), rank: picked.len(), independent: picked.iter().map(|&i| members[i].clone()).collect() };
                if max_rank.as_ref().map_or(true, |m| evidence.rank > m.rank) {
                    max_rank = Some(evidence);
                }
                Some(picked.len())
            }
            _ => None,
        };
        census.push(CensusEntry { q: r.q.clone(), cardinality: r.best.len(), rank });
    }
    let chebyshev_holds = chebyshev.is_empty() && empty.is_empty();

    Ok(ChebyshevReport {
        direction: family.direction,
        candidates: family.candidates.clone(),
        chebyshev: ChebyshevVerdict { holds: chebyshev_holds, counterexamples: chebyshev, empty },
        quasi: QuasiVerdict { holds: quasi.is_empty(), semantics: QUASI_SEMANTICS, counterexamples: quasi },
        pseudo: if pseudo { Some(PseudoVerdict { holds: true, max_rank }) } else { None },
        census,
    })
}

fn embedding_dimension(embedding: &Embedding) -> Result<usize> {
    let mut dims = embedding.values().map(Vector::dim);
    let Some(k) = dims.next() else {
        return Ok(0);
    };
    if let Some(other) = dims.find(|&d| d != k) {
        return Err(Error::DimensionMismatch { expected: k, found: other });
    }
    Ok(k)
}

/// A non-uniqueness counterexample packaged with the witness that certifies
/// both members at once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCounterexample {
    pub q: PointId,
    pub h1: PointId,
    pub h2: PointId,
    pub witness: WitnessTable,
}

/// Attaches the canonical witness to every Chebyshev counterexample in
/// `report` and re-verifies it for `{h1, h2}`. Empty when the report holds.
pub fn counterexample_to_theorem_form(report: &ChebyshevReport, instance: &QcmInstance) -> Result<Vec<TheoremCounterexample>> {
    let mut out = Vec::with_capacity(report.chebyshev.counterexamples.len());
    for c in &report.chebyshev.counterexamples {
        let witness = canonical_witness(instance, &c.q, report.direction)?;
        let pair: BTreeSet<PointId> = [c.h1.clone(), c.h2.clone()].into_iter().collect();
        let verdict = verify_witness_for_set(instance, &witness, &report.candidates, &pair)?;
        if !verdict.holds || pair.len() != 2 {
            return Err(Error::StaleCounterexample(format!("q = {}, h1 = {}, h2 = {}", c.q, c.h1, c.h2)));
        }
        out.push(TheoremCounterexample { q: c.q.clone(), h1: c.h1.clone(), h2: c.h2.clone(), witness });
    }
    Ok(out)
}
