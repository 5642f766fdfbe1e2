//! Forward and backward best-approximation sets.
//!
//! For a query point `q` and candidates `H`, the forward set collects every
//! `h ∈ H` with `d(q,h) ⪯ d(q,h')` for all `h' ∈ H`; the backward set uses
//! `d(h,q)` instead. Under a partial order either set may be empty, in which
//! case the minimal front of the distance values is the useful diagnostic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::front::minimal_front_dnc;
use crate::qcm::{PointId, QcmInstance};
use crate::vector::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "forward" | "f" => Ok(Direction::Forward),
            "backward" | "b" => Ok(Direction::Backward),
            other => Err(format!("unknown direction {other:?} (expected forward or backward)")),
        }
    }
}

impl Direction {
    /// `d(q, x)` going forward, `d(x, q)` going backward.
    pub fn distance(self, instance: &QcmInstance, q: usize, x: usize) -> &Vector {
        match self {
            Direction::Forward => instance.distance_at(q, x),
            Direction::Backward => instance.distance_at(x, q),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub q: PointId,
    pub candidates: BTreeSet<PointId>,
    pub direction: Direction,
}

impl Query {
    pub fn new(q: impl Into<PointId>, candidates: impl IntoIterator<Item = PointId>, direction: Direction) -> Self {
        Query { q: q.into(), candidates: candidates.into_iter().collect(), direction }
    }

    /// Resolves labels to indices, rejecting empty or unknown candidates.
    pub(crate) fn resolve(&self, instance: &QcmInstance) -> Result<(usize, Vec<usize>)> {
        let q = instance.index_of(&self.q)?;
        if self.candidates.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        let h = self.candidates.iter().map(|p| instance.index_of(p)).collect::<Result<Vec<_>>>()?;
        Ok((q, h))
    }
}

/// How much of the candidate family the order could actually compare.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DominanceStats {
    /// Unordered pairs of distinct candidates.
    pub pairs: u64,
    /// Pairs whose distance values are comparable (including equal).
    pub comparable: u64,
    pub incomparable: u64,
    /// Pairs with identical distance values.
    pub equal: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproximationResult {
    pub q: PointId,
    pub direction: Direction,
    pub best: BTreeSet<PointId>,
    /// The shared distance of every member of `best`; `None` iff `best` is empty.
    pub common_distance: Option<Vector>,
    pub minimal_front: BTreeSet<PointId>,
    pub stats: DominanceStats,
}

/// Computes the forward or backward best-approximation set of `query`.
pub fn best_approximation_set(instance: &QcmInstance, query: &Query) -> Result<ApproximationResult> {
    let (q, candidates) = query.resolve(instance)?;
    let space = instance.space();
    let value = |h: usize| query.direction.distance(instance, q, h);

    // Any least value must survive this scan: once reached, only an equal
    // value can replace it (antisymmetry of a pointed cone).
    let mut cand = candidates[0];
    for &h in &candidates[1..] {
        if space.leq_unchecked(value(h), value(cand)) {
            cand = h;
        }
    }
    let least = value(cand);
    let is_least = candidates.iter().all(|&h| space.leq_unchecked(least, value(h)));

    let (best, common_distance) = if is_least {
        let best = candidates.iter().filter(|&&h| value(h) == least).map(|&h| instance.points()[h].clone()).collect();
        (best, Some(least.clone()))
    } else {
        (BTreeSet::new(), None)
    };

    let labeled: Vec<(PointId, Vector)> =
        candidates.iter().map(|&h| (instance.points()[h].clone(), value(h).clone())).collect();
    let minimal_front = minimal_front_dnc(&labeled, space).members;

    let mut stats = DominanceStats::default();
    for (a, (_, va)) in labeled.iter().enumerate() {
        for (_, vb) in &labeled[a + 1..] {
            stats.pairs += 1;
            if va == vb {
                stats.equal += 1;
                stats.comparable += 1;
            } else if space.leq_unchecked(va, vb) || space.leq_unchecked(vb, va) {
                stats.comparable += 1;
            } else {
                stats.incomparable += 1;
            }
        }
    }

    Ok(ApproximationResult {
        q: query.q.clone(),
        direction: query.direction,
        best,
        common_distance,
        minimal_front,
        stats,
    })
}

/// Checks that the backward result on `instance` coincides with the forward
/// result on its transpose.
pub fn duality_check(instance: &QcmInstance, q: &PointId, candidates: &BTreeSet<PointId>) -> Result<bool> {
    let backward = best_approximation_set(instance, &Query::new(q.clone(), candidates.iter().cloned(), Direction::Backward))?;
    let forward = best_approximation_set(
        &instance.transpose(),
        &Query::new(q.clone(), candidates.iter().cloned(), Direction::Forward),
    )?;
    Ok(backward.best == forward.best
        && backward.common_distance == forward.common_distance
        && backward.minimal_front == forward.minimal_front)
}
