//! Witness functions certifying membership in a best-approximation set.
//!
//! A table `f : Q → B` certifies that `m ∈ H` is a forward best approximation
//! of `q` when
//!
//! 1. `f(m) = d(q, m)` (anchor),
//! 2. `f(h) - f(m) ∈ P` for every `h ∈ H` (shift),
//! 3. `d(q, h) - f(h) ∈ P` for every `h ∈ H` (gap).
//!
//! Backward witnesses replace `d(q, ·)` by `d(·, q)`. A set `M ⊆ H` is
//! certified by a single `f` satisfying the three conditions at every
//! `m ∈ M`. The table `f(x) = d(q, x)` is always a witness for every member of
//! the best set, so verification with it is an exact membership test.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::approx::Direction;
use crate::error::{Error, Result};
use crate::front::minimal_front_naive;
use crate::qcm::{PointId, QcmInstance};
use crate::rational::Rational;
use crate::vector::Vector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTable {
    pub q: PointId,
    pub direction: Direction,
    pub f: BTreeMap<PointId, Vector>,
}

impl WitnessTable {
    /// Checks that `f` is total over the ground set with the right dimension.
    pub fn validate(&self, instance: &QcmInstance) -> Result<()> {
        instance.index_of(&self.q)?;
        for p in instance.points() {
            let v = self.f.get(p).ok_or_else(|| Error::IncompleteWitness(p.to_string()))?;
            v.check_dim(instance.space().dimension())?;
        }
        if let Some(extra) = self.f.keys().find(|k| !instance.contains(k)) {
            return Err(Error::UnknownPoint(extra.to_string()));
        }
        Ok(())
    }

    fn at(&self, p: &PointId) -> &Vector {
        &self.f[p]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessCondition {
    AnchorEquality,
    FShiftNotInCone,
    DGapNotInCone,
}

impl fmt::Display for WitnessCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessCondition::AnchorEquality => "anchor-equality",
            WitnessCondition::FShiftNotInCone => "f-shift-not-in-cone",
            WitnessCondition::DGapNotInCone => "d-gap-not-in-cone",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessVerdict {
    pub holds: bool,
    pub failed_condition: Option<WitnessCondition>,
    /// The member of `M` whose conditions failed.
    pub element: Option<PointId>,
    /// The offending point and value: `f(m)` for the anchor, `f(h) - f(m)` for
    /// a shift, `d(q,h) - f(h)` for a gap.
    pub counterexample: Option<(PointId, Vector)>,
}

impl WitnessVerdict {
    fn pass() -> Self {
        WitnessVerdict { holds: true, failed_condition: None, element: None, counterexample: None }
    }

    fn fail(condition: WitnessCondition, element: &PointId, at: &PointId, value: Vector) -> Self {
        WitnessVerdict {
            holds: false,
            failed_condition: Some(condition),
            element: Some(element.clone()),
            counterexample: Some((at.clone(), value)),
        }
    }
}

fn reference_distance(instance: &QcmInstance, direction: Direction, q: usize, x: usize) -> &Vector {
    direction.distance(instance, q, x)
}

/// `f(x) = d(q, x)` going forward, `f(x) = d(x, q)` going backward.
pub fn canonical_witness(instance: &QcmInstance, q: &PointId, direction: Direction) -> Result<WitnessTable> {
    let qi = instance.index_of(q)?;
    let f = instance
        .points()
        .iter()
        .enumerate()
        .map(|(x, p)| (p.clone(), reference_distance(instance, direction, qi, x).clone()))
        .collect();
    Ok(WitnessTable { q: q.clone(), direction, f })
}

fn check_candidates(instance: &QcmInstance, candidates: &BTreeSet<PointId>) -> Result<()> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    for h in candidates {
        instance.index_of(h)?;
    }
    Ok(())
}

fn verify_element_unchecked(
    instance: &QcmInstance,
    witness: &WitnessTable,
    candidates: &BTreeSet<PointId>,
    m: &PointId,
) -> WitnessVerdict {
    let space = instance.space();
    let qi = instance.index_of(&witness.q).expect("validated");
    let dist = |p: &PointId| reference_distance(instance, witness.direction, qi, instance.index_of(p).expect("validated"));

    let anchor = witness.at(m);
    if anchor != dist(m) {
        return WitnessVerdict::fail(WitnessCondition::AnchorEquality, m, m, anchor.clone());
    }
    for h in candidates {
        if !space.leq_unchecked(anchor, witness.at(h)) {
            return WitnessVerdict::fail(WitnessCondition::FShiftNotInCone, m, h, witness.at(h).sub(anchor));
        }
    }
    for h in candidates {
        if !space.leq_unchecked(witness.at(h), dist(h)) {
            return WitnessVerdict::fail(WitnessCondition::DGapNotInCone, m, h, dist(h).sub(witness.at(h)));
        }
    }
    WitnessVerdict::pass()
}

/// Checks anchor, shift and gap for a single `m ∈ H`, reporting the first
/// failure in that order (shift and gap scan `H` in label order).
pub fn verify_witness_for_element(
    instance: &QcmInstance,
    witness: &WitnessTable,
    candidates: &BTreeSet<PointId>,
    m: &PointId,
) -> Result<WitnessVerdict> {
    witness.validate(instance)?;
    check_candidates(instance, candidates)?;
    if !candidates.contains(m) {
        return Err(Error::NotACandidate(m.to_string()));
    }
    Ok(verify_element_unchecked(instance, witness, candidates, m))
}

/// Checks that one shared `f` certifies every member of `M ⊆ H`.
///
/// Besides the per-element conditions, all anchors `f(m)` must coincide; this
/// follows from the conditions on a pointed cone and is re-checked explicitly.
pub fn verify_witness_for_set(
    instance: &QcmInstance,
    witness: &WitnessTable,
    candidates: &BTreeSet<PointId>,
    members: &BTreeSet<PointId>,
) -> Result<WitnessVerdict> {
    witness.validate(instance)?;
    check_candidates(instance, candidates)?;
    if let Some(m) = members.iter().find(|m| !candidates.contains(*m)) {
        return Err(Error::NotACandidate(m.to_string()));
    }
    for m in members {
        let verdict = verify_element_unchecked(instance, witness, candidates, m);
        if !verdict.holds {
            return Ok(verdict);
        }
    }
    if let Some(first) = members.iter().next() {
        let anchor = witness.at(first);
        if let Some(m) = members.iter().find(|m| witness.at(m) != anchor) {
            return Ok(WitnessVerdict::fail(WitnessCondition::AnchorEquality, m, m, witness.at(m).clone()));
        }
    }
    Ok(WitnessVerdict::pass())
}

/// Which witness tables [`search_counterexample_witness`] tries.
///
/// Besides the canonical table, every variant has the form
/// `f(x) = c + t_x · (d(q,x) - c)` where `c` is the distance of the first
/// minimal candidate. Points with `d(q,x) ⪰ c` are shrunk toward `c`; all other
/// points keep their canonical value, so every entry stays in the cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPool {
    /// Uniform shrink factors `t`, each in `(0, 1]`.
    pub shrink_factors: Vec<Rational>,
    /// Number of tables with independent pseudo-random `t_x`.
    pub perturbations: usize,
    pub seed: u64,
}

impl Default for WitnessPool {
    fn default() -> Self {
        WitnessPool { shrink_factors: vec![Rational::new(1, 2), Rational::new(3, 4)], perturbations: 4, seed: 0 }
    }
}

impl WitnessPool {
    pub fn canonical_only() -> Self {
        WitnessPool { shrink_factors: Vec::new(), perturbations: 0, seed: 0 }
    }

    fn tables(&self, instance: &QcmInstance, q: &PointId, direction: Direction, candidates: &BTreeSet<PointId>) -> Result<Vec<WitnessTable>> {
        let canonical = canonical_witness(instance, q, direction)?;
        let mut out = vec![canonical.clone()];
        if self.shrink_factors.is_empty() && self.perturbations == 0 {
            return Ok(out);
        }
        let space = instance.space();
        let values: Vec<(PointId, Vector)> = candidates.iter().map(|h| (h.clone(), canonical.f[h].clone())).collect();
        let front = minimal_front_naive(&values, space);
        let Some(anchor_point) = front.iter().next() else {
            return Ok(out);
        };
        let anchor = canonical.f[anchor_point].clone();
        let shrink = |t_of: &mut dyn FnMut() -> Rational| {
            let f = canonical
                .f
                .iter()
                .map(|(p, d)| {
                    let v = if space.leq_unchecked(&anchor, d) { anchor.add(&d.sub(&anchor).scale(&t_of())) } else { d.clone() };
                    (p.clone(), v)
                })
                .collect();
            WitnessTable { q: q.clone(), direction, f }
        };
        for t in &self.shrink_factors {
            out.push(shrink(&mut || t.clone()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.perturbations {
            out.push(shrink(&mut || {
                let den = rng.gen_range(1..=8);
                Rational::new(rng.gen_range(1..=den), den)
            }));
        }
        Ok(out)
    }
}

/// Looks for a witness table in `pool` certifying some `M ⊆ H` with `|M| ≥ 2`.
///
/// For each table, `M` is taken to be every candidate whose individual
/// conditions hold; the first table for which that set has two or more
/// members and verifies as a whole is returned.
pub fn search_counterexample_witness(
    instance: &QcmInstance,
    q: &PointId,
    direction: Direction,
    candidates: &BTreeSet<PointId>,
    pool: &WitnessPool,
) -> Result<Option<(WitnessTable, BTreeSet<PointId>)>> {
    check_candidates(instance, candidates)?;
    for table in pool.tables(instance, q, direction, candidates)? {
        let members: BTreeSet<PointId> = candidates
            .iter()
            .filter(|m| verify_element_unchecked(instance, &table, candidates, m).holds)
            .cloned()
            .collect();
        if members.len() >= 2 && verify_witness_for_set(instance, &table, candidates, &members)?.holds {
            return Ok(Some((table, members)));
        }
    }
    Ok(None)
}
