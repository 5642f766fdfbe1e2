//! Polyhedral cones `{x : Ax ≥ 0}` over Q^n and the orders they induce.
//!
//! For `s, r` in the ambient space:
//!
//! * `s ⪯ r` iff `r - s` lies in the cone,
//! * `s ≺ r` iff `s ⪯ r` and `s ≠ r`,
//! * `s ≪ r` iff `r - s` lies in the interior of the cone.
//!
//! All predicates are exact. The interior is only consulted on cones with a
//! certified strictly feasible point (see [`PolyhedralCone::interior_witness`]).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::axioms::{Axiom, AxiomCheck, AxiomReport, AxiomStatus, Counterexample};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::rational::Rational;
use crate::vector::Vector;

/// A cone in halfspace form: each row `a` contributes the constraint `a · x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralCone {
    dim: usize,
    rows: Vec<Vector>,
    interior: Option<Vector>,
    orthant: bool,
}

impl PolyhedralCone {
    pub fn new(dim: usize, rows: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidCone("dimension must be positive".into()));
        }
        if rows.is_empty() {
            return Err(Error::InvalidCone("no constraint rows".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            row.check_dim(dim)?;
            if row.is_zero() {
                return Err(Error::InvalidCone(format!("row {i} is the zero vector")));
            }
        }
        let orthant = detect_orthant(dim, &rows);
        let mut cone = PolyhedralCone { dim, rows, interior: None, orthant };
        cone.interior = cone.search_interior_point();
        Ok(cone)
    }

    /// The nonnegative orthant of Q^dim (rows = identity).
    pub fn orthant(dim: usize) -> Self {
        let rows = (0..dim).map(|i| Vector::unit(dim, i)).collect();
        Self::new(dim, rows).expect("orthant is a valid cone")
    }

    /// Replaces the searched interior certificate with a caller-supplied one.
    pub fn with_interior_witness(mut self, witness: Vector) -> Result<Self> {
        witness.check_dim(self.dim)?;
        if !self.strictly_feasible(&witness) {
            return Err(Error::InvalidCone(format!("{witness} is not strictly inside the cone")));
        }
        self.interior = Some(witness);
        Ok(self)
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn interior_witness(&self) -> Option<&Vector> {
        self.interior.as_ref()
    }

    pub fn is_solid(&self) -> bool {
        self.interior.is_some()
    }

    /// True when the cone is exactly the nonnegative orthant, so the order is
    /// componentwise.
    pub fn is_orthant(&self) -> bool {
        self.orthant
    }

    /// Axiom C3: the row matrix has full column rank.
    pub fn is_pointed(&self) -> bool {
        Echelon::new(&self.rows, self.dim).rank() == self.dim
    }

    /// A nonzero `x` with `Ax = 0`, i.e. a line inside the cone.
    pub fn lineality_direction(&self) -> Option<Vector> {
        Echelon::new(&self.rows, self.dim).kernel_vector()
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        x.check_dim(self.dim)?;
        Ok(self.contains_unchecked(x))
    }

    pub fn interior_contains(&self, x: &Vector) -> Result<bool> {
        x.check_dim(self.dim)?;
        if !self.is_solid() {
            return Err(Error::NotSolid);
        }
        Ok(self.strictly_feasible(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &Vector) -> bool {
        if self.orthant {
            return x.iter().all(|c| !c.is_negative());
        }
        self.rows.iter().all(|a| !a.dot(x).is_negative())
    }

    /// `r - s ∈ P`, evaluated row by row without building the difference.
    pub(crate) fn contains_diff(&self, r: &Vector, s: &Vector) -> bool {
        if self.orthant {
            return r.iter().zip(s.iter()).all(|(a, b)| a >= b);
        }
        self.rows.iter().all(|a| !a.dot_diff(r, s).is_negative())
    }

    fn strictly_feasible(&self, x: &Vector) -> bool {
        self.rows.iter().all(|a| a.dot(x).is_positive())
    }

    /// Tries `Aᵀ1`, reweighted row sums, the rows themselves and `±eᵢ`.
    fn search_interior_point(&self) -> Option<Vector> {
        self.candidate_directions().into_iter().find(|x| self.strictly_feasible(x))
    }

    fn candidate_directions(&self) -> Vec<Vector> {
        let n = self.dim;
        let m = self.rows.len();
        let weighted = |w: &dyn Fn(usize) -> i64| {
            let mut acc = Vector::zeros(n);
            for (i, row) in self.rows.iter().enumerate() {
                acc = acc.add(&row.scale(&Rational::from(w(i))));
            }
            acc
        };
        let mut out = vec![weighted(&|_| 1), weighted(&|i| i as i64 + 1), weighted(&|i| (m - i) as i64)];
        out.extend(self.rows.iter().cloned());
        out.push((0..n).map(|_| Rational::ONE).collect());
        out.push((0..n).map(|_| -Rational::ONE).collect());
        for j in 0..n {
            out.push(Vector::unit(n, j));
            out.push(Vector::unit(n, j).neg());
        }
        out
    }
}

fn detect_orthant(dim: usize, rows: &[Vector]) -> bool {
    // The orthant lies inside {Ax ≥ 0} iff every row is componentwise
    // nonnegative; the reverse inclusion holds once every eⱼ (up to a positive
    // factor) is itself a row.
    if rows.iter().any(|r| r.iter().any(Rational::is_negative)) {
        return false;
    }
    (0..dim).all(|j| {
        rows.iter().any(|r| r[j].is_positive() && r.iter().enumerate().all(|(k, c)| k == j || c.is_zero()))
    })
}

/// The ambient space Q^n together with a pointed, nontrivial cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedSpace {
    cone: PolyhedralCone,
}

impl OrderedSpace {
    /// Rejects cones that fail C3 or for which no nonzero member is found (C1).
    pub fn new(cone: PolyhedralCone) -> Result<Self> {
        if let Some(line) = cone.lineality_direction() {
            return Err(Error::NotPointed(line.to_string()));
        }
        if find_nonzero_member(&cone).is_none() {
            return Err(Error::InvalidCone("no nonzero member found; the cone may be {0}".into()));
        }
        Ok(OrderedSpace { cone })
    }

    pub fn orthant(dim: usize) -> Self {
        Self::new(PolyhedralCone::orthant(dim)).expect("orthant is pointed")
    }

    pub fn dimension(&self) -> usize {
        self.cone.dim
    }

    pub fn cone(&self) -> &PolyhedralCone {
        &self.cone
    }

    fn check(&self, s: &Vector, r: &Vector) -> Result<()> {
        s.check_dim(self.cone.dim)?;
        r.check_dim(self.cone.dim)
    }

    /// `s ⪯ r`.
    pub fn leq(&self, s: &Vector, r: &Vector) -> Result<bool> {
        self.check(s, r)?;
        Ok(self.leq_unchecked(s, r))
    }

    /// `s ≺ r`.
    pub fn lt(&self, s: &Vector, r: &Vector) -> Result<bool> {
        self.check(s, r)?;
        Ok(self.lt_unchecked(s, r))
    }

    /// `s ≪ r`.
    pub fn ll(&self, s: &Vector, r: &Vector) -> Result<bool> {
        self.check(s, r)?;
        self.cone.interior_contains(&r.sub(s))
    }

    pub(crate) fn leq_unchecked(&self, s: &Vector, r: &Vector) -> bool {
        self.cone.contains_diff(r, s)
    }

    pub(crate) fn lt_unchecked(&self, s: &Vector, r: &Vector) -> bool {
        s != r && self.cone.contains_diff(r, s)
    }

    /// Membership of `x` in the cone (`0 ⪯ x`).
    pub fn is_nonnegative(&self, x: &Vector) -> Result<bool> {
        self.cone.contains(x)
    }
}

fn find_nonzero_member(cone: &PolyhedralCone) -> Option<Vector> {
    if let Some(x) = &cone.interior {
        return Some(x.clone());
    }
    cone.candidate_directions().into_iter().find(|x| !x.is_zero() && cone.contains_unchecked(x))
}

/// How C2 is sampled by [`check_cone_axioms`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeSampling {
    pub seed: u64,
    /// Number of pseudo-random `(x, y, a, b)` draws.
    pub count: usize,
    /// Extra caller-supplied draws; entries whose `x` or `y` lies outside the
    /// cone are skipped.
    #[serde(default)]
    pub explicit: Vec<(Vector, Vector, Rational, Rational)>,
}

impl Default for ConeSampling {
    fn default() -> Self {
        ConeSampling { seed: 0, count: 100, explicit: Vec::new() }
    }
}

impl ConeSampling {
    pub fn seeded(seed: u64, count: usize) -> Self {
        ConeSampling { seed, count, explicit: Vec::new() }
    }
}

/// Checks C1 (nontriviality), C2 (sampled) and C3 (exact rank test).
///
/// Closedness is automatic for a finite intersection of closed halfspaces and
/// is not reported separately.
pub fn check_cone_axioms(cone: &PolyhedralCone, sampling: &ConeSampling) -> AxiomReport {
    let candidates = cone.candidate_directions();
    let mut members: Vec<Vector> =
        candidates.iter().filter(|x| !x.is_zero() && cone.contains_unchecked(x)).cloned().collect();

    let c1 = match members.first() {
        Some(_) => AxiomCheck { axiom: Axiom::C1, status: AxiomStatus::Pass, checks: candidates.len() as u64 },
        None => AxiomCheck {
            axiom: Axiom::C1,
            status: AxiomStatus::Fail(Counterexample::Vectors {
                vectors: Vec::new(),
                scalars: Vec::new(),
                note: "no nonzero member among the searched directions".into(),
            }),
            checks: candidates.len() as u64,
        },
    };

    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let dim = cone.dim;
    let mut attempts = 0;
    let target = members.len() + sampling.count;
    while members.len() < target && attempts < 20 * sampling.count.max(1) {
        attempts += 1;
        let x: Vector = (0..dim).map(|_| Rational::from(rng.gen_range(-5i64..=5))).collect();
        if cone.contains_unchecked(&x) {
            members.push(x);
        }
    }
    members.push(Vector::zeros(dim));

    let mut draws = Vec::with_capacity(sampling.count + sampling.explicit.len());
    for _ in 0..sampling.count {
        let x = members[rng.gen_range(0..members.len())].clone();
        let y = members[rng.gen_range(0..members.len())].clone();
        let a = Rational::new(rng.gen_range(0..=20), rng.gen_range(1..=6));
        let b = Rational::new(rng.gen_range(0..=20), rng.gen_range(1..=6));
        draws.push((x, y, a, b));
    }
    for (x, y, a, b) in &sampling.explicit {
        let valid = x.dim() == dim
            && y.dim() == dim
            && !a.is_negative()
            && !b.is_negative()
            && cone.contains_unchecked(x)
            && cone.contains_unchecked(y);
        if valid {
            draws.push((x.clone(), y.clone(), a.clone(), b.clone()));
        }
    }
    let mut c2 = AxiomCheck { axiom: Axiom::C2, status: AxiomStatus::Pass, checks: 0 };
    for (x, y, a, b) in draws {
        c2.checks += 1;
        let combo = x.scale(&a).add(&y.scale(&b));
        if !cone.contains_unchecked(&combo) {
            c2.status = AxiomStatus::Fail(Counterexample::Vectors {
                vectors: vec![x, y, combo],
                scalars: vec![a, b],
                note: "a·x + b·y left the cone".into(),
            });
            break;
        }
    }

    let c3 = match cone.lineality_direction() {
        None => AxiomCheck { axiom: Axiom::C3, status: AxiomStatus::Pass, checks: 1 },
        Some(x) => {
            let neg = x.neg();
            AxiomCheck {
                axiom: Axiom::C3,
                status: AxiomStatus::Fail(Counterexample::Vectors {
                    vectors: vec![x, neg],
                    scalars: Vec::new(),
                    note: "x and -x both lie in the cone".into(),
                }),
                checks: 1,
            }
        }
    };

    AxiomReport { checks: vec![c1, c2, c3] }
}
