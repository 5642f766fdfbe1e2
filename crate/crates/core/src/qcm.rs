//! Finite quasi-cone metric spaces: a labeled ground set with a dense table of
//! cone-valued distances `d : Q × Q → B`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::{Axiom, AxiomCheck, AxiomReport, AxiomStatus, Counterexample};
use crate::cone::OrderedSpace;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::vector::Vector;

/// Label of a ground-set point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(String);

impl PointId {
    pub fn new(label: impl Into<String>) -> Self {
        PointId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for PointId {
    fn from(s: &str) -> Self {
        PointId(s.to_string())
    }
}

impl From<String> for PointId {
    fn from(s: String) -> Self {
        PointId(s)
    }
}

/// Where the distance table came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Provenance {
    ExplicitTable,
    /// `d(r,s)` is `(0,0)`, `(1,0)` or `(0,1)` as `r = s`, `r > s` or `r < s`.
    DirectionMetric { coordinates: BTreeMap<PointId, Rational> },
    /// `d(r,s) = (r-s, α(r-s))` if `r ≥ s`, else `(α, 1)`.
    AlphaMetric { alpha: Rational, coordinates: BTreeMap<PointId, Rational> },
}

/// Closed form of the direction metric on the real line.
pub fn direction_distance(r: &Rational, s: &Rational) -> Vector {
    use std::cmp::Ordering::*;
    match r.cmp(s) {
        Equal => Vector::from_ints(&[0, 0]),
        Greater => Vector::from_ints(&[1, 0]),
        Less => Vector::from_ints(&[0, 1]),
    }
}

/// Closed form of the α-metric on the real line.
pub fn alpha_distance(r: &Rational, s: &Rational, alpha: &Rational) -> Vector {
    if r >= s {
        let gap = r - s;
        let scaled = &gap * alpha;
        Vector::new(vec![gap, scaled])
    } else {
        Vector::new(vec![alpha.clone(), Rational::ONE])
    }
}

#[derive(Debug, Clone)]
pub struct QcmInstance {
    space: OrderedSpace,
    points: Vec<PointId>,
    index: HashMap<PointId, usize>,
    /// Row-major: `table[i * n + j] = d(points[i], points[j])`.
    table: Vec<Vector>,
    provenance: Provenance,
}

fn index_labels(points: &[PointId]) -> Result<HashMap<PointId, usize>> {
    let mut index = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(p.to_string()));
        }
    }
    Ok(index)
}

fn check_distinct_coordinates(points: &[(PointId, Rational)]) -> Result<()> {
    let mut seen: BTreeMap<&Rational, &PointId> = BTreeMap::new();
    for (label, x) in points {
        if let Some(other) = seen.insert(x, label) {
            return Err(Error::DuplicateCoordinate(other.to_string(), label.to_string(), x.to_string()));
        }
    }
    Ok(())
}

impl QcmInstance {
    /// Builds an instance from an explicit list of `(from, to, d(from, to))`
    /// entries; every ordered pair must appear exactly once.
    pub fn from_table<I>(space: OrderedSpace, points: Vec<PointId>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PointId, PointId, Vector)>,
    {
        let index = index_labels(&points)?;
        let n = points.len();
        let mut slots: Vec<Option<Vector>> = vec![None; n * n];
        for (from, to, value) in entries {
            let i = *index.get(&from).ok_or_else(|| Error::UnknownPoint(from.to_string()))?;
            let j = *index.get(&to).ok_or_else(|| Error::UnknownPoint(to.to_string()))?;
            value.check_dim(space.dimension())?;
            let slot = &mut slots[i * n + j];
            if slot.is_some() {
                return Err(Error::DuplicateEntry(from.to_string(), to.to_string()));
            }
            *slot = Some(value);
        }
        let mut table = Vec::with_capacity(n * n);
        for (k, slot) in slots.into_iter().enumerate() {
            match slot {
                Some(v) => table.push(v),
                None => {
                    return Err(Error::MissingEntry(points[k / n].to_string(), points[k % n].to_string()));
                }
            }
        }
        Ok(QcmInstance { space, points, index, table, provenance: Provenance::ExplicitTable })
    }

    /// Builds an instance whose table is `f(i, j)` over point indices.
    pub fn from_fn<F>(space: OrderedSpace, points: Vec<PointId>, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Vector,
    {
        let index = index_labels(&points)?;
        let n = points.len();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                v.check_dim(space.dimension())?;
                table.push(v);
            }
        }
        Ok(QcmInstance { space, points, index, table, provenance: Provenance::ExplicitTable })
    }

    /// The direction metric over the given labeled coordinates, in Q² with
    /// the orthant cone.
    pub fn build_example3(points: &[(PointId, Rational)]) -> Result<Self> {
        check_distinct_coordinates(points)?;
        let labels: Vec<PointId> = points.iter().map(|(p, _)| p.clone()).collect();
        let mut inst = Self::from_fn(OrderedSpace::orthant(2), labels, |i, j| {
            direction_distance(&points[i].1, &points[j].1)
        })?;
        inst.provenance = Provenance::DirectionMetric { coordinates: points.iter().cloned().collect() };
        Ok(inst)
    }

    /// The α-metric over the given labeled coordinates, in Q² with the
    /// orthant cone. Requires `alpha > 0`.
    pub fn build_example4(points: &[(PointId, Rational)], alpha: &Rational) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::NonPositiveAlpha(alpha.to_string()));
        }
        check_distinct_coordinates(points)?;
        let labels: Vec<PointId> = points.iter().map(|(p, _)| p.clone()).collect();
        let mut inst = Self::from_fn(OrderedSpace::orthant(2), labels, |i, j| {
            alpha_distance(&points[i].1, &points[j].1, alpha)
        })?;
        inst.provenance = Provenance::AlphaMetric { alpha: alpha.clone(), coordinates: points.iter().cloned().collect() };
        Ok(inst)
    }

    pub fn space(&self) -> &OrderedSpace {
        &self.space
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Coordinate on the real line, for instances built from a closed form.
    pub fn coordinate(&self, p: &PointId) -> Option<&Rational> {
        match &self.provenance {
            Provenance::ExplicitTable => None,
            Provenance::DirectionMetric { coordinates } | Provenance::AlphaMetric { coordinates, .. } => {
                coordinates.get(p)
            }
        }
    }

    pub fn contains(&self, p: &PointId) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &PointId) -> Result<usize> {
        self.index.get(p).copied().ok_or_else(|| Error::UnknownPoint(p.to_string()))
    }

    pub fn distance(&self, from: &PointId, to: &PointId) -> Result<&Vector> {
        Ok(self.distance_at(self.index_of(from)?, self.index_of(to)?))
    }

    pub fn distance_at(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.points.len() + j]
    }

    /// The instance with `dᵀ(x, y) = d(y, x)`.
    pub fn transpose(&self) -> QcmInstance {
        let n = self.points.len();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.distance_at(j, i).clone());
            }
        }
        QcmInstance {
            space: self.space.clone(),
            points: self.points.clone(),
            index: self.index.clone(),
            table,
            provenance: Provenance::ExplicitTable,
        }
    }

    /// Same space, ground set (in order) and distance table.
    pub fn same_table(&self, other: &QcmInstance) -> bool {
        self.space == other.space && self.points == other.points && self.table == other.table
    }

    /// Exhaustive check of QCM1 over all ordered pairs, QCM2 in both
    /// directions over all pairs and QCM3 over all ordered triples.
    ///
    /// The outer point is split across the rayon pool; each axiom reports the
    /// first counterexample in `(r, s, t)` index order regardless of how the
    /// work was partitioned.
    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.points.len();
        let zero = Vector::zeros(self.space.dimension());

        let pairs = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut qcm1 = None;
                let mut qcm2 = None;
                for j in 0..n {
                    let d = self.distance_at(i, j);
                    if qcm1.is_none() && !self.space.leq_unchecked(&zero, d) {
                        qcm1 = Some(self.pair_counterexample(i, j, "d(r,s) is not in the cone"));
                    }
                    if qcm2.is_none() {
                        if i == j && !d.is_zero() {
                            qcm2 = Some(self.pair_counterexample(i, j, "d(r,r) is nonzero"));
                        } else if i != j && d.is_zero() {
                            qcm2 = Some(self.pair_counterexample(i, j, "d(r,s) is zero for r ≠ s"));
                        }
                    }
                }
                (qcm1, qcm2)
            })
            .collect::<Vec<_>>();

        let triples = (0..n)
            .into_par_iter()
            .map(|r| {
                for s in 0..n {
                    let d_rs = self.distance_at(r, s);
                    for t in 0..n {
                        let d_st = self.distance_at(s, t);
                        let d_rt = self.distance_at(r, t);
                        if !self.space.leq_unchecked(d_rt, &d_rs.add(d_st)) {
                            return Some(Counterexample::Points {
                                points: vec![self.points[r].clone(), self.points[s].clone(), self.points[t].clone()],
                                values: vec![d_rt.clone(), d_rs.clone(), d_st.clone()],
                                note: "d(r,t) is not below d(r,s) + d(s,t)".into(),
                            });
                        }
                    }
                }
                None
            })
            .collect::<Vec<_>>();

        let n2 = (n * n) as u64;
        let first = |items: Vec<Option<Counterexample>>| items.into_iter().flatten().next();
        let status = |c: Option<Counterexample>| match c {
            Some(c) => AxiomStatus::Fail(c),
            None => AxiomStatus::Pass,
        };
        let (qcm1, qcm2): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        AxiomReport {
            checks: vec![
                AxiomCheck { axiom: Axiom::Qcm1, status: status(first(qcm1)), checks: n2 },
                AxiomCheck { axiom: Axiom::Qcm2, status: status(first(qcm2)), checks: n2 },
                AxiomCheck { axiom: Axiom::Qcm3, status: status(first(triples)), checks: n2 * n as u64 },
            ],
        }
    }

    fn pair_counterexample(&self, i: usize, j: usize, note: &str) -> Counterexample {
        Counterexample::Points {
            points: vec![self.points[i].clone(), self.points[j].clone()],
            values: vec![self.distance_at(i, j).clone()],
            note: note.into(),
        }
    }
}

/// Labeled points of a rational grid `start, start + step, …, ≤ end`, labeled
/// by their coordinate literal.
pub fn grid(start: &Rational, end: &Rational, step: &Rational) -> Vec<(PointId, Rational)> {
    assert!(step.is_positive(), "grid step must be positive");
    let mut out = Vec::new();
    let mut x = start.clone();
    while &x <= end {
        out.push((PointId::new(x.to_string()), x.clone()));
        x = &x + step;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, vector};

    fn pts(xs: &[Rational]) -> Vec<(PointId, Rational)> {
        xs.iter().map(|x| (PointId::new(x.to_string()), x.clone())).collect()
    }

    fn p(s: &str) -> PointId {
        PointId::new(s)
    }

    #[test]
    fn direction_metric_values() {
        let inst = QcmInstance::build_example3(&pts(&[rat(1, 1), rat(2, 1)])).unwrap();
        assert_eq!(inst.distance(&p("2"), &p("1")).unwrap(), &vector![1, 0]);
        assert_eq!(inst.distance(&p("1"), &p("1")).unwrap(), &vector![0, 0]);
        assert_eq!(inst.distance(&p("1"), &p("2")).unwrap(), &vector![0, 1]);
    }

    #[test]
    fn alpha_metric_values() {
        let one = Rational::ONE;
        let inst = QcmInstance::build_example4(&pts(&[rat(1, 1), rat(3, 1)]), &one).unwrap();
        assert_eq!(inst.distance(&p("3"), &p("1")).unwrap(), &vector![2, 2]);
        assert_eq!(inst.distance(&p("1"), &p("3")).unwrap(), &vector![1, 1]);
        let half = rat(1, 2);
        for x in [rat(-7, 3), rat(0, 1), rat(5, 1)] {
            assert!(alpha_distance(&x, &x, &half).is_zero());
        }
        assert_eq!(alpha_distance(&rat(1, 1), &rat(2, 1), &half), Vector::new(vec![rat(1, 2), rat(1, 1)]));
    }

    #[test]
    fn builders_reject_bad_input() {
        let dup = vec![(p("a"), rat(1, 1)), (p("a"), rat(2, 1))];
        assert_eq!(QcmInstance::build_example3(&dup).unwrap_err(), Error::DuplicateLabel("a".into()));
        let same = vec![(p("a"), rat(1, 1)), (p("b"), rat(1, 1))];
        assert!(matches!(QcmInstance::build_example3(&same), Err(Error::DuplicateCoordinate(..))));
        assert!(matches!(
            QcmInstance::build_example4(&pts(&[rat(1, 1)]), &Rational::ZERO),
            Err(Error::NonPositiveAlpha(_))
        ));
        assert!(QcmInstance::build_example4(&pts(&[rat(1, 1)]), &rat(-1, 2)).is_err());
    }

    #[test]
    fn explicit_table_validation() {
        let space = OrderedSpace::orthant(2);
        let labels = vec![p("a"), p("b")];
        let full = vec![
            (p("a"), p("a"), vector![0, 0]),
            (p("a"), p("b"), vector![1, 0]),
            (p("b"), p("a"), vector![0, 1]),
            (p("b"), p("b"), vector![0, 0]),
        ];
        assert!(QcmInstance::from_table(space.clone(), labels.clone(), full.clone()).is_ok());
        let missing = full[..3].to_vec();
        assert_eq!(
            QcmInstance::from_table(space.clone(), labels.clone(), missing).unwrap_err(),
            Error::MissingEntry("b".into(), "b".into())
        );
        let mut twice = full.clone();
        twice.push((p("a"), p("b"), vector![2, 0]));
        assert!(matches!(QcmInstance::from_table(space.clone(), labels.clone(), twice), Err(Error::DuplicateEntry(..))));
        let mut unknown = full.clone();
        unknown[0].0 = p("z");
        assert_eq!(QcmInstance::from_table(space.clone(), labels.clone(), unknown).unwrap_err(), Error::UnknownPoint("z".into()));
        let mut wrong_dim = full;
        wrong_dim[1].2 = vector![1, 0, 0];
        assert!(matches!(QcmInstance::from_table(space, labels, wrong_dim), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn direction_metric_passes_on_21_points() {
        let g = grid(&rat(-5, 1), &rat(5, 1), &rat(1, 2));
        assert_eq!(g.len(), 21);
        let report = QcmInstance::build_example3(&g).unwrap().verify_axioms();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.get(Axiom::Qcm3).unwrap().checks, 9261);
    }

    #[test]
    fn alpha_metric_passes_on_half_grid() {
        let g = grid(&rat(-2, 1), &rat(3, 1), &rat(1, 2));
        let report = QcmInstance::build_example4(&g, &rat(1, 2)).unwrap().verify_axioms();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn zero_off_diagonal_fails_qcm2() {
        let space = OrderedSpace::orthant(2);
        let inst = QcmInstance::from_fn(space, vec![p("a"), p("b")], |_, _| vector![0, 0]).unwrap();
        let report = inst.verify_axioms();
        let qcm2 = report.get(Axiom::Qcm2).unwrap();
        match qcm2.counterexample() {
            Some(Counterexample::Points { points, .. }) => assert_eq!(points, &vec![p("a"), p("b")]),
            other => panic!("expected QCM2 failure, got {other:?}"),
        }
        assert!(report.get(Axiom::Qcm1).unwrap().passed());
    }

    #[test]
    fn negative_entry_and_triangle_failures() {
        let space = OrderedSpace::orthant(1);
        let d = [[0, 1, 5], [1, 0, 1], [-1, 1, 0]];
        let inst =
            QcmInstance::from_fn(space, vec![p("a"), p("b"), p("c")], |i, j| vector![d[i][j]]).unwrap();
        let report = inst.verify_axioms();
        let qcm1 = report.get(Axiom::Qcm1).unwrap().counterexample().unwrap().clone();
        assert_eq!(
            qcm1,
            Counterexample::Points {
                points: vec![p("c"), p("a")],
                values: vec![vector![-1]],
                note: "d(r,s) is not in the cone".into()
            }
        );
        // d(a,c) = 5 > d(a,b) + d(b,c) = 2.
        match report.get(Axiom::Qcm3).unwrap().counterexample() {
            Some(Counterexample::Points { points, .. }) => assert_eq!(points, &vec![p("a"), p("b"), p("c")]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn transpose_is_an_involution() {
        let g = grid(&rat(0, 1), &rat(2, 1), &rat(1, 2));
        let inst = QcmInstance::build_example3(&g).unwrap();
        let t = inst.transpose();
        assert_eq!(t.provenance(), &Provenance::ExplicitTable);
        assert!(t.transpose().same_table(&inst));
        assert_eq!(t.distance(&p("1"), &p("0")).unwrap(), &vector![0, 1]);
        assert_eq!(t.distance(&p("0"), &p("1")).unwrap(), &vector![1, 0]);
        assert!(t.verify_axioms().all_pass());
    }

    #[test]
    fn grid_endpoints() {
        let g = grid(&rat(0, 1), &rat(2, 1), &rat(1, 4));
        assert_eq!(g.len(), 9);
        assert_eq!(g[0].0, p("0"));
        assert_eq!(g[6].0, p("3/2"));
        assert_eq!(g[8].1, rat(2, 1));
    }
}
