//! Minimal fronts: the members of a finite family of vectors that have no
//! other member strictly below them in the cone order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::cone::OrderedSpace;
use crate::qcm::PointId;
use crate::vector::Vector;

fn check_dims(values: &[(PointId, Vector)], space: &OrderedSpace) {
    let n = space.dimension();
    assert!(
        values.iter().all(|(_, v)| v.dim() == n),
        "minimal front input must live in the space's dimension {n}"
    );
}

/// All-pairs minimal front: keeps `v` unless some `v'` in the family has
/// `v' ≺ v`. Every ordered pair is compared, so this is the plain `O(n²)`
/// reference for [`minimal_front_dnc`]. Works for any cone. Panics on vectors
/// of the wrong dimension.
pub fn minimal_front_naive(values: &[(PointId, Vector)], space: &OrderedSpace) -> BTreeSet<PointId> {
    check_dims(values, space);
    let mut dominated = vec![false; values.len()];
    for (_, u) in values {
        for (j, (_, v)) in values.iter().enumerate() {
            // `u ⪯ v` rejects most pairs on the first coordinate; the equality
            // test only runs on the survivors.
            if space.leq_unchecked(u, v) && u != v {
                dominated[j] = true;
            }
        }
    }
    values.iter().zip(dominated).filter(|(_, d)| !d).map(|((id, _), _)| id.clone()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontMethod {
    DivideAndConquer,
    /// The cone is not the orthant, so the all-pairs scan was used.
    NaiveFallback,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontOutcome {
    pub members: BTreeSet<PointId>,
    pub method: FrontMethod,
}

/// Divide-and-conquer minimal front for the componentwise order.
///
/// Distinct vectors are sorted lexicographically; a vector can only be
/// dominated by one that precedes it. The sorted run is split in halves, each
/// half is solved recursively and the survivors of the right half are
/// filtered against the survivors of the left half on the remaining
/// coordinates. In two dimensions this collapses to a single sweep
/// (`O(n log n)`); in three dimensions the filter is a sweep over the last two
/// coordinates (`O(n log² n)`). Higher dimensions filter pairwise.
///
/// Falls back to [`minimal_front_naive`] when the cone is not the orthant.
pub fn minimal_front_dnc(values: &[(PointId, Vector)], space: &OrderedSpace) -> FrontOutcome {
    if !space.cone().is_orthant() {
        return FrontOutcome { members: minimal_front_naive(values, space), method: FrontMethod::NaiveFallback };
    }
    check_dims(values, space);
    if values.is_empty() {
        return FrontOutcome { members: BTreeSet::new(), method: FrontMethod::DivideAndConquer };
    }

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by(|&a, &b| values[a].1.cmp(&values[b].1));
    // group[k] lists the input indices sharing the k-th distinct vector.
    let mut distinct: Vec<&Vector> = Vec::new();
    let mut group_of = vec![0usize; values.len()];
    for &i in &order {
        if distinct.last().map_or(true, |last| *last != &values[i].1) {
            distinct.push(&values[i].1);
        }
        group_of[i] = distinct.len() - 1;
    }

    let keep = match space.dimension() {
        1 => vec![0],
        2 => sweep_2d(&distinct),
        _ => minima(&distinct, 0, distinct.len()),
    };
    let mut minimal = vec![false; distinct.len()];
    for k in keep {
        minimal[k] = true;
    }
    let members = values
        .iter()
        .enumerate()
        .filter(|(i, _)| minimal[group_of[*i]])
        .map(|(_, (id, _))| id.clone())
        .collect();
    FrontOutcome { members, method: FrontMethod::DivideAndConquer }
}

/// Lexicographically sorted distinct points: minimal iff the second
/// coordinate strictly improves on everything before it.
fn sweep_2d(sorted: &[&Vector]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best = None;
    for (k, v) in sorted.iter().enumerate() {
        if best.map_or(true, |b: &crate::Rational| &v[1] < b) {
            out.push(k);
            best = Some(&v[1]);
        }
    }
    out
}

/// Indices in `lo..hi` of the minimal elements of that sorted slice.
fn minima(sorted: &[&Vector], lo: usize, hi: usize) -> Vec<usize> {
    if hi - lo == 1 {
        return vec![lo];
    }
    let mid = lo + (hi - lo) / 2;
    let mut left = minima(sorted, lo, mid);
    let right = minima(sorted, mid, hi);
    let survivors = if sorted[0].dim() == 3 {
        filter_3d(sorted, &left, &right)
    } else {
        right
            .into_iter()
            .filter(|&r| !left.iter().any(|&l| (1..sorted[r].dim()).all(|c| sorted[l][c] <= sorted[r][c])))
            .collect()
    };
    left.extend(survivors);
    left
}

/// Keeps the members of `right` that no member of `left` weakly dominates in
/// coordinates 1 and 2.
fn filter_3d(sorted: &[&Vector], left: &[usize], right: &[usize]) -> Vec<usize> {
    // Left entries sort before right entries on ties so that equality counts
    // as domination.
    let mut events: Vec<(usize, bool)> = left.iter().map(|&l| (l, true)).chain(right.iter().map(|&r| (r, false))).collect();
    events.sort_by(|&(a, a_left), &(b, b_left)| {
        sorted[a][1].cmp(&sorted[b][1]).then_with(|| match (a_left, b_left) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => Ordering::Equal,
        })
    });
    let mut min_z: Option<&crate::Rational> = None;
    let mut out = Vec::new();
    for (k, is_left) in events {
        let z = &sorted[k][2];
        if is_left {
            if min_z.map_or(true, |m| z < m) {
                min_z = Some(z);
            }
        } else if min_z.map_or(true, |m| z < m) {
            out.push(k);
        }
    }
    out
}
