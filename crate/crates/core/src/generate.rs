//! Seeded random instances for property tests, the acceptance suite and the
//! benchmarks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::approx::{Direction, Query};
use crate::cone::OrderedSpace;
use crate::qcm::{PointId, QcmInstance};
use crate::rational::Rational;
use crate::vector::Vector;

/// A random explicit-table quasi-cone metric over the orthant of Q^dim with
/// between 2 and `max_points` points.
///
/// Off-diagonal entries are drawn from a small palette of nonnegative integer
/// vectors (so ties and comparable values are common), then closed under
/// componentwise shortest paths so the triangle inequality holds. Draws whose
/// closure collapses an off-diagonal entry to zero are discarded.
#[allow(clippy::needless_range_loop)]
pub fn random_metric_instance<R: Rng + ?Sized>(rng: &mut R, max_points: usize, dim: usize) -> QcmInstance {
    assert!(max_points >= 2 && dim >= 1);
    loop {
        let n = rng.gen_range(2..=max_points);
        let palette_len = rng.gen_range(2..=5);
        let palette: Vec<Vec<i64>> = (0..palette_len)
            .map(|_| loop {
                let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=3)).collect();
                if v.iter().any(|&c| c > 0) {
                    break v;
                }
            })
            .collect();
        let mut d = vec![vec![vec![0i64; dim]; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if i != j {
                    *cell = palette[rng.gen_range(0..palette_len)].clone();
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for c in 0..dim {
                        let via = d[i][k][c] + d[k][j][c];
                        if via < d[i][j][c] {
                            d[i][j][c] = via;
                        }
                    }
                }
            }
        }
        let collapsed = (0..n).any(|i| (0..n).any(|j| i != j && d[i][j].iter().all(|&c| c == 0)));
        if collapsed {
            continue;
        }
        let labels = (0..n).map(|i| PointId::new(format!("p{i}"))).collect();
        return QcmInstance::from_fn(OrderedSpace::orthant(dim), labels, |i, j| Vector::from_ints(&d[i][j]))
            .expect("generated table is complete");
    }
}

/// A random query point and a random nonempty candidate set of at most
/// `max_candidates` points.
pub fn random_query<R: Rng + ?Sized>(rng: &mut R, instance: &QcmInstance, max_candidates: usize, direction: Direction) -> Query {
    let points = instance.points();
    let q = points.choose(rng).expect("nonempty instance").clone();
    let k = rng.gen_range(1..=max_candidates.min(points.len()).max(1));
    let candidates: BTreeSet<PointId> = points.choose_multiple(rng, k).cloned().collect();
    Query { q, candidates, direction }
}

/// `n` labeled vectors in Q^dim with coordinates `a/b`, `|a| ≤ spread`,
/// `1 ≤ b ≤ 4`.
pub fn random_labeled_vectors<R: Rng + ?Sized>(rng: &mut R, n: usize, dim: usize, spread: i64) -> Vec<(PointId, Vector)> {
    (0..n)
        .map(|i| {
            let v: Vector = (0..dim).map(|_| Rational::new(rng.gen_range(-spread..=spread), rng.gen_range(1..=4))).collect();
            (PointId::new(format!("v{i}")), v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_tables_are_quasi_cone_metrics() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let inst = random_metric_instance(&mut rng, 8, 3);
            assert!(inst.len() >= 2 && inst.len() <= 8);
            assert!(inst.verify_axioms().all_pass());
        }
    }

    #[test]
    fn queries_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let inst = random_metric_instance(&mut rng, 8, 3);
        for _ in 0..20 {
            let q = random_query(&mut rng, &inst, 6, Direction::Forward);
            assert!(!q.candidates.is_empty() && q.candidates.len() <= 6);
            assert!(inst.contains(&q.q));
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = random_metric_instance(&mut ChaCha8Rng::seed_from_u64(9), 8, 3);
        let b = random_metric_instance(&mut ChaCha8Rng::seed_from_u64(9), 8, 3);
        assert!(a.same_table(&b));
    }
}
