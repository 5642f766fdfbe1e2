//! Fixtures shared by the benchmark targets.

use qcm_core::{grid, rat, PointId, QcmInstance, Rational};

/// The α = 1 metric over `[-3, 3]` in steps of `1/4` (25 points).
pub fn alpha_grid_instance() -> QcmInstance {
    let points: Vec<(PointId, Rational)> = grid(&rat(-3, 1), &rat(3, 1), &rat(1, 4));
    QcmInstance::build_example4(&points, &Rational::ONE).expect("valid grid")
}
