//! Exact Gaussian elimination over the rationals.

use crate::rational::Rational;
use crate::vector::Vector;

/// Reduced row echelon form of a dense rational matrix.
#[derive(Debug, Clone)]
pub struct Echelon {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    cols: usize,
}

impl Echelon {
    #[allow(clippy::needless_range_loop)]
    pub fn new(matrix: &[Vector], cols: usize) -> Self {
        let mut rows: Vec<Vec<Rational>> = matrix.iter().map(|r| r.coords().to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = &Rational::ONE / &rows[r][c];
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..rows.len() {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let factor = rows[i][c].clone();
                for j in c..cols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Echelon { rows, pivots, cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A nonzero vector `x` with `row · x = 0` for every row, if one exists.
    pub fn kernel_vector(&self) -> Option<Vector> {
        let free = (0..self.cols).find(|c| !self.pivots.contains(c))?;
        let mut x = vec![Rational::ZERO; self.cols];
        x[free] = Rational::ONE;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            x[p] = -&row[free];
        }
        Some(Vector::new(x))
    }
}

pub fn rank(vectors: &[Vector], dim: usize) -> usize {
    Echelon::new(vectors, dim).rank()
}

/// Indices of a maximal linearly independent subfamily, chosen greedily in
/// input order.
pub fn independent_subset(vectors: &[Vector], dim: usize) -> Vec<usize> {
    let mut kept: Vec<Vector> = Vec::new();
    let mut picked = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if kept.len() == dim {
            break;
        }
        kept.push(v.clone());
        if rank(&kept, dim) == kept.len() {
            picked.push(i);
        } else {
            kept.pop();
        }
    }
    picked
}
