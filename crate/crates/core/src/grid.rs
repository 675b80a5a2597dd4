//! Uniform-grid index for ball membership queries in 1 to 3 dimensions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cloud::{euclidean, PointCloud};

const MAX_DIM: usize = 3;
// Cell coordinates beyond this cannot be represented exactly in f64 steps.
const MAX_CELL: f64 = 1e15;

type CellKey = [i64; MAX_DIM];

/// Points bucketed into cubes of side ε.
///
/// A query scans the cubes overlapping `[c - ε, c + ε]` on each axis, widened
/// by one cube to absorb rounding in the cell computation, then applies the
/// same exact distance test as the brute-force scan.
#[derive(Debug, Clone)]
pub struct GridIndex {
    dim: usize,
    side: f64,
    cells: BTreeMap<CellKey, Vec<usize>>,
}

impl GridIndex {
    /// `None` when K > 3 or the coordinates are too large relative to ε.
    pub fn build(pc: &PointCloud, side: f64) -> Option<Self> {
        let dim = pc.dim();
        if dim == 0 || dim > MAX_DIM || side.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater) {
            return None;
        }
        let mut cells: BTreeMap<CellKey, Vec<usize>> = BTreeMap::new();
        for (i, p) in pc.rows().enumerate() {
            let mut key = [0i64; MAX_DIM];
            for (k, &x) in p.iter().enumerate() {
                // queries look one radius either side
                cell_coord(x - side, side)?;
                cell_coord(x + side, side)?;
                key[k] = cell_coord(x, side)?;
            }
            cells.entry(key).or_default().push(i);
        }
        Some(Self { dim, side, cells })
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Rows within `epsilon` of `landmark`, ascending. `epsilon` must not
    /// exceed the cell side used at build time.
    pub fn query(&self, pc: &PointCloud, landmark: usize, epsilon: f64) -> Vec<usize> {
        debug_assert!(epsilon <= self.side);
        let centre = pc.row(landmark);
        let mut lo = [0i64; MAX_DIM];
        let mut hi = [0i64; MAX_DIM];
        for k in 0..self.dim {
            // build() verified these stay in range
            lo[k] = cell_coord(centre[k] - epsilon, self.side).unwrap_or(i64::MIN + 1) - 1;
            hi[k] = cell_coord(centre[k] + epsilon, self.side).unwrap_or(i64::MAX - 1) + 1;
        }
        let mut out = Vec::new();
        let mut key = lo;
        loop {
            if let Some(bucket) = self.cells.get(&key) {
                out.extend(
                    bucket
                        .iter()
                        .copied()
                        .filter(|&i| euclidean(pc.row(i), centre) <= epsilon),
                );
            }
            // odometer over the key box
            let mut k = 0;
            loop {
                if k == self.dim {
                    out.sort_unstable();
                    return out;
                }
                if key[k] < hi[k] {
                    key[k] += 1;
                    break;
                }
                key[k] = lo[k];
                k += 1;
            }
        }
    }
}

fn cell_coord(x: f64, side: f64) -> Option<i64> {
    let c = libm::floor(x / side);
    if c.is_finite() && c.abs() < MAX_CELL {
        Some(c as i64)
    } else {
        None
    }
}
