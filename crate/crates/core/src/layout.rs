//! Seeded spring layout and vertex sizing.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::MapperGraph;

pub const DEFAULT_ITERATIONS: usize = 500;
pub const DEFAULT_LAYOUT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutResult {
    /// Per-vertex `(x, y)`, ball order, centred on the origin and scaled so
    /// the longer side of the bounding box is 1.
    pub positions: Vec<[f64; 2]>,
    pub seed: u64,
}

/// Fruchterman–Reingold iteration with linear cooling.
///
/// Initial positions come from a ChaCha8 stream seeded with `seed`; all
/// force accumulation is sequential so the output is bitwise reproducible.
pub fn spring_layout(g: &MapperGraph, seed: u64, iterations: usize) -> Result<LayoutResult> {
    let n = g.len();
    if n == 0 {
        return Err(Error::InvalidParameter("cannot lay out an empty graph".into()));
    }
    if iterations == 0 {
        return Err(Error::InvalidParameter("iterations must be positive".into()));
    }
    if n == 1 {
        return Ok(LayoutResult {
            positions: vec![[0.0, 0.0]],
            seed,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos: Vec<[f64; 2]> = (0..n)
        .map(|_| [rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5])
        .collect();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (e.from.index(), e.to.index()))
        .collect();

    // unit square, so k = sqrt(area / n)
    let k = libm::sqrt(1.0 / n as f64);
    let k2 = k * k;
    let t0 = 0.1;
    let mut disp = vec![[0.0f64; 2]; n];

    for it in 0..iterations {
        let temp = t0 * (1.0 - it as f64 / iterations as f64);
        disp.iter_mut().for_each(|d| *d = [0.0, 0.0]);

        for i in 0..n {
            for j in i + 1..n {
                let mut dx = pos[i][0] - pos[j][0];
                let mut dy = pos[i][1] - pos[j][1];
                let mut d2 = dx * dx + dy * dy;
                if d2 < 1e-18 {
                    // coincident vertices: separate along a fixed direction
                    dx = 1e-6 * ((i + 1) as f64);
                    dy = 1e-6 * ((j + 1) as f64);
                    d2 = dx * dx + dy * dy;
                }
                // (k²/d) along the unit vector = k² · delta / d²
                let f = k2 / d2;
                disp[i][0] += dx * f;
                disp[i][1] += dy * f;
                disp[j][0] -= dx * f;
                disp[j][1] -= dy * f;
            }
        }

        for &(a, b) in &edges {
            let dx = pos[a][0] - pos[b][0];
            let dy = pos[a][1] - pos[b][1];
            let d = libm::sqrt(dx * dx + dy * dy);
            // (d²/k) along the unit vector = d · delta / k
            let f = d / k;
            disp[a][0] -= dx * f;
            disp[a][1] -= dy * f;
            disp[b][0] += dx * f;
            disp[b][1] += dy * f;
        }

        for (p, d) in pos.iter_mut().zip(&disp) {
            let len = libm::sqrt(d[0] * d[0] + d[1] * d[1]);
            if len > 0.0 {
                let step = len.min(temp) / len;
                p[0] += d[0] * step;
                p[1] += d[1] * step;
            }
        }
    }

    Ok(LayoutResult {
        positions: fit_unit_box(pos),
        seed,
    })
}

fn fit_unit_box(mut pos: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in &pos {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let centre = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
    for p in &mut pos {
        for a in 0..2 {
            p[a] = if span > 0.0 {
                (p[a] - centre[a]) / span
            } else {
                0.0
            };
        }
    }
    pos
}

/// Display size range for vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeScale {
    pub min_size: f64,
    pub max_size: f64,
}

impl Default for SizeScale {
    fn default() -> Self {
        Self {
            min_size: 7.0,
            max_size: 20.0,
        }
    }
}

impl SizeScale {
    pub fn new(min_size: f64, max_size: f64) -> Result<Self> {
        if !(min_size.is_finite() && max_size.is_finite() && min_size > 0.0 && min_size <= max_size)
        {
            return Err(Error::InvalidParameter(alloc::format!(
                "size range must satisfy 0 < min <= max, got [{min_size}, {max_size}]"
            )));
        }
        Ok(Self { min_size, max_size })
    }
}

/// Affine map from cardinality to display size: the smallest count gets
/// `min_size`, the largest `max_size`. When every count is equal all
/// vertices get the midpoint of the range.
pub fn size_scale(cardinalities: &[usize], s: &SizeScale) -> Vec<f64> {
    let (Some(&lo), Some(&hi)) = (cardinalities.iter().min(), cardinalities.iter().max()) else {
        return Vec::new();
    };
    if lo == hi {
        return vec![(s.min_size + s.max_size) / 2.0; cardinalities.len()];
    }
    let span = (hi - lo) as f64;
    let range = s.max_size - s.min_size;
    cardinalities
        .iter()
        .map(|&c| {
            if c == hi {
                s.max_size
            } else {
                (s.min_size + (c - lo) as f64 / span * range).min(s.max_size)
            }
        })
        .collect()
}
