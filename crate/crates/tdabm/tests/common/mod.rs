#![allow(dead_code)]

use std::path::PathBuf;

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/uniform500_seed123.csv")
}

/// (X1, X2, Y) rows of the committed fixture, parsed without the crate.
pub fn fixture_rows() -> Vec<[f64; 3]> {
    let text = std::fs::read_to_string(fixture_path()).unwrap();
    text.lines()
        .skip(1)
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|c| c.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect()
}

/// Ball Mapper done the slow, literal way: a full distance matrix, a
/// `member` flag per point, the lowest uncovered index as the next landmark,
/// and pairwise ball comparisons for edges.
pub struct Oracle {
    /// (landmark, members) with 0-based rows.
    pub balls: Vec<(usize, Vec<usize>)>,
    /// (from, to, strength) with 1-based ball ids, from < to.
    pub edges: Vec<(usize, usize, usize)>,
    pub mean_colors: Vec<f64>,
}

#[allow(clippy::needless_range_loop)]
pub fn oracle(points: &[Vec<f64>], y: &[f64], eps: f64) -> Oracle {
    let n = points.len();
    let mut dist = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..points[i].len() {
                s += (points[i][k] - points[j][k]) * (points[i][k] - points[j][k]);
            }
            dist[i][j] = s.sqrt();
        }
    }

    let mut member = vec![0u8; n];
    let mut within: Vec<Vec<bool>> = Vec::new();
    let mut balls = Vec::new();
    while let Some(minid) = (0..n).find(|&i| member[i] == 0) {
        let inside: Vec<bool> = (0..n).map(|i| dist[i][minid] <= eps).collect();
        for i in 0..n {
            if inside[i] {
                member[i] = 1;
            }
        }
        balls.push((minid, (0..n).filter(|&i| inside[i]).collect()));
        within.push(inside);
    }

    let mut edges = Vec::new();
    for a in 0..within.len() {
        for b in a + 1..within.len() {
            let shared = (0..n).filter(|&i| within[a][i] && within[b][i]).count();
            if shared > 0 {
                edges.push((a + 1, b + 1, shared));
            }
        }
    }

    let mean_colors = within
        .iter()
        .map(|inside| {
            let mut sum = 0.0;
            let mut count = 0;
            for i in 0..n {
                if inside[i] {
                    sum += y[i];
                    count += 1;
                }
            }
            sum / count as f64
        })
        .collect();

    Oracle {
        balls,
        edges,
        mean_colors,
    }
}

/// Sample standard deviation, two-pass, N-1 denominator; 0 for one value.
pub fn sample_sd(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let ss: f64 = v.iter().map(|x| (x - mean) * (x - mean)).sum();
    (ss / (v.len() - 1) as f64).sqrt()
}
