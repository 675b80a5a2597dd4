//! The Ball Mapper graph: one vertex per ball, an edge wherever two balls
//! share at least one point.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cover::{BallId, Cover};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    pub id: BallId,
    /// Number of points in the ball.
    pub cardinality: usize,
    pub color: Option<f64>,
}

/// Undirected edge stored once with `from < to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: BallId,
    pub to: BallId,
    /// Size of the intersection of the two balls.
    pub strength: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapperGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    landmarks: Vec<usize>,
}

/// Count of shared elements of two ascending lists.
fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

pub fn build_graph(cover: &Cover) -> MapperGraph {
    let balls = cover.balls();
    let vertices = balls
        .iter()
        .map(|b| Vertex {
            id: b.id,
            cardinality: b.members.len(),
            color: None,
        })
        .collect();
    let mut edges = Vec::new();
    for (i, a) in balls.iter().enumerate() {
        for b in &balls[i + 1..] {
            let strength = intersection_size(&a.members, &b.members);
            if strength > 0 {
                edges.push(Edge {
                    from: a.id,
                    to: b.id,
                    strength,
                });
            }
        }
    }
    MapperGraph {
        vertices,
        edges,
        landmarks: cover.landmarks().collect(),
    }
}

impl MapperGraph {
    /// Reassembles a graph from stored parts, checking its own invariants.
    pub fn from_parts(vertices: Vec<Vertex>, edges: Vec<Edge>, landmarks: Vec<usize>) -> Result<Self> {
        let bad = |msg| Err(Error::InconsistentGraph(msg));
        if vertices.len() != landmarks.len() {
            return bad(format!(
                "{} vertices but {} landmarks",
                vertices.len(),
                landmarks.len()
            ));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.id != BallId::from_index(i) {
                return bad(format!("vertex at position {i} has id {}", v.id));
            }
            if v.cardinality == 0 {
                return bad(format!("vertex {} is empty", v.id));
            }
            if v.color.is_some_and(|c| !c.is_finite()) {
                return bad(format!("vertex {} has a non-finite color", v.id));
            }
        }
        let n = vertices.len();
        for (i, e) in edges.iter().enumerate() {
            if e.from >= e.to || e.from.0 == 0 || e.to.0 > n {
                return bad(format!("edge ({}, {}) is not a valid from<to pair", e.from, e.to));
            }
            if e.strength == 0 {
                return bad(format!("edge ({}, {}) has zero strength", e.from, e.to));
            }
            if i > 0 && (edges[i - 1].from, edges[i - 1].to) >= (e.from, e.to) {
                return bad("edges are not sorted and unique".into());
            }
        }
        Ok(Self {
            vertices,
            edges,
            landmarks,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// 0-based landmark rows indexed by ball.
    pub fn landmarks(&self) -> &[usize] {
        &self.landmarks
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge between `a` and `b` in either order.
    pub fn edge(&self, a: BallId, b: BallId) -> Option<&Edge> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by(|e| (e.from, e.to).cmp(&key))
            .ok()
            .map(|i| &self.edges[i])
    }

    /// Drops edges whose strength is below `min_strength`. 1 keeps everything.
    pub fn filter_edges(&self, min_strength: usize) -> Self {
        let mut out = self.clone();
        out.edges.retain(|e| e.strength >= min_strength);
        out
    }

    pub fn colors(&self) -> Vec<Option<f64>> {
        self.vertices.iter().map(|v| v.color).collect()
    }

    /// Replaces every vertex color; `colors[i]` belongs to ball `i + 1`.
    pub fn set_coloring(&self, colors: &[f64]) -> Result<Self> {
        if colors.len() != self.vertices.len() {
            return Err(Error::LengthMismatch {
                expected: self.vertices.len(),
                actual: colors.len(),
            });
        }
        if let Some(row) = colors.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { row, col: 0 });
        }
        let mut out = self.clone();
        for (v, &c) in out.vertices.iter_mut().zip(colors) {
            v.color = Some(c);
        }
        Ok(out)
    }

    /// `(min, max)` over the colored vertices, `None` if none are colored.
    pub fn color_range(&self) -> Option<(f64, f64)> {
        self.vertices
            .iter()
            .filter_map(|v| v.color)
            .fold(None, |acc, c| match acc {
                None => Some((c, c)),
                Some((lo, hi)) => Some((f64::min(lo, c), f64::max(hi, c))),
            })
    }

    pub fn summary(&self) -> GraphSummary {
        let cards = self.vertices.iter().map(|v| v.cardinality);
        let total: usize = cards.clone().sum();
        GraphSummary {
            balls: self.vertices.len(),
            edges: self.edges.len(),
            min_cardinality: cards.clone().min().unwrap_or(0),
            max_cardinality: cards.max().unwrap_or(0),
            mean_cardinality: if self.vertices.is_empty() {
                0.0
            } else {
                total as f64 / self.vertices.len() as f64
            },
            color_range: self.color_range(),
        }
    }

    fn check_matches(&self, cover: &Cover) -> Result<()> {
        if self.vertices.len() != cover.len() {
            return Err(Error::InconsistentGraph(format!(
                "graph has {} vertices, cover has {} balls",
                self.vertices.len(),
                cover.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphSummary {
    pub balls: usize,
    pub edges: usize,
    pub min_cardinality: usize,
    pub max_cardinality: usize,
    pub mean_cardinality: f64,
    pub color_range: Option<(f64, f64)>,
}

/// Per-ball statistic used as a coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregate {
    #[default]
    Mean,
    /// Sample standard deviation (N-1). A single value has sd 0.
    Sd,
    Min,
    Max,
    /// Mean of the two middle values for even counts.
    Median,
    Count,
}

/// Aggregates `values` in the order given. Empty input yields NaN.
pub fn aggregate(kind: Aggregate, values: &[f64]) -> f64 {
    let n = values.len();
    if n == 0 {
        return f64::NAN;
    }
    let mean = || values.iter().sum::<f64>() / n as f64;
    match kind {
        Aggregate::Mean => mean(),
        Aggregate::Sd => {
            if n == 1 {
                return 0.0;
            }
            let m = mean();
            let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
            libm::sqrt(ss / (n - 1) as f64)
        }
        Aggregate::Min => values.iter().copied().fold(f64::INFINITY, f64::min),
        Aggregate::Max => values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        Aggregate::Median => {
            let mut sorted = values.to_vec();
            sorted.sort_by(f64::total_cmp);
            if n % 2 == 1 {
                sorted[n / 2]
            } else {
                (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
            }
        }
        Aggregate::Count => n as f64,
    }
}

/// Colors each vertex with `agg` over `values` restricted to the ball's
/// members (in ascending row order). `values` is indexed by row.
pub fn color_graph(
    g: &MapperGraph,
    cover: &Cover,
    values: &[f64],
    agg: Aggregate,
) -> Result<MapperGraph> {
    g.check_matches(cover)?;
    if values.len() != cover.n_points() {
        return Err(Error::LengthMismatch {
            expected: cover.n_points(),
            actual: values.len(),
        });
    }
    let mut buf = Vec::new();
    let colors: Vec<f64> = cover
        .balls()
        .iter()
        .map(|b| {
            buf.clear();
            buf.extend(b.members.iter().map(|&m| values[m]));
            aggregate(agg, &buf)
        })
        .collect();
    g.set_coloring(&colors)
}

/// One (point, ball) membership pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Membership {
    /// 0-based row.
    pub point: usize,
    pub ball: BallId,
}

/// Long table of memberships ordered by ball, then row.
pub fn points_to_balls(cover: &Cover) -> Vec<Membership> {
    cover
        .balls()
        .iter()
        .flat_map(|b| {
            b.members.iter().map(move |&point| Membership {
                point,
                ball: b.id,
            })
        })
        .collect()
}
