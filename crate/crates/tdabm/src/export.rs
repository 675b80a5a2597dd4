//! Machine-readable outputs.
//!
//! The JSON document is the canonical interchange format and reads back into
//! the exact same [`Cover`] and [`MapperGraph`]. Keys are sorted and every row
//! and ball index is 1-based. DOT, GraphML and the points-to-balls CSV are
//! write-only views.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use tdabm_core::{
    build_graph, Ball, BallId, Cover, CoverConfig, Edge, LandmarkStrategy, MapperGraph,
    Membership, Metric, Vertex,
};

use crate::error::{Error, Result};

pub const FORMAT_NAME: &str = "tdabm-ballmapper";
pub const FORMAT_VERSION: u32 = 1;

// Field order is alphabetical so serde emits sorted keys.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    coloring: Vec<Option<f64>>,
    config: ConfigDoc,
    coverage: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
    edges_strength: Vec<usize>,
    format: String,
    landmarks: Vec<usize>,
    n_points: usize,
    points_covered_by_landmarks: Vec<Vec<usize>>,
    version: u32,
    vertices: Vec<VertexDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    epsilon: f64,
    metric: String,
    seed: u64,
    strategy: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: usize,
    size: usize,
}

pub fn strategy_name(s: LandmarkStrategy) -> &'static str {
    match s {
        LandmarkStrategy::LowestIndex => "lowest-index",
        LandmarkStrategy::Random => "random",
    }
}

fn one_based(rows: &[usize]) -> Vec<usize> {
    rows.iter().map(|r| r + 1).collect()
}

fn zero_based(rows: &[usize], what: &str) -> Result<Vec<usize>> {
    rows.iter()
        .map(|&r| {
            r.checked_sub(1)
                .ok_or_else(|| Error::Document(format!("{what} contains index 0")))
        })
        .collect()
}

pub fn to_json(cover: &Cover, g: &MapperGraph) -> String {
    let cfg = cover.config();
    let doc = Document {
        coloring: g.colors(),
        config: ConfigDoc {
            epsilon: cfg.epsilon,
            metric: match cfg.metric {
                Metric::Euclidean => "euclidean".into(),
            },
            seed: cfg.seed,
            strategy: strategy_name(cfg.strategy).into(),
        },
        coverage: cover
            .coverage_map()
            .iter()
            .map(|ids| ids.iter().map(|b| b.0).collect())
            .collect(),
        edges: g.edges().iter().map(|e| [e.from.0, e.to.0]).collect(),
        edges_strength: g.edges().iter().map(|e| e.strength).collect(),
        format: FORMAT_NAME.into(),
        landmarks: one_based(g.landmarks()),
        n_points: cover.n_points(),
        points_covered_by_landmarks: cover.balls().iter().map(|b| one_based(&b.members)).collect(),
        version: FORMAT_VERSION,
        vertices: g
            .vertices()
            .iter()
            .map(|v| VertexDoc {
                id: v.id.0,
                size: v.cardinality,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("document is always serializable");
    s.push('\n');
    s
}

/// Parses a document written by [`to_json`] and checks that its cover and
/// graph agree with each other.
pub fn from_json(text: &str) -> Result<(Cover, MapperGraph)> {
    let doc: Document = serde_json::from_str(text)?;
    let bad = |m: String| Err(Error::Document(m));
    if doc.format != FORMAT_NAME || doc.version != FORMAT_VERSION {
        return bad(format!(
            "unsupported format {} version {}",
            doc.format, doc.version
        ));
    }
    let strategy = match doc.config.strategy.as_str() {
        "lowest-index" => LandmarkStrategy::LowestIndex,
        "random" => LandmarkStrategy::Random,
        other => return bad(format!("unknown strategy `{other}`")),
    };
    let metric = match doc.config.metric.as_str() {
        "euclidean" => Metric::Euclidean,
        other => return bad(format!("unknown metric `{other}`")),
    };
    let config = CoverConfig {
        epsilon: doc.config.epsilon,
        strategy,
        seed: doc.config.seed,
        metric,
    };

    let b = doc.points_covered_by_landmarks.len();
    if doc.landmarks.len() != b || doc.vertices.len() != b || doc.coloring.len() != b {
        return bad(format!(
            "{} balls but {} landmarks, {} vertices, {} colors",
            b,
            doc.landmarks.len(),
            doc.vertices.len(),
            doc.coloring.len()
        ));
    }
    if doc.edges.len() != doc.edges_strength.len() {
        return bad("edges and edges_strength differ in length".into());
    }
    let landmarks = zero_based(&doc.landmarks, "landmarks")?;
    let balls = doc
        .points_covered_by_landmarks
        .iter()
        .zip(&landmarks)
        .enumerate()
        .map(|(i, (members, &landmark))| {
            Ok(Ball {
                id: BallId::from_index(i),
                landmark,
                members: zero_based(members, "points_covered_by_landmarks")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cover = Cover::from_parts(balls, config, doc.n_points)?;

    let coverage: Vec<Vec<usize>> = cover
        .coverage_map()
        .iter()
        .map(|ids| ids.iter().map(|b| b.0).collect())
        .collect();
    if coverage != doc.coverage {
        return bad("coverage does not match points_covered_by_landmarks".into());
    }

    let vertices = doc
        .vertices
        .iter()
        .zip(&doc.coloring)
        .map(|(v, &color)| Vertex {
            id: BallId(v.id),
            cardinality: v.size,
            color,
        })
        .collect();
    let edges = doc
        .edges
        .iter()
        .zip(&doc.edges_strength)
        .map(|(&[from, to], &strength)| Edge {
            from: BallId(from),
            to: BallId(to),
            strength,
        })
        .collect();
    let graph = MapperGraph::from_parts(vertices, edges, landmarks)?;

    // the stored graph may have had weak edges filtered out, nothing more
    let full = build_graph(&cover);
    for (v, w) in graph.vertices().iter().zip(full.vertices()) {
        if v.cardinality != w.cardinality {
            return bad(format!("vertex {} size does not match its ball", v.id));
        }
    }
    for e in graph.edges() {
        if full.edge(e.from, e.to) != Some(e) {
            return bad(format!(
                "edge ({}, {}) does not match the ball intersection",
                e.from, e.to
            ));
        }
    }
    Ok((cover, graph))
}

fn fmt_color(out: &mut String, color: Option<f64>) {
    if let Some(c) = color {
        let _ = write!(out, "{c}");
    }
}

pub fn to_dot(g: &MapperGraph) -> String {
    let mut out = String::from("graph tdabm {\n");
    for (v, lm) in g.vertices().iter().zip(g.landmarks()) {
        let _ = write!(
            out,
            "  {} [label=\"{}\", cardinality={}, landmark={}",
            v.id,
            v.id,
            v.cardinality,
            lm + 1
        );
        if v.color.is_some() {
            out.push_str(", color_value=");
            fmt_color(&mut out, v.color);
        }
        out.push_str("];\n");
    }
    for e in g.edges() {
        let _ = writeln!(out, "  {} -- {} [strength={}];", e.from, e.to, e.strength);
    }
    out.push_str("}\n");
    out
}

pub fn to_graphml(g: &MapperGraph) -> String {
    let mut out = String::from(concat!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" ",
        "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" ",
        "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns ",
        "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n",
        "  <key id=\"cardinality\" for=\"node\" attr.name=\"cardinality\" attr.type=\"int\"/>\n",
        "  <key id=\"landmark\" for=\"node\" attr.name=\"landmark\" attr.type=\"int\"/>\n",
        "  <key id=\"color\" for=\"node\" attr.name=\"color\" attr.type=\"double\"/>\n",
        "  <key id=\"strength\" for=\"edge\" attr.name=\"strength\" attr.type=\"int\"/>\n",
        "  <graph id=\"tdabm\" edgedefault=\"undirected\">\n",
    ));
    for (v, lm) in g.vertices().iter().zip(g.landmarks()) {
        let _ = write!(
            out,
            "    <node id=\"{}\"><data key=\"cardinality\">{}</data><data key=\"landmark\">{}</data>",
            v.id,
            v.cardinality,
            lm + 1
        );
        if v.color.is_some() {
            out.push_str("<data key=\"color\">");
            fmt_color(&mut out, v.color);
            out.push_str("</data>");
        }
        out.push_str("</node>\n");
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "    <edge source=\"{}\" target=\"{}\"><data key=\"strength\">{}</data></edge>",
            e.from, e.to, e.strength
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

/// `pt,ball` long table, 1-based, ordered by ball then point.
pub fn to_csv_points_to_balls(table: &[Membership]) -> String {
    let mut out = String::with_capacity(table.len() * 8 + 8);
    out.push_str("pt,ball\n");
    for m in table {
        let _ = writeln!(out, "{},{}", m.point + 1, m.ball);
    }
    out
}

/// Reads a `pt,ball` table back into 0-based memberships.
pub fn parse_points_to_balls(text: &str) -> Result<Vec<Membership>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Document(e.to_string()))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["pt", "ball"] {
        return Err(Error::Document("expected header `pt,ball`".into()));
    }
    reader
        .records()
        .map(|r| {
            let r = r.map_err(|e| Error::Document(e.to_string()))?;
            let num = |i: usize| -> Result<usize> {
                r.get(i)
                    .and_then(|s| s.trim().parse::<usize>().ok())
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| Error::Document(format!("bad row {:?}", r)))
            };
            Ok(Membership {
                point: num(0)? - 1,
                ball: BallId(num(1)?),
            })
        })
        .collect()
}
