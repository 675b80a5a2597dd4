//! Ball Mapper core algorithms.
//!
//! Everything in this crate is pure computation over in-memory values and
//! needs only `alloc`: point clouds and normalization, the greedy ε-ball
//! cover, the ball-intersection graph with its colorings, the seeded spring
//! layout and the color/size scales used when drawing. File formats, the CLI
//! and SVG output live in the `tdabm` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cloud;
pub mod color;
pub mod cover;
mod error;
pub mod graph;
pub mod grid;
pub mod layout;

pub use cloud::{euclidean, normalize, Normalization, OutcomeVector, PointCloud};
pub use color::{color_bin, color_of, Palette, Rgb};
pub use cover::{
    ball_membership, build_cover, build_cover_with, Ball, BallId, Cover, CoverConfig,
    LandmarkStrategy, MembershipIndex, Metric,
};
pub use error::{Error, Result};
pub use graph::{
    aggregate, build_graph, color_graph, points_to_balls, Aggregate, Edge, GraphSummary,
    MapperGraph, Membership, Vertex,
};
pub use layout::{
    size_scale, spring_layout, LayoutResult, SizeScale, DEFAULT_ITERATIONS, DEFAULT_LAYOUT_SEED,
};
