//! Greedy ε-ball cover.
//!
//! Landmarks are drawn one at a time from the points not yet covered; each
//! landmark's ball is every point within distance ε of it, boundary
//! included. Because a landmark is always uncovered when chosen, landmarks are
//! pairwise more than ε apart.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cloud::{euclidean, PointCloud};
use crate::error::{Error, Result};
use crate::grid::GridIndex;

/// 1-based ball number in creation order. Carries no meaning beyond labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BallId(pub usize);

impl BallId {
    /// 0-based position in `Cover::balls` / `MapperGraph::vertices`.
    pub fn index(self) -> usize {
        self.0 - 1
    }

    pub fn from_index(index: usize) -> Self {
        BallId(index + 1)
    }
}

impl fmt::Display for BallId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LandmarkStrategy {
    /// Always take the uncovered point with the smallest row index.
    #[default]
    LowestIndex,
    /// Draw uniformly from the uncovered set with a seeded ChaCha8 stream.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    #[default]
    Euclidean,
}

/// How ball members are found. Both give identical member sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MembershipIndex {
    #[default]
    BruteForce,
    /// Uniform grid with cell side ε; used for K ≤ 3, brute force otherwise.
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverConfig {
    pub epsilon: f64,
    pub strategy: LandmarkStrategy,
    /// Only consulted for [`LandmarkStrategy::Random`].
    pub seed: u64,
    pub metric: Metric,
}

impl CoverConfig {
    pub fn new(epsilon: f64) -> Result<Self> {
        let cfg = Self {
            epsilon,
            strategy: LandmarkStrategy::LowestIndex,
            seed: 0,
            metric: Metric::Euclidean,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_strategy(mut self, strategy: LandmarkStrategy, seed: u64) -> Self {
        self.strategy = strategy;
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.epsilon.is_finite() && self.epsilon > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidEpsilon(self.epsilon))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub id: BallId,
    /// 0-based row of the landmark.
    pub landmark: usize,
    /// 0-based rows, ascending. Always contains `landmark`.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cover {
    balls: Vec<Ball>,
    config: CoverConfig,
    n_points: usize,
}

/// Rows within `epsilon` of `landmark` (inclusive), ascending.
pub fn ball_membership(pc: &PointCloud, landmark: usize, epsilon: f64) -> Result<Vec<usize>> {
    if landmark >= pc.len() {
        return Err(Error::IndexOutOfRange {
            index: landmark,
            len: pc.len(),
        });
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    Ok(scan(pc, landmark, epsilon))
}

fn scan(pc: &PointCloud, landmark: usize, epsilon: f64) -> Vec<usize> {
    let centre = pc.row(landmark);
    pc.rows()
        .enumerate()
        .filter(|(_, p)| euclidean(p, centre) <= epsilon)
        .map(|(i, _)| i)
        .collect()
}

pub fn build_cover(pc: &PointCloud, cfg: &CoverConfig) -> Result<Cover> {
    build_cover_with(pc, cfg, MembershipIndex::BruteForce)
}

pub fn build_cover_with(
    pc: &PointCloud,
    cfg: &CoverConfig,
    index: MembershipIndex,
) -> Result<Cover> {
    cfg.validate()?;
    let n = pc.len();
    let grid = match index {
        MembershipIndex::BruteForce => None,
        MembershipIndex::Grid => GridIndex::build(pc, cfg.epsilon),
    };
    let members_of = |landmark: usize| match &grid {
        Some(g) => g.query(pc, landmark, cfg.epsilon),
        None => scan(pc, landmark, cfg.epsilon),
    };

    let mut covered = vec![false; n];
    let mut balls = Vec::new();
    let mut push_ball = |landmark: usize, covered: &mut [bool]| {
        let members = members_of(landmark);
        for &m in &members {
            covered[m] = true;
        }
        balls.push(Ball {
            id: BallId::from_index(balls.len()),
            landmark,
            members,
        });
    };

    match cfg.strategy {
        LandmarkStrategy::LowestIndex => {
            let mut next = 0;
            while next < n {
                if !covered[next] {
                    push_ball(next, &mut covered);
                }
                next += 1;
            }
        }
        LandmarkStrategy::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut uncovered: Vec<usize> = (0..n).collect();
            while !uncovered.is_empty() {
                let landmark = uncovered[rng.gen_range(0..uncovered.len())];
                push_ball(landmark, &mut covered);
                uncovered.retain(|&i| !covered[i]);
            }
        }
    }

    let cover = Cover {
        balls,
        config: *cfg,
        n_points: n,
    };
    debug_assert!(cover.check_structure().is_ok());
    Ok(cover)
}

impl Cover {
    /// Reassembles a cover from stored parts, checking every invariant that
    /// does not need the coordinates.
    pub fn from_parts(balls: Vec<Ball>, config: CoverConfig, n_points: usize) -> Result<Self> {
        config.validate()?;
        let cover = Self {
            balls,
            config,
            n_points,
        };
        cover.check_structure()?;
        Ok(cover)
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub fn ball(&self, id: BallId) -> Option<&Ball> {
        id.0.checked_sub(1).and_then(|i| self.balls.get(i))
    }

    pub fn config(&self) -> &CoverConfig {
        &self.config
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn landmarks(&self) -> impl Iterator<Item = usize> + '_ {
        self.balls.iter().map(|b| b.landmark)
    }

    /// For each row, the ids of the balls containing it, ascending.
    pub fn coverage_map(&self) -> Vec<Vec<BallId>> {
        let mut map = vec![Vec::new(); self.n_points];
        for ball in &self.balls {
            for &m in &ball.members {
                map[m].push(ball.id);
            }
        }
        map
    }

    fn check_structure(&self) -> Result<()> {
        let bad = |msg: alloc::string::String| Err(Error::InconsistentCover(msg));
        if self.n_points == 0 {
            return bad("cover of zero points".into());
        }
        let mut seen = vec![false; self.n_points];
        for (i, ball) in self.balls.iter().enumerate() {
            if ball.id != BallId::from_index(i) {
                return bad(format!("ball at position {i} has id {}", ball.id));
            }
            if ball.members.is_empty() {
                return bad(format!("ball {} is empty", ball.id));
            }
            if ball.members.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("ball {} members not strictly ascending", ball.id));
            }
            if let Some(&last) = ball.members.last() {
                if last >= self.n_points {
                    return bad(format!("ball {} contains row {last} >= {}", ball.id, self.n_points));
                }
            }
            if ball.members.binary_search(&ball.landmark).is_err() {
                return bad(format!("ball {} does not contain its landmark", ball.id));
            }
            if seen[ball.landmark] {
                return bad(format!(
                    "landmark of ball {} was already covered when chosen",
                    ball.id
                ));
            }
            for &m in &ball.members {
                seen[m] = true;
            }
        }
        if let Some(row) = seen.iter().position(|s| !s) {
            return bad(format!("row {row} is not covered"));
        }
        Ok(())
    }

    /// Checks the geometric invariants against the cloud: every member within
    /// ε of its landmark, every in-range point a member, landmarks pairwise
    /// more than ε apart.
    pub fn check_geometry(&self, pc: &PointCloud) -> Result<()> {
        if pc.len() != self.n_points {
            return Err(Error::LengthMismatch {
                expected: self.n_points,
                actual: pc.len(),
            });
        }
        let eps = self.config.epsilon;
        for ball in &self.balls {
            let expected = scan(pc, ball.landmark, eps);
            if expected != ball.members {
                return Err(Error::InconsistentCover(format!(
                    "ball {} members differ from the points within {eps} of row {}",
                    ball.id, ball.landmark
                )));
            }
        }
        for (i, a) in self.balls.iter().enumerate() {
            for b in &self.balls[i + 1..] {
                if euclidean(pc.row(a.landmark), pc.row(b.landmark)) <= eps {
                    return Err(Error::InconsistentCover(format!(
                        "landmarks of balls {} and {} are within epsilon",
                        a.id, b.id
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};

    fn cloud(points: &[&[f64]]) -> PointCloud {
        let k = points[0].len();
        let names: Vec<String> = (0..k).map(|i| format!("X{}", i + 1)).collect();
        PointCloud::from_rows(names, &points.iter().map(|p| p.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn boundary_is_inclusive() {
        let pc = cloud(&[&[0.0, 0.0], &[0.4, 0.0], &[0.41, 0.0]]);
        assert_eq!(ball_membership(&pc, 0, 0.4).unwrap(), vec![0, 1]);
    }

    #[test]
    fn single_point_membership() {
        let pc = cloud(&[&[3.0]]);
        assert_eq!(ball_membership(&pc, 0, 1e-9).unwrap(), vec![0]);
        assert!(ball_membership(&pc, 1, 1.0).is_err());
        assert!(ball_membership(&pc, 0, 0.0).is_err());
    }

    #[test]
    fn five_points_against_distance_table() {
        let pts: [[f64; 2]; 5] = [[0.0, 0.0], [0.2, 0.1], [0.5, 0.5], [0.1, 0.25], [0.45, 0.3]];
        // Squared distances from each point, written out by hand, compared to 0.09.
        // row 0: 0, .05, .5, .0725, .2925 -> {0,1,3}
        // row 1: .05, 0, .25, .0225, .1025 -> {0,1,3}
        // row 2: .5, .25, 0, .2225, .0425 -> {2,4}
        // row 3: .0725, .0225, .2225, 0, .1525 -> {0,1,3}
        // row 4: .2925, .1025, .0425, .1525, 0 -> {2,4}
        let expected: [&[usize]; 5] = [&[0, 1, 3], &[0, 1, 3], &[2, 4], &[0, 1, 3], &[2, 4]];
        let pc = cloud(&pts.iter().map(|p| &p[..]).collect::<Vec<_>>());
        for (l, want) in expected.iter().enumerate() {
            assert_eq!(ball_membership(&pc, l, 0.3).unwrap(), *want);
        }
    }

    #[test]
    fn single_point_cover() {
        let pc = cloud(&[&[1.0, 2.0]]);
        let cover = build_cover(&pc, &CoverConfig::new(0.1).unwrap()).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(cover.balls()[0].members, vec![0]);
        assert_eq!(cover.coverage_map(), vec![vec![BallId(1)]]);
    }

    #[test]
    fn collinear_points_each_get_a_ball() {
        let pc = cloud(&[&[0.0], &[1.0], &[2.0]]);
        let cover = build_cover(&pc, &CoverConfig::new(0.5).unwrap()).unwrap();
        assert_eq!(cover.landmarks().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn huge_epsilon_gives_one_ball() {
        let pc = cloud(&[&[0.0, 0.0], &[1.0, 1.0], &[5.0, -3.0]]);
        let cover = build_cover(&pc, &CoverConfig::new(100.0).unwrap()).unwrap();
        assert_eq!(cover.len(), 1);
        assert!(cover.coverage_map().iter().all(|c| c == &vec![BallId(1)]));
    }

    #[test]
    fn overlap_in_one_midpoint() {
        // 0 and 2 are 1.0 apart; ε = 0.5 puts the midpoint in both balls.
        let pc = cloud(&[&[0.0, 0.0], &[0.5, 0.0], &[1.0, 0.0], &[0.0, 0.3]]);
        let cover = build_cover(&pc, &CoverConfig::new(0.5).unwrap()).unwrap();
        let ids: Vec<_> = cover.landmarks().collect();
        assert_eq!(ids, vec![0, 2]);
        let map = cover.coverage_map();
        assert_eq!(map[1], vec![BallId(1), BallId(2)]);
        assert_eq!(map[0], vec![BallId(1)]);
        assert_eq!(map[2], vec![BallId(2)]);
        assert_eq!(map[3], vec![BallId(1)]);
    }

    #[test]
    fn duplicates_share_balls() {
        let pc = cloud(&[&[1.0], &[1.0], &[1.0]]);
        let cover = build_cover(&pc, &CoverConfig::new(0.01).unwrap()).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(cover.balls()[0].members, vec![0, 1, 2]);
    }

    #[test]
    fn random_strategy_is_seeded() {
        let pts: Vec<Vec<f64>> = (0..60)
            .map(|i| vec![(i as f64 * 0.37) % 1.0, (i as f64 * 0.61) % 1.0])
            .collect();
        let pc = PointCloud::from_rows(vec!["a".to_string(), "b".to_string()], &pts).unwrap();
        let cfg = CoverConfig::new(0.2)
            .unwrap()
            .with_strategy(LandmarkStrategy::Random, 7);
        let a = build_cover(&pc, &cfg).unwrap();
        let b = build_cover(&pc, &cfg).unwrap();
        assert_eq!(a, b);
        a.check_geometry(&pc).unwrap();
        let other = build_cover(&pc, &cfg.with_strategy(LandmarkStrategy::Random, 8)).unwrap();
        other.check_geometry(&pc).unwrap();
    }

    #[test]
    fn from_parts_rejects_broken_covers() {
        let cfg = CoverConfig::new(1.0).unwrap();
        let ok = Ball {
            id: BallId(1),
            landmark: 0,
            members: vec![0, 1],
        };
        assert!(Cover::from_parts(vec![ok.clone()], cfg, 2).is_ok());
        assert!(Cover::from_parts(vec![ok.clone()], cfg, 3).is_err());
        let mut wrong_id = ok.clone();
        wrong_id.id = BallId(2);
        assert!(Cover::from_parts(vec![wrong_id], cfg, 2).is_err());
        let mut unsorted = ok.clone();
        unsorted.members = vec![1, 0];
        assert!(Cover::from_parts(vec![unsorted], cfg, 2).is_err());
        let second = Ball {
            id: BallId(2),
            landmark: 1,
            members: vec![1],
        };
        assert!(Cover::from_parts(vec![ok, second], cfg, 2).is_err());
        assert!(CoverConfig::new(-1.0).is_err());
        assert!(CoverConfig::new(f64::NAN).is_err());
    }
}
