use proptest::prelude::*;
use tdabm_core::{
    aggregate, build_cover, build_graph, color_graph, euclidean, points_to_balls, spring_layout,
    Aggregate, BallId, CoverConfig, Edge, LandmarkStrategy, MapperGraph, PointCloud, Vertex,
};

fn cloud(k: usize, flat: &[f64]) -> PointCloud {
    let names = (1..=k).map(|i| format!("X{i}")).collect();
    let n = flat.len() / k;
    PointCloud::new(names, flat[..n * k].to_vec()).unwrap()
}

fn instance() -> impl Strategy<Value = (PointCloud, f64)> {
    (1usize..=4, prop::collection::vec(0.0f64..1.0, 4..240), 0.05f64..0.9)
        .prop_map(|(k, flat, eps)| (cloud(k, &flat), eps))
        .prop_filter("need a point", |(pc, _)| !pc.is_empty())
}

fn strategy() -> impl Strategy<Value = (LandmarkStrategy, u64)> {
    prop_oneof![
        Just((LandmarkStrategy::LowestIndex, 0)),
        any::<u64>().prop_map(|s| (LandmarkStrategy::Random, s)),
    ]
}

fn graph_from(n: usize, pairs: &[(usize, usize)]) -> MapperGraph {
    let vertices = (1..=n)
        .map(|i| Vertex {
            id: BallId(i),
            cardinality: 1,
            color: None,
        })
        .collect();
    let mut edges: Vec<Edge> = pairs
        .iter()
        .filter(|(a, b)| a != b)
        .map(|&(a, b)| Edge {
            from: BallId(a.min(b)),
            to: BallId(a.max(b)),
            strength: 1,
        })
        .collect();
    edges.sort_by_key(|e| (e.from, e.to));
    edges.dedup_by_key(|e| (e.from, e.to));
    MapperGraph::from_parts(vertices, edges, (0..n).collect()).unwrap()
}

proptest! {
    #[test]
    fn cover_is_deterministic((pc, eps) in instance(), (s, seed) in strategy()) {
        let cfg = CoverConfig::new(eps).unwrap().with_strategy(s, seed);
        prop_assert_eq!(build_cover(&pc, &cfg).unwrap(), build_cover(&pc, &cfg).unwrap());
    }

    #[test]
    fn permuted_input_still_gives_a_valid_cover((pc, eps) in instance(), shift in 0usize..1000) {
        let n = pc.len();
        let order: Vec<usize> = (0..n).map(|i| (i + shift) % n).rev().collect();
        let shuffled = pc.permuted(&order).unwrap();
        let cfg = CoverConfig::new(eps).unwrap();
        for cloud in [&pc, &shuffled] {
            let cover = build_cover(cloud, &cfg).unwrap();
            prop_assert!(cover.check_geometry(cloud).is_ok());
            let covered: usize = cover.coverage_map().iter().filter(|b| !b.is_empty()).count();
            prop_assert_eq!(covered, n);
        }
    }

    #[test]
    fn landmarks_are_packed_and_cover_everything((pc, eps) in instance(), (s, seed) in strategy()) {
        let cfg = CoverConfig::new(eps).unwrap().with_strategy(s, seed);
        let cover = build_cover(&pc, &cfg).unwrap();
        let landmarks: Vec<usize> = cover.landmarks().collect();
        for i in 0..pc.len() {
            prop_assert!(landmarks.iter().any(|&l| euclidean(pc.row(i), pc.row(l)) <= eps));
        }
        for (i, &a) in landmarks.iter().enumerate() {
            for &b in &landmarks[i + 1..] {
                prop_assert!(euclidean(pc.row(a), pc.row(b)) > eps);
            }
        }
    }

    #[test]
    fn external_group_by_matches_color_graph(
        (pc, eps) in instance(),
        agg in prop_oneof![
            Just(Aggregate::Mean), Just(Aggregate::Sd), Just(Aggregate::Min),
            Just(Aggregate::Max), Just(Aggregate::Median), Just(Aggregate::Count),
        ],
        seed in any::<u64>(),
    ) {
        let cover = build_cover(&pc, &CoverConfig::new(eps).unwrap()).unwrap();
        let g = build_graph(&cover);
        let y: Vec<f64> = (0..pc.len()).map(|i| ((i as u64 ^ seed) % 997) as f64 / 7.0).collect();
        let mut groups = vec![Vec::new(); cover.len()];
        for m in points_to_balls(&cover) {
            groups[m.ball.index()].push(y[m.point]);
        }
        let external: Vec<f64> = groups.iter().map(|v| aggregate(agg, v)).collect();
        prop_assert_eq!(
            g.set_coloring(&external).unwrap(),
            color_graph(&g, &cover, &y, agg).unwrap()
        );
    }

    #[test]
    fn points_to_balls_regroups_to_members((pc, eps) in instance(), (s, seed) in strategy()) {
        let cfg = CoverConfig::new(eps).unwrap().with_strategy(s, seed);
        let cover = build_cover(&pc, &cfg).unwrap();
        let mut members = vec![Vec::new(); cover.len()];
        for m in points_to_balls(&cover) {
            members[m.ball.index()].push(m.point);
        }
        for (b, m) in cover.balls().iter().zip(&members) {
            prop_assert_eq!(&b.members, m);
        }
    }

    #[test]
    fn layout_is_reproducible(
        n in 1usize..15,
        pairs in prop::collection::vec((1usize..15, 1usize..15), 0..30),
        seed in any::<u64>(),
    ) {
        let pairs: Vec<_> = pairs.into_iter().filter(|&(a, b)| a <= n && b <= n).collect();
        let g = graph_from(n, &pairs);
        let a = spring_layout(&g, seed, 200).unwrap();
        prop_assert_eq!(&a, &spring_layout(&g, seed, 200).unwrap());
        for p in &a.positions {
            prop_assert!(p[0].abs() <= 0.5 + 1e-12 && p[1].abs() <= 0.5 + 1e-12);
        }
    }
}

/// Over many random graphs, adjacent vertices end up closer than
/// non-adjacent ones on average.
#[test]
fn layout_pulls_neighbours_together() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let (mut wins, trials) = (0, 60);
    for t in 0..trials {
        let n = rng.gen_range(6..20);
        let pairs: Vec<(usize, usize)> = (0..n + rng.gen_range(0..n))
            .map(|_| (rng.gen_range(1..=n), rng.gen_range(1..=n)))
            .collect();
        let g = graph_from(n, &pairs);
        let pos = spring_layout(&g, t, 500).unwrap().positions;
        let (mut near, mut far) = (Vec::new(), Vec::new());
        for a in 1..=n {
            for b in a + 1..=n {
                let d = euclidean(&pos[a - 1], &pos[b - 1]);
                if g.edge(BallId(a), BallId(b)).is_some() {
                    near.push(d);
                } else {
                    far.push(d);
                }
            }
        }
        if near.is_empty() || far.is_empty() {
            wins += 1;
            continue;
        }
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        if mean(&near) < mean(&far) {
            wins += 1;
        }
    }
    assert!(wins * 10 >= trials * 9, "only {wins}/{trials} layouts kept neighbours closer");
}
