//! Property tests for generators, distances and the restricted matching.

use netmatch::graph::Graph;
use netmatch::market::{
    agent_utility, classical_gs, is_stable, respects_circle, restricted_deferred_acceptance,
    restricted_deferred_acceptance_randomized, Market, SocialCircle,
};
use netmatch::netgen::{self, NetworkModel};
use netmatch::oracle::{enumerate_stable_matchings, man_optimal};
use netmatch::topology::{all_pairs_shortest, connectivity, degree_distribution, DistanceMatrix};
use netmatch::RandomSource;
use proptest::prelude::*;

fn assert_simple(g: &Graph) {
    let n = g.node_count();
    let edges = g.edges();
    assert!(
        edges.windows(2).all(|w| w[0] < w[1]),
        "edges not canonical/unique"
    );
    for &(u, v) in edges {
        assert!(u < v && v < n);
        assert!(g.neighbors(u).contains(&v));
        assert!(g.neighbors(v).contains(&u));
    }
    let degree_sum: usize = g.degrees().iter().sum();
    assert_eq!(degree_sum, 2 * g.edge_count());
}

/// Floyd–Warshall over hop weights, independent of the BFS path.
fn floyd(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for &(u, v) in g.edges() {
        d[u][v] = Some(1);
        d[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

fn model_strategy() -> impl Strategy<Value = NetworkModel> {
    prop::sample::select(NetworkModel::ALL.to_vec())
}

/// Random valid (model, n, k) with even n in 4..=max_n.
fn instance(max_n: usize) -> impl Strategy<Value = (NetworkModel, usize, usize, u64)> {
    (model_strategy(), 2..=max_n / 2, any::<u64>()).prop_flat_map(|(model, half, seed)| {
        let n = 2 * half;
        let k_max = match model {
            NetworkModel::Ncn | NetworkModel::Ws => n - 2,
            NetworkModel::Er => n - 2,
            NetworkModel::Ba => n - 1,
        };
        (
            Just(model),
            Just(n),
            (1..=k_max / 2).prop_map(|h| 2 * h),
            Just(seed),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generators_yield_simple_graphs((model, n, k, seed) in instance(40), p in 0.0f64..=1.0) {
        let g = model.generate(n, k, p, &mut RandomSource::new(seed)).unwrap();
        assert_simple(&g);
        let again = model.generate(n, k, p, &mut RandomSource::new(seed)).unwrap();
        prop_assert_eq!(g.to_edge_list(), again.to_edge_list());
    }

    #[test]
    fn ws_preserves_edge_count(half in 3usize..30, kh in 1usize..4, p in 0.0f64..=1.0, seed: u64) {
        let n = 2 * half;
        let k = 2 * kh.min((n - 2) / 2);
        let g = netgen::generate_ws(n, k, p, &mut RandomSource::new(seed)).unwrap();
        prop_assert_eq!(g.edge_count(), n * k / 2);
        let ring = netgen::generate_ws(n, k, 0.0, &mut RandomSource::new(seed)).unwrap();
        prop_assert_eq!(ring, netgen::generate_ncn(n, k).unwrap());
    }

    #[test]
    fn ba_degree_bounds(n in 3usize..80, m in 1usize..6, seed: u64) {
        prop_assume!(m < n);
        let g = netgen::generate_ba(n, m, &mut RandomSource::new(seed)).unwrap();
        prop_assert_eq!(g.edge_count(), (m + 1) * m / 2 + m * (n - m - 1));
        prop_assert!(g.degrees().iter().all(|&d| d >= m));
        let dm = all_pairs_shortest(&g);
        prop_assert!(dm.is_connected());
    }

    #[test]
    fn er_edge_count(n in 1usize..30, frac in 0.0f64..=1.0, seed: u64) {
        let m = (frac * netgen::max_edges(n) as f64) as usize;
        let g = netgen::generate_er(n, m, &mut RandomSource::new(seed)).unwrap();
        prop_assert_eq!(g.edge_count(), m);
        assert_simple(&g);
    }

    #[test]
    fn bfs_matches_floyd(n in 1usize..=12, frac in 0.0f64..=1.0, seed: u64) {
        let m = (frac * netgen::max_edges(n) as f64 * 0.6) as usize;
        let g = netgen::generate_er(n, m, &mut RandomSource::new(seed)).unwrap();
        let dm = all_pairs_shortest(&g);
        let reference = floyd(&g);
        for (i, row) in reference.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                prop_assert_eq!(dm.distance(i, j), d);
            }
        }
    }

    #[test]
    fn distance_matrix_invariants((model, n, k, seed) in instance(30)) {
        let g = model.generate(n, k, 0.3, &mut RandomSource::new(seed)).unwrap();
        let dm = all_pairs_shortest(&g);
        for i in 0..n {
            prop_assert_eq!(dm.get(i, i), 0);
            for j in 0..n {
                prop_assert_eq!(dm.get(i, j), dm.get(j, i));
                prop_assert_eq!(dm.get(i, j) == 1, g.has_edge(i, j));
                for m in 0..n {
                    if let (Some(a), Some(b), Some(c)) =
                        (dm.distance(i, m), dm.distance(i, j), dm.distance(j, m))
                    {
                        prop_assert!(a <= b + c);
                    }
                }
            }
        }
        let hist = degree_distribution(&g);
        prop_assert_eq!(hist.values().sum::<usize>(), n);
    }

    #[test]
    fn connectivity_monotone_in_dep((model, n, k, seed) in instance(40)) {
        let g = model.generate(n, k, 0.2, &mut RandomSource::new(seed)).unwrap();
        let dm = all_pairs_shortest(&g);
        let mut prev = 0.0;
        for dep in 1..=n as u32 {
            let c = connectivity(&dm, dep);
            prop_assert!((0.0..=1.0).contains(&c));
            prop_assert!(c >= prev);
            let full = dm.is_connected() && dm.diameter().is_some_and(|d| d <= dep);
            prop_assert_eq!(c == 1.0, full);
            prev = c;
        }
    }

    #[test]
    fn deferred_acceptance_is_stable((model, n, k, seed) in instance(40), dep in 1u32..=4) {
        let mut rng = RandomSource::new(seed);
        let market = Market::build(n, &mut rng).unwrap();
        let g = model.generate(n, k, 0.1, &mut rng).unwrap();
        let dm = all_pairs_shortest(&g);
        let circle = SocialCircle::new(&dm, dep);
        let out = restricted_deferred_acceptance(&market, &circle);
        prop_assert!(is_stable(&market, &circle, &out));
        prop_assert!(respects_circle(&market, &circle, &out));
        let shuffled = restricted_deferred_acceptance_randomized(&market, &circle, &mut rng);
        prop_assert_eq!(&shuffled, &out);
        for a in 0..n {
            if out.partner(a).is_none() {
                prop_assert_eq!(agent_utility(&market, &out, a).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn larger_depth_grows_circles((model, n, k, seed) in instance(30), dep in 1u32..=4) {
        let g = model.generate(n, k, 0.1, &mut RandomSource::new(seed)).unwrap();
        let dm = all_pairs_shortest(&g);
        let small = SocialCircle::new(&dm, dep);
        let big = SocialCircle::new(&dm, dep + 1);
        for a in 0..n {
            for b in 0..n {
                prop_assert!(!small.in_circle(a, b) || big.in_circle(a, b));
                prop_assert_eq!(small.in_circle(a, b), small.in_circle(b, a));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn deferred_acceptance_is_man_optimal((model, n, k, seed) in instance(8), dep in 1u32..=3) {
        let mut rng = RandomSource::new(seed);
        let market = Market::build(n, &mut rng).unwrap();
        let g = model.generate(n, k, 0.3, &mut rng).unwrap();
        let dm = all_pairs_shortest(&g);
        let circle = SocialCircle::new(&dm, dep);
        let all = enumerate_stable_matchings(&market, &circle).unwrap();
        let da = restricted_deferred_acceptance(&market, &circle);
        prop_assert!(all.contains(&da));
        prop_assert_eq!(man_optimal(&all, &market).unwrap(), da);
    }

    #[test]
    fn full_circle_equals_classical((model, n, k, seed) in instance(30)) {
        let mut rng = RandomSource::new(seed);
        let market = Market::build(n, &mut rng).unwrap();
        let g = model.generate(n, k, 0.1, &mut rng).unwrap();
        let dm = all_pairs_shortest(&g);
        prop_assume!(dm.is_connected());
        let circle = SocialCircle::new(&dm, dm.diameter().unwrap());
        prop_assert_eq!(restricted_deferred_acceptance(&market, &circle), classical_gs(&market));
    }
}

#[test]
fn classical_six_agents_stable_against_brute_force() {
    for seed in 0..50 {
        let market = Market::build(6, &mut RandomSource::new(seed)).unwrap();
        let gs = classical_gs(&market);
        let all = SocialCircle::complete();
        // Brute-force blocking scan over all 9 woman-man pairs.
        for &w in market.women() {
            for &j in market.men() {
                let w_gains = market.prefers(w, j, gs.partner(w).unwrap());
                let j_gains = market.prefers(j, w, gs.partner(j).unwrap());
                assert!(!(w_gains && j_gains), "seed {seed}: ({w}, {j}) blocks");
            }
        }
        assert!(is_stable(&market, &all, &gs));
        assert_eq!(gs.len(), 3);
    }
}

#[test]
fn ba_tail_heavier_than_er() {
    let mut wins = 0;
    for seed in 0..50u64 {
        let ba = netgen::generate_ba(1000, 2, &mut RandomSource::new(seed)).unwrap();
        let er = netgen::generate_er(1000, 1000, &mut RandomSource::new(seed + 10_000)).unwrap();
        let max_ba = *degree_distribution(&ba).keys().last().unwrap();
        let max_er = *degree_distribution(&er).keys().last().unwrap();
        if max_ba > max_er {
            wins += 1;
        }
    }
    assert!(
        wins >= 45,
        "BA max degree exceeded ER in only {wins}/50 pairs"
    );
}

#[test]
fn er_apl_and_connectivity_anticorrelated() {
    let n = 100;
    let mut apl = Vec::new();
    let mut conn = Vec::new();
    for (i, m) in (100..=600).step_by(50).enumerate() {
        let g = netgen::generate_er(n, m, &mut RandomSource::new(i as u64)).unwrap();
        let dm: DistanceMatrix = all_pairs_shortest(&g);
        apl.push(netmatch::topology::average_path_length(&dm).apl.unwrap());
        conn.push(connectivity(&dm, 3));
    }
    let r = netmatch::harness::pearson(&apl, &conn).unwrap();
    assert!(r < -0.8, "pearson = {r}");
}
