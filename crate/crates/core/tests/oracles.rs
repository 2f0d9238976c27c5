mod common;

use diffnet::features::{average_clustering, ClusteringVariant};
use diffnet::graphlet::count_orbits;
use diffnet::ml::stats::{kolmogorov_sf, ks_statistic, ks_two_sample};
use diffnet::ml::{knn_predict, knn_predict_from_distances};
use diffnet::portrait::{portrait_with, PathMode};
use diffnet::{extract_features, DiffusionNetwork};
use rand::Rng;

use common::*;

/// Every simple directed graph on `n` labeled nodes.
fn all_graphs(n: usize) -> impl Iterator<Item = DiffusionNetwork> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .map(move |mask| DiffusionNetwork::from_indexed(n, pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e)))
}

#[test]
fn features_match_oracle_on_every_small_graph() {
    for n in 1..=4 {
        for net in all_graphs(n) {
            let f = extract_features(&net).unwrap();
            let o = oracle_features(&net);
            assert_eq!(
                (f.scc, f.lscc, f.wcc, f.lwcc, f.dwcc, f.cc, f.kc),
                (o.scc, o.lscc, o.wcc, o.lwcc, o.dwcc, o.cc, o.kc),
                "{:?}",
                net.edges()
            );
        }
    }
}

#[test]
fn orbit_counts_match_enumeration_on_every_small_graph() {
    for n in 2..=4 {
        for net in all_graphs(n) {
            assert_eq!(count_orbits(&net).rows(), oracle_orbits(&net).as_slice(), "{:?}", net.edges());
        }
    }
}

#[test]
fn orbit_counts_match_enumeration_on_sparse_random_graphs() {
    let mut r = rng(11);
    for _ in 0..40 {
        let n = r.random_range(10..=30);
        let net = random_graph(&mut r, n, 3.0 / n as f64);
        assert_eq!(count_orbits(&net).rows(), oracle_orbits(&net).as_slice());
    }
}

#[test]
fn portraits_match_bfs_oracle_on_every_small_graph() {
    for net in all_graphs(4) {
        assert_eq!(
            portrait_with(&net, PathMode::Directed).rows(),
            oracle_portrait(&net, false).as_slice()
        );
        assert_eq!(
            portrait_with(&net, PathMode::Undirected).rows(),
            oracle_portrait(&net, true).as_slice()
        );
    }
}

#[test]
fn directed_clustering_of_complete_digraph_is_one() {
    let edges = (0..4).flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| (u, v)));
    let net = DiffusionNetwork::from_indexed(4, edges);
    assert_eq!(average_clustering(&net, ClusteringVariant::Directed).unwrap(), 1.0);
    assert_eq!(average_clustering(&net, ClusteringVariant::Undirected).unwrap(), 1.0);
}

#[test]
fn ks_statistic_matches_ecdf_enumeration() {
    let mut r = rng(12);
    for _ in 0..300 {
        let xs: Vec<f64> = (0..r.random_range(1..30)).map(|_| r.random_range(0..12) as f64).collect();
        let ys: Vec<f64> = (0..r.random_range(1..30))
            .map(|_| r.random_range(0..12) as f64 + 0.5 * r.random_range(0..2) as f64)
            .collect();
        let d = ks_statistic(&xs, &ys).unwrap();
        assert!((d - oracle_ks(&xs, &ys)).abs() < 1e-12, "{xs:?} {ys:?}");
    }
}

#[test]
fn kolmogorov_tail_reference_values() {
    // Reference values of the limiting Kolmogorov survival function.
    for (lambda, want) in [
        (0.5, 0.963_945_243),
        (1.0, 0.269_999_671),
        (1.358_098_6, 0.05),
        (2.0, 0.000_670_925),
    ] {
        assert!((kolmogorov_sf(lambda) - want).abs() < 1e-6, "{lambda}");
    }
    let r = ks_two_sample(&[1.0, 2.0, 3.0, 4.0], &[3.0, 4.0, 5.0, 6.0]).unwrap();
    assert_eq!(r.statistic, 0.5);
    assert!(r.p_value > 0.05);
}

#[test]
fn knn_by_brute_force_vote() {
    let mut r = rng(13);
    for _ in 0..100 {
        let n = r.random_range(5..30);
        let points: Vec<Vec<f64>> = (0..n).map(|_| vec![r.random_range(-5.0..5.0), r.random_range(-5.0..5.0)]).collect();
        let labels: Vec<bool> = (0..n).map(|_| r.random_bool(0.5)).collect();
        let q = vec![r.random_range(-5.0..5.0), r.random_range(-5.0..5.0)];
        let k = r.random_range(1..=n);
        let dist: Vec<f64> = points
            .iter()
            .map(|p| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
        let want = order[..k].iter().filter(|&&i| labels[i]).count() as f64 / k as f64;
        assert_eq!(knn_predict(&points, &labels, &q, k).unwrap(), want);

        // The same vote through a precomputed matrix, query stored last.
        let mut all = points.clone();
        all.push(q.clone());
        let matrix: Vec<Vec<f64>> = all
            .iter()
            .map(|a| all.iter().map(|b| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()).collect())
            .collect();
        let mut all_labels = labels.clone();
        all_labels.push(false);
        let train: Vec<usize> = (0..n).collect();
        assert_eq!(knn_predict_from_distances(&matrix, &all_labels, &train, n, k).unwrap(), want);
    }
}

#[test]
fn auc_matches_pair_counting() {
    let mut r = rng(14);
    for _ in 0..200 {
        let n = r.random_range(2..50);
        let mut labels: Vec<bool> = (0..n).map(|_| r.random_bool(0.3)).collect();
        labels[0] = true;
        labels[1] = false;
        let scores: Vec<f64> = (0..n).map(|_| r.random_range(0..8) as f64 / 8.0).collect();
        let roc = diffnet::ml::roc_auc(&scores, &labels).unwrap();
        assert!((roc.auc - oracle_auc(&scores, &labels)).abs() < 1e-12);
        assert!((diffnet::ml::metrics::trapezoid_area(&roc.points) - roc.auc).abs() < 1e-12);
    }
}
