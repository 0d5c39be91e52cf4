//! Monte Carlo checks of the null models behind the adjusted scores.

use std::collections::HashMap;

use pmeasure::agnostic::{adjusted_rand_index, ami};
use pmeasure::graph::edge_classification;
use pmeasure::random::{planted_partition_graph, random_partition_process1, random_tree};
use pmeasure::{Graph, Partition, PlantedSpec, Seed};

/// Fisher-Yates with a splitmix-style generator, kept independent of the library RNG.
fn permuted(labels: &[usize], state: &mut u64) -> Vec<usize> {
    let mut out = labels.to_vec();
    for i in (1..out.len()).rev() {
        *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        out.swap(i, (z % (i as u64 + 1)) as usize);
    }
    out
}

#[test]
fn adjusted_scores_vanish_under_permutation() {
    let a = Partition::from_sizes(&[5, 8, 12, 15]);
    let b_labels = Partition::from_sizes(&[10, 10, 10, 6, 4]).labels().to_vec();
    let mut state = 7;
    let (mut ari_sum, mut ari_sq, mut ami_sum, mut ami_sq) = (0.0, 0.0, 0.0, 0.0);
    let trials = 10_000;
    for _ in 0..trials {
        let b = Partition::from_labels(&permuted(&b_labels, &mut state));
        let x = adjusted_rand_index(&a, &b).unwrap();
        let y = ami(&a, &b).unwrap();
        ari_sum += x;
        ari_sq += x * x;
        ami_sum += y;
        ami_sq += y * y;
    }
    let t = trials as f64;
    for (sum, sq, name) in [(ari_sum, ari_sq, "ARI"), (ami_sum, ami_sq, "AMI")] {
        let mean = sum / t;
        let se = ((sq / t - mean * mean) / t).sqrt();
        assert!(mean.abs() < 4.0 * se + 1e-3, "{name} mean {mean} (se {se})");
    }
}

#[test]
fn planted_k4_draws_are_uniform() {
    // one intra edge and one inter edge on K4 split {0,1},{2,3}: 2 x 4 outcomes
    let a = Partition::from_sizes(&[2, 2]);
    let spec = PlantedSpec::new(a.clone(), 1, 1).unwrap();
    let mut hist: HashMap<Vec<(usize, usize)>, u64> = HashMap::new();
    let trials = 40_000u64;
    for s in 0..trials {
        let g = planted_partition_graph(&spec, Seed::new(99).stream(s));
        *hist.entry(g.edges().to_vec()).or_default() += 1;
    }
    assert_eq!(hist.len(), 8);
    let expected = trials as f64 / 8.0;
    let sigma = (expected * (1.0 - 1.0 / 8.0)).sqrt();
    for (edges, &count) in &hist {
        assert!(
            (count as f64 - expected).abs() < 5.0 * sigma,
            "{edges:?}: {count} vs {expected}"
        );
    }
}

#[test]
fn process1_parts_cover_tree_uniformly_enough() {
    // on a path of 3 vertices with k = 2 both cuts are equally likely
    let g = Graph::path(3);
    let mut first_cut = 0;
    let trials = 20_000;
    for s in 0..trials {
        let p = random_partition_process1(&g, 2, Seed::new(5).stream(s)).unwrap();
        if p.labels()[0] != p.labels()[1] {
            first_cut += 1;
        }
    }
    let frac = first_cut as f64 / trials as f64;
    assert!(
        (frac - 0.5).abs() < 5.0 * (0.25 / trials as f64).sqrt(),
        "{frac}"
    );
    let t = random_tree(50, Seed::new(1));
    let b = edge_classification(&t, &Partition::whole(50)).unwrap();
    assert_eq!(b.norm(), 49);
}
