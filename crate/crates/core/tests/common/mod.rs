#![allow(dead_code)]

use std::collections::BTreeSet;

use pmeasure::{Graph, Partition};
use proptest::prelude::*;

/// Canonical first-appearance labels, computed independently of the library.
pub fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

/// Components of the subgraph kept by `keep`, by repeated flooding.
pub fn flood_components(n: usize, edges: &[(usize, usize)], keep: &[bool]) -> Vec<usize> {
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut changed = true;
        while changed {
            changed = false;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if keep[i] && (label[u] == next) != (label[v] == next) {
                    label[u] = next;
                    label[v] = next;
                    changed = true;
                }
            }
        }
        next += 1;
    }
    label
}

/// Brute-force pair counts `(n11, n10, n01, n00)` over all vertex pairs.
pub fn brute_pairs(a: &[usize], b: &[usize]) -> (u64, u64, u64, u64) {
    let mut c = (0, 0, 0, 0);
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            match (a[i] == a[j], b[i] == b[j]) {
                (true, true) => c.0 += 1,
                (true, false) => c.1 += 1,
                (false, true) => c.2 += 1,
                (false, false) => c.3 += 1,
            }
        }
    }
    c
}

/// Brute-force edge counts `(a11, a10, a01, a00)`.
pub fn brute_edges(edges: &[(usize, usize)], a: &[usize], b: &[usize]) -> (u64, u64, u64, u64) {
    let mut c = (0, 0, 0, 0);
    for &(u, v) in edges {
        match (a[u] == a[v], b[u] == b[v]) {
            (true, true) => c.0 += 1,
            (true, false) => c.1 += 1,
            (false, true) => c.2 += 1,
            (false, false) => c.3 += 1,
        }
    }
    c
}

pub fn labels(n: usize, max_k: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..max_k, n)
}

pub fn simple_graph(n_range: std::ops::Range<usize>, max_m: usize) -> impl Strategy<Value = Graph> {
    n_range.prop_flat_map(move |n| {
        prop::collection::vec((0..n.max(1), 0..n.max(1)), 0..=max_m).prop_map(move |pairs| {
            let set: BTreeSet<(usize, usize)> = pairs
                .into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            Graph::new(n, set).expect("simple by construction")
        })
    })
}

/// A graph with two partitions of its vertex set.
pub fn instance(
    n_range: std::ops::Range<usize>,
    max_m: usize,
    max_k: usize,
) -> impl Strategy<Value = (Graph, Partition, Partition)> {
    simple_graph(n_range, max_m).prop_flat_map(move |g| {
        let n = g.vertex_count();
        (Just(g), labels(n, max_k), labels(n, max_k))
            .prop_map(|(g, a, b)| (g, Partition::from_labels(&a), Partition::from_labels(&b)))
    })
}
