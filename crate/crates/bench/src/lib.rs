//! Shared fixtures for the criterion benches.

use pmeasure::random::{planted_partition_graph, random_partition_process2};
use pmeasure::{Graph, Partition, PlantedSpec, Seed};

/// Planted graph on `parts` blocks of `size` vertices with its ground truth.
pub fn planted(parts: usize, size: usize, p: f64, q: f64, seed: u64) -> (Graph, Partition) {
    let truth = Partition::from_sizes(&vec![size; parts]);
    let spec = PlantedSpec::from_densities(truth.clone(), p, q).expect("valid densities");
    (planted_partition_graph(&spec, Seed::new(seed)), truth)
}

/// A Process 2 candidate selecting `k` edges of `g`.
pub fn candidate(g: &Graph, k: usize, seed: u64) -> Partition {
    random_partition_process2(g, k, Seed::new(seed)).expect("k <= m")
}
