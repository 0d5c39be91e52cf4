use crate::graph::{edge_classification, Graph, Partition};
use crate::random::{
    planted_partition_graph, random_partition_process1, random_partition_process2, PlantedSpec,
    Seed,
};
use crate::{Error, Result};

use super::{evaluate, summarize, CurvePoint, Executor, MeasureSelector};

fn check_truth(g: &Graph, truth: &Partition) -> Result<()> {
    if truth.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: g.vertex_count(),
            found: truth.len(),
        });
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn random_partition_sweep<F>(
    exec: &Executor,
    g: &Graph,
    truth: &Partition,
    xs: &[usize],
    trials: usize,
    measures: &[MeasureSelector],
    seed: Seed,
    generate: F,
) -> Result<Vec<CurvePoint>>
where
    F: Fn(&Graph, usize, Seed) -> Result<Partition> + Sync,
{
    check_truth(g, truth)?;
    let mut points = Vec::with_capacity(xs.len() * measures.len());
    for &x in xs {
        let outcomes = exec.map_trials(trials, seed.stream(x as u64), |s| {
            let candidate = generate(g, x, s)?;
            evaluate(measures, g, truth, &candidate)
        })?;
        points.extend(summarize(x as f64, measures, &outcomes, ""));
    }
    Ok(points)
}

/// Similarity between `truth` and random connected partitions with `k`
/// parts, for each `k` in `ks`.
pub fn baseline_size_sweep(
    exec: &Executor,
    g: &Graph,
    truth: &Partition,
    ks: &[usize],
    trials: usize,
    measures: &[MeasureSelector],
    seed: Seed,
) -> Result<Vec<CurvePoint>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    random_partition_sweep(
        exec,
        g,
        truth,
        ks,
        trials,
        measures,
        seed,
        random_partition_process1,
    )
}

/// Similarity between `truth` and random partitions grown from `k` random
/// class-one edges, for each `k` in `edge_counts`.
pub fn baseline_internal_edges_sweep(
    exec: &Executor,
    g: &Graph,
    truth: &Partition,
    edge_counts: &[usize],
    trials: usize,
    measures: &[MeasureSelector],
    seed: Seed,
) -> Result<Vec<CurvePoint>> {
    random_partition_sweep(
        exec,
        g,
        truth,
        edge_counts,
        trials,
        measures,
        seed,
        random_partition_process2,
    )
}

/// How the random partitions of a structure sweep are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomPartitionKind {
    /// DFS-tree partitions with a fixed number of parts.
    Process1 { parts: usize },
    /// Random class-one edges, fixed count.
    Process2 { class_one_edges: usize },
    /// Random class-one edges, as many as the truth has internal edges on
    /// the drawn graph.
    Process2MatchingTruth,
}

impl RandomPartitionKind {
    fn draw(self, g: &Graph, truth: &Partition, seed: Seed) -> Result<Partition> {
        match self {
            RandomPartitionKind::Process1 { parts } => random_partition_process1(g, parts, seed),
            RandomPartitionKind::Process2 { class_one_edges } => {
                random_partition_process2(g, class_one_edges, seed)
            }
            RandomPartitionKind::Process2MatchingTruth => {
                let k = edge_classification(g, truth)?.norm();
                random_partition_process2(g, k, seed)
            }
        }
    }
}

/// Planted-partition family swept over the inter-part density.
#[derive(Debug, Clone)]
pub struct StructureSweep {
    pub truth: Partition,
    /// Intra-part density.
    pub p: f64,
    /// Inter-part densities, one curve point each (`x = q / p`).
    pub qs: Vec<f64>,
    pub generator: RandomPartitionKind,
    pub trials: usize,
    pub measures: Vec<MeasureSelector>,
}

/// Each trial draws a fresh planted graph and a fresh random partition.
pub fn structure_sweep(
    exec: &Executor,
    cfg: &StructureSweep,
    seed: Seed,
) -> Result<Vec<CurvePoint>> {
    if cfg.p <= 0.0 {
        return Err(Error::invalid("structure sweep needs p > 0"));
    }
    let mut points = Vec::new();
    for (i, &q) in cfg.qs.iter().enumerate() {
        let spec = PlantedSpec::from_densities(cfg.truth.clone(), cfg.p, q)?;
        let outcomes = exec.map_trials(cfg.trials, seed.stream(i as u64), |s| {
            let g = planted_partition_graph(&spec, s.stream(0));
            let candidate = cfg.generator.draw(&g, &cfg.truth, s.stream(1))?;
            evaluate(&cfg.measures, &g, &cfg.truth, &candidate)
        })?;
        points.extend(summarize(q / cfg.p, &cfg.measures, &outcomes, ""));
    }
    Ok(points)
}

/// One externally produced (graph, truth, candidate) triple.
#[derive(Debug, Clone)]
pub struct IngestedInstance {
    pub x: f64,
    pub graph: Graph,
    pub truth: Partition,
    pub candidate: Partition,
}

/// Similarity curves over ingested instances, aggregated per distinct `x`.
pub fn ingested_curve(
    instances: &[IngestedInstance],
    measures: &[MeasureSelector],
) -> Result<Vec<CurvePoint>> {
    let mut xs: Vec<f64> = instances.iter().map(|i| i.x).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| a.to_bits() == b.to_bits());
    let mut points = Vec::new();
    for x in xs {
        let outcomes = instances
            .iter()
            .filter(|i| i.x.to_bits() == x.to_bits())
            .map(|i| evaluate(measures, &i.graph, &i.truth, &i.candidate))
            .collect::<Result<Vec<_>>>()?;
        points.extend(summarize(x, measures, &outcomes, ""));
    }
    Ok(points)
}
