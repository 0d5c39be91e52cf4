//! Finer vs coarser candidates against planted truths.
//!
//! Graph-agnostic scores reward being a refinement of the truth while
//! graph-aware scores reward being a coarsening, so a refinement and a
//! coarsening of the same truth can be ranked in opposite orders.

use serde::Serialize;

use super::checks::THEOREM_SE_MARGIN;
use crate::graph::Partition;
use crate::random::{
    planted_partition_graph, random_coarsening, random_refinement, PlantedSpec, Seed,
};
use crate::{Error, Result};

use super::{evaluate, mean_se, summarize, CurvePoint, Executor, MeasureSelector};

#[derive(Debug, Clone)]
pub struct ResolutionConfig {
    pub truth: Partition,
    pub p: f64,
    pub qs: Vec<f64>,
    /// Part count of the random refinements (more parts than the truth).
    pub finer_k: usize,
    /// Part count of the random coarsenings (fewer parts than the truth).
    pub coarser_k: usize,
    pub trials: usize,
    /// Measures emitted as curves; the verdict always uses ARI and ARI(·;G).
    pub measures: Vec<MeasureSelector>,
}

impl ResolutionConfig {
    pub fn default_measures() -> Vec<MeasureSelector> {
        vec![
            MeasureSelector::ARI,
            MeasureSelector::AMI,
            MeasureSelector::ARI_G,
        ]
    }
}

/// Ranking of the two candidate families at one `q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolutionVerdict {
    pub q: f64,
    /// Mean of `ARI(truth, finer) - ARI(truth, coarser)`.
    pub agnostic_margin: f64,
    pub agnostic_se: f64,
    /// Mean of `ARI(truth, coarser; G) - ARI(truth, finer; G)`.
    pub aware_margin: f64,
    pub aware_se: f64,
    pub agnostic_prefers_finer: bool,
    pub aware_prefers_coarser: bool,
}

impl ResolutionVerdict {
    /// The two families reach opposite conclusions.
    pub fn contradiction(&self) -> bool {
        self.agnostic_prefers_finer && self.aware_prefers_coarser
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolutionReport {
    pub points: Vec<CurvePoint>,
    pub verdicts: Vec<ResolutionVerdict>,
}

impl ResolutionReport {
    pub fn all_contradict(&self) -> bool {
        self.verdicts.iter().all(ResolutionVerdict::contradiction)
    }
}

fn separated(values: &[f64]) -> (f64, f64, bool) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN, false);
    }
    let (mean, se) = mean_se(values);
    (mean, se, mean > 0.0 && mean >= THEOREM_SE_MARGIN * se)
}

struct Trial {
    finer: Vec<Option<f64>>,
    coarser: Vec<Option<f64>>,
    agnostic_diff: Option<f64>,
    aware_diff: Option<f64>,
}

pub fn resolution_experiment(
    exec: &Executor,
    cfg: &ResolutionConfig,
    seed: Seed,
) -> Result<ResolutionReport> {
    let k = cfg.truth.part_count();
    if !(cfg.coarser_k < k && k < cfg.finer_k) {
        return Err(Error::invalid(format!(
            "need coarser_k < {k} < finer_k, got {} and {}",
            cfg.coarser_k, cfg.finer_k
        )));
    }
    let verdict_measures = [MeasureSelector::ARI, MeasureSelector::ARI_G];
    let mut points = Vec::new();
    let mut verdicts = Vec::new();
    for (i, &q) in cfg.qs.iter().enumerate() {
        let spec = PlantedSpec::from_densities(cfg.truth.clone(), cfg.p, q)?;
        let trials = exec.map_trials(cfg.trials, seed.stream(i as u64), |s| {
            let g = planted_partition_graph(&spec, s.stream(0));
            let finer = random_refinement(&cfg.truth, cfg.finer_k, s.stream(1))?;
            let coarser = random_coarsening(&cfg.truth, cfg.coarser_k, s.stream(2))?;
            let vf = evaluate(&verdict_measures, &g, &cfg.truth, &finer)?;
            let vc = evaluate(&verdict_measures, &g, &cfg.truth, &coarser)?;
            Ok(Trial {
                finer: evaluate(&cfg.measures, &g, &cfg.truth, &finer)?,
                coarser: evaluate(&cfg.measures, &g, &cfg.truth, &coarser)?,
                agnostic_diff: vf[0].zip(vc[0]).map(|(f, c)| f - c),
                aware_diff: vc[1].zip(vf[1]).map(|(c, f)| c - f),
            })
        })?;
        let finer: Vec<_> = trials.iter().map(|t| t.finer.clone()).collect();
        let coarser: Vec<_> = trials.iter().map(|t| t.coarser.clone()).collect();
        points.extend(summarize(q, &cfg.measures, &finer, "finer:"));
        points.extend(summarize(q, &cfg.measures, &coarser, "coarser:"));
        let ag: Vec<f64> = trials.iter().filter_map(|t| t.agnostic_diff).collect();
        let aw: Vec<f64> = trials.iter().filter_map(|t| t.aware_diff).collect();
        let (agnostic_margin, agnostic_se, agnostic_prefers_finer) = separated(&ag);
        let (aware_margin, aware_se, aware_prefers_coarser) = separated(&aw);
        verdicts.push(ResolutionVerdict {
            q,
            agnostic_margin,
            agnostic_se,
            aware_margin,
            aware_se,
            agnostic_prefers_finer,
            aware_prefers_coarser,
        });
    }
    Ok(ResolutionReport { points, verdicts })
}
