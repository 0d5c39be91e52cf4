//! Seeded Monte Carlo harness.
//!
//! Trial `i` of a run always draws from `seed.stream(i)`, and results are
//! collected in trial order before any aggregation, so outputs do not depend
//! on the number of worker threads.

mod checks;
mod resolution;
mod sweeps;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::agnostic::{contingency_table, pair_counts, MeanKind};
use crate::aware::{edge_counts, EdgeCounts};
use crate::graph::{Graph, Partition};
use crate::random::Seed;
use crate::{Error, Result};

pub use checks::{
    lemma1_check, theorem1_check, theorem1_part_i, InequalityCheck, LemmaReport,
    PerturbationConfig, TheoremPartI, TheoremPartII, TheoremReport, LEMMA_SE_MARGIN,
    THEOREM_SE_MARGIN,
};
pub use resolution::{
    resolution_experiment, ResolutionConfig, ResolutionReport, ResolutionVerdict,
};
pub use sweeps::{
    baseline_internal_edges_sweep, baseline_size_sweep, ingested_curve, structure_sweep,
    IngestedInstance, RandomPartitionKind, StructureSweep,
};

/// Name of the environment variable capping the worker count.
pub const THREADS_ENV: &str = "PM_THREADS";

/// Aggregated similarity for one measure at one sweep coordinate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub measure: String,
    /// Mean over non-degenerate trials; NaN when every trial was degenerate.
    pub mean: f64,
    /// Unbiased sample standard deviation over non-degenerate trials.
    pub std: f64,
    pub trials: usize,
    pub degenerate: usize,
}

impl CurvePoint {
    pub fn from_outcomes(x: f64, measure: impl Into<String>, outcomes: &[Option<f64>]) -> Self {
        let values: Vec<f64> = outcomes.iter().flatten().copied().collect();
        let (mean, std) = match values.len() {
            0 => (f64::NAN, f64::NAN),
            _ => mean_std(&values),
        };
        CurvePoint {
            x,
            measure: measure.into(),
            mean,
            std,
            trials: outcomes.len(),
            degenerate: outcomes.len() - values.len(),
        }
    }

    /// Standard error of the mean.
    pub fn standard_error(&self) -> f64 {
        let valid = self.trials - self.degenerate;
        self.std / (valid as f64).sqrt()
    }
}

/// Mean and unbiased standard deviation (0 for a single value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Mean and standard error of the mean.
pub fn mean_se(values: &[f64]) -> (f64, f64) {
    let (mean, std) = mean_std(values);
    (mean, std / (values.len() as f64).sqrt())
}

/// Centered moving average; windows are clipped at the series boundaries.
pub fn moving_average(series: &[f64], window: usize) -> Result<Vec<f64>> {
    if window == 0 || window.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "smoothing window must be a positive odd number, got {window}"
        )));
    }
    let half = window / 2;
    Ok((0..series.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(series.len() - 1);
            series[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect())
}

/// Smooths each measure's curve independently (points ordered by x).
pub fn smooth_curves(points: &[CurvePoint], window: usize) -> Result<Vec<CurvePoint>> {
    let mut out = points.to_vec();
    let mut labels: Vec<&str> = points.iter().map(|p| p.measure.as_str()).collect();
    labels.sort_unstable();
    labels.dedup();
    for label in labels {
        let mut idx: Vec<usize> = (0..out.len())
            .filter(|&i| out[i].measure == label)
            .collect();
        idx.sort_by(|&i, &j| out[i].x.total_cmp(&out[j].x));
        let means: Vec<f64> = idx.iter().map(|&i| out[i].mean).collect();
        let stds: Vec<f64> = idx.iter().map(|&i| out[i].std).collect();
        let (means, stds) = (
            moving_average(&means, window)?,
            moving_average(&stds, window)?,
        );
        for (k, &i) in idx.iter().enumerate() {
            out[i].mean = means[k];
            out[i].std = stds[k];
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Agnostic,
    Aware,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MeasureName {
    Ri,
    Ari,
    Pc,
    Apc,
    Ami,
}

/// A validated `(family, measure, mean kind)` combination.
///
/// Identifiers: `ri`, `ari`, `pc_<f>`, `ami` for vertex-pair measures and
/// `ri_g`, `ari_g`, `pc_<f>_g`, `apc_<f>_g` for edge measures, with
/// `<f>` one of `mn`, `gmn`, `min`, `max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MeasureSelector {
    family: Family,
    name: MeasureName,
    kind: Option<MeanKind>,
}

impl MeasureSelector {
    pub const RI: Self = Self::plain(Family::Agnostic, MeasureName::Ri);
    pub const ARI: Self = Self::plain(Family::Agnostic, MeasureName::Ari);
    pub const AMI: Self = Self::plain(Family::Agnostic, MeasureName::Ami);
    pub const RI_G: Self = Self::plain(Family::Aware, MeasureName::Ri);
    pub const ARI_G: Self = Self::plain(Family::Aware, MeasureName::Ari);

    const fn plain(family: Family, name: MeasureName) -> Self {
        MeasureSelector {
            family,
            name,
            kind: None,
        }
    }

    pub fn new(family: Family, name: MeasureName, kind: Option<MeanKind>) -> Result<Self> {
        let needs_kind = matches!(name, MeasureName::Pc | MeasureName::Apc);
        let valid = match (family, name) {
            (Family::Agnostic, MeasureName::Apc) | (Family::Aware, MeasureName::Ami) => false,
            _ => needs_kind == kind.is_some(),
        };
        if !valid {
            return Err(Error::invalid(format!(
                "invalid measure combination {family:?}/{name:?}/{kind:?}"
            )));
        }
        Ok(MeasureSelector { family, name, kind })
    }

    pub const fn pc(kind: MeanKind) -> Self {
        MeasureSelector {
            family: Family::Agnostic,
            name: MeasureName::Pc,
            kind: Some(kind),
        }
    }

    pub const fn pc_g(kind: MeanKind) -> Self {
        MeasureSelector {
            family: Family::Aware,
            name: MeasureName::Pc,
            kind: Some(kind),
        }
    }

    pub const fn apc_g(kind: MeanKind) -> Self {
        MeasureSelector {
            family: Family::Aware,
            name: MeasureName::Apc,
            kind: Some(kind),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn name(&self) -> MeasureName {
        self.name
    }

    pub fn kind(&self) -> Option<MeanKind> {
        self.kind
    }

    pub fn is_adjusted(&self) -> bool {
        matches!(
            self.name,
            MeasureName::Ari | MeasureName::Apc | MeasureName::Ami
        )
    }

    /// The unadjusted measure this one adjusts, if any.
    pub fn unadjusted(&self) -> Option<MeasureSelector> {
        match (self.family, self.name) {
            (f, MeasureName::Ari) => Some(Self::plain(f, MeasureName::Ri)),
            (Family::Aware, MeasureName::Apc) => Some(Self::pc_g(self.kind?)),
            _ => None,
        }
    }

    /// Whether `value` lies in the measure's range (with rounding slack).
    pub fn admissible(&self, value: f64) -> bool {
        const SLACK: f64 = 1e-9;
        if self.is_adjusted() {
            value <= 1.0 + SLACK
        } else {
            (-SLACK..=1.0 + SLACK).contains(&value)
        }
    }

    /// RI, ARI, AMI and every `PC_f` on both sides plus every `APC_f(·;G)`.
    pub fn all() -> Vec<MeasureSelector> {
        let mut all = vec![Self::RI, Self::ARI, Self::AMI, Self::RI_G, Self::ARI_G];
        for f in MeanKind::ALL {
            all.extend([Self::pc(f), Self::pc_g(f), Self::apc_g(f)]);
        }
        all
    }

    /// The graph-aware family with adjusted and unadjusted variants.
    pub fn aware_family() -> Vec<MeasureSelector> {
        let mut out = vec![Self::RI_G, Self::ARI_G];
        for f in MeanKind::ALL {
            out.extend([Self::pc_g(f), Self::apc_g(f)]);
        }
        out
    }

    pub fn id(&self) -> String {
        let base = match self.name {
            MeasureName::Ri => "ri".to_string(),
            MeasureName::Ari => "ari".to_string(),
            MeasureName::Ami => "ami".to_string(),
            MeasureName::Pc => format!("pc_{}", self.kind.expect("validated")),
            MeasureName::Apc => format!("apc_{}", self.kind.expect("validated")),
        };
        match self.family {
            Family::Agnostic => base,
            Family::Aware => base + "_g",
        }
    }
}

impl fmt::Display for MeasureSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for MeasureSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (family, rest) = match lower.strip_suffix("_g") {
            Some(rest) => (Family::Aware, rest),
            None => (Family::Agnostic, lower.as_str()),
        };
        let (name, kind) = match rest {
            "ri" => (MeasureName::Ri, None),
            "ari" => (MeasureName::Ari, None),
            "ami" => (MeasureName::Ami, None),
            other => {
                if let Some(k) = other.strip_prefix("apc_") {
                    (MeasureName::Apc, Some(k.parse()?))
                } else if let Some(k) = other.strip_prefix("pc_") {
                    (MeasureName::Pc, Some(k.parse()?))
                } else {
                    return Err(Error::invalid(format!("unknown measure {s:?}")));
                }
            }
        };
        MeasureSelector::new(family, name, kind)
    }
}

/// Parses a comma-separated measure list.
pub fn parse_measure_list(s: &str) -> Result<Vec<MeasureSelector>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Evaluates `measures` for one partition pair, sharing the contingency
/// table and edge counts. Degenerate measures come back as `None`; any
/// other error aborts.
pub fn evaluate(
    measures: &[MeasureSelector],
    g: &Graph,
    a: &Partition,
    b: &Partition,
) -> Result<Vec<Option<f64>>> {
    let table = if measures.iter().any(|m| m.family == Family::Agnostic) {
        Some(contingency_table(a, b)?)
    } else {
        None
    };
    let pairs = table.as_ref().map(pair_counts);
    let counts: Option<EdgeCounts> = if measures.iter().any(|m| m.family == Family::Aware) {
        Some(edge_counts(g, a, b)?)
    } else {
        None
    };
    measures
        .iter()
        .map(|m| {
            let value = match m.family {
                Family::Agnostic => {
                    let pairs = pairs.as_ref().expect("computed above");
                    match m.name {
                        MeasureName::Ri => pairs.rand_index(),
                        MeasureName::Ari => pairs.adjusted_rand_index(),
                        MeasureName::Pc => pairs.pc(m.kind.expect("validated")),
                        MeasureName::Ami => table
                            .as_ref()
                            .expect("computed above")
                            .adjusted_mutual_information(),
                        MeasureName::Apc => unreachable!("rejected by MeasureSelector::new"),
                    }
                }
                Family::Aware => {
                    let counts = counts.as_ref().expect("computed above");
                    match m.name {
                        MeasureName::Ri => counts.rand_index(),
                        MeasureName::Ari => counts.adjusted_rand_index(),
                        MeasureName::Pc => counts.pc(m.kind.expect("validated")),
                        MeasureName::Apc => counts.apc(m.kind.expect("validated")),
                        MeasureName::Ami => unreachable!("rejected by MeasureSelector::new"),
                    }
                }
            };
            match value {
                Ok(v) => Ok(Some(v)),
                Err(e) if e.is_degenerate() => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// Runs independent trials, optionally on a dedicated thread pool.
#[derive(Clone, Default)]
pub struct Executor {
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl fmt::Debug for Executor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Executor")
            .field("threads", &self.threads())
            .finish()
    }
}

impl Executor {
    /// `threads == 0` uses rayon's global pool.
    pub fn new(threads: usize) -> Result<Self> {
        if threads == 0 {
            return Ok(Executor { pool: None });
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::invalid(format!("cannot build thread pool: {e}")))?;
        Ok(Executor {
            pool: Some(Arc::new(pool)),
        })
    }

    pub fn sequential() -> Self {
        Executor::new(1).expect("single-thread pool")
    }

    /// Reads the worker cap from `PM_THREADS` (0 or unset: hardware default).
    pub fn from_env() -> Result<Self> {
        match std::env::var(THREADS_ENV) {
            Ok(v) if !v.trim().is_empty() => {
                let threads = v.trim().parse().map_err(|_| {
                    Error::invalid(format!(
                        "{THREADS_ENV} must be a non-negative integer, got {v:?}"
                    ))
                })?;
                Executor::new(threads)
            }
            _ => Executor::new(0),
        }
    }

    pub fn threads(&self) -> usize {
        match &self.pool {
            Some(p) => p.current_num_threads(),
            None => rayon::current_num_threads(),
        }
    }

    /// Runs `trial(seed.stream(i))` for `i in 0..trials`, returning results
    /// in trial order.
    pub fn map_trials<T, F>(&self, trials: usize, seed: Seed, trial: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(Seed) -> Result<T> + Sync,
    {
        let run = || {
            (0..trials)
                .into_par_iter()
                .map(|i| trial(seed.stream(i as u64)))
                .collect::<Result<Vec<T>>>()
        };
        match &self.pool {
            Some(pool) => pool.install(run),
            None => run(),
        }
    }
}

/// Per-measure curve points from `trials x measures` outcomes.
pub(crate) fn summarize(
    x: f64,
    measures: &[MeasureSelector],
    outcomes: &[Vec<Option<f64>>],
    prefix: &str,
) -> Vec<CurvePoint> {
    measures
        .iter()
        .enumerate()
        .map(|(mi, m)| {
            let column: Vec<Option<f64>> = outcomes.iter().map(|row| row[mi]).collect();
            CurvePoint::from_outcomes(x, format!("{prefix}{m}"), &column)
        })
        .collect()
}
