//! Empirical checks of the refinement/coarsening inequalities on
//! planted-partition graphs.
//!
//! For a ground truth `A`, a coarsening `B1 > A` and a refinement `B2 < A`:
//!
//! * coarsening: `E[PC_mn(A, B1; G)] >= PC_mn(A, B1)` when `p >= q`;
//! * refinement: `E[PC_mn(A, B2; G)] <= PC_mn(A, B2)` for all `p, q`;
//! * if `|P_A|^2 < |P_B1| |P_B2|` then `PC_mn(A, B1) < PC_mn(A, B2)`, and
//!   if moreover `p |P_A \ P_B2| > q |P_B1 \ P_A|` the graph-aware order is
//!   reversed in expectation.

use serde::Serialize;

use crate::agnostic::{pc, MeanKind};
use crate::aware::edge_counts;
use crate::graph::{is_refinement, Partition};
use crate::random::{planted_partition_graph, PlantedSpec, Seed};
use crate::{Error, Result};

use super::{mean_se, mean_std, CurvePoint, Executor};

/// Margin, in standard errors, for the lemma inequalities.
pub const LEMMA_SE_MARGIN: f64 = 2.0;
/// Required separation, in standard errors, for the theorem ordering.
pub const THEOREM_SE_MARGIN: f64 = 3.0;

#[derive(Debug, Clone)]
pub struct PerturbationConfig {
    pub truth: Partition,
    pub coarsening: Partition,
    pub refinement: Partition,
    pub p: f64,
    pub q: f64,
    pub trials: usize,
}

impl PerturbationConfig {
    fn validate(&self) -> Result<PlantedSpec> {
        if !is_refinement(&self.truth, &self.coarsening)? {
            return Err(Error::Precondition(
                "B1 is not a coarsening of A (some part of A is split by B1)".into(),
            ));
        }
        if !is_refinement(&self.refinement, &self.truth)? {
            return Err(Error::Precondition(
                "B2 is not a refinement of A (some part of B2 crosses parts of A)".into(),
            ));
        }
        if self.trials == 0 {
            return Err(Error::invalid("at least one trial is required"));
        }
        PlantedSpec::from_densities(self.truth.clone(), self.p, self.q)
    }
}

/// A Monte Carlo mean compared against a fixed graph-agnostic value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub agnostic: f64,
    pub mean: f64,
    pub std: f64,
    pub se: f64,
    pub trials: usize,
    pub degenerate: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    /// `None` when `p < q`, where the coarsening inequality is not claimed.
    pub coarsening: Option<InequalityCheck>,
    pub refinement: InequalityCheck,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.refinement.passed && self.coarsening.as_ref().is_none_or(|c| c.passed)
    }

    pub fn curve_points(&self, x: f64) -> Vec<CurvePoint> {
        let mut out = Vec::new();
        for (label, check) in [
            ("coarsening", self.coarsening.as_ref()),
            ("refinement", Some(&self.refinement)),
        ] {
            if let Some(c) = check {
                out.extend(check_points(x, label, c));
            }
        }
        out
    }
}

fn check_points(x: f64, label: &str, c: &InequalityCheck) -> [CurvePoint; 2] {
    [
        CurvePoint {
            x,
            measure: format!("{label}:pc_mn"),
            mean: c.agnostic,
            std: 0.0,
            trials: c.trials,
            degenerate: 0,
        },
        CurvePoint {
            x,
            measure: format!("{label}:pc_mn_g"),
            mean: c.mean,
            std: c.std,
            trials: c.trials,
            degenerate: c.degenerate,
        },
    ]
}

/// Per-trial `PC_mn(A, B; G)` for both perturbations on one planted graph.
fn aware_pair(
    cfg: &PerturbationConfig,
    spec: &PlantedSpec,
    seed: Seed,
) -> Result<[Option<f64>; 2]> {
    let g = planted_partition_graph(spec, seed);
    let mut out = [None, None];
    for (slot, b) in out.iter_mut().zip([&cfg.coarsening, &cfg.refinement]) {
        *slot = match edge_counts(&g, &cfg.truth, b)?.pc(MeanKind::Arithmetic) {
            Ok(v) => Some(v),
            Err(e) if e.is_degenerate() => None,
            Err(e) => return Err(e),
        };
    }
    Ok(out)
}

fn inequality(agnostic: f64, column: &[Option<f64>], at_least: bool) -> InequalityCheck {
    let values: Vec<f64> = column.iter().flatten().copied().collect();
    let (mean, std) = if values.is_empty() {
        (f64::NAN, f64::NAN)
    } else {
        mean_std(&values)
    };
    let se = std / (values.len() as f64).sqrt();
    let passed = if at_least {
        mean >= agnostic - LEMMA_SE_MARGIN * se
    } else {
        mean <= agnostic + LEMMA_SE_MARGIN * se
    };
    InequalityCheck {
        agnostic,
        mean,
        std,
        se,
        trials: column.len(),
        degenerate: column.len() - values.len(),
        passed,
    }
}

/// Monte Carlo check of the coarsening/refinement inequalities over fresh
/// planted graphs.
pub fn lemma1_check(exec: &Executor, cfg: &PerturbationConfig, seed: Seed) -> Result<LemmaReport> {
    let spec = cfg.validate()?;
    let rows = exec.map_trials(cfg.trials, seed, |s| aware_pair(cfg, &spec, s))?;
    let column = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<_>>();
    let agnostic_b1 = pc(&cfg.truth, &cfg.coarsening, MeanKind::Arithmetic)?;
    let agnostic_b2 = pc(&cfg.truth, &cfg.refinement, MeanKind::Arithmetic)?;
    Ok(LemmaReport {
        coarsening: (cfg.p >= cfg.q).then(|| inequality(agnostic_b1, &column(0), true)),
        refinement: inequality(agnostic_b2, &column(1), false),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremPartI {
    pub agnostic_coarsening: f64,
    pub agnostic_refinement: f64,
    /// `PC_mn(A, B1) < PC_mn(A, B2)`.
    pub holds: bool,
}

/// Deterministic graph-agnostic ordering, after checking the size condition.
pub fn theorem1_part_i(
    truth: &Partition,
    coarsening: &Partition,
    refinement: &Partition,
) -> Result<TheoremPartI> {
    if !is_refinement(truth, coarsening)? || !is_refinement(refinement, truth)? {
        return Err(Error::Precondition(
            "B1 must be a coarsening and B2 a refinement of A".into(),
        ));
    }
    let a = u128::from(truth.intra_pair_count());
    let b1 = u128::from(coarsening.intra_pair_count());
    let b2 = u128::from(refinement.intra_pair_count());
    if a * a >= b1 * b2 {
        return Err(Error::Precondition(format!(
            "size condition fails: |P_A|^2 >= |P_B1|*|P_B2| ({} >= {})",
            a * a,
            b1 * b2
        )));
    }
    let agnostic_coarsening = pc(truth, coarsening, MeanKind::Arithmetic)?;
    let agnostic_refinement = pc(truth, refinement, MeanKind::Arithmetic)?;
    Ok(TheoremPartI {
        agnostic_coarsening,
        agnostic_refinement,
        holds: agnostic_coarsening < agnostic_refinement,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremPartII {
    pub mean_coarsening: f64,
    pub std_coarsening: f64,
    pub mean_refinement: f64,
    pub std_refinement: f64,
    /// Mean of the paired per-graph difference `PC(B1; G) - PC(B2; G)`.
    pub mean_difference: f64,
    pub se_difference: f64,
    pub trials: usize,
    pub degenerate: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub part_i: TheoremPartI,
    pub part_ii: TheoremPartII,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.part_i.holds && self.part_ii.passed
    }

    pub fn curve_points(&self, x: f64) -> Vec<CurvePoint> {
        let ii = &self.part_ii;
        let valid = ii.trials - ii.degenerate;
        let point = |measure: &str, mean: f64, std: f64, degenerate: usize| CurvePoint {
            x,
            measure: measure.to_string(),
            mean,
            std,
            trials: ii.trials,
            degenerate,
        };
        vec![
            point("coarsening:pc_mn", self.part_i.agnostic_coarsening, 0.0, 0),
            point("refinement:pc_mn", self.part_i.agnostic_refinement, 0.0, 0),
            point(
                "coarsening:pc_mn_g",
                ii.mean_coarsening,
                ii.std_coarsening,
                ii.degenerate,
            ),
            point(
                "refinement:pc_mn_g",
                ii.mean_refinement,
                ii.std_refinement,
                ii.degenerate,
            ),
            point(
                "difference:pc_mn_g",
                ii.mean_difference,
                ii.se_difference * (valid as f64).sqrt(),
                ii.degenerate,
            ),
        ]
    }
}

/// Both parts of the ordering result. Rejects configurations violating the
/// size condition or the density condition `p |P_A \ P_B2| > q |P_B1 \ P_A|`.
pub fn theorem1_check(
    exec: &Executor,
    cfg: &PerturbationConfig,
    seed: Seed,
) -> Result<TheoremReport> {
    let spec = cfg.validate()?;
    let part_i = theorem1_part_i(&cfg.truth, &cfg.coarsening, &cfg.refinement)?;
    let a = cfg.truth.intra_pair_count();
    let x1 = cfg.coarsening.intra_pair_count() - a;
    let x2 = a - cfg.refinement.intra_pair_count();
    let (p, q) = (spec.p(), spec.q());
    if p * x2 as f64 <= q * x1 as f64 {
        return Err(Error::Precondition(format!(
            "density condition fails: p*|P_A\\P_B2| <= q*|P_B1\\P_A| ({} <= {})",
            p * x2 as f64,
            q * x1 as f64
        )));
    }
    let rows = exec.map_trials(cfg.trials, seed, |s| aware_pair(cfg, &spec, s))?;
    let pairs: Vec<(f64, f64)> = rows.iter().filter_map(|r| Some((r[0]?, r[1]?))).collect();
    if pairs.is_empty() {
        return Err(Error::degenerate("every trial was degenerate"));
    }
    let first: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let second: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let diffs: Vec<f64> = pairs.iter().map(|p| p.0 - p.1).collect();
    let (mean_difference, se_difference) = mean_se(&diffs);
    let (mean_coarsening, std_coarsening) = mean_std(&first);
    let (mean_refinement, std_refinement) = mean_std(&second);
    Ok(TheoremReport {
        part_i,
        part_ii: TheoremPartII {
            mean_coarsening,
            std_coarsening,
            mean_refinement,
            std_refinement,
            mean_difference,
            se_difference,
            trials: rows.len(),
            degenerate: rows.len() - pairs.len(),
            passed: mean_difference > 0.0 && mean_difference >= THEOREM_SE_MARGIN * se_difference,
        },
    })
}
