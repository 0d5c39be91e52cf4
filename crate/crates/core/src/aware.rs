//! Graph-aware measures: binary similarity scores over the edge
//! classifications of two partitions.
//!
//! Counts are over edges only: `a11` is the number of edges internal to both
//! partitions, `a10` internal to A but cut by B, and so on. The adjusted
//! variants use the fix-intra-edges null model, approximating the expected
//! overlap by `|b_A| |b_B| / |E|`.

use serde::Serialize;

use crate::agnostic::MeanKind;
use crate::graph::{EdgeClassification, Graph, Partition};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct EdgeCounts {
    pub a11: u64,
    pub a10: u64,
    pub a01: u64,
    pub a00: u64,
}

impl EdgeCounts {
    pub fn from_classifications(ba: &EdgeClassification, bb: &EdgeClassification) -> Result<Self> {
        if ba.len() != bb.len() {
            return Err(Error::LengthMismatch {
                expected: ba.len(),
                found: bb.len(),
            });
        }
        let mut counts = EdgeCounts::default();
        for (&x, &y) in ba.bits().iter().zip(bb.bits()) {
            counts.add(x, y);
        }
        Ok(counts)
    }

    fn add(&mut self, in_a: bool, in_b: bool) {
        match (in_a, in_b) {
            (true, true) => self.a11 += 1,
            (true, false) => self.a10 += 1,
            (false, true) => self.a01 += 1,
            (false, false) => self.a00 += 1,
        }
    }

    /// `|E|`
    pub fn edges(&self) -> u64 {
        self.a11 + self.a10 + self.a01 + self.a00
    }

    /// `|b_A|`
    pub fn intra_a(&self) -> u64 {
        self.a11 + self.a10
    }

    /// `|b_B|`
    pub fn intra_b(&self) -> u64 {
        self.a11 + self.a01
    }

    fn require_edges(&self) -> Result<u64> {
        match self.edges() {
            0 => Err(Error::degenerate(
                "graph-aware measure on an empty edge set",
            )),
            m => Ok(m),
        }
    }

    /// Accuracy of the two classifications: `RI(·;G)`.
    pub fn rand_index(&self) -> Result<f64> {
        let m = self.require_edges()?;
        Ok((self.a11 + self.a00) as f64 / m as f64)
    }

    pub fn pc(&self, f: MeanKind) -> Result<f64> {
        let (x, y) = (self.intra_a(), self.intra_b());
        if f.vanishes(x, y) {
            return Err(Error::degenerate(format!(
                "PC_{f}(G) denominator vanishes (|b_A| = {x}, |b_B| = {y})"
            )));
        }
        Ok(self.a11 as f64 / f.apply(x as f64, y as f64))
    }

    /// `APC_f(·;G)`.
    pub fn apc(&self, f: MeanKind) -> Result<f64> {
        let m = self.require_edges()?;
        let (x, y) = (self.intra_a(), self.intra_b());
        if f.equals_product_over(x, y, m) {
            return Err(Error::degenerate(format!(
                "APC_{f}(G) denominator vanishes (|b_A| = {x}, |b_B| = {y}, |E| = {m})"
            )));
        }
        let expected = x as f64 * y as f64 / m as f64;
        Ok((self.a11 as f64 - expected) / (f.apply(x as f64, y as f64) - expected))
    }

    /// `ARI(·;G)`, identical to `APC_mn(·;G)`.
    pub fn adjusted_rand_index(&self) -> Result<f64> {
        self.apc(MeanKind::Arithmetic)
    }
}

/// Single pass over the edges of `g`.
pub fn edge_counts(g: &Graph, a: &Partition, b: &Partition) -> Result<EdgeCounts> {
    for p in [a, b] {
        if p.len() != g.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: g.vertex_count(),
                found: p.len(),
            });
        }
    }
    let mut counts = EdgeCounts::default();
    for &(u, v) in g.edges() {
        counts.add(a.label(u) == a.label(v), b.label(u) == b.label(v));
    }
    Ok(counts)
}

pub fn graph_rand_index(g: &Graph, a: &Partition, b: &Partition) -> Result<f64> {
    edge_counts(g, a, b)?.rand_index()
}

pub fn graph_pc(g: &Graph, a: &Partition, b: &Partition, f: MeanKind) -> Result<f64> {
    edge_counts(g, a, b)?.pc(f)
}

/// `E[PC_f(·;G)]` given `|b_A|`, `|b_B|` and `|E|`.
pub fn expected_graph_pc(nb_a: u64, nb_b: u64, m: u64, f: MeanKind) -> Result<f64> {
    if m == 0 {
        return Err(Error::degenerate("expected PC on an empty edge set"));
    }
    if f.vanishes(nb_a, nb_b) {
        return Err(Error::degenerate(format!("PC_{f} normalizer vanishes")));
    }
    let (x, y) = (nb_a as f64, nb_b as f64);
    Ok(x * y / (m as f64 * f.apply(x, y)))
}

/// `E[RI(·;G)] = 1 - (|b_A| + |b_B|)/|E| + 2 |b_A| |b_B| / |E|^2`.
pub fn expected_graph_ri(nb_a: u64, nb_b: u64, m: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::degenerate("expected RI on an empty edge set"));
    }
    let (x, y, m) = (nb_a as f64, nb_b as f64, m as f64);
    Ok(1.0 - (x + y) / m + 2.0 * x * y / (m * m))
}

pub fn adjusted_graph_pc(g: &Graph, a: &Partition, b: &Partition, f: MeanKind) -> Result<f64> {
    edge_counts(g, a, b)?.apc(f)
}

pub fn adjusted_graph_rand_index(g: &Graph, a: &Partition, b: &Partition) -> Result<f64> {
    edge_counts(g, a, b)?.adjusted_rand_index()
}

/// `(sim - E) / (1 - E)`.
pub fn adj_sim(sim: f64, expected: f64) -> Result<f64> {
    if expected == 1.0 {
        return Err(Error::degenerate("expected similarity equals 1"));
    }
    Ok((sim - expected) / (1.0 - expected))
}

/// `ARI(·;G)` obtained by adjusting graph accuracy with its expectation,
/// independently of the closed `APC_mn` form.
pub fn adjusted_graph_rand_index_from_accuracy(counts: &EdgeCounts) -> Result<f64> {
    let m = counts.edges();
    let (x, y) = (counts.intra_a(), counts.intra_b());
    if m > 0 && MeanKind::Arithmetic.equals_product_over(x, y, m) {
        return Err(Error::degenerate("expected graph accuracy equals 1"));
    }
    adj_sim(counts.rand_index()?, expected_graph_ri(x, y, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn path_fixture() -> (Graph, Partition, Partition) {
        let a = Partition::from_parts(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = Partition::from_parts(4, &[vec![0, 1, 2], vec![3]]).unwrap();
        (Graph::path(4), a, b)
    }

    #[test]
    fn counts_examples() {
        let (g, a, b) = path_fixture();
        assert_eq!(
            edge_counts(&g, &a, &b).unwrap(),
            EdgeCounts {
                a11: 1,
                a10: 1,
                a01: 1,
                a00: 0
            }
        );
        let same = edge_counts(&g, &a, &a).unwrap();
        assert_eq!((same.a10, same.a01), (0, 0));
        let s = edge_counts(&g, &a, &Partition::singletons(4)).unwrap();
        assert_eq!((s.a11, s.a01), (0, 0));
        assert!(edge_counts(&g, &a, &Partition::whole(3)).is_err());
    }

    #[test]
    fn counts_match_classifications() {
        let (g, a, b) = path_fixture();
        let ba = crate::graph::edge_classification(&g, &a).unwrap();
        let bb = crate::graph::edge_classification(&g, &b).unwrap();
        assert_eq!(
            EdgeCounts::from_classifications(&ba, &bb).unwrap(),
            edge_counts(&g, &a, &b).unwrap()
        );
    }

    #[test]
    fn rand_and_pc_examples() {
        let (g, a, b) = path_fixture();
        assert_eq!(graph_rand_index(&g, &a, &a).unwrap(), 1.0);
        assert_abs_diff_eq!(graph_rand_index(&g, &a, &b).unwrap(), 1.0 / 3.0);
        assert_abs_diff_eq!(graph_pc(&g, &a, &b, MeanKind::Arithmetic).unwrap(), 0.5);
        assert_abs_diff_eq!(graph_pc(&g, &a, &b, MeanKind::Min).unwrap(), 0.5);
        for f in MeanKind::ALL {
            assert_eq!(graph_pc(&g, &a, &a, f).unwrap(), 1.0);
        }
        let s = Partition::singletons(4);
        assert!(graph_pc(&g, &s, &s, MeanKind::Max)
            .unwrap_err()
            .is_degenerate());
        assert!(graph_rand_index(&Graph::empty(4), &s, &s)
            .unwrap_err()
            .is_degenerate());
    }

    #[test]
    fn expectation_examples() {
        assert_abs_diff_eq!(
            expected_graph_pc(2, 2, 3, MeanKind::Arithmetic).unwrap(),
            2.0 / 3.0
        );
        assert_eq!(expected_graph_pc(0, 5, 7, MeanKind::Max).unwrap(), 0.0);
        assert_eq!(expected_graph_pc(7, 7, 7, MeanKind::Min).unwrap(), 1.0);
        assert_eq!(expected_graph_ri(0, 0, 9).unwrap(), 1.0);
        assert_eq!(expected_graph_ri(9, 9, 9).unwrap(), 1.0);
        assert_abs_diff_eq!(
            expected_graph_ri(2, 2, 3).unwrap(),
            5.0 / 9.0,
            epsilon = 1e-15
        );
        assert!(expected_graph_ri(0, 0, 0).is_err());
    }

    #[test]
    fn adjusted_examples() {
        let (g, a, b) = path_fixture();
        assert_abs_diff_eq!(
            adjusted_graph_pc(&g, &a, &b, MeanKind::Arithmetic).unwrap(),
            -0.5,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            adjusted_graph_rand_index(&g, &a, &b).unwrap(),
            -0.5,
            epsilon = 1e-12
        );
        assert_eq!(adjusted_graph_rand_index(&g, &a, &a).unwrap(), 1.0);
        let c = edge_counts(&g, &a, &b).unwrap();
        assert_abs_diff_eq!(
            adjusted_graph_rand_index_from_accuracy(&c).unwrap(),
            -0.5,
            epsilon = 1e-12
        );
        let w = Partition::whole(4);
        assert!(adjusted_graph_rand_index(&g, &w, &w)
            .unwrap_err()
            .is_degenerate());
        let wc = edge_counts(&g, &w, &w).unwrap();
        assert!(adjusted_graph_rand_index_from_accuracy(&wc)
            .unwrap_err()
            .is_degenerate());
        // APC_min degenerates as soon as one side is all-ones
        assert!(adjusted_graph_pc(&g, &w, &a, MeanKind::Min)
            .unwrap_err()
            .is_degenerate());
    }
}
