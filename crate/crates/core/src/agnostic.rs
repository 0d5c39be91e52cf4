//! Vertex-pair (graph-agnostic) comparison measures.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::graph::{choose2, Partition};
use crate::{Error, Result};

/// The mean used as the normalizer of the `PC_f` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MeanKind {
    /// `(x + y) / 2`; F-score.
    Arithmetic,
    /// `sqrt(x * y)`; cosine.
    Geometric,
    /// Simpson.
    Min,
    /// Braun & Banquet.
    Max,
}

impl MeanKind {
    pub const ALL: [MeanKind; 4] = [
        MeanKind::Arithmetic,
        MeanKind::Geometric,
        MeanKind::Min,
        MeanKind::Max,
    ];

    pub fn apply(self, x: f64, y: f64) -> f64 {
        match self {
            MeanKind::Arithmetic => 0.5 * (x + y),
            MeanKind::Geometric => (x * y).sqrt(),
            MeanKind::Min => x.min(y),
            MeanKind::Max => x.max(y),
        }
    }

    /// Exact test for `f(x, y) == 0` on integer counts.
    pub fn vanishes(self, x: u64, y: u64) -> bool {
        match self {
            MeanKind::Arithmetic | MeanKind::Max => x == 0 && y == 0,
            MeanKind::Geometric | MeanKind::Min => x == 0 || y == 0,
        }
    }

    /// Exact test for `f(x, y) == x * y / total`, the vanishing denominator
    /// of the adjusted measures.
    pub fn equals_product_over(self, x: u64, y: u64, total: u64) -> bool {
        let (x, y, t) = (u128::from(x), u128::from(y), u128::from(total));
        match self {
            MeanKind::Arithmetic => (x + y) * t == 2 * x * y,
            MeanKind::Geometric => x * y == 0 || x * y == t * t,
            MeanKind::Min => x.min(y) * t == x * y,
            MeanKind::Max => x.max(y) * t == x * y,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            MeanKind::Arithmetic => "mn",
            MeanKind::Geometric => "gmn",
            MeanKind::Min => "min",
            MeanKind::Max => "max",
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for MeanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mn" | "arithmetic" => Ok(MeanKind::Arithmetic),
            "gmn" | "geometric" => Ok(MeanKind::Geometric),
            "min" => Ok(MeanKind::Min),
            "max" => Ok(MeanKind::Max),
            other => Err(Error::invalid(format!("unknown mean kind {other:?}"))),
        }
    }
}

/// Sparse contingency table `n_ij = |A_i ∩ B_j|` with its margins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    /// Nonzero cells `(i, j, n_ij)`, sorted by `(i, j)`.
    cells: Vec<(usize, usize, u64)>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    n: u64,
}

impl ContingencyTable {
    pub fn rows(&self) -> usize {
        self.row_sums.len()
    }

    pub fn cols(&self) -> usize {
        self.col_sums.len()
    }

    pub fn row_sums(&self) -> &[u64] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[u64] {
        &self.col_sums
    }

    pub fn total(&self) -> u64 {
        self.n
    }

    pub fn cells(&self) -> &[(usize, usize, u64)] {
        &self.cells
    }

    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.cells
            .binary_search_by(|&(ci, cj, _)| (ci, cj).cmp(&(i, j)))
            .map(|idx| self.cells[idx].2)
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut dense = vec![vec![0; self.cols()]; self.rows()];
        for &(i, j, c) in &self.cells {
            dense[i][j] = c;
        }
        dense
    }

    pub fn transpose(&self) -> ContingencyTable {
        let mut cells: Vec<_> = self.cells.iter().map(|&(i, j, c)| (j, i, c)).collect();
        cells.sort_unstable();
        ContingencyTable {
            cells,
            row_sums: self.col_sums.clone(),
            col_sums: self.row_sums.clone(),
            n: self.n,
        }
    }
}

fn check_lengths(a: &Partition, b: &Partition) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

pub fn contingency_table(a: &Partition, b: &Partition) -> Result<ContingencyTable> {
    check_lengths(a, b)?;
    let mut row_sums = vec![0u64; a.part_count()];
    let mut col_sums = vec![0u64; b.part_count()];
    let mut counts: HashMap<(usize, usize), u64> = HashMap::new();
    for (&i, &j) in a.labels().iter().zip(b.labels()) {
        row_sums[i] += 1;
        col_sums[j] += 1;
        *counts.entry((i, j)).or_insert(0) += 1;
    }
    let mut cells: Vec<_> = counts.into_iter().map(|((i, j), c)| (i, j, c)).collect();
    cells.sort_unstable();
    Ok(ContingencyTable {
        cells,
        row_sums,
        col_sums,
        n: a.len() as u64,
    })
}

/// Pair counts over all `C(n, 2)` unordered vertex pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCounts {
    /// Together in both partitions.
    pub n11: u64,
    /// Together in A only.
    pub n10: u64,
    /// Together in B only.
    pub n01: u64,
    pub n00: u64,
}

impl PairCounts {
    pub fn total(&self) -> u64 {
        self.n11 + self.n10 + self.n01 + self.n00
    }

    /// `|P_A|`
    pub fn pairs_a(&self) -> u64 {
        self.n11 + self.n10
    }

    /// `|P_B|`
    pub fn pairs_b(&self) -> u64 {
        self.n11 + self.n01
    }

    pub fn rand_index(&self) -> Result<f64> {
        let total = self.total();
        if total == 0 {
            return Err(Error::degenerate("Rand index needs at least two vertices"));
        }
        Ok((self.n11 + self.n00) as f64 / total as f64)
    }

    pub fn adjusted_rand_index(&self) -> Result<f64> {
        let (pa, pb, total) = (self.pairs_a(), self.pairs_b(), self.total());
        if total == 0 {
            return Err(Error::degenerate("ARI needs at least two vertices"));
        }
        if MeanKind::Arithmetic.equals_product_over(pa, pb, total) {
            return Err(Error::degenerate(
                "ARI denominator vanishes (both partitions trivial)",
            ));
        }
        let (pa, pb) = (pa as f64, pb as f64);
        let expected = pa * pb / total as f64;
        Ok((self.n11 as f64 - expected) / (0.5 * (pa + pb) - expected))
    }

    pub fn pc(&self, f: MeanKind) -> Result<f64> {
        let (pa, pb) = (self.pairs_a(), self.pairs_b());
        if f.vanishes(pa, pb) {
            return Err(Error::degenerate(format!(
                "PC_{f} denominator vanishes (|P_A| = {pa}, |P_B| = {pb})"
            )));
        }
        Ok(self.n11 as f64 / f.apply(pa as f64, pb as f64))
    }
}

pub fn pair_counts(t: &ContingencyTable) -> PairCounts {
    let n11: u64 = t.cells.iter().map(|&(_, _, c)| choose2(c)).sum();
    let pa: u64 = t.row_sums.iter().map(|&s| choose2(s)).sum();
    let pb: u64 = t.col_sums.iter().map(|&s| choose2(s)).sum();
    let n10 = pa - n11;
    let n01 = pb - n11;
    PairCounts {
        n11,
        n10,
        n01,
        n00: choose2(t.n) - n11 - n10 - n01,
    }
}

fn pairs_of(a: &Partition, b: &Partition) -> Result<PairCounts> {
    Ok(pair_counts(&contingency_table(a, b)?))
}

pub fn rand_index(a: &Partition, b: &Partition) -> Result<f64> {
    pairs_of(a, b)?.rand_index()
}

/// Permutation-model adjusted Rand index.
pub fn adjusted_rand_index(a: &Partition, b: &Partition) -> Result<f64> {
    pairs_of(a, b)?.adjusted_rand_index()
}

/// `N11 / f(|P_A|, |P_B|)`.
pub fn pc(a: &Partition, b: &Partition, f: MeanKind) -> Result<f64> {
    pairs_of(a, b)?.pc(f)
}

fn entropy_of(counts: &[u64], n: u64) -> f64 {
    let n = n as f64;
    -counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * p.ln()
        })
        .sum::<f64>()
}

/// Shannon entropy (natural log) of the part-size distribution.
pub fn entropy(a: &Partition) -> f64 {
    let sizes: Vec<u64> = a.part_sizes().into_iter().map(|s| s as u64).collect();
    entropy_of(&sizes, a.len() as u64)
}

impl ContingencyTable {
    pub fn entropy_rows(&self) -> f64 {
        entropy_of(&self.row_sums, self.n)
    }

    pub fn entropy_cols(&self) -> f64 {
        entropy_of(&self.col_sums, self.n)
    }

    pub fn mutual_information(&self) -> f64 {
        let n = self.n as f64;
        let mi: f64 = self
            .cells
            .iter()
            .map(|&(i, j, c)| {
                let c = c as f64;
                let (a, b) = (self.row_sums[i] as f64, self.col_sums[j] as f64);
                c / n * (n * c / (a * b)).ln()
            })
            .sum();
        // rounding can leave a tiny negative value for independent tables
        mi.max(0.0)
    }

    /// Exact `E[MI]` under the hypergeometric permutation model with fixed
    /// margins.
    pub fn expected_mutual_information(&self) -> f64 {
        let n = self.n;
        if n == 0 {
            return 0.0;
        }
        let lf = LogFactorials::new(n as usize);
        let nf = n as f64;
        let mut emi = 0.0;
        for &a in &self.row_sums {
            for &b in &self.col_sums {
                let lo = (a + b).saturating_sub(n).max(1);
                let hi = a.min(b);
                // log of the hypergeometric normalization shared by every nij
                let base = lf.get(a) + lf.get(b) + lf.get(n - a) + lf.get(n - b) - lf.get(n);
                for nij in lo..=hi {
                    let x = nij as f64;
                    let log_p = base
                        - lf.get(nij)
                        - lf.get(a - nij)
                        - lf.get(b - nij)
                        - lf.get(n + nij - a - b);
                    emi += x / nf * (nf * x / (a as f64 * b as f64)).ln() * log_p.exp();
                }
            }
        }
        emi
    }

    /// Adjusted mutual information with max-entropy normalization.
    pub fn adjusted_mutual_information(&self) -> Result<f64> {
        let mi = self.mutual_information();
        let emi = self.expected_mutual_information();
        let h = self.entropy_rows().max(self.entropy_cols());
        let denom = h - emi;
        if denom.abs() <= 1e-12 * h.max(1.0) {
            return Err(Error::degenerate(
                "AMI denominator vanishes (max entropy equals expected MI)",
            ));
        }
        Ok((mi - emi) / denom)
    }
}

struct LogFactorials(Vec<f64>);

impl LogFactorials {
    fn new(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(0.0);
        let mut acc = 0.0;
        for i in 1..=n {
            acc += (i as f64).ln();
            table.push(acc);
        }
        LogFactorials(table)
    }

    fn get(&self, k: u64) -> f64 {
        self.0[k as usize]
    }
}

pub fn mutual_information(a: &Partition, b: &Partition) -> Result<f64> {
    Ok(contingency_table(a, b)?.mutual_information())
}

pub fn expected_mutual_information(a: &Partition, b: &Partition) -> Result<f64> {
    Ok(contingency_table(a, b)?.expected_mutual_information())
}

pub fn ami(a: &Partition, b: &Partition) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::degenerate("AMI needs at least one vertex"));
    }
    contingency_table(a, b)?.adjusted_mutual_information()
}
