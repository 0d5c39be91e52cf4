//! Seeded random graphs and random partitions.
//!
//! Every generator takes a [`Seed`] and is a pure function of its inputs and
//! that seed. Sampling without replacement runs a sparse partial
//! Fisher-Yates shuffle over an implicit index space, so vertex pairs are
//! never materialized.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{choose2, induced_partition, EdgeClassification, Graph, Partition};
use crate::union_find::DisjointSets;
use crate::{Error, Result};

pub type SeededRng = ChaCha8Rng;

/// A master seed from which independent per-trial streams are derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(u64);

impl Seed {
    pub const fn new(master: u64) -> Self {
        Seed(master)
    }

    pub fn master(self) -> u64 {
        self.0
    }

    /// Child seed for stream `index`. For a fixed parent the map
    /// `index -> child` is a bijection, so distinct indices never collide.
    pub fn stream(self, index: u64) -> Seed {
        Seed(avalanche(
            self.0 ^ avalanche(index.wrapping_add(0x9e37_79b9_7f4a_7c15)),
        ))
    }

    pub fn rng(self) -> SeededRng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for Seed {
    fn from(master: u64) -> Self {
        Seed(master)
    }
}

/// splitmix64 finalizer; a bijection on `u64`.
fn avalanche(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `amount` distinct values drawn uniformly from `0..population`, in draw
/// order.
pub fn sample_indices<R: Rng + ?Sized>(rng: &mut R, population: u64, amount: usize) -> Vec<u64> {
    assert!(amount as u64 <= population, "sample larger than population");
    let mut displaced: HashMap<u64, u64> = HashMap::with_capacity(2 * amount);
    let mut out = Vec::with_capacity(amount);
    for i in 0..amount as u64 {
        let j = rng.random_range(i..population);
        let picked = displaced.get(&j).copied().unwrap_or(j);
        let head = displaced.get(&i).copied().unwrap_or(i);
        displaced.insert(j, head);
        out.push(picked);
    }
    out
}

/// Inverse of the colex rank `t = j(j-1)/2 + i` over pairs `i < j`.
fn unrank_pair(t: u64) -> (u64, u64) {
    let mut j = ((1.0 + (1.0 + 8.0 * t as f64).sqrt()) / 2.0) as u64;
    while choose2(j) > t {
        j -= 1;
    }
    while choose2(j + 1) <= t {
        j += 1;
    }
    (t - choose2(j), j)
}

/// Ground truth and edge budget of a planted-partition graph: `intra_edges`
/// placed uniformly among pairs sharing a part, `inter_edges` among pairs
/// split across parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedSpec {
    ground_truth: Partition,
    intra_edges: u64,
    inter_edges: u64,
}

impl PlantedSpec {
    pub fn new(ground_truth: Partition, intra_edges: u64, inter_edges: u64) -> Result<Self> {
        let (intra, inter) = (
            ground_truth.intra_pair_count(),
            ground_truth.inter_pair_count(),
        );
        if intra_edges > intra {
            return Err(Error::invalid(format!(
                "k1 = {intra_edges} exceeds the {intra} intra-part pairs"
            )));
        }
        if inter_edges > inter {
            return Err(Error::invalid(format!(
                "k2 = {inter_edges} exceeds the {inter} inter-part pairs"
            )));
        }
        Ok(PlantedSpec {
            ground_truth,
            intra_edges,
            inter_edges,
        })
    }

    /// Edge counts `k1 = round(p |P_A|)`, `k2 = round(q |P̄_A|)`.
    pub fn from_densities(ground_truth: Partition, p: f64, q: f64) -> Result<Self> {
        for (name, x) in [("p", p), ("q", q)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::invalid(format!("{name} = {x} is not in [0, 1]")));
            }
        }
        let k1 = (p * ground_truth.intra_pair_count() as f64).round() as u64;
        let k2 = (q * ground_truth.inter_pair_count() as f64).round() as u64;
        PlantedSpec::new(ground_truth, k1, k2)
    }

    pub fn ground_truth(&self) -> &Partition {
        &self.ground_truth
    }

    pub fn intra_edges(&self) -> u64 {
        self.intra_edges
    }

    pub fn inter_edges(&self) -> u64 {
        self.inter_edges
    }

    /// Realized intra-part density `k1 / |P_A|` (0 when there are no such pairs).
    pub fn p(&self) -> f64 {
        ratio(self.intra_edges, self.ground_truth.intra_pair_count())
    }

    /// Realized inter-part density `k2 / |P̄_A|`.
    pub fn q(&self) -> f64 {
        ratio(self.inter_edges, self.ground_truth.inter_pair_count())
    }
}

fn ratio(x: u64, y: u64) -> f64 {
    if y == 0 {
        0.0
    } else {
        x as f64 / y as f64
    }
}

/// Unranks intra-part pairs: blocks of `C(s, 2)` indices, one per part.
struct IntraPairs {
    parts: Vec<Vec<usize>>,
    offsets: Vec<u64>,
}

impl IntraPairs {
    fn new(p: &Partition) -> Self {
        let parts = p.parts();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for part in &parts {
            offsets.push(acc);
            acc += choose2(part.len() as u64);
        }
        IntraPairs { parts, offsets }
    }

    fn pair(&self, t: u64) -> (usize, usize) {
        let part = self.offsets.partition_point(|&o| o <= t) - 1;
        let (i, j) = unrank_pair(t - self.offsets[part]);
        let vs = &self.parts[part];
        (vs[i as usize], vs[j as usize])
    }
}

/// Unranks inter-part pairs. Vertices are laid out part by part; the vertex
/// at position `pos` pairs with every position at or after the end of its
/// own block.
struct InterPairs {
    order: Vec<usize>,
    block_end: Vec<usize>,
    prefix: Vec<u64>,
}

impl InterPairs {
    fn new(p: &Partition) -> Self {
        let n = p.len();
        let mut order = Vec::with_capacity(n);
        let mut block_end = Vec::with_capacity(n);
        for part in p.parts() {
            let end = order.len() + part.len();
            block_end.extend(std::iter::repeat_n(end, part.len()));
            order.extend(part);
        }
        let mut prefix = Vec::with_capacity(n);
        let mut acc = 0;
        for &end in &block_end {
            prefix.push(acc);
            acc += (n - end) as u64;
        }
        InterPairs {
            order,
            block_end,
            prefix,
        }
    }

    fn pair(&self, t: u64) -> (usize, usize) {
        let pos = self.prefix.partition_point(|&x| x <= t) - 1;
        let other = self.block_end[pos] + (t - self.prefix[pos]) as usize;
        (self.order[pos], self.order[other])
    }
}

/// Draws a graph from the planted-partition model.
pub fn planted_partition_graph(spec: &PlantedSpec, seed: Seed) -> Graph {
    let mut rng = seed.rng();
    let truth = &spec.ground_truth;
    let intra = IntraPairs::new(truth);
    let inter = InterPairs::new(truth);
    let mut pairs = Vec::with_capacity((spec.intra_edges + spec.inter_edges) as usize);
    let intra_total = truth.intra_pair_count();
    let inter_total = truth.inter_pair_count();
    for t in sample_indices(&mut rng, intra_total, spec.intra_edges as usize) {
        pairs.push(intra.pair(t));
    }
    for t in sample_indices(&mut rng, inter_total, spec.inter_edges as usize) {
        pairs.push(inter.pair(t));
    }
    Graph::new(truth.len(), pairs).expect("sampled pairs are distinct and valid")
}

/// `m` edges drawn uniformly without replacement from all vertex pairs.
pub fn erdos_renyi_graph(n: usize, m: u64, seed: Seed) -> Result<Graph> {
    let total = choose2(n as u64);
    if m > total {
        return Err(Error::invalid(format!(
            "m = {m} exceeds the {total} vertex pairs of {n} vertices"
        )));
    }
    let mut rng = seed.rng();
    let pairs = sample_indices(&mut rng, total, m as usize)
        .into_iter()
        .map(|t| {
            let (i, j) = unrank_pair(t);
            (i as usize, j as usize)
        });
    Graph::new(n, pairs)
}

/// First connected draw among the streams `seed.stream(0..attempts)`.
pub fn connected_erdos_renyi_graph(n: usize, m: u64, seed: Seed, attempts: u64) -> Result<Graph> {
    for attempt in 0..attempts {
        let g = erdos_renyi_graph(n, m, seed.stream(attempt))?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::invalid(format!(
        "no connected G(n = {n}, m = {m}) within {attempts} attempts"
    )))
}

/// Uniform random labeled tree, decoded from a random Prüfer sequence.
pub fn random_tree(n: usize, seed: Seed) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let mut rng = seed.rng();
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &code {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut pairs = Vec::with_capacity(n - 1);
    for &v in &code {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        pairs.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(u) = leaves.pop().expect("two leaves remain");
    let Reverse(w) = leaves.pop().expect("two leaves remain");
    pairs.push((u, w));
    Graph::new(n, pairs).expect("Prüfer decoding yields a simple tree")
}

/// Edge indices of a depth-first spanning tree, from a uniform root with
/// neighbors visited in uniformly shuffled order. Indices are listed in
/// discovery order.
pub fn dfs_spanning_tree(g: &Graph, seed: Seed) -> Result<Vec<usize>> {
    dfs_spanning_tree_with(g, &mut seed.rng())
}

fn dfs_spanning_tree_with<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    struct Frame {
        next: usize,
        neighbors: Vec<(usize, usize)>,
    }
    let frame = |v: usize, rng: &mut R| {
        let mut neighbors = g.neighbors(v).to_vec();
        neighbors.shuffle(rng);
        Frame { next: 0, neighbors }
    };
    let root = rng.random_range(0..n);
    let mut visited = vec![false; n];
    visited[root] = true;
    let mut tree = Vec::with_capacity(n - 1);
    let mut stack = vec![frame(root, rng)];
    while let Some(top) = stack.last_mut() {
        let Some(&(w, e)) = top.neighbors.get(top.next) else {
            stack.pop();
            continue;
        };
        top.next += 1;
        if !visited[w] {
            visited[w] = true;
            tree.push(e);
            let f = frame(w, rng);
            stack.push(f);
        }
    }
    if tree.len() + 1 != n {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}

/// Random connected partition with exactly `k` parts: a DFS spanning tree
/// with `k - 1` uniformly chosen edges removed.
pub fn random_partition_process1(g: &Graph, k: usize, seed: Seed) -> Result<Partition> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("k = {k} is not in [1, {n}]")));
    }
    let mut rng = seed.rng();
    let tree = dfs_spanning_tree_with(g, &mut rng)?;
    let mut keep = vec![true; tree.len()];
    for i in sample_indices(&mut rng, tree.len() as u64, k - 1) {
        keep[i as usize] = false;
    }
    let mut bits = vec![false; g.edge_count()];
    for (&e, _) in tree.iter().zip(&keep).filter(|(_, &kept)| kept) {
        bits[e] = true;
    }
    induced_partition(g, &EdgeClassification::new(bits))
}

/// Random connected partition from `k` uniformly chosen class-one edges.
pub fn random_partition_process2(g: &Graph, k: usize, seed: Seed) -> Result<Partition> {
    let m = g.edge_count();
    if k > m {
        return Err(Error::invalid(format!("k = {k} exceeds the {m} edges")));
    }
    let mut rng = seed.rng();
    let mut bits = vec![false; m];
    for i in sample_indices(&mut rng, m as u64, k) {
        bits[i as usize] = true;
    }
    // the class representative induces the same components as the sample
    induced_partition(g, &EdgeClassification::new(bits))
}

/// Merges uniformly chosen pairs of parts until `target_k` parts remain.
pub fn random_coarsening(a: &Partition, target_k: usize, seed: Seed) -> Result<Partition> {
    let k = a.part_count();
    if target_k == 0 || target_k >= k {
        return Err(Error::invalid(format!(
            "coarsening target {target_k} must be in [1, {k})"
        )));
    }
    let mut rng = seed.rng();
    let mut groups = DisjointSets::new(k);
    let mut live: Vec<usize> = (0..k).collect();
    while live.len() > target_k {
        let i = rng.random_range(0..live.len());
        let mut j = rng.random_range(0..live.len() - 1);
        if j >= i {
            j += 1;
        }
        groups.union(live[i], live[j]);
        live.swap_remove(i.max(j));
    }
    let labels: Vec<usize> = a.labels().iter().map(|&l| groups.find(l)).collect();
    Ok(Partition::from_labels(&labels))
}

/// Splits uniformly chosen parts (of size at least two) into random balanced
/// halves until `target_k` parts exist.
pub fn random_refinement(a: &Partition, target_k: usize, seed: Seed) -> Result<Partition> {
    let (k, n) = (a.part_count(), a.len());
    if target_k <= k || target_k > n {
        return Err(Error::invalid(format!(
            "refinement target {target_k} must be in ({k}, {n}]"
        )));
    }
    let mut rng = seed.rng();
    let mut parts = a.parts();
    while parts.len() < target_k {
        let splittable: Vec<usize> = (0..parts.len()).filter(|&i| parts[i].len() >= 2).collect();
        let chosen = splittable[rng.random_range(0..splittable.len())];
        let mut vs = std::mem::take(&mut parts[chosen]);
        vs.shuffle(&mut rng);
        let half = vs.split_off(vs.len() / 2);
        parts[chosen] = vs;
        parts.push(half);
    }
    Partition::from_parts(n, &parts)
}
