//! Graphs, vertex partitions and binary edge classifications.
//!
//! A [`Graph`] fixes a lexicographic ordering of its edges at construction.
//! That ordering is the index space of every [`EdgeClassification`]: bit `i`
//! always refers to `graph.edges()[i]`.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::union_find::DisjointSets;
use crate::{Error, Result};

/// Simple undirected graph with a stable edge ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `(neighbor, edge index)` per vertex, in edge order.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph from pairs given in any orientation.
    ///
    /// Pairs are normalized to `u < v` and sorted lexicographically. Self-loops,
    /// duplicates and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, i));
            adjacency[v].push((u, i));
        }
        Ok(Graph {
            n,
            edges,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, pairs).expect("complete graph pairs are valid")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path pairs are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbor, edge index)` pairs incident to `v`.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Connected components of the whole graph.
    pub fn components(&self) -> Partition {
        let all = EdgeClassification::ones(self.edge_count());
        induced_partition(self, &all).expect("classification matches graph")
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().part_count() == 1
    }
}

/// Assignment of every vertex to exactly one part.
///
/// Part identifiers are canonical: `0..k` in order of first appearance along
/// the vertex order, so two partitions are equal as set partitions iff their
/// label sequences are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
}

impl Partition {
    /// Canonicalizes arbitrary per-vertex labels.
    pub fn from_labels<T: Hash + Eq>(labels: &[T]) -> Self {
        let mut ids: HashMap<&T, usize> = HashMap::new();
        let labels: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        let k = ids.len();
        Partition { labels, k }
    }

    /// Builds a partition of `0..n` from explicit parts. Every vertex must
    /// occur in exactly one part.
    pub fn from_parts(n: usize, parts: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (id, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if labels[v] != usize::MAX {
                    return Err(Error::invalid(format!("vertex {v} appears in two parts")));
                }
                labels[v] = id;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::invalid(format!("vertex {v} is not in any part")));
        }
        Ok(Partition::from_labels(&labels))
    }

    /// Consecutive blocks of the given sizes: `{0..s0}, {s0..s0+s1}, ...`.
    pub fn from_sizes(sizes: &[usize]) -> Self {
        let labels: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(id, &s)| std::iter::repeat_n(id, s))
            .collect();
        Partition::from_labels(&labels)
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
            k: n,
        }
    }

    /// All vertices in one part.
    pub fn whole(n: usize) -> Self {
        Partition {
            labels: vec![0; n],
            k: usize::from(n > 0),
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn part_count(&self) -> usize {
        self.k
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    /// Vertex lists per part, each sorted ascending.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (v, &l) in self.labels.iter().enumerate() {
            parts[l].push(v);
        }
        parts
    }

    /// Number of unordered vertex pairs sharing a part (`|P_A|`).
    pub fn intra_pair_count(&self) -> u64 {
        self.part_sizes()
            .into_iter()
            .map(|s| choose2(s as u64))
            .sum()
    }

    /// Number of unordered vertex pairs split across parts.
    pub fn inter_pair_count(&self) -> u64 {
        choose2(self.len() as u64) - self.intra_pair_count()
    }

    /// True if every part of `self` lies inside a part of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        is_refinement(self, coarser)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts()
            .iter()
            .map(|p| {
                let vs: Vec<String> = p.iter().map(usize::to_string).collect();
                format!("{{{}}}", vs.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Binary vector over the edges of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeClassification {
    bits: Vec<bool>,
}

impl EdgeClassification {
    pub fn new(bits: Vec<bool>) -> Self {
        EdgeClassification { bits }
    }

    pub fn zeros(len: usize) -> Self {
        EdgeClassification {
            bits: vec![false; len],
        }
    }

    pub fn ones(len: usize) -> Self {
        EdgeClassification {
            bits: vec![true; len],
        }
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse_bits(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::invalid(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(EdgeClassification::new)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// L1 norm: number of one-bits.
    pub fn norm(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Elementwise `self <= other`.
    pub fn is_dominated_by(&self, other: &EdgeClassification) -> bool {
        self.len() == other.len() && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn one_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }
}

impl fmt::Display for EdgeClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn check_partition(g: &Graph, a: &Partition) -> Result<()> {
    if a.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: g.vertex_count(),
            found: a.len(),
        });
    }
    Ok(())
}

fn check_classification(g: &Graph, b: &EdgeClassification) -> Result<()> {
    if b.len() != g.edge_count() {
        return Err(Error::LengthMismatch {
            expected: g.edge_count(),
            found: b.len(),
        });
    }
    Ok(())
}

/// `b_A`: bit `i` is one iff both endpoints of edge `i` share a part of `a`.
/// Defined for any partition, connected or not.
pub fn edge_classification(g: &Graph, a: &Partition) -> Result<EdgeClassification> {
    check_partition(g, a)?;
    let bits = g
        .edges()
        .iter()
        .map(|&(u, v)| a.label(u) == a.label(v))
        .collect();
    Ok(EdgeClassification::new(bits))
}

/// Connected components of the subgraph `(V, b⁻¹(1))`.
pub fn induced_partition(g: &Graph, b: &EdgeClassification) -> Result<Partition> {
    check_classification(g, b)?;
    let mut sets = DisjointSets::new(g.vertex_count());
    for i in b.one_indices() {
        let (u, v) = g.edges()[i];
        sets.union(u, v);
    }
    let k = sets.set_count();
    Ok(Partition {
        labels: sets.labels(),
        k,
    })
}

/// The maximal member of the `≡_G` class of `b`: ones exactly on the edges
/// internal to the components of `induced_partition(g, b)`.
pub fn class_representative(g: &Graph, b: &EdgeClassification) -> Result<EdgeClassification> {
    let components = induced_partition(g, b)?;
    edge_classification(g, &components)
}

/// True iff every part of `a` induces a connected subgraph of `g`.
pub fn is_connected_partition(g: &Graph, a: &Partition) -> Result<bool> {
    let b = edge_classification(g, a)?;
    // components of b refine a, so equal counts means equal partitions
    Ok(induced_partition(g, &b)?.part_count() == a.part_count())
}

/// True iff `finer` is a refinement of (or equal to) `coarser`.
pub fn is_refinement(finer: &Partition, coarser: &Partition) -> Result<bool> {
    if finer.len() != coarser.len() {
        return Err(Error::LengthMismatch {
            expected: coarser.len(),
            found: finer.len(),
        });
    }
    let mut image = vec![usize::MAX; finer.part_count()];
    for (&f, &c) in finer.labels().iter().zip(coarser.labels()) {
        if image[f] == usize::MAX {
            image[f] = c;
        } else if image[f] != c {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn intra_pair_count(a: &Partition) -> u64 {
    a.intra_pair_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(n: usize, p: &[&[usize]]) -> Partition {
        let owned: Vec<Vec<usize>> = p.iter().map(|x| x.to_vec()).collect();
        Partition::from_parts(n, &owned).unwrap()
    }

    fn bits(s: &str) -> EdgeClassification {
        EdgeClassification::parse_bits(s).unwrap()
    }

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn build_normalizes_and_sorts() {
        assert_eq!(triangle().edges(), &[(0, 1), (0, 2), (1, 2)]);
        let g = Graph::new(4, [(1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.vertex_count(), 4);
    }

    #[test]
    fn build_errors() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn classification_examples() {
        let t = triangle();
        assert_eq!(
            edge_classification(&t, &Partition::whole(3)).unwrap(),
            bits("111")
        );
        assert_eq!(
            edge_classification(&t, &Partition::singletons(3)).unwrap(),
            bits("000")
        );
        let p = Graph::path(4);
        assert_eq!(
            edge_classification(&p, &parts(4, &[&[0, 1], &[2, 3]])).unwrap(),
            bits("101")
        );
        assert!(matches!(
            edge_classification(&p, &Partition::whole(3)),
            Err(Error::LengthMismatch {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn induced_partition_examples() {
        let t = triangle();
        assert_eq!(
            induced_partition(&t, &bits("100")).unwrap(),
            parts(3, &[&[0, 1], &[2]])
        );
        assert_eq!(
            induced_partition(&t, &bits("110")).unwrap(),
            Partition::whole(3)
        );
        assert_eq!(
            induced_partition(&t, &bits("000")).unwrap(),
            Partition::singletons(3)
        );
        assert!(induced_partition(&t, &bits("10")).is_err());
    }

    #[test]
    fn representative_examples() {
        assert_eq!(
            class_representative(&triangle(), &bits("110")).unwrap(),
            bits("111")
        );
        assert_eq!(
            class_representative(&Graph::path(3), &bits("11")).unwrap(),
            bits("11")
        );
    }

    #[test]
    fn connected_partition_examples() {
        let p = Graph::path(3);
        assert!(!is_connected_partition(&p, &parts(3, &[&[0, 2], &[1]])).unwrap());
        assert!(is_connected_partition(&p, &parts(3, &[&[0, 1], &[2]])).unwrap());
        assert!(is_connected_partition(&p, &Partition::singletons(3)).unwrap());
    }

    #[test]
    fn refinement_examples() {
        let a = parts(4, &[&[0, 1], &[2, 3]]);
        assert!(is_refinement(&parts(4, &[&[0], &[1], &[2, 3]]), &a).unwrap());
        assert!(!is_refinement(&a, &parts(4, &[&[0, 2], &[1, 3]])).unwrap());
        assert!(is_refinement(&a, &a).unwrap());
        assert!(is_refinement(&a, &Partition::whole(3)).is_err());
    }

    #[test]
    fn intra_pairs() {
        assert_eq!(intra_pair_count(&Partition::whole(3)), 3);
        assert_eq!(intra_pair_count(&Partition::singletons(5)), 0);
        assert_eq!(intra_pair_count(&parts(4, &[&[0, 1], &[2, 3]])), 2);
        assert_eq!(parts(4, &[&[0, 1], &[2, 3]]).inter_pair_count(), 4);
    }

    #[test]
    fn canonical_labels() {
        let p = Partition::from_labels(&[5, 5, 9, 2, 9]);
        assert_eq!(p.labels(), &[0, 0, 1, 2, 1]);
        assert_eq!(p.part_count(), 3);
        assert_eq!(p.to_string(), "{{0,1},{2,4},{3}}");
        assert_eq!(Partition::from_sizes(&[2, 1]).labels(), &[0, 0, 1]);
        assert_eq!(Partition::whole(0).part_count(), 0);
    }

    #[test]
    fn empty_edge_set() {
        let g = Graph::empty(3);
        let b = edge_classification(&g, &Partition::whole(3)).unwrap();
        assert!(b.is_empty());
        assert_eq!(induced_partition(&g, &b).unwrap(), Partition::singletons(3));
        assert!(!g.is_connected());
        assert!(Graph::empty(1).is_connected());
    }
}
