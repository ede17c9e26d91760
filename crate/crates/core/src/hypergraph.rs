//! Uniform hypergraphs and multi-hypergraphs with link and degree queries.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{invalid, Error, Result};
use crate::set::{combinations, Vertex, VertexSet};

/// An `r`-uniform hypergraph. Edges are kept in canonical lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RGraph {
    vertices: Vec<Vertex>,
    r: usize,
    edges: BTreeSet<VertexSet>,
}

impl RGraph {
    /// Empty `r`-graph on vertices `0..n`.
    pub fn new(n: usize, r: usize) -> Self {
        RGraph::on_vertices((0..n as Vertex).collect(), r)
    }

    /// Empty `r`-graph on an explicit vertex set.
    pub fn on_vertices(mut vertices: Vec<Vertex>, r: usize) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        RGraph { vertices, r, edges: BTreeSet::new() }
    }

    pub fn from_edges<I>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        let mut g = RGraph::new(n, r);
        for e in edges {
            g.insert(e)?;
        }
        Ok(g)
    }

    /// The complete `r`-graph on `0..n`.
    pub fn complete(n: usize, r: usize) -> Self {
        let mut g = RGraph::new(n, r);
        let vs = g.vertices.clone();
        g.edges = combinations(&vs, r).collect();
        g
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn has_vertex(&self, x: Vertex) -> bool {
        self.vertices.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = &VertexSet> + '_ {
        self.edges.iter()
    }

    pub fn edge_set(&self) -> &BTreeSet<VertexSet> {
        &self.edges
    }

    pub fn contains(&self, e: &VertexSet) -> bool {
        self.edges.contains(e)
    }

    /// Inserts an edge, checking uniformity and vertex range.
    pub fn insert(&mut self, e: VertexSet) -> Result<bool> {
        if e.len() != self.r {
            return Err(invalid(format!("edge {e} has size {} but r = {}", e.len(), self.r)));
        }
        if let Some(x) = e.iter().find(|&x| !self.has_vertex(x)) {
            return Err(invalid(format!("edge {e} uses vertex {x} outside the vertex set")));
        }
        Ok(self.edges.insert(e))
    }

    pub fn remove(&mut self, e: &VertexSet) -> bool {
        self.edges.remove(e)
    }

    /// `self − other` on the same vertex set.
    pub fn minus(&self, other: &RGraph) -> RGraph {
        RGraph {
            vertices: self.vertices.clone(),
            r: self.r,
            edges: self.edges.difference(&other.edges).copied().collect(),
        }
    }

    /// Edges of both graphs; the vertex set is the union of both vertex sets.
    pub fn union(&self, other: &RGraph) -> RGraph {
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices);
        let mut g = RGraph::on_vertices(vertices, self.r);
        g.edges = self.edges.union(&other.edges).copied().collect();
        g
    }

    /// Edges lying inside the vertex set `u`.
    pub fn induced(&self, u: &[Vertex]) -> RGraph {
        let keep: BTreeSet<Vertex> = u.iter().copied().collect();
        let mut g = RGraph::on_vertices(u.to_vec(), self.r);
        g.edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|x| keep.contains(&x)))
            .copied()
            .collect();
        g
    }

    /// `|H(S)|`: the number of edges containing `s`.
    pub fn degree(&self, s: &VertexSet) -> usize {
        self.edges.iter().filter(|e| s.is_subset(e)).count()
    }

    /// The link graph `H(S)` on `V(H) ∖ S`, of uniformity `r − |S|`.
    pub fn link(&self, s: &VertexSet) -> Result<RGraph> {
        if s.len() > self.r {
            return Err(invalid(format!("link set {s} larger than r = {}", self.r)));
        }
        let vertices = self.vertices.iter().copied().filter(|&x| !s.contains(x)).collect();
        let mut g = RGraph::on_vertices(vertices, self.r - s.len());
        g.edges = self
            .edges
            .iter()
            .filter(|e| s.is_subset(e))
            .map(|e| e.difference(s))
            .collect();
        Ok(g)
    }

    /// `|H(S)|` for every `i`-set `S` that lies in at least one edge.
    pub fn degree_map(&self, i: usize) -> HashMap<VertexSet, u64> {
        let mut map = HashMap::new();
        for e in &self.edges {
            for s in e.subsets(i) {
                *map.entry(s).or_insert(0) += 1;
            }
        }
        map
    }

    /// `(δ_i, Δ_i)`: minimum and maximum of `|H(S)|` over all `i`-subsets of `V(H)`.
    pub fn degrees(&self, i: usize) -> Result<(u64, u64)> {
        if i >= self.r {
            return Err(invalid(format!("degree level {i} must be below r = {}", self.r)));
        }
        if i == 0 {
            let m = self.len() as u64;
            return Ok((m, m));
        }
        let map = self.degree_map(i);
        let max = map.values().copied().max().unwrap_or(0);
        let total = crate::set::binomial(self.n() as u64, i as u64);
        let min = if (map.len() as u64) < total {
            0
        } else {
            map.values().copied().min().unwrap_or(0)
        };
        Ok((min, max))
    }

    /// `Δ(H)`: the maximum `(r−1)`-degree (0 for the empty graph).
    pub fn max_degree(&self) -> u64 {
        if self.r == 0 {
            return self.len() as u64;
        }
        self.degree_map(self.r - 1).values().copied().max().unwrap_or(0)
    }

    /// Partitions the edges into matchings by greedy first-fit colouring in canonical order.
    ///
    /// Each edge meets at most `r(Δ_1 − 1)` others, so at most `r·n^(r−1)` matchings are used.
    pub fn matching_decomposition(&self) -> Vec<Vec<VertexSet>> {
        let mut classes: Vec<(Vec<VertexSet>, BTreeSet<Vertex>)> = Vec::new();
        for e in &self.edges {
            let slot = classes
                .iter()
                .position(|(_, used)| e.iter().all(|x| !used.contains(&x)));
            let idx = match slot {
                Some(i) => i,
                None => {
                    classes.push((Vec::new(), BTreeSet::new()));
                    classes.len() - 1
                }
            };
            classes[idx].0.push(*e);
            classes[idx].1.extend(e.iter());
        }
        classes.into_iter().map(|(m, _)| m).collect()
    }
}

/// A multi-`r`-graph: each `r`-set carries a positive multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiRGraph {
    vertices: Vec<Vertex>,
    r: usize,
    mult: BTreeMap<VertexSet, u64>,
}

impl MultiRGraph {
    pub fn new(n: usize, r: usize) -> Self {
        MultiRGraph::on_vertices((0..n as Vertex).collect(), r)
    }

    pub fn on_vertices(mut vertices: Vec<Vertex>, r: usize) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        MultiRGraph { vertices, r, mult: BTreeMap::new() }
    }

    /// Complete multi-`r`-graph on `0..n` with every multiplicity equal to `m`.
    pub fn complete(n: usize, r: usize, m: u64) -> Self {
        let mut g = MultiRGraph::new(n, r);
        if m > 0 {
            let vs = g.vertices.clone();
            g.mult = combinations(&vs, r).map(|e| (e, m)).collect();
        }
        g
    }

    pub fn from_graph(h: &RGraph) -> Self {
        let mut g = MultiRGraph::on_vertices(h.vertices().to_vec(), h.r());
        g.mult = h.edges().map(|e| (*e, 1)).collect();
        g
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Adds `k` copies of `e`.
    pub fn add(&mut self, e: VertexSet, k: u64) -> Result<()> {
        if e.len() != self.r {
            return Err(invalid(format!("edge {e} has size {} but r = {}", e.len(), self.r)));
        }
        if let Some(x) = e.iter().find(|x| self.vertices.binary_search(x).is_err()) {
            return Err(invalid(format!("edge {e} uses vertex {x} outside the vertex set")));
        }
        if k > 0 {
            *self.mult.entry(e).or_insert(0) += k;
        }
        Ok(())
    }

    /// Removes `k` copies of `e`; fails if fewer are present.
    pub fn subtract(&mut self, e: &VertexSet, k: u64) -> Result<()> {
        let have = self.multiplicity(e);
        if have < k {
            return Err(Error::InvalidInput {
                reason: "multiplicity would become negative".into(),
                witness: e.to_string(),
            });
        }
        if have == k {
            self.mult.remove(e);
        } else {
            self.mult.insert(*e, have - k);
        }
        Ok(())
    }

    pub fn multiplicity(&self, e: &VertexSet) -> u64 {
        self.mult.get(e).copied().unwrap_or(0)
    }

    /// Stored edges with their (positive) multiplicities in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&VertexSet, u64)> + '_ {
        self.mult.iter().map(|(e, &m)| (e, m))
    }

    pub fn support_len(&self) -> usize {
        self.mult.len()
    }

    /// Total number of edges counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// `|G(S)|` counted with multiplicity.
    pub fn degree(&self, s: &VertexSet) -> u64 {
        self.mult.iter().filter(|(e, _)| s.is_subset(e)).map(|(_, &m)| m).sum()
    }

    /// Multiplicity-weighted degrees of every `i`-set lying in some edge.
    pub fn degree_map(&self, i: usize) -> HashMap<VertexSet, u64> {
        let mut map = HashMap::new();
        for (e, &m) in &self.mult {
            for s in e.subsets(i) {
                *map.entry(s).or_insert(0) += m;
            }
        }
        map
    }

    pub fn link(&self, s: &VertexSet) -> Result<MultiRGraph> {
        if s.len() > self.r {
            return Err(invalid(format!("link set {s} larger than r = {}", self.r)));
        }
        let vertices = self.vertices.iter().copied().filter(|&x| !s.contains(x)).collect();
        let mut g = MultiRGraph::on_vertices(vertices, self.r - s.len());
        for (e, &m) in &self.mult {
            if s.is_subset(e) {
                *g.mult.entry(e.difference(s)).or_insert(0) += m;
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::binomial;

    #[test]
    fn link_of_complete_graph() {
        let k4 = RGraph::complete(4, 2);
        let l = k4.link(&VertexSet::of(&[0])).unwrap();
        assert_eq!(l.r(), 1);
        let got: Vec<_> = l.edges().copied().collect();
        assert_eq!(got, vec![VertexSet::of(&[1]), VertexSet::of(&[2]), VertexSet::of(&[3])]);
    }

    #[test]
    fn link_of_single_triple() {
        let h = RGraph::from_edges(3, 3, [VertexSet::of(&[0, 1, 2])]).unwrap();
        let l = h.link(&VertexSet::of(&[0, 1])).unwrap();
        assert_eq!(l.edges().copied().collect::<Vec<_>>(), vec![VertexSet::of(&[2])]);
    }

    #[test]
    fn link_of_k5_triples() {
        let l = RGraph::complete(5, 3).link(&VertexSet::of(&[0, 1])).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.vertices(), &[2, 3, 4]);
    }

    #[test]
    fn link_rejects_oversized_set() {
        let h = RGraph::complete(4, 2);
        assert!(h.link(&VertexSet::of(&[0, 1, 2])).is_err());
    }

    #[test]
    fn degree_examples() {
        let kn = RGraph::complete(7, 2);
        assert_eq!(kn.degrees(1).unwrap(), (6, 6));
        assert_eq!(kn.degrees(0).unwrap(), (21, 21));
        assert!(kn.degrees(2).is_err());

        let edges = [VertexSet::of(&[1, 2]), VertexSet::of(&[2, 3])];
        let with_isolated = RGraph::from_edges(4, 2, edges).unwrap();
        assert_eq!(with_isolated.degrees(1).unwrap(), (0, 2));
        let mut on_support = RGraph::on_vertices(vec![1, 2, 3], 2);
        for e in edges {
            on_support.insert(e).unwrap();
        }
        assert_eq!(on_support.degrees(1).unwrap(), (1, 2));
    }

    #[test]
    fn insert_validates() {
        let mut h = RGraph::new(4, 2);
        assert!(h.insert(VertexSet::of(&[0, 1, 2])).is_err());
        assert!(h.insert(VertexSet::of(&[0, 9])).is_err());
        assert!(h.insert(VertexSet::of(&[0, 1])).unwrap());
        assert!(!h.insert(VertexSet::of(&[0, 1])).unwrap());
    }

    #[test]
    fn matchings_of_small_graphs() {
        let k4 = RGraph::complete(4, 2);
        let ms = k4.matching_decomposition();
        assert!(ms.len() <= 2 * 4);
        assert_eq!(ms.iter().map(Vec::len).sum::<usize>(), 6);
        for m in &ms {
            for (i, a) in m.iter().enumerate() {
                for b in &m[i + 1..] {
                    assert!(a.is_disjoint(b));
                }
            }
        }
        let single = RGraph::from_edges(3, 2, [VertexSet::of(&[0, 1])]).unwrap();
        assert_eq!(single.matching_decomposition().len(), 1);
        assert!(RGraph::new(5, 2).matching_decomposition().is_empty());
    }

    #[test]
    fn multigraph_degrees_count_multiplicity() {
        let g = MultiRGraph::complete(3, 2, 2);
        assert_eq!(g.len(), 6);
        assert_eq!(g.degree(&VertexSet::of(&[0])), 4);
        let l = g.link(&VertexSet::of(&[0])).unwrap();
        assert_eq!(l.multiplicity(&VertexSet::of(&[1])), 2);
        assert_eq!(binomial(3, 2) * 2, g.len());
    }
}
