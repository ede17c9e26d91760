//! Downward-closed set systems with eagerly materialized levels.

use std::collections::{BTreeSet, HashMap};

use crate::error::{invalid, Result};
use crate::hypergraph::RGraph;
use crate::set::{combinations, Vertex, VertexSet, MAX_SET};

/// A complex `G` with levels `G^(0), …, G^(max_level)`.
///
/// The empty complex has an empty level 0; otherwise level 0 is `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    vertices: Vec<Vertex>,
    levels: Vec<BTreeSet<VertexSet>>,
}

impl Complex {
    /// The empty complex (no sets at all, not even `∅`).
    pub fn empty(vertices: Vec<Vertex>, max_level: usize) -> Self {
        let mut vertices = vertices;
        vertices.sort_unstable();
        vertices.dedup();
        Complex { vertices, levels: vec![BTreeSet::new(); max_level + 1] }
    }

    /// The complete complex `K_n` on `0..n` truncated at `max_level`.
    pub fn complete(n: usize, max_level: usize) -> Self {
        Complex::complete_on((0..n as Vertex).collect(), max_level)
    }

    pub fn complete_on(vertices: Vec<Vertex>, max_level: usize) -> Self {
        let mut g = Complex::empty(vertices, max_level.min(MAX_SET));
        for i in 0..g.levels.len() {
            g.levels[i] = combinations(&g.vertices, i).collect();
        }
        g
    }

    /// The clique complex `H^↔`: every set whose `r`-subsets all lie in `H`.
    pub fn induced(h: &RGraph, max_level: usize) -> Self {
        let r = h.r();
        let max_level = max_level.min(MAX_SET);
        let mut g = Complex::empty(h.vertices().to_vec(), max_level);
        for i in 0..=max_level.min(r.saturating_sub(1)) {
            g.levels[i] = combinations(&g.vertices, i).collect();
        }
        if r <= max_level {
            g.levels[r] = h.edge_set().clone();
            for i in r..max_level {
                g.levels[i + 1] = g.extend_level(i);
            }
        }
        g
    }

    /// The complex generated by `sets`: all subsets of members, on `vertices`.
    pub fn generated<'a, I>(vertices: Vec<Vertex>, sets: I, max_level: usize) -> Self
    where
        I: IntoIterator<Item = &'a VertexSet>,
    {
        let max_level = max_level.min(MAX_SET);
        let mut g = Complex::empty(vertices, max_level);
        for s in sets {
            for i in 0..=max_level.min(s.len()) {
                g.levels[i].extend(s.subsets(i));
            }
        }
        g
    }

    /// Sets of size `i + 1` all of whose `i`-subsets lie in level `i`.
    fn extend_level(&self, i: usize) -> BTreeSet<VertexSet> {
        let mut out = BTreeSet::new();
        let level = &self.levels[i];
        for e in level {
            let lo = e.max();
            for &v in &self.vertices {
                if lo.is_some_and(|m| v <= m) {
                    continue;
                }
                let Some(f) = e.with(v) else { continue };
                if f.subsets(i).all(|s| level.contains(&s)) {
                    out.insert(f);
                }
            }
        }
        out
    }

    /// Adds further levels by clique extension until `max_level` is reached.
    pub fn extend_to(&mut self, max_level: usize) {
        let max_level = max_level.min(MAX_SET);
        while self.max_level() < max_level {
            let i = self.max_level();
            let next = self.extend_level(i);
            self.levels.push(next);
        }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.levels[0].is_empty()
    }

    /// `G^(i)`; empty beyond the materialized range.
    pub fn level(&self, i: usize) -> &BTreeSet<VertexSet> {
        static EMPTY: BTreeSet<VertexSet> = BTreeSet::new();
        self.levels.get(i).unwrap_or(&EMPTY)
    }

    pub fn level_graph(&self, i: usize) -> RGraph {
        let mut g = RGraph::on_vertices(self.vertices.clone(), i);
        for e in self.level(i) {
            g.insert(*e).expect("level members lie in the vertex set");
        }
        g
    }

    pub fn contains(&self, e: &VertexSet) -> bool {
        self.level(e.len()).contains(e)
    }

    /// `|G^(|e|+j)(e)|`: the number of `j`-sets `f` with `e ∪ f ∈ G`.
    pub fn link_count(&self, e: &VertexSet, j: usize) -> usize {
        if !self.contains(e) {
            return 0;
        }
        self.level(e.len() + j).iter().filter(|x| e.is_subset(x)).count()
    }

    /// For every `s`-set lying in a member of level `i`, the number of such members.
    pub fn degree_map(&self, i: usize, s: usize) -> HashMap<VertexSet, usize> {
        let mut map = HashMap::new();
        for x in self.level(i) {
            for sub in x.subsets(s) {
                *map.entry(sub).or_insert(0) += 1;
            }
        }
        map
    }

    /// `G[Y]` for a uniform family `Y` of `y`-sets: keeps `e ∈ G` whose `y`-subsets all lie in `Y`.
    pub fn restrict(&self, y: &BTreeSet<VertexSet>, y_size: usize) -> Complex {
        let mut g = self.clone();
        for i in y_size..g.levels.len() {
            g.levels[i].retain(|e| e.subsets(y_size).all(|s| y.contains(&s)));
        }
        g
    }

    /// `G − H := G[G^(r) − H]`.
    pub fn minus(&self, h: &RGraph) -> Complex {
        let r = h.r();
        let y: BTreeSet<VertexSet> = self.level(r).difference(h.edge_set()).copied().collect();
        self.restrict(&y, r)
    }

    /// `G[U]`: members lying inside the vertex set `u`, on vertex set `u`.
    pub fn induced_on(&self, u: &[Vertex]) -> Complex {
        let keep: BTreeSet<Vertex> = u.iter().copied().collect();
        let mut g = Complex::empty(u.to_vec(), self.max_level());
        for (i, level) in self.levels.iter().enumerate() {
            g.levels[i] = level
                .iter()
                .filter(|e| e.iter().all(|x| keep.contains(&x)))
                .copied()
                .collect();
        }
        g
    }

    /// The link complex `G(e)` on `V(G) ∖ e`; empty when `e ∉ G`.
    pub fn nbhd(&self, e: &VertexSet) -> Complex {
        let vertices: Vec<Vertex> = self.vertices.iter().copied().filter(|&x| !e.contains(x)).collect();
        let top = self.max_level().saturating_sub(e.len());
        let mut g = Complex::empty(vertices, top);
        if !self.contains(e) {
            return g;
        }
        for j in 0..=top {
            g.levels[j] = self
                .level(e.len() + j)
                .iter()
                .filter(|x| e.is_subset(x))
                .map(|x| x.difference(e))
                .collect();
        }
        g
    }

    /// `⋂_{f ∈ F} G(f)` on `V(G) ∖ ⋃F`.
    pub fn intersect_links(&self, family: &[VertexSet]) -> Result<Complex> {
        let Some(first) = family.first() else {
            return Err(invalid("intersect_links needs a nonempty family"));
        };
        let union: BTreeSet<Vertex> = family.iter().flat_map(|f| f.iter()).collect();
        let vertices: Vec<Vertex> = self.vertices.iter().copied().filter(|x| !union.contains(x)).collect();
        let mut acc = self.nbhd(first);
        for f in &family[1..] {
            let other = self.nbhd(f);
            let top = acc.max_level().min(other.max_level());
            acc.levels.truncate(top + 1);
            for j in 0..=top {
                acc.levels[j].retain(|x| other.levels[j].contains(x));
            }
        }
        let keep: BTreeSet<Vertex> = vertices.iter().copied().collect();
        for level in &mut acc.levels {
            level.retain(|x| x.iter().all(|v| keep.contains(&v)));
        }
        acc.vertices = vertices;
        Ok(acc)
    }

    /// Exhaustive downward-closure check: returns a member with a missing subset, if any.
    pub fn closure_violation(&self) -> Option<(VertexSet, VertexSet)> {
        for i in 1..self.levels.len() {
            for e in &self.levels[i] {
                for s in e.subsets(i - 1) {
                    if !self.levels[i - 1].contains(&s) {
                        return Some((*e, s));
                    }
                }
            }
        }
        None
    }

    pub fn is_downward_closed(&self) -> bool {
        self.closure_violation().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::binomial;

    #[test]
    fn complete_levels_have_binomial_sizes() {
        let g = Complex::complete(7, 4);
        for i in 0..=4 {
            assert_eq!(g.level(i).len() as u64, binomial(7, i as u64));
        }
        assert!(g.is_downward_closed());
    }

    #[test]
    fn induced_of_complete_graph_is_complete() {
        let g = Complex::induced(&RGraph::complete(6, 2), 4);
        assert_eq!(g, Complex::complete(6, 4));
    }

    #[test]
    fn induced_recovers_its_generating_level() {
        let h = RGraph::from_edges(
            5,
            2,
            [VertexSet::of(&[0, 1]), VertexSet::of(&[1, 2]), VertexSet::of(&[0, 2]), VertexSet::of(&[3, 4])],
        )
        .unwrap();
        let g = Complex::induced(&h, 4);
        assert_eq!(g.level(2), h.edge_set());
        assert_eq!(g.level(3).len(), 1);
        assert_eq!(g.level(1).len(), 5);
    }

    #[test]
    fn generated_by_one_triple() {
        let t = VertexSet::of(&[1, 2, 3]);
        let g = Complex::generated((0..5).collect(), [&t], 3);
        let pairs: Vec<_> = g.level(2).iter().copied().collect();
        assert_eq!(pairs, vec![VertexSet::of(&[1, 2]), VertexSet::of(&[1, 3]), VertexSet::of(&[2, 3])]);
        assert!(g.is_downward_closed());
    }

    #[test]
    fn nbhd_examples() {
        let g = Complex::complete(5, 3);
        let l = g.nbhd(&VertexSet::of(&[0, 1]));
        assert_eq!(l.level(1).len(), 3);
        let h = RGraph::from_edges(5, 2, [VertexSet::of(&[0, 1])]).unwrap();
        let gm = Complex::induced(&h, 3);
        assert!(gm.nbhd(&VertexSet::of(&[2, 3])).is_empty());
    }

    #[test]
    fn restrict_to_full_top_level_is_identity() {
        let g = Complex::complete(6, 3);
        assert_eq!(g.restrict(g.level(3), 3), g);
        assert_eq!(g.restrict(g.level(2), 2), g);
    }

    #[test]
    fn minus_removes_cliques_through_edge() {
        let g = Complex::complete(5, 3);
        let h = RGraph::from_edges(5, 2, [VertexSet::of(&[0, 1])]).unwrap();
        let m = g.minus(&h);
        assert_eq!(m.level(2).len(), 9);
        assert_eq!(m.level(3).len(), 10 - 3);
    }

    #[test]
    fn intersect_links_of_two_vertices() {
        let g = Complex::complete(6, 3);
        let x = g.intersect_links(&[VertexSet::of(&[0]), VertexSet::of(&[1])]).unwrap();
        assert_eq!(x.vertices(), &[2, 3, 4, 5]);
        assert_eq!(x.level(1).len(), 4);
        assert_eq!(x.level(2).len(), 6);
        assert!(g.intersect_links(&[]).is_err());
    }
}
