//! Clique extensions, canonical multigraphs, strong colourings, edge-bijective
//! homomorphisms, absorber and transformer checks, and explicit `r = 1` absorbers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::divisibility::{admissible_params, check_design_divisible};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{MultiRGraph, RGraph};
use crate::packing::{decompose_multigraph, exact_decompose, Decompose};
use crate::params::ParamSet;
use crate::set::{binomial, combinations, Vertex, VertexSet};

/// Result of extending every edge `e` of `H` to a clique on `e ∪ Z_e`.
#[derive(Debug, Clone, PartialEq)]
pub struct Nabla {
    /// `∇̃H`: all `r`-subsets of every `e ∪ Z_e`, with the original edges.
    pub tilde: MultiRGraph,
    /// `∇H = ∇̃H − H`.
    pub minus: RGraph,
    /// Each edge copy with its fresh vertices `z_{e,1}, …, z_{e,q−r}`.
    pub fresh: Vec<(VertexSet, Vec<Vertex>)>,
}

fn next_free(vertices: &[Vertex]) -> usize {
    vertices.iter().map(|&x| x as usize + 1).max().unwrap_or(0)
}

fn fresh_range(start: usize, count: usize) -> Result<Vec<Vertex>> {
    if start + count > Vertex::MAX as usize {
        return Err(invalid("vertex labels exhausted"));
    }
    Ok((start..start + count).map(|x| x as Vertex).collect())
}

/// `∇̃_{q,r}` and `∇_{q,r}` of a multi-`r`-graph; parallel edges get distinct `Z_e`.
pub fn nabla_multi(h: &MultiRGraph, q: usize) -> Result<Nabla> {
    let r = h.r();
    if q <= r {
        return Err(invalid(format!("need q > r, got q={q} r={r}")));
    }
    let mut next = next_free(h.vertices());
    let mut fresh = Vec::new();
    for (e, m) in h.entries() {
        for _ in 0..m {
            fresh.push((*e, fresh_range(next, q - r)?));
            next += q - r;
        }
    }
    let mut vertices = h.vertices().to_vec();
    vertices.extend(fresh.iter().flat_map(|(_, z)| z.iter().copied()));
    let mut tilde = MultiRGraph::on_vertices(vertices.clone(), r);
    let mut minus = RGraph::on_vertices(vertices, r);
    for (e, z) in &fresh {
        let clique = VertexSet::new(&z.iter().copied().chain(e.iter()).collect::<Vec<_>>())
            .ok_or_else(|| invalid("clique exceeds set capacity"))?;
        for f in clique.subsets(r) {
            tilde.add(f, 1)?;
            if f != *e {
                minus.insert(f)?;
            }
        }
    }
    Ok(Nabla { tilde, minus, fresh })
}

pub fn nabla(h: &RGraph, q: usize) -> Result<Nabla> {
    nabla_multi(&MultiRGraph::from_graph(h), q)
}

/// `H^{+t}`: `H` plus `t` vertex-disjoint copies of `K_q^(r)` on fresh vertices.
pub fn plus_cliques(h: &RGraph, t: usize, q: usize) -> Result<(RGraph, Vec<VertexSet>)> {
    let start = next_free(h.vertices());
    let fresh = fresh_range(start, t * q)?;
    let mut vertices = h.vertices().to_vec();
    vertices.extend(&fresh);
    let mut out = RGraph::on_vertices(vertices, h.r());
    for e in h.edges() {
        out.insert(*e)?;
    }
    let mut cliques = Vec::with_capacity(t);
    for chunk in fresh.chunks(q) {
        let b = VertexSet::new(chunk).ok_or_else(|| invalid("clique exceeds set capacity"))?;
        for f in b.subsets(h.r()) {
            out.insert(f)?;
        }
        cliques.push(b);
    }
    Ok((out, cliques))
}

/// `(k, m) ∈ M_r`: `m/(r−i)·C(k−i, r−1−i)` is an integer for all `i < r`.
/// Returns the first failing `i`.
pub fn m_r_failure(r: usize, k: usize, m: u64) -> Option<usize> {
    (0..r).find(|&i| {
        let top = m as u128 * binomial_or_zero(k, i, r - 1 - i);
        top % (r - i) as u128 != 0
    })
}

fn binomial_or_zero(k: usize, i: usize, j: usize) -> u128 {
    if k < i {
        0
    } else {
        binomial((k - i) as u64, j as u64) as u128
    }
}

/// `L^{q,r}_{k,m}` on `[k] ∪ B`, `B = {k, …, k+q−r−1}`.
pub fn canonical_l(q: usize, r: usize, k: usize, m: u64) -> Result<MultiRGraph> {
    if r < 2 || q <= r {
        return Err(invalid(format!("need q > r >= 2, got q={q} r={r}")));
    }
    if let Some(i) = m_r_failure(r, k, m) {
        return Err(invalid(format!("(k, m) = ({k}, {m}) is not in M_r: fails at i = {i}")));
    }
    let vertices = fresh_range(0, k + q - r)?;
    let mut l = MultiRGraph::on_vertices(vertices.clone(), r);
    for e in combinations(&vertices, r) {
        let inside = e.count_in(|x| (x as usize) < k);
        if inside == r {
            continue;
        }
        let mult = m as u128 * binomial_or_zero(k, inside, r - 1 - inside) / (r - inside) as u128;
        l.add(e, mult as u64)?;
    }
    Ok(l)
}

/// A vertex map `φ: V(H) → V(H′)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism {
    pub map: BTreeMap<Vertex, Vertex>,
}

impl Homomorphism {
    pub fn image(&self, e: &VertexSet) -> Option<VertexSet> {
        let v: Vec<Vertex> = e.iter().map(|x| self.map[&x]).collect();
        VertexSet::new(&v).filter(|s| s.len() == e.len())
    }

    /// `φ(e) ∈ H′` for every edge and `|H| = |φ(H)| = |H′|`.
    pub fn is_edge_bijective(&self, h: &RGraph, h2: &RGraph) -> bool {
        if h.len() != h2.len() || h.vertices().iter().any(|x| !self.map.contains_key(x)) {
            return false;
        }
        let mut seen = BTreeSet::new();
        h.edges().all(|e| matches!(self.image(e), Some(f) if h2.contains(&f) && seen.insert(f)))
    }
}

/// Backtracking search for an edge-bijective homomorphism `H ⇝ H′`.
///
/// `Ok(None)` means the search space was exhausted; running out of `node_budget`
/// gives `BudgetExceeded`.
pub fn find_edge_bijective_hom(h: &RGraph, h2: &RGraph, node_budget: u64) -> Result<Option<Homomorphism>> {
    if h.r() != h2.r() || h.len() != h2.len() {
        return Ok(None);
    }
    let Some(&fallback) = h2.vertices().first() else {
        let map = h.vertices().iter().map(|&x| (x, x)).collect();
        return Ok(if h.is_empty() && h.n() == 0 { Some(Homomorphism { map }) } else { None });
    };
    // Vertices in order of first appearance along a breadth-first edge walk, so
    // edges close early and prune the search.
    let mut order: Vec<Vertex> = Vec::new();
    let mut placed: BTreeSet<Vertex> = BTreeSet::new();
    let edges: Vec<VertexSet> = h.edges().copied().collect();
    let mut pending: Vec<VertexSet> = edges.clone();
    while !pending.is_empty() {
        let next = pending
            .iter()
            .enumerate()
            .max_by_key(|(i, e)| (e.count_in(|x| placed.contains(&x)), std::cmp::Reverse(*i)))
            .map(|(i, _)| i)
            .expect("nonempty");
        let e = pending.swap_remove(next);
        for x in e.iter() {
            if placed.insert(x) {
                order.push(x);
            }
        }
    }
    let pos: HashMap<Vertex, usize> = order.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    // Edges that become fully assigned at each position.
    let mut closing: Vec<Vec<VertexSet>> = vec![Vec::new(); order.len()];
    for e in &edges {
        let last = e.iter().map(|x| pos[&x]).max().expect("edges are nonempty");
        closing[last].push(*e);
    }
    let targets: Vec<Vertex> = h2.vertices().iter().copied().filter(|&y| h2.degree(&VertexSet::singleton(y)) > 0).collect();
    let mut state = HomSearch {
        order: &order,
        closing: &closing,
        targets: &targets,
        h2,
        assign: HashMap::new(),
        used: BTreeSet::new(),
        nodes: 0,
        budget: node_budget,
    };
    if !state.go(0)? {
        return Ok(None);
    }
    let mut map: BTreeMap<Vertex, Vertex> = state.assign.into_iter().collect();
    for &x in h.vertices() {
        map.entry(x).or_insert(fallback);
    }
    let hom = Homomorphism { map };
    debug_assert!(hom.is_edge_bijective(h, h2));
    Ok(Some(hom))
}

struct HomSearch<'a> {
    order: &'a [Vertex],
    closing: &'a [Vec<VertexSet>],
    targets: &'a [Vertex],
    h2: &'a RGraph,
    assign: HashMap<Vertex, Vertex>,
    used: BTreeSet<VertexSet>,
    nodes: u64,
    budget: u64,
}

impl HomSearch<'_> {
    fn go(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let x = self.order[depth];
        for &y in self.targets {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded { nodes: self.nodes });
            }
            self.assign.insert(x, y);
            let mut images = Vec::new();
            let mut ok = true;
            for e in &self.closing[depth] {
                let v: Vec<Vertex> = e.iter().map(|z| self.assign[&z]).collect();
                match VertexSet::new(&v) {
                    Some(f) if f.len() == e.len() && self.h2.contains(&f) && !self.used.contains(&f) && !images.contains(&f) => {
                        images.push(f)
                    }
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                self.used.extend(images.iter().copied());
                if self.go(depth + 1)? {
                    return Ok(true);
                }
                for f in &images {
                    self.used.remove(f);
                }
            }
            self.assign.remove(&x);
        }
        Ok(false)
    }
}

/// A colouring `c: V(H) → C` of the vertices of a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongColouring {
    pub colours: Vec<Vertex>,
    pub colour: BTreeMap<Vertex, Vertex>,
}

impl StrongColouring {
    pub fn new(mut colours: Vec<Vertex>, colour: BTreeMap<Vertex, Vertex>) -> Result<Self> {
        colours.sort_unstable();
        colours.dedup();
        if let Some((x, c)) = colour.iter().find(|(_, c)| colours.binary_search(c).is_err()) {
            return Err(invalid(format!("vertex {x} has colour {c} outside the colour set")));
        }
        Ok(StrongColouring { colours, colour })
    }

    /// `c(e)`, or `None` if some vertex is uncoloured or a colour repeats.
    pub fn image(&self, e: &VertexSet) -> Option<VertexSet> {
        let v: Option<Vec<Vertex>> = e.iter().map(|x| self.colour.get(&x).copied()).collect();
        VertexSet::new(&v?).filter(|s| s.len() == e.len())
    }

    /// First edge of `h` that repeats a colour or has an uncoloured vertex.
    pub fn strong_violation(&self, h: &RGraph) -> Option<VertexSet> {
        h.edges().find(|e| self.image(e).is_none()).copied()
    }

    /// `|c^⊆(C′)|` for every `(r−1)`-subset `C′` of the colour set.
    pub fn colour_degrees(&self, h: &RGraph) -> BTreeMap<VertexSet, u64> {
        let s = h.r() - 1;
        let mut out: BTreeMap<VertexSet, u64> = combinations(&self.colours, s).map(|c| (c, 0)).collect();
        for e in h.edges() {
            if let Some(ce) = self.image(e) {
                for sub in ce.subsets(s) {
                    *out.entry(sub).or_insert(0) += 1;
                }
            }
        }
        out
    }

    pub fn is_m_regular(&self, h: &RGraph, m: u64) -> bool {
        self.strong_violation(h).is_none() && self.colour_degrees(h).values().all(|&d| d == m)
    }
}

/// `id(H, c)`: the multigraph on the colours with edge multiset `{c(e) : e ∈ H}`.
pub fn identify(h: &RGraph, c: &StrongColouring) -> Result<MultiRGraph> {
    if let Some(e) = c.strong_violation(h) {
        return Err(invalid(format!("colouring is not strong on edge {e}")));
    }
    let mut out = MultiRGraph::on_vertices(c.colours.clone(), h.r());
    for e in h.edges() {
        out.add(c.image(e).expect("strong"), 1)?;
    }
    Ok(out)
}

/// `∇c`: keeps `c` on `V(H)` and colours `z_{e,i}` with `b_i`, where
/// `b_1, …, b_{q−r}` follow the largest colour of `c`.
pub fn nabla_colouring(c: &StrongColouring, nab: &Nabla) -> Result<StrongColouring> {
    let base = next_free(&c.colours);
    let width = nab.fresh.first().map_or(0, |(_, z)| z.len());
    let b = fresh_range(base, width)?;
    let mut colour = c.colour.clone();
    for (_, z) in &nab.fresh {
        for (i, &x) in z.iter().enumerate() {
            colour.insert(x, b[i]);
        }
    }
    let mut colours = c.colours.clone();
    colours.extend(&b);
    StrongColouring::new(colours, colour)
}

/// Output of [`find_m_regular_colouring`].
#[derive(Debug, Clone, PartialEq)]
pub struct RegularColouring {
    pub t: usize,
    pub k: usize,
    pub m: u64,
    /// `H^{+t}` with the colouring defined on all of its vertices.
    pub graph: RGraph,
    pub cliques: Vec<VertexSet>,
    pub colouring: StrongColouring,
}

/// Strong `m`-regular `[k]`-colouring of `H^{+t}` for a divisible `H`.
///
/// With `h = |V(H)|`, `m′ = h+1` and `m = (q−r+1)m′`, `k` is the least value at least
/// `max(h, q)` with `K_k^(r−1)` divisible. The complete multi-`(r−1)`-graph on `[k]`
/// with multiplicity `m′`, minus `H″(S) = |H(S)|/(q−r+1)`, is decomposed into `t`
/// copies of `K_q^(r−1)`; clique `j` of `H^{+t}` is coloured by the vertices of copy `j`.
pub fn find_m_regular_colouring(h: &RGraph, q: usize, p: &ParamSet) -> Result<RegularColouring> {
    let r = h.r();
    if r < 2 || q <= r {
        return Err(invalid(format!("need q > r >= 2, got q={q} r={r}")));
    }
    let div = check_design_divisible(h, q, r, 1);
    if !div.ok {
        return Err(invalid(format!("H is not divisible at {}", div.violations[0].set)));
    }
    let hn = h.n();
    let index: HashMap<Vertex, Vertex> = h.vertices().iter().enumerate().map(|(i, &x)| (x, i as Vertex)).collect();
    let m_prime = hn as u64 + 1;
    let m = (q - r + 1) as u64 * m_prime;
    let mut k = hn.max(q);
    while !admissible_params(k, q, r - 1, 1).ok {
        k += 1;
    }
    let mut rest = MultiRGraph::complete(k, r - 1, m_prime);
    for (s, d) in h.degree_map(r - 1) {
        let s = s.map(|x| index[&x]).expect("relabelling keeps sizes");
        rest.subtract(&s, d / (q - r + 1) as u64)?;
    }
    let blocks = match decompose_multigraph(&rest, q, p)? {
        Decompose::Found(b) => b,
        Decompose::Unsat => return Err(Error::Failure("the complement multigraph has no decomposition".into())),
        Decompose::Timeout { nodes } => return Err(Error::BudgetExceeded { nodes }),
    };
    let t = blocks.len();
    let (graph, cliques) = plus_cliques(h, t, q)?;
    let mut colour: BTreeMap<Vertex, Vertex> = index.clone().into_iter().collect();
    for (x, y) in cliques.iter().zip(&blocks) {
        for (a, b) in x.iter().zip(y.iter()) {
            colour.insert(a, b);
        }
    }
    let colouring = StrongColouring::new(fresh_range(0, k)?, colour)?;
    if !colouring.is_m_regular(&graph, m) {
        return Err(Error::Internal("colouring is not m-regular".into()));
    }
    Ok(RegularColouring { t, k, m, graph, cliques, colouring })
}

/// Checks `id(∇H, ∇c) = L^{q,r}_{k,m}` as multiplicity functions, with `c` a
/// `[k]`-colouring and `B` the colours `k, …, k+q−r−1`.
pub fn identification_matches(h: &RGraph, c: &StrongColouring, q: usize, k: usize, m: u64) -> Result<bool> {
    let nab = nabla(h, q)?;
    let mut base = c.clone();
    base.colours = fresh_range(0, k)?;
    let nc = nabla_colouring(&base, &nab)?;
    let id = identify(&nab.minus, &nc)?;
    let l = canonical_l(q, h.r(), k, m)?;
    Ok(id.entries().eq(l.entries()))
}

/// Whether `G[edges]` has a `K_q^(r)`-decomposition; timeouts become `BudgetExceeded`.
fn decomposable(g: &Complex, edges: &RGraph, q: usize, p: &ParamSet) -> Result<bool> {
    if edges.is_empty() {
        return Ok(true);
    }
    let sub = g.restrict(edges.edge_set(), edges.r());
    match exact_decompose(&sub, q, edges.r(), 1, p)? {
        Decompose::Found(_) => Ok(true),
        Decompose::Unsat => Ok(false),
        Decompose::Timeout { nodes } => Err(Error::BudgetExceeded { nodes }),
    }
}

fn inside(g: &Complex, h: &RGraph) -> bool {
    h.edges().all(|e| g.contains(e))
}

fn disjoint(a: &RGraph, b: &RGraph) -> bool {
    a.edges().all(|e| !b.contains(e))
}

/// `A` is edge-disjoint from `H` and both `G[A]` and `G[A ∪ H]` decompose.
pub fn verify_absorber(g: &Complex, a: &RGraph, h: &RGraph, p: &ParamSet) -> Result<bool> {
    if !inside(g, a) || !inside(g, h) || !disjoint(a, h) {
        return Ok(false);
    }
    Ok(decomposable(g, a, p.q, p)? && decomposable(g, &a.union(h), p.q, p)?)
}

/// `T` is edge-disjoint from `H` and `H′` and both `G[T ∪ H]` and `G[T ∪ H′]` decompose.
pub fn verify_transformer(g: &Complex, t: &RGraph, h: &RGraph, h2: &RGraph, p: &ParamSet) -> Result<bool> {
    if !inside(g, t) || !inside(g, h) || !inside(g, h2) || !disjoint(t, h) || !disjoint(t, h2) {
        return Ok(false);
    }
    Ok(decomposable(g, &t.union(h), p.q, p)? && decomposable(g, &t.union(h2), p.q, p)?)
}

/// An `r = 1` absorber with explicit decompositions of `A` and `A ∪ H`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorberR1 {
    pub a: RGraph,
    pub decomposition_a: Vec<VertexSet>,
    pub decomposition_ah: Vec<VertexSet>,
}

/// For each group `e_1, …, e_q` of `H`: a `q`-set `Q_0 = {v_1, …, v_q}` and `(q−1)`-sets
/// `Q_i` with `Q_i ∪ e_i, Q_i ∪ {v_i} ∈ G^(q)`, all pairwise disjoint and avoiding `⋃H`
/// and earlier groups. `A` is the union of the `Q_i`.
pub fn build_absorber_r1(g: &Complex, h: &RGraph, q: usize) -> Result<AbsorberR1> {
    if h.r() != 1 {
        return Err(invalid("build_absorber_r1 needs a 1-graph"));
    }
    if q < 2 || h.len() % q != 0 {
        return Err(invalid(format!("q = {q} must divide |H| = {}", h.len())));
    }
    if g.max_level() < q {
        return Err(invalid(format!("complex materialized to level {} but q = {q}", g.max_level())));
    }
    let mut taken: BTreeSet<Vertex> = h.edges().map(|e| e.as_slice()[0]).collect();
    let mut a = RGraph::on_vertices(g.vertices().to_vec(), 1);
    let mut dec_a = Vec::new();
    let mut dec_ah = Vec::new();
    let hv: Vec<Vertex> = h.edges().map(|e| e.as_slice()[0]).collect();
    for group in hv.chunks(q) {
        let q0 = *g
            .level(q)
            .iter()
            .find(|b| b.iter().all(|x| !taken.contains(&x)))
            .ok_or_else(|| Error::Failure("no free q-set for Q_0".into()))?;
        taken.extend(q0.iter());
        dec_ah.push(q0);
        for (&u, v) in group.iter().zip(q0.iter()) {
            let qi = g
                .level(q)
                .iter()
                .filter(|b| b.contains(u) && b.iter().all(|x| x == u || !taken.contains(&x)))
                .map(|b| b.without(u))
                .find(|rest| rest.with(v).is_some_and(|w| w.len() == q && g.contains(&w)))
                .ok_or_else(|| Error::Failure(format!("no free (q-1)-set for vertex {u}")))?;
            taken.extend(qi.iter());
            dec_a.push(qi.with(v).expect("checked"));
            dec_ah.push(qi.with(u).expect("checked"));
        }
    }
    for b in &dec_a {
        for x in b.iter() {
            a.insert(VertexSet::singleton(x))?;
        }
    }
    dec_a.sort();
    dec_ah.sort();
    Ok(AbsorberR1 { a, decomposition_a: dec_a, decomposition_ah: dec_ah })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, r: usize, edges: &[&[usize]]) -> RGraph {
        RGraph::from_edges(n, r, edges.iter().map(|e| VertexSet::of(e))).unwrap()
    }

    #[test]
    fn nabla_sizes() {
        let h = graph(4, 2, &[&[0, 1], &[2, 3]]);
        let nab = nabla(&h, 3).unwrap();
        assert_eq!(nab.minus.len(), 4);
        assert_eq!(nab.tilde.len(), 6);
        assert!(nabla(&RGraph::new(3, 2), 3).unwrap().minus.is_empty());
        let tri = RGraph::complete(3, 2);
        assert!(check_design_divisible(&nabla(&tri, 3).unwrap().minus, 3, 2, 1).ok);
    }

    #[test]
    fn parallel_edges_get_distinct_extensions() {
        let mut m = MultiRGraph::new(2, 2);
        m.add(VertexSet::of(&[0, 1]), 2).unwrap();
        let nab = nabla_multi(&m, 3).unwrap();
        assert_eq!(nab.minus.len(), 4);
        assert_ne!(nab.fresh[0].1, nab.fresh[1].1);
    }

    #[test]
    fn plus_cliques_counts() {
        let h = RGraph::complete(3, 2);
        let (g, cl) = plus_cliques(&h, 2, 3).unwrap();
        assert_eq!(g.len(), 3 + 2 * 3);
        assert_eq!(cl.len(), 2);
        assert_eq!(plus_cliques(&h, 0, 3).unwrap().0, h);
    }

    #[test]
    fn canonical_graph_multiplicities() {
        assert_eq!(m_r_failure(2, 3, 2), None);
        assert_eq!(m_r_failure(2, 3, 1), Some(0));
        let l = canonical_l(3, 2, 3, 2).unwrap();
        assert_eq!(l.multiplicity(&VertexSet::of(&[0, 3])), 2);
        assert_eq!(l.multiplicity(&VertexSet::of(&[0, 1])), 0);
        assert!(canonical_l(3, 2, 3, 1).is_err());
    }

    #[test]
    fn identity_homomorphism_and_size_mismatch() {
        let h = graph(4, 2, &[&[0, 1], &[1, 2], &[2, 3]]);
        let hom = find_edge_bijective_hom(&h, &h, 100_000).unwrap().unwrap();
        assert!(hom.is_edge_bijective(&h, &h));
        assert!(find_edge_bijective_hom(&h, &RGraph::complete(4, 2), 100_000).unwrap().is_none());
    }

    #[test]
    fn nabla_maps_onto_identified_nabla() {
        let h = graph(4, 2, &[&[0, 1], &[2, 3]]);
        let c = StrongColouring::new(vec![0, 1], [(0, 0), (1, 1), (2, 0), (3, 1)].into_iter().collect()).unwrap();
        let id = identify(&h, &c).unwrap();
        assert_eq!(id.multiplicity(&VertexSet::of(&[0, 1])), 2);
        let left = nabla(&h, 3).unwrap().minus;
        let right = nabla_multi(&id, 3).unwrap().minus;
        let hom = find_edge_bijective_hom(&left, &right, 1_000_000).unwrap().unwrap();
        assert!(hom.is_edge_bijective(&left, &right));
    }

    #[test]
    fn colouring_of_single_triangle() {
        let h = RGraph::complete(3, 2);
        let res = find_m_regular_colouring(&h, 3, &ParamSet::new(3, 2)).unwrap();
        assert!(res.colouring.is_m_regular(&res.graph, res.m));
        for (_, d) in res.colouring.colour_degrees(&res.graph) {
            // |c^⊆(C′)| = m/(r−i)·C(k−i, r−1−i) at i = r−1.
            assert_eq!(d, res.m);
        }
        assert!(identification_matches(&res.graph, &res.colouring, 3, res.k, res.m).unwrap());
    }

    #[test]
    fn colouring_of_empty_graph() {
        let res = find_m_regular_colouring(&RGraph::new(0, 2), 3, &ParamSet::new(3, 2)).unwrap();
        assert_eq!(res.t, 1);
        assert!(identification_matches(&res.graph, &res.colouring, 3, res.k, res.m).unwrap());
    }

    #[test]
    fn trivial_absorbers() {
        let g = Complex::complete(6, 3);
        let p = ParamSet::new(3, 2);
        let empty = RGraph::new(6, 2);
        assert!(verify_absorber(&g, &empty, &empty, &p).unwrap());
        let tri = graph(6, 2, &[&[0, 1], &[0, 2], &[1, 2]]);
        assert!(verify_absorber(&g, &tri, &empty, &p).unwrap());
        let edge = graph(6, 2, &[&[3, 4]]);
        assert!(!verify_absorber(&g, &tri, &edge, &p).unwrap());
    }

    #[test]
    fn r1_absorber_in_k12() {
        let g = Complex::complete(12, 3);
        let h = RGraph::from_edges(12, 1, (0..3).map(|x| VertexSet::of(&[x]))).unwrap();
        let abs = build_absorber_r1(&g, &h, 3).unwrap();
        assert_eq!(abs.a.len(), 9);
        let mut p = ParamSet::new(3, 1);
        p.seed = 1;
        assert!(verify_absorber(&g, &abs.a, &h, &p).unwrap());
        assert!(build_absorber_r1(&g, &RGraph::new(12, 1), 3).unwrap().a.is_empty());
        assert!(build_absorber_r1(&Complex::complete(8, 3), &h, 3).is_err());
        let two = RGraph::from_edges(12, 1, (0..2).map(|x| VertexSet::of(&[x]))).unwrap();
        assert!(build_absorber_r1(&g, &two, 3).is_err());
    }

    #[test]
    fn chained_transformers_form_an_absorber() {
        // T1 turns H into L, T2 turns H′ into L; then T1 ∪ L ∪ T2 ∪ H′ absorbs H.
        let g = Complex::complete(9, 3);
        let p = ParamSet::new(3, 2);
        let h = graph(9, 2, &[&[0, 1], &[0, 2], &[1, 2]]);
        let t1 = graph(9, 2, &[]);
        let l = graph(9, 2, &[&[3, 4], &[3, 5], &[4, 5]]);
        let h2 = graph(9, 2, &[&[6, 7], &[6, 8], &[7, 8]]);
        let t2 = graph(9, 2, &[]);
        assert!(verify_transformer(&g, &t1, &h, &l, &p).unwrap());
        assert!(verify_transformer(&g, &t2, &h2, &l, &p).unwrap());
        let a = t1.union(&l).union(&t2).union(&h2);
        assert!(verify_absorber(&g, &a, &h, &p).unwrap());
    }
}
