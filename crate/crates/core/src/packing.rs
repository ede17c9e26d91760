//! Clique packings: verification, exact decomposition, greedy covers and the nibble.

use std::collections::{BTreeMap, HashMap, HashSet};

use num::rational::Rational64;
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::divisibility::check_design_divisible;
use crate::error::{invalid, Error, Result};
use crate::exact::{self, CoverOutcome, CoverProblem};
use crate::hypergraph::{MultiRGraph, RGraph};
use crate::params::{rng_for, run_restarts, ParamSet};
use crate::set::{binomial, combinations, VertexSet};

/// A set of `q`-blocks, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Packing {
    pub q: usize,
    pub r: usize,
    pub blocks: Vec<VertexSet>,
}

impl Packing {
    pub fn new(q: usize, r: usize, mut blocks: Vec<VertexSet>) -> Self {
        blocks.sort_unstable();
        Packing { q, r, blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `K^(r)`: every `r`-subset of every block.
    pub fn covered(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = self.blocks.iter().flat_map(|b| b.subsets(self.r)).collect();
        out.sort_unstable();
        out
    }
}

/// Blocks lie in `G^(q)` and pairwise share fewer than `r` vertices.
pub fn verify_packing(g: &Complex, p: &Packing) -> bool {
    let mut seen = HashSet::new();
    p.blocks.iter().all(|b| b.len() == p.q && g.contains(b) && b.subsets(p.r).all(|e| seen.insert(e)))
}

/// Outcome of checking a claimed `λ`-fold decomposition of a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignReport {
    pub ok: bool,
    pub blocks: usize,
    /// Blocks of the wrong size.
    pub malformed: Vec<VertexSet>,
    /// Blocks listed more than once.
    pub duplicates: Vec<VertexSet>,
    /// Blocks with an `r`-subset that is not an edge of the host.
    pub foreign: Vec<VertexSet>,
    /// Host edges covered a number of times other than `λ`, with their counts.
    pub miscovered: Vec<(VertexSet, u64)>,
}

impl DesignReport {
    pub fn first_violation(&self) -> Option<String> {
        if let Some(b) = self.malformed.first() {
            return Some(format!("block {b} has the wrong size"));
        }
        if let Some(b) = self.duplicates.first() {
            return Some(format!("block {b} is repeated"));
        }
        if let Some(b) = self.foreign.first() {
            return Some(format!("block {b} contains a non-edge of the host"));
        }
        self.miscovered.first().map(|(e, c)| format!("edge {e} covered {c} times"))
    }
}

const REPORT_CAP: usize = 100;

/// Checks that `blocks` are distinct `q`-sets covering every edge of `h` exactly `λ` times.
pub fn verify_design(h: &RGraph, blocks: &[VertexSet], q: usize, lambda: u64) -> DesignReport {
    let r = h.r();
    let mut report = DesignReport {
        ok: true,
        blocks: blocks.len(),
        malformed: Vec::new(),
        duplicates: Vec::new(),
        foreign: Vec::new(),
        miscovered: Vec::new(),
    };
    let mut seen = HashSet::new();
    let mut count: BTreeMap<VertexSet, u64> = h.edges().map(|e| (*e, 0)).collect();
    for b in blocks {
        if b.len() != q {
            report.malformed.push(*b);
            continue;
        }
        if !seen.insert(*b) {
            report.duplicates.push(*b);
        }
        let mut inside = true;
        for e in b.subsets(r) {
            match count.get_mut(&e) {
                Some(c) => *c += 1,
                None => inside = false,
            }
        }
        if !inside {
            report.foreign.push(*b);
        }
    }
    report.miscovered = count.into_iter().filter(|&(_, c)| c != lambda).take(REPORT_CAP).collect();
    report.malformed.truncate(REPORT_CAP);
    report.duplicates.truncate(REPORT_CAP);
    report.foreign.truncate(REPORT_CAP);
    report.ok = report.malformed.is_empty()
        && report.duplicates.is_empty()
        && report.foreign.is_empty()
        && report.miscovered.is_empty();
    report
}

/// Result of an exact decomposition search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decompose {
    /// The blocks, sorted, listed with multiplicity when options may repeat.
    Found(Vec<VertexSet>),
    /// No decomposition exists.
    Unsat,
    /// The search budget ran out; nothing is known.
    Timeout { nodes: u64 },
}

impl Decompose {
    pub fn blocks(&self) -> Option<&[VertexSet]> {
        match self {
            Decompose::Found(b) => Some(b),
            _ => None,
        }
    }

    pub fn into_blocks(self) -> Option<Vec<VertexSet>> {
        match self {
            Decompose::Found(b) => Some(b),
            _ => None,
        }
    }
}

/// An edge-level cover instance: primary edges with demands, secondary edges with
/// capacities, and candidate `q`-sets with usage caps.
pub struct EdgeCover<'a> {
    pub r: usize,
    pub primary: &'a [(VertexSet, u32)],
    pub secondary: &'a [(VertexSet, u32)],
    pub options: &'a [(VertexSet, u32)],
}

/// Solves an [`EdgeCover`]; options with an `r`-subset outside both edge lists are ignored.
pub fn solve_edge_cover(
    inst: &EdgeCover<'_>,
    forbidden: &HashSet<VertexSet>,
    p: &ParamSet,
    stream: u64,
) -> Decompose {
    let mut problem = CoverProblem::new();
    let mut index: HashMap<VertexSet, u32> = HashMap::new();
    for &(e, d) in inst.primary {
        index.insert(e, problem.add_primary(d));
    }
    for &(e, c) in inst.secondary {
        index.entry(e).or_insert_with(|| problem.add_secondary(c));
    }
    let mut kept = Vec::new();
    let mut off = Vec::new();
    for &(b, cap) in inst.options {
        let items: Option<Vec<u32>> = b.subsets(inst.r).map(|e| index.get(&e).copied()).collect();
        if let Some(items) = items {
            if items.iter().any(|&i| problem.primary[i as usize]) {
                problem.add_option(items, cap);
                off.push(forbidden.contains(&b));
                kept.push(b);
            }
        }
    }
    let mut rng = rng_for(p.seed, stream);
    match exact::solve(&problem, &off, &p.budget, &mut rng) {
        CoverOutcome::Solved(sol) => {
            let mut blocks: Vec<VertexSet> = sol.into_iter().map(|o| kept[o]).collect();
            blocks.sort_unstable();
            Decompose::Found(blocks)
        }
        CoverOutcome::Unsat => Decompose::Unsat,
        CoverOutcome::Timeout { nodes } => Decompose::Timeout { nodes },
    }
}

fn require_level(g: &Complex, q: usize) -> Result<()> {
    if g.max_level() < q {
        Err(invalid(format!("complex materialized to level {} but q = {q}", g.max_level())))
    } else {
        Ok(())
    }
}

/// `λ`-fold decomposition of `G^(r)` into distinct cliques of `G^(q)`.
pub fn exact_decompose(g: &Complex, q: usize, r: usize, lambda: u64, p: &ParamSet) -> Result<Decompose> {
    exact_decompose_excluding(g, q, r, lambda, &HashSet::new(), p)
}

/// As [`exact_decompose`], never using a block from `excluded`.
pub fn exact_decompose_excluding(
    g: &Complex,
    q: usize,
    r: usize,
    lambda: u64,
    excluded: &HashSet<VertexSet>,
    p: &ParamSet,
) -> Result<Decompose> {
    if q <= r {
        return Err(invalid(format!("need q > r, got q={q} r={r}")));
    }
    require_level(g, q)?;
    let host = g.level_graph(r);
    if !check_design_divisible(&host, q, r, lambda).ok {
        return Ok(Decompose::Unsat);
    }
    let primary: Vec<(VertexSet, u32)> = host.edges().map(|e| (*e, lambda as u32)).collect();
    let options: Vec<(VertexSet, u32)> = g.level(q).iter().map(|b| (*b, 1)).collect();
    let inst = EdgeCover { r, primary: &primary, secondary: &[], options: &options };
    let out = solve_edge_cover(&inst, excluded, p, 0);
    if let Decompose::Found(blocks) = &out {
        let report = verify_design(&host, blocks, q, lambda);
        if !report.ok {
            return Err(Error::Internal(format!("solver output failed verification: {:?}", report.first_violation())));
        }
    }
    Ok(out)
}

/// Decomposition of a multi-`r`-graph into copies of `K_q^(r)` (copies may repeat).
pub fn decompose_multigraph(m: &MultiRGraph, q: usize, p: &ParamSet) -> Result<Decompose> {
    let r = m.r();
    if q <= r {
        return Err(invalid(format!("need q > r, got q={q} r={r}")));
    }
    if !crate::divisibility::check_multi_divisible(m, q) {
        return Ok(Decompose::Unsat);
    }
    let primary: Vec<(VertexSet, u32)> = m.entries().map(|(e, k)| (*e, k as u32)).collect();
    let options: Vec<(VertexSet, u32)> = combinations(m.vertices(), q)
        .filter_map(|b| {
            let cap = b.subsets(r).map(|e| m.multiplicity(&e)).min().unwrap_or(0);
            (cap > 0).then_some((b, cap as u32))
        })
        .collect();
    let inst = EdgeCover { r, primary: &primary, secondary: &[], options: &options };
    Ok(solve_edge_cover(&inst, &HashSet::new(), p, 0))
}

/// Largest number of pairwise `q`-disjoint decompositions possible on `n` vertices.
pub fn disjoint_cap(n: usize, q: usize, r: usize) -> Rational64 {
    let num = (n as i64).pow((q - r) as u32);
    let den: i64 = (1..=(q - r) as i64).product();
    Rational64::new(num, den)
}

/// `t` decompositions of `G^(r)` sharing no block, found one after another.
pub fn disjoint_decompositions(
    g: &Complex,
    q: usize,
    r: usize,
    t: usize,
    p: &ParamSet,
) -> Result<Vec<Vec<VertexSet>>> {
    if t == 0 {
        return Err(invalid("t must be at least 1"));
    }
    if Rational64::from_integer(t as i64) > disjoint_cap(g.n(), q, r) {
        return Err(invalid(format!(
            "{t} q-disjoint decompositions exceed the cap n^(q-r)/(q-r)! = {}",
            disjoint_cap(g.n(), q, r)
        )));
    }
    let mut used = HashSet::new();
    let mut out = Vec::with_capacity(t);
    for j in 0..t {
        let sub = p.clone().with_seed(crate::params::derive_seed(p.seed, j as u64));
        match exact_decompose_excluding(g, q, r, 1, &used, &sub)? {
            Decompose::Found(blocks) => {
                used.extend(blocks.iter().copied());
                out.push(blocks);
            }
            Decompose::Unsat => {
                return Err(Error::Failure(format!("no decomposition disjoint from the first {j}")))
            }
            Decompose::Timeout { nodes } => return Err(Error::BudgetExceeded { nodes }),
        }
    }
    Ok(out)
}

/// Outcome of the sequential random greedy cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyCover {
    /// The chosen `(q−r)`-set for each group.
    pub chosen: Vec<VertexSet>,
    /// `Q_j ∪ e` for every group `j` and `e ∈ L_j`.
    pub blocks: Vec<VertexSet>,
    /// `Δ(⋃ K_j^(r))`.
    pub max_degree: u64,
    /// Groups whose filtered candidate family fell below the warning fraction.
    pub thin_groups: Vec<usize>,
}

/// Picks, for each group `L_j`, a candidate `Q ∈ Q_j` uniformly among those whose
/// clique set `(Q ⊎ L_j)^≤` avoids all earlier cliques and all other groups' edges.
pub fn greedy_cover(
    g: &Complex,
    groups: &[Vec<VertexSet>],
    candidates: &[Vec<VertexSet>],
    p: &ParamSet,
) -> Result<GreedyCover> {
    if groups.len() != candidates.len() {
        return Err(invalid("one candidate family per group is required"));
    }
    let r = p.r;
    let mut rng = p.rng();
    let mut owner: HashMap<VertexSet, usize> = HashMap::new();
    for (j, l) in groups.iter().enumerate() {
        for e in l {
            if e.len() != r || !g.contains(e) {
                return Err(invalid(format!("group {j} has {e}, which is not an r-edge of G")));
            }
            if owner.insert(*e, j).is_some() {
                return Err(invalid(format!("edge {e} appears in two groups")));
            }
        }
    }
    let mut taken: HashSet<VertexSet> = HashSet::new();
    let mut out = GreedyCover { chosen: Vec::new(), blocks: Vec::new(), max_degree: 0, thin_groups: Vec::new() };
    for (j, (l, cands)) in groups.iter().zip(candidates).enumerate() {
        let mut ok_cands = Vec::new();
        'cand: for qset in cands {
            let mut local = HashSet::new();
            for e in l {
                if !qset.is_disjoint(e) {
                    continue 'cand;
                }
                let Some(block) = qset.union(e) else { continue 'cand };
                if !g.contains(&block) {
                    continue 'cand;
                }
                for f in block.subsets(r) {
                    if taken.contains(&f) || owner.get(&f).is_some_and(|&o| o != j) {
                        continue 'cand;
                    }
                    local.insert(f);
                }
            }
            ok_cands.push((*qset, local));
        }
        if ok_cands.is_empty() {
            return Err(Error::Failure(format!("greedy cover stalled at group {j}")));
        }
        let warn = p.warn_fraction * Rational64::from_integer(cands.len() as i64);
        if Rational64::from_integer(ok_cands.len() as i64) < warn {
            out.thin_groups.push(j);
        }
        let pick = rng.gen_range(0..ok_cands.len());
        let (qset, local) = ok_cands.swap_remove(pick);
        taken.extend(local);
        out.chosen.push(qset);
        for e in l {
            out.blocks.push(qset.union(e).expect("checked above"));
        }
    }
    let mut deg: HashMap<VertexSet, u64> = HashMap::new();
    for f in &taken {
        for s in f.subsets(r - 1) {
            *deg.entry(s).or_insert(0) += 1;
        }
    }
    out.max_degree = deg.values().copied().max().unwrap_or(0);
    Ok(out)
}

/// Covers every edge of `h` by its own block, via [`greedy_cover`] with singleton groups.
pub fn cover_edges(g: &Complex, h: &RGraph, p: &ParamSet) -> Result<Packing> {
    let q = p.q;
    let r = h.r();
    let groups: Vec<Vec<VertexSet>> = h.edges().map(|e| vec![*e]).collect();
    let candidates: Vec<Vec<VertexSet>> = h
        .edges()
        .map(|e| g.level(q).iter().filter(|b| e.is_subset(b)).map(|b| b.difference(e)).collect())
        .collect();
    let mut p2 = p.clone();
    p2.r = r;
    let res = greedy_cover(g, &groups, &candidates, &p2)?;
    let packing = Packing::new(q, r, res.blocks);
    debug_assert!(verify_packing(g, &packing));
    Ok(packing)
}

/// How the nibble selects cliques.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum NibbleMode {
    /// Random greedy: scan the cliques in a uniformly random order.
    #[default]
    Greedy,
    /// Rounds of independent sampling with small probability; conflicting picks are dropped.
    Rounds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NibbleStats {
    pub edges: usize,
    pub cliques: usize,
    pub restarts: usize,
    /// Index of the restart that produced the returned packing.
    pub best_restart: usize,
    pub leftover_edges: usize,
    pub leftover_max_degree: u64,
    pub leftover_fraction: f64,
    pub leftover_per_restart: Vec<usize>,
}

/// Output of [`nibble_pack`].
#[derive(Debug, Clone, PartialEq)]
pub struct Nibble {
    pub packing: Packing,
    pub leftover: RGraph,
    pub stats: NibbleStats,
}

/// Options beyond the parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NibbleOptions {
    pub mode: NibbleMode,
    /// Stop once this many cliques are packed.
    pub max_blocks: Option<usize>,
}

struct Aux {
    edges: Vec<VertexSet>,
    cliques: Vec<VertexSet>,
    members: Vec<Vec<u32>>,
}

fn auxiliary(g: &Complex, q: usize, r: usize) -> Aux {
    let edges: Vec<VertexSet> = g.level(r).iter().copied().collect();
    let index: HashMap<VertexSet, u32> = edges.iter().enumerate().map(|(i, e)| (*e, i as u32)).collect();
    let mut cliques = Vec::new();
    let mut members = Vec::new();
    for b in g.level(q) {
        let m: Option<Vec<u32>> = b.subsets(r).map(|e| index.get(&e).copied()).collect();
        if let Some(m) = m {
            cliques.push(*b);
            members.push(m);
        }
    }
    Aux { edges, cliques, members }
}

fn greedy_run(aux: &Aux, opts: NibbleOptions, rng: &mut crate::params::Rng) -> Vec<usize> {
    let mut used = vec![false; aux.edges.len()];
    let mut picked = Vec::new();
    let limit = opts.max_blocks.unwrap_or(usize::MAX);
    match opts.mode {
        NibbleMode::Greedy => {
            let mut order: Vec<usize> = (0..aux.cliques.len()).collect();
            order.shuffle(rng);
            for c in order {
                if picked.len() >= limit {
                    break;
                }
                if aux.members[c].iter().all(|&e| !used[e as usize]) {
                    for &e in &aux.members[c] {
                        used[e as usize] = true;
                    }
                    picked.push(c);
                }
            }
        }
        NibbleMode::Rounds => {
            let mut alive: Vec<usize> = (0..aux.cliques.len()).collect();
            let mut stale = 0;
            while !alive.is_empty() && picked.len() < limit && stale < 64 {
                // Each edge lies in about `deg` live cliques; sample so that few conflicts arise.
                let mut deg = vec![0u32; aux.edges.len()];
                for &c in &alive {
                    for &e in &aux.members[c] {
                        deg[e as usize] += 1;
                    }
                }
                let dmax = deg.iter().copied().max().unwrap_or(1).max(1) as f64;
                let prob = (0.5 / dmax).max(1e-9);
                let sample: Vec<usize> = alive.iter().copied().filter(|_| rng.gen_bool(prob.min(1.0))).collect();
                let mut hits = vec![0u32; aux.edges.len()];
                for &c in &sample {
                    for &e in &aux.members[c] {
                        hits[e as usize] += 1;
                    }
                }
                let before = picked.len();
                for &c in &sample {
                    if picked.len() >= limit {
                        break;
                    }
                    if aux.members[c].iter().all(|&e| hits[e as usize] == 1) {
                        for &e in &aux.members[c] {
                            used[e as usize] = true;
                        }
                        picked.push(c);
                    }
                }
                stale = if picked.len() == before { stale + 1 } else { 0 };
                alive.retain(|&c| aux.members[c].iter().all(|&e| !used[e as usize]));
            }
        }
    }
    picked
}

/// Random greedy clique packing with seeded restarts; the best restart wins,
/// ties going to the lowest restart index.
pub fn nibble_pack(g: &Complex, q: usize, r: usize, p: &ParamSet) -> Result<Nibble> {
    nibble_pack_with(g, q, r, p, NibbleOptions::default())
}

pub fn nibble_pack_with(g: &Complex, q: usize, r: usize, p: &ParamSet, opts: NibbleOptions) -> Result<Nibble> {
    if q <= r {
        return Err(invalid(format!("need q > r, got q={q} r={r}")));
    }
    require_level(g, q)?;
    let aux = auxiliary(g, q, r);
    let restarts = p.budget.restarts.max(1);
    let runs = run_restarts(p.threads, restarts, |i| {
        let mut rng = rng_for(p.seed, i as u64);
        greedy_run(&aux, opts, &mut rng)
    });
    let leftovers: Vec<usize> =
        runs.iter().map(|picked| aux.edges.len() - picked.len() * binomial(q as u64, r as u64) as usize).collect();
    let best = (0..runs.len()).min_by_key(|&i| (leftovers[i], i)).unwrap_or(0);
    let blocks: Vec<VertexSet> = runs[best].iter().map(|&c| aux.cliques[c]).collect();
    let packing = Packing::new(q, r, blocks);
    let covered: HashSet<VertexSet> = packing.covered().into_iter().collect();
    let mut leftover = RGraph::on_vertices(g.vertices().to_vec(), r);
    for e in &aux.edges {
        if !covered.contains(e) {
            leftover.insert(*e)?;
        }
    }
    if !verify_packing(g, &packing) {
        return Err(Error::Internal("nibble produced an invalid packing".into()));
    }
    let stats = NibbleStats {
        edges: aux.edges.len(),
        cliques: aux.cliques.len(),
        restarts,
        best_restart: best,
        leftover_edges: leftover.len(),
        leftover_max_degree: leftover.max_degree(),
        leftover_fraction: if aux.edges.is_empty() { 0.0 } else { leftover.len() as f64 / aux.edges.len() as f64 },
        leftover_per_restart: leftovers,
    };
    Ok(Nibble { packing, leftover, stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Vec<VertexSet> {
        (0..7).map(|i| VertexSet::of(&[i, (i + 1) % 7, (i + 3) % 7])).collect()
    }

    #[test]
    fn fano_plane_verifies() {
        let k7 = RGraph::complete(7, 2);
        assert!(verify_design(&k7, &fano(), 3, 1).ok);
        let mut short = fano();
        short.pop();
        let rep = verify_design(&k7, &short, 3, 1);
        assert!(!rep.ok);
        assert_eq!(rep.miscovered.len(), 3);
    }

    #[test]
    fn duplicated_block_fails_distinctness() {
        let k7 = RGraph::complete(7, 2);
        let mut twice = fano();
        twice.extend(fano());
        let rep = verify_design(&k7, &twice, 3, 2);
        assert!(rep.miscovered.is_empty());
        assert!(!rep.ok);
        assert_eq!(rep.duplicates.len(), 7);
    }

    #[test]
    fn exact_small_designs() {
        let p = ParamSet::new(3, 2);
        let g7 = Complex::complete(7, 3);
        let d = exact_decompose(&g7, 3, 2, 1, &p).unwrap();
        assert_eq!(d.blocks().unwrap().len(), 7);
        let g6 = Complex::complete(6, 3);
        assert_eq!(exact_decompose(&g6, 3, 2, 1, &p).unwrap(), Decompose::Unsat);
        let sqs = exact_decompose(&Complex::complete(8, 4), 4, 3, 1, &ParamSet::new(4, 3)).unwrap();
        assert_eq!(sqs.blocks().unwrap().len(), 14);
    }

    #[test]
    fn exact_requires_materialized_level() {
        let g = Complex::complete(7, 2);
        assert!(exact_decompose(&g, 3, 2, 1, &ParamSet::new(3, 2)).is_err());
    }

    #[test]
    fn disjoint_cap_rejects_large_t() {
        let g = Complex::complete(7, 3);
        assert!(disjoint_decompositions(&g, 3, 2, 8, &ParamSet::new(3, 2)).is_err());
        let one = disjoint_decompositions(&g, 3, 2, 1, &ParamSet::new(3, 2)).unwrap();
        assert_eq!(one.len(), 1);
    }

    #[test]
    fn greedy_cover_examples() {
        let g = Complex::complete(20, 3);
        let p = ParamSet::new(3, 2);
        let h = RGraph::from_edges(20, 2, [VertexSet::of(&[0, 1])]).unwrap();
        let k = cover_edges(&g, &h, &p).unwrap();
        assert_eq!(k.len(), 1);
        let five = RGraph::from_edges(20, 2, (0..5).map(|i| VertexSet::of(&[2 * i, 2 * i + 1]))).unwrap();
        let k = cover_edges(&g, &five, &p).unwrap();
        assert_eq!(k.len(), 5);
        assert!(verify_packing(&g, &k));
        let err = greedy_cover(&g, &[vec![VertexSet::of(&[0, 1])]], &[vec![]], &p);
        assert!(matches!(err, Err(Error::Failure(_))));
    }

    #[test]
    fn nibble_without_cliques_leaves_everything() {
        let h = RGraph::from_edges(4, 2, [VertexSet::of(&[0, 1]), VertexSet::of(&[2, 3])]).unwrap();
        let g = Complex::induced(&h, 3);
        let out = nibble_pack(&g, 3, 2, &ParamSet::new(3, 2)).unwrap();
        assert!(out.packing.is_empty());
        assert_eq!(out.leftover, h);
    }

    #[test]
    fn nibble_partitions_edges() {
        let g = Complex::complete(12, 3);
        let out = nibble_pack(&g, 3, 2, &ParamSet::new(3, 2)).unwrap();
        assert_eq!(out.packing.len() * 3 + out.leftover.len(), 66);
        let rounds = nibble_pack_with(
            &g,
            3,
            2,
            &ParamSet::new(3, 2),
            NibbleOptions { mode: NibbleMode::Rounds, max_blocks: None },
        )
        .unwrap();
        assert_eq!(rounds.packing.len() * 3 + rounds.leftover.len(), 66);
    }
}
