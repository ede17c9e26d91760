//! Vortices and the level-by-level decomposition pipeline.

use std::collections::{BTreeSet, HashSet};

use num::{Rational64, ToPrimitive};
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::boost::{boost_select, boost_weights};
use crate::complex::Complex;
use crate::coverdown::{localized_cover, Focus, ISystem};
use crate::divisibility::check_design_divisible;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::RGraph;
use crate::packing::{
    exact_decompose, nibble_pack_with, solve_edge_cover, verify_design, Decompose, EdgeCover, NibbleOptions,
};
use crate::params::{derive_seed, ParamSet};
use crate::properties::{check_random_in, PropertyReport};
use crate::set::{Vertex, VertexSet};

/// Nested vertex sets `U_0 ⊇ U_1 ⊇ … ⊇ U_ℓ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vortex {
    pub levels: Vec<Vec<Vertex>>,
    pub mu: Rational64,
    pub m_prime: usize,
    /// `|U_ℓ|`.
    pub m: usize,
    /// `μm′ ≤ m`; flooring can break this for some `(n, μ, m′)`.
    pub lower_bound_ok: bool,
}

impl Vortex {
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }
}

/// `|U_i| = ⌊μ|U_{i−1}|⌋`, continuing while the previous level exceeds `m′`.
pub fn vortex_sizes(n: usize, mu: Rational64, m_prime: usize) -> Vec<usize> {
    let mut sizes = vec![n];
    while *sizes.last().expect("nonempty") > m_prime {
        let prev = *sizes.last().expect("nonempty") as i64;
        sizes.push((mu * Rational64::from_integer(prev)).floor().to_integer() as usize);
    }
    sizes
}

/// Random nested subsets of `V(G)` with the sizes of [`vortex_sizes`].
pub fn build_vortex(g: &Complex, mu: Rational64, m_prime: usize, p: &ParamSet) -> Result<Vortex> {
    if mu <= Rational64::from_integer(0) || mu > Rational64::new(1, 2) {
        return Err(invalid(format!("mu = {mu} must lie in (0, 1/2]")));
    }
    if m_prime < p.q + p.r {
        return Err(invalid(format!("m' = {m_prime} must be at least q + r = {}", p.q + p.r)));
    }
    let sizes = vortex_sizes(g.n(), mu, m_prime);
    let mut rng = p.rng();
    let mut levels = vec![g.vertices().to_vec()];
    for &s in &sizes[1..] {
        let mut next = levels.last().expect("nonempty").clone();
        next.shuffle(&mut rng);
        next.truncate(s);
        next.sort_unstable();
        levels.push(next);
    }
    let m = *sizes.last().expect("nonempty");
    let lower_bound_ok = levels.len() == 1 || mu * Rational64::from_integer(m_prime as i64) <= Rational64::from_integer(m as i64);
    Ok(Vortex { levels, mu, m_prime, m, lower_bound_ok })
}

/// `check_random_in` for `U_i` in `G[U_{i−1}]` at every level `i ≥ 1`.
pub fn vortex_randomness(g: &Complex, v: &Vortex, p: &ParamSet) -> Result<Vec<PropertyReport>> {
    let mut p = p.clone();
    p.mu = v.mu;
    v.levels
        .windows(2)
        .map(|w| check_random_in(&g.induced_on(&w[0]), &w[1], None, &p))
        .collect()
}

/// Tunables of [`iterate_pipeline`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub mu: Rational64,
    pub m_prime: usize,
    /// Global restarts with a fresh vortex.
    pub attempts: usize,
    /// Node budget for each exact-cover call inside the pipeline.
    pub step_nodes: u64,
    /// Use boosted weights before the nibble when they are valid probabilities.
    pub boost: bool,
    /// Share of the edges meeting the next level kept out of the nibble.
    pub reserve: Rational64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            mu: Rational64::new(1, 2),
            m_prime: 6,
            attempts: 64,
            step_nodes: 200_000,
            boost: true,
            reserve: Rational64::new(1, 2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelStats {
    pub level: usize,
    pub size: usize,
    pub next_size: usize,
    pub boosted: bool,
    pub nibble_blocks: usize,
    /// Blocks used to cover edges of each type `|e ∩ U_{i+1}| < r`, in ascending type.
    pub cover_blocks: Vec<usize>,
    /// Uncovered edges after the level; all lie inside `U_{i+1}`.
    pub leftover_edges: usize,
    pub leftover_max_degree: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub success: bool,
    pub seed: u64,
    pub attempts: usize,
    pub vortex_sizes: Vec<usize>,
    pub levels: Vec<LevelStats>,
    pub final_blocks: usize,
    pub blocks: Vec<VertexSet>,
    /// Deepest level reached by the last attempt.
    pub level_reached: usize,
    /// Uncovered edges when the last attempt stopped.
    pub leftover: Vec<VertexSet>,
    pub failure: Option<String>,
}

/// Why an attempt stopped.
enum Stop {
    Level(usize, String, Vec<VertexSet>),
    Fatal(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Fatal(e)
    }
}

/// Decomposes `G^(r)` level by level along a vortex: at each level a nibble packs
/// cliques with no edge inside `U_{i+1}` while a random reserve of edges meeting
/// `U_{i+1}` is held back, then exact cover handles the uncovered edges of
/// low type and a localized cover the top type, so that all remaining
/// edges lie in `U_{i+1}`; the last level is solved exactly. A failed attempt
/// restarts with a new vortex, trying less nibble on alternate attempts.
pub fn iterate_pipeline(g: &Complex, q: usize, r: usize, p: &ParamSet, opts: &PipelineOptions) -> Result<PipelineReport> {
    if q <= r || r < 1 {
        return Err(invalid(format!("need q > r >= 1, got q={q} r={r}")));
    }
    if opts.reserve < Rational64::from_integer(0) || opts.reserve > Rational64::from_integer(1) {
        return Err(invalid(format!("reserve = {} outside [0,1]", opts.reserve)));
    }
    if g.max_level() < q {
        return Err(invalid(format!("complex materialized to level {} but q = {q}", g.max_level())));
    }
    let host = g.level_graph(r);
    let div = check_design_divisible(&host, q, r, 1);
    if !div.ok {
        let v = &div.violations[0];
        return Err(Error::InvalidInput {
            reason: format!("not divisible: degree {} is not a multiple of {}", v.weighted_degree, v.modulus),
            witness: v.set.to_string(),
        });
    }
    let mut last = None;
    for attempt in 0..opts.attempts.max(1) {
        let mut sub = p.clone().with_seed(derive_seed(p.seed, attempt as u64));
        sub.q = q;
        sub.r = r;
        sub.budget.nodes = sub.budget.nodes.min(opts.step_nodes);
        let vortex = build_vortex(g, opts.mu, opts.m_prime, &sub)?;
        // Full nibble, then half, then none, cycling across attempts.
        let nibble_share = [Rational64::from_integer(1), Rational64::new(1, 2), Rational64::from_integer(0)][attempt % 3];
        let mut levels = Vec::new();
        match run_attempt(g, &host, q, r, &sub, opts, &vortex, nibble_share, &mut levels) {
            Ok(blocks) => {
                let final_blocks = blocks.len() - levels.iter().map(|l| l.nibble_blocks + l.cover_blocks.iter().sum::<usize>()).sum::<usize>();
                return Ok(PipelineReport {
                    success: true,
                    seed: p.seed,
                    attempts: attempt + 1,
                    vortex_sizes: vortex.sizes(),
                    level_reached: vortex.depth(),
                    levels,
                    final_blocks,
                    blocks,
                    leftover: Vec::new(),
                    failure: None,
                });
            }
            Err(Stop::Fatal(e)) => return Err(e),
            Err(Stop::Level(level, why, leftover)) => {
                last = Some(PipelineReport {
                    success: false,
                    seed: p.seed,
                    attempts: attempt + 1,
                    vortex_sizes: vortex.sizes(),
                    levels,
                    final_blocks: 0,
                    blocks: Vec::new(),
                    level_reached: level,
                    leftover,
                    failure: Some(why),
                });
            }
        }
    }
    Ok(last.expect("at least one attempt"))
}

#[allow(clippy::too_many_arguments)]
fn run_attempt(
    g: &Complex,
    host: &RGraph,
    q: usize,
    r: usize,
    p: &ParamSet,
    opts: &PipelineOptions,
    vortex: &Vortex,
    nibble_share: Rational64,
    stats: &mut Vec<LevelStats>,
) -> std::result::Result<Vec<VertexSet>, Stop> {
    let mut covered = RGraph::on_vertices(g.vertices().to_vec(), r);
    let mut blocks: Vec<VertexSet> = Vec::new();
    let take = |blocks: &mut Vec<VertexSet>, covered: &mut RGraph, new: &[VertexSet]| -> Result<()> {
        for b in new {
            for e in b.subsets(r) {
                if !covered.insert(e)? {
                    return Err(Error::Internal(format!("edge {e} covered twice")));
                }
            }
            blocks.push(*b);
        }
        Ok(())
    };
    let snapshot = |covered: &RGraph| -> Vec<VertexSet> { host.minus(covered).edges().copied().collect() };
    for i in 0..vortex.depth() {
        let u = &vortex.levels[i];
        let w = &vortex.levels[i + 1];
        let in_w: HashSet<Vertex> = w.iter().copied().collect();
        let meet = |e: &VertexSet| e.count_in(|x| in_w.contains(&x));
        let stream = (i as u64) << 8;
        let mut level = LevelStats {
            level: i,
            size: u.len(),
            next_size: w.len(),
            boosted: false,
            nibble_blocks: 0,
            cover_blocks: Vec::new(),
            leftover_edges: 0,
            leftover_max_degree: 0,
        };

        // Set aside a random share of the edges meeting W for the cover-down, then nibble
        // on cliques that avoid the reserve and have no edge inside W.
        let current = g.induced_on(u).minus(&covered);
        let mut reserve_rng = crate::params::rng_for(p.seed, stream + 3);
        let mut held = RGraph::on_vertices(u.clone(), r);
        for e in current.level(r) {
            let m = meet(e);
            if m == r || (m > 0 && reserve_rng.gen_ratio(*opts.reserve.numer() as u32, *opts.reserve.denom() as u32)) {
                held.insert(*e)?;
            }
        }
        let y: BTreeSet<VertexSet> = current
            .level(q)
            .iter()
            .filter(|b| meet(b) < r && b.subsets(r).all(|e| !held.contains(&e)))
            .copied()
            .collect();
        let mut arena = current.restrict(&y, q).minus(&held);
        if nibble_share > Rational64::from_integer(0) && !y.is_empty() {
            let mut nib_p = p.clone().with_seed(derive_seed(p.seed, stream));
            nib_p.budget.restarts = nib_p.budget.restarts.min(4);
            if opts.boost && arena.max_level() >= q + r {
                if let Ok(weights) = boost_weights(&arena, q, r, None) {
                    if weights.in_unit_range {
                        let sel = boost_select(&arena, &weights, &nib_p.clone().with_seed(derive_seed(p.seed, stream + 1)))?;
                        arena = arena.restrict(&sel.y, q);
                        level.boosted = true;
                    }
                }
            }
            let full = nibble_pack_with(&arena, q, r, &nib_p, NibbleOptions::default())?;
            let keep = (nibble_share * Rational64::from_integer(full.packing.len() as i64)).floor().to_integer() as usize;
            let chosen: Vec<VertexSet> = full.packing.blocks.iter().take(keep).copied().collect();
            level.nibble_blocks = chosen.len();
            take(&mut blocks, &mut covered, &chosen)?;
        }

        // Cover down, lowest type first.
        for t in 0..r {
            let current = g.induced_on(u).minus(&covered);
            let uncovered: Vec<VertexSet> = current.level(r).iter().copied().collect();
            if t + 1 < r {
                let primary: Vec<(VertexSet, u32)> = uncovered.iter().filter(|e| meet(e) == t).map(|e| (*e, 1)).collect();
                if primary.is_empty() {
                    level.cover_blocks.push(0);
                    continue;
                }
                let secondary: Vec<(VertexSet, u32)> = uncovered.iter().filter(|e| meet(e) != t).map(|e| (*e, 1)).collect();
                // Cliques that extend a type-t edge inside W first, then any clique.
                let narrow: Vec<(VertexSet, u32)> =
                    current.level(q).iter().filter(|b| meet(b) == t + q - r).map(|b| (*b, 1)).collect();
                let wide: Vec<(VertexSet, u32)> = current.level(q).iter().map(|b| (*b, 1)).collect();
                let seed = stream + 2 + t as u64;
                let narrow_inst = EdgeCover { r, primary: &primary, secondary: &secondary, options: &narrow };
                let outcome = match solve_edge_cover(&narrow_inst, &HashSet::new(), p, seed) {
                    Decompose::Found(found) => Decompose::Found(found),
                    _ => {
                        let inst = EdgeCover { r, primary: &primary, secondary: &secondary, options: &wide };
                        solve_edge_cover(&inst, &HashSet::new(), p, seed)
                    }
                };
                match outcome {
                    Decompose::Found(found) => {
                        level.cover_blocks.push(found.len());
                        take(&mut blocks, &mut covered, &found)?;
                    }
                    other => {
                        stats.push(level);
                        let why = match other {
                            Decompose::Timeout { nodes } => format!("type-{t} cover timed out after {nodes} nodes"),
                            _ => format!("type-{t} edges cannot be covered"),
                        };
                        return Err(Stop::Level(i, why, snapshot(&covered)));
                    }
                }
            } else {
                let owners: Vec<VertexSet> = u
                    .iter()
                    .filter(|x| !in_w.contains(x))
                    .map(|&x| VertexSet::singleton(x))
                    .filter(|s| uncovered.iter().any(|e| s.is_subset(e)))
                    .collect();
                if owners.is_empty() {
                    level.cover_blocks.push(0);
                    continue;
                }
                // Singletons suit the top type only when r − 1 = 1 vertex lies outside W.
                let sys = if r == 2 {
                    ISystem::new(1, owners)?
                } else {
                    return Err(Stop::Level(i, format!("top-type cover for r = {r} is not supported"), snapshot(&covered)));
                };
                let foc = Focus::new(&sys, vec![w.clone(); sys.sets.len()])?;
                let cover_p = p.clone().with_seed(derive_seed(p.seed, stream + 7));
                match localized_cover(&current, &sys, &foc, q, r, &cover_p) {
                    Ok(lc) => {
                        level.cover_blocks.push(lc.packing.len());
                        take(&mut blocks, &mut covered, &lc.packing.blocks)?;
                    }
                    Err(Error::Failure(why)) | Err(Error::InvalidInput { reason: why, .. }) => {
                        stats.push(level);
                        return Err(Stop::Level(i, why, snapshot(&covered)));
                    }
                    Err(Error::BudgetExceeded { nodes }) => {
                        stats.push(level);
                        return Err(Stop::Level(i, format!("localized cover timed out after {nodes} nodes"), snapshot(&covered)));
                    }
                    Err(e) => return Err(Stop::Fatal(e)),
                }
            }
        }
        let left = host.minus(&covered);
        if let Some(e) = left.edges().find(|e| meet(e) < r) {
            return Err(Stop::Fatal(Error::Internal(format!("edge {e} left outside the next level"))));
        }
        level.leftover_edges = left.len();
        level.leftover_max_degree = left.max_degree();
        stats.push(level);
    }

    let last = vortex.levels.last().expect("nonempty");
    let rest = g.induced_on(last).minus(&covered);
    match exact_decompose(&rest, q, r, 1, p)? {
        Decompose::Found(found) => take(&mut blocks, &mut covered, &found)?,
        Decompose::Unsat => {
            return Err(Stop::Level(vortex.depth(), "final leftover has no decomposition".into(), snapshot(&covered)))
        }
        Decompose::Timeout { nodes } => {
            return Err(Stop::Level(vortex.depth(), format!("final solve timed out after {nodes} nodes"), snapshot(&covered)))
        }
    }
    blocks.sort_unstable();
    if blocks.iter().any(|b| !g.contains(b)) || !verify_design(host, &blocks, q, 1).ok {
        return Err(Stop::Fatal(Error::Internal("pipeline output failed verification".into())));
    }
    Ok(blocks)
}

/// Leftover fraction as a float, for reports.
pub fn fraction(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        Rational64::new(a as i64, b as i64).to_f64().unwrap_or(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_example() {
        assert_eq!(vortex_sizes(200, Rational64::new(3, 10), 20), vec![200, 60, 18]);
        assert_eq!(vortex_sizes(15, Rational64::new(1, 2), 20), vec![15]);
    }

    #[test]
    fn vortex_is_nested() {
        let g = Complex::complete(40, 3);
        let v = build_vortex(&g, Rational64::new(1, 2), 6, &ParamSet::new(3, 2)).unwrap();
        assert_eq!(v.sizes(), vec![40, 20, 10, 5]);
        for w in v.levels.windows(2) {
            assert!(w[1].iter().all(|x| w[0].contains(x)));
        }
        assert!(v.lower_bound_ok);
        assert!(build_vortex(&g, Rational64::new(3, 5), 6, &ParamSet::new(3, 2)).is_err());
        assert!(build_vortex(&g, Rational64::new(1, 2), 4, &ParamSet::new(3, 2)).is_err());
    }

    #[test]
    fn pipeline_on_fano() {
        let g = Complex::complete(7, 5);
        let rep = iterate_pipeline(&g, 3, 2, &ParamSet::new(3, 2), &PipelineOptions::default()).unwrap();
        assert!(rep.success, "{:?}", rep.failure);
        assert_eq!(rep.blocks.len(), 7);
    }

    #[test]
    fn pipeline_rejects_nondivisible() {
        let g = Complex::complete(6, 5);
        assert!(matches!(
            iterate_pipeline(&g, 3, 2, &ParamSet::new(3, 2), &PipelineOptions::default()),
            Err(Error::InvalidInput { .. })
        ));
    }
}
