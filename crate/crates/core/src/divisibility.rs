//! Divisibility conditions for clique decompositions and the make-divisible repair.

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::coverdown::{Focus, ISystem};
use crate::error::{Error, Result};
use crate::hypergraph::{MultiRGraph, RGraph};
use crate::packing::{cover_edges, nibble_pack};
use crate::params::{derive_seed, ParamSet};
use crate::set::{binomial, VertexSet};

/// A set `S` at which `C(q−|S|, r−|S|) ∤ λ|H(S)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub set: VertexSet,
    /// `λ|H(S)|`.
    pub weighted_degree: u64,
    pub modulus: u64,
    pub residue: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub ok: bool,
    /// At most [`MAX_VIOLATIONS`] failing sets, by increasing size then lexicographically.
    pub violations: Vec<Violation>,
}

pub const MAX_VIOLATIONS: usize = 100;

/// Checks `C(q−|S|, r−|S|) | λ|H(S)|` for every `S ⊆ V(H)` with `|S| ≤ r−1`.
///
/// Sets lying in no edge have degree 0 and never fail, so only subsets of edges are examined.
pub fn check_design_divisible(h: &RGraph, q: usize, r: usize, lambda: u64) -> DivisibilityReport {
    let mut violations = Vec::new();
    'levels: for s in 0..r {
        let modulus = binomial((q - s) as u64, (r - s) as u64);
        let mut degs: Vec<(VertexSet, u64)> = h.degree_map(s).into_iter().collect();
        degs.sort_unstable();
        for (set, d) in degs {
            let w = lambda * d;
            if w % modulus != 0 {
                violations.push(Violation { set, weighted_degree: w, modulus, residue: w % modulus });
                if violations.len() == MAX_VIOLATIONS {
                    break 'levels;
                }
            }
        }
    }
    DivisibilityReport { ok: violations.is_empty(), violations }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub ok: bool,
    /// `λC(n,r)/C(q,r)` when admissible.
    pub block_count: Option<u64>,
    /// Smallest `i` with `C(q−i, r−i) ∤ λC(n−i, r−i)`.
    pub failing_level: Option<usize>,
}

/// The counting conditions for an `(n,q,r,λ)`-design.
pub fn admissible_params(n: usize, q: usize, r: usize, lambda: u64) -> Admissibility {
    let failing_level = (0..r).find(|&i| {
        let m = binomial((q - i) as u64, (r - i) as u64) as u128;
        (lambda as u128 * binomial((n - i) as u64, (r - i) as u64) as u128) % m != 0
    });
    let ok = failing_level.is_none();
    let block_count =
        ok.then(|| lambda * binomial(n as u64, r as u64) / binomial(q as u64, r as u64));
    Admissibility { ok, block_count, failing_level }
}

/// `K_q^(r)`-divisibility of a multigraph, counting multiplicities.
pub fn check_multi_divisible(m: &MultiRGraph, q: usize) -> bool {
    let r = m.r();
    (0..r).all(|s| {
        let modulus = binomial((q - s) as u64, (r - s) as u64);
        m.degree_map(s).values().all(|d| d % modulus == 0)
    })
}

/// Divisibility of `H` with respect to an `i`-system and focus: for all `S` and
/// `f ⊆ V ∖ S` with `|f| ≤ r−i−1` and `f ⊄ U_S`, `C(q−i−|f|, r−i−|f|) | |H(S ∪ f)|`.
pub fn divisible_wrt_focus(h: &RGraph, sys: &ISystem, foc: &Focus, q: usize, r: usize) -> bool {
    let i = sys.i;
    for (idx, s) in sys.sets.iter().enumerate() {
        let u = &foc.sets[idx];
        let Ok(link) = h.link(s) else { return false };
        for size in 0..r.saturating_sub(i) {
            let modulus = binomial((q - i - size) as u64, (r - i - size) as u64);
            for (f, d) in link.degree_map(size) {
                if f.iter().any(|x| u.binary_search(&x).is_err()) && d % modulus != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Finds `L ⊆ G^(r) − forbidden` with `G^(r) − L` divisible and small `Δ(L)`.
///
/// If `G^(r)` is already divisible the empty graph is returned. Otherwise each
/// restart covers the forbidden edges by the greedy cover, packs the rest with
/// the nibble, and takes the leftover as `L`; the restart with the smallest
/// `(Δ(L), |L|)` wins.
pub fn make_divisible(g: &Complex, forbidden: &RGraph, p: &ParamSet) -> Result<RGraph> {
    let (q, r) = (p.q, p.r);
    let host = g.level_graph(r);
    if let Some(e) = forbidden.edges().find(|e| !host.contains(e)) {
        return Err(crate::error::invalid(format!("forbidden edge {e} is not in G")));
    }
    if check_design_divisible(&host, q, r, 1).ok {
        return Ok(RGraph::on_vertices(g.vertices().to_vec(), r));
    }
    let mut best: Option<(u64, usize, RGraph)> = None;
    let mut last_err = None;
    for k in 0..p.budget.restarts.max(1) {
        let sub = p.clone().with_seed(derive_seed(p.seed, k as u64));
        let cover = match cover_edges(g, forbidden, &sub) {
            Ok(c) => c,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let mut covered = RGraph::on_vertices(g.vertices().to_vec(), r);
        for e in cover.covered() {
            covered.insert(e)?;
        }
        let rest = g.minus(&covered);
        let mut single = sub.clone();
        single.budget.restarts = 1;
        let nib = nibble_pack(&rest, q, r, &single)?;
        let l = nib.leftover;
        debug_assert!(check_design_divisible(&host.minus(&l), q, r, 1).ok);
        let key = (l.max_degree(), l.len());
        if best.as_ref().map_or(true, |(d, n, _)| key < (*d, *n)) {
            best = Some((key.0, key.1, l));
        }
    }
    match best {
        Some((_, _, l)) => Ok(l),
        None => Err(last_err.unwrap_or_else(|| Error::Failure("no restart succeeded".into()))),
    }
}
