//! Edge gadgets, reweighting of q-cliques to a target density, and boosted selection.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{invalid, Error, Result};
use crate::packing::{nibble_pack, Nibble};
use crate::params::{derive_seed, ParamSet};
use crate::properties::{measure_density, measure_regularity, PropertyReport, Thresholds};
use crate::set::{binomial, combinations, Vertex, VertexSet};

/// Gadget weights `w_j` on `q`-sets `Q ⊆ e ∪ J` with `|Q ∩ e| = j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetWeights {
    pub q: usize,
    pub r: usize,
    pub w: Vec<BigRational>,
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `2^{r−j}(r−j)!/C(q−r+j, j)`.
pub fn gadget_bound(q: usize, r: usize, j: usize) -> BigRational {
    let k = (r - j) as u64;
    let fact: u64 = (1..=k).product();
    BigRational::new(BigInt::from((1u64 << k) * fact), BigInt::from(binomial((q - r + j) as u64, j as u64)))
}

/// Number of `q`-subsets `Q` of `e ∪ J` with `|Q ∩ e| = j` containing a fixed `r`-set
/// `e′` with `|e′ ∩ e| = s`.
fn through_count(q: usize, r: usize, s: usize, j: usize) -> u64 {
    if j < s || q + s < j + r {
        return 0;
    }
    binomial((r - s) as u64, (j - s) as u64) * binomial((q - r + s) as u64, (q + s - j - r) as u64)
}

/// Solves for weights such that, on the complete complex over `e ∪ J`, every `r`-set
/// `e′` gets total weight `[e′ = e]`, then checks the identity exhaustively when
/// `q + r ≤ 8` and the magnitude bound entrywise.
pub fn edge_gadget(q: usize, r: usize) -> Result<GadgetWeights> {
    if r < 1 || q <= r {
        return Err(invalid(format!("need q > r >= 1, got q={q} r={r}")));
    }
    let mut w = vec![BigRational::zero(); r + 1];
    for s in (0..=r).rev() {
        let diag = through_count(q, r, s, s);
        if diag == 0 {
            return Err(Error::Internal(format!("singular gadget system at s={s}")));
        }
        let mut rhs = if s == r { BigRational::one() } else { BigRational::zero() };
        for j in s + 1..=r {
            rhs -= int(through_count(q, r, s, j)) * &w[j];
        }
        w[s] = rhs / int(diag);
    }
    let g = GadgetWeights { q, r, w };
    if q + r <= 8 {
        if let Some(bad) = gadget_identity_violation(&g) {
            return Err(Error::Internal(format!("gadget identity fails at {bad}")));
        }
    }
    for j in 0..=r {
        if g.w[j].abs() > gadget_bound(q, r, j) {
            return Err(Error::Internal(format!("gadget weight w_{j} = {} exceeds its bound", g.w[j])));
        }
    }
    Ok(g)
}

/// Enumerates every `r`-subset `e′` of `[q+r]` with `e = [r]` and returns one whose
/// weighted count differs from `[e′ = e]`.
pub fn gadget_identity_violation(g: &GadgetWeights) -> Option<VertexSet> {
    let (q, r) = (g.q, g.r);
    let ground: Vec<Vertex> = (0..(q + r) as Vertex).collect();
    let e: VertexSet = combinations(&ground, r).next().expect("r <= q + r");
    let qsets: Vec<VertexSet> = combinations(&ground, q).collect();
    for ep in combinations(&ground, r) {
        let total: BigRational =
            qsets.iter().filter(|b| ep.is_subset(b)).map(|b| g.w[b.intersection_len(&e)].clone()).sum();
        let want = if ep == e { BigRational::one() } else { BigRational::zero() };
        if total != want {
            return Some(ep);
        }
    }
    None
}

/// Reweighting `ψ` of `G^(q)` with every edge receiving total weight `d′n^{q−r}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostWeights {
    pub q: usize,
    pub r: usize,
    pub d_prime: BigRational,
    pub psi: BTreeMap<VertexSet, BigRational>,
    pub min: BigRational,
    pub max: BigRational,
    /// `1/4 ≤ ψ ≤ 3/4` everywhere.
    pub in_quarter_range: bool,
    /// `0 ≤ ψ ≤ 1` everywhere, so `ψ` can be used as probabilities.
    pub in_unit_range: bool,
}

impl BoostWeights {
    /// The weight received by each edge: `Σ_{Q ⊇ e} ψ(Q)`.
    pub fn row_sums(&self) -> HashMap<VertexSet, BigRational> {
        let mut sums: HashMap<VertexSet, BigRational> = HashMap::new();
        for (b, v) in &self.psi {
            for e in b.subsets(self.r) {
                *sums.entry(e).or_insert_with(BigRational::zero) += v;
            }
        }
        sums
    }

    /// Lines `Q<TAB>numerator/denominator` in canonical order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (b, v) in &self.psi {
            let verts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{}\t{}/{}\n", verts.join(" "), v.numer(), v.denom()));
        }
        out
    }
}

/// The regularity midrange `d` of `G` at `(q, r)`; `d′` defaults to half of it.
pub fn default_target(g: &Complex, q: usize, r: usize) -> Result<BigRational> {
    let th = Thresholds::new(BigRational::one(), BigRational::zero());
    let rep = measure_regularity(g, None, q, r, &th)?;
    let d = rep.d.ok_or_else(|| Error::Unsupported("G^(r) is empty".into()))?;
    Ok(d / int(2))
}

/// `ψ(Q) = 1/2 + Σ_{X ∈ G^(q+r)} Σ_{e ⊆ X, Q ⊆ X} c_e w_{|Q∩e|}` with
/// `c_e = (d′n^{q−r} − |G^(q)(e)|/2)/|G^(q+r)(e)|`.
pub fn boost_weights(g: &Complex, q: usize, r: usize, d_prime: Option<BigRational>) -> Result<BoostWeights> {
    if g.max_level() < q + r {
        return Err(invalid(format!("complex materialized to level {} but q + r = {}", g.max_level(), q + r)));
    }
    let gadget = edge_gadget(q, r)?;
    let d_prime = match d_prime {
        Some(d) => d,
        None => default_target(g, q, r)?,
    };
    let target = &d_prime * BigRational::from_integer(BigInt::from(g.n()).pow((q - r) as u32));
    let half = BigRational::new(1.into(), 2.into());
    let clique_deg = g.degree_map(q, r);
    let top_deg = g.degree_map(q + r, r);
    let mut coeff: HashMap<VertexSet, BigRational> = HashMap::new();
    for e in g.level(r) {
        let top = top_deg.get(e).copied().unwrap_or(0);
        if top == 0 {
            return Err(Error::Unsupported(format!("edge {e} lies in no (q+r)-set of G")));
        }
        let low = clique_deg.get(e).copied().unwrap_or(0) as u64;
        coeff.insert(*e, (&target - &half * int(low)) / int(top as u64));
    }
    let mut psi: BTreeMap<VertexSet, BigRational> = g.level(q).iter().map(|b| (*b, half.clone())).collect();
    for x in g.level(q + r) {
        for e in x.subsets(r) {
            let c = &coeff[&e];
            if c.is_zero() {
                continue;
            }
            for b in x.subsets(q) {
                let add = c * &gadget.w[b.intersection_len(&e)];
                *psi.get_mut(&b).expect("subsets of X lie in G") += add;
            }
        }
    }
    let min = psi.values().min().cloned().unwrap_or_else(|| half.clone());
    let max = psi.values().max().cloned().unwrap_or_else(|| half.clone());
    let quarter = BigRational::new(1.into(), 4.into());
    let three_quarters = BigRational::new(3.into(), 4.into());
    let weights = BoostWeights {
        q,
        r,
        in_quarter_range: min >= quarter && max <= three_quarters,
        in_unit_range: !min.is_negative() && max <= BigRational::one(),
        d_prime,
        psi,
        min,
        max,
    };
    let sums = weights.row_sums();
    for e in g.level(r) {
        let s = sums.get(e).cloned().unwrap_or_else(BigRational::zero);
        if s != target {
            return Err(Error::Internal(format!("edge {e} has weight {s}, expected {target}")));
        }
    }
    Ok(weights)
}

/// A random `Y ⊆ G^(q)` with measured regularity and density of `G[Y]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoostSelection {
    pub y: BTreeSet<VertexSet>,
    pub regularity: PropertyReport,
    pub density: PropertyReport,
}

/// Includes each `Q` independently with probability `ψ(Q)`.
pub fn boost_select(g: &Complex, psi: &BoostWeights, p: &ParamSet) -> Result<BoostSelection> {
    if !psi.in_unit_range {
        return Err(invalid("ψ has values outside [0,1]"));
    }
    let mut rng = p.rng();
    let mut y = BTreeSet::new();
    for (b, v) in &psi.psi {
        let prob = v.to_f64().unwrap_or(0.0).clamp(0.0, 1.0);
        if rng.gen_bool(prob) {
            y.insert(*b);
        }
    }
    let th = Thresholds::from_params(p);
    let regularity = measure_regularity(g, Some(&y), psi.q, psi.r, &th)?;
    let restricted = g.restrict(&y, psi.q);
    let density = measure_density(&restricted, psi.q + psi.r, psi.r, &th)?;
    Ok(BoostSelection { y, regularity, density })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostedStats {
    pub psi_min: BigRational,
    pub psi_max: BigRational,
    pub selected: usize,
    pub boosted_leftover: usize,
    pub baseline_leftover: usize,
}

/// Boost, select `Y`, and run the nibble on `G[Y]`; the baseline is the nibble on
/// `G` with the same seed.
pub fn boosted_nibble(g: &Complex, q: usize, r: usize, p: &ParamSet) -> Result<(Nibble, BoostedStats)> {
    let weights = boost_weights(g, q, r, None)?;
    let sel = boost_select(g, &weights, &p.clone().with_seed(derive_seed(p.seed, u64::MAX)))?;
    let boosted = nibble_pack(&g.restrict(&sel.y, q), q, r, p)?;
    let baseline = nibble_pack(g, q, r, p)?;
    let stats = BoostedStats {
        psi_min: weights.min,
        psi_max: weights.max,
        selected: sel.y.len(),
        boosted_leftover: boosted.leftover.len(),
        baseline_leftover: baseline.leftover.len(),
    };
    Ok((boosted, stats))
}
