//! Measured regularity, density, extendability, supercomplex, typicality and
//! randomness properties, by full enumeration.
//!
//! Complex checks take `Y = G^(q)` (the full-complex variant) and extendability
//! takes `X = V(G)`.

use std::collections::{BTreeSet, HashMap};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::RGraph;
use crate::params::ParamSet;
use crate::set::{binomial, combinations, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    /// The quantified family was empty, so the property holds by definition.
    pub vacuous: bool,
    pub d: Option<BigRational>,
    pub d_min: Option<BigRational>,
    pub d_max: Option<BigRational>,
    pub eps: Option<BigRational>,
    pub xi: Option<BigRational>,
    pub c: Option<BigRational>,
    pub witness_min: Option<Vec<VertexSet>>,
    pub witness_max: Option<Vec<VertexSet>>,
    pub parts: Vec<PropertyReport>,
    pub pass: bool,
}

impl PropertyReport {
    fn named(property: &str) -> Self {
        PropertyReport {
            property: property.to_string(),
            vacuous: false,
            d: None,
            d_min: None,
            d_max: None,
            eps: None,
            xi: None,
            c: None,
            witness_min: None,
            witness_max: None,
            parts: Vec::new(),
            pass: false,
        }
    }
}

/// Pass thresholds; a report passes when `eps ≤ thresholds.eps`, `xi ≥ thresholds.xi`
/// and `c ≤ thresholds.c` for whichever quantities it measures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub eps: BigRational,
    pub xi: BigRational,
    pub c: BigRational,
}

impl Thresholds {
    pub fn new(eps: BigRational, xi: BigRational) -> Self {
        Thresholds { eps, xi, c: BigRational::one() }
    }

    pub fn from_params(p: &ParamSet) -> Self {
        Thresholds { eps: to_big(p.eps), xi: to_big(p.xi), c: to_big(p.eps) }
    }

    fn judge(&self, rep: &PropertyReport) -> bool {
        rep.vacuous
            || (rep.eps.as_ref().map_or(true, |e| *e <= self.eps)
                && rep.xi.as_ref().map_or(true, |x| *x >= self.xi)
                && rep.c.as_ref().map_or(true, |c| *c <= self.c))
    }
}

fn to_big(x: num::Rational64) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn power(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n.max(1)).pow(k as u32))
}

fn require_level(g: &Complex, level: usize) -> Result<()> {
    if g.max_level() < level {
        return Err(invalid(format!("complex materialized to level {} but level {level} is needed", g.max_level())));
    }
    Ok(())
}

/// `|G^(q)(e)|` for every `e ∈ G^(r)`, optionally restricted to `Y`.
fn clique_counts(g: &Complex, y: Option<&BTreeSet<VertexSet>>, q: usize, r: usize) -> Vec<(VertexSet, u64)> {
    let mut counts: HashMap<VertexSet, u64> = HashMap::new();
    for b in g.level(q) {
        if y.map_or(true, |y| y.contains(b)) {
            for e in b.subsets(r) {
                *counts.entry(e).or_insert(0) += 1;
            }
        }
    }
    g.level(r).iter().map(|e| (*e, counts.get(e).copied().unwrap_or(0))).collect()
}

/// Extremes of a per-edge count: `(min, argmin, max, argmax)`.
fn extremes(counts: &[(VertexSet, u64)]) -> Option<(u64, VertexSet, u64, VertexSet)> {
    let lo = counts.iter().min_by_key(|(e, c)| (*c, *e))?;
    let hi = counts.iter().max_by_key(|(e, c)| (*c, std::cmp::Reverse(*e)))?;
    Some((lo.1, lo.0, hi.1, hi.0))
}

/// `|G[Y]^(q)(e)| = (d ± ε)n^{q−r}` with `d` the midrange and `ε` the half-spread.
pub fn measure_regularity(
    g: &Complex,
    y: Option<&BTreeSet<VertexSet>>,
    q: usize,
    r: usize,
    th: &Thresholds,
) -> Result<PropertyReport> {
    require_level(g, q)?;
    let mut rep = PropertyReport::named("regularity");
    let counts = clique_counts(g, y, q, r);
    let Some((lo, wlo, hi, whi)) = extremes(&counts) else {
        rep.vacuous = true;
        rep.pass = true;
        return Ok(rep);
    };
    let norm = power(g.n(), q - r);
    let d_min = BigRational::from_integer(lo.into()) / &norm;
    let d_max = BigRational::from_integer(hi.into()) / &norm;
    let two = BigRational::from_integer(2.into());
    rep.d = Some((&d_min + &d_max) / &two);
    rep.eps = Some((&d_max - &d_min) / &two);
    rep.d_min = Some(d_min);
    rep.d_max = Some(d_max);
    rep.witness_min = Some(vec![wlo]);
    rep.witness_max = Some(vec![whi]);
    rep.pass = th.judge(&rep);
    Ok(rep)
}

/// `ξ_meas = min_e |G^(q′)(e)|/n^{q′−r}`.
pub fn measure_density(g: &Complex, q_prime: usize, r: usize, th: &Thresholds) -> Result<PropertyReport> {
    require_level(g, q_prime)?;
    let mut rep = PropertyReport::named("density");
    let counts = clique_counts(g, None, q_prime, r);
    let Some((lo, wlo, hi, whi)) = extremes(&counts) else {
        rep.vacuous = true;
        rep.pass = true;
        return Ok(rep);
    };
    let norm = power(g.n(), q_prime - r);
    rep.xi = Some(BigRational::from_integer(lo.into()) / &norm);
    rep.d_min = rep.xi.clone();
    rep.d_max = Some(BigRational::from_integer(hi.into()) / &norm);
    rep.witness_min = Some(vec![wlo]);
    rep.witness_max = Some(vec![whi]);
    rep.pass = th.judge(&rep);
    Ok(rep)
}

/// For every `e ∈ C(V,r)`, the number of `(q−r)`-sets `Q ⊆ V ∖ e` with every
/// `r`-subset of `Q ∪ e` other than `e` in `G^(r)`; `ξ_meas` is the minimum over `n^{q−r}`.
pub fn measure_extendability(g: &Complex, q: usize, r: usize, th: &Thresholds) -> Result<PropertyReport> {
    require_level(g, r)?;
    let mut rep = PropertyReport::named("extendability");
    if g.level(r).is_empty() {
        rep.vacuous = true;
        rep.pass = true;
        return Ok(rep);
    }
    let edges = g.level(r);
    let mut counts = Vec::new();
    for e in combinations(g.vertices(), r) {
        let rest: Vec<Vertex> = g.vertices().iter().copied().filter(|&x| !e.contains(x)).collect();
        let mut c = 0u64;
        for qs in combinations(&rest, q - r) {
            let full = qs.union(&e).expect("q fits in a vertex set");
            if full.subsets(r).all(|f| f == e || edges.contains(&f)) {
                c += 1;
            }
        }
        counts.push((e, c));
    }
    let (lo, wlo, hi, whi) = extremes(&counts).expect("r-sets exist when G^(r) is nonempty");
    let norm = power(g.n(), q - r);
    rep.xi = Some(BigRational::from_integer(lo.into()) / &norm);
    rep.d_min = rep.xi.clone();
    rep.d_max = Some(BigRational::from_integer(hi.into()) / &norm);
    rep.witness_min = Some(vec![wlo]);
    rep.witness_max = Some(vec![whi]);
    rep.pass = th.judge(&rep);
    Ok(rep)
}

/// Full `(ε,ξ,q,r)`-complex test with `Y = G^(q)`: regular with `d ≥ ξ`,
/// `(ξ,q+r,r)`-dense and `(ξ,q,r)`-extendable. `ξ_meas` is the least of `d`,
/// the density and the extendability value.
pub fn check_full_complex(g: &Complex, q: usize, r: usize, th: &Thresholds) -> Result<PropertyReport> {
    require_level(g, q + r)?;
    let reg = measure_regularity(g, None, q, r, th)?;
    let den = measure_density(g, q + r, r, th)?;
    let ext = measure_extendability(g, q, r, th)?;
    let mut rep = PropertyReport::named("complex");
    if reg.vacuous {
        rep.vacuous = true;
        rep.pass = true;
        rep.parts = vec![reg, den, ext];
        return Ok(rep);
    }
    rep.d = reg.d.clone();
    rep.eps = reg.eps.clone();
    let candidates = [reg.d.clone(), den.xi.clone(), ext.xi.clone()];
    rep.xi = candidates.into_iter().flatten().min();
    rep.pass = th.judge(&rep);
    rep.parts = vec![reg, den, ext];
    Ok(rep)
}

/// Number of families `F ⊆ G^(i)` with `1 ≤ |F| ≤ 2^i`, over all `i ≤ r`.
fn family_count(g: &Complex, r: usize) -> u128 {
    (0..=r)
        .map(|i| {
            let m = g.level(i).len() as u64;
            (1..=(1u64 << i)).map(|s| binomial(m, s) as u128).sum::<u128>()
        })
        .sum()
}

/// Worst case over `i ∈ [r]_0` and `F ⊆ G^(i)`, `1 ≤ |F| ≤ 2^i`, of the full
/// complex test of `⋂_{f∈F} G(f)` at `(q−i, r−i)`.
///
/// Fails with `BudgetExceeded` when the number of families exceeds `budget`.
pub fn check_supercomplex(g: &Complex, q: usize, r: usize, th: &Thresholds, budget: u64) -> Result<PropertyReport> {
    require_level(g, q + r)?;
    let families = family_count(g, r);
    if families > budget as u128 {
        return Err(Error::BudgetExceeded { nodes: families.min(u64::MAX as u128) as u64 });
    }
    let mut rep = PropertyReport::named("supercomplex");
    rep.vacuous = true;
    rep.pass = true;
    for i in 0..=r {
        let level: Vec<VertexSet> = g.level(i).iter().copied().collect();
        for size in 1..=(1usize << i).min(level.len()) {
            for idx in index_subsets(level.len(), size) {
                let fam: Vec<VertexSet> = idx.iter().map(|&k| level[k]).collect();
                let inter = g.intersect_links(&fam)?;
                let sub = check_full_complex(&inter, q - i, r - i, th)?;
                merge_worst(&mut rep, &sub, &fam);
            }
        }
    }
    rep.pass = rep.vacuous || th.judge(&rep);
    Ok(rep)
}

/// Folds a sub-report into the running worst case, keeping the family that attains it.
fn merge_worst(acc: &mut PropertyReport, sub: &PropertyReport, fam: &[VertexSet]) {
    if sub.vacuous {
        return;
    }
    acc.vacuous = false;
    if let Some(e) = &sub.eps {
        if acc.eps.as_ref().map_or(true, |a| e > a) {
            acc.eps = Some(e.clone());
            acc.witness_max = Some(fam.to_vec());
        }
    }
    if let Some(x) = &sub.xi {
        if acc.xi.as_ref().map_or(true, |a| x < a) {
            acc.xi = Some(x.clone());
            acc.witness_min = Some(fam.to_vec());
        }
    }
}

fn index_subsets(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= m { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = k;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < m - k + i {
                    c[i] += 1;
                    for j in i + 1..k {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        cur = next;
        Some(out)
    })
}

/// `c_meas = max_A | |⋂_{S∈A} H(S)| − p^{|A|}n | / (p^{|A|}n)` over nonempty
/// families `A` of `(r−1)`-subsets of `V(H)` with `|A| ≤ h`.
pub fn check_typicality(h_graph: &RGraph, h: usize, p: &BigRational, budget: u64) -> Result<PropertyReport> {
    if !p.is_positive() || *p > BigRational::one() {
        return Err(invalid(format!("p = {p} must lie in (0,1]")));
    }
    let r = h_graph.r();
    let n = h_graph.n();
    if h * (r - 1) > n {
        return Err(invalid(format!("h(r-1) = {} exceeds n = {n}", h * (r - 1))));
    }
    let sets: Vec<VertexSet> = combinations(h_graph.vertices(), r - 1).collect();
    let total: u128 = (1..=h).map(|s| binomial(sets.len() as u64, s as u64) as u128).sum();
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { nodes: total.min(u64::MAX as u128) as u64 });
    }
    let nbrs: Vec<Vec<bool>> = sets
        .iter()
        .map(|s| {
            let mut v = vec![false; h_graph.vertices().len()];
            for (k, &x) in h_graph.vertices().iter().enumerate() {
                if let Some(e) = s.with(x) {
                    v[k] = h_graph.contains(&e);
                }
            }
            v
        })
        .collect();
    let mut rep = PropertyReport::named("typicality");
    let n_big = BigRational::from_integer(n.into());
    let mut worst: Option<(BigRational, Vec<VertexSet>)> = None;
    for size in 1..=h.min(sets.len()) {
        let expected = p.pow(size as i32) * &n_big;
        for idx in index_subsets(sets.len(), size) {
            let count = (0..h_graph.vertices().len()).filter(|&k| idx.iter().all(|&a| nbrs[a][k])).count();
            let dev = (BigRational::from_integer(count.into()) - &expected).abs() / &expected;
            if worst.as_ref().map_or(true, |(w, _)| dev > *w) {
                worst = Some((dev, idx.iter().map(|&a| sets[a]).collect()));
            }
        }
    }
    match worst {
        Some((c, fam)) => {
            rep.c = Some(c);
            rep.witness_max = Some(fam);
            rep.pass = true;
        }
        None => {
            rep.vacuous = true;
            rep.pass = true;
        }
    }
    Ok(rep)
}

/// `bin(k, μ, x) = C(k,x) μ^x (1−μ)^{k−x}`.
pub fn binomial_mass(k: usize, mu: &BigRational, x: usize) -> BigRational {
    if x > k {
        return BigRational::zero();
    }
    let one = BigRational::one();
    BigRational::from_integer(binomial(k as u64, x as u64).into()) * mu.pow(x as i32) * (one - mu).pow((k - x) as i32)
}

/// Measures (R1) `|U|` against `μn ± n^{2/3}`, (R2) the split of `G[Y]^(q)(e)` by
/// `|Q ∩ U|` against `(1±ε)bin(q−r,μ,x)dn^{q−r}`, (R3) `min_e |G[Y]^(q+r)(e)[U]|/(μn)^q`
/// and (R4) the supercomplex test of `G[U]`-restricted link intersections.
pub fn check_random_in(
    g: &Complex,
    u: &[Vertex],
    y: Option<&BTreeSet<VertexSet>>,
    p: &ParamSet,
) -> Result<PropertyReport> {
    let (q, r) = (p.q, p.r);
    require_level(g, q + r)?;
    let th = Thresholds::from_params(p);
    let mu = to_big(p.mu);
    let n = g.n();
    let mut inside = vec![false; g.vertices().iter().map(|&x| x as usize + 1).max().unwrap_or(0)];
    for &x in u {
        if (x as usize) >= inside.len() || g.vertices().binary_search(&x).is_err() {
            return Err(invalid(format!("vertex {x} of U is not in G")));
        }
        inside[x as usize] = true;
    }
    let in_u = |x: Vertex| inside[x as usize];

    let mut r1 = PropertyReport::named("R1 size");
    let target = &mu * BigRational::from_integer(n.into());
    let dev = (BigRational::from_integer(u.len().into()) - &target).abs();
    r1.d = Some(BigRational::from_integer(u.len().into()));
    r1.eps = Some(dev.clone());
    r1.pass = (n as f64).powf(2.0 / 3.0) + 1e-9 >= num::ToPrimitive::to_f64(&dev).unwrap_or(f64::INFINITY);

    let mut r2 = PropertyReport::named("R2 binomial split");
    let mut split: HashMap<VertexSet, Vec<u64>> = HashMap::new();
    for b in g.level(q) {
        if y.map_or(true, |y| y.contains(b)) {
            for e in b.subsets(r) {
                let x = b.difference(&e).count_in(in_u);
                split.entry(e).or_insert_with(|| vec![0; q - r + 1])[x] += 1;
            }
        }
    }
    let norm = power(n, q - r);
    let mut lo: Option<(BigRational, VertexSet)> = None;
    let mut hi: Option<(BigRational, VertexSet)> = None;
    let mut impossible = false;
    for e in g.level(r) {
        let row = split.get(e).cloned().unwrap_or_else(|| vec![0; q - r + 1]);
        for (x, &c) in row.iter().enumerate() {
            let b = binomial_mass(q - r, &mu, x) * &norm;
            if b.is_zero() {
                impossible |= c != 0;
                continue;
            }
            let v = BigRational::from_integer(c.into()) / b;
            if lo.as_ref().map_or(true, |(l, _)| v < *l) {
                lo = Some((v.clone(), *e));
            }
            if hi.as_ref().map_or(true, |(h, _)| v > *h) {
                hi = Some((v, *e));
            }
        }
    }
    match (lo, hi) {
        (Some((l, wl)), Some((h, wh))) => {
            let sum = &l + &h;
            r2.d = Some(&sum / BigRational::from_integer(2.into()));
            r2.eps = Some(if sum.is_zero() { BigRational::zero() } else { (&h - &l) / &sum });
            r2.d_min = Some(l);
            r2.d_max = Some(h);
            r2.witness_min = Some(vec![wl]);
            r2.witness_max = Some(vec![wh]);
            r2.xi = r2.d.clone();
            r2.pass = !impossible && th.judge(&r2);
        }
        _ => {
            r2.vacuous = g.level(r).is_empty();
            r2.pass = r2.vacuous;
        }
    }

    let mut r3 = PropertyReport::named("R3 dense in U");
    let mut dense: HashMap<VertexSet, u64> = HashMap::new();
    for b in g.level(q + r) {
        if y.map_or(true, |y| b.subsets(q).all(|s| y.contains(&s))) {
            for e in b.subsets(r) {
                if b.difference(&e).iter().all(in_u) {
                    *dense.entry(e).or_insert(0) += 1;
                }
            }
        }
    }
    let counts: Vec<(VertexSet, u64)> =
        g.level(r).iter().map(|e| (*e, dense.get(e).copied().unwrap_or(0))).collect();
    if let Some((l, wl, _, _)) = extremes(&counts) {
        let base = (&mu * BigRational::from_integer(n.into())).pow(q as i32);
        r3.xi = Some(if base.is_zero() { BigRational::zero() } else { BigRational::from_integer(l.into()) / base });
        r3.witness_min = Some(vec![wl]);
        r3.pass = th.judge(&r3);
    } else {
        r3.vacuous = true;
        r3.pass = true;
    }

    let mut r4 = PropertyReport::named("R4 intersections in U");
    r4.vacuous = true;
    r4.pass = true;
    let families = family_count(g, r);
    if families > p.budget.enumeration as u128 {
        return Err(Error::BudgetExceeded { nodes: families.min(u64::MAX as u128) as u64 });
    }
    for i in 0..=r {
        let level: Vec<VertexSet> = g.level(i).iter().copied().collect();
        for size in 1..=(1usize << i).min(level.len()) {
            for idx in index_subsets(level.len(), size) {
                let fam: Vec<VertexSet> = idx.iter().map(|&k| level[k]).collect();
                let inter = g.intersect_links(&fam)?;
                let keep: Vec<Vertex> = inter.vertices().iter().copied().filter(|&x| in_u(x)).collect();
                let sub = check_full_complex(&inter.induced_on(&keep), q - i, r - i, &th)?;
                merge_worst(&mut r4, &sub, &fam);
            }
        }
    }
    r4.pass = r4.vacuous || th.judge(&r4);

    let mut rep = PropertyReport::named("random");
    rep.pass = r1.pass && r2.pass && r3.pass && r4.pass;
    rep.eps = r2.eps.clone();
    rep.xi = r3.xi.clone();
    rep.parts = vec![r1, r2, r3, r4];
    Ok(rep)
}

/// `c = r!/(3·14^r·q^{2r})`, the minimum-degree constant, for reporting.
pub fn min_degree_constant(q: usize, r: usize) -> BigRational {
    let fact: BigInt = (1..=r as u64).map(BigInt::from).product();
    let den = BigInt::from(3) * BigInt::from(14).pow(r as u32) * BigInt::from(q).pow(2 * r as u32);
    BigRational::new(fact, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(a: u64, b: u64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn lenient() -> Thresholds {
        Thresholds::new(BigRational::one(), BigRational::zero())
    }

    #[test]
    fn regularity_of_complete_complexes() {
        let rep = measure_regularity(&Complex::complete(10, 3), None, 3, 2, &lenient()).unwrap();
        assert_eq!(rep.d, Some(ratio(8, 10)));
        assert_eq!(rep.eps, Some(BigRational::zero()));
        let rep = measure_regularity(&Complex::complete(7, 3), None, 3, 2, &lenient()).unwrap();
        assert_eq!(rep.d, Some(ratio(5, 7)));
    }

    #[test]
    fn empty_level_is_vacuous() {
        let g = Complex::empty((0..5).collect(), 3);
        assert!(measure_regularity(&g, None, 3, 2, &lenient()).unwrap().vacuous);
        let ext = measure_extendability(&g, 3, 2, &Thresholds::new(BigRational::zero(), BigRational::one())).unwrap();
        assert!(ext.vacuous && ext.pass);
    }

    #[test]
    fn density_and_extendability_closed_forms() {
        let g = Complex::complete(10, 5);
        let den = measure_density(&g, 5, 2, &lenient()).unwrap();
        assert_eq!(den.xi, Some(ratio(56, 1000)));
        let ext = measure_extendability(&g, 3, 2, &lenient()).unwrap();
        assert_eq!(ext.xi, Some(ratio(8, 10)));
    }

    #[test]
    fn supercomplex_of_small_complete_complex() {
        let g = Complex::complete(6, 5);
        let rep = check_supercomplex(&g, 3, 2, &lenient(), 1_000_000).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.eps, Some(BigRational::zero()));
        let empty = Complex::empty((0..6).collect(), 5);
        assert!(check_supercomplex(&empty, 3, 2, &lenient(), 1_000_000).unwrap().vacuous);
        assert!(matches!(check_supercomplex(&g, 3, 2, &lenient(), 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn typicality_of_complete_graph() {
        let k = RGraph::complete(9, 2);
        let one = BigRational::one();
        assert_eq!(check_typicality(&k, 1, &one, 1_000_000).unwrap().c, Some(ratio(1, 9)));
        assert_eq!(check_typicality(&k, 2, &one, 1_000_000).unwrap().c, Some(ratio(2, 9)));
        assert_eq!(check_typicality(&RGraph::new(9, 2), 1, &ratio(1, 2), 1_000_000).unwrap().c, Some(one));
        assert!(check_typicality(&k, 1, &BigRational::zero(), 1_000_000).is_err());
    }

    #[test]
    fn whole_vertex_set_is_random() {
        let g = Complex::complete(7, 5);
        let mut p = ParamSet::new(3, 2);
        p.mu = num::Rational64::from_integer(1);
        p.eps = num::Rational64::new(1, 2);
        p.xi = num::Rational64::new(1, 100);
        let all: Vec<Vertex> = (0..7).collect();
        let rep = check_random_in(&g, &all, None, &p).unwrap();
        assert!(rep.parts[0].pass);
        assert!(rep.parts[1].pass, "{:?}", rep.parts[1]);
        let empty = check_random_in(&g, &[], None, &p).unwrap();
        assert_eq!(empty.parts[2].xi, Some(BigRational::zero()));
        assert!(!empty.parts[2].pass);
    }
}
