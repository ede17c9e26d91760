//! Localized covering: i-systems, focuses, type functions, partition pairs,
//! the diagonal-dominant solve, decomposition lifting and the localized cover.

use std::collections::{BTreeMap, HashSet};

use num::{BigRational, One, Signed, Zero};
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{invalid, Error, Result};
use crate::packing::{exact_decompose_excluding, verify_design, verify_packing, Decompose, Packing};
use crate::params::{derive_seed, ParamSet};
use crate::set::{binomial, combinations, Vertex, VertexSet};

/// Distinct `i`-subsets `S_1, …, S_p` of the host vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ISystem {
    pub i: usize,
    pub sets: Vec<VertexSet>,
}

impl ISystem {
    pub fn new(i: usize, sets: Vec<VertexSet>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &sets {
            if s.len() != i {
                return Err(invalid(format!("{s} does not have size {i}")));
            }
            if !seen.insert(*s) {
                return Err(invalid(format!("{s} is listed twice")));
            }
        }
        Ok(ISystem { i, sets })
    }

    /// Index of the unique member contained in `f`, or an error if there are several.
    pub fn member_in(&self, f: &VertexSet) -> std::result::Result<Option<usize>, (usize, usize)> {
        let mut found = None;
        for (idx, s) in self.sets.iter().enumerate() {
            if s.is_subset(f) {
                if let Some(prev) = found {
                    return Err((prev, idx));
                }
                found = Some(idx);
            }
        }
        Ok(found)
    }
}

/// Target vertex sets `U_S ⊆ V ∖ S`, aligned with the members of an [`ISystem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Focus {
    pub sets: Vec<Vec<Vertex>>,
}

impl Focus {
    pub fn new(sys: &ISystem, sets: Vec<Vec<Vertex>>) -> Result<Self> {
        if sets.len() != sys.sets.len() {
            return Err(invalid("focus needs one vertex set per member of the system"));
        }
        let mut out = Vec::with_capacity(sets.len());
        for (s, mut u) in sys.sets.iter().zip(sets) {
            u.sort_unstable();
            u.dedup();
            if let Some(x) = u.iter().find(|&&x| s.contains(x)) {
                return Err(invalid(format!("U_S for S = {s} contains {x} from S")));
            }
            out.push(u);
        }
        Ok(Focus { sets: out })
    }

    fn contains(&self, idx: usize, x: Vertex) -> bool {
        self.sets[idx].binary_search(&x).is_ok()
    }

    fn meet(&self, idx: usize, e: &VertexSet) -> usize {
        e.count_in(|x| self.contains(idx, x))
    }
}

/// Checks that every `f ∈ G` with `|f| ≥ r` contains at most one member of `sys`.
pub fn check_exclusive(g: &Complex, sys: &ISystem, r: usize) -> Result<()> {
    for level in r..=g.max_level() {
        for f in g.level(level) {
            if let Err((a, b)) = sys.member_in(f) {
                return Err(Error::InvalidInput {
                    reason: format!("set contains both {} and {}", sys.sets[a], sys.sets[b]),
                    witness: f.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// `τ_{r′}(e) = |e ∩ U_S|` for every important `r′`-set `e ∈ G`, where `S ⊆ e` is unique.
pub fn type_function(
    g: &Complex,
    sys: &ISystem,
    foc: &Focus,
    r: usize,
    r_prime: usize,
) -> Result<BTreeMap<VertexSet, usize>> {
    check_exclusive(g, sys, r)?;
    let mut out = BTreeMap::new();
    for e in g.level(r_prime) {
        if let Ok(Some(idx)) = sys.member_in(e) {
            out.insert(*e, foc.meet(idx, e));
        }
    }
    Ok(out)
}

/// Ordered partitions of `G^(r)` and `G^(q)` with a constant containment count `B[ℓ][k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionPair {
    pub q: usize,
    pub r: usize,
    pub edge_classes: Vec<Vec<VertexSet>>,
    pub clique_classes: Vec<Vec<VertexSet>>,
    pub containment: Vec<Vec<u64>>,
}

impl PartitionPair {
    /// Builds a pair from explicit classes, computing `B` by enumeration.
    /// Fails with the offending block if some count is not constant on a clique class.
    pub fn from_classes(
        q: usize,
        r: usize,
        edge_classes: Vec<Vec<VertexSet>>,
        clique_classes: Vec<Vec<VertexSet>>,
    ) -> Result<Self> {
        let class_of: std::collections::HashMap<VertexSet, usize> = edge_classes
            .iter()
            .enumerate()
            .flat_map(|(l, c)| c.iter().map(move |e| (*e, l)))
            .collect();
        let mut containment = vec![vec![0u64; clique_classes.len()]; edge_classes.len()];
        for (k, class) in clique_classes.iter().enumerate() {
            let mut first: Option<Vec<u64>> = None;
            for b in class {
                let mut counts = vec![0u64; edge_classes.len()];
                for e in b.subsets(r) {
                    if let Some(&l) = class_of.get(&e) {
                        counts[l] += 1;
                    }
                }
                match &first {
                    None => first = Some(counts),
                    Some(f) if *f != counts => {
                        return Err(Error::InvalidInput {
                            reason: format!("containment counts differ within clique class {k}"),
                            witness: b.to_string(),
                        })
                    }
                    _ => {}
                }
            }
            if let Some(f) = first {
                for (l, c) in f.into_iter().enumerate() {
                    containment[l][k] = c;
                }
            }
        }
        Ok(PartitionPair { q, r, edge_classes, clique_classes, containment })
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.containment
            .iter()
            .enumerate()
            .all(|(l, row)| row.iter().enumerate().all(|(k, &b)| l <= k || b == 0))
    }

    /// Re-counts every block against `B`; returns the first block that disagrees.
    pub fn constancy_violation(&self) -> Option<VertexSet> {
        let class_of: std::collections::HashMap<VertexSet, usize> = self
            .edge_classes
            .iter()
            .enumerate()
            .flat_map(|(l, c)| c.iter().map(move |e| (*e, l)))
            .collect();
        for (k, class) in self.clique_classes.iter().enumerate() {
            for b in class {
                let mut counts = vec![0u64; self.edge_classes.len()];
                for e in b.subsets(self.r) {
                    if let Some(&l) = class_of.get(&e) {
                        counts[l] += 1;
                    }
                }
                if (0..counts.len()).any(|l| counts[l] != self.containment[l][k]) {
                    return Some(*b);
                }
            }
        }
        None
    }
}

/// `B(E_ℓ, Q_k) = C(k,ℓ)·C(q−k, r−ℓ)`.
pub fn containment_formula(q: usize, r: usize, l: usize, k: usize) -> u64 {
    if l > k || r < l || q < k {
        return 0;
    }
    binomial(k as u64, l as u64) * binomial((q - k) as u64, (r - l) as u64)
}

/// The pair `E_ℓ = {e : |e∩U| = ℓ}`, `Q_k = {Q : |Q∩U| = k}`, with `B` from the closed
/// form and checked against a full recount.
pub fn partition_pair_of(g: &Complex, u: &[Vertex], q: usize, r: usize) -> Result<PartitionPair> {
    if g.max_level() < q {
        return Err(invalid(format!("complex materialized to level {} but q = {q}", g.max_level())));
    }
    let inside: HashSet<Vertex> = u.iter().copied().collect();
    let meet = |e: &VertexSet| e.count_in(|x| inside.contains(&x));
    let mut edge_classes = vec![Vec::new(); r + 1];
    for e in g.level(r) {
        edge_classes[meet(e)].push(*e);
    }
    let mut clique_classes = vec![Vec::new(); q + 1];
    for b in g.level(q) {
        clique_classes[meet(b)].push(*b);
    }
    let containment = (0..=r).map(|l| (0..=q).map(|k| containment_formula(q, r, l, k)).collect()).collect();
    let pp = PartitionPair { q, r, edge_classes, clique_classes, containment };
    if let Some(b) = pp.constancy_violation() {
        return Err(Error::Internal(format!("containment formula disagrees at block {b}")));
    }
    Ok(pp)
}

/// The pair induced by admissible unimportant classes and the type classes of `sys`, `foc`.
///
/// The unimportant parts come first, then `τ_r^{-1}(0..=r−i)` and `τ_q^{-1}(0..=q−i)`.
/// `B` is recounted; the type-by-type block must match `C(k,ℓ)·C(q−i−k, r−i−ℓ)`.
pub fn induced_partition_pair(
    g: &Complex,
    sys: &ISystem,
    foc: &Focus,
    q: usize,
    r: usize,
    star_edges: Vec<Vec<VertexSet>>,
    star_cliques: Vec<Vec<VertexSet>>,
) -> Result<PartitionPair> {
    let i = sys.i;
    if star_edges.len() != i || star_cliques.len() != i {
        return Err(invalid(format!("need exactly {i} unimportant classes on each side")));
    }
    let tau_r = type_function(g, sys, foc, r, r)?;
    let tau_q = type_function(g, sys, foc, r, q)?;
    let mut edge_classes = star_edges;
    let mut clique_classes = star_cliques;
    let listed: HashSet<VertexSet> = edge_classes.iter().flatten().copied().collect();
    let listed_q: HashSet<VertexSet> = clique_classes.iter().flatten().copied().collect();
    if g.level(r).iter().any(|e| !tau_r.contains_key(e) && !listed.contains(e))
        || g.level(q).iter().any(|b| !tau_q.contains_key(b) && !listed_q.contains(b))
    {
        return Err(invalid("unimportant classes must partition the unimportant sets"));
    }
    let mut by_type = vec![Vec::new(); r - i + 1];
    for (e, t) in &tau_r {
        by_type[*t].push(*e);
    }
    edge_classes.extend(by_type);
    let mut by_type_q = vec![Vec::new(); q - i + 1];
    for (b, t) in &tau_q {
        by_type_q[*t].push(*b);
    }
    clique_classes.extend(by_type_q);
    let pp = PartitionPair::from_classes(q, r, edge_classes, clique_classes)?;
    for l in 0..=r - i {
        for k in 0..=q - i {
            if pp.clique_classes[i + k].is_empty() {
                continue;
            }
            let want = containment_formula(q - i, r - i, l, k);
            if pp.containment[i + l][i + k] != want {
                return Err(Error::Internal(format!("type containment ({l},{k}) is not {want}")));
            }
        }
    }
    Ok(pp)
}

/// Measured partition regularity: per class pair `(ℓ,k)`, the midrange of
/// `|P_clique(k)[Y](e)|/n^{q−r}` over `e ∈ P_edge(ℓ)`, and the largest half-spread.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionRegularity {
    /// `None` for empty edge classes.
    pub a: Vec<Option<Vec<BigRational>>>,
    pub eps: BigRational,
}

pub fn measure_partition_regularity(
    g: &Complex,
    pp: &PartitionPair,
    y: Option<&HashSet<VertexSet>>,
) -> PartitionRegularity {
    let norm = BigRational::from_integer(num::BigInt::from(g.n()).pow((pp.q - pp.r) as u32));
    let mut eps = BigRational::zero();
    let mut rows = Vec::new();
    for class in &pp.edge_classes {
        if class.is_empty() {
            rows.push(None);
            continue;
        }
        let mut row = Vec::new();
        for cliques in &pp.clique_classes {
            let mut lo = u64::MAX;
            let mut hi = 0u64;
            let chosen: Vec<&VertexSet> = cliques.iter().filter(|b| y.map_or(true, |y| y.contains(b))).collect();
            for e in class {
                let c = chosen.iter().filter(|b| e.is_subset(b)).count() as u64;
                lo = lo.min(c);
                hi = hi.max(c);
            }
            let mid = BigRational::new(num::BigInt::from(lo + hi), num::BigInt::from(2)) / &norm;
            let half = BigRational::new(num::BigInt::from(hi - lo), num::BigInt::from(2)) / &norm;
            if half > eps {
                eps = half;
            }
            row.push(mid);
        }
        rows.push(Some(row));
    }
    PartitionRegularity { a: rows, eps }
}

/// `min^\(A)`: the smallest diagonal entry `a_{k,k}`, `k ≤ a`.
pub fn min_diagonal(a: &[Vec<BigRational>]) -> BigRational {
    (0..a.len()).map(|k| a[k][k].clone()).min().unwrap_or_else(BigRational::zero)
}

/// Solves `Ax = min^\(A)·1` for an upper-triangular diagonal-dominant `A` (`a ≤ b`)
/// by back-substitution, and checks `Ax = min^\(A)·1` and `x ≥ min^\(A)/4b` exactly.
pub fn solve_diagonal_dominant(a: &[Vec<BigRational>]) -> Result<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if rows == 0 || a.iter().any(|row| row.len() != cols) {
        return Err(invalid("matrix must be nonempty and rectangular"));
    }
    if rows > cols {
        return Err(invalid(format!("need a <= b, got {rows}x{cols}")));
    }
    let one = BigRational::one();
    for (l, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_negative() || *x > one {
                return Err(invalid(format!("entry ({l},{k}) = {x} outside [0,1]")));
            }
            if k < l && !x.is_zero() {
                return Err(invalid(format!("entry ({l},{k}) below the diagonal is nonzero")));
            }
        }
    }
    for l in 0..rows {
        for k in l + 1..rows {
            let bound = &a[k][k] / BigRational::from_integer((2 * (rows - l)).into());
            if a[l][k] > bound {
                return Err(invalid(format!("entry ({l},{k}) = {} exceeds a_kk/2(a-l) = {bound}", a[l][k])));
            }
        }
    }
    let m = min_diagonal(a);
    if m.is_zero() {
        return Ok(vec![BigRational::zero(); cols]);
    }
    let quarter = BigRational::new(1.into(), (4 * cols).into());
    let mut y = vec![quarter.clone(); cols];
    for k in (0..rows).rev() {
        let mut acc = one.clone();
        for j in k + 1..cols {
            acc -= &a[k][j] * &y[j];
        }
        y[k] = acc / &a[k][k];
    }
    let x: Vec<BigRational> = y.into_iter().map(|v| v * &m).collect();
    for (l, row) in a.iter().enumerate() {
        let s: BigRational = row.iter().zip(&x).map(|(p, q)| p * q).sum();
        if s != m {
            return Err(Error::Internal(format!("row {l} sums to {s}, expected {m}")));
        }
    }
    let floor = &m * &quarter;
    if let Some(k) = x.iter().position(|v| *v < floor) {
        return Err(Error::Internal(format!("x[{k}] = {} below min/4b", x[k])));
    }
    Ok(x)
}

/// `(S ⊎ K^(q−i))^≤`: lifts a decomposition of the link `G(S)` to blocks `S ∪ Q` in `G`.
pub fn lift_decomposition(g: &Complex, s: &VertexSet, link_blocks: &Packing, q: usize, r: usize) -> Result<Packing> {
    let i = s.len();
    if link_blocks.q != q - i || link_blocks.r != r - i {
        return Err(invalid("link packing has the wrong clique and edge sizes"));
    }
    let link = g.nbhd(s).level_graph(r - i);
    let report = verify_design(&link, &link_blocks.blocks, q - i, 1);
    if !report.ok {
        return Err(invalid(format!(
            "not a decomposition of the link: {}",
            report.first_violation().unwrap_or_default()
        )));
    }
    let mut blocks = Vec::with_capacity(link_blocks.len());
    for b in &link_blocks.blocks {
        let full = b.union(s).ok_or_else(|| invalid("block exceeds set capacity"))?;
        if !b.is_disjoint(s) || full.len() != q {
            return Err(invalid(format!("block {b} meets {s}")));
        }
        blocks.push(full);
    }
    let out = Packing::new(q, r, blocks);
    if !verify_packing(g, &out) {
        return Err(Error::Internal("lifted blocks are not a packing in G".into()));
    }
    Ok(out)
}

/// The index set `Z_{r,i}` of quadruples with `z0+z1 < i`, `z0+z3 < i`, sum `r`.
pub fn z_quadruples(r: usize, i: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for z0 in 0..i {
        for z1 in 0..i - z0 {
            for z3 in 0..i - z0 {
                if z0 + z1 + z3 <= r {
                    out.push([z0, z1, r - z0 - z1 - z3, z3]);
                }
            }
        }
    }
    out
}

/// Per-step statistics of the localized cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizedCover {
    pub packing: Packing,
    /// Number of pairwise disjoint candidate decompositions found at each step.
    pub candidates: Vec<usize>,
    /// Number of conflict sets removed at each step.
    pub conflicts: Vec<usize>,
}

/// Covers all `S`-important `r`-edges: for each `S_j` in turn, removes the conflict
/// sets `T^j_z` left by earlier choices, generates up to `budget.candidates` pairwise
/// disjoint decompositions of `G(S_j)[U_j]` by the exact solver, picks one at random
/// and lifts it.
pub fn localized_cover(
    g: &Complex,
    sys: &ISystem,
    foc: &Focus,
    q: usize,
    r: usize,
    p: &ParamSet,
) -> Result<LocalizedCover> {
    let i = sys.i;
    if i >= r {
        return Err(invalid(format!("need i < r, got i={i} r={r}")));
    }
    if g.max_level() < q {
        return Err(invalid(format!("complex materialized to level {} but q = {q}", g.max_level())));
    }
    check_exclusive(g, sys, r)?;
    for (j, s) in sys.sets.iter().enumerate() {
        for e in g.level(r) {
            if s.is_subset(e) && e.difference(s).iter().any(|x| !foc.contains(j, x)) {
                return Err(Error::InvalidInput {
                    reason: format!("edge through {s} leaves U_S"),
                    witness: e.to_string(),
                });
            }
        }
    }
    let zs = z_quadruples(r, i);
    let mut rng = p.rng();
    let mut chosen: Vec<Vec<VertexSet>> = Vec::with_capacity(sys.sets.len());
    let mut all_blocks = Vec::new();
    let mut cand_counts = Vec::new();
    let mut conflict_counts = Vec::new();
    for (j, s) in sys.sets.iter().enumerate() {
        let u = &foc.sets[j];
        let in_u: HashSet<Vertex> = u.iter().copied().collect();
        let mut conflicts: HashSet<VertexSet> = HashSet::new();
        for z in &zs {
            let [z0, z1, z2, z3] = *z;
            for (jp, sp) in sys.sets.iter().enumerate().take(j) {
                if s.intersection_len(sp) != z0 {
                    continue;
                }
                let sp_in_u: Vec<Vertex> = sp.iter().filter(|x| in_u.contains(x)).collect();
                for k in &chosen[jp] {
                    if k.intersection_len(s) != z3 {
                        continue;
                    }
                    let k_in_u: Vec<Vertex> = k.iter().filter(|x| in_u.contains(x)).collect();
                    for z1set in combinations(&sp_in_u, z1) {
                        for z2set in combinations(&k_in_u, z2) {
                            if z1set.is_disjoint(&z2set) {
                                if let Some(t) = z1set.union(&z2set) {
                                    conflicts.insert(t);
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut hj = g.nbhd(s).induced_on(u);
        if !conflicts.is_empty() {
            hj = remove_containing(&hj, &conflicts);
        }
        let mut used = HashSet::new();
        let mut cands: Vec<Vec<VertexSet>> = Vec::new();
        let mut last = None;
        for c in 0..p.budget.candidates.max(1) {
            let sub = p.clone().with_seed(derive_seed(p.seed, ((j as u64) << 20) | c as u64));
            match exact_decompose_excluding(&hj, q - i, r - i, 1, &used, &sub)? {
                Decompose::Found(blocks) => {
                    used.extend(blocks.iter().copied());
                    cands.push(blocks);
                }
                other => {
                    last = Some(other);
                    break;
                }
            }
        }
        if cands.is_empty() {
            return Err(match last {
                Some(Decompose::Timeout { nodes }) => Error::BudgetExceeded { nodes },
                _ => Error::Failure(format!("localized cover stalled at set {j} ({s})")),
            });
        }
        cand_counts.push(cands.len());
        conflict_counts.push(conflicts.len());
        let pick = rng.gen_range(0..cands.len());
        let link_blocks = cands.swap_remove(pick);
        for b in &link_blocks {
            all_blocks.push(b.union(s).expect("link blocks avoid S"));
        }
        chosen.push(link_blocks);
    }
    let packing = Packing::new(q, r, all_blocks);
    if !verify_packing(g, &packing) {
        return Err(Error::Internal("localized cover produced overlapping blocks".into()));
    }
    Ok(LocalizedCover { packing, candidates: cand_counts, conflicts: conflict_counts })
}

/// Removes from `g` every set containing a member of `t`.
fn remove_containing(g: &Complex, t: &HashSet<VertexSet>) -> Complex {
    let sizes: std::collections::BTreeSet<usize> = t.iter().map(VertexSet::len).collect();
    let vertices = g.vertices().to_vec();
    let keep = |e: &VertexSet| sizes.iter().all(|&s| s > e.len() || e.subsets(s).all(|f| !t.contains(&f)));
    let sets: Vec<VertexSet> = (0..=g.max_level()).flat_map(|l| g.level(l).iter().copied()).filter(|e| keep(e)).collect();
    if g.is_empty() {
        return g.clone();
    }
    Complex::generated(vertices, sets.iter(), g.max_level())
}

/// Worst cases of the focus conditions (F1)–(F3).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FocusReport {
    pub target_size: f64,
    pub tolerance: f64,
    /// Largest `| |U_S| − ρ_size·ρ·n |`.
    pub size_deviation: f64,
    pub size_ok: bool,
    pub max_intersection: usize,
    pub intersection_bound: f64,
    pub intersection_ok: bool,
    pub j_sets: Vec<JSetEntry>,
    pub j_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JSetEntry {
    pub z: [usize; 4],
    pub j1_max: usize,
    pub j1_bound: f64,
    pub j2_max: usize,
    pub j2_bound: f64,
}

/// Measures (F1) sizes, (F2) pairwise intersections and (F3) the `J`-set counts
/// over all `S`, `z ∈ Z_{r,i}` and `(z1+z2−1)`-sets `f ⊆ V ∖ S`, with `V = 0..n`.
pub fn check_focus(foc: &Focus, sys: &ISystem, rho_size: f64, rho: f64, r: usize, n: usize) -> FocusReport {
    let nf = n as f64;
    let target = rho_size * rho * nf;
    let tol = nf.powf(2.0 / 3.0);
    let size_deviation = foc.sets.iter().map(|u| (u.len() as f64 - target).abs()).fold(0.0, f64::max);
    let mut max_intersection = 0;
    for a in 0..foc.sets.len() {
        let ua: HashSet<Vertex> = foc.sets[a].iter().copied().collect();
        for b in a + 1..foc.sets.len() {
            let c = foc.sets[b].iter().filter(|x| ua.contains(x)).count();
            max_intersection = max_intersection.max(c);
        }
    }
    let intersection_bound = 2.0 * rho * rho * nf;
    let i = sys.i;
    let all: Vec<Vertex> = (0..n as Vertex).collect();
    let mut j_sets = Vec::new();
    let mut j_ok = true;
    for z in z_quadruples(r, i) {
        let [z0, z1, z2, z3] = z;
        let mut entry = JSetEntry {
            z,
            j1_max: 0,
            j1_bound: 2f64.powi(6 * r as i32) * rho.powi(z2 as i32 + z3 as i32 - 1) * nf.powi(i as i32 - (z0 + z1) as i32),
            j2_max: 0,
            j2_bound: 2f64.powi(9 * r as i32) * rho.powi((z2 + z3 + 1) as i32) * nf.powi(i as i32 - (z0 + z1) as i32 + 1),
        };
        if z1 + z2 == 0 {
            j_sets.push(entry);
            continue;
        }
        for (si, s) in sys.sets.iter().enumerate() {
            let outside: Vec<Vertex> = all.iter().copied().filter(|&x| !s.contains(x)).collect();
            for f in combinations(&outside, z1 + z2 - 1) {
                let (mut j1, mut j2) = (0, 0);
                for (ti, sp) in sys.sets.iter().enumerate() {
                    if s.intersection_len(sp) != z0 {
                        continue;
                    }
                    if !f.iter().all(|x| sp.contains(x) || foc.contains(ti, x)) {
                        continue;
                    }
                    if foc.meet(ti, s) < z3 {
                        continue;
                    }
                    let fs = f.intersection_len(sp);
                    if fs == z1 {
                        j1 += 1;
                    }
                    if z1 >= 1 && fs == z1 - 1 && sp.difference(&f).iter().any(|x| foc.contains(si, x)) {
                        j2 += 1;
                    }
                }
                entry.j1_max = entry.j1_max.max(j1);
                entry.j2_max = entry.j2_max.max(j2);
            }
        }
        if entry.j1_max as f64 > entry.j1_bound || entry.j2_max as f64 > entry.j2_bound {
            j_ok = false;
        }
        j_sets.push(entry);
    }
    FocusReport {
        target_size: target,
        tolerance: tol,
        size_deviation,
        size_ok: size_deviation <= tol,
        max_intersection,
        intersection_bound,
        intersection_ok: max_intersection as f64 <= intersection_bound,
        j_sets,
        j_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn z_quadruples_examples() {
        assert!(z_quadruples(3, 0).is_empty());
        assert_eq!(z_quadruples(2, 1), vec![[0, 0, 2, 0]]);
        for z in z_quadruples(4, 3) {
            assert!(z[0] + z[1] < 3 && z[0] + z[3] < 3 && z.iter().sum::<usize>() == 4);
        }
    }

    #[test]
    fn diagonal_dominant_examples() {
        let id = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]];
        assert_eq!(solve_diagonal_dominant(&id).unwrap(), vec![rat(1, 1), rat(1, 1)]);
        let a = vec![vec![rat(1, 1), rat(1, 10)], vec![rat(0, 1), rat(1, 1)]];
        // Diagonal dominance needs a_12 <= a_22/(2(a-1)) = 1/2.
        assert_eq!(solve_diagonal_dominant(&a).unwrap(), vec![rat(9, 10), rat(1, 1)]);
        let z = vec![vec![rat(0, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]];
        assert_eq!(solve_diagonal_dominant(&z).unwrap(), vec![rat(0, 1), rat(0, 1)]);
        let bad = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(1, 2), rat(1, 1)]];
        assert!(solve_diagonal_dominant(&bad).is_err());
    }

    #[test]
    fn partition_pair_of_k7() {
        let g = Complex::complete(7, 3);
        let pp = partition_pair_of(&g, &[0, 1, 2], 3, 2).unwrap();
        let sizes: Vec<usize> = pp.edge_classes.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![6, 12, 3]);
        assert_eq!(pp.containment[1][2], 2);
        assert!(pp.is_upper_triangular());
        for k in 0..=3 {
            assert_eq!((0..=2).map(|l| pp.containment[l][k]).sum::<u64>(), 3);
        }
        let empty_u = partition_pair_of(&g, &[], 3, 2).unwrap();
        assert_eq!(empty_u.edge_classes[0].len(), 21);
        assert_eq!(empty_u.containment[0][0], 3);
    }

    #[test]
    fn lift_link_matching() {
        let g = Complex::complete(5, 3);
        let s = VertexSet::of(&[0]);
        let m = Packing::new(2, 1, vec![VertexSet::of(&[1, 2]), VertexSet::of(&[3, 4])]);
        let lifted = lift_decomposition(&g, &s, &m, 3, 2).unwrap();
        assert_eq!(lifted.blocks, vec![VertexSet::of(&[0, 1, 2]), VertexSet::of(&[0, 3, 4])]);
        let partial = Packing::new(2, 1, vec![VertexSet::of(&[1, 2])]);
        assert!(lift_decomposition(&g, &s, &partial, 3, 2).is_err());
        let empty = Complex::complete(1, 3);
        let none = lift_decomposition(&empty, &VertexSet::of(&[0]), &Packing::new(2, 1, vec![]), 3, 2).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn type_function_whole_set() {
        let g = Complex::complete(6, 3);
        let sys = ISystem::new(0, vec![VertexSet::EMPTY]).unwrap();
        let foc = Focus::new(&sys, vec![vec![0, 1, 2]]).unwrap();
        let tau = type_function(&g, &sys, &foc, 2, 2).unwrap();
        assert_eq!(tau.len(), 15);
        assert_eq!(tau[&VertexSet::of(&[0, 3])], 1);
        assert_eq!(tau[&VertexSet::of(&[0, 1])], 2);
    }

    #[test]
    fn exclusivity_violation_has_witness() {
        let g = Complex::complete(4, 3);
        let sys = ISystem::new(1, vec![VertexSet::of(&[0]), VertexSet::of(&[1])]).unwrap();
        assert!(matches!(check_exclusive(&g, &sys, 2), Err(Error::InvalidInput { .. })));
    }
}
