//! Small sorted vertex sets packed into a fixed-size array.
//!
//! Every edge, clique and link set handled by the crate has at most
//! [`MAX_SET`] vertices, so sets are `Copy` and hash over a few packed words.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub type Vertex = u16;

/// Largest set size representable by a [`VertexSet`].
pub const MAX_SET: usize = 12;

/// A strictly increasing sequence of at most [`MAX_SET`] vertices.
///
/// Unused slots are always zero so the derived `Hash`/`Eq` agree with set equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    len: u8,
    v: [Vertex; MAX_SET],
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { len: 0, v: [0; MAX_SET] };

    /// Builds a set from arbitrary vertices. Returns `None` on duplicates or overflow.
    pub fn new(vertices: &[Vertex]) -> Option<Self> {
        if vertices.len() > MAX_SET {
            return None;
        }
        let mut v = [0; MAX_SET];
        v[..vertices.len()].copy_from_slice(vertices);
        v[..vertices.len()].sort_unstable();
        if v[..vertices.len()].windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(VertexSet { len: vertices.len() as u8, v })
    }

    /// Builds a set from `usize` vertex ids, panicking on invalid input.
    pub fn of(vertices: &[usize]) -> Self {
        let tmp: Vec<Vertex> = vertices.iter().map(|&x| x as Vertex).collect();
        VertexSet::new(&tmp).expect("distinct vertices within capacity")
    }

    pub fn singleton(x: Vertex) -> Self {
        let mut v = [0; MAX_SET];
        v[0] = x;
        VertexSet { len: 1, v }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn as_slice(&self) -> &[Vertex] {
        &self.v[..self.len as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.as_slice().iter().copied()
    }

    pub fn max(&self) -> Option<Vertex> {
        self.as_slice().last().copied()
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.as_slice().binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        let (a, b) = (self.as_slice(), other.as_slice());
        let mut j = 0;
        for &x in a {
            while j < b.len() && b[j] < x {
                j += 1;
            }
            if j == b.len() || b[j] != x {
                return false;
            }
            j += 1;
        }
        true
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection_len(other) == 0
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        let (a, b) = (self.as_slice(), other.as_slice());
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    /// Number of members lying in `pred`.
    pub fn count_in(&self, pred: impl Fn(Vertex) -> bool) -> usize {
        self.iter().filter(|&x| pred(x)).count()
    }

    /// Union; `None` if the result would exceed [`MAX_SET`].
    pub fn union(&self, other: &VertexSet) -> Option<VertexSet> {
        let (a, b) = (self.as_slice(), other.as_slice());
        let mut out = [0; MAX_SET];
        let (mut i, mut j, mut k) = (0, 0, 0);
        while i < a.len() || j < b.len() {
            let next = if j == b.len() || (i < a.len() && a[i] < b[j]) {
                i += 1;
                a[i - 1]
            } else if i == a.len() || b[j] < a[i] {
                j += 1;
                b[j - 1]
            } else {
                i += 1;
                j += 1;
                a[i - 1]
            };
            if k == MAX_SET {
                return None;
            }
            out[k] = next;
            k += 1;
        }
        Some(VertexSet { len: k as u8, v: out })
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = [0; MAX_SET];
        let mut k = 0;
        for x in self.iter() {
            if other.contains(x) {
                out[k] = x;
                k += 1;
            }
        }
        VertexSet { len: k as u8, v: out }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = [0; MAX_SET];
        let mut k = 0;
        for x in self.iter() {
            if !other.contains(x) {
                out[k] = x;
                k += 1;
            }
        }
        VertexSet { len: k as u8, v: out }
    }

    pub fn with(&self, x: Vertex) -> Option<VertexSet> {
        self.union(&VertexSet::singleton(x))
    }

    pub fn without(&self, x: Vertex) -> VertexSet {
        self.difference(&VertexSet::singleton(x))
    }

    /// Maps every vertex through `f`; `None` if two vertices collide.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Option<VertexSet> {
        let tmp: Vec<Vertex> = self.iter().map(f).collect();
        VertexSet::new(&tmp)
    }

    /// All `k`-subsets in lexicographic order.
    pub fn subsets(&self, k: usize) -> Combinations<'_> {
        Combinations::new(self.as_slice(), k)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.as_slice().cmp(other.as_slice()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<Vertex> = Vec::deserialize(d)?;
        VertexSet::new(&v).ok_or_else(|| serde::de::Error::custom("invalid vertex set"))
    }
}

/// Lexicographic `k`-combinations of a sorted slice.
pub struct Combinations<'a> {
    items: &'a [Vertex],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    pub fn new(items: &'a [Vertex], k: usize) -> Self {
        Combinations {
            items,
            idx: (0..k).collect(),
            done: k > items.len() || k > MAX_SET,
        }
    }
}

impl Iterator for Combinations<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let k = self.idx.len();
        let mut v = [0; MAX_SET];
        for (slot, &i) in self.idx.iter().enumerate() {
            v[slot] = self.items[i];
        }
        let out = VertexSet { len: k as u8, v };
        // advance
        let n = self.items.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// `k`-subsets of a vertex list (which need not fit in a [`VertexSet`]).
pub fn combinations(items: &[Vertex], k: usize) -> Combinations<'_> {
    Combinations::new(items, k)
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Binomial coefficient with a signed upper argument, zero outside the usual range.
pub fn binomial_i(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_sorts_and_rejects_duplicates() {
        let s = VertexSet::new(&[3, 1, 2]).unwrap();
        assert_eq!(s.as_slice(), &[1, 2, 3]);
        assert!(VertexSet::new(&[1, 1]).is_none());
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::of(&[1, 3, 5]);
        let b = VertexSet::of(&[3, 4]);
        assert_eq!(a.union(&b).unwrap(), VertexSet::of(&[1, 3, 4, 5]));
        assert_eq!(a.intersection(&b), VertexSet::of(&[3]));
        assert_eq!(a.difference(&b), VertexSet::of(&[1, 5]));
        assert!(VertexSet::of(&[1, 5]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert_eq!(a.intersection_len(&b), 1);
    }

    #[test]
    fn combinations_count_and_order() {
        let items: Vec<Vertex> = (0..6).collect();
        let all: Vec<_> = combinations(&items, 3).collect();
        assert_eq!(all.len() as u64, binomial(6, 3));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(combinations(&items, 0).count(), 1);
        assert_eq!(combinations(&items, 7).count(), 0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial_i(-1, 0), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
