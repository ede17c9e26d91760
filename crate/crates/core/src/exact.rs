//! Exact cover with item demands, item capacities and reusable options.
//!
//! Primary items must be covered exactly `demand` times; secondary items at most
//! `capacity` times. Each option may be chosen up to its own cap. The search
//! branches on the primary item with the fewest live options; for that item it
//! tries the live options in a seeded random order, and after trying option `o`
//! it excludes `o` from the remaining sibling subtrees. Every multiset of options
//! is therefore reached at most once, so exhausting the tree proves infeasibility.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::params::{Budget, Rng};

/// An exact-cover instance. Items are `0..demand.len()`.
#[derive(Debug, Clone, Default)]
pub struct CoverProblem {
    /// Required coverage of each primary item (0 for secondary items).
    pub demand: Vec<u32>,
    /// Maximum coverage of each item; equal to `demand` for primary items.
    pub capacity: Vec<u32>,
    /// Whether the item must be covered exactly (primary) or at most (secondary).
    pub primary: Vec<bool>,
    pub options: Vec<Vec<u32>>,
    /// Maximum number of times each option may be used.
    pub option_cap: Vec<u32>,
}

impl CoverProblem {
    pub fn new() -> Self {
        CoverProblem::default()
    }

    pub fn add_primary(&mut self, demand: u32) -> u32 {
        self.demand.push(demand);
        self.capacity.push(demand);
        self.primary.push(true);
        (self.demand.len() - 1) as u32
    }

    pub fn add_secondary(&mut self, capacity: u32) -> u32 {
        self.demand.push(0);
        self.capacity.push(capacity);
        self.primary.push(false);
        (self.demand.len() - 1) as u32
    }

    pub fn add_option(&mut self, items: Vec<u32>, cap: u32) -> usize {
        self.options.push(items);
        self.option_cap.push(cap);
        self.options.len() - 1
    }

    pub fn item_count(&self) -> usize {
        self.demand.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    /// Chosen options, listed with repetition, in the order they were chosen.
    Solved(Vec<usize>),
    /// The search tree was exhausted: no cover exists.
    Unsat,
    /// The node or time budget ran out first.
    Timeout { nodes: u64 },
}

impl CoverOutcome {
    pub fn solution(&self) -> Option<&[usize]> {
        match self {
            CoverOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }
}

struct Search<'a> {
    p: &'a CoverProblem,
    by_item: Vec<Vec<usize>>,
    remaining: Vec<u32>,
    uses: Vec<u32>,
    excluded: Vec<bool>,
    /// Number of reasons an option is currently unusable.
    blocked: Vec<u32>,
    /// Number of usable options per item.
    live: Vec<u32>,
    open_primary: usize,
    chosen: Vec<usize>,
    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
    timed_out: bool,
    rng: &'a mut Rng,
}

impl Search<'_> {
    fn block(&mut self, o: usize) {
        self.blocked[o] += 1;
        if self.blocked[o] == 1 {
            for &i in &self.p.options[o] {
                self.live[i as usize] -= 1;
            }
        }
    }

    fn unblock(&mut self, o: usize) {
        self.blocked[o] -= 1;
        if self.blocked[o] == 0 {
            for &i in &self.p.options[o] {
                self.live[i as usize] += 1;
            }
        }
    }

    fn apply(&mut self, o: usize) {
        self.uses[o] += 1;
        if self.uses[o] == self.p.option_cap[o] {
            self.block(o);
        }
        for k in 0..self.p.options[o].len() {
            let i = self.p.options[o][k] as usize;
            if self.p.primary[i] && self.remaining[i] == self.p.capacity[i] - self.p.demand[i] + 1 {
                self.open_primary -= 1;
            }
            self.remaining[i] -= 1;
            if self.remaining[i] == 0 {
                for idx in 0..self.by_item[i].len() {
                    let o2 = self.by_item[i][idx];
                    self.block(o2);
                }
            }
        }
        self.chosen.push(o);
    }

    fn undo(&mut self, o: usize) {
        self.chosen.pop();
        for k in (0..self.p.options[o].len()).rev() {
            let i = self.p.options[o][k] as usize;
            if self.remaining[i] == 0 {
                for idx in (0..self.by_item[i].len()).rev() {
                    let o2 = self.by_item[i][idx];
                    self.unblock(o2);
                }
            }
            self.remaining[i] += 1;
            if self.p.primary[i] && self.remaining[i] == self.p.capacity[i] - self.p.demand[i] + 1 {
                self.open_primary += 1;
            }
        }
        if self.uses[o] == self.p.option_cap[o] {
            self.unblock(o);
        }
        self.uses[o] -= 1;
    }

    /// Outstanding demand of a primary item.
    fn need(&self, i: usize) -> u32 {
        self.remaining[i] - (self.p.capacity[i] - self.p.demand[i])
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.node_limit {
            self.timed_out = true;
        } else if let Some(d) = self.deadline {
            if self.nodes % 1024 == 0 && Instant::now() >= d {
                self.timed_out = true;
            }
        }
        self.timed_out
    }

    fn run(&mut self) -> bool {
        if self.open_primary == 0 {
            return true;
        }
        self.nodes += 1;
        if self.out_of_budget() {
            return false;
        }
        // Fewest live options first; ties broken uniformly at random.
        let mut best = u32::MAX;
        let mut best_item = usize::MAX;
        let mut ties = 0u32;
        for i in 0..self.remaining.len() {
            if !self.p.primary[i] || self.need(i) == 0 {
                continue;
            }
            let l = self.live[i];
            if l < best {
                best = l;
                best_item = i;
                ties = 1;
            } else if l == best {
                ties += 1;
                if self.rng.gen_range(0..ties) == 0 {
                    best_item = i;
                }
            }
        }
        if best == 0 {
            return false;
        }
        let item = best_item;
        let mut cands: Vec<usize> = self.by_item[item]
            .iter()
            .copied()
            .filter(|&o| self.blocked[o] == 0)
            .collect();
        let room: u64 = cands
            .iter()
            .map(|&o| {
                let left = (self.p.option_cap[o] - self.uses[o]) as u64;
                let fit = self.p.options[o].iter().map(|&j| self.remaining[j as usize] as u64).min().unwrap_or(0);
                left.min(fit)
            })
            .sum();
        if room < self.need(item) as u64 {
            return false;
        }
        cands.shuffle(self.rng);
        let mut tried = Vec::new();
        let mut found = false;
        for &o in &cands {
            self.apply(o);
            if self.run() {
                found = true;
                break;
            }
            self.undo(o);
            if self.timed_out {
                break;
            }
            self.excluded[o] = true;
            self.block(o);
            tried.push(o);
        }
        for &o in tried.iter().rev() {
            self.excluded[o] = false;
            self.unblock(o);
        }
        found
    }
}

/// Solves `problem`, excluding the options flagged in `forbidden`.
pub fn solve(problem: &CoverProblem, forbidden: &[bool], budget: &Budget, rng: &mut Rng) -> CoverOutcome {
    let n_items = problem.item_count();
    let mut by_item = vec![Vec::new(); n_items];
    for (o, items) in problem.options.iter().enumerate() {
        for &i in items {
            by_item[i as usize].push(o);
        }
    }
    let mut s = Search {
        p: problem,
        by_item,
        remaining: problem.capacity.clone(),
        uses: vec![0; problem.options.len()],
        excluded: vec![false; problem.options.len()],
        blocked: vec![0; problem.options.len()],
        live: vec![0; n_items],
        open_primary: 0,
        chosen: Vec::new(),
        nodes: 0,
        node_limit: budget.nodes,
        deadline: budget.time_ms.map(|ms| Instant::now() + std::time::Duration::from_millis(ms)),
        timed_out: false,
        rng,
    };
    for (o, items) in problem.options.iter().enumerate() {
        for &i in items {
            s.live[i as usize] += 1;
        }
        let cap_zero = problem.option_cap[o] == 0;
        let dead = items.iter().any(|&i| problem.capacity[i as usize] == 0);
        let off = forbidden.get(o).copied().unwrap_or(false);
        for _ in 0..(cap_zero as u32 + dead as u32 + off as u32) {
            s.block(o);
        }
        if off {
            s.excluded[o] = true;
        }
    }
    s.open_primary = (0..n_items).filter(|&i| problem.primary[i] && problem.demand[i] > 0).count();
    if s.run() {
        let mut out = s.chosen.clone();
        out.sort_unstable();
        CoverOutcome::Solved(out)
    } else if s.timed_out {
        CoverOutcome::Timeout { nodes: s.nodes }
    } else {
        CoverOutcome::Unsat
    }
}

/// Checks a claimed solution against the instance.
pub fn check_solution(problem: &CoverProblem, solution: &[usize]) -> bool {
    let mut cover = vec![0u32; problem.item_count()];
    let mut uses = vec![0u32; problem.options.len()];
    for &o in solution {
        if o >= problem.options.len() {
            return false;
        }
        uses[o] += 1;
        for &i in &problem.options[o] {
            cover[i as usize] += 1;
        }
    }
    uses.iter().zip(&problem.option_cap).all(|(u, c)| u <= c)
        && (0..problem.item_count()).all(|i| {
            if problem.primary[i] {
                cover[i] == problem.demand[i]
            } else {
                cover[i] <= problem.capacity[i]
            }
        })
}
