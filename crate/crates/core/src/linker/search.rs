//! Left-to-right backtracking over a stack of open right connectors.
//!
//! Planarity and ordering together force a stack discipline: when a word is
//! reached, the connectors it must link to on its left are exactly the top
//! entries of the stack of still-open right connectors, nearest first. Each
//! choice of disjuncts therefore admits at most one linkage, and the search
//! only branches on disjunct choice.
//!
//! Positions may also be wildcards (unknown words). A wildcard takes any
//! number of stack entries, copying the connectors it links to, and opens
//! any number of right slots that later words fill in.

use std::collections::BTreeSet;

use crate::disjunct::{Connector, Disjunct};
use crate::linker::Link;

#[derive(Debug, Clone, Copy)]
pub(crate) enum Position<'a> {
    Known(&'a [Disjunct]),
    Wild,
}

#[derive(Debug, Clone)]
enum Open {
    Known { pos: usize, conn: Connector },
    Wild { pos: usize },
}

impl Open {
    fn pos(&self) -> usize {
        match self {
            Open::Known { pos, .. } | Open::Wild { pos } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Solution {
    /// Disjunct index for known positions, `None` for wildcards.
    pub indices: Vec<Option<usize>>,
    pub disjuncts: Vec<Disjunct>,
    pub links: Vec<Link>,
}

pub(crate) struct Search<'a> {
    positions: &'a [Position<'a>],
    vocabulary: &'a [Connector],
    stack: Vec<Open>,
    links: Vec<Link>,
    indices: Vec<Option<usize>>,
    wild_left: Vec<Vec<Connector>>,
    /// Filled nearest-first as later words consume the wildcard's slots.
    wild_right: Vec<Vec<Connector>>,
    solutions: BTreeSet<Solution>,
    /// Number of disjunct (or wildcard shape) choices tried.
    pub nodes: usize,
}

impl<'a> Search<'a> {
    pub fn new(positions: &'a [Position<'a>], vocabulary: &'a [Connector]) -> Self {
        let n = positions.len();
        Search {
            positions,
            vocabulary,
            stack: Vec::new(),
            links: Vec::new(),
            indices: vec![None; n],
            wild_left: vec![Vec::new(); n],
            wild_right: vec![Vec::new(); n],
            solutions: BTreeSet::new(),
            nodes: 0,
        }
    }

    pub fn run(&mut self) {
        if !self.positions.is_empty() {
            self.step(0);
        }
    }

    pub fn into_solutions(self) -> Vec<Solution> {
        self.solutions.into_iter().collect()
    }

    fn n(&self) -> usize {
        self.positions.len()
    }

    fn step(&mut self, p: usize) {
        if p == self.n() {
            if self.stack.is_empty() && self.connected() {
                self.record();
            }
            return;
        }
        match self.positions[p] {
            Position::Known(ds) => {
                for (i, d) in ds.iter().enumerate() {
                    self.nodes += 1;
                    self.try_known(p, i, d);
                }
            }
            Position::Wild => self.try_wild(p),
        }
    }

    /// Whether the top `k` stack entries come from distinct words.
    fn top_distinct(&self, k: usize) -> bool {
        let len = self.stack.len();
        let mut seen = Vec::with_capacity(k);
        for e in &self.stack[len - k..] {
            if seen.contains(&e.pos()) {
                return false;
            }
            seen.push(e.pos());
        }
        true
    }

    fn try_known(&mut self, p: usize, index: usize, d: &Disjunct) {
        let n = self.n();
        if n > 1 && d.is_empty() {
            return;
        }
        let m = d.left.len();
        if m > self.stack.len() || d.right.len() > n - 1 - p || !self.top_distinct(m) {
            return;
        }
        let len = self.stack.len();
        let links_before = self.links.len();
        let mut filled = Vec::new();
        let mut ok = true;
        for (i, lc) in d.left.iter().enumerate() {
            match &self.stack[len - 1 - i] {
                Open::Known { pos, conn } => {
                    if !conn.matches(lc) {
                        ok = false;
                        break;
                    }
                    let link = Link::new(*pos, p, conn.link_label(lc));
                    self.links.push(link);
                }
                Open::Wild { pos } => {
                    let pos = *pos;
                    self.wild_right[pos].push(lc.clone());
                    filled.push(pos);
                    self.links.push(Link::new(pos, p, lc.clone()));
                }
            }
        }
        if ok {
            let popped: Vec<Open> = self.stack.drain(len - m..).collect();
            self.stack.extend(d.right.iter().map(|rc| Open::Known {
                pos: p,
                conn: rc.clone(),
            }));
            // An empty stack before the last word means words up to `p`
            // cannot reach the rest.
            if !(self.stack.is_empty() && p + 1 < n) {
                self.indices[p] = Some(index);
                self.step(p + 1);
                self.indices[p] = None;
            }
            self.stack.truncate(len - m);
            self.stack.extend(popped);
        }
        for q in filled {
            self.wild_right[q].pop();
        }
        self.links.truncate(links_before);
    }

    fn try_wild(&mut self, p: usize) {
        let max_k = self.stack.len().min(p);
        for k in 0..=max_k {
            if !self.top_distinct(k) {
                break;
            }
            self.wild_pops(p, k, 0);
        }
    }

    /// Links the `i`-th of the top `k` stack entries to wildcard `p`, then
    /// recurses; once all `k` are linked, opens the wildcard's right slots.
    fn wild_pops(&mut self, p: usize, k: usize, i: usize) {
        if i == k {
            self.wild_opens(p, k);
            return;
        }
        let len = self.stack.len();
        match self.stack[len - 1 - i].clone() {
            Open::Known { pos, conn } => {
                self.wild_left[p].push(conn.clone());
                self.links.push(Link::new(pos, p, conn));
                self.wild_pops(p, k, i + 1);
                self.links.pop();
                self.wild_left[p].pop();
            }
            Open::Wild { pos } => {
                for c in self.vocabulary {
                    self.wild_right[pos].push(c.clone());
                    self.wild_left[p].push(c.clone());
                    self.links.push(Link::new(pos, p, c.clone()));
                    self.wild_pops(p, k, i + 1);
                    self.links.pop();
                    self.wild_left[p].pop();
                    self.wild_right[pos].pop();
                }
            }
        }
    }

    fn wild_opens(&mut self, p: usize, k: usize) {
        let n = self.n();
        let len = self.stack.len();
        let popped: Vec<Open> = self.stack.drain(len - k..).collect();
        for j in 0..n - p {
            if n > 1 && k == 0 && j == 0 {
                continue;
            }
            self.nodes += 1;
            self.stack
                .extend(std::iter::repeat_with(|| Open::Wild { pos: p }).take(j));
            if !(self.stack.is_empty() && p + 1 < n) {
                self.step(p + 1);
            }
            self.stack.truncate(len - k);
        }
        self.stack.extend(popped);
    }

    fn connected(&self) -> bool {
        connected(self.n(), &self.links)
    }

    fn record(&mut self) {
        let disjuncts = (0..self.n())
            .map(|p| match self.positions[p] {
                Position::Known(ds) => ds[self.indices[p].expect("known position chosen")].clone(),
                Position::Wild => {
                    let mut right = self.wild_right[p].clone();
                    right.reverse();
                    Disjunct::new(self.wild_left[p].clone(), right)
                }
            })
            .collect();
        let mut links = self.links.clone();
        links.sort();
        self.solutions.insert(Solution {
            indices: self.indices.clone(),
            disjuncts,
            links,
        });
    }
}

/// Union-find connectivity over word positions.
pub(crate) fn connected(n: usize, links: &[Link]) -> bool {
    components(n, links).len() <= 1
}

pub(crate) fn components(n: usize, links: &[Link]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for l in links {
        if l.left < n && l.right < n {
            let a = find(&mut parent, l.left);
            let b = find(&mut parent, l.right);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..n {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    groups.into_values().collect()
}
