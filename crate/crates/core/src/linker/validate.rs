use std::collections::BTreeMap;
use std::fmt;

use crate::disjunct::{Connector, Side};
use crate::linker::{search, Link, Linkage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetaRule {
    Planarity,
    Connectivity,
    Ordering,
    Exclusion,
    /// Every connector is used by exactly one link and every link by a
    /// matching connector pair.
    Saturation,
    /// Indices out of range, reversed links, or mismatched lengths.
    Structure,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    Crossing {
        first: (usize, usize),
        second: (usize, usize),
    },
    Disconnected {
        components: Vec<Vec<usize>>,
    },
    OutOfOrder {
        position: usize,
        side: Side,
    },
    DuplicatePair {
        left: usize,
        right: usize,
    },
    ConnectorCount {
        position: usize,
        side: Side,
        connectors: usize,
        links: usize,
    },
    UnjustifiedLink {
        link: Link,
    },
    /// Each link has some matching connector pair, but no assignment uses
    /// every connector exactly once.
    Unassignable,
    Malformed {
        detail: String,
    },
}

impl Violation {
    pub fn rule(&self) -> MetaRule {
        match self {
            Violation::Crossing { .. } => MetaRule::Planarity,
            Violation::Disconnected { .. } => MetaRule::Connectivity,
            Violation::OutOfOrder { .. } => MetaRule::Ordering,
            Violation::DuplicatePair { .. } => MetaRule::Exclusion,
            Violation::ConnectorCount { .. }
            | Violation::UnjustifiedLink { .. }
            | Violation::Unassignable => MetaRule::Saturation,
            Violation::Malformed { .. } => MetaRule::Structure,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Crossing { first, second } => write!(
                f,
                "planarity: links ({},{}) and ({},{}) cross",
                first.0, first.1, second.0, second.1
            ),
            Violation::Disconnected { components } => {
                write!(f, "connectivity: {} components", components.len())
            }
            Violation::OutOfOrder { position, side } => write!(
                f,
                "ordering: {side:?} connectors of word {position} do not link nearest-first"
            ),
            Violation::DuplicatePair { left, right } => {
                write!(
                    f,
                    "exclusion: words {left} and {right} are linked more than once"
                )
            }
            Violation::ConnectorCount {
                position,
                side,
                connectors,
                links,
            } => write!(
                f,
                "saturation: word {position} has {connectors} {side:?} connectors but {links} links"
            ),
            Violation::UnjustifiedLink { link } => {
                write!(f, "saturation: no connector pair justifies link {link}")
            }
            Violation::Unassignable => {
                f.write_str("saturation: links cannot be assigned to distinct connectors")
            }
            Violation::Malformed { detail } => write!(f, "malformed linkage: {detail}"),
        }
    }
}

/// Checks every meta-rule and the connector bookkeeping of `linkage`.
/// Returns an empty list iff the linkage is valid.
pub fn validate(linkage: &Linkage) -> Vec<Violation> {
    let n = linkage.words.len();
    let mut out = Vec::new();
    if linkage.choices.len() != n {
        out.push(Violation::Malformed {
            detail: format!("{} words but {} disjunct choices", n, linkage.choices.len()),
        });
        return out;
    }
    for l in &linkage.links {
        if l.left >= l.right || l.right >= n {
            out.push(Violation::Malformed {
                detail: format!("link {l} is not a left-to-right pair of word positions"),
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let links = &linkage.links;

    for (i, a) in links.iter().enumerate() {
        for b in &links[i + 1..] {
            let (x, y) = if (a.left, a.right) <= (b.left, b.right) {
                (a, b)
            } else {
                (b, a)
            };
            if x.left < y.left && y.left < x.right && x.right < y.right {
                out.push(Violation::Crossing {
                    first: (x.left, x.right),
                    second: (y.left, y.right),
                });
            }
        }
    }

    let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for l in links {
        *pairs.entry((l.left, l.right)).or_default() += 1;
    }
    for (&(left, right), &count) in &pairs {
        if count > 1 {
            out.push(Violation::DuplicatePair { left, right });
        }
    }

    let components = search::components(n, links);
    if components.len() > 1 {
        out.push(Violation::Disconnected { components });
    }

    out.extend(check_connectors(linkage));
    out
}

/// Saturation and ordering. Finds an assignment of links to connector slots
/// that justifies every link, preferring one with the fewest word sides
/// whose links are not ordered nearest-first.
fn check_connectors(linkage: &Linkage) -> Vec<Violation> {
    let n = linkage.words.len();
    let links = &linkage.links;
    let mut out = Vec::new();

    // Links incident on each word side.
    let mut incident: BTreeMap<(usize, Side), Vec<usize>> = BTreeMap::new();
    for (k, l) in links.iter().enumerate() {
        incident.entry((l.left, Side::Right)).or_default().push(k);
        incident.entry((l.right, Side::Left)).or_default().push(k);
    }
    for pos in 0..n {
        let d = &linkage.choices[pos];
        for (side, conns) in [(Side::Left, &d.left), (Side::Right, &d.right)] {
            let found = incident.get(&(pos, side)).map_or(0, Vec::len);
            if found != conns.len() {
                out.push(Violation::ConnectorCount {
                    position: pos,
                    side,
                    connectors: conns.len(),
                    links: found,
                });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    let right_conn =
        |k: usize, slot: usize| -> &Connector { &linkage.choices[links[k].left].right[slot] };
    let left_conn =
        |k: usize, slot: usize| -> &Connector { &linkage.choices[links[k].right].left[slot] };
    let justifies = |k: usize, rs: usize, ls: usize| -> bool {
        let (a, b) = (right_conn(k, rs), left_conn(k, ls));
        a.matches(b) && a.link_label(b) == links[k].label
    };

    for (k, l) in links.iter().enumerate() {
        let rn = linkage.choices[l.left].right.len();
        let ln = linkage.choices[l.right].left.len();
        let any = (0..rn).any(|rs| (0..ln).any(|ls| justifies(k, rs, ls)));
        if !any {
            out.push(Violation::UnjustifiedLink { link: l.clone() });
        }
    }
    if !out.is_empty() {
        return out;
    }

    let mut a = Assigner {
        linkage,
        right_slot: vec![usize::MAX; links.len()],
        left_slot: vec![usize::MAX; links.len()],
        used_right: linkage
            .choices
            .iter()
            .map(|d| vec![false; d.right.len()])
            .collect(),
        used_left: linkage
            .choices
            .iter()
            .map(|d| vec![false; d.left.len()])
            .collect(),
        best: None,
    };
    a.search(0, &justifies);
    match a.best {
        None => out.push(Violation::Unassignable),
        Some((_, sides)) => {
            out.extend(
                sides
                    .into_iter()
                    .map(|(position, side)| Violation::OutOfOrder { position, side }),
            );
        }
    }
    out
}

struct Assigner<'a> {
    linkage: &'a Linkage,
    right_slot: Vec<usize>,
    left_slot: Vec<usize>,
    used_right: Vec<Vec<bool>>,
    used_left: Vec<Vec<bool>>,
    best: Option<(usize, Vec<(usize, Side)>)>,
}

impl Assigner<'_> {
    fn search(&mut self, k: usize, justifies: &dyn Fn(usize, usize, usize) -> bool) {
        if self.best.as_ref().is_some_and(|(c, _)| *c == 0) {
            return;
        }
        let links = &self.linkage.links;
        if k == links.len() {
            let bad = self.unordered_sides();
            if self.best.as_ref().is_none_or(|(c, _)| bad.len() < *c) {
                self.best = Some((bad.len(), bad));
            }
            return;
        }
        let (lw, rw) = (links[k].left, links[k].right);
        for rs in 0..self.used_right[lw].len() {
            if self.used_right[lw][rs] {
                continue;
            }
            for ls in 0..self.used_left[rw].len() {
                if self.used_left[rw][ls] || !justifies(k, rs, ls) {
                    continue;
                }
                self.used_right[lw][rs] = true;
                self.used_left[rw][ls] = true;
                self.right_slot[k] = rs;
                self.left_slot[k] = ls;
                self.search(k + 1, justifies);
                self.used_right[lw][rs] = false;
                self.used_left[rw][ls] = false;
            }
        }
    }

    /// Word sides whose assigned links are not non-decreasing in distance
    /// along the connector index (left list as written, right list reversed).
    fn unordered_sides(&self) -> Vec<(usize, Side)> {
        let links = &self.linkage.links;
        let mut out = Vec::new();
        for pos in 0..self.linkage.words.len() {
            let d = &self.linkage.choices[pos];
            let mut by_left = vec![0usize; d.left.len()];
            let mut by_right = vec![0usize; d.right.len()];
            for (k, l) in links.iter().enumerate() {
                if l.right == pos {
                    by_left[self.left_slot[k]] = l.span();
                }
                if l.left == pos {
                    // Written order is farthest first.
                    by_right[d.right.len() - 1 - self.right_slot[k]] = l.span();
                }
            }
            if by_left.windows(2).any(|w| w[0] > w[1]) {
                out.push((pos, Side::Left));
            }
            if by_right.windows(2).any(|w| w[0] > w[1]) {
                out.push((pos, Side::Right));
            }
        }
        out
    }
}
