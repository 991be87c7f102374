//! Concept hierarchies: trees whose leaves are words and whose internal
//! nodes are increasingly general concepts.
//!
//! File format: one `parent > child` edge per line, `#` comments. The parent
//! on the first edge is the root. A file holding a single bare name
//! declares a one-node hierarchy.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: `{child}` already has parent `{parent}`")]
    MultipleParents {
        line: usize,
        child: String,
        parent: String,
    },
    #[error("line {line}: the root `{root}` cannot have a parent")]
    RootHasParent { line: usize, root: String },
    #[error("nodes not reachable from the root `{root}`: {nodes:?}")]
    Detached { root: String, nodes: Vec<String> },
    #[error("empty hierarchy")]
    Empty,
    #[error("`{0}` is not in the {1} hierarchy")]
    UnknownNode(String, HierarchyKind),
    #[error("`{0}` appears in both the noun and the verb hierarchy")]
    Ambiguous(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HierarchyKind {
    Noun,
    Verb,
}

impl fmt::Display for HierarchyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HierarchyKind::Noun => "noun",
            HierarchyKind::Verb => "verb",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ConceptHierarchy {
    kind: HierarchyKind,
    names: Vec<String>,
    index: HashMap<String, usize>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    /// Children in insertion order.
    children: Vec<Vec<usize>>,
}

impl PartialEq for ConceptHierarchy {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.root() == other.root() && self.edges() == other.edges()
    }
}

impl Eq for ConceptHierarchy {}

impl ConceptHierarchy {
    /// Builds a hierarchy from `(parent, child)` edges. Every node other than
    /// `root` needs exactly one parent and must be reachable from `root`.
    pub fn from_edges<S: AsRef<str>>(
        kind: HierarchyKind,
        root: &str,
        edges: &[(S, S)],
    ) -> Result<Self, HierarchyError> {
        let numbered: Vec<(usize, &str, &str)> = edges
            .iter()
            .enumerate()
            .map(|(i, (p, c))| (i + 1, p.as_ref(), c.as_ref()))
            .collect();
        Self::build(kind, root, &numbered)
    }

    fn build(
        kind: HierarchyKind,
        root: &str,
        edges: &[(usize, &str, &str)],
    ) -> Result<Self, HierarchyError> {
        let mut h = ConceptHierarchy {
            kind,
            names: Vec::new(),
            index: HashMap::new(),
            parent: Vec::new(),
            depth: Vec::new(),
            children: Vec::new(),
        };
        h.intern(root);
        for &(line, p, c) in edges {
            let pi = h.intern(p);
            let ci = h.intern(c);
            if ci == 0 {
                return Err(HierarchyError::RootHasParent {
                    line,
                    root: root.to_owned(),
                });
            }
            if let Some(existing) = h.parent[ci] {
                return Err(HierarchyError::MultipleParents {
                    line,
                    child: c.to_owned(),
                    parent: h.names[existing].clone(),
                });
            }
            h.parent[ci] = Some(pi);
            h.children[pi].push(ci);
        }
        // Depths by traversal from the root; anything unreached is detached
        // or sits on a cycle.
        let mut reached = vec![false; h.names.len()];
        let mut queue = vec![0usize];
        reached[0] = true;
        while let Some(x) = queue.pop() {
            for &c in &h.children[x] {
                reached[c] = true;
                h.depth[c] = h.depth[x] + 1;
                queue.push(c);
            }
        }
        let detached: Vec<String> = (0..h.names.len())
            .filter(|&i| !reached[i])
            .map(|i| h.names[i].clone())
            .collect();
        if !detached.is_empty() {
            return Err(HierarchyError::Detached {
                root: root.to_owned(),
                nodes: detached,
            });
        }
        Ok(h)
    }

    fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), i);
        self.parent.push(None);
        self.depth.push(0);
        self.children.push(Vec::new());
        i
    }

    pub fn parse(kind: HierarchyKind, text: &str) -> Result<Self, HierarchyError> {
        let mut edges = Vec::new();
        let mut root: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let valid_name =
                |s: &str| !s.is_empty() && !s.contains(char::is_whitespace) && !s.contains('>');
            match content.split_once('>') {
                Some((p, c)) => {
                    let (p, c) = (p.trim().to_lowercase(), c.trim().to_lowercase());
                    if !valid_name(&p) || !valid_name(&c) {
                        return Err(HierarchyError::Syntax {
                            line,
                            message: format!("expected `parent > child`, found `{content}`"),
                        });
                    }
                    if root.is_none() {
                        root = Some(p.clone());
                    }
                    edges.push((line, p, c));
                }
                None if root.is_none() && edges.is_empty() && valid_name(content) => {
                    root = Some(content.to_lowercase());
                }
                None => {
                    return Err(HierarchyError::Syntax {
                        line,
                        message: format!("expected `parent > child`, found `{content}`"),
                    })
                }
            }
        }
        let root = root.ok_or(HierarchyError::Empty)?;
        let borrowed: Vec<(usize, &str, &str)> = edges
            .iter()
            .map(|(l, p, c)| (*l, p.as_str(), c.as_str()))
            .collect();
        Self::build(kind, &root, &borrowed)
    }

    /// Edges in depth-first preorder from the root, so the first line names
    /// the root as its parent.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if self.names.len() == 1 {
            out.push_str(&self.names[0]);
            out.push('\n');
            return out;
        }
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &c in &self.children[x] {
                out.push_str(&format!("{} > {}\n", self.names[x], self.names[c]));
            }
            stack.extend(self.children[x].iter().rev());
        }
        out
    }

    pub fn kind(&self) -> HierarchyKind {
        self.kind
    }

    pub fn root(&self) -> &str {
        &self.names[0]
    }

    pub fn contains(&self, node: &str) -> bool {
        self.index.contains_key(node)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn parent(&self, node: &str) -> Result<Option<&str>, HierarchyError> {
        let i = self.id(node)?;
        Ok(self.parent[i].map(|p| self.names[p].as_str()))
    }

    pub fn depth(&self, node: &str) -> Result<usize, HierarchyError> {
        Ok(self.depth[self.id(node)?])
    }

    /// Parent map as sorted `(child, parent)` pairs.
    pub fn edges(&self) -> BTreeMap<&str, &str> {
        (0..self.names.len())
            .filter_map(|i| {
                self.parent[i].map(|p| (self.names[i].as_str(), self.names[p].as_str()))
            })
            .collect()
    }

    fn id(&self, node: &str) -> Result<usize, HierarchyError> {
        self.index
            .get(node)
            .copied()
            .ok_or_else(|| HierarchyError::UnknownNode(node.to_owned(), self.kind))
    }

    /// `node` and all of its ancestors, nearest first.
    pub fn ancestors(&self, node: &str) -> Result<Vec<&str>, HierarchyError> {
        let mut x = Some(self.id(node)?);
        let mut out = Vec::new();
        while let Some(i) = x {
            out.push(self.names[i].as_str());
            x = self.parent[i];
        }
        Ok(out)
    }

    /// True iff `a` is `b` or an ancestor of `b`.
    pub fn subsumes(&self, a: &str, b: &str) -> Result<bool, HierarchyError> {
        let a = self.id(a)?;
        let mut x = self.id(b)?;
        while self.depth[x] > self.depth[a] {
            x = self.parent[x].expect("non-root has a parent");
        }
        Ok(x == a)
    }

    /// The deepest node subsuming both `a` and `b`.
    pub fn lcs(&self, a: &str, b: &str) -> Result<&str, HierarchyError> {
        let (mut x, mut y) = (self.id(a)?, self.id(b)?);
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].expect("non-root has a parent");
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].expect("non-root has a parent");
        }
        while x != y {
            x = self.parent[x].expect("non-root has a parent");
            y = self.parent[y].expect("non-root has a parent");
        }
        Ok(&self.names[x])
    }
}

/// The noun and verb hierarchies, which share no node names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hierarchies {
    nouns: ConceptHierarchy,
    verbs: ConceptHierarchy,
}

impl Hierarchies {
    pub fn new(nouns: ConceptHierarchy, verbs: ConceptHierarchy) -> Result<Self, HierarchyError> {
        if let Some(shared) = nouns.nodes().find(|n| verbs.contains(n)) {
            return Err(HierarchyError::Ambiguous(shared.to_owned()));
        }
        Ok(Hierarchies { nouns, verbs })
    }

    pub fn get(&self, kind: HierarchyKind) -> &ConceptHierarchy {
        match kind {
            HierarchyKind::Noun => &self.nouns,
            HierarchyKind::Verb => &self.verbs,
        }
    }

    pub fn nouns(&self) -> &ConceptHierarchy {
        &self.nouns
    }

    pub fn verbs(&self) -> &ConceptHierarchy {
        &self.verbs
    }

    /// Which hierarchy `name` belongs to, if any.
    pub fn kind_of(&self, name: &str) -> Option<HierarchyKind> {
        if self.nouns.contains(name) {
            Some(HierarchyKind::Noun)
        } else if self.verbs.contains(name) {
            Some(HierarchyKind::Verb)
        } else {
            None
        }
    }
}
