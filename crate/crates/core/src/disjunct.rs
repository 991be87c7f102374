//! Connectors and disjuncts.
//!
//! A disjunct is written `((l_1,...,l_m) (r_n,...,r_1))`. Connectors with a
//! larger index link to words further away, so the left list is stored
//! nearest-first and the right list is stored farthest-first, exactly as
//! written.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid connector `{0}`: expected [A-Z]+[a-z]*")]
pub struct ConnectorError(pub String);

/// A typed link endpoint such as `D`, `Ds` or `Ss`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Connector {
    base: String,
    subscript: String,
}

impl Connector {
    pub fn new(base: &str, subscript: &str) -> Result<Self, ConnectorError> {
        let base_ok = !base.is_empty() && base.bytes().all(|b| b.is_ascii_uppercase());
        let sub_ok = subscript.bytes().all(|b| b.is_ascii_lowercase());
        if base_ok && sub_ok {
            Ok(Connector {
                base: base.to_owned(),
                subscript: subscript.to_owned(),
            })
        } else {
            Err(ConnectorError(format!("{base}{subscript}")))
        }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn subscript(&self) -> &str {
        &self.subscript
    }

    /// Whether `self`, a right connector of the left word, can link to
    /// `other`, a left connector of the right word.
    ///
    /// Bases must be equal; an empty subscript acts as a wildcard.
    pub fn matches(&self, other: &Connector) -> bool {
        self.base == other.base
            && (self.subscript.is_empty()
                || other.subscript.is_empty()
                || self.subscript == other.subscript)
    }

    /// Label of the link formed by two matching connectors: the one with the
    /// longer subscript.
    pub fn link_label(&self, other: &Connector) -> Connector {
        if other.subscript.len() > self.subscript.len() {
            other.clone()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for Connector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, self.subscript)
    }
}

impl FromStr for Connector {
    type Err = ConnectorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let split = s.find(|c: char| !c.is_ascii_uppercase()).unwrap_or(s.len());
        Connector::new(&s[..split], &s[split..])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A connector position inside a disjunct, indexed in written order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub side: Side,
    pub index: usize,
}

/// One syntactic usage of a word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Disjunct {
    /// Left connectors, nearest word first.
    pub left: Vec<Connector>,
    /// Right connectors in written order, farthest word first.
    pub right: Vec<Connector>,
}

impl Disjunct {
    pub fn new(left: Vec<Connector>, right: Vec<Connector>) -> Self {
        Disjunct { left, right }
    }

    /// Parses the display form, e.g. `((A,Ds) (Ss))` or `(( ) (D))`.
    ///
    /// Intended for literals in code and tests; files go through
    /// [`crate::format`].
    pub fn parse(s: &str) -> Result<Self, crate::format::FormatError> {
        crate::format::parse_disjunct(s)
    }

    /// Right connectors nearest word first.
    pub fn right_nearest_first(&self) -> impl DoubleEndedIterator<Item = &Connector> {
        self.right.iter().rev()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    pub fn connector_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn get(&self, slot: Slot) -> Option<&Connector> {
        match slot.side {
            Side::Left => self.left.get(slot.index),
            Side::Right => self.right.get(slot.index),
        }
    }

    pub fn slots(&self) -> impl Iterator<Item = Slot> + '_ {
        let left = (0..self.left.len()).map(|index| Slot {
            side: Side::Left,
            index,
        });
        let right = (0..self.right.len()).map(|index| Slot {
            side: Side::Right,
            index,
        });
        left.chain(right)
    }

    /// Same arity on each side and every connector pair shares a base with
    /// compatible subscripts.
    pub fn compatible_with(&self, other: &Disjunct) -> bool {
        fn side(a: &[Connector], b: &[Connector]) -> bool {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.matches(y))
        }
        side(&self.left, &other.left) && side(&self.right, &other.right)
    }
}

pub(crate) fn write_list(f: &mut fmt::Formatter<'_>, list: &[Connector]) -> fmt::Result {
    if list.is_empty() {
        return f.write_str("( )");
    }
    f.write_str("(")?;
    for (i, c) in list.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Disjunct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_list(f, &self.left)?;
        f.write_str(" ")?;
        write_list(f, &self.right)?;
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Connector {
        s.parse().unwrap()
    }

    #[test]
    fn connector_parse_and_display() {
        assert_eq!(c("Ds").base(), "D");
        assert_eq!(c("Ds").subscript(), "s");
        assert_eq!(c("O").to_string(), "O");
        assert!("ds".parse::<Connector>().is_err());
        assert!("".parse::<Connector>().is_err());
        assert!("DsX".parse::<Connector>().is_err());
        assert!("D1".parse::<Connector>().is_err());
    }

    #[test]
    fn matching() {
        assert!(c("D").matches(&c("Ds")));
        assert!(c("Ss").matches(&c("Ss")));
        assert!(!c("Ss").matches(&c("Os")));
        assert!(!c("Ds").matches(&c("Dp")));
        assert!(c("Os").matches(&c("O")));
    }

    #[test]
    fn label_is_more_specific() {
        assert_eq!(c("D").link_label(&c("Ds")), c("Ds"));
        assert_eq!(c("Os").link_label(&c("O")), c("Os"));
        assert_eq!(c("Ss").link_label(&c("Ss")), c("Ss"));
    }

    #[test]
    fn display_form() {
        let d = Disjunct::new(vec![c("A"), c("Ds"), c("Os")], vec![]);
        assert_eq!(d.to_string(), "((A,Ds,Os) ( ))");
        let d = Disjunct::new(vec![], vec![c("D")]);
        assert_eq!(d.to_string(), "(( ) (D))");
        assert_eq!(Disjunct::default().to_string(), "(( ) ( ))");
    }

    #[test]
    fn right_list_reads_nearest_first_reversed() {
        let d = Disjunct::new(vec![c("D")], vec![c("Os"), c("Ss")]);
        let near: Vec<_> = d.right_nearest_first().map(ToString::to_string).collect();
        assert_eq!(near, ["Ss", "Os"]);
    }

    #[test]
    fn compatibility_ignores_wildcard_subscripts() {
        let h = Disjunct::new(vec![c("D")], vec![c("Ss")]);
        let d = Disjunct::new(vec![c("Ds")], vec![c("Ss")]);
        assert!(h.compatible_with(&d));
        let wide = Disjunct::new(vec![c("D")], vec![c("Os"), c("Ss")]);
        assert!(!wide.compatible_with(&d));
    }
}
