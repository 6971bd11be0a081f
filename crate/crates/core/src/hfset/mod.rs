//! Hereditarily finite sets over atoms (urelements).
//!
//! Every [`HfSet`] is held in canonical form: the children of a set-node are
//! deduplicated and sorted under the total order implemented by [`Ord`].
//! Because of that, the derived structural equality *is* extensional
//! equality, and the [`Display`](fmt::Display) rendering is a canonical text
//! form that [`parse_set`] reads back.

pub(crate) mod parse;

pub use parse::{parse_set, ParseError};

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Errors raised by set-algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    /// A set-algebra operation received an atom where a set-node was required.
    #[error("`{op}` expects a set, got atom `{atom}`")]
    AtomOperand { op: &'static str, atom: Atom },
    #[error(
        "invalid atom label {0:?}: expected a letter followed by letters, digits or underscores"
    )]
    InvalidAtomLabel(String),
}

/// An opaque urelement. Atoms have no members and compare by label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(label: &str) -> Result<Self, SetError> {
        if is_valid_label(label) {
            Ok(Atom(Arc::from(label)))
        } else {
            Err(SetError::InvalidAtomLabel(label.to_owned()))
        }
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_label_start(c: char) -> bool {
    c.is_alphabetic()
}

pub(crate) fn is_label_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn is_valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        Some(c) if is_label_start(c) => chars.all(is_label_continue),
        _ => false,
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A hereditarily finite set, or an atom standing in for one of its leaves.
///
/// ## Invariants
///
/// - The children of a `Set` node are strictly increasing under [`Ord`], so
///   they contain no duplicates.
/// - Every child is itself canonical.
///
/// Construct set-nodes only through [`HfSet::set_of`] and the algebra
/// operations; both preserve the invariants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum HfSet {
    Atom(Atom),
    Set(Arc<[HfSet]>),
}

impl Ord for HfSet {
    /// Atoms precede set-nodes. Atoms compare by label. Set-nodes compare by
    /// cardinality, then lexicographically over their canonical children.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (HfSet::Atom(a), HfSet::Atom(b)) => a.cmp(b),
            (HfSet::Atom(_), HfSet::Set(_)) => Ordering::Less,
            (HfSet::Set(_), HfSet::Atom(_)) => Ordering::Greater,
            (HfSet::Set(a), HfSet::Set(b)) => {
                if Arc::ptr_eq(a, b) {
                    return Ordering::Equal;
                }
                a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
            }
        }
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Atom> for HfSet {
    fn from(atom: Atom) -> Self {
        HfSet::Atom(atom)
    }
}

impl Default for HfSet {
    fn default() -> Self {
        HfSet::empty()
    }
}

impl HfSet {
    /// The empty set.
    pub fn empty() -> Self {
        HfSet::Set(Arc::from(Vec::new()))
    }

    pub fn atom(label: &str) -> Result<Self, SetError> {
        Atom::new(label).map(HfSet::Atom)
    }

    /// Brace constructor: collects `children` into a canonical set-node.
    pub fn set_of<I: IntoIterator<Item = HfSet>>(children: I) -> Self {
        let mut children: Vec<HfSet> = children.into_iter().collect();
        children.sort_unstable();
        children.dedup();
        HfSet::Set(Arc::from(children))
    }

    /// Wraps already sorted, deduplicated children.
    fn from_sorted(children: Vec<HfSet>) -> Self {
        debug_assert!(children.windows(2).all(|w| w[0] < w[1]));
        HfSet::Set(Arc::from(children))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, HfSet::Atom(_))
    }

    pub fn is_empty_set(&self) -> bool {
        matches!(self, HfSet::Set(c) if c.is_empty())
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            HfSet::Atom(a) => Some(a),
            HfSet::Set(_) => None,
        }
    }

    /// Canonical children of a set-node; `None` for an atom.
    pub fn children(&self) -> Option<&[HfSet]> {
        match self {
            HfSet::Atom(_) => None,
            HfSet::Set(c) => Some(c),
        }
    }

    fn expect_set(&self, op: &'static str) -> Result<&[HfSet], SetError> {
        match self {
            HfSet::Atom(a) => Err(SetError::AtomOperand {
                op,
                atom: a.clone(),
            }),
            HfSet::Set(c) => Ok(c),
        }
    }

    /// `a ∈ self`. Always false when `self` is an atom.
    pub fn contains(&self, a: &HfSet) -> bool {
        match self {
            HfSet::Atom(_) => false,
            HfSet::Set(c) => c.binary_search(a).is_ok(),
        }
    }

    /// Number of canonical children.
    pub fn cardinality(&self) -> Result<usize, SetError> {
        self.expect_set("cardinality").map(<[HfSet]>::len)
    }

    /// Nesting depth: 0 for atoms and the empty set.
    pub fn rank(&self) -> usize {
        match self {
            HfSet::Atom(_) => 0,
            HfSet::Set(c) => c.iter().map(|x| x.rank() + 1).max().unwrap_or(0),
        }
    }

    pub fn unite(&self, other: &HfSet) -> Result<HfSet, SetError> {
        let a = self.expect_set("union")?;
        let b = other.expect_set("union")?;
        Ok(HfSet::from_sorted(merge(a, b, |l, r| l || r)))
    }

    pub fn intersect(&self, other: &HfSet) -> Result<HfSet, SetError> {
        let a = self.expect_set("intersect")?;
        let b = other.expect_set("intersect")?;
        Ok(HfSet::from_sorted(merge(a, b, |l, r| l && r)))
    }

    /// Members of `self` that are not members of `other`.
    pub fn difference(&self, other: &HfSet) -> Result<HfSet, SetError> {
        let a = self.expect_set("difference")?;
        let b = other.expect_set("difference")?;
        Ok(HfSet::from_sorted(merge(a, b, |l, r| l && !r)))
    }

    /// Every member of `self` is a member of `other`.
    pub fn is_subset(&self, other: &HfSet) -> Result<bool, SetError> {
        let a = self.expect_set("subset")?;
        other.expect_set("subset")?;
        Ok(a.iter().all(|x| other.contains(x)))
    }

    /// Monadic union `∪[Z] = { x | ∃ y ∈ Z, x ∈ y }`.
    ///
    /// Atom children of `self` contribute nothing.
    pub fn monadic_union(&self) -> Result<HfSet, SetError> {
        let outer = self.expect_set("munion")?;
        Ok(HfSet::set_of(
            outer
                .iter()
                .filter_map(HfSet::children)
                .flat_map(|c| c.iter().cloned()),
        ))
    }
}

/// Sorted merge of two canonical child slices, keeping an element when
/// `keep(in_a, in_b)` holds.
fn merge(a: &[HfSet], b: &[HfSet], keep: impl Fn(bool, bool) -> bool) -> Vec<HfSet> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.cmp(y),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        let (elem, in_a, in_b) = match ord {
            Ordering::Less => {
                i += 1;
                (&a[i - 1], true, false)
            }
            Ordering::Greater => {
                j += 1;
                (&b[j - 1], false, true)
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
                (&a[i - 1], true, true)
            }
        };
        if keep(in_a, in_b) {
            out.push(elem.clone());
        }
    }
    out
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HfSet::Atom(a) => f.write_str(a.label()),
            HfSet::Set(c) => {
                f.write_str("{")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for HfSet {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_set(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> HfSet {
        HfSet::atom("x1").unwrap()
    }

    fn s(text: &str) -> HfSet {
        parse_set(text).unwrap()
    }

    // C₂(x1), C₃(x1), D₂(x1), D₃(x1), written out by hand.
    fn c2() -> HfSet {
        HfSet::set_of([x1(), HfSet::set_of([x1()])])
    }
    fn c3() -> HfSet {
        HfSet::set_of([x1(), HfSet::set_of([x1()]), c2()])
    }
    fn d2() -> HfSet {
        HfSet::set_of([HfSet::set_of([x1()])])
    }
    fn d3() -> HfSet {
        HfSet::set_of([d2()])
    }

    #[test]
    fn empty_set_basics() {
        let e = HfSet::empty();
        assert_eq!(e.cardinality().unwrap(), 0);
        assert_eq!(e, HfSet::set_of([]));
        assert_eq!(e.rank(), 0);
        assert_eq!(e.to_string(), "{}");
    }

    #[test]
    fn set_of_dedups_and_orders() {
        let e = HfSet::empty();
        let once = HfSet::set_of([e.clone(), e.clone()]);
        assert_eq!(once.cardinality().unwrap(), 1);
        let a = HfSet::set_of([HfSet::set_of([e.clone()]), e.clone()]);
        assert_eq!(a.children().unwrap(), &[e.clone(), HfSet::set_of([e])]);
        assert_eq!(
            HfSet::set_of([x1(), HfSet::set_of([x1()])]).to_string(),
            "{x1,{x1}}"
        );
    }

    #[test]
    fn extensional_equality() {
        assert_eq!(s("{{},{{}}}"), s("{{{}},{}}"));
        assert_ne!(s("{{{}}}"), s("{{},{{}}}"));
        assert_ne!(x1(), HfSet::set_of([x1()]));
    }

    #[test]
    fn membership() {
        assert!(c2().contains(&HfSet::set_of([x1()])));
        assert!(!x1().contains(&x1()));
        assert!(!x1().contains(&HfSet::empty()));
        assert!(!c3().contains(&d2()));
    }

    #[test]
    fn union_cases() {
        let any = s("{a,{b},{{}}}");
        assert_eq!(HfSet::empty().unite(&any).unwrap(), any);
        assert_eq!(c3().unite(&d3()).unwrap().cardinality().unwrap(), 4);
        assert_eq!(c2().unite(&d2()).unwrap(), c2());
    }

    #[test]
    fn intersection_cases() {
        assert_eq!(c2().intersect(&d2()).unwrap(), d2());
        assert_eq!(c3().intersect(&HfSet::empty()).unwrap(), HfSet::empty());
        let c3e = s("{{},{{}},{{},{{}}}}");
        let d3e = s("{{{{}}}}");
        assert_eq!(c3e.intersect(&d3e).unwrap(), HfSet::empty());
    }

    #[test]
    fn atoms_are_rejected_as_operands() {
        let err = x1().unite(&HfSet::empty()).unwrap_err();
        assert!(matches!(err, SetError::AtomOperand { op: "union", .. }));
        assert!(HfSet::empty().intersect(&x1()).is_err());
        assert!(x1().cardinality().is_err());
        assert!(x1().monadic_union().is_err());
    }

    #[test]
    fn cardinalities() {
        assert_eq!(c3().cardinality().unwrap(), 3);
        assert_eq!(d3().cardinality().unwrap(), 1);
    }

    #[test]
    fn monadic_union_cases() {
        assert_eq!(c3().monadic_union().unwrap(), c2());
        assert_eq!(d3().monadic_union().unwrap(), d2());
        assert_eq!(
            HfSet::set_of([x1()]).monadic_union().unwrap(),
            HfSet::empty()
        );
    }

    #[test]
    fn ranks() {
        assert_eq!(d3().rank(), 3);
        assert_eq!(c3().rank(), 3);
        assert_eq!(x1().rank(), 0);
    }

    #[test]
    fn printing() {
        assert_eq!(c2().to_string(), "{x1,{x1}}");
        assert_eq!(d3().to_string(), "{{{x1}}}");
    }

    #[test]
    fn atom_labels_are_validated() {
        assert!(Atom::new("x_1a").is_ok());
        assert!(Atom::new("1x").is_err());
        assert!(Atom::new("").is_err());
        assert!(Atom::new("x-1").is_err());
    }

    #[test]
    fn order_puts_smaller_sets_first() {
        // {a,b} has cardinality 2, so it follows the singleton {{{}}} even
        // though its first child is an atom.
        let pair = s("{a,b}");
        let single = s("{{{}}}");
        assert!(single < pair);
        assert!(x1() < HfSet::empty());
    }
}
