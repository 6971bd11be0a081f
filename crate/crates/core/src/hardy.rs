//! The set-theoretic Hardy construction.
//!
//! Four distinct atoms `x̂ = (x₁, x₂, x₃, x₄)` build two "particles"
//!
//! ```text
//! C(x̂) = C_k(x₁) ∪ C_k(x₂) ∪ D_k(x₃) ∪ D_k(x₄)
//! D(x̂) = C_k(x₄) ∪ C_k(x₃) ∪ D_k(x₂) ∪ D_k(x₁)
//! ```
//!
//! with `k = 3` in the original construction. The sample space Ω is the set
//! of members of `C(x̂) ∪ D(x̂)` under the uniform measure. The hidden
//! parameters are `A = C_k(x₁)` and `B = D_k(x₁)`; annihilation is the
//! monadic union, and the classical double-click probability is
//! `P(∪[A] ∩ ∪[B])`.

use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hfset::{Atom, HfSet, SetError};
use crate::numerals::{von_neumann, zermelo, NumeralBase};
use crate::probability::{Event, Probability, ProbabilityError, ProbabilityTriple};

/// Depth of the original construction.
pub const HARDY_DEPTH: usize = 3;

/// The four pairs whose inequality the original construction states.
pub const CYCLIC_PAIRS: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (3, 0)];
/// The remaining pairs, needed for the two wings to be disjoint.
pub const DIAGONAL_PAIRS: [(usize, usize); 2] = [(0, 2), (1, 3)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardyError {
    #[error("{0}")]
    NonDistinctAtoms(Collision),
    #[error("depth must be at least 1")]
    InvalidDepth,
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Probability(#[from] ProbabilityError),
}

/// Two positions of a quadruple carrying the same label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    /// Zero-based positions, `first < second`.
    pub first: usize,
    pub second: usize,
    pub label: String,
    /// Whether the pair is one of the four stated cyclic inequalities.
    pub cyclic: bool,
}

impl fmt::Display for Collision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "atoms x{} and x{} are both `{}`",
            self.first + 1,
            self.second + 1,
            self.label
        )?;
        if self.cyclic {
            write!(
                f,
                " (violates the cyclic condition x{} ≠ x{})",
                self.first + 1,
                self.second + 1
            )
        } else {
            write!(
                f,
                " (allowed by the four cyclic conditions, but C(x̂) and D(x̂) then share members)"
            )
        }
    }
}

fn collisions(labels: &[Atom; 4]) -> Vec<Collision> {
    CYCLIC_PAIRS
        .iter()
        .map(|&(i, j)| (i.min(j), i.max(j), true))
        .chain(DIAGONAL_PAIRS.iter().map(|&(i, j)| (i, j, false)))
        .filter(|&(i, j, _)| labels[i] == labels[j])
        .map(|(first, second, cyclic)| Collision {
            first,
            second,
            label: labels[first].label().to_owned(),
            cyclic,
        })
        .collect()
}

/// Four pairwise-distinct atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomQuadruple([Atom; 4]);

impl AtomQuadruple {
    pub fn new(labels: [Atom; 4]) -> Result<Self, HardyError> {
        match collisions(&labels).into_iter().next() {
            Some(c) => Err(HardyError::NonDistinctAtoms(c)),
            None => Ok(AtomQuadruple(labels)),
        }
    }

    pub fn from_labels(labels: [&str; 4]) -> Result<Self, HardyError> {
        let atoms = [
            Atom::new(labels[0])?,
            Atom::new(labels[1])?,
            Atom::new(labels[2])?,
            Atom::new(labels[3])?,
        ];
        Self::new(atoms)
    }

    /// `(x1, x2, x3, x4)`.
    pub fn standard() -> Self {
        Self::from_labels(["x1", "x2", "x3", "x4"]).expect("standard labels are distinct")
    }

    /// Four distinct random labels of the form `a` followed by hex digits.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let labels: [Atom; 4] = std::array::from_fn(|_| {
                Atom::new(&format!("a{:x}", rng.gen::<u32>())).expect("generated label is valid")
            });
            if let Ok(q) = Self::new(labels) {
                return q;
            }
        }
    }

    pub fn atoms(&self) -> &[Atom; 4] {
        &self.0
    }

    pub fn labels(&self) -> [String; 4] {
        std::array::from_fn(|i| self.0[i].label().to_owned())
    }
}

fn wings(x: &[Atom; 4], depth: usize) -> Result<(HfSet, HfSet), SetError> {
    let base = |i: usize| NumeralBase::Atom(x[i].clone());
    let c = von_neumann(depth, &base(0))
        .unite(&von_neumann(depth, &base(1)))?
        .unite(&zermelo(depth, &base(2)))?
        .unite(&zermelo(depth, &base(3)))?;
    let d = von_neumann(depth, &base(3))
        .unite(&von_neumann(depth, &base(2)))?
        .unite(&zermelo(depth, &base(1)))?
        .unite(&zermelo(depth, &base(0)))?;
    Ok((c, d))
}

/// The full construction at a given depth.
///
/// Only the depth-3 model reproduces every property of the original
/// argument. At depth 1 and 2 the two wings share members (`C₁ = D₁`), and
/// the hidden parameters are disjoint only from depth 3 on; both facts are
/// exposed through [`HardyModel::wings_disjoint`] and
/// [`HardyModel::hidden_disjoint`] rather than rejected.
#[derive(Debug, Clone)]
pub struct HardyModel {
    quad: AtomQuadruple,
    depth: usize,
    c_set: HfSet,
    d_set: HfSet,
    triple: ProbabilityTriple,
    hidden_a: HfSet,
    hidden_b: HfSet,
}

impl HardyModel {
    pub fn build(quad: AtomQuadruple, depth: usize) -> Result<Self, HardyError> {
        if depth == 0 {
            return Err(HardyError::InvalidDepth);
        }
        let (c_set, d_set) = wings(quad.atoms(), depth)?;
        let omega = c_set.unite(&d_set)?;
        let triple = ProbabilityTriple::uniform(omega.children().unwrap_or_default().to_vec())?;
        let x1 = NumeralBase::Atom(quad.atoms()[0].clone());
        let hidden_a = von_neumann(depth, &x1);
        let hidden_b = zermelo(depth, &x1);
        Ok(HardyModel {
            quad,
            depth,
            c_set,
            d_set,
            triple,
            hidden_a,
            hidden_b,
        })
    }

    pub fn standard() -> Self {
        Self::build(AtomQuadruple::standard(), HARDY_DEPTH).expect("standard model builds")
    }

    pub fn quad(&self) -> &AtomQuadruple {
        &self.quad
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `C(x̂)`.
    pub fn c_set(&self) -> &HfSet {
        &self.c_set
    }

    /// `D(x̂)`.
    pub fn d_set(&self) -> &HfSet {
        &self.d_set
    }

    pub fn triple(&self) -> &ProbabilityTriple {
        &self.triple
    }

    /// `A(x₁) = C_k(x₁)`.
    pub fn hidden_a(&self) -> &HfSet {
        &self.hidden_a
    }

    /// `B(x₁) = D_k(x₁)`.
    pub fn hidden_b(&self) -> &HfSet {
        &self.hidden_b
    }

    pub fn omega_size(&self) -> usize {
        self.triple.size()
    }

    pub fn wing_intersection(&self) -> HfSet {
        self.c_set
            .intersect(&self.d_set)
            .expect("wings are set-nodes")
    }

    pub fn wings_disjoint(&self) -> bool {
        self.wing_intersection().is_empty_set()
    }

    /// `A ⊆ C(x̂)` and `B ⊆ D(x̂)`.
    pub fn hidden_within_wings(&self) -> bool {
        self.hidden_a.is_subset(&self.c_set).unwrap_or(false)
            && self.hidden_b.is_subset(&self.d_set).unwrap_or(false)
    }

    pub fn hidden_disjoint(&self) -> bool {
        self.hidden_a
            .intersect(&self.hidden_b)
            .map(|s| s.is_empty_set())
            .unwrap_or(false)
    }

    /// `D₂(x₁)`, the value the annihilated intersection takes at depth 3.
    pub fn expected_joint_set(&self) -> HfSet {
        zermelo(2, &NumeralBase::Atom(self.quad.atoms()[0].clone()))
    }
}

/// Annihilation, modeled as the monadic union.
pub fn annihilate(s: &HfSet) -> Result<HfSet, SetError> {
    s.monadic_union()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardyResult {
    pub annihilated_a: HfSet,
    pub annihilated_b: HfSet,
    pub joint_set: HfSet,
    pub joint_event: Event,
    pub probability: Probability,
    pub omega_size: usize,
    /// `log₂ |F|`.
    pub field_size_log2: u32,
}

/// `P(∪[A] ∩ ∪[B])`, exactly.
pub fn hardy_probability(m: &HardyModel) -> Result<HardyResult, HardyError> {
    let annihilated_a = annihilate(&m.hidden_a)?;
    let annihilated_b = annihilate(&m.hidden_b)?;
    let joint_set = annihilated_a.intersect(&annihilated_b)?;
    let joint_event = m.triple.event_from_set(&joint_set)?;
    let probability = m.triple.prob(joint_event)?;
    Ok(HardyResult {
        annihilated_a,
        annihilated_b,
        joint_set,
        joint_event,
        probability,
        omega_size: m.triple.size(),
        field_size_log2: m.triple.field_size_log2(),
    })
}

/// `∪[A] ∩ ∪[B] = D₂(x₁)`.
pub fn intersection_identity_check(m: &HardyModel) -> bool {
    let joint = annihilate(&m.hidden_a)
        .and_then(|a| Ok((a, annihilate(&m.hidden_b)?)))
        .and_then(|(a, b)| a.intersect(&b));
    joint.is_ok_and(|j| j == m.expected_joint_set())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldMembership {
    pub label: String,
    pub set: String,
    pub in_field: bool,
}

/// Whether `probe` names an event of the model's triple.
pub fn in_field(m: &HardyModel, probe: &HfSet) -> bool {
    m.triple.event_from_set(probe).is_ok()
}

/// Field membership of `C₂(x_n)`, `D₂(x_n)` for every atom, of both
/// annihilated hidden parameters and of their intersection.
pub fn field_membership_report(m: &HardyModel) -> Vec<FieldMembership> {
    let mut probes = Vec::new();
    for (i, atom) in m.quad.atoms().iter().enumerate() {
        probes.push((
            format!("C2(x{})", i + 1),
            von_neumann(2, &atom.clone().into()),
        ));
    }
    for (i, atom) in m.quad.atoms().iter().enumerate() {
        probes.push((format!("D2(x{})", i + 1), zermelo(2, &atom.clone().into())));
    }
    if let (Ok(a), Ok(b)) = (annihilate(&m.hidden_a), annihilate(&m.hidden_b)) {
        let joint = a.intersect(&b).expect("annihilated sets are set-nodes");
        probes.push(("munion(A)".to_owned(), a));
        probes.push(("munion(B)".to_owned(), b));
        probes.push(("munion(A) ∩ munion(B)".to_owned(), joint));
    }
    probes
        .into_iter()
        .map(|(label, set)| FieldMembership {
            in_field: in_field(m, &set),
            set: set.to_string(),
            label,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctnessReport {
    pub labels: [String; 4],
    pub depth: usize,
    pub collisions: Vec<Collision>,
    /// `x₁ ≠ x₂`, `x₂ ≠ x₃`, `x₃ ≠ x₄` and `x₄ ≠ x₁` all hold.
    pub satisfies_cyclic_conditions: bool,
    pub pairwise_distinct: bool,
    pub wings_disjoint: bool,
    pub wing_intersection: String,
    pub omega_size: usize,
}

/// Builds the wings for a possibly colliding quadruple and reports whether
/// they stay disjoint.
pub fn distinctness_diagnostic(labels: [Atom; 4], depth: usize) -> DistinctnessReport {
    let found = collisions(&labels);
    let (c, d) = wings(&labels, depth).expect("numerals are set-nodes for depth >= 1");
    let inter = c.intersect(&d).expect("wings are set-nodes");
    let omega = c.unite(&d).expect("wings are set-nodes");
    DistinctnessReport {
        labels: std::array::from_fn(|i| labels[i].label().to_owned()),
        depth,
        satisfies_cyclic_conditions: !found.iter().any(|c| c.cyclic),
        pairwise_distinct: found.is_empty(),
        wings_disjoint: inter.is_empty_set(),
        wing_intersection: inter.to_string(),
        omega_size: omega.cardinality().expect("union is a set-node"),
        collisions: found,
    }
}

/// The collision patterns over labels `a, b, c, d`: all distinct, each
/// single cyclic collision, and each diagonal collision.
pub fn collision_patterns() -> Vec<[Atom; 4]> {
    let atom = |s: &str| Atom::new(s).expect("valid label");
    let base = ["a", "b", "c", "d"];
    let mut out = vec![base.map(atom)];
    for &(i, j) in CYCLIC_PAIRS.iter().chain(&DIAGONAL_PAIRS) {
        let (lo, hi) = (i.min(j), i.max(j));
        let mut labels = base;
        labels[hi] = base[lo];
        out.push(labels.map(atom));
    }
    out
}
