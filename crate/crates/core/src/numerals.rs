//! Von Neumann and Zermelo numerals with a substitutable base.
//!
//! The level-0 numeral is the base itself: either `∅` or an atom `x`. With an
//! atom base, `C₁(x) = D₁(x) = {x}`, `C₂(x) = {x,{x}}` and `D₂(x) = {{x}}`.

use std::fmt;
use std::str::FromStr;

use crate::hfset::{Atom, HfSet, SetError};

/// Largest von Neumann depth accepted from user input. `C_n` has `2^(n-1)`
/// base occurrences in its printed form.
pub const MAX_VON_NEUMANN_INPUT: usize = 20;
/// Largest Zermelo depth accepted from user input.
pub const MAX_ZERMELO_INPUT: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum NumeralBase {
    #[default]
    Empty,
    Atom(Atom),
}

impl NumeralBase {
    pub fn to_set(&self) -> HfSet {
        match self {
            NumeralBase::Empty => HfSet::empty(),
            NumeralBase::Atom(a) => HfSet::Atom(a.clone()),
        }
    }
}

impl From<Atom> for NumeralBase {
    fn from(a: Atom) -> Self {
        NumeralBase::Atom(a)
    }
}

impl fmt::Display for NumeralBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumeralBase::Empty => f.write_str("∅"),
            NumeralBase::Atom(a) => write!(f, "{a}"),
        }
    }
}

/// Accepts `∅`, `{}` or an atom label.
impl FromStr for NumeralBase {
    type Err = SetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "∅" | "{}" => Ok(NumeralBase::Empty),
            label => Atom::new(label).map(NumeralBase::Atom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumeralSystem {
    VonNeumann,
    Zermelo,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumeralSpec {
    pub system: NumeralSystem,
    pub depth: usize,
    pub base: NumeralBase,
}

impl NumeralSpec {
    /// Depth cap for numerals built from user input.
    pub fn input_limit(&self) -> usize {
        match self.system {
            NumeralSystem::VonNeumann => MAX_VON_NEUMANN_INPUT,
            NumeralSystem::Zermelo => MAX_ZERMELO_INPUT,
        }
    }

    pub fn build(&self) -> HfSet {
        match self.system {
            NumeralSystem::VonNeumann => von_neumann(self.depth, &self.base),
            NumeralSystem::Zermelo => zermelo(self.depth, &self.base),
        }
    }
}

/// `C₀ = base`, `C_{k+1} = {C₀, …, C_k}`.
pub fn von_neumann(n: usize, base: &NumeralBase) -> HfSet {
    let mut previous = Vec::with_capacity(n);
    let mut current = base.to_set();
    for _ in 0..n {
        previous.push(current);
        current = HfSet::set_of(previous.iter().cloned());
    }
    current
}

/// `D₀ = base`, `D_{k+1} = {D_k}`.
pub fn zermelo(n: usize, base: &NumeralBase) -> HfSet {
    (0..n).fold(base.to_set(), |d, _| HfSet::set_of([d]))
}
