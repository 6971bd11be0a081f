//! Brute-force set expansion, independent of `hardy_core`'s set engine.
//!
//! Sets are `BTreeSet`s of a plain enum; equality and ordering come from the
//! derived impls, and numerals are expanded literally from their recurrences.

use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Naive {
    Atom(String),
    Set(BTreeSet<Naive>),
}

impl Naive {
    pub fn atom(l: &str) -> Self {
        Naive::Atom(l.to_owned())
    }

    pub fn members(&self) -> BTreeSet<Naive> {
        match self {
            Naive::Atom(_) => BTreeSet::new(),
            Naive::Set(s) => s.clone(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Naive::Atom(l) => l.clone(),
            Naive::Set(s) => {
                let inner: Vec<String> = s.iter().map(Naive::render).collect();
                format!("{{{}}}", inner.join(","))
            }
        }
    }
}

/// `C_n(x)`, expanded from `C_{k+1} = {C_0, …, C_k}`.
pub fn vn(n: usize, base: &Naive) -> Naive {
    let mut all = vec![base.clone()];
    for _ in 0..n {
        all.push(Naive::Set(all.iter().cloned().collect()));
    }
    all.pop().unwrap()
}

/// `D_n(x)`, expanded from `D_{k+1} = {D_k}`.
pub fn zm(n: usize, base: &Naive) -> Naive {
    let mut d = base.clone();
    for _ in 0..n {
        d = Naive::Set(BTreeSet::from([d]));
    }
    d
}

pub fn big_union(z: &Naive) -> BTreeSet<Naive> {
    z.members().iter().flat_map(|y| y.members()).collect()
}

/// Everything about one instance of the construction, as plain counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub omega: BTreeSet<Naive>,
    pub wing_overlap: usize,
    pub joint: BTreeSet<Naive>,
}

impl Expansion {
    /// `(numerator, denominator)` in lowest terms.
    pub fn probability(&self) -> (u64, u64) {
        assert!(self.joint.is_subset(&self.omega), "joint set escapes Ω");
        reduce(self.joint.len() as u64, self.omega.len() as u64)
    }
}

pub fn expand(labels: [&str; 4], depth: usize) -> Expansion {
    let x: Vec<Naive> = labels.iter().map(|l| Naive::atom(l)).collect();
    let mut c = BTreeSet::new();
    for s in [
        vn(depth, &x[0]),
        vn(depth, &x[1]),
        zm(depth, &x[2]),
        zm(depth, &x[3]),
    ] {
        c.extend(s.members());
    }
    let mut d = BTreeSet::new();
    for s in [
        vn(depth, &x[3]),
        vn(depth, &x[2]),
        zm(depth, &x[1]),
        zm(depth, &x[0]),
    ] {
        d.extend(s.members());
    }
    let wing_overlap = c.intersection(&d).count();
    let omega: BTreeSet<Naive> = c.union(&d).cloned().collect();
    let a = big_union(&vn(depth, &x[0]));
    let b = big_union(&zm(depth, &x[0]));
    let joint = a.intersection(&b).cloned().collect();
    Expansion {
        omega,
        wing_overlap,
        joint,
    }
}

pub fn reduce(n: u64, d: u64) -> (u64, u64) {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(n, d).max(1);
    (n / g, d / g)
}
