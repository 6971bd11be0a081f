//! Finite probability triples `(Ω, F, P)` with `F = 2^Ω`.
//!
//! Sample points are canonical [`HfSet`] values kept in canonical order, so an
//! event is a bitmask over their positions. All measures are exact: each
//! weight is stored as a numerator over one common denominator.

use num_integer::Integer;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hfset::HfSet;

/// Exact probability value.
pub type Probability = Ratio<u64>;

/// Largest sample space an [`Event`] bitmask can address.
pub const MAX_OMEGA: usize = 64;

/// Largest sample space [`verify_axioms`] will sweep exhaustively.
pub const MAX_VERIFIED_OMEGA: usize = 24;

/// Sample spaces up to this size get the bounds check on every event.
const EXHAUSTIVE_BOUNDS_OMEGA: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbabilityError {
    #[error("sample space must be non-empty")]
    EmptySampleSpace,
    #[error("duplicate sample points: {}", .0.join(", "))]
    DuplicateElement(Vec<String>),
    #[error("sample space of {size} points exceeds the supported maximum of {max}")]
    SampleSpaceTooLarge { size: usize, max: usize },
    #[error("event {mask:#x} addresses points outside a sample space of {size}")]
    IndexOutOfRange { mask: u64, size: usize },
    #[error("not an event: {} not in the sample space", .missing.join(", "))]
    NotAnEvent { missing: Vec<String> },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
}

/// A subset of Ω, as a bitmask over Ω's canonical ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize)]
pub struct Event(u64);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub fn from_mask(mask: u64) -> Self {
        Event(mask)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(
        indices: I,
    ) -> Result<Self, ProbabilityError> {
        let mut mask = 0u64;
        for i in indices {
            if i >= MAX_OMEGA {
                return Err(ProbabilityError::IndexOutOfRange {
                    mask: u64::MAX,
                    size: MAX_OMEGA,
                });
            }
            mask |= 1 << i;
        }
        Ok(Event(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_OMEGA && self.0 & (1 << index) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            (rest != 0).then(|| {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                i
            })
        })
    }

    pub fn union(self, other: Event) -> Event {
        Event(self.0 | other.0)
    }

    pub fn intersection(self, other: Event) -> Event {
        Event(self.0 & other.0)
    }

    pub fn is_subset(self, other: Event) -> bool {
        self.0 & !other.0 == 0
    }
}

/// `(Ω, 2^Ω, P)` over at most [`MAX_OMEGA`] sample points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityTriple {
    omega: Vec<HfSet>,
    /// `P({ω_i}) = numerators[i] / denominator`; the numerators sum to the denominator.
    numerators: Vec<u64>,
    denominator: u64,
    uniform: bool,
}

impl ProbabilityTriple {
    /// Uniform measure: every point gets weight `1/|Ω|`.
    pub fn uniform(elements: Vec<HfSet>) -> Result<Self, ProbabilityError> {
        let n = elements.len();
        let omega = canonical_omega(elements.into_iter().map(|e| (e, 1)).collect())?;
        Ok(ProbabilityTriple {
            omega: omega.iter().map(|(e, _)| e.clone()).collect(),
            numerators: vec![1; n],
            denominator: n as u64,
            uniform: true,
        })
    }

    /// Arbitrary exact weights, which must be non-negative and sum to one.
    pub fn with_weights(
        elements: Vec<HfSet>,
        weights: Vec<Probability>,
    ) -> Result<Self, ProbabilityError> {
        if elements.len() != weights.len() {
            return Err(ProbabilityError::InvalidWeights(format!(
                "{} points but {} weights",
                elements.len(),
                weights.len()
            )));
        }
        let overflow =
            || ProbabilityError::InvalidWeights("common denominator overflows u64".into());
        let mut denominator = 1u64;
        for w in &weights {
            if *w.denom() == 0 {
                return Err(ProbabilityError::InvalidWeights("zero denominator".into()));
            }
            let l = u128::from(denominator).lcm(&u128::from(*w.denom()));
            denominator = u64::try_from(l).map_err(|_| overflow())?;
        }
        let mut total = 0u64;
        let mut paired = Vec::with_capacity(weights.len());
        for (e, w) in elements.into_iter().zip(&weights) {
            let k = w
                .numer()
                .checked_mul(denominator / w.denom())
                .ok_or_else(overflow)?;
            total = total.checked_add(k).ok_or_else(overflow)?;
            paired.push((e, k));
        }
        if total != denominator {
            return Err(ProbabilityError::InvalidWeights(format!(
                "weights sum to {}, not 1",
                Probability::new(total, denominator)
            )));
        }
        let omega = canonical_omega(paired)?;
        let (omega, numerators): (Vec<_>, Vec<u64>) = omega.into_iter().unzip();
        let uniform = numerators.iter().all(|&k| k == 1);
        Ok(ProbabilityTriple {
            omega,
            numerators,
            denominator,
            uniform,
        })
    }

    pub fn omega(&self) -> &[HfSet] {
        &self.omega
    }

    pub fn size(&self) -> usize {
        self.omega.len()
    }

    /// `log₂ |F|`, i.e. `|Ω|`, since `F` is the power set.
    pub fn field_size_log2(&self) -> u32 {
        self.omega.len() as u32
    }

    pub fn field_size(&self) -> u128 {
        1u128 << self.omega.len()
    }

    pub fn weight(&self, index: usize) -> Option<Probability> {
        self.numerators
            .get(index)
            .map(|&k| Probability::new(k, self.denominator))
    }

    pub fn index_of(&self, point: &HfSet) -> Option<usize> {
        self.omega.binary_search(point).ok()
    }

    pub fn full_event(&self) -> Event {
        Event(full_mask(self.size()))
    }

    pub fn validate(&self, e: Event) -> Result<Event, ProbabilityError> {
        if e.0 & !full_mask(self.size()) != 0 {
            Err(ProbabilityError::IndexOutOfRange {
                mask: e.0,
                size: self.size(),
            })
        } else {
            Ok(e)
        }
    }

    /// The event whose points are the members of `s`.
    ///
    /// Fails with [`ProbabilityError::NotAnEvent`] when `s` is an atom or has
    /// a member outside Ω.
    pub fn event_from_set(&self, s: &HfSet) -> Result<Event, ProbabilityError> {
        let Some(members) = s.children() else {
            return Err(ProbabilityError::NotAnEvent {
                missing: vec![s.to_string()],
            });
        };
        let mut mask = 0u64;
        let mut missing = Vec::new();
        for m in members {
            match self.index_of(m) {
                Some(i) => mask |= 1 << i,
                None => missing.push(m.to_string()),
            }
        }
        if missing.is_empty() {
            Ok(Event(mask))
        } else {
            Err(ProbabilityError::NotAnEvent { missing })
        }
    }

    /// The set of sample points in `e`.
    pub fn event_to_set(&self, e: Event) -> Result<HfSet, ProbabilityError> {
        let e = self.validate(e)?;
        Ok(HfSet::set_of(e.indices().map(|i| self.omega[i].clone())))
    }

    pub fn prob(&self, e: Event) -> Result<Probability, ProbabilityError> {
        let e = self.validate(e)?;
        Ok(self.prob_unchecked(e))
    }

    fn prob_unchecked(&self, e: Event) -> Probability {
        let k: u64 = if self.uniform {
            e.len() as u64
        } else {
            e.indices().map(|i| self.numerators[i]).sum()
        };
        Probability::new(k, self.denominator)
    }

    pub fn complement(&self, e: Event) -> Result<Event, ProbabilityError> {
        let e = self.validate(e)?;
        Ok(Event(!e.0 & full_mask(self.size())))
    }

    pub fn is_uniform(&self) -> bool {
        self.numerators.iter().all(|&k| k == self.numerators[0])
    }
}

/// Sorts points into canonical order and rejects empty or duplicated input.
fn canonical_omega(mut points: Vec<(HfSet, u64)>) -> Result<Vec<(HfSet, u64)>, ProbabilityError> {
    if points.is_empty() {
        return Err(ProbabilityError::EmptySampleSpace);
    }
    if points.len() > MAX_OMEGA {
        return Err(ProbabilityError::SampleSpaceTooLarge {
            size: points.len(),
            max: MAX_OMEGA,
        });
    }
    points.sort_by(|a, b| a.0.cmp(&b.0));
    let mut dups: Vec<String> = points
        .windows(2)
        .filter(|w| w[0].0 == w[1].0)
        .map(|w| w[0].0.to_string())
        .collect();
    if !dups.is_empty() {
        dups.dedup();
        return Err(ProbabilityError::DuplicateElement(dups));
    }
    Ok(points)
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Outcome of an exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveCheck {
    pub checked_count: u64,
    /// Masks of the events that failed.
    pub failures: Vec<u64>,
}

/// Outcome of a seeded sampled check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampledCheck {
    pub checked_count: u64,
    pub seed: u64,
    /// `(a, b)` mask pairs that failed.
    pub failures: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub omega_size: usize,
    pub field_size_log2: u32,
    pub omega_in_field: bool,
    pub complement_closure: ExhaustiveCheck,
    pub union_closure: SampledCheck,
    pub additivity: SampledCheck,
    pub measure_bounds: bool,
    pub measure_bounds_checked: u64,
    pub total_mass_is_one: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.omega_in_field
            && self.complement_closure.failures.is_empty()
            && self.union_closure.failures.is_empty()
            && self.additivity.failures.is_empty()
            && self.measure_bounds
            && self.total_mass_is_one
    }
}

/// Checks the σ-field axioms and the measure bounds on `t`.
///
/// Complement closure, `Ω ∈ F` and `P(E) + P(Eᶜ) = 1` are swept over all
/// `2^|Ω|` events. Union closure (with inclusion–exclusion) and finite
/// additivity on disjoint pairs are checked on `union_samples` pairs drawn
/// from a ChaCha8 stream seeded with `seed`. The bound `0 ≤ P(E) ≤ 1` is
/// exhaustive up to 16 points and sampled beyond.
pub fn verify_axioms(
    t: &ProbabilityTriple,
    union_samples: u64,
    seed: u64,
) -> Result<AxiomReport, ProbabilityError> {
    let n = t.size();
    if n > MAX_VERIFIED_OMEGA {
        return Err(ProbabilityError::SampleSpaceTooLarge {
            size: n,
            max: MAX_VERIFIED_OMEGA,
        });
    }
    let full = full_mask(n);
    let one = Probability::from_integer(1);
    let zero = Probability::from_integer(0);
    let in_field = |e: Event| t.validate(e).is_ok();

    let omega_in_field = in_field(t.full_event());

    let mut complement_failures = Vec::new();
    let mut bounds_ok = true;
    let mut bounds_checked = 0u64;
    for mask in 0..=full {
        let e = Event(mask);
        let ok = match t.complement(e) {
            Ok(c) => {
                in_field(c)
                    && c.intersection(e).is_empty()
                    && c.union(e) == t.full_event()
                    && t.complement(c) == Ok(e)
                    && t.prob_unchecked(e) + t.prob_unchecked(c) == one
            }
            Err(_) => false,
        };
        if !ok {
            complement_failures.push(mask);
        }
        if n <= EXHAUSTIVE_BOUNDS_OMEGA {
            let p = t.prob_unchecked(e);
            bounds_ok &= zero <= p && p <= one;
            bounds_checked += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut union_failures = Vec::new();
    let mut additivity_failures = Vec::new();
    for _ in 0..union_samples {
        let a = Event(rng.gen::<u64>() & full);
        let b = Event(rng.gen::<u64>() & full);
        let u = a.union(b);
        let ok = in_field(u)
            && t.prob_unchecked(u) + t.prob_unchecked(a.intersection(b))
                == t.prob_unchecked(a) + t.prob_unchecked(b);
        if !ok {
            union_failures.push((a.0, b.0));
        }

        let d = Event(b.0 & !a.0);
        if t.prob_unchecked(a.union(d)) != t.prob_unchecked(a) + t.prob_unchecked(d) {
            additivity_failures.push((a.0, d.0));
        }

        if n > EXHAUSTIVE_BOUNDS_OMEGA {
            let p = t.prob_unchecked(a);
            bounds_ok &= zero <= p && p <= one;
            bounds_checked += 1;
        }
    }

    Ok(AxiomReport {
        omega_size: n,
        field_size_log2: t.field_size_log2(),
        omega_in_field,
        complement_closure: ExhaustiveCheck {
            checked_count: full + 1,
            failures: complement_failures,
        },
        union_closure: SampledCheck {
            checked_count: union_samples,
            seed,
            failures: union_failures,
        },
        additivity: SampledCheck {
            checked_count: union_samples,
            seed,
            failures: additivity_failures,
        },
        measure_bounds: bounds_ok,
        measure_bounds_checked: bounds_checked,
        total_mass_is_one: t.prob_unchecked(t.full_event()) == one,
    })
}
