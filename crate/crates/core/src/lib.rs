//! Hereditarily finite sets, numeral encodings and finite probability
//! triples, assembled into a set-theoretic model of Hardy's paradox with an
//! independent double Mach-Zehnder amplitude calculation to compare against.

pub mod hfset;
pub mod numerals;

pub use hfset::{parse_set, Atom, HfSet, ParseError, SetError};
pub use numerals::{von_neumann, zermelo, NumeralBase, NumeralSpec, NumeralSystem};
pub mod probability;

pub use probability::{
    verify_axioms, AxiomReport, Event, Probability, ProbabilityError, ProbabilityTriple,
};
pub mod hardy;

pub use hardy::{
    annihilate, distinctness_diagnostic, field_membership_report, hardy_probability,
    intersection_identity_check, AtomQuadruple, HardyError, HardyModel, HardyResult,
};
pub mod quantum;

pub use quantum::{run_double_mzi, BeamSplitterConvention, OutcomeDistribution, QuantumState};
pub mod checks;
pub mod eval;
pub mod report;
