//! End-to-end reproduction of the classical Hardy probability, with the
//! amplitude calculation alongside for comparison.

use std::fmt::Write as _;

use serde::Serialize;

use crate::hardy::{
    field_membership_report, hardy_probability, intersection_identity_check, AtomQuadruple,
    HardyError, HardyModel, HARDY_DEPTH,
};
use crate::probability::{verify_axioms, AxiomReport, Probability, MAX_VERIFIED_OMEGA};
use crate::quantum::{run_double_mzi, BeamSplitterConvention, OutcomeDistribution, TOLERANCE};

/// Sampled pairs for the union-closure and additivity checks.
pub const AXIOM_SAMPLES: u64 = 10_000;
pub const AXIOM_SEED: u64 = 42;

/// The quantum prediction for the double click.
pub const QUANTUM_DOUBLE_CLICK: f64 = 0.0625;

pub fn format_ratio(p: &Probability) -> String {
    format!("{}/{}", p.numer(), p.denom())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantumSummary {
    pub p_gamma: f64,
    pub p_dd: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproductionReport {
    pub atoms: [String; 4],
    pub depth: usize,
    pub omega_size: usize,
    pub field_size_log2: u32,
    pub c_d_disjoint: bool,
    /// `None` when Ω is too large for the exhaustive sweep.
    pub axiom_report: Option<AxiomReport>,
    pub annihilated_a: String,
    pub annihilated_b: String,
    pub joint_set: String,
    pub probability: String,
    pub quantum: QuantumSummary,
    pub agreement: bool,
    pub checks: Vec<CheckResult>,
}

impl ReproductionReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "atoms           {}", self.atoms.join(","));
        let _ = writeln!(w, "depth           {}", self.depth);
        let _ = writeln!(w, "|Ω|             {}", self.omega_size);
        let _ = writeln!(w, "|F|             2^{}", self.field_size_log2);
        let _ = writeln!(w, "C ∩ D = ∅       {}", self.c_d_disjoint);
        match &self.axiom_report {
            Some(r) => {
                let _ = writeln!(
                    w,
                    "σ-field axioms  {} ({} complement checks, {} sampled unions, seed {})",
                    if r.all_pass() { "pass" } else { "FAIL" },
                    r.complement_closure.checked_count,
                    r.union_closure.checked_count,
                    r.union_closure.seed
                );
            }
            None => {
                let _ = writeln!(w, "σ-field axioms  skipped (|Ω| > {MAX_VERIFIED_OMEGA})");
            }
        }
        let _ = writeln!(w, "∪[A]            {}", self.annihilated_a);
        let _ = writeln!(w, "∪[B]            {}", self.annihilated_b);
        let _ = writeln!(w, "∪[A] ∩ ∪[B]     {}", self.joint_set);
        let _ = writeln!(w, "P               {}", self.probability);
        let _ = writeln!(w, "quantum p_dd    {}", self.quantum.p_dd);
        let _ = writeln!(w, "quantum p_γ     {}", self.quantum.p_gamma);
        let _ = writeln!(w, "agreement       {}", self.agreement);
        for c in &self.checks {
            let _ = writeln!(w, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
        }
        out
    }
}

pub fn quantum_summary(d: &OutcomeDistribution) -> QuantumSummary {
    QuantumSummary {
        p_gamma: d.p_gamma,
        p_dd: d.p_dd,
    }
}

/// Builds the model for `quad` at `depth` and runs every check on it.
pub fn reproduce(quad: AtomQuadruple, depth: usize) -> Result<ReproductionReport, HardyError> {
    let model = HardyModel::build(quad, depth)?;
    let result = hardy_probability(&model)?;
    let axiom_report = if model.omega_size() <= MAX_VERIFIED_OMEGA {
        Some(verify_axioms(model.triple(), AXIOM_SAMPLES, AXIOM_SEED)?)
    } else {
        None
    };
    let outcome =
        run_double_mzi(&BeamSplitterConvention::balanced()).expect("balanced splitter is unitary");

    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool| {
        checks.push(CheckResult {
            name: name.to_owned(),
            passed,
        });
    };
    check("wings C(x̂) and D(x̂) are disjoint", model.wings_disjoint());
    check("A ⊆ C(x̂) and B ⊆ D(x̂)", model.hidden_within_wings());
    check("A ∩ B = ∅", model.hidden_disjoint());
    if let Some(r) = &axiom_report {
        check("σ-field axioms hold", r.all_pass());
    }
    check(
        "P equals |joint event| / |Ω|",
        result.probability
            == Probability::new(result.joint_event.len() as u64, result.omega_size as u64),
    );
    check(
        "quantum outcome distribution totals 1",
        (outcome.total() - 1.0).abs() <= TOLERANCE,
    );
    if depth == HARDY_DEPTH {
        check("|Ω| = 16", result.omega_size == 16);
        check("∪[A] ∩ ∪[B] = D₂(x₁)", intersection_identity_check(&model));
        check(
            "C₂, D₂, ∪[A], ∪[B] and their intersection lie in F",
            field_membership_report(&model).iter().all(|m| m.in_field),
        );
    }

    let agreement = result.probability == Probability::new(1, 16)
        && (outcome.p_dd - QUANTUM_DOUBLE_CLICK).abs() <= TOLERANCE;

    Ok(ReproductionReport {
        atoms: model.quad().labels(),
        depth,
        omega_size: result.omega_size,
        field_size_log2: result.field_size_log2,
        c_d_disjoint: model.wings_disjoint(),
        axiom_report,
        annihilated_a: result.annihilated_a.to_string(),
        annihilated_b: result.annihilated_b.to_string(),
        joint_set: result.joint_set.to_string(),
        probability: format_ratio(&result.probability),
        quantum: quantum_summary(&outcome),
        agreement,
        checks,
    })
}
