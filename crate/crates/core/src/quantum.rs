//! Amplitude calculation for the overlapping double Mach-Zehnder setup.
//!
//! Each particle (electron, positron) lives in one of four arms: `u`, `v`
//! between its two beam splitters and `c`, `d` after the second. The joint
//! state is a 4×4 amplitude table plus one extra amplitude for the
//! annihilation record `γ`. Both particles enter through the port feeding
//! arm `u`. The first splitter mixes `u`/`v`. The `u` arms overlap, so the
//! `(u_e, u_p)` amplitude is transferred to `γ`. The second splitter then
//! sends `u`/`v` to the detectors `c`/`d`.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

/// Unitarity and normalization tolerance.
pub const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arm {
    U,
    V,
    C,
    D,
}

impl Arm {
    pub const ALL: [Arm; 4] = [Arm::U, Arm::V, Arm::C, Arm::D];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Particle {
    Electron,
    Positron,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("beam splitter matrix is not unitary (max deviation {deviation:e})")]
pub struct NonUnitaryConvention {
    pub deviation: f64,
}

/// A 2×2 splitter matrix `m`, with `m[row][col]`: input mode `col` goes to
/// output mode `row` with amplitude `m[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterConvention {
    pub matrix: [[Complex64; 2]; 2],
}

impl Default for BeamSplitterConvention {
    fn default() -> Self {
        Self::balanced()
    }
}

impl BeamSplitterConvention {
    /// `u → (c+d)/√2`, `v → (c−d)/√2`.
    pub fn balanced() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        BeamSplitterConvention {
            matrix: [[h, h], [h, -h]],
        }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        BeamSplitterConvention {
            matrix: [[one, zero], [zero, one]],
        }
    }

    /// General SU(2)-style splitter with mixing angle `theta` and phase `phi`.
    pub fn rotation(theta: f64, phi: f64) -> Self {
        let p = Complex64::from_polar(1.0, phi);
        let (s, c) = theta.sin_cos();
        BeamSplitterConvention {
            matrix: [
                [p * c, Complex64::new(-s, 0.0)],
                [p * s, Complex64::new(c, 0.0)],
            ],
        }
    }

    /// Largest entry of `|M†M − I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let m = &self.matrix;
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let dot: Complex64 = (0..2).map(|k| m[k][i].conj() * m[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    pub fn check(&self) -> Result<(), NonUnitaryConvention> {
        let finite = self.matrix.iter().flatten().all(|z| z.is_finite());
        let deviation = if finite {
            self.unitarity_deviation()
        } else {
            f64::INFINITY
        };
        if deviation <= TOLERANCE {
            Ok(())
        } else {
            Err(NonUnitaryConvention { deviation })
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let (a, b) = (&self.matrix, &other.matrix);
        let mut matrix = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        BeamSplitterConvention { matrix }
    }

    /// The 4×4 single-particle map over `(u, v, c, d)` for one stage.
    ///
    /// Stage one acts as the matrix on `(u, v)` and leaves `(c, d)` alone.
    /// Stage two sends `(u, v)` to `(c, d)` through the matrix and `(c, d)`
    /// back to `(u, v)` through its adjoint, which keeps the map unitary.
    fn arm_operator(&self, stage: Stage) -> [[Complex64; 4]; 4] {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let m = &self.matrix;
        let mut op = [[zero; 4]; 4];
        match stage {
            Stage::First => {
                for r in 0..2 {
                    for c in 0..2 {
                        op[r][c] = m[r][c];
                    }
                }
                op[2][2] = one;
                op[3][3] = one;
            }
            Stage::Second => {
                for r in 0..2 {
                    for c in 0..2 {
                        op[2 + r][c] = m[r][c];
                        op[r][2 + c] = m[c][r].conj();
                    }
                }
            }
        }
        op
    }
}

/// Joint amplitudes over `(arm_e, arm_p)` plus the annihilation record `γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumState {
    arms: [[Complex64; 4]; 4],
    gamma: Complex64,
}

impl QuantumState {
    pub fn zero() -> Self {
        QuantumState {
            arms: [[Complex64::new(0.0, 0.0); 4]; 4],
            gamma: Complex64::new(0.0, 0.0),
        }
    }

    pub fn basis(electron: Arm, positron: Arm) -> Self {
        let mut s = Self::zero();
        s.arms[electron.index()][positron.index()] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn gamma_state() -> Self {
        QuantumState {
            gamma: Complex64::new(1.0, 0.0),
            ..Self::zero()
        }
    }

    /// Builds a state from 17 amplitudes: the 16 arm pairs in row-major
    /// `(electron, positron)` order over `u, v, c, d`, then `γ`.
    pub fn from_amplitudes(amps: [Complex64; 17]) -> Self {
        let mut s = Self::zero();
        for (i, a) in amps[..16].iter().enumerate() {
            s.arms[i / 4][i % 4] = *a;
        }
        s.gamma = amps[16];
        s
    }

    pub fn amplitudes(&self) -> [Complex64; 17] {
        let mut out = [Complex64::new(0.0, 0.0); 17];
        for (i, a) in out[..16].iter_mut().enumerate() {
            *a = self.arms[i / 4][i % 4];
        }
        out[16] = self.gamma;
        out
    }

    pub fn amplitude(&self, electron: Arm, positron: Arm) -> Complex64 {
        self.arms[electron.index()][positron.index()]
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn norm_sqr(&self) -> f64 {
        self.arms
            .iter()
            .flatten()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            + self.gamma.norm_sqr()
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            self.arms.iter_mut().flatten().for_each(|a| *a /= n);
            self.gamma /= n;
        }
        self
    }
}

/// A random normalized state, amplitudes drawn uniformly from the unit square
/// before normalization.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> QuantumState {
    let mut amps = [Complex64::new(0.0, 0.0); 17];
    for a in &mut amps {
        *a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    QuantumState::from_amplitudes(amps).normalized()
}

/// Applies one particle's beam splitter at `stage`; `γ` is untouched.
pub fn apply_beam_splitter(
    state: &QuantumState,
    particle: Particle,
    stage: Stage,
    convention: &BeamSplitterConvention,
) -> Result<QuantumState, NonUnitaryConvention> {
    convention.check()?;
    let op = convention.arm_operator(stage);
    let mut out = QuantumState {
        gamma: state.gamma,
        ..QuantumState::zero()
    };
    for e in 0..4 {
        for p in 0..4 {
            let amp = state.arms[e][p];
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (target, row) in op.iter().enumerate() {
                match particle {
                    Particle::Electron => out.arms[target][p] += row[e] * amp,
                    Particle::Positron => out.arms[e][target] += row[p] * amp,
                }
            }
        }
    }
    Ok(out)
}

/// Moves the `(u_e, u_p)` amplitude onto `γ`.
///
/// Implemented as the exchange of the two amplitudes, which is unitary. In
/// the experiment `γ` is empty before annihilation, so `(u_e, u_p)` ends at
/// zero.
pub fn apply_annihilation(state: &QuantumState) -> QuantumState {
    let mut out = *state;
    std::mem::swap(
        &mut out.arms[Arm::U.index()][Arm::U.index()],
        &mut out.gamma,
    );
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    pub p_gamma: f64,
    pub p_cc: f64,
    pub p_cd: f64,
    pub p_dc: f64,
    pub p_dd: f64,
}

impl OutcomeDistribution {
    pub fn total(&self) -> f64 {
        self.p_gamma + self.p_cc + self.p_cd + self.p_dc + self.p_dd
    }
}

/// The state after each stage of [`run_double_mzi`].
#[derive(Debug, Clone)]
pub struct MziTrace {
    pub stages: Vec<(&'static str, QuantumState)>,
}

pub fn trace_double_mzi(
    convention: &BeamSplitterConvention,
) -> Result<MziTrace, NonUnitaryConvention> {
    convention.check()?;
    let mut stages = Vec::with_capacity(6);
    let mut s = QuantumState::basis(Arm::U, Arm::U);
    stages.push(("source", s));
    s = apply_beam_splitter(&s, Particle::Electron, Stage::First, convention)?;
    s = apply_beam_splitter(&s, Particle::Positron, Stage::First, convention)?;
    stages.push(("first splitters", s));
    s = apply_annihilation(&s);
    stages.push(("annihilation", s));
    s = apply_beam_splitter(&s, Particle::Electron, Stage::Second, convention)?;
    stages.push(("electron second splitter", s));
    s = apply_beam_splitter(&s, Particle::Positron, Stage::Second, convention)?;
    stages.push(("positron second splitter", s));
    Ok(MziTrace { stages })
}

pub fn run_double_mzi(
    convention: &BeamSplitterConvention,
) -> Result<OutcomeDistribution, NonUnitaryConvention> {
    let trace = trace_double_mzi(convention)?;
    let (_, s) = trace.stages.last().expect("trace is non-empty");
    let p = |e: Arm, q: Arm| s.amplitude(e, q).norm_sqr();
    Ok(OutcomeDistribution {
        p_gamma: s.gamma().norm_sqr(),
        p_cc: p(Arm::C, Arm::C),
        p_cd: p(Arm::C, Arm::D),
        p_dc: p(Arm::D, Arm::C),
        p_dd: p(Arm::D, Arm::D),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= TOLERANCE
    }

    #[test]
    fn default_distribution() {
        let d = run_double_mzi(&BeamSplitterConvention::balanced()).unwrap();
        assert!(close(d.p_dd, 1.0 / 16.0), "{d:?}");
        assert!(close(d.p_gamma, 0.25), "{d:?}");
        assert!(close(d.total(), 1.0), "{d:?}");
        // c_e c_p: (1/2)(1/2 + 1/2 + 1/2) = 3/4 amplitude.
        assert!(close(d.p_cc, 9.0 / 16.0));
        assert!(close(d.p_cd, 1.0 / 16.0));
        assert!(close(d.p_dc, 1.0 / 16.0));
    }

    #[test]
    fn dd_amplitude_is_minus_a_quarter() {
        let trace = trace_double_mzi(&BeamSplitterConvention::balanced()).unwrap();
        let (_, s) = trace.stages.last().unwrap();
        let a = s.amplitude(Arm::D, Arm::D);
        assert!(close(a.re, -0.25) && close(a.im, 0.0), "{a}");
    }

    #[test]
    fn identity_first_stage_is_a_no_op() {
        let s = QuantumState::basis(Arm::V, Arm::C);
        let id = BeamSplitterConvention::identity();
        for particle in [Particle::Electron, Particle::Positron] {
            assert_eq!(
                apply_beam_splitter(&s, particle, Stage::First, &id).unwrap(),
                s
            );
        }
    }

    #[test]
    fn balanced_splitter_is_an_involution() {
        let b = BeamSplitterConvention::balanced();
        let sq = b.compose(&b);
        let id = BeamSplitterConvention::identity();
        for i in 0..2 {
            for j in 0..2 {
                assert!((sq.matrix[i][j] - id.matrix[i][j]).norm() <= TOLERANCE);
            }
        }
    }

    #[test]
    fn non_unitary_conventions_are_rejected() {
        let mut bad = BeamSplitterConvention::balanced();
        bad.matrix[0][0] *= 2.0;
        assert!(run_double_mzi(&bad).is_err());
        let s = QuantumState::basis(Arm::U, Arm::U);
        assert!(apply_beam_splitter(&s, Particle::Electron, Stage::First, &bad).is_err());
        let mut nan = BeamSplitterConvention::identity();
        nan.matrix[1][1] = Complex64::new(f64::NAN, 0.0);
        assert!(nan.check().is_err());
    }

    #[test]
    fn annihilation_channel() {
        let s = QuantumState::basis(Arm::V, Arm::U);
        assert_eq!(apply_annihilation(&s), s);
        let g = apply_annihilation(&QuantumState::basis(Arm::U, Arm::U));
        assert_eq!(g, QuantumState::gamma_state());

        let b = BeamSplitterConvention::balanced();
        let s = apply_beam_splitter(
            &QuantumState::basis(Arm::U, Arm::U),
            Particle::Electron,
            Stage::First,
            &b,
        )
        .unwrap();
        let s = apply_beam_splitter(&s, Particle::Positron, Stage::First, &b).unwrap();
        let s = apply_annihilation(&s);
        assert!(close(s.gamma().re, 0.5));
    }

    #[test]
    fn annihilation_keeps_norm_with_existing_gamma() {
        let mut amps = [Complex64::new(0.0, 0.0); 17];
        amps[0] = Complex64::new(0.6, 0.0);
        amps[16] = Complex64::new(0.0, 0.8);
        let s = apply_annihilation(&QuantumState::from_amplitudes(amps));
        assert!(close(s.norm_sqr(), 1.0));
        assert_eq!(s.gamma(), Complex64::new(0.6, 0.0));
    }

    #[test]
    fn rotated_conventions_stay_normalized() {
        for k in 0..20 {
            let c = BeamSplitterConvention::rotation(0.3 * k as f64, 0.7 * k as f64);
            let d = run_double_mzi(&c).unwrap();
            assert!(close(d.total(), 1.0), "{k}: {d:?}");
        }
    }
}
