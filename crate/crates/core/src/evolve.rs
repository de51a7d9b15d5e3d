//! Exact Schrödinger evolution under piecewise-constant schedules, the
//! progress measure `w^t` built from it, and the checks run against the
//! adversary bound.
//!
//! Within a segment the Hamiltonian `g·H_Q(x) + H_D` is constant, so states
//! are propagated with its exact spectral exponential. Time is raw time, in
//! which every oracle block has norm at most 1; see
//! [`QUERY_UNIT`](crate::oracle::QUERY_UNIT) for the conversion.

use alloc::vec;
use alloc::vec::Vec;

use crate::adversary::{AdversaryMatrix, SpectralReport};
use crate::boolfn::{bit, BooleanFunction};
use crate::linalg::HermitianSpectrum;
use crate::oracle::{DriverSchedule, HamiltonianOracle, QUERY_UNIT};
use crate::{Error, RealMatrix, Result, StateVector, C64};

/// Norm drift beyond which evolution is aborted.
pub const MAX_NORM_DRIFT: f64 = 1e-6;
/// Relative slack on the derivative cap.
pub const CAP_RELATIVE_TOL: f64 = 1e-6;
/// Absolute slack on the derivative cap.
pub const CAP_ABSOLUTE_TOL: f64 = 1e-8;
/// Slack added to `ε′` when checking final overlaps.
pub const OVERLAP_TOL: f64 = 1e-9;

/// How many samples to record inside each segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    PerSegment(usize),
    /// Samples per query unit, rounded up per segment (at least one).
    PerQueryUnit(usize),
}

impl Sampling {
    fn count(self, duration: f64) -> usize {
        match self {
            Sampling::PerSegment(n) => n,
            Sampling::PerQueryUnit(n) => {
                let exact = n as f64 * duration / QUERY_UNIT;
                // tolerate rounding noise in durations like π/50
                (libm::ceil(exact - 1e-9) as usize).max(1)
            }
        }
    }

    fn is_valid(self) -> bool {
        match self {
            Sampling::PerSegment(n) | Sampling::PerQueryUnit(n) => n >= 1,
        }
    }
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling::PerQueryUnit(200)
    }
}

/// The sampled path `ψ_x(t)` for one input.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub input: usize,
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    /// Largest `|‖ψ‖ - 1|` over the samples.
    pub max_norm_drift: f64,
}

impl Trajectory {
    pub fn final_state(&self) -> &StateVector {
        self.states.last().expect("trajectory has at least one sample")
    }
}

/// Uniform superposition over the index states `|j, k=0⟩` of a standard
/// oracle with `workspace` slots per index.
pub fn uniform_index_state(n_bits: usize, workspace: usize) -> StateVector {
    let dim = n_bits * workspace;
    let amp = C64::new(1.0 / libm::sqrt(n_bits as f64), 0.0);
    StateVector::from_fn(dim, |i, _| {
        if i % workspace == 0 {
            amp
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Evolves `initial` for input `x` through every segment of `schedule`.
pub fn evolve(
    oracle: &HamiltonianOracle,
    x: usize,
    schedule: &DriverSchedule,
    initial: &StateVector,
    sampling: Sampling,
) -> Result<Trajectory> {
    let dim = oracle.dim();
    if schedule.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: schedule.dim(),
        });
    }
    if initial.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: initial.len(),
        });
    }
    if (initial.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(alloc::format!(
            "initial state must have unit norm, got {}",
            initial.norm()
        )));
    }
    if !sampling.is_valid() {
        return Err(Error::InvalidArgument("sampling density must be >= 1".into()));
    }
    let h_query = oracle.assemble(x)?;

    let mut times = vec![0.0];
    let mut states = vec![initial.clone()];
    let mut max_drift = (initial.norm() - 1.0).abs();
    let mut start_time = 0.0;
    let mut start_state = initial.clone();
    for seg in schedule.segments() {
        let h = &h_query * C64::new(seg.g, 0.0) + &seg.h_driver;
        let spectrum = HermitianSpectrum::new(&h, 1e-10)?;
        let n = sampling.count(seg.duration);
        for k in 1..=n {
            let tau = seg.duration * k as f64 / n as f64;
            let psi = spectrum.propagate(&start_state, tau);
            let drift = (psi.norm() - 1.0).abs();
            if drift > MAX_NORM_DRIFT {
                return Err(Error::IntegrationFailure {
                    input: x,
                    time: start_time + tau,
                    drift,
                });
            }
            max_drift = max_drift.max(drift);
            times.push(start_time + tau);
            states.push(psi);
        }
        start_time += seg.duration;
        start_state = states.last().cloned().expect("segment produced samples");
    }
    Ok(Trajectory {
        input: x,
        times,
        states,
        max_norm_drift: max_drift,
    })
}

/// Evolves every input in `inputs`, returning trajectories in the same
/// order. With the `parallel` feature the inputs run on the current rayon
/// pool.
pub fn evolve_all(
    oracle: &HamiltonianOracle,
    inputs: &[usize],
    schedule: &DriverSchedule,
    initial: &StateVector,
    sampling: Sampling,
) -> Result<Vec<Trajectory>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        inputs
            .par_iter()
            .map(|&x| evolve(oracle, x, schedule, initial, sampling))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        inputs
            .iter()
            .map(|&x| evolve(oracle, x, schedule, initial, sampling))
            .collect()
    }
}

/// `⟨a|b⟩`, antilinear in `a`.
pub fn inner(a: &StateVector, b: &StateVector) -> C64 {
    a.dotc(b)
}

/// `d/dt ⟨ψ_x|ψ_y⟩ = i·g·⟨ψ_x|(H_Q(x) - H_Q(y))|ψ_y⟩` for two inputs under
/// the same schedule. The driver cancels.
pub fn inner_product_rate(
    oracle: &HamiltonianOracle,
    g: f64,
    x: usize,
    y: usize,
    psi_x: &StateVector,
    psi_y: &StateVector,
) -> Result<C64> {
    let diff = oracle.assemble(x)? - oracle.assemble(y)?;
    Ok(C64::new(0.0, g) * inner(psi_x, &(diff * psi_y)))
}

/// Sampled progress measure and the quantities it is built from.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgressTrace {
    pub times: Vec<f64>,
    /// `w^t = Σ_{x,y} Γ[x,y] δ[x] δ[y] ⟨ψ_x|ψ_y⟩`.
    pub w: Vec<C64>,
    pub w_abs: Vec<f64>,
    /// Γ-supported pairs `(x, y)`, `x < y`.
    pub pairs: Vec<(usize, usize)>,
    /// `⟨ψ_x|ψ_y⟩` indexed `[sample][pair]`.
    pub pair_inner: Vec<Vec<C64>>,
    /// Inputs with a trajectory, in the order of the rows of `beta`.
    pub inputs: Vec<usize>,
    /// `β_{x,j} = ‖P_j ψ_x‖`, one `inputs × N` matrix per sample.
    pub beta: Vec<RealMatrix>,
    /// Centered finite-difference slope of `|w^t|` (one-sided at the ends).
    pub dw_estimate: Vec<f64>,
    /// Largest norm drift over inputs at each sample.
    pub norm_drift_max: Vec<f64>,
}

/// Builds the progress trace of `gamma` over `trajectories`.
///
/// Every input touched by a nonzero weight needs a trajectory; all
/// trajectories must share the time grid and initial state.
pub fn progress_trace(
    gamma: &AdversaryMatrix,
    report: &SpectralReport,
    oracle: &HamiltonianOracle,
    trajectories: &[Trajectory],
) -> Result<ProgressTrace> {
    let first = trajectories
        .first()
        .ok_or_else(|| Error::InvalidArgument("no trajectories supplied".into()))?;
    let n_inputs = gamma.function().num_inputs();
    let mut row_of = vec![None; n_inputs];
    for (row, traj) in trajectories.iter().enumerate() {
        if traj.input >= n_inputs {
            return Err(Error::IndexOutOfRange {
                index: traj.input,
                bound: n_inputs,
            });
        }
        if traj.times != first.times || traj.states.len() != first.states.len() {
            return Err(Error::GridMismatch { input: traj.input });
        }
        if (&traj.states[0] - &first.states[0]).norm() > 1e-12 {
            return Err(Error::InvalidArgument(alloc::format!(
                "trajectory for input {} starts from a different initial state",
                traj.input
            )));
        }
        row_of[traj.input] = Some(row);
    }

    let weighted: Vec<(usize, usize, f64)> = gamma
        .entries()
        .into_iter()
        .map(|(x, y, w)| (x, y, w * report.delta[x] * report.delta[y]))
        .collect();
    let mut pair_rows = Vec::with_capacity(weighted.len());
    for &(x, y, _) in &weighted {
        let rx = row_of[x].ok_or(Error::MissingTrajectory { input: x })?;
        let ry = row_of[y].ok_or(Error::MissingTrajectory { input: y })?;
        pair_rows.push((rx, ry));
    }

    let samples = first.times.len();
    let n_bits = oracle.n_bits();
    let mut w = Vec::with_capacity(samples);
    let mut pair_inner = Vec::with_capacity(samples);
    let mut beta = Vec::with_capacity(samples);
    let mut norm_drift_max = Vec::with_capacity(samples);
    for s in 0..samples {
        let mut total = C64::new(0.0, 0.0);
        let mut inners = Vec::with_capacity(weighted.len());
        for (&(_, _, coeff), &(rx, ry)) in weighted.iter().zip(&pair_rows) {
            let ip = inner(&trajectories[rx].states[s], &trajectories[ry].states[s]);
            // both orderings: ⟨x|y⟩ + ⟨y|x⟩
            total += (ip + ip.conj()) * coeff;
            inners.push(ip);
        }
        w.push(total);
        pair_inner.push(inners);

        let mut b = RealMatrix::zeros(trajectories.len(), n_bits);
        let mut drift = 0.0_f64;
        for (row, traj) in trajectories.iter().enumerate() {
            let psi = &traj.states[s];
            for (j, amp) in oracle.query_amplitudes(psi).into_iter().enumerate() {
                b[(row, j)] = amp;
            }
            drift = drift.max((psi.norm() - 1.0).abs());
        }
        beta.push(b);
        norm_drift_max.push(drift);
    }

    let w_abs: Vec<f64> = w.iter().map(|v| v.norm()).collect();
    let dw_estimate = slope_estimate(&first.times, &w_abs);
    Ok(ProgressTrace {
        times: first.times.clone(),
        w,
        w_abs,
        pairs: weighted.iter().map(|&(x, y, _)| (x, y)).collect(),
        pair_inner,
        inputs: trajectories.iter().map(|t| t.input).collect(),
        beta,
        dw_estimate,
        norm_drift_max,
    })
}

fn slope_estimate(times: &[f64], values: &[f64]) -> Vec<f64> {
    let n = times.len();
    if n < 2 {
        return vec![0.0; n];
    }
    (0..n)
        .map(|i| {
            let (a, b) = match i {
                0 => (0, 1),
                i if i == n - 1 => (n - 2, n - 1),
                i => (i - 1, i + 1),
            };
            (values[b] - values[a]) / (times[b] - times[a])
        })
        .collect()
}

/// Outcome of [`check_derivative_bound`].
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeVerdict {
    /// Largest `|dw_estimate|` over the samples.
    pub max_slope: f64,
    pub max_slope_time: f64,
    /// `2 · max_j λ(Γ_j)`.
    pub cap: f64,
    /// `cap · 1e-6 + 1e-8`.
    pub tolerance: f64,
    pub pass: bool,
    /// Largest amount by which a slope exceeded the per-sample analytic
    /// bound (negative when every sample is under it).
    pub analytic_margin: f64,
    pub analytic_pass: bool,
    pub samples: usize,
}

/// Compares the measured slope of `|w^t|` against `2 max_j λ(Γ_j)`, and
/// against the per-sample bound `2 Σ_j a_jᵀ |Γ_j| a_j` with
/// `a_j[x] = |δ[x]| β_{x,j}`.
///
/// The per-sample bound is compared over each slope's stencil: the slope at
/// sample `i` may not exceed the largest bound on samples `i-1..=i+1` plus
/// the spread of the bound across that stencil.
pub fn check_derivative_bound(
    trace: &ProgressTrace,
    gamma: &AdversaryMatrix,
    report: &SpectralReport,
) -> Result<DerivativeVerdict> {
    let samples = trace.times.len();
    if samples < 2 {
        return Err(Error::TooFewSamples { found: samples });
    }
    let cap = report.derivative_cap();
    let tolerance = cap * CAP_RELATIVE_TOL + CAP_ABSOLUTE_TOL;
    let (idx, max_slope) = trace
        .dw_estimate
        .iter()
        .map(|v| v.abs())
        .enumerate()
        .fold((0, 0.0_f64), |best, (i, v)| if v > best.1 { (i, v) } else { best });

    let analytic = analytic_bound(trace, gamma, report)?;
    let mut margin = f64::NEG_INFINITY;
    for i in 0..samples {
        let lo = i.saturating_sub(1);
        let hi = (i + 1).min(samples - 1);
        let window = &analytic[lo..=hi];
        let top = window.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let bottom = window.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let allowance = (top + (top - bottom)) * (1.0 + CAP_RELATIVE_TOL) + CAP_ABSOLUTE_TOL;
        margin = margin.max(trace.dw_estimate[i].abs() - allowance);
    }

    Ok(DerivativeVerdict {
        max_slope,
        max_slope_time: trace.times[idx],
        cap,
        tolerance,
        pass: max_slope <= cap + tolerance,
        analytic_margin: margin,
        analytic_pass: margin <= 0.0,
        samples,
    })
}

/// `2 Σ_j Σ_{x,y} |Γ_j[x,y]| |δ[x]| |δ[y]| β_{x,j} β_{y,j}` at each sample.
pub fn analytic_bound(
    trace: &ProgressTrace,
    gamma: &AdversaryMatrix,
    report: &SpectralReport,
) -> Result<Vec<f64>> {
    let n_bits = gamma.n_bits();
    let n_inputs = gamma.function().num_inputs();
    let mut row_of = vec![None; n_inputs];
    for (row, &x) in trace.inputs.iter().enumerate() {
        row_of[x] = Some(row);
    }
    let mut terms = Vec::new();
    for (x, y, w) in gamma.entries() {
        let rx = row_of[x].ok_or(Error::MissingTrajectory { input: x })?;
        let ry = row_of[y].ok_or(Error::MissingTrajectory { input: y })?;
        let coeff = 2.0 * (w * report.delta[x] * report.delta[y]).abs();
        for j in 1..=n_bits {
            if bit(x, j, n_bits) != bit(y, j, n_bits) {
                terms.push((rx, ry, j - 1, coeff));
            }
        }
    }
    Ok(trace
        .beta
        .iter()
        .map(|b| {
            2.0 * terms
                .iter()
                .map(|&(rx, ry, j, c)| c * b[(rx, j)] * b[(ry, j)])
                .sum::<f64>()
        })
        .collect())
}

/// `ε′ = 2√(ε(1-ε))` for `ε` in `[0, 1/2]`.
pub fn output_condition(epsilon: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&epsilon) {
        return Err(Error::InvalidArgument(alloc::format!(
            "epsilon must lie in [0, 1/2], got {epsilon}"
        )));
    }
    Ok(2.0 * libm::sqrt(epsilon * (1.0 - epsilon)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairOverlap {
    pub x: usize,
    pub y: usize,
    /// `|⟨ψ_x^T|ψ_y^T⟩|`.
    pub overlap: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistinguishabilityVerdict {
    pub epsilon: f64,
    /// `ε′`.
    pub threshold: f64,
    pub pairs: Vec<PairOverlap>,
    pub max_overlap: f64,
    pub pass: bool,
}

/// Checks `|⟨ψ_x^T|ψ_y^T⟩| ≤ ε′` for every pair of supplied trajectories
/// with `f(x) != f(y)`.
pub fn check_final_distinguishability(
    trajectories: &[Trajectory],
    f: &BooleanFunction,
    epsilon: f64,
) -> Result<DistinguishabilityVerdict> {
    let threshold = output_condition(epsilon)?;
    let mut pairs = Vec::new();
    for (i, tx) in trajectories.iter().enumerate() {
        for ty in &trajectories[i + 1..] {
            if f.eval(tx.input)? == f.eval(ty.input)? {
                continue;
            }
            let overlap = inner(tx.final_state(), ty.final_state()).norm();
            pairs.push(PairOverlap {
                x: tx.input.min(ty.input),
                y: tx.input.max(ty.input),
                overlap,
                pass: overlap <= threshold + OVERLAP_TOL,
            });
        }
    }
    let max_overlap = pairs.iter().fold(0.0_f64, |a, p| a.max(p.overlap));
    Ok(DistinguishabilityVerdict {
        epsilon,
        threshold,
        pass: pairs.iter().all(|p| p.pass),
        max_overlap,
        pairs,
    })
}

/// `‖ψ_x - ψ_y‖²` computed directly and as `2 - 2 Re⟨ψ_x|ψ_y⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FggSample {
    pub time: f64,
    pub direct: f64,
    pub via_inner: f64,
}

pub fn fgg_measure(tx: &Trajectory, ty: &Trajectory) -> Result<Vec<FggSample>> {
    if tx.times != ty.times {
        return Err(Error::GridMismatch { input: ty.input });
    }
    Ok(tx
        .times
        .iter()
        .zip(tx.states.iter().zip(&ty.states))
        .map(|(&time, (a, b))| FggSample {
            time,
            direct: (a - b).norm_squared(),
            via_inner: 2.0 - 2.0 * inner(a, b).re,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{build_gamma, Rule};
    use crate::boolfn::Family;
    use crate::oracle::{compile_discrete, Instruction, Segment};
    use crate::ComplexMatrix;

    fn basis(dim: usize, i: usize) -> StateVector {
        StateVector::from_fn(dim, |r, _| C64::new((r == i) as u8 as f64, 0.0))
    }

    #[test]
    fn output_condition_values() {
        assert!((output_condition(1.0 / 3.0).unwrap() - 0.942_809_041_582_063_4).abs() < 1e-15);
        assert_eq!(output_condition(0.0).unwrap(), 0.0);
        assert!((output_condition(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!(output_condition(0.6).is_err());
        assert!(output_condition(-1e-3).is_err());
    }

    #[test]
    fn zero_hamiltonian_keeps_state() {
        let o = HamiltonianOracle::standard_query(2, 1).unwrap();
        let s = DriverSchedule::new(
            2,
            vec![Segment {
                duration: 2.5,
                g: 1.0,
                h_driver: ComplexMatrix::zeros(2, 2),
            }],
        )
        .unwrap();
        let psi0 = uniform_index_state(2, 1);
        let t = evolve(&o, 0, &s, &psi0, Sampling::PerSegment(7)).unwrap();
        assert_eq!(t.times.len(), 8);
        for psi in &t.states {
            assert!((psi - &psi0).norm() < 1e-15);
        }
    }

    #[test]
    fn query_unit_negates_marked_index() {
        let o = HamiltonianOracle::standard_query(2, 1).unwrap();
        let s = compile_discrete(&[Instruction::Query], &o).unwrap();
        let t = evolve(&o, 0b10, &s, &basis(2, 0), Sampling::PerQueryUnit(10)).unwrap();
        assert!((t.final_state() + basis(2, 0)).norm() < 1e-14);
        let t = evolve(&o, 0b01, &s, &basis(2, 0), Sampling::PerQueryUnit(10)).unwrap();
        assert!((t.final_state() - basis(2, 0)).norm() < 1e-14);
    }

    #[test]
    fn sampling_rounds_fractional_segments() {
        assert_eq!(Sampling::PerQueryUnit(200).count(QUERY_UNIT / 50.0), 4);
        assert_eq!(Sampling::PerQueryUnit(200).count(QUERY_UNIT), 200);
        assert_eq!(Sampling::PerQueryUnit(1).count(QUERY_UNIT / 50.0), 1);
        assert_eq!(Sampling::PerSegment(3).count(17.0), 3);
    }

    #[test]
    fn evolve_rejects_bad_inputs() {
        let o = HamiltonianOracle::standard_query(2, 1).unwrap();
        let s = compile_discrete(&[Instruction::Query], &o).unwrap();
        let unnormalized = basis(2, 0) * C64::new(2.0, 0.0);
        assert!(evolve(&o, 0, &s, &unnormalized, Sampling::default()).is_err());
        assert!(evolve(&o, 0, &s, &basis(3, 0), Sampling::default()).is_err());
        assert!(evolve(&o, 0, &s, &basis(2, 0), Sampling::PerSegment(0)).is_err());
        assert!(evolve(&o, 4, &s, &basis(2, 0), Sampling::default()).is_err());
    }

    #[test]
    fn trace_rejects_missing_and_mismatched() {
        let f = BooleanFunction::named(Family::Parity, 2).unwrap();
        let g = build_gamma(&f, &Rule::MinHammingPairs).unwrap();
        let r = g.spectral_report().unwrap();
        let o = HamiltonianOracle::standard_query(2, 1).unwrap();
        let s = compile_discrete(&[Instruction::Query], &o).unwrap();
        let psi0 = uniform_index_state(2, 1);
        let trajs: Vec<_> = (0..3)
            .map(|x| evolve(&o, x, &s, &psi0, Sampling::PerSegment(4)).unwrap())
            .collect();
        assert_eq!(
            progress_trace(&g, &r, &o, &trajs),
            Err(Error::MissingTrajectory { input: 3 })
        );
        let mut all = trajs.clone();
        all.push(evolve(&o, 3, &s, &psi0, Sampling::PerSegment(5)).unwrap());
        assert_eq!(
            progress_trace(&g, &r, &o, &all),
            Err(Error::GridMismatch { input: 3 })
        );
    }

    #[test]
    fn derivative_check_needs_two_samples() {
        let trace = ProgressTrace {
            times: vec![0.0],
            w: vec![C64::new(1.0, 0.0)],
            w_abs: vec![1.0],
            pairs: vec![],
            pair_inner: vec![vec![]],
            inputs: vec![],
            beta: vec![RealMatrix::zeros(0, 1)],
            dw_estimate: vec![0.0],
            norm_drift_max: vec![0.0],
        };
        let f = BooleanFunction::named(Family::Parity, 1).unwrap();
        let g = build_gamma(&f, &Rule::MinHammingPairs).unwrap();
        let r = g.spectral_report().unwrap();
        assert_eq!(
            check_derivative_bound(&trace, &g, &r),
            Err(Error::TooFewSamples { found: 1 })
        );
    }

    #[test]
    fn slope_estimate_is_centered() {
        let t = [0.0, 1.0, 2.0, 4.0];
        let v = [0.0, 1.0, 4.0, 16.0];
        let s = slope_estimate(&t, &v);
        assert_eq!(s, vec![1.0, 2.0, 5.0, 6.0]);
    }

    #[test]
    fn fgg_orthogonal_and_identical() {
        let o = HamiltonianOracle::standard_query(2, 1).unwrap();
        let s = DriverSchedule::new(
            2,
            vec![Segment {
                duration: 1.0,
                g: 0.0,
                h_driver: ComplexMatrix::zeros(2, 2),
            }],
        )
        .unwrap();
        let a = evolve(&o, 0, &s, &basis(2, 0), Sampling::PerSegment(3)).unwrap();
        let b = evolve(&o, 0, &s, &basis(2, 1), Sampling::PerSegment(3)).unwrap();
        for p in fgg_measure(&a, &a).unwrap() {
            assert_eq!(p.direct, 0.0);
            assert!(p.via_inner.abs() < 1e-15);
        }
        for p in fgg_measure(&a, &b).unwrap() {
            assert!((p.direct - 2.0).abs() < 1e-15);
            assert!((p.via_inner - 2.0).abs() < 1e-15);
        }
    }
}
