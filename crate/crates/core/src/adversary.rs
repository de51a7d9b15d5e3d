//! Spectral adversary matrices and the bound they certify.
//!
//! An adversary matrix `Γ` for `f` is a symmetric `2^N × 2^N` weight matrix
//! that is zero on every pair with `f(x) = f(y)`. Its spectral norm `λ(Γ)`
//! divided by the largest `λ(Γ_j)` (the restriction of `Γ` to pairs whose
//! `j`-th bits differ) lower-bounds the continuous query time.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolfn::{bit, hamming, BooleanFunction};
use crate::evolve::output_condition;
use crate::linalg::{principal_eigenpair, spectral_norm_symmetric};
use crate::{Error, RealMatrix, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// All weights must be `>= 0`.
    NonNegative,
    /// Weights of either sign (the general adversary).
    General,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::NonNegative => "nonnegative",
            Mode::General => "general",
        }
    }
}

/// A validated adversary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryMatrix {
    function: BooleanFunction,
    mode: Mode,
    gamma: RealMatrix,
}

impl AdversaryMatrix {
    /// Checks `gamma` against `f` and `mode`.
    ///
    /// Symmetry is checked exactly; an asymmetric matrix is rejected rather
    /// than symmetrized.
    pub fn validate(gamma: RealMatrix, f: &BooleanFunction, mode: Mode) -> Result<Self> {
        let n = f.num_inputs();
        if gamma.nrows() != n || gamma.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if gamma.nrows() != n {
                    gamma.nrows()
                } else {
                    gamma.ncols()
                },
            });
        }
        for x in 0..n {
            for y in x..n {
                let w = gamma[(x, y)];
                if !w.is_finite() {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "non-finite weight at ({x}, {y})"
                    )));
                }
                if w != gamma[(y, x)] {
                    return Err(Error::Asymmetric { row: x, col: y });
                }
                if w != 0.0 && f.output(x) == f.output(y) {
                    return Err(Error::EqualOutputPair { x, y });
                }
                if mode == Mode::NonNegative && w < 0.0 {
                    return Err(Error::NegativeWeight { x, y, weight: w });
                }
            }
        }
        Ok(Self {
            function: f.clone(),
            mode,
            gamma,
        })
    }

    /// Builds and validates a matrix from upper-triangle `(x, y, weight)`
    /// entries, mirroring each one.
    pub fn from_entries(
        f: &BooleanFunction,
        mode: Mode,
        entries: &[(usize, usize, f64)],
    ) -> Result<Self> {
        let n = f.num_inputs();
        let mut gamma = RealMatrix::zeros(n, n);
        for &(x, y, w) in entries {
            for v in [x, y] {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, bound: n });
                }
            }
            gamma[(x, y)] = w;
            gamma[(y, x)] = w;
        }
        Self::validate(gamma, f, mode)
    }

    pub fn function(&self) -> &BooleanFunction {
        &self.function
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn gamma(&self) -> &RealMatrix {
        &self.gamma
    }

    pub fn n_bits(&self) -> usize {
        self.function.n_bits()
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(|&w| w == 0.0)
    }

    /// Nonzero upper-triangle entries `(x, y, weight)` with `x < y`, in
    /// row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, f64)> {
        let n = self.gamma.nrows();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                let w = self.gamma[(x, y)];
                if w != 0.0 {
                    out.push((x, y, w));
                }
            }
        }
        out
    }

    /// `Γ_j`: `Γ` restricted to pairs with `x_j != y_j`, `j` in `1..=N`.
    pub fn gamma_sub(&self, j: usize) -> Result<RealMatrix> {
        let n_bits = self.n_bits();
        if j == 0 || j > n_bits {
            return Err(Error::IndexOutOfRange {
                index: j,
                bound: n_bits + 1,
            });
        }
        Ok(RealMatrix::from_fn(
            self.gamma.nrows(),
            self.gamma.ncols(),
            |x, y| {
                if bit(x, j, n_bits) != bit(y, j, n_bits) {
                    self.gamma[(x, y)]
                } else {
                    0.0
                }
            },
        ))
    }

    /// `cΓ` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(alloc::format!(
                "scale factor must be positive, got {c}"
            )));
        }
        Ok(Self {
            function: self.function.clone(),
            mode: self.mode,
            gamma: &self.gamma * c,
        })
    }

    /// `SΓS` with `S = diag(±1)`, `flip[x]` selecting `-1`. The result is in
    /// general mode since it may carry negative weights.
    pub fn conjugate_signs(&self, flip: &[bool]) -> Result<Self> {
        let n = self.gamma.nrows();
        if flip.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: flip.len(),
            });
        }
        let gamma = RealMatrix::from_fn(n, n, |x, y| {
            if flip[x] != flip[y] {
                -self.gamma[(x, y)]
            } else {
                self.gamma[(x, y)]
            }
        });
        Ok(Self {
            function: self.function.clone(),
            mode: Mode::General,
            gamma,
        })
    }

    pub fn spectral_report(&self) -> Result<SpectralReport> {
        if self.is_zero() {
            return Err(Error::DegenerateMatrix);
        }
        let (_, delta) = principal_eigenpair(&self.gamma);
        let lambda_gamma = spectral_norm_symmetric(&self.gamma);
        let w0 = delta.dot(&(&self.gamma * &delta));
        let lambda_gamma_j = self.sub_norms()?;
        let max_sub = lambda_gamma_j.iter().fold(0.0_f64, |a, &b| a.max(b));
        // Every nonzero entry is on a pair differing in some bit, so some
        // Γ_j is nonzero whenever Γ is.
        debug_assert!(max_sub > 0.0);
        Ok(SpectralReport {
            lambda_gamma,
            delta,
            lambda_gamma_j,
            bound_ratio: lambda_gamma / max_sub,
            w0,
        })
    }

    #[cfg(not(feature = "parallel"))]
    fn sub_norms(&self) -> Result<Vec<f64>> {
        (1..=self.n_bits())
            .map(|j| Ok(spectral_norm_symmetric(&self.gamma_sub(j)?)))
            .collect()
    }

    #[cfg(feature = "parallel")]
    fn sub_norms(&self) -> Result<Vec<f64>> {
        use rayon::prelude::*;
        (1..=self.n_bits())
            .into_par_iter()
            .map(|j| Ok(spectral_norm_symmetric(&self.gamma_sub(j)?)))
            .collect()
    }
}

/// Spectral data of an adversary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    /// `λ(Γ)`, the spectral norm.
    pub lambda_gamma: f64,
    /// Unit principal eigenvector `δ`.
    pub delta: DVector<f64>,
    /// `λ(Γ_j)` for `j = 1..=N`.
    pub lambda_gamma_j: Vec<f64>,
    /// `λ(Γ) / max_j λ(Γ_j)`.
    pub bound_ratio: f64,
    /// `δᵀ Γ δ`, the initial progress measure.
    pub w0: f64,
}

impl SpectralReport {
    pub fn max_lambda_sub(&self) -> f64 {
        self.lambda_gamma_j.iter().fold(0.0_f64, |a, &b| a.max(b))
    }

    /// The cap `2 max_j λ(Γ_j)` on `|d|w^t|/dt|`.
    pub fn derivative_cap(&self) -> f64 {
        2.0 * self.max_lambda_sub()
    }
}

/// Minimum evolution time `(1 - ε′) · bound_ratio / 2` for error `ε` in
/// `[0, 1/2)`, where `ε′ = 2√(ε(1-ε))`.
pub fn min_time_bound(report: &SpectralReport, epsilon: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&epsilon) {
        return Err(Error::InvalidArgument(alloc::format!(
            "epsilon must lie in [0, 1/2), got {epsilon}"
        )));
    }
    Ok((1.0 - output_condition(epsilon)?) * report.bound_ratio / 2.0)
}

/// How [`build_gamma`] places weights.
#[derive(Debug, Clone, PartialEq)]
pub enum Rule {
    /// Weight 1 on every output-differing pair at the minimum Hamming
    /// distance among such pairs.
    MinHammingPairs,
    /// Weight 1 on every output-differing pair.
    AllDifferingPairs,
    /// Explicit upper-triangle weights; the mode is general if any weight is
    /// negative.
    Custom(Vec<(usize, usize, f64)>),
}

/// Builds an adversary matrix from a placement rule. A rule that leaves `Γ`
/// identically zero (always the case for constant `f`) is reported as
/// [`Error::DegenerateMatrix`].
pub fn build_gamma(f: &BooleanFunction, rule: &Rule) -> Result<AdversaryMatrix> {
    let matrix = match rule {
        Rule::MinHammingPairs => {
            let pairs = f.differing_pairs();
            let min = pairs.iter().map(|&(x, y)| hamming(x, y)).min();
            let Some(min) = min else {
                return Err(Error::DegenerateMatrix);
            };
            let entries: Vec<_> = pairs
                .into_iter()
                .filter(|&(x, y)| hamming(x, y) == min)
                .map(|(x, y)| (x, y, 1.0))
                .collect();
            AdversaryMatrix::from_entries(f, Mode::NonNegative, &entries)?
        }
        Rule::AllDifferingPairs => {
            let entries: Vec<_> = f
                .differing_pairs()
                .into_iter()
                .map(|(x, y)| (x, y, 1.0))
                .collect();
            AdversaryMatrix::from_entries(f, Mode::NonNegative, &entries)?
        }
        Rule::Custom(entries) => {
            let mode = if entries.iter().any(|e| e.2 < 0.0) {
                Mode::General
            } else {
                Mode::NonNegative
            };
            AdversaryMatrix::from_entries(f, mode, entries)?
        }
    };
    if matrix.is_zero() {
        return Err(Error::DegenerateMatrix);
    }
    Ok(matrix)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings {
    /// Number of gradient evaluations.
    pub iterations: usize,
    /// Initial step length, in units of the largest weight.
    pub step: f64,
    pub seed: u64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            iterations: 500,
            step: 0.1,
            seed: 0,
        }
    }
}

/// Heuristic search for weights maximizing the bound ratio.
///
/// Starts from the best of the min-Hamming construction, uniform weights on
/// all output-differing pairs and a seeded random weighting, then runs
/// projected ascent along a central finite-difference gradient with a
/// grow/shrink step rule. The ascent follows a smoothed ratio (see
/// `WeightSearch::surrogate`) since the true ratio has kinks wherever two
/// `λ(Γ_j)` tie. Projection clips negative weights in non-negative mode and
/// rescales so the largest weight has magnitude 1. Returns the iterate with
/// the best true ratio; the result is a function of `settings` only.
pub fn optimize_weights(
    f: &BooleanFunction,
    mode: Mode,
    settings: OptimizerSettings,
) -> Result<AdversaryMatrix> {
    if settings.iterations == 0 {
        return Err(Error::InvalidArgument("iterations must be >= 1".into()));
    }
    if !(settings.step > 0.0 && settings.step.is_finite()) {
        return Err(Error::InvalidArgument(alloc::format!(
            "step must be positive, got {}",
            settings.step
        )));
    }
    let search = WeightSearch::new(f, mode)?;

    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let random: Vec<f64> = search
        .pairs
        .iter()
        .map(|_| match mode {
            Mode::NonNegative => rng.random_range(0.0..1.0),
            Mode::General => rng.random_range(-1.0..1.0),
        })
        .collect();
    let min_d = search.pairs.iter().map(|&(x, y)| hamming(x, y)).min().unwrap_or(0);
    let min_hamming: Vec<f64> = search
        .pairs
        .iter()
        .map(|&(x, y)| if hamming(x, y) == min_d { 1.0 } else { 0.0 })
        .collect();
    let uniform = vec![1.0; search.pairs.len()];

    let start = [min_hamming, uniform, random]
        .into_iter()
        .filter_map(|w| search.project(w))
        .map(|w| {
            let value = search.objective(&w);
            (w, value)
        })
        .fold(None, |best: Option<(Vec<f64>, f64)>, cand| match best {
            Some(b) if b.1 >= cand.1 => Some(b),
            _ => Some(cand),
        })
        .ok_or(Error::DegenerateMatrix)?;

    let best = search.ascend(start.0, settings);
    search.to_matrix(&best)
}

/// Weights on the output-differing pairs of `f`.
pub(crate) struct WeightSearch<'a> {
    f: &'a BooleanFunction,
    mode: Mode,
    pairs: Vec<(usize, usize)>,
}

impl<'a> WeightSearch<'a> {
    pub(crate) fn new(f: &'a BooleanFunction, mode: Mode) -> Result<Self> {
        let pairs = f.differing_pairs();
        if pairs.is_empty() {
            return Err(Error::DegenerateMatrix);
        }
        Ok(Self { f, mode, pairs })
    }

    fn matrix(&self, weights: &[f64]) -> RealMatrix {
        let n = self.f.num_inputs();
        let mut gamma = RealMatrix::zeros(n, n);
        for (&(x, y), &w) in self.pairs.iter().zip(weights) {
            gamma[(x, y)] = w;
            gamma[(y, x)] = w;
        }
        gamma
    }

    fn to_matrix(&self, weights: &[f64]) -> Result<AdversaryMatrix> {
        AdversaryMatrix::validate(self.matrix(weights), self.f, self.mode)
    }

    /// `λ(Γ)` and the eigenvalues of every `Γ_j` for a weighting.
    fn spectra(&self, weights: &[f64]) -> (f64, Vec<Vec<f64>>) {
        let gamma = self.matrix(weights);
        let top = spectral_norm_symmetric(&gamma);
        let n_bits = self.f.n_bits();
        let subs = (1..=n_bits)
            .map(|j| {
                let sub = RealMatrix::from_fn(gamma.nrows(), gamma.ncols(), |x, y| {
                    if bit(x, j, n_bits) != bit(y, j, n_bits) {
                        gamma[(x, y)]
                    } else {
                        0.0
                    }
                });
                sub.symmetric_eigenvalues().iter().copied().collect()
            })
            .collect();
        (top, subs)
    }

    /// Bound ratio of the weighting, or `-inf` when it is degenerate.
    pub(crate) fn objective(&self, weights: &[f64]) -> f64 {
        let (top, subs) = self.spectra(weights);
        let max_sub = subs
            .iter()
            .flatten()
            .fold(0.0_f64, |a, v| a.max(v.abs()));
        if max_sub <= 0.0 {
            f64::NEG_INFINITY
        } else {
            top / max_sub
        }
    }

    /// Smooth lower bound on the ratio: the denominator `max_j λ(Γ_j)` is
    /// replaced by the Schatten `p`-norm of all `Γ_j` spectra together.
    fn surrogate(&self, weights: &[f64], p: i32) -> f64 {
        let (top, subs) = self.spectra(weights);
        let max_sub = subs
            .iter()
            .flatten()
            .fold(0.0_f64, |a, v| a.max(v.abs()));
        if max_sub <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let sum: f64 = subs.iter().flatten().map(|v| libm::pow(v.abs() / max_sub, p as f64)).sum();
        top / (max_sub * libm::pow(sum, 1.0 / p as f64))
    }

    /// Clips to the feasible set and rescales to unit max weight.
    fn project(&self, mut weights: Vec<f64>) -> Option<Vec<f64>> {
        if self.mode == Mode::NonNegative {
            for w in &mut weights {
                *w = w.max(0.0);
            }
        }
        let scale = weights.iter().fold(0.0_f64, |a, w| a.max(w.abs()));
        if scale <= 0.0 || !scale.is_finite() {
            return None;
        }
        for w in &mut weights {
            *w /= scale;
        }
        Some(weights)
    }

    fn gradient(&self, weights: &[f64], p: i32) -> Vec<f64> {
        const H: f64 = 1e-6;
        let mut probe = weights.to_vec();
        (0..weights.len())
            .map(|k| {
                let orig = probe[k];
                probe[k] = orig + H;
                let up = self.surrogate(&probe, p);
                probe[k] = orig - H;
                let down = self.surrogate(&probe, p);
                probe[k] = orig;
                if up.is_finite() && down.is_finite() {
                    (up - down) / (2.0 * H)
                } else {
                    0.0
                }
            })
            .collect()
    }

    /// Ascent on the surrogate with the Schatten exponent doubled from 4 to
    /// 128 across stages, tracking the best true ratio seen.
    pub(crate) fn ascend(&self, start: Vec<f64>, settings: OptimizerSettings) -> Vec<f64> {
        const EXPONENTS: [i32; 6] = [4, 8, 16, 32, 64, 128];
        let per_stage = settings.iterations.div_ceil(EXPONENTS.len());
        let mut budget = settings.iterations;

        let mut best_value = self.objective(&start);
        let mut best = start.clone();
        let mut current = start;
        for p in EXPONENTS {
            let mut value = self.surrogate(&current, p);
            let mut step = settings.step;
            for _ in 0..per_stage.min(budget) {
                budget -= 1;
                let grad = self.gradient(&current, p);
                let norm = libm::sqrt(grad.iter().map(|g| g * g).sum::<f64>());
                if norm < 1e-12 {
                    break;
                }
                let mut accepted = false;
                while step > 1e-12 {
                    let trial: Vec<f64> = current
                        .iter()
                        .zip(&grad)
                        .map(|(w, g)| w + step * g / norm)
                        .collect();
                    if let Some(trial) = self.project(trial) {
                        let trial_value = self.surrogate(&trial, p);
                        if trial_value > value {
                            current = trial;
                            value = trial_value;
                            step *= 1.5;
                            accepted = true;
                            break;
                        }
                    }
                    step *= 0.5;
                }
                if !accepted {
                    break;
                }
                let true_value = self.objective(&current);
                if true_value > best_value {
                    best_value = true_value;
                    best = current.clone();
                }
            }
        }
        best
    }
}
