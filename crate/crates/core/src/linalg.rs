//! Dense eigen-decomposition helpers shared by the adversary and evolution
//! code. Everything here is a thin layer over nalgebra's symmetric
//! eigensolver and complex Schur decomposition.

use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::linalg::{Schur, SymmetricEigen};
use nalgebra::DVector;

use crate::{ComplexMatrix, Error, RealMatrix, Result, StateVector, C64};

/// Largest absolute eigenvalue of a real symmetric matrix.
pub fn spectral_norm_symmetric(m: &RealMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .symmetric_eigenvalues()
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Eigenpair of a real symmetric matrix for the eigenvalue of largest
/// magnitude.
///
/// Ties in magnitude (bipartite matrices always have `+λ` and `-λ`) are
/// broken toward the positive eigenvalue, then toward the first one returned
/// by the solver. The vector is unit length with its first nonzero component
/// positive.
pub fn principal_eigenpair(m: &RealMatrix) -> (f64, DVector<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let max_abs = eig
        .eigenvalues
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let tie = max_abs * 1e-10;
    let candidates = || {
        eig.eigenvalues
            .iter()
            .enumerate()
            .filter(move |(_, v)| v.abs() >= max_abs - tie)
    };
    let (idx, value) = candidates()
        .find(|(_, v)| **v > 0.0)
        .or_else(|| candidates().next())
        .map(|(i, v)| (i, *v))
        .expect("non-empty spectrum");

    let mut vector: DVector<f64> = eig.eigenvectors.column(idx).into_owned();
    let norm = vector.norm();
    vector /= norm;
    if let Some(first) = vector.iter().find(|v| v.abs() > 1e-12) {
        if *first < 0.0 {
            vector.neg_mut();
        }
    }
    (value, vector)
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.norm()))
}

/// Largest entrywise deviation of `m` from its conjugate transpose.
pub fn hermitian_deviation(m: &ComplexMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs(&(m - m.adjoint()))
}

/// Largest entrywise deviation of `u† u` from the identity.
pub fn unitary_deviation(u: &ComplexMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let n = u.nrows();
    max_abs(&(u.adjoint() * u - ComplexMatrix::identity(n, n)))
}

/// Operator norm of a Hermitian matrix (largest absolute eigenvalue).
pub fn hermitian_norm(h: &ComplexMatrix) -> f64 {
    if h.is_empty() {
        return 0.0;
    }
    h.clone()
        .symmetric_eigenvalues()
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Spectral decomposition `H = V diag(λ) V†` of a Hermitian operator, used
/// for exact propagation `exp(-i H τ)`.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    values: Vec<f64>,
    vectors: ComplexMatrix,
}

impl HermitianSpectrum {
    /// Decomposes `h`, rejecting it if it deviates from Hermitian by more
    /// than `tolerance`.
    pub fn new(h: &ComplexMatrix, tolerance: f64) -> Result<Self> {
        let deviation = hermitian_deviation(h);
        if deviation > tolerance {
            return Err(Error::NotHermitian { deviation });
        }
        let eig = SymmetricEigen::new(h.clone());
        Ok(Self {
            values: eig.eigenvalues.iter().copied().collect(),
            vectors: eig.eigenvectors,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    /// `exp(-i H τ) ψ`.
    pub fn propagate(&self, psi: &StateVector, tau: f64) -> StateVector {
        let mut coeffs = self.vectors.ad_mul(psi);
        for (c, &lambda) in coeffs.iter_mut().zip(&self.values) {
            *c *= C64::from_polar(1.0, -lambda * tau);
        }
        &self.vectors * coeffs
    }

    /// `exp(-i H τ)` as a dense matrix.
    pub fn unitary(&self, tau: f64) -> ComplexMatrix {
        let mut scaled = self.vectors.clone();
        for (mut col, &lambda) in scaled.column_iter_mut().zip(&self.values) {
            col *= C64::from_polar(1.0, -lambda * tau);
        }
        scaled * self.vectors.adjoint()
    }
}

/// `exp(-i H τ)` for Hermitian `h`.
pub fn expm_hermitian(h: &ComplexMatrix, tau: f64) -> Result<ComplexMatrix> {
    Ok(HermitianSpectrum::new(h, 1e-12)?.unitary(tau))
}

/// Hermitian `H` with `exp(-i H) = u`, taking eigenphases in `(-π, π]`.
///
/// This is `i log u` on the principal branch. `u` must be unitary within
/// `tolerance`.
pub fn log_unitary(u: &ComplexMatrix, tolerance: f64) -> Result<ComplexMatrix> {
    let deviation = unitary_deviation(u);
    if deviation > tolerance {
        return Err(Error::NotUnitary { deviation });
    }
    let n = u.nrows();
    if n == 0 {
        return Ok(ComplexMatrix::zeros(0, 0));
    }
    // A unitary is normal, so its complex Schur form is diagonal.
    let (q, t) = Schur::new(u.clone()).unpack();
    let mut phased = q.clone();
    for (k, mut col) in phased.column_iter_mut().enumerate() {
        let mut theta = t[(k, k)].arg();
        if theta <= -PI + 1e-12 {
            theta = PI;
        }
        col *= C64::new(-theta, 0.0);
    }
    let h = phased * q.adjoint();
    let h = (&h + h.adjoint()) * C64::new(0.5, 0.0);

    let rebuilt = expm_hermitian(&h, 1.0)?;
    let residual = max_abs(&(rebuilt - u));
    if residual > 1e-8 {
        return Err(Error::NotUnitary {
            deviation: residual,
        });
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use nalgebra::dmatrix;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn principal_pair_prefers_positive_eigenvalue() {
        // bipartite path a-b: eigenvalues +1 and -1
        let m = dmatrix![0.0, 1.0; 1.0, 0.0];
        let (value, v) = principal_eigenpair(&m);
        assert!((value - 1.0).abs() < 1e-14);
        assert!((v[0] - v[1]).abs() < 1e-14);
        assert!(v[0] > 0.0);
    }

    #[test]
    fn spectral_norm_of_negative_definite() {
        let m = dmatrix![-3.0, 0.0; 0.0, 1.0];
        assert!((spectral_norm_symmetric(&m) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn log_of_hadamard_round_trips() {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let h = dmatrix![c(s, 0.0), c(s, 0.0); c(s, 0.0), c(-s, 0.0)];
        let gen = log_unitary(&h, 1e-10).unwrap();
        assert!(hermitian_deviation(&gen) < 1e-14);
        let back = expm_hermitian(&gen, 1.0).unwrap();
        assert!(max_abs(&(back - &h)) < 1e-12);
        // eigenphase of the -1 eigenvalue lands on +π
        let norm = hermitian_norm(&gen);
        assert!((norm - PI).abs() < 1e-10);
    }

    #[test]
    fn log_of_identity_is_zero() {
        let id = ComplexMatrix::identity(3, 3);
        let gen = log_unitary(&id, 1e-10).unwrap();
        assert!(max_abs(&gen) < 1e-14);
    }

    #[test]
    fn log_rejects_non_unitary() {
        let m = dmatrix![c(2.0, 0.0), c(0.0, 0.0); c(0.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(
            log_unitary(&m, 1e-10),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn propagate_matches_unitary() {
        let h = dmatrix![c(1.0, 0.0), c(0.5, -0.25); c(0.5, 0.25), c(-0.3, 0.0)];
        let spec = HermitianSpectrum::new(&h, 1e-12).unwrap();
        let psi = StateVector::from_vec(alloc::vec![c(0.6, 0.0), c(0.0, 0.8)]);
        let a = spec.propagate(&psi, 0.7);
        let b = spec.unitary(0.7) * &psi;
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = dmatrix![c(0.0, 0.0), c(1.0, 0.0); c(0.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            HermitianSpectrum::new(&h, 1e-12),
            Err(Error::NotHermitian { .. })
        ));
    }
}
