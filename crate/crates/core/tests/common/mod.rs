#![allow(dead_code)]

use hamadv_core::oracle::Instruction;
use hamadv_core::{ComplexMatrix, RealMatrix, StateVector, C64};

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn basis(dim: usize, i: usize) -> StateVector {
    StateVector::from_fn(dim, |r, _| c((r == i) as u8 as f64))
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0_f64, |a, v| a.max(v.norm()))
}

/// Normalized Hadamard-type matrix of size 2^k (Sylvester construction).
pub fn hadamard(dim: usize) -> ComplexMatrix {
    let scale = 1.0 / (dim as f64).sqrt();
    ComplexMatrix::from_fn(dim, dim, |r, col| {
        let sign = if (r & col).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        c(sign * scale)
    })
}

/// `2|s⟩⟨s| - I` for the uniform state `s`.
pub fn diffusion(dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |r, col| {
        c(2.0 / dim as f64 - if r == col { 1.0 } else { 0.0 })
    })
}

/// One Grover iteration on four index states, starting from `|1⟩`.
pub fn grover4_program() -> Vec<Instruction> {
    vec![
        Instruction::Unitary(hadamard(4)),
        Instruction::Query,
        Instruction::Unitary(diffusion(4)),
    ]
}

/// `diag((-1)^{x_j})` for the standard oracle with no workspace.
pub fn phase_oracle(x: usize, n_bits: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n_bits, n_bits, |r, col| {
        if r != col {
            c(0.0)
        } else if (x >> (n_bits - 1 - r)) & 1 == 1 {
            c(-1.0)
        } else {
            c(1.0)
        }
    })
}

/// Power iteration on `Γ²`, returning `sqrt` of its top eigenvalue.
pub fn power_norm(gamma: &RealMatrix, iterations: usize) -> f64 {
    let n = gamma.nrows();
    let mut v = nalgebra::DVector::from_fn(n, |i, _| 1.0 + (i as f64 * 0.618).fract());
    v /= v.norm();
    let mut estimate = 0.0;
    for _ in 0..iterations {
        let w = gamma * (gamma * &v);
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        estimate = v.dot(&w).sqrt();
        v = w / norm;
    }
    estimate
}

/// Deterministic Hermitian driver with nonzero off-diagonal couplings.
pub fn test_driver(dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |a, b| {
        let (a, b) = (a as f64, b as f64);
        C64::new(((a + b + 1.0) * 0.37).cos(), (a - b) * 0.21)
    })
}
