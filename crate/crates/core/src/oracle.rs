//! Hamiltonian oracles `H_Q(x) = Σ_j H_j^{(x_j)}`, driver schedules and the
//! compilers that turn discrete or fractional query programs into schedules.
//!
//! Blocks are stored with operator norm at most 1. The standard phase oracle
//! uses `H_j^{(1)} = P_j`, so one discrete query (phase `-1` on every
//! `|j,k⟩` with `x_j = 1`) takes raw time `π`. That raw duration is one
//! *query unit*, see [`QUERY_UNIT`].

use alloc::vec::Vec;

use crate::boolfn::bit;
use crate::linalg::{hermitian_deviation, hermitian_norm, log_unitary, max_abs, unitary_deviation};
use crate::{ComplexMatrix, Error, Result, StateVector, C64};

/// Raw evolution time of one query unit.
pub const QUERY_UNIT: f64 = core::f64::consts::PI;

const BLOCK_TOL: f64 = 1e-12;
const UNITARY_TOL: f64 = 1e-10;

/// One index block: projector `P_j` onto `V_j` and the two operators
/// `H_j^{(0)}`, `H_j^{(1)}` supported on `V_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleBlock {
    index: usize,
    projector: ComplexMatrix,
    h0: ComplexMatrix,
    h1: ComplexMatrix,
}

impl OracleBlock {
    pub fn new(
        index: usize,
        projector: ComplexMatrix,
        h0: ComplexMatrix,
        h1: ComplexMatrix,
    ) -> Result<Self> {
        let dim = projector.nrows();
        for m in [&projector, &h0, &h1] {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: if m.nrows() != dim { m.nrows() } else { m.ncols() },
                });
            }
        }
        let invalid = |reason| Error::InvalidBlock { index, reason };
        if hermitian_deviation(&projector) > BLOCK_TOL
            || max_abs(&(&projector * &projector - &projector)) > BLOCK_TOL
        {
            return Err(invalid("projector is not an orthogonal projector"));
        }
        for h in [&h0, &h1] {
            if hermitian_deviation(h) > BLOCK_TOL {
                return Err(invalid("block operator is not Hermitian"));
            }
            if max_abs(&(&projector * h * &projector - h)) > BLOCK_TOL {
                return Err(invalid("block operator leaves its subspace"));
            }
            if hermitian_norm(h) > 1.0 + BLOCK_TOL {
                return Err(invalid("block operator has norm above 1"));
            }
        }
        Ok(Self {
            index,
            projector,
            h0,
            h1,
        })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn projector(&self) -> &ComplexMatrix {
        &self.projector
    }

    /// `H_j^{(b)}`.
    pub fn operator(&self, b: bool) -> &ComplexMatrix {
        if b {
            &self.h1
        } else {
            &self.h0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianOracle {
    n_bits: usize,
    dim: usize,
    blocks: Vec<OracleBlock>,
}

impl HamiltonianOracle {
    /// Assembles an oracle from blocks `1..=N` (in order) on mutually
    /// orthogonal subspaces.
    pub fn new(blocks: Vec<OracleBlock>) -> Result<Self> {
        let n_bits = blocks.len();
        if n_bits == 0 {
            return Err(Error::InvalidArgument("oracle needs at least one block".into()));
        }
        let dim = blocks[0].projector.nrows();
        for (i, b) in blocks.iter().enumerate() {
            if b.index != i + 1 {
                return Err(Error::InvalidBlock {
                    index: b.index,
                    reason: "blocks must be indexed 1..=N in order",
                });
            }
            if b.projector.nrows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: b.projector.nrows(),
                });
            }
        }
        for j in 0..n_bits {
            for k in j + 1..n_bits {
                if max_abs(&(&blocks[j].projector * &blocks[k].projector)) > BLOCK_TOL {
                    return Err(Error::InvalidBlock {
                        index: k + 1,
                        reason: "subspace overlaps an earlier block",
                    });
                }
            }
        }
        Ok(Self {
            n_bits,
            dim,
            blocks,
        })
    }

    /// Phase oracle on the basis `|j,k⟩`, `j = 1..=N`, `k = 0..K`, stored at
    /// index `(j-1)·K + k`. `H_j^{(0)} = 0` and `H_j^{(1)} = P_j`.
    pub fn standard_query(n_bits: usize, workspace: usize) -> Result<Self> {
        if n_bits == 0 || workspace == 0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "standard oracle needs n_bits >= 1 and workspace >= 1, got {n_bits} and {workspace}"
            )));
        }
        let dim = n_bits * workspace;
        let blocks = (1..=n_bits)
            .map(|j| {
                let lo = (j - 1) * workspace;
                let projector = ComplexMatrix::from_fn(dim, dim, |r, c| {
                    if r == c && (lo..lo + workspace).contains(&r) {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                });
                OracleBlock {
                    index: j,
                    h0: ComplexMatrix::zeros(dim, dim),
                    h1: projector.clone(),
                    projector,
                }
            })
            .collect();
        Ok(Self {
            n_bits,
            dim,
            blocks,
        })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[OracleBlock] {
        &self.blocks
    }

    /// `H_Q(x) = Σ_j H_j^{(x_j)}`.
    pub fn assemble(&self, x: usize) -> Result<ComplexMatrix> {
        let bound = 1usize << self.n_bits;
        if x >= bound {
            return Err(Error::IndexOutOfRange { index: x, bound });
        }
        let mut h = ComplexMatrix::zeros(self.dim, self.dim);
        for (j, block) in (1..).zip(&self.blocks) {
            h += block.operator(bit(x, j, self.n_bits));
        }
        Ok(h)
    }

    /// `β_{x,j} = ‖P_j ψ‖` for every block.
    pub fn query_amplitudes(&self, psi: &StateVector) -> Vec<f64> {
        self.blocks
            .iter()
            .map(|b| (&b.projector * psi).norm())
            .collect()
    }
}

/// One constant piece of `H_x(t) = g·H_Q(x) + H_D` lasting `duration`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub duration: f64,
    pub g: f64,
    pub h_driver: ComplexMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriverSchedule {
    dim: usize,
    segments: Vec<Segment>,
}

impl DriverSchedule {
    pub fn new(dim: usize, segments: Vec<Segment>) -> Result<Self> {
        for (i, s) in segments.iter().enumerate() {
            if !(s.duration > 0.0 && s.duration.is_finite()) {
                return Err(Error::InvalidArgument(alloc::format!(
                    "segment {i}: duration must be positive, got {}",
                    s.duration
                )));
            }
            if s.g.is_nan() || s.g.abs() > 1.0 {
                return Err(Error::InvalidArgument(alloc::format!(
                    "segment {i}: |g| must be at most 1, got {}",
                    s.g
                )));
            }
            if s.h_driver.nrows() != dim || s.h_driver.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.h_driver.nrows(),
                });
            }
            let deviation = hermitian_deviation(&s.h_driver);
            if deviation > BLOCK_TOL {
                return Err(Error::NotHermitian { deviation });
            }
        }
        Ok(Self { dim, segments })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Total raw evolution time.
    pub fn total_time(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn total_query_units(&self) -> f64 {
        self.total_time() / QUERY_UNIT
    }

    /// Raw time spent with `g != 0`.
    pub fn oracle_time(&self) -> f64 {
        self.segments
            .iter()
            .filter(|s| s.g != 0.0)
            .map(|s| s.duration)
            .sum()
    }
}

/// One step of a discrete query program.
#[derive(Debug, Clone, PartialEq)]
pub enum Instruction {
    Query,
    Unitary(ComplexMatrix),
}

/// Compiles `U_0, Q, U_1, …` into a schedule: each query becomes one query
/// unit with `g = 1, H_D = 0`; each unitary `U` becomes one query unit with
/// `g = 0, H_D = i·log(U)/π` (principal branch).
pub fn compile_discrete(program: &[Instruction], oracle: &HamiltonianOracle) -> Result<DriverSchedule> {
    compile_fractional(program, 1, oracle)
}

/// As [`compile_discrete`], but each query is split into `m` segments of
/// `1/m` query unit, each applying `Q_x^{1/m}`.
pub fn compile_fractional(
    program: &[Instruction],
    m: usize,
    oracle: &HamiltonianOracle,
) -> Result<DriverSchedule> {
    if m == 0 {
        return Err(Error::InvalidArgument("fractional M must be >= 1".into()));
    }
    if program.is_empty() {
        return Err(Error::InvalidArgument("program is empty".into()));
    }
    let dim = oracle.dim();
    let zero = ComplexMatrix::zeros(dim, dim);
    let mut segments = Vec::new();
    for instr in program {
        match instr {
            Instruction::Query => {
                for _ in 0..m {
                    segments.push(Segment {
                        duration: QUERY_UNIT / m as f64,
                        g: 1.0,
                        h_driver: zero.clone(),
                    });
                }
            }
            Instruction::Unitary(u) => {
                if u.nrows() != dim || u.ncols() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: if u.nrows() != dim { u.nrows() } else { u.ncols() },
                    });
                }
                let deviation = unitary_deviation(u);
                if deviation > UNITARY_TOL {
                    return Err(Error::NotUnitary { deviation });
                }
                let generator = log_unitary(u, UNITARY_TOL)?;
                segments.push(Segment {
                    duration: QUERY_UNIT,
                    g: 0.0,
                    h_driver: generator.unscale(QUERY_UNIT),
                });
            }
        }
    }
    DriverSchedule::new(dim, segments)
}
