//! On-disk formats: truth tables, adversary matrices, schedules and
//! programs as JSON; progress traces as CSV.

use std::path::Path;

use hamadv_core::adversary::{AdversaryMatrix, Mode};
use hamadv_core::boolfn::BooleanFunction;
use hamadv_core::evolve::ProgressTrace;
use hamadv_core::oracle::{DriverSchedule, Instruction, Segment};
use hamadv_core::{ComplexMatrix, C64};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::json::fmt17;

/// A complex matrix as rows of `[re, im]` pairs.
pub type MatrixRows = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_rows(m: &ComplexMatrix) -> MatrixRows {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

pub fn matrix_from_rows(rows: &MatrixRows) -> Result<ComplexMatrix> {
    let n = rows.len();
    if n == 0 {
        return Err(CliError::Config("matrix has no rows".into()));
    }
    if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(CliError::Config(format!(
            "matrix must be square: row {r} has {} entries, expected {n}",
            row.len()
        )));
    }
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        C64::new(rows[r][c][0], rows[r][c][1])
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Nonnegative,
    General,
}

impl From<Mode> for ModeName {
    fn from(m: Mode) -> Self {
        match m {
            Mode::NonNegative => ModeName::Nonnegative,
            Mode::General => ModeName::General,
        }
    }
}

impl From<ModeName> for Mode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Nonnegative => Mode::NonNegative,
            ModeName::General => Mode::General,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruthTableFile {
    pub n_bits: usize,
    /// `table[x]` is `f(x)`, 0 or 1, with `x_1` the most significant bit.
    pub table: Vec<u8>,
}

impl TruthTableFile {
    pub fn from_function(f: &BooleanFunction) -> Self {
        TruthTableFile {
            n_bits: f.n_bits(),
            table: f.table_bits(),
        }
    }

    pub fn to_function(&self) -> Result<BooleanFunction> {
        Ok(BooleanFunction::from_table(self.n_bits, &self.table)?)
    }
}

pub fn load_function(path: &Path) -> Result<BooleanFunction> {
    crate::json::read::<TruthTableFile>(path)?.to_function()
}

/// Upper-triangle weights; the loader mirrors them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaFile {
    pub n_bits: usize,
    pub mode: ModeName,
    pub entries: Vec<(usize, usize, f64)>,
}

impl GammaFile {
    pub fn from_matrix(gamma: &AdversaryMatrix) -> Self {
        GammaFile {
            n_bits: gamma.n_bits(),
            mode: gamma.mode().into(),
            entries: gamma.entries(),
        }
    }

    pub fn to_matrix(&self, f: &BooleanFunction) -> Result<AdversaryMatrix> {
        if self.n_bits != f.n_bits() {
            return Err(CliError::Config(format!(
                "gamma file is for {} bits but the function has {}",
                self.n_bits,
                f.n_bits()
            )));
        }
        if let Some(&(x, y, _)) = self.entries.iter().find(|&&(x, y, _)| x >= y) {
            return Err(CliError::Config(format!(
                "gamma entries must satisfy x < y, found ({x}, {y})"
            )));
        }
        Ok(AdversaryMatrix::from_entries(f, self.mode.into(), &self.entries)?)
    }
}

pub fn load_gamma(path: &Path, f: &BooleanFunction) -> Result<AdversaryMatrix> {
    crate::json::read::<GammaFile>(path)?.to_matrix(f)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentFile {
    pub duration: f64,
    pub g: f64,
    pub h_driver: MatrixRows,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub dim: usize,
    pub segments: Vec<SegmentFile>,
}

impl ScheduleFile {
    pub fn from_schedule(s: &DriverSchedule) -> Self {
        ScheduleFile {
            dim: s.dim(),
            segments: s
                .segments()
                .iter()
                .map(|seg| SegmentFile {
                    duration: seg.duration,
                    g: seg.g,
                    h_driver: matrix_to_rows(&seg.h_driver),
                })
                .collect(),
        }
    }

    pub fn to_schedule(&self) -> Result<DriverSchedule> {
        let segments = self
            .segments
            .iter()
            .map(|s| {
                Ok(Segment {
                    duration: s.duration,
                    g: s.g,
                    h_driver: matrix_from_rows(&s.h_driver)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DriverSchedule::new(self.dim, segments)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProgramStep {
    Query,
    Unitary { matrix: MatrixRows },
}

pub fn program_to_steps(program: &[Instruction]) -> Vec<ProgramStep> {
    program
        .iter()
        .map(|i| match i {
            Instruction::Query => ProgramStep::Query,
            Instruction::Unitary(u) => ProgramStep::Unitary {
                matrix: matrix_to_rows(u),
            },
        })
        .collect()
}

pub fn steps_to_program(steps: &[ProgramStep]) -> Result<Vec<Instruction>> {
    steps
        .iter()
        .map(|s| match s {
            ProgramStep::Query => Ok(Instruction::Query),
            ProgramStep::Unitary { matrix } => Ok(Instruction::Unitary(matrix_from_rows(matrix)?)),
        })
        .collect()
}

/// Either kind of file accepted by `--schedule`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScheduleSource {
    Program(Vec<ProgramStep>),
    Schedule(ScheduleFile),
}

pub const TRACE_HEADER: [&str; 6] = ["t", "|w|", "Re(w)", "Im(w)", "dw_estimate", "norm_drift_max"];

pub fn write_trace_csv(path: &Path, trace: &ProgressTrace) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(TRACE_HEADER)?;
    for i in 0..trace.times.len() {
        w.write_record([
            fmt17(trace.times[i]),
            fmt17(trace.w_abs[i]),
            fmt17(trace.w[i].re),
            fmt17(trace.w[i].im),
            fmt17(trace.dw_estimate[i]),
            fmt17(trace.norm_drift_max[i]),
        ])?;
    }
    w.flush().map_err(|e| CliError::io(path, e))?;
    Ok(())
}

/// Wide per-pair table: `t`, then `Re`/`Im` of `⟨ψ_x|ψ_y⟩` for every
/// supported pair.
pub fn write_pair_csv(path: &Path, trace: &ProgressTrace) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["t".to_string()];
    for &(x, y) in &trace.pairs {
        header.push(format!("Re<{x}|{y}>"));
        header.push(format!("Im<{x}|{y}>"));
    }
    w.write_record(&header)?;
    for (i, row) in trace.pair_inner.iter().enumerate() {
        let mut rec = vec![fmt17(trace.times[i])];
        for v in row {
            rec.push(fmt17(v.re));
            rec.push(fmt17(v.im));
        }
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))?;
    Ok(())
}
