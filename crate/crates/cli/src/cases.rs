//! Built-in case studies and schedule resolution.

use std::path::Path;

use hamadv_core::boolfn::{BooleanFunction, Family};
use hamadv_core::evolve::uniform_index_state;
use hamadv_core::oracle::{
    compile_fractional, DriverSchedule, HamiltonianOracle, Instruction, Segment, QUERY_UNIT,
};
use hamadv_core::{ComplexMatrix, StateVector, C64};

use crate::error::{CliError, Result};
use crate::formats::{steps_to_program, ScheduleSource};

pub const BUILTIN_NAMES: [&str; 3] = ["grover-or4", "parity-2-discrete", "driver-only-null"];

/// Everything needed to evolve and check one algorithm.
#[derive(Debug, Clone)]
pub struct CaseStudy {
    pub name: String,
    pub function: BooleanFunction,
    pub oracle: HamiltonianOracle,
    /// The discrete program, if the schedule was compiled from one.
    pub program: Option<Vec<Instruction>>,
    pub schedule: DriverSchedule,
    pub initial_state: StateVector,
    /// Inputs the algorithm promises to handle; distinguishability is only
    /// checked among these.
    pub domain: Vec<usize>,
}

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// Normalized Sylvester–Hadamard matrix; `dim` must be a power of two.
pub fn hadamard(dim: usize) -> ComplexMatrix {
    let scale = 1.0 / (dim as f64).sqrt();
    ComplexMatrix::from_fn(dim, dim, |r, c| {
        real(if (r & c).count_ones() % 2 == 0 { scale } else { -scale })
    })
}

/// Reflection about the uniform state, `2|s⟩⟨s| - I`.
pub fn diffusion(dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |r, c| {
        real(2.0 / dim as f64 - if r == c { 1.0 } else { 0.0 })
    })
}

/// Deterministic Hermitian driver with every coupling nonzero.
pub fn null_driver(dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |a, b| {
        let (a, b) = (a as f64, b as f64);
        C64::new(((a + b + 1.0) * 0.37).cos(), (a - b) * 0.21)
    })
}

fn basis(dim: usize, i: usize) -> StateVector {
    StateVector::from_fn(dim, |r, _| real((r == i) as u8 as f64))
}

fn program_case(
    name: &str,
    function: BooleanFunction,
    workspace: usize,
    program: Vec<Instruction>,
    m: usize,
    initial_state: StateVector,
    domain: Vec<usize>,
) -> Result<CaseStudy> {
    let oracle = HamiltonianOracle::standard_query(function.n_bits(), workspace)?;
    let schedule = compile_fractional(&program, m, &oracle)?;
    Ok(CaseStudy {
        name: name.to_string(),
        function,
        oracle,
        program: Some(program),
        schedule,
        initial_state,
        domain,
    })
}

/// One Grover iteration on four index states for OR_4, from `|1⟩`.
///
/// It is exact only under the promise `|x| ≤ 1`, so the domain is `0000`
/// and the four weight-one inputs.
pub fn grover_or4(m: usize) -> Result<CaseStudy> {
    let f = BooleanFunction::named(Family::Or, 4)?;
    let program = vec![
        Instruction::Unitary(hadamard(4)),
        Instruction::Query,
        Instruction::Unitary(diffusion(4)),
    ];
    program_case("grover-or4", f, 1, program, m, basis(4, 0), vec![0, 1, 2, 4, 8])
}

/// Two queries computing PARITY_2 exactly: `H Q H Q` from `|1⟩`.
pub fn parity_2_discrete(m: usize) -> Result<CaseStudy> {
    let f = BooleanFunction::named(Family::Parity, 2)?;
    let h = hadamard(2);
    let program = vec![
        Instruction::Unitary(h.clone()),
        Instruction::Query,
        Instruction::Unitary(h),
        Instruction::Query,
    ];
    program_case("parity-2-discrete", f, 1, program, m, basis(2, 0), (0..4).collect())
}

/// Three query units of driver-only evolution (`g = 0`): no input is ever
/// distinguished.
pub fn driver_only_null(function: BooleanFunction, workspace: usize) -> Result<CaseStudy> {
    let oracle = HamiltonianOracle::standard_query(function.n_bits(), workspace)?;
    let dim = oracle.dim();
    let segments = (0..3)
        .map(|k| Segment {
            duration: QUERY_UNIT,
            g: 0.0,
            h_driver: null_driver(dim) * real(1.0 + k as f64),
        })
        .collect();
    let schedule = DriverSchedule::new(dim, segments)?;
    Ok(CaseStudy {
        name: "driver-only-null".into(),
        initial_state: uniform_index_state(function.n_bits(), workspace),
        domain: (0..function.num_inputs()).collect(),
        function,
        oracle,
        program: None,
        schedule,
    })
}

/// The function a built-in case is tied to, if any.
pub fn builtin_function(name: &str) -> Option<Result<BooleanFunction>> {
    match name {
        "grover-or4" => Some(BooleanFunction::named(Family::Or, 4).map_err(Into::into)),
        "parity-2-discrete" => Some(BooleanFunction::named(Family::Parity, 2).map_err(Into::into)),
        _ => None,
    }
}

/// Resolves `--schedule`: a built-in name, or a program / schedule JSON file
/// run against the standard oracle for `function` with `workspace` index
/// copies and the uniform initial state.
pub fn resolve(
    schedule: &str,
    function: Option<BooleanFunction>,
    workspace: usize,
    m: usize,
) -> Result<CaseStudy> {
    if workspace == 0 {
        return Err(CliError::Config("workspace must be >= 1".into()));
    }
    let require = |what: &str| {
        function
            .clone()
            .ok_or_else(|| CliError::Config(format!("{what} needs --function/--n or --function-file")))
    };
    let builtin_fixed = |name: &str| -> Result<BooleanFunction> {
        let fixed = builtin_function(name).expect("fixed-function case")?;
        if let Some(f) = &function {
            if f != &fixed {
                return Err(CliError::Config(format!(
                    "{name} is fixed to its own function; drop --function"
                )));
            }
        }
        if workspace != 1 {
            return Err(CliError::Config(format!("{name} uses workspace 1")));
        }
        Ok(fixed)
    };
    match schedule {
        "grover-or4" => {
            builtin_fixed(schedule)?;
            grover_or4(m)
        }
        "parity-2-discrete" => {
            builtin_fixed(schedule)?;
            parity_2_discrete(m)
        }
        "driver-only-null" => {
            no_fraction(schedule, m)?;
            driver_only_null(require(schedule)?, workspace)
        }
        path => {
            let path = Path::new(path);
            if !path.exists() {
                return Err(CliError::Config(format!(
                    "--schedule {}: neither a built-in case ({}) nor an existing file",
                    path.display(),
                    BUILTIN_NAMES.join(", ")
                )));
            }
            let f = require("a schedule file")?;
            let name = path.display().to_string();
            match crate::json::read::<ScheduleSource>(path)? {
                ScheduleSource::Program(steps) => {
                    let initial = uniform_index_state(f.n_bits(), workspace);
                    let domain = (0..f.num_inputs()).collect();
                    program_case(&name, f, workspace, steps_to_program(&steps)?, m, initial, domain)
                }
                ScheduleSource::Schedule(file) => {
                    no_fraction(&name, m)?;
                    let oracle = HamiltonianOracle::standard_query(f.n_bits(), workspace)?;
                    let schedule = file.to_schedule()?;
                    if schedule.dim() != oracle.dim() {
                        return Err(CliError::Config(format!(
                            "schedule dim {} does not match N·K = {}",
                            schedule.dim(),
                            oracle.dim()
                        )));
                    }
                    Ok(CaseStudy {
                        name,
                        initial_state: uniform_index_state(f.n_bits(), workspace),
                        domain: (0..f.num_inputs()).collect(),
                        function: f,
                        oracle,
                        program: None,
                        schedule,
                    })
                }
            }
        }
    }
}

fn no_fraction(name: &str, m: usize) -> Result<()> {
    if m != 1 {
        return Err(CliError::Config(format!(
            "--fractional-m applies to query programs; {name} is a raw schedule"
        )));
    }
    Ok(())
}
