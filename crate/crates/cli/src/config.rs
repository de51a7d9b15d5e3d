//! Experiment configuration and its provenance hash.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use hamadv_core::adversary::{Mode, OptimizerSettings};
use hamadv_core::boolfn::{BooleanFunction, Family};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaRule {
    MinHamming,
    AllDiffering,
    Optimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Nonneg,
    General,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Nonneg => Mode::NonNegative,
            ModeArg::General => Mode::General,
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args, Serialize)]
pub struct ExperimentConfig {
    /// Named family: or, and, parity, majority, constant0
    #[arg(long)]
    #[serde(serialize_with = "family_name")]
    pub function: Option<Family>,
    /// Input length for --function
    #[arg(long)]
    pub n: Option<usize>,
    /// Truth-table JSON {"n_bits", "table"}
    #[arg(long, conflicts_with_all = ["function", "n"])]
    pub function_file: Option<PathBuf>,
    /// Weight placement rule
    #[arg(long, value_enum)]
    pub gamma: Option<GammaRule>,
    /// Adversary matrix JSON {"n_bits", "mode", "entries"}
    #[arg(long, conflicts_with = "gamma")]
    pub gamma_file: Option<PathBuf>,
    /// Sign mode for rule-built and optimized matrices
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Built-in case (grover-or4, parity-2-discrete, driver-only-null) or a
    /// program / schedule JSON file
    #[arg(long)]
    pub schedule: Option<String>,
    /// Split every query into M fractional segments
    #[arg(long, default_value_t = 1)]
    pub fractional_m: usize,
    /// Allowed error probability, in [0, 1/2)
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub epsilon: f64,
    /// Trajectory samples per query unit of raw time
    #[arg(long, default_value_t = 200)]
    pub samples_per_unit: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Optimizer iterations
    #[arg(long, default_value_t = 500)]
    pub iterations: usize,
    /// Optimizer initial step
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    /// Workspace dimension K for file schedules and driver-only-null
    #[arg(long, default_value_t = 1)]
    pub workspace: usize,
    /// Also write the per-pair inner-product CSV (verify)
    #[arg(long)]
    pub pair_csv: bool,

    /// Worker threads (default: all cores); does not affect results
    #[arg(long)]
    #[serde(skip)]
    pub threads: Option<usize>,
    #[arg(long, default_value = "hamadv-out")]
    #[serde(skip)]
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            function: None,
            n: None,
            function_file: None,
            gamma: None,
            gamma_file: None,
            mode: None,
            schedule: None,
            fractional_m: 1,
            epsilon: 1.0 / 3.0,
            samples_per_unit: 200,
            seed: 0,
            iterations: 500,
            step: 0.1,
            workspace: 1,
            pair_csv: false,
            threads: None,
            out_dir: PathBuf::from("hamadv-out"),
        }
    }
}

fn family_name<S: serde::Serializer>(f: &Option<Family>, s: S) -> Result<S::Ok, S::Error> {
    match f {
        Some(f) => s.serialize_some(f.name()),
        None => s.serialize_none(),
    }
}

fn hash_file(h: &mut Sha256, path: &Path) -> Result<()> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    h.update((bytes.len() as u64).to_le_bytes());
    h.update(&bytes);
    Ok(())
}

impl ExperimentConfig {
    /// The explicitly configured function, if any.
    pub fn function(&self) -> Result<Option<BooleanFunction>> {
        match (&self.function_file, self.function, self.n) {
            (Some(path), _, _) => crate::formats::load_function(path).map(Some),
            (None, Some(family), Some(n)) => Ok(Some(BooleanFunction::named(family, n)?)),
            (None, Some(_), None) => Err(CliError::Config("--function needs --n".into())),
            (None, None, Some(_)) => Err(CliError::Config("--n needs --function".into())),
            (None, None, None) => Ok(None),
        }
    }

    pub fn optimizer(&self) -> OptimizerSettings {
        OptimizerSettings {
            iterations: self.iterations,
            step: self.step,
            seed: self.seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..0.5).contains(&self.epsilon) {
            return Err(CliError::Config(format!(
                "--epsilon must lie in [0, 1/2), got {}",
                self.epsilon
            )));
        }
        if self.fractional_m == 0 {
            return Err(CliError::Config("--fractional-m must be >= 1".into()));
        }
        if self.samples_per_unit == 0 {
            return Err(CliError::Config("--samples-per-unit must be >= 1".into()));
        }
        if self.threads == Some(0) {
            return Err(CliError::Config("--threads must be >= 1".into()));
        }
        Ok(())
    }

    /// SHA-256 over the command, every result-affecting setting and the
    /// bytes of every referenced input file. Output location and thread
    /// count are excluded.
    pub fn hash(&self, command: &str) -> Result<String> {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        h.update([0]);
        h.update(crate::json::to_string(self).as_bytes());
        if let Some(p) = &self.function_file {
            hash_file(&mut h, p)?;
        }
        if let Some(p) = &self.gamma_file {
            hash_file(&mut h, p)?;
        }
        if let Some(s) = &self.schedule {
            let p = Path::new(s);
            if !crate::cases::BUILTIN_NAMES.contains(&s.as_str()) && p.is_file() {
                hash_file(&mut h, p)?;
            }
        }
        let digest = h.finalize();
        Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_ignores_output_location_and_threads() {
        let a = ExperimentConfig::default();
        let mut b = a.clone();
        b.out_dir = "elsewhere".into();
        b.threads = Some(3);
        assert_eq!(a.hash("bound").unwrap(), b.hash("bound").unwrap());
        b.seed = 1;
        assert_ne!(a.hash("bound").unwrap(), b.hash("bound").unwrap());
        assert_ne!(a.hash("bound").unwrap(), a.hash("verify").unwrap());
        assert_eq!(a.hash("bound").unwrap().len(), 64);
    }

    #[test]
    fn epsilon_range() {
        let mut c = ExperimentConfig::default();
        assert!(c.validate().is_ok());
        c.epsilon = 0.5;
        assert!(c.validate().is_err());
        c.epsilon = 0.0;
        assert!(c.validate().is_ok());
    }
}
