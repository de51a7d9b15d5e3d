//! The four subcommands. Each writes its artifacts to the output directory
//! and returns a report plus a pass flag.

use std::path::{Path, PathBuf};

use hamadv_core::adversary::{
    build_gamma, min_time_bound, optimize_weights, AdversaryMatrix, Mode, Rule, SpectralReport,
};
use hamadv_core::boolfn::BooleanFunction;
use hamadv_core::evolve::{
    check_derivative_bound, check_final_distinguishability, evolve_all, inner, output_condition,
    progress_trace, Sampling, Trajectory, MAX_NORM_DRIFT, OVERLAP_TOL,
};
use hamadv_core::oracle::QUERY_UNIT;
use serde_json::{json, Value};

use crate::cases::{self, CaseStudy};
use crate::config::{ExperimentConfig, GammaRule};
use crate::error::{CliError, Result};
use crate::formats::{self, GammaFile, ScheduleFile};

#[derive(Debug, Clone)]
pub struct Outcome {
    pub pass: bool,
    pub report: Value,
    /// One-line human summary.
    pub summary: String,
    pub files: Vec<PathBuf>,
}

fn function_label(cfg: &ExperimentConfig, f: &BooleanFunction) -> String {
    match (cfg.function, &cfg.function_file) {
        (Some(fam), None) => format!("{}_{}", fam.name().to_uppercase(), f.n_bits()),
        (_, Some(path)) => format!("table:{}", path.display()),
        _ => match cfg.schedule.as_deref() {
            Some("grover-or4") => "OR_4".into(),
            Some("parity-2-discrete") => "PARITY_2".into(),
            _ => "custom".into(),
        },
    }
}

/// The configured function, falling back to the one a built-in case fixes.
pub fn resolve_function(cfg: &ExperimentConfig) -> Result<BooleanFunction> {
    if let Some(f) = cfg.function()? {
        return Ok(f);
    }
    cfg.schedule
        .as_deref()
        .and_then(cases::builtin_function)
        .unwrap_or_else(|| Err(CliError::Config("no function: give --function/--n or --function-file".into())))
}

fn with_mode(gamma: AdversaryMatrix, mode: Mode) -> Result<AdversaryMatrix> {
    if gamma.mode() == mode {
        return Ok(gamma);
    }
    Ok(AdversaryMatrix::validate(gamma.gamma().clone(), gamma.function(), mode)?)
}

pub fn resolve_gamma(cfg: &ExperimentConfig, f: &BooleanFunction) -> Result<AdversaryMatrix> {
    let mode = cfg.mode.map(Mode::from);
    if let Some(path) = &cfg.gamma_file {
        let g = formats::load_gamma(path, f)?;
        if let Some(m) = mode.filter(|&m| m != g.mode()) {
            return Err(CliError::Config(format!(
                "--mode {} contradicts the {} mode stored in {}",
                m.name(),
                g.mode().name(),
                path.display()
            )));
        }
        return Ok(g);
    }
    let mode = mode.unwrap_or(Mode::NonNegative);
    match cfg.gamma.unwrap_or(GammaRule::MinHamming) {
        GammaRule::MinHamming => with_mode(build_gamma(f, &Rule::MinHammingPairs)?, mode),
        GammaRule::AllDiffering => with_mode(build_gamma(f, &Rule::AllDifferingPairs)?, mode),
        GammaRule::Optimize => Ok(optimize_weights(f, mode, cfg.optimizer())?),
    }
}

fn gamma_label(cfg: &ExperimentConfig) -> String {
    match (&cfg.gamma_file, cfg.gamma) {
        (Some(p), _) => format!("file:{}", p.display()),
        (None, Some(GammaRule::AllDiffering)) => "all-differing".into(),
        (None, Some(GammaRule::Optimize)) => "optimize".into(),
        (None, _) => "min-hamming".into(),
    }
}

fn time_json(raw: f64) -> Value {
    json!({ "raw": raw, "query_units": raw / QUERY_UNIT })
}

fn spectral_json(r: &SpectralReport) -> Value {
    json!({
        "lambda_gamma": r.lambda_gamma,
        "lambda_gamma_j": r.lambda_gamma_j,
        "max_lambda_gamma_j": r.max_lambda_sub(),
        "bound_ratio": r.bound_ratio,
        "w0": r.w0,
        "delta": r.delta.as_slice(),
    })
}

fn prepare_out_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn header(cfg: &ExperimentConfig, command: &str, f: &BooleanFunction) -> Result<Value> {
    Ok(json!({
        "command": command,
        "config_hash": cfg.hash(command)?,
        "config": cfg,
        "function": { "label": function_label(cfg, f), "n_bits": f.n_bits() },
        "time_unit": {
            "query_unit_raw": QUERY_UNIT,
            "note": "times are raw Hamiltonian time t; query units = t / pi",
        },
    }))
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

/// Spectral bound for the configured function and adversary matrix.
pub fn bound(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.validate()?;
    let f = resolve_function(cfg)?;
    let gamma = resolve_gamma(cfg, &f)?;
    let r = gamma.spectral_report()?;
    let eps = cfg.epsilon;
    let t_min = min_time_bound(&r, eps)?;
    let report = merge(
        header(cfg, "bound", &f)?,
        json!({
            "gamma": { "source": gamma_label(cfg), "mode": gamma.mode().name(), "nonzero_pairs": gamma.entries().len() },
            "spectral": spectral_json(&r),
            "epsilon": eps,
            "output_condition": output_condition(eps)?,
            "min_time_bound": time_json(t_min),
        }),
    );
    prepare_out_dir(&cfg.out_dir)?;
    let path = cfg.out_dir.join("bound_report.json");
    crate::json::write(&path, &report)?;
    Ok(Outcome {
        pass: true,
        summary: format!(
            "{}: bound_ratio = {:.12} (lambda = {:.12}, max lambda_j = {:.12}); T >= {:.12} raw = {:.12} query units at epsilon = {}",
            function_label(cfg, &f),
            r.bound_ratio,
            r.lambda_gamma,
            r.max_lambda_sub(),
            t_min,
            t_min / QUERY_UNIT,
            eps
        ),
        report,
        files: vec![path],
    })
}

fn resolve_case(cfg: &ExperimentConfig) -> Result<CaseStudy> {
    let schedule = cfg
        .schedule
        .as_deref()
        .ok_or_else(|| CliError::Config("--schedule is required".into()))?;
    cases::resolve(schedule, cfg.function()?, cfg.workspace, cfg.fractional_m)
}

/// Evolves the case, checks the progress-measure derivative bound, final
/// distinguishability and the minimum-time bound.
pub fn verify(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.validate()?;
    let case = resolve_case(cfg)?;
    let f = &case.function;
    let gamma = resolve_gamma(cfg, f)?;
    let r = gamma.spectral_report()?;

    // Inputs the promise covers plus any the weights touch.
    let mut inputs = case.domain.clone();
    for (x, y, _) in gamma.entries() {
        inputs.extend([x, y]);
    }
    inputs.sort_unstable();
    inputs.dedup();

    let sampling = Sampling::PerQueryUnit(cfg.samples_per_unit);
    let trajs = evolve_all(&case.oracle, &inputs, &case.schedule, &case.initial_state, sampling)?;
    let trace = progress_trace(&gamma, &r, &case.oracle, &trajs)?;
    let deriv = check_derivative_bound(&trace, &gamma, &r)?;

    let domain_trajs: Vec<_> = trajs
        .iter()
        .filter(|t| case.domain.binary_search(&t.input).is_ok())
        .cloned()
        .collect();
    let dist = check_final_distinguishability(&domain_trajs, f, cfg.epsilon)?;
    // The bound presumes every weighted pair ends up distinguished.
    let support_overlap = support_overlap(&gamma, &trajs);
    let applicable = dist.pass && support_overlap <= dist.threshold + OVERLAP_TOL;
    let t_min = min_time_bound(&r, cfg.epsilon)?;
    let total = case.schedule.total_time();
    let holds = !applicable || total >= t_min;
    let drift = trajs.iter().fold(0.0_f64, |a, t| a.max(t.max_norm_drift));
    let w_final = *trace.w_abs.last().expect("trace has samples");

    let pass = deriv.pass && deriv.analytic_pass && dist.pass && holds && drift <= MAX_NORM_DRIFT;
    let failing: Vec<Value> = dist
        .pairs
        .iter()
        .filter(|p| !p.pass)
        .map(|p| json!([p.x, p.y, p.overlap]))
        .collect();

    let report = merge(
        header(cfg, "verify", f)?,
        json!({
            "schedule": {
                "name": case.name,
                "fractional_m": cfg.fractional_m,
                "segments": case.schedule.segments().len(),
                "total_time": time_json(total),
                "oracle_time": time_json(case.schedule.oracle_time()),
                "samples": deriv.samples,
            },
            "inputs": inputs,
            "domain": case.domain,
            "gamma": { "source": gamma_label(cfg), "mode": gamma.mode().name(), "nonzero_pairs": gamma.entries().len() },
            "spectral": spectral_json(&r),
            "derivative_bound": {
                "pass": deriv.pass,
                "max_slope": deriv.max_slope,
                "max_slope_time": deriv.max_slope_time,
                "cap": deriv.cap,
                "tolerance": deriv.tolerance,
                "analytic_pass": deriv.analytic_pass,
                "analytic_margin": deriv.analytic_margin,
            },
            "distinguishability": {
                "pass": dist.pass,
                "epsilon": dist.epsilon,
                "threshold": dist.threshold,
                "max_overlap": dist.max_overlap,
                "pairs_checked": dist.pairs.len(),
                "failing_pairs": failing,
            },
            "progress": {
                "w_initial": trace.w_abs[0],
                "w_final": w_final,
                "w_final_over_w0": if r.w0 != 0.0 { w_final / r.w0.abs() } else { 0.0 },
            },
            "theorem": {
                "applicable": applicable,
                "max_weighted_pair_overlap": support_overlap,
                "min_time_bound": time_json(t_min),
                "total_time": time_json(total),
                "holds": holds,
            },
            "norm_drift_max": drift,
            "pass": pass,
        }),
    );

    prepare_out_dir(&cfg.out_dir)?;
    let verdict = cfg.out_dir.join("verdict.json");
    crate::json::write(&verdict, &report)?;
    let trace_csv = cfg.out_dir.join("trace.csv");
    formats::write_trace_csv(&trace_csv, &trace)?;
    let mut files = vec![verdict, trace_csv];
    if cfg.pair_csv {
        let p = cfg.out_dir.join("pairs.csv");
        formats::write_pair_csv(&p, &trace)?;
        files.push(p);
    }

    Ok(Outcome {
        pass,
        summary: format!(
            "{} [{}]: {} | max |dw/dt| = {:.6e} (cap {:.6e}) {} | analytic {} | max overlap = {:.6e} (threshold {:.6e}) {} | T = {:.6} raw = {:.6} query units vs bound {:.6} raw {}",
            case.name,
            function_label(cfg, f),
            if pass { "PASS" } else { "FAIL" },
            deriv.max_slope,
            deriv.cap,
            ok(deriv.pass),
            ok(deriv.analytic_pass),
            dist.max_overlap,
            dist.threshold,
            ok(dist.pass),
            total,
            total / QUERY_UNIT,
            t_min,
            if applicable { ok(holds) } else { "n/a" },
        ),
        report,
        files,
    })
}

/// Largest final overlap over the pairs `Γ` weights.
pub fn support_overlap(gamma: &AdversaryMatrix, trajs: &[Trajectory]) -> f64 {
    let state = |x: usize| {
        trajs
            .iter()
            .find(|t| t.input == x)
            .expect("every weighted input was evolved")
            .final_state()
    };
    gamma
        .entries()
        .iter()
        .map(|&(x, y, _)| inner(state(x), state(y)).norm())
        .fold(0.0, f64::max)
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "violated"
    }
}

/// Searches for weights maximizing the bound ratio and writes them out.
pub fn optimize(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.validate()?;
    if cfg.gamma_file.is_some() || cfg.gamma.is_some_and(|g| g != GammaRule::Optimize) {
        return Err(CliError::Config("optimize chooses its own weights; drop --gamma/--gamma-file".into()));
    }
    let f = resolve_function(cfg)?;
    let mode = cfg.mode.map(Mode::from).unwrap_or(Mode::NonNegative);
    let gamma = optimize_weights(&f, mode, cfg.optimizer())?;
    let r = gamma.spectral_report()?;

    let baseline = |rule: Rule| -> Result<Option<f64>> {
        match build_gamma(&f, &rule) {
            Ok(g) => Ok(Some(g.spectral_report()?.bound_ratio)),
            Err(hamadv_core::Error::DegenerateMatrix) => Ok(None),
            Err(e) => Err(e.into()),
        }
    };
    let report = merge(
        header(cfg, "optimize", &f)?,
        json!({
            "mode": mode.name(),
            "settings": { "iterations": cfg.iterations, "step": cfg.step, "seed": cfg.seed },
            "spectral": spectral_json(&r),
            "baselines": {
                "min-hamming": baseline(Rule::MinHammingPairs)?,
                "all-differing": baseline(Rule::AllDifferingPairs)?,
            },
            "min_time_bound": time_json(min_time_bound(&r, cfg.epsilon)?),
            "epsilon": cfg.epsilon,
        }),
    );
    prepare_out_dir(&cfg.out_dir)?;
    let gpath = cfg.out_dir.join("gamma.json");
    crate::json::write(&gpath, &GammaFile::from_matrix(&gamma))?;
    let rpath = cfg.out_dir.join("optimize_report.json");
    crate::json::write(&rpath, &report)?;
    Ok(Outcome {
        pass: true,
        summary: format!(
            "{} ({}): optimized bound_ratio = {:.12} over {} pairs",
            function_label(cfg, &f),
            mode.name(),
            r.bound_ratio,
            gamma.entries().len()
        ),
        report,
        files: vec![gpath, rpath],
    })
}

/// Writes the compiled driver schedule (and the source program, if any).
pub fn export_schedule(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.validate()?;
    let case = resolve_case(cfg)?;
    prepare_out_dir(&cfg.out_dir)?;
    let spath = cfg.out_dir.join("schedule.json");
    crate::json::write(&spath, &ScheduleFile::from_schedule(&case.schedule))?;
    let mut files = vec![spath];
    if let Some(program) = &case.program {
        let p = cfg.out_dir.join("program.json");
        crate::json::write(&p, &formats::program_to_steps(program))?;
        files.push(p);
    }
    let total = case.schedule.total_time();
    let report = merge(
        header(cfg, "export-schedule", &case.function)?,
        json!({
            "schedule": case.name,
            "dim": case.schedule.dim(),
            "segments": case.schedule.segments().len(),
            "total_time": time_json(total),
            "oracle_time": time_json(case.schedule.oracle_time()),
        }),
    );
    Ok(Outcome {
        pass: true,
        summary: format!(
            "{}: {} segments, T = {:.12} raw = {:.12} query units",
            case.name,
            case.schedule.segments().len(),
            total,
            total / QUERY_UNIT
        ),
        report,
        files,
    })
}
