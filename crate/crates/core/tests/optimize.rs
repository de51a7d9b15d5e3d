use hamadv_core::adversary::{build_gamma, optimize_weights, Mode, OptimizerSettings, Rule};
use hamadv_core::boolfn::{BooleanFunction, Family};

fn settings(seed: u64) -> OptimizerSettings {
    OptimizerSettings {
        iterations: 500,
        step: 0.1,
        seed,
    }
}

#[test]
fn parity2_matches_uniform() {
    let f = BooleanFunction::named(Family::Parity, 2).unwrap();
    let uniform = build_gamma(&f, &Rule::MinHammingPairs).unwrap().spectral_report().unwrap();
    let best = optimize_weights(&f, Mode::NonNegative, settings(0)).unwrap();
    let r = best.spectral_report().unwrap();
    assert!(r.bound_ratio >= uniform.bound_ratio - 1e-6);
    assert!(r.bound_ratio >= 2.0 - 1e-6);
}

#[test]
fn or2_both_modes() {
    let f = BooleanFunction::named(Family::Or, 2).unwrap();
    let nonneg = optimize_weights(&f, Mode::NonNegative, settings(0))
        .unwrap()
        .spectral_report()
        .unwrap();
    assert!(nonneg.bound_ratio >= 2.0_f64.sqrt() - 1e-6);
    let general = optimize_weights(&f, Mode::General, settings(0)).unwrap();
    assert_eq!(general.mode(), Mode::General);
    let general = general.spectral_report().unwrap();
    assert!(general.bound_ratio >= nonneg.bound_ratio - 1e-6);
}

/// Independent check for MAJORITY_3: enumerate star-type weightings (each
/// weight-1 input joined to the weight-2 inputs covering it, with a common
/// weight on a grid) and take the best ratio.
#[test]
fn majority3_reaches_star_enumeration() {
    let f = BooleanFunction::named(Family::Majority, 3).unwrap();
    let mut brute: f64 = 0.0;
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    for &near in &grid {
        for &far in &grid {
            let entries: Vec<_> = f
                .differing_pairs()
                .into_iter()
                .filter_map(|(x, y)| match (x ^ y).count_ones() {
                    1 => Some((x, y, near)),
                    3 => Some((x, y, far)),
                    _ => None,
                })
                .collect();
            if let Ok(g) = build_gamma(&f, &Rule::Custom(entries)) {
                brute = brute.max(g.spectral_report().unwrap().bound_ratio);
            }
        }
    }
    assert!((brute - 2.0).abs() < 1e-9, "{brute}");
    let best = optimize_weights(&f, Mode::NonNegative, settings(0))
        .unwrap()
        .spectral_report()
        .unwrap();
    assert!(best.bound_ratio >= brute - 1e-6);
}

#[test]
fn parity3_matches_cube() {
    let f = BooleanFunction::named(Family::Parity, 3).unwrap();
    let r = optimize_weights(&f, Mode::NonNegative, settings(0))
        .unwrap()
        .spectral_report()
        .unwrap();
    assert!(r.bound_ratio >= 3.0 - 1e-6);
}

#[test]
fn deterministic_under_seed() {
    let f = BooleanFunction::named(Family::Or, 3).unwrap();
    let a = optimize_weights(&f, Mode::General, settings(7)).unwrap();
    let b = optimize_weights(&f, Mode::General, settings(7)).unwrap();
    assert_eq!(a, b);
}
