mod common;

use common::power_norm;
use hamadv_core::adversary::{build_gamma, AdversaryMatrix, Mode, Rule};
use hamadv_core::boolfn::{differing_indices, BooleanFunction, Family};
use hamadv_core::RealMatrix;
use proptest::prelude::*;

/// Characteristic polynomial coefficients by Faddeev-LeVerrier, highest
/// degree first.
fn char_poly(a: &RealMatrix) -> Vec<f64> {
    let n = a.nrows();
    let mut coeffs = vec![1.0];
    let mut m = RealMatrix::zeros(n, n);
    let id = RealMatrix::identity(n, n);
    for k in 1..=n {
        m = a * &m + &id * coeffs[k - 1];
        let c = -(a * &m).trace() / k as f64;
        coeffs.push(c);
    }
    coeffs
}

#[test]
fn parity2_char_poly_roots() {
    let f = BooleanFunction::named(Family::Parity, 2).unwrap();
    let g = build_gamma(&f, &Rule::MinHammingPairs).unwrap();
    // 4-cycle: λ⁴ - 4λ²
    let poly = char_poly(g.gamma());
    let expected = [1.0, 0.0, -4.0, 0.0, 0.0];
    for (a, b) in poly.iter().zip(expected) {
        assert!((a - b).abs() < 1e-12, "{poly:?}");
    }
    let r = g.spectral_report().unwrap();
    assert!((r.lambda_gamma - 2.0).abs() < 1e-12);
    for j in 1..=2 {
        // two disjoint edges: λ⁴ - 2λ² + 1 = (λ² - 1)²
        let sub = char_poly(&g.gamma_sub(j).unwrap());
        let expected = [1.0, 0.0, -2.0, 0.0, 1.0];
        for (a, b) in sub.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((r.lambda_gamma_j[j - 1] - 1.0).abs() < 1e-12);
    }
    assert!((r.bound_ratio - 2.0).abs() < 1e-12);
}

#[test]
fn or2_star_closed_form() {
    let f = BooleanFunction::named(Family::Or, 2).unwrap();
    let g = AdversaryMatrix::from_entries(&f, Mode::NonNegative, &[(0, 1, 1.0), (0, 2, 1.0)]).unwrap();
    // star with two leaves: (√2, 1, 1, 0) is an eigenvector for √2
    let s = 2.0_f64.sqrt();
    let v = nalgebra::DVector::from_vec(vec![s, 1.0, 1.0, 0.0]);
    let gv = g.gamma() * &v;
    assert!((gv - &v * s).norm() < 1e-14);
    let r = g.spectral_report().unwrap();
    assert!((r.lambda_gamma - s).abs() < 1e-12);
    assert!((r.lambda_gamma_j[0] - 1.0).abs() < 1e-12);
    assert!((r.lambda_gamma_j[1] - 1.0).abs() < 1e-12);
    assert!((r.bound_ratio - s).abs() < 1e-12);
    // δ ∝ v
    let unit = &v / v.norm();
    assert!((&r.delta - unit).norm() < 1e-12);
}

#[test]
fn parity2_single_negated_edge() {
    // Negating one edge of the 4-cycle gives an unbalanced signed cycle,
    // which is not a diag(±1) conjugate of the original: its characteristic
    // polynomial is (λ² - 2)², so λ(Γ) drops to √2.
    let f = BooleanFunction::named(Family::Parity, 2).unwrap();
    let g = build_gamma(&f, &Rule::MinHammingPairs).unwrap();
    let mut gamma = g.gamma().clone();
    gamma[(0, 1)] = -1.0;
    gamma[(1, 0)] = -1.0;
    let signed = AdversaryMatrix::validate(gamma, &f, Mode::General).unwrap();
    let poly = char_poly(signed.gamma());
    for (a, b) in poly.iter().zip([1.0, 0.0, -4.0, 0.0, 4.0]) {
        assert!((a - b).abs() < 1e-12, "{poly:?}");
    }
    let r = signed.spectral_report().unwrap();
    let s = 2.0_f64.sqrt();
    assert!((r.lambda_gamma - s).abs() < 1e-12);
    assert!((r.bound_ratio - s).abs() < 1e-12);
    assert!((r.w0.abs() - s).abs() < 1e-12);
}

#[test]
fn parity2_signature_conjugation() {
    // diag(-1, 1, 1, 1) negates both edges at 00.
    let f = BooleanFunction::named(Family::Parity, 2).unwrap();
    let g = build_gamma(&f, &Rule::MinHammingPairs).unwrap();
    let flipped = g.conjugate_signs(&[true, false, false, false]).unwrap();
    assert_eq!(flipped.gamma()[(0, 1)], -1.0);
    assert_eq!(flipped.gamma()[(0, 2)], -1.0);
    let r = flipped.spectral_report().unwrap();
    assert!((r.lambda_gamma - 2.0).abs() < 1e-12);
    assert!((r.bound_ratio - 2.0).abs() < 1e-12);
    assert!((r.w0 - 2.0).abs() < 1e-12);
    let poly = char_poly(flipped.gamma());
    for (a, b) in poly.iter().zip([1.0, 0.0, -4.0, 0.0, 0.0]) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn uniform_constructions_match_power_iteration() {
    for n in 2..=8 {
        let parity = BooleanFunction::named(Family::Parity, n).unwrap();
        let g = build_gamma(&parity, &Rule::MinHammingPairs).unwrap();
        let r = g.spectral_report().unwrap();
        assert!((r.bound_ratio - n as f64).abs() < 1e-9, "parity n={n}");
        assert!((power_norm(g.gamma(), 400) - r.lambda_gamma).abs() < 1e-9);

        let or = BooleanFunction::named(Family::Or, n).unwrap();
        let g = build_gamma(&or, &Rule::MinHammingPairs).unwrap();
        // star: 0^N paired with every weight-1 input
        assert_eq!(g.entries().len(), n);
        assert!(g.entries().iter().all(|&(x, y, _)| x == 0 && y.count_ones() == 1));
        let r = g.spectral_report().unwrap();
        assert!((r.bound_ratio - (n as f64).sqrt()).abs() < 1e-9, "or n={n}");
        assert!((power_norm(g.gamma(), 50) - r.lambda_gamma).abs() < 1e-9);
    }
}

fn arb_weighted_gamma() -> impl Strategy<Value = (AdversaryMatrix, Vec<bool>)> {
    (1usize..=4, prop::sample::select(vec![Family::Or, Family::And, Family::Parity, Family::Majority]))
        .prop_filter("majority needs odd n", |(n, fam)| *fam != Family::Majority || n % 2 == 1)
        .prop_flat_map(|(n, fam)| {
            let f = BooleanFunction::named(fam, n).unwrap();
            let pairs = f.differing_pairs();
            let k = pairs.len();
            (
                Just(f),
                Just(pairs),
                prop::collection::vec(0.0f64..2.0, k),
                prop::collection::vec(any::<bool>(), 1usize << n),
            )
        })
        .prop_filter_map("nonzero", |(f, pairs, weights, flips)| {
            let entries: Vec<_> = pairs
                .iter()
                .zip(&weights)
                .map(|(&(x, y), &w)| (x, y, w))
                .collect();
            let g = AdversaryMatrix::from_entries(&f, Mode::NonNegative, &entries).ok()?;
            if g.entries().iter().map(|e| e.2).sum::<f64>() < 1e-3 {
                return None;
            }
            Some((g, flips))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scale_invariance((g, _) in arb_weighted_gamma(), c in 0.01f64..100.0) {
        let a = g.spectral_report().unwrap();
        let b = g.scaled(c).unwrap().spectral_report().unwrap();
        prop_assert!((a.bound_ratio - b.bound_ratio).abs() < 1e-9);
    }

    #[test]
    fn entrywise_domination((g, _) in arb_weighted_gamma()) {
        let r = g.spectral_report().unwrap();
        for l in &r.lambda_gamma_j {
            prop_assert!(*l <= r.lambda_gamma + 1e-12);
        }
        prop_assert!(r.bound_ratio >= 1.0 - 1e-12);
    }

    #[test]
    fn sub_matrices_reconstruct_gamma((g, _) in arb_weighted_gamma()) {
        let n = g.n_bits();
        let subs: Vec<_> = (1..=n).map(|j| g.gamma_sub(j).unwrap()).collect();
        for (x, y, w) in g.entries() {
            let idx = differing_indices(x, y, n).unwrap();
            prop_assert!(!idx.is_empty());
            for j in idx {
                prop_assert_eq!(subs[j - 1][(x, y)], w);
            }
        }
        for s in &subs {
            prop_assert_eq!(s, &s.transpose());
        }
    }

    #[test]
    fn sign_flip_invariance((g, flips) in arb_weighted_gamma()) {
        let a = g.spectral_report().unwrap();
        let flipped = g.conjugate_signs(&flips).unwrap();
        prop_assert_eq!(flipped.mode(), Mode::General);
        let b = flipped.spectral_report().unwrap();
        prop_assert!((a.lambda_gamma - b.lambda_gamma).abs() < 1e-9);
        for (x, y) in a.lambda_gamma_j.iter().zip(&b.lambda_gamma_j) {
            prop_assert!((x - y).abs() < 1e-9);
        }
        prop_assert!((b.w0.abs() - b.lambda_gamma).abs() < 1e-9);
    }

    #[test]
    fn gram_cross_check((g, flips) in arb_weighted_gamma()) {
        for m in [g.clone(), g.conjugate_signs(&flips).unwrap()] {
            let r = m.spectral_report().unwrap();
            let gram = m.gamma().transpose() * m.gamma();
            let top = gram.symmetric_eigenvalues().max();
            prop_assert!((r.lambda_gamma * r.lambda_gamma - top).abs() < 1e-9);
        }
    }

    #[test]
    fn report_invariants((g, flips) in arb_weighted_gamma()) {
        for m in [g.clone(), g.conjugate_signs(&flips).unwrap()] {
            let r = m.spectral_report().unwrap();
            prop_assert!((r.delta.norm() - 1.0).abs() < 1e-12);
            prop_assert!((r.w0.abs() - r.lambda_gamma).abs() < 1e-9);
            prop_assert!((r.bound_ratio * r.max_lambda_sub() - r.lambda_gamma).abs() < 1e-9);
            let first = r.delta.iter().find(|v| v.abs() > 1e-12).unwrap();
            prop_assert!(*first > 0.0);
        }
    }

    #[test]
    fn differing_indices_symmetric(n in 1usize..=10, a in any::<u32>(), b in any::<u32>()) {
        let mask = (1u32 << n) - 1;
        let (x, y) = ((a & mask) as usize, (b & mask) as usize);
        let xy = differing_indices(x, y, n).unwrap();
        prop_assert_eq!(&xy, &differing_indices(y, x, n).unwrap());
        prop_assert_eq!(xy.len() as u32, (x ^ y).count_ones());
    }
}
