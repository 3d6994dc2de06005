//! Property tests for the geometric invariants: symmetry laws of the
//! rotation number and signed area, resolution independence, word-calculus
//! invariants, surgery bookkeeping, and document round trips.

use proptest::prelude::*;

use whitney_graustein::legendrian::{
    lift, rot_from_cusps, scan_cusps, CuspOrientation, CuspWord, Side,
};
use whitney_graustein::moves::{cancel_cusp_pair, normalize_area, reduce_word, standard_curve};
use whitney_graustein::sampling::{random_band_limited, random_zero_area_generic};
use whitney_graustein::{
    interpolate_area_projected, verify, CircleDiffeo, PlanarClosedCurve, ToleranceConfig,
};

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// Test-side crossing-count oracle: signed count of `y'` sign changes with
/// `x' > 0`, minus-to-plus counted positively. Independent of the cusp
/// classifier.
fn crossing_count(curve: &PlanarClosedCurve) -> i64 {
    let m = 8 * curve.n();
    let mut count = 0i64;
    let mut prev = curve.derivative(0.0).1;
    for k in 1..=m {
        let s = std::f64::consts::TAU * k as f64 / m as f64;
        let cur = curve.derivative(s).1;
        if prev < 0.0 && cur > 0.0 {
            // Zero of y' in between; classify by x' there.
            let mid = std::f64::consts::TAU * (k as f64 - 0.5) / m as f64;
            if curve.derivative(mid).0 > 0.0 {
                count += 1;
            }
        } else if prev > 0.0 && cur < 0.0 {
            let mid = std::f64::consts::TAU * (k as f64 - 0.5) / m as f64;
            if curve.derivative(mid).0 > 0.0 {
                count -= 1;
            }
        }
        prev = cur;
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Rotation number is invariant under reparametrization and scaling and
    /// negates under the y-axis mirror; the same for sample reversal together
    /// with the area laws.
    #[test]
    fn symmetry_laws_hold_on_random_curves(seed in 0u64..5000, offset in -3.0f64..3.0, lambda in 0.25f64..4.0) {
        let cfg = cfg();
        let curve = random_band_limited(seed, 192, 4, &cfg).unwrap();
        let rot = curve.rotation_number(&cfg).unwrap();
        let area = curve.signed_area();

        let shifted = curve.reparametrize(&CircleDiffeo::rotation(192, offset)).unwrap();
        prop_assert_eq!(shifted.rotation_number(&cfg).unwrap(), rot);
        prop_assert!((shifted.signed_area() - area).abs() < 1e-7);

        let scaled = curve.scale(lambda).unwrap();
        prop_assert_eq!(scaled.rotation_number(&cfg).unwrap(), rot);
        prop_assert!((scaled.signed_area() - lambda * lambda * area).abs() < 1e-7 * lambda * lambda);

        let mirrored = curve.mirror_y();
        prop_assert_eq!(mirrored.rotation_number(&cfg).unwrap(), -rot);
        prop_assert!((mirrored.signed_area() + area).abs() < 1e-9);

        let reversed = curve.reverse_orientation();
        prop_assert_eq!(reversed.rotation_number(&cfg).unwrap(), -rot);
        prop_assert!((reversed.signed_area() + area).abs() < 1e-8);
    }

    /// Doubling the sample count never changes the rotation number.
    #[test]
    fn doubling_resolution_is_rotation_stable(seed in 0u64..5000) {
        let cfg = cfg();
        let curve = random_band_limited(seed, 128, 4, &cfg).unwrap();
        let rot = curve.rotation_number(&cfg).unwrap();
        let doubled = curve.resample(256).unwrap();
        prop_assert_eq!(doubled.rotation_number(&cfg).unwrap(), rot);
    }

    /// Word reduction preserves the invariant and lands in a normal form,
    /// with letters determined by the invariant alone.
    #[test]
    fn reduction_normal_form(letters in prop::collection::vec(prop::bool::ANY, 1..=10), right_first in prop::bool::ANY) {
        let letters: Vec<CuspOrientation> = letters
            .into_iter()
            .flat_map(|up| {
                // Duplicate to keep the length even.
                let l = if up { CuspOrientation::Up } else { CuspOrientation::Down };
                [l, if up { CuspOrientation::Down } else { CuspOrientation::Up }]
            })
            .collect();
        let side = if right_first { Side::Right } else { Side::Left };
        let word = CuspWord::new(letters, side).unwrap();
        let value = word.value();
        let (normal, trace) = reduce_word(&word).unwrap();
        prop_assert_eq!(normal.value(), value);
        prop_assert!(normal.len() >= 2);
        prop_assert!(trace.steps.len() * 2 <= word.len());
        let rendered = normal.to_string();
        match value.signum() {
            0 => prop_assert_eq!(rendered, "+-"),
            1 => prop_assert!(normal.letters().iter().all(|&l| l == CuspOrientation::Down)),
            _ => prop_assert!(normal.letters().iter().all(|&l| l == CuspOrientation::Up)),
        }
    }

    /// The three cusp-count formulas all equal the rotation number, and the
    /// independent crossing-count oracle agrees.
    #[test]
    fn cusp_count_identity(seed in 0u64..2000) {
        let cfg = cfg();
        let curve = random_zero_area_generic(seed, 256, &cfg).unwrap();
        let rot = curve.rotation_number(&cfg).unwrap();
        let word = CuspWord::from_cusps(&scan_cusps(&curve, &cfg).unwrap()).unwrap();
        prop_assert_eq!(rot_from_cusps(&word).unwrap(), rot);
        prop_assert_eq!(crossing_count(&curve), rot);
        let t = word.tally();
        prop_assert_eq!(t.left_down - t.right_up, rot);
        prop_assert_eq!(t.right_down - t.left_up, rot);
    }

    /// Lifting the Lagrangian projection reproduces the Legendrian curve
    /// exactly (the z-translation is pinned by z(0) = z0).
    #[test]
    fn lift_inverts_projection(seed in 0u64..2000) {
        let cfg = cfg();
        let curve = random_zero_area_generic(seed, 192, &cfg).unwrap();
        let gamma = lift(&curve, 0.0, &cfg).unwrap();
        let again = lift(&gamma.lagrangian_projection(), 0.0, &cfg).unwrap();
        prop_assert_eq!(gamma.zs(), again.zs());
    }
}

/// Every admissible (mixed, non-floor) adjacent pair on the corpus cancels to
/// the input word with that pair deleted.
#[test]
fn cancellation_deletes_exactly_the_pair() {
    let cfg = cfg();
    let f8 = PlanarClosedCurve::from_fn(384, |s| (s.cos(), (2.0 * s).sin())).unwrap();
    let mut corpus = vec![f8];
    // Random convex-ish curves mostly carry two cusps; walk seeds until a few
    // multi-cusp specimens show up.
    for seed in 0..60u64 {
        if corpus.len() >= 4 {
            break;
        }
        let Ok(c) = random_zero_area_generic(seed, 384, &cfg) else {
            continue;
        };
        let cusps = scan_cusps(&c, &cfg).unwrap();
        if cusps.len() >= 4 {
            corpus.push(c);
        }
    }
    let mut cancelled = 0;
    for curve in &corpus {
        let cusps = scan_cusps(curve, &cfg).unwrap();
        let m = cusps.len();
        for i in 0..m {
            let j = (i + 1) % m;
            if cusps[i].orientation == cusps[j].orientation {
                continue;
            }
            let Ok((out, _h)) = cancel_cusp_pair(curve, i, &cfg) else {
                continue; // geometrically obstructed pair: allowed
            };
            let got = scan_cusps(&out, &cfg).unwrap();
            assert_eq!(got.len(), m - 2);
            let expected: Vec<(CuspOrientation, Side)> = (0..m)
                .filter(|&k| k != i && k != j)
                .map(|k| (cusps[k].orientation, cusps[k].side))
                .collect();
            let got_word: Vec<(CuspOrientation, Side)> =
                got.iter().map(|c| (c.orientation, c.side)).collect();
            let n = expected.len();
            let cyclic_match = (0..n)
                .any(|r| (0..n).all(|q| expected[q] == got_word[(q + r) % n]));
            assert!(cyclic_match, "cancelled word mismatch");
            cancelled += 1;
        }
    }
    assert!(cancelled >= 3, "too few admissible pairs exercised: {cancelled}");
}

/// Normalizing the area never moves the rotation number; the output area is
/// zero to machine precision (100 seeded curves).
#[test]
fn normalization_post_check() {
    let cfg = cfg();
    for seed in 0..100u64 {
        let curve = random_band_limited(seed, 192, 4, &cfg).unwrap();
        let rot = curve.rotation_number(&cfg).unwrap();
        let (out, _h) = normalize_area(&curve, &cfg).unwrap();
        assert!(out.signed_area().abs() <= cfg.eps_area, "seed {seed}");
        assert_eq!(out.rotation_number(&cfg).unwrap(), rot, "seed {seed}");
    }
}

/// Two parameter-jittered copies of the same standard model interpolate in a
/// single certified segment.
#[test]
fn jittered_standard_copies_interpolate_in_one_segment() {
    let cfg = cfg();
    let std2 = standard_curve(2, 256, &cfg).unwrap();
    let displacement: Vec<f64> = (0..256)
        .map(|i| 0.08 * (std::f64::consts::TAU * i as f64 / 256.0).sin())
        .collect();
    let jittered = std2
        .reparametrize(&CircleDiffeo::from_displacement_samples(displacement).unwrap())
        .unwrap();
    // Restore the exact zero area lost to resampling.
    let w = whitney_graustein::pump::pump_weights(&jittered, |_| 1.0);
    let jittered = whitney_graustein::pump::correct_area_exact(&jittered, &w, 0.0).unwrap();

    let h = interpolate_area_projected(&std2, &jittered, true, &cfg).unwrap();
    assert_eq!(h.segment_count(), 1);
    let report = verify(&h, &std2, &jittered, true, &cfg);
    assert!(report.pass, "{}", report.summary());
}
