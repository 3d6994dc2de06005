//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Tolerances are pinned here, not configured.

use std::f64::consts::{PI, TAU};

use whitney_graustein::catalog::{catalog, fig2_family};
use whitney_graustein::homotopy::{
    concatenate, interpolate_area_projected, lift_homotopy, plan_whitney_graustein, reverse,
    verify, HomotopyMetadata, Interpolator, RegularHomotopy, Segment,
};
use whitney_graustein::legendrian::{lift, rot_from_cusps, scan_cusps, CuspOrientation, CuspWord, Side};
use whitney_graustein::moves::{cancel_cusp_pair, create_cusp_pair, reduce_word, standard_curve};
use whitney_graustein::sampling::random_zero_area_generic;
use whitney_graustein::{Error, PlanarClosedCurve, ToleranceConfig};

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

/// 1. Rotation numbers of the catalog curves are the exact integers.
#[test]
fn criterion_1_rotation_number_suite() {
    let cfg = cfg();
    let mut ok = true;
    let mut detail = String::new();

    let circle = catalog("circle", 1024, &cfg).unwrap();
    let rot = circle.rotation_number(&cfg).unwrap();
    ok &= rot == 1;
    detail.push_str(&format!("circle={rot} "));

    for k in [-3i64, -2, -1, 1, 2, 3] {
        let c = catalog(&format!("kcircle({k})"), 1024, &cfg).unwrap();
        let rot = c.rotation_number(&cfg).unwrap();
        ok &= rot == k;
        detail.push_str(&format!("kcircle({k})={rot} "));
    }

    let f8 = catalog("figure8", 1024, &cfg).unwrap();
    let rot = f8.rotation_number(&cfg).unwrap();
    ok &= rot == 0;
    detail.push_str(&format!("figure8={rot}"));

    report("1 (rotation numbers)", ok, &detail);
}

/// 2. The symbolic lift oracle for the figure-eight at n = 2048.
#[test]
fn criterion_2_lift_oracle() {
    let cfg = cfg();
    let n = 2048;
    let f8 = catalog("figure8", n, &cfg).unwrap();
    let gamma = lift(&f8, 0.0, &cfg).unwrap();

    let mut worst_z = 0.0f64;
    for i in 0..n {
        let s = TAU * i as f64 / n as f64;
        let want = -(3.0 * s).sin() / 3.0 - s.sin();
        worst_z = worst_z.max((gamma.zs()[i] - want).abs());
    }
    let residual = gamma.legendrian_residual(&cfg);
    let proj = gamma.lagrangian_projection();
    let bit_exact = proj.xs() == f8.xs() && proj.ys() == f8.ys();

    let ok = worst_z <= 1e-8 && residual <= 1e-8 && bit_exact;
    report(
        "2 (lift oracle)",
        ok,
        &format!("max z error {worst_z:.2e}, residual {residual:.2e}, projection bit-exact: {bit_exact}"),
    );
}

/// 3. Cusp suite: the figure-eight's four cusps and the cusp-count
///    identity on 100 seeded random generic zero-area curves.
#[test]
fn criterion_3_cusp_suite() {
    let cfg = cfg();
    let gamma = lift(&catalog("figure8", 2048, &cfg).unwrap(), 0.0, &cfg).unwrap();
    let cusps = gamma.detect_cusps(&cfg).unwrap();

    let mut ok = cusps.len() == 4;
    let expected = [
        (PI / 4.0, Side::Right, CuspOrientation::Down),
        (3.0 * PI / 4.0, Side::Left, CuspOrientation::Up),
        (5.0 * PI / 4.0, Side::Right, CuspOrientation::Up),
        (7.0 * PI / 4.0, Side::Left, CuspOrientation::Down),
    ];
    for (c, (s, side, orient)) in cusps.iter().zip(expected) {
        ok &= (c.s - s).abs() <= 1e-6 && c.side == side && c.orientation == orient;
    }
    let word = CuspWord::from_cusps(&cusps).unwrap();
    ok &= word.to_string() == "-++-";
    let t = word.tally();
    ok &= t.left_down - t.right_up == 0
        && t.right_down - t.left_up == 0
        && (t.down() - t.up()) / 2 == 0
        && rot_from_cusps(&word).unwrap() == 0;

    let mut checked = 0;
    for seed in 0..100u64 {
        let c = random_zero_area_generic(seed, 384, &cfg).unwrap();
        let g = lift(&c, 0.0, &cfg).unwrap();
        let w = CuspWord::from_cusps(&g.detect_cusps(&cfg).unwrap()).unwrap();
        let t = w.tally();
        let rot = c.rotation_number(&cfg).unwrap();
        let a = t.left_down - t.right_up;
        let b = t.right_down - t.left_up;
        let c2 = (t.down() - t.up()) / 2;
        ok &= a == rot && b == rot && c2 == rot;
        checked += 1;
    }

    report(
        "3 (cusp suite)",
        ok,
        &format!("figure8 word -++-; identity checked on {checked} random curves"),
    );
}

/// 4. The winding of (x', y') on the lift equals the planar rotation number.
#[test]
fn criterion_4_rot_rot() {
    let cfg = cfg();
    let mut ok = true;
    for seed in 0..100u64 {
        let c = random_zero_area_generic(seed, 384, &cfg).unwrap();
        let gamma = lift(&c, 0.0, &cfg).unwrap();
        ok &= gamma.rotation_number(&cfg).unwrap() == c.rotation_number(&cfg).unwrap();
    }
    report("4 (prop rot-rot)", ok, "100 random lifts agree exactly");
}

/// 5. The word reducer terminates in the normal forms on 1000 random words.
#[test]
fn criterion_5_word_reduction() {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let mut ok = true;
    for _ in 0..1000 {
        let half: usize = rng.random_range(1..=10);
        let letters: Vec<CuspOrientation> = (0..2 * half)
            .map(|_| {
                if rng.random_bool(0.5) {
                    CuspOrientation::Up
                } else {
                    CuspOrientation::Down
                }
            })
            .collect();
        let side = if rng.random_bool(0.5) { Side::Left } else { Side::Right };
        let word = CuspWord::new(letters, side).unwrap();
        let v = word.value();
        let (normal, _) = reduce_word(&word).unwrap();
        ok &= normal.value() == v;
        ok &= match v.signum() {
            1 => {
                normal.len() as i64 == 2 * v
                    && normal.letters().iter().all(|&l| l == CuspOrientation::Down)
            }
            -1 => {
                normal.len() as i64 == -2 * v
                    && normal.letters().iter().all(|&l| l == CuspOrientation::Up)
            }
            _ => normal.to_string() == "+-",
        };
    }
    // The worked example: (-,+,+,-) reduces to (+,-).
    let w = CuspWord::new(
        vec![
            CuspOrientation::Down,
            CuspOrientation::Up,
            CuspOrientation::Up,
            CuspOrientation::Down,
        ],
        Side::Right,
    )
    .unwrap();
    let (normal, _) = reduce_word(&w).unwrap();
    ok &= normal.to_string() == "+-";
    report("5 (word reduction)", ok, "1000 random words + (-,+,+,-) example");
}

/// 6. Surgery: cancelling the (π/4, 3π/4) pair on the figure-eight, and
///    a create-then-cancel round trip.
#[test]
fn criterion_6_surgery() {
    let cfg = cfg();
    let f8 = catalog("figure8", 512, &cfg).unwrap();
    let (out, h) = cancel_cusp_pair(&f8, 0, &cfg).unwrap();
    let word = CuspWord::from_cusps(&scan_cusps(&out, &cfg).unwrap()).unwrap();
    let rep = verify(&h, &f8, &out, true, &cfg);
    let mut ok = word.len() == 2
        && word.right_cusp_label() == CuspOrientation::Up
        && rep.pass
        && rep.min_relative_speed >= 1e-4;

    // Round trip on the standard model.
    let std0 = standard_curve(0, 512, &cfg).unwrap();
    let labels = (CuspOrientation::Up, CuspOrientation::Down);
    let (mid, h1) = create_cusp_pair(&std0, (0.9, 1.4), labels, &cfg).unwrap();
    let mid_cusps = scan_cusps(&mid, &cfg).unwrap();
    ok &= mid_cusps.len() == 4;
    let first = (0..4)
        .find(|&k| mid_cusps[k].s > 0.9 && mid_cusps[(k + 1) % 4].s < 1.4)
        .unwrap();
    let (back, h2) = cancel_cusp_pair(&mid, first, &cfg).unwrap();
    let back_word = CuspWord::from_cusps(&scan_cusps(&back, &cfg).unwrap()).unwrap();
    ok &= back_word.to_string() == "+-";
    let round = concatenate(&h1, &h2).unwrap();
    ok &= verify(&round, &std0, &back, true, &cfg).pass;

    report(
        "6 (surgery)",
        ok,
        &format!(
            "figure8 -> word {word}, min speed {:.2e}; round trip restored {back_word}",
            rep.min_relative_speed
        ),
    );
}

/// 7. Standard models for |rot| <= 3 pass their oracles.
#[test]
fn criterion_7_standard_models() {
    let cfg = cfg();
    let mut ok = true;
    let mut detail = String::new();
    for n in -3..=3i64 {
        let c = standard_curve(n, 512, &cfg).unwrap();
        let area = c.signed_area().abs();
        let rot = c.rotation_number(&cfg).unwrap();
        let word = CuspWord::from_cusps(&scan_cusps(&c, &cfg).unwrap()).unwrap();
        let word_ok = match n.signum() {
            0 => word.to_string() == "+-" && word.right_cusp_label() == CuspOrientation::Up,
            1 => word.letters().iter().all(|&l| l == CuspOrientation::Down)
                && word.len() == 2 * n as usize,
            _ => word.letters().iter().all(|&l| l == CuspOrientation::Up)
                && word.len() == 2 * (-n) as usize,
        };
        ok &= area <= 1e-9 && rot == n && word_ok && rot_from_cusps(&word).unwrap() == n;
        if c.name().map(|s| s.contains("alpha")).unwrap_or(false) {
            detail.push_str(&format!("{} ", c.name().unwrap()));
        }
    }
    report(
        "7 (standard models)",
        ok,
        &format!("n in -3..=3; fallback constants: {}", if detail.is_empty() { "none" } else { &detail }),
    );
}

/// 8. Planner end-to-end on a fixed corpus of ten same-rotation pairs.
#[test]
fn criterion_8_planner_corpus() {
    let cfg = cfg();
    let n = 384;
    let corpus: Vec<(String, PlanarClosedCurve, PlanarClosedCurve)> = {
        let circle = catalog("circle", n, &cfg).unwrap();
        let jittered_convex =
            PlanarClosedCurve::from_fn(n, |s| (s.cos() + 0.3 * (2.0 * s).cos(), s.sin()))
                .unwrap();
        let f8 = catalog("figure8", n, &cfg).unwrap();
        let std0 = standard_curve(0, n, &cfg).unwrap();
        let std1 = standard_curve(1, n, &cfg).unwrap();
        let std2 = standard_curve(2, n, &cfg).unwrap();
        let stdm1 = standard_curve(-1, n, &cfg).unwrap();
        let stdm2 = standard_curve(-2, n, &cfg).unwrap();
        let ellipse = PlanarClosedCurve::from_fn(n, |s| (1.5 * s.cos(), 0.8 * s.sin())).unwrap();
        let wobbly2 = PlanarClosedCurve::from_fn(n, |s| {
            (
                (2.0 * s).cos() / 2.0 + s.cos() + 0.05 * (3.0 * s).cos(),
                (2.0 * s).sin() / 2.0 - s.sin() / 2.0 + 0.05 * (4.0 * s).sin(),
            )
        })
        .unwrap();
        let km1 = catalog("kcircle(-1)", n, &cfg).unwrap();
        let km2 = catalog("kcircle(-2)", n, &cfg).unwrap();
        let shifted_m2 = PlanarClosedCurve::from_fn(n, |s| {
            let t = s + 0.37;
            ((-2.0f64 * t).cos() + 0.1 * t.cos(), (-2.0f64 * t).sin())
        })
        .unwrap();
        vec![
            ("circle -> jittered convex".into(), circle.clone(), jittered_convex),
            ("figure8 -> std(0)".into(), f8.clone(), std0.clone()),
            ("std(0) reflected -> std(0)".into(), std0.mirror_y(), std0.clone()),
            ("ellipse -> std(1)".into(), ellipse, std1.clone()),
            ("circle -> std(1)".into(), circle, std1),
            ("wobbly rot 2 -> std(2)".into(), wobbly2, std2.clone()),
            ("kcircle(2) -> std(2)".into(), catalog("kcircle(2)", n, &cfg).unwrap(), std2),
            ("kcircle(-1) -> std(-1)".into(), km1, stdm1),
            ("kcircle(-2) -> std(-2)".into(), km2.clone(), stdm2.clone()),
            ("shifted rot -2 -> kcircle(-2)".into(), shifted_m2, km2),
        ]
    };
    assert_eq!(corpus.len(), 10);

    let mut ok = true;
    for (name, a, b) in &corpus {
        let start = std::time::Instant::now();
        let ra = a.rotation_number(&cfg).unwrap();
        let rb = b.rotation_number(&cfg).unwrap();
        assert_eq!(ra, rb, "corpus pair {name} has mismatched rot");
        match plan_whitney_graustein(a, b, &cfg) {
            Ok(h) => {
                let rep = verify(&h, a, b, false, &cfg);
                let frames_ok = rep.frames >= 64;
                let pair_ok = rep.pass
                    && rep.max_endpoint_deviation <= 1e-6
                    && rep.min_relative_speed >= 1e-4
                    && rep.rot_constant
                    && frames_ok;
                // Zero-area portion after the normalization prefix.
                let (z0, z1) = h.metadata.zero_area_segments.unwrap();
                let sub = h.sub_homotopy(z0, z1).unwrap();
                let sub_rep = verify(&sub, sub.first(), sub.last(), true, &cfg);
                let area_ok = sub_rep.pass && sub_rep.max_frame_area.unwrap_or(1.0) <= 1e-9;
                let elapsed = start.elapsed().as_secs_f64();
                let this_ok = pair_ok && area_ok && elapsed < 60.0;
                println!(
                    "  pair [{name}] rot {ra}: verify {}, zero-area {}, {:.1}s",
                    if pair_ok { "pass" } else { "FAIL" },
                    if area_ok { "pass" } else { "FAIL" },
                    elapsed
                );
                ok &= this_ok;
            }
            Err(e) => {
                println!("  pair [{name}]: planner error {e}");
                ok = false;
            }
        }
    }
    report("8 (planner corpus)", ok, "10 pairs, rot in -2..=2");
}

/// 9. Negative suite: rotation mismatch, the shrinking-loop family, and
///    a seeded speed-zero mutation.
#[test]
fn criterion_9_negative_suite() {
    let cfg = cfg();
    let n = 384;

    // Rotation mismatch refuses to plan.
    let circle = catalog("circle", n, &cfg).unwrap();
    let f8 = catalog("figure8", n, &cfg).unwrap();
    let mismatch = matches!(
        plan_whitney_graustein(&circle, &f8, &cfg),
        Err(Error::RotationMismatch { rot0: 1, rot1: 0 })
    );

    // The shrinking-loop family: every keyframe is regular, but the rotation
    // number jumps 2 -> 1 near the end and the tangent flips at the pinch.
    let frames = 17;
    let keyframes: Vec<PlanarClosedCurve> = (0..frames)
        .map(|j| fig2_family(j as f64 / (frames - 1) as f64, n).unwrap())
        .collect();
    let all_regular = keyframes.iter().all(|k| k.require_regular(&cfg).is_ok());
    let segments = (0..frames - 1)
        .map(|_| Segment::new(Interpolator::StraightLine { area_target: None }))
        .collect();
    let family =
        RegularHomotopy::new(keyframes, segments, HomotopyMetadata::default()).unwrap();
    let first = family.first().clone();
    let last = family.last().clone();
    let rep = verify(&family, &first, &last, false, &cfg);
    let family_fails = !rep.pass && !rep.rot_pass && !rep.tangent_pass;

    // A single-frame speed-zero mutation flips a passing report to fail.
    let std0 = standard_curve(0, n, &cfg).unwrap();
    let h = plan_whitney_graustein(&f8, &std0, &cfg).unwrap();
    let passing = verify(&h, &f8, &std0, false, &cfg);
    let mutated = {
        let mut keyframes = h.keyframes().to_vec();
        let mid = keyframes.len() / 2;
        let mut xs = keyframes[mid].xs().to_vec();
        let mut ys = keyframes[mid].ys().to_vec();
        // Flatten three consecutive samples: the spline speed collapses there.
        xs[10] = xs[9];
        xs[11] = xs[9];
        ys[10] = ys[9];
        ys[11] = ys[9];
        keyframes[mid] = PlanarClosedCurve::try_new(xs, ys).unwrap();
        RegularHomotopy::new(keyframes, h.segments().to_vec(), HomotopyMetadata::default())
            .unwrap()
    };
    let mutated_rep = verify(&mutated, &f8, &std0, false, &cfg);
    let mutation_caught = passing.pass && !mutated_rep.pass;

    let ok = mismatch && all_regular && family_fails && mutation_caught;
    report(
        "9 (negative suite)",
        ok,
        &format!(
            "mismatch: {mismatch}, family slices regular: {all_regular}, family rot/tangent fail: {family_fails}, mutation caught: {mutation_caught}"
        ),
    );
}

/// 10. The known-hard pair: single-segment interpolation between Std(0)
///     and its reflection pinches at (t, s) = (1/2, π/2), yet the planner
///     succeeds through orientation normalization.
#[test]
fn criterion_10_known_hard_interpolation() {
    let cfg = cfg();
    let n = 384;
    let std0 = standard_curve(0, n, &cfg).unwrap();
    let reflected = std0.mirror_y();

    let single_segment = ToleranceConfig {
        retry_budget: 0,
        ..cfg.clone()
    };
    let direct = interpolate_area_projected(&std0, &reflected, true, &single_segment);
    let pinch_seen = match direct {
        Err(Error::Interpolation { t, s, speed }) => {
            let folded = if s > PI { s - PI } else { s };
            (t - 0.5).abs() < 0.1 && (folded - PI / 2.0).abs() < 0.25 && speed < 1e-2
        }
        _ => false,
    };

    let planned = plan_whitney_graustein(&reflected, &std0, &cfg);
    let planner_ok = match &planned {
        Ok(h) => {
            let used_normalization = h
                .metadata
                .trace
                .iter()
                .any(|t| t.contains("normalize_word_orientation"));
            verify(h, &reflected, &std0, false, &cfg).pass && used_normalization
        }
        Err(_) => false,
    };

    // The pipelines also compose: reflected -> std0 -> reflected.
    let round = planned
        .ok()
        .and_then(|h| concatenate(&h, &reverse(&h)).ok())
        .is_some();

    report(
        "10 (known-hard interpolation)",
        pinch_seen && planner_ok && round,
        &format!("pinch detected: {pinch_seen}, planner via orientation move: {planner_ok}"),
    );
}

/// Degree obstruction fuzz: the planner never succeeds across different
/// rotation numbers.
#[test]
fn planner_never_crosses_rotation_classes() {
    let cfg = cfg();
    let mut checked = 0;
    for seed in 0..12u64 {
        let a = random_zero_area_generic(seed, 256, &cfg).unwrap();
        let b = random_zero_area_generic(seed + 100, 256, &cfg).unwrap();
        let ra = a.rotation_number(&cfg).unwrap();
        let rb = b.rotation_number(&cfg).unwrap();
        if ra == rb {
            continue;
        }
        checked += 1;
        match plan_whitney_graustein(&a, &b, &cfg) {
            Err(Error::RotationMismatch { rot0, rot1 }) => {
                assert_eq!((rot0, rot1), (ra, rb));
            }
            Ok(_) => panic!("planner bridged rot {ra} and rot {rb}"),
            Err(other) => panic!("unexpected error {other}"),
        }
    }
    assert!(checked > 0, "fuzz found no mismatched pairs");
}

/// Lifted homotopies satisfy the Legendrian invariants frame by frame.
#[test]
fn lifted_planner_output_is_legendrian_frame_by_frame() {
    let cfg = cfg();
    let n = 384;
    let f8 = catalog("figure8", n, &cfg).unwrap();
    let std0 = standard_curve(0, n, &cfg).unwrap();
    let h = plan_whitney_graustein(&f8, &std0, &cfg).unwrap();
    let (z0, z1) = h.metadata.zero_area_segments.unwrap();
    let sub = h.sub_homotopy(z0, z1).unwrap();
    let small = ToleranceConfig {
        frame_count: 8,
        ..cfg.clone()
    };
    let frames = lift_homotopy(&sub, &small).unwrap();
    assert!(frames.len() >= 8);
    let rot0 = frames[0].1.rotation_number(&cfg).unwrap();
    for (_, gamma) in &frames {
        assert!(gamma.legendrian_residual(&cfg) <= 1e-6 * 10.0);
        assert_eq!(gamma.rotation_number(&cfg).unwrap(), rot0);
    }
}
