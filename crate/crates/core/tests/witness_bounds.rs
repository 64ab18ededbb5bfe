use quotcoh::witness::{build_bumps, forced_levels, interval, lift_obstruction, verify_bounds, BumpProfile};

#[test]
fn chain_rule_is_exact_on_a_shared_grid() {
    let b = build_bumps(&[2, 3, 4, 5], 3, 2001).unwrap();
    let xs = b.profile_grid();
    for &k in &b.k_range {
        let ts = b.grid(k);
        for m in 0..=3 {
            let factor = (-((k * k) as f64)).exp() * 2f64.powi((2 * k as usize * m) as i32);
            for (&x, &t) in xs.iter().zip(&ts) {
                let direct = b.f_derivative(k, m, t);
                let via_profile = factor * b.profile.derivative(m, x);
                assert!((direct - via_profile).abs() <= 1e-9 * via_profile.abs().max(f64::MIN_POSITIVE) + 1e-300);
            }
        }
    }
}

#[test]
fn bound_is_tight_at_k5_m0() {
    let b = build_bumps(&[5], 0, 10_001).unwrap();
    let r = verify_bounds(&b).unwrap();
    let row = &r.rows[0];
    let phi_sup = r.profile_sups[0];
    // Grid contains x = 1/2 where φ attains its maximum e^{-4}.
    assert_eq!(phi_sup, BumpProfile::new(0).value(0.5));
    assert!((row.sup_f - (-25.0f64).exp() * phi_sup).abs() <= 1e-12 * row.sup_f);
    assert!((row.sup_f - row.bound_f).abs() <= 1e-9 * row.bound_f);
}

#[test]
fn first_derivative_sups_decrease_for_k_2_to_6() {
    let b = build_bumps(&[2, 3, 4, 5, 6], 1, 10_001).unwrap();
    let r = verify_bounds(&b).unwrap();
    let sups: Vec<f64> = r.rows.iter().filter(|row| row.m == 1).map(|row| row.sup_f).collect();
    assert!(sups.windows(2).all(|w| w[1] < w[0]), "{sups:?}");
    assert!(r.monotone[1].decreasing);
}

#[test]
fn fourth_derivative_sup_grows_from_k2_to_k3() {
    // e^{-(2k+1)} 2^{2m} > 1 for k = 2, m = 4: the sequence is only eventually decreasing.
    let b = build_bumps(&[2, 3, 4, 5, 6, 7, 8], 4, 10_001).unwrap();
    let r = verify_bounds(&b).unwrap();
    assert_eq!(r.monotone[4].first_increase, Some((2, 3)));
    assert_eq!(r.monotone[4].decreasing_from, Some(3));
    for m in 0..4 {
        assert!(r.monotone[m].decreasing, "m = {m}");
    }
}

#[test]
fn forced_levels_equal_k() {
    let b = build_bumps(&[1, 2, 3, 4, 5, 6, 7, 8], 0, 501).unwrap();
    for f in forced_levels(&b) {
        assert_eq!(f.level, Some(f.k as i32));
        assert!(f.positive_samples > 0);
    }
    assert!(lift_obstruction(&b));
    assert!(b.intervals_disjoint());
    for k in 1..40u32 {
        assert!(interval(k + 1).1 < interval(k).0);
    }
}
