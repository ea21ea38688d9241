use num_bigint::BigInt;
use proptest::prelude::*;
use unitdist::bounds::*;
use unitdist::exact::Rational;

fn rat(n: i128, d: i128) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn val(e: &BoundEvaluation) -> Rational {
    e.value.clone().expect("applicable")
}

// Independent oracles: plain BigInt arithmetic, linear scans.
fn theorem_oracle(n: u64) -> u128 {
    let rhs = BigInt::from(29) * BigInt::from(n).pow(4);
    let mut u = 0u64;
    while BigInt::from(4) * BigInt::from(u + 1).pow(3) <= rhs {
        u += 1;
    }
    u as u128
}

fn jensen_oracle(n: u64) -> u128 {
    let (n, mut m) = (n as i128, 0i128);
    while 2 * (m + 1) * (m + 1) - (m + 1) * n <= n * n * n - n * n {
        m += 1;
    }
    (m as u128).min(choose2(n as u64))
}

fn proposition_oracle(n: u64) -> u128 {
    let lhs = |m: u64| {
        let mut degs = vec![(2 * m) / n; n as usize];
        for d in degs.iter_mut().take(((2 * m) % n) as usize) {
            *d += 1;
        }
        let pairs: u64 = degs.iter().map(|d| d * d.saturating_sub(1) / 2).sum();
        4 * m as i64 - 12 * n as i64 + 24 + pairs as i64
    };
    let rhs = (n * n - n) as i64;
    let mut m = 0;
    while m < choose2(n) as u64 && lhs(m + 1) <= rhs {
        m += 1;
    }
    m as u128
}

#[test]
fn crossing_formula_examples() {
    assert_eq!(val(&cr_planar_excess(3, 3)), rat(0, 1));
    assert_eq!(val(&cr_planar_excess(5, 10)), rat(1, 1));
    assert_eq!(val(&cr_planar_excess(6, 9)), rat(0, 1));

    assert_eq!(val(&cr_ackerman(100, 695)), rat(335702375, 290000));
    assert_eq!(val(&cr_ackerman(10, 0)), rat(0, 1));
    let weak = rat(694i128.pow(3), 290000) - rat(3500, 29);
    assert_eq!(val(&cr_ackerman(100, 694)), weak);

    let a = cr_multi_convex(10, 139, 2, BaseFormula::Ackerman);
    let expect = rat(4, 1) * (rat(1, 2) * val(&cr_ackerman(10, 69)) + rat(1, 2) * val(&cr_ackerman(10, 70)));
    assert_eq!(val(&a), expect);
    assert_eq!(val(&cr_multi_convex(3, 4, 2, BaseFormula::PlanarExcess)), rat(0, 1));

    assert_eq!(val(&cr_multi2_even(3, 0)), rat(0, 1));
    assert_eq!(val(&cr_multi2_even(15, 74)), rat(0, 1));
    assert_eq!(val(&cr_multi2_even(22, 144)), rat(48, 1));
    assert!(!cr_multi2_even(22, 143).applicable);

    assert!(cr_multi_general(20, 139, 1).applicable);
    assert!(!cr_multi_general(20, 277, 2).applicable);
    let g = cr_multi_general(10, 1400, 2);
    assert_eq!(g.extra("simple"), Some(&rat(1400i128.pow(3), 5800)));

    assert!(!cr_multi2_large(10, 139).applicable);
    assert_eq!(val(&cr_multi2_large(10, 140)), rat(140i128.pow(3), 5800));
    assert!(!cr_multi2_large(100, 1388).applicable);

    assert_eq!(val(&cr_nonhomotopic_ptt(10, 41)), rat(1681, 240));
    assert!(!cr_nonhomotopic_ptt(10, 40).applicable);
    assert_eq!(val(&cr_nonhomotopic_ptt(2, 9)), rat(81, 48));

    assert_eq!(val(&cr_nonhomotopic_improved(2, 6)), rat(3, 1));
    assert_eq!(val(&cr_nonhomotopic_improved(5, 0)), rat(0, 1));
    assert!(val(&cr_nonhomotopic_improved(10, 200)) > val(&cr_nonhomotopic_ptt(10, 200)));

    assert_eq!(val(&cr_harmonic_simple(3, 3)), rat(0, 1));
    assert_eq!(val(&cr_harmonic_simple(10, 48)), rat(24, 1));
    assert_eq!(val(&cr_harmonic_simple(4, 6)), rat(0, 1));
}

#[test]
fn upper_bound_examples() {
    assert_eq!(u_upper_theorem(15), 71);
    assert_eq!(u_upper_theorem(1), 1);
    assert_eq!(u_upper_theorem(9), 36);
    assert_eq!(u_upper_theorem(10), 41);
    assert_eq!(u_upper_jensen(380), 5326);
    assert_eq!(u_upper_theorem(380), 5327);
    assert_eq!(u_upper_jensen(381), 5347);
    assert_eq!(u_upper_theorem(381), 5345);
    assert_eq!(u_upper_jensen(1), 0);
    assert_eq!(u_upper_proposition(22), 72);
    assert_eq!(u_upper_proposition(29), 108);
    assert_eq!(u_upper_proposition(30), 113);
    assert_eq!(u_upper_schade(15, 33), 38);
    assert_eq!(u_upper_schade(3, 1), 3);
    assert_eq!(u_upper_schade(17, 42), 47);
    assert_eq!(u_upper_degree2(33), 35);
    assert_eq!(u_upper_degree2(102), 104);
}

#[test]
fn upper_bounds_match_oracles() {
    for n in 1..=120 {
        assert_eq!(u_upper_theorem(n), theorem_oracle(n), "theorem n={n}");
        assert_eq!(u_upper_jensen(n), jensen_oracle(n), "jensen n={n}");
        if n >= 3 {
            assert_eq!(u_upper_proposition(n), proposition_oracle(n), "proposition n={n}");
        }
    }
}

#[test]
fn upper_bounds_nondecreasing() {
    for n in 4..=1000 {
        assert!(u_upper_theorem(n) >= u_upper_theorem(n - 1));
        assert!(u_upper_jensen(n) >= u_upper_jensen(n - 1));
        assert!(u_upper_proposition(n) >= u_upper_proposition(n - 1));
    }
}

#[test]
fn table_pipeline() {
    let rows = build_upper_table(&SeedTable::from_pairs([(21, 68)]), 22, 30).unwrap();
    let got: Vec<u128> = rows.iter().map(|r| r.combined).collect();
    assert_eq!(got, vec![72, 77, 82, 87, 92, 97, 102, 108, 113]);
    let r22 = &rows[0];
    assert_eq!((r22.schade_value, r22.degree2_value, r22.proposition_value), (74, 70, 72));

    let rows = build_upper_table(&SeedTable::from_pairs([(14, 33)]), 15, 15).unwrap();
    assert_eq!(rows[0].combined, 38);
    assert_eq!(rows[0].schade_value, 38);
    let rows = build_upper_table(&SeedTable::from_pairs([(2, 1)]), 3, 3).unwrap();
    assert_eq!(rows[0].combined, 3);
    assert_eq!(
        build_upper_table(&SeedTable::from_pairs([(2, 1)]), 5, 6).unwrap_err(),
        BoundsError::MissingSeed(4)
    );
}

#[test]
fn thresholds() {
    assert_eq!(crossover_case2(), 47);
    assert!(!case2_holds(46) && case2_holds(47));
    assert_eq!(crossover_case3(), 380);
    let rep = crossover_theorem_vs_table(&SeedTable::table1_known()).unwrap();
    assert_eq!(rep.value, Some(521));
    assert_eq!(rep.stable_from, Some(521));
    assert_eq!(rep.audit[0].n, 520);
    assert!(rep.audit[0].theorem > rep.audit[0].chain);
    assert!(rep.audit[1].theorem <= rep.audit[1].chain);

    // inflating the seed raises the chain, so the first crossing moves earlier
    let mut weak = SeedTable::table1_known();
    for e in weak.0.values_mut() {
        e.value *= 3;
    }
    let weaker = crossover_theorem_vs_table(&weak).unwrap();
    assert!(weaker.value.unwrap() < 521, "{:?}", weaker.value);
    let mut slight = SeedTable::table1_known();
    slight.0.get_mut(&21).unwrap().value += 5;
    assert!(crossover_theorem_vs_table(&slight).unwrap().value.unwrap() <= 521);
}

#[test]
fn theorem_cases_cover_everything() {
    let rep = validate_theorem1_cases(2000);
    assert!(rep.ok);
    assert_eq!(rep.overlap, (47, 380));
    let g3 = &rep.gap_samples[0];
    assert!(g3.lo > rat(349, 100) && g3.hi < rat(350, 100));
    assert!(rep.gap_samples.iter().all(|g| g.lo > rat(2, 1)));
}

#[test]
fn small_n_report_is_informational() {
    let rep = small_n_comparison(30);
    assert_eq!(rep.rows.len(), 16);
    assert!(rep.first_below_schade_chain.is_some());
}

fn bases() -> impl Strategy<Value = BaseFormula> {
    prop_oneof![
        Just(BaseFormula::PlanarExcess),
        Just(BaseFormula::Ackerman),
        Just(BaseFormula::HarmonicSimple)
    ]
}

proptest! {
    #[test]
    fn multi_convex_k1_is_base(n in 3u64..60, m in 0u64..2000, base in bases()) {
        prop_assert_eq!(cr_multi_convex(n, m, 1, base).value, base.evaluate(n, m).value);
    }

    #[test]
    fn multi_convex_divisible(n in 3u64..60, q in 0u64..500, k in 1u64..8, base in bases()) {
        let m = q * k;
        let lhs = cr_multi_convex(n, m, k, base).value.unwrap();
        let rhs = Rational::from_integer(BigInt::from(k * k)) * base.evaluate(n, q).value.unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theorem_bound_is_tight(n in 1u64..1_000_000) {
        let u = u_upper_theorem(n);
        let lhs = |u: u128| BigInt::from(4) * BigInt::from(u).pow(3);
        let rhs = BigInt::from(29) * BigInt::from(n).pow(4);
        prop_assert!(lhs(u) <= rhs && rhs < lhs(u + 1));
    }
}
