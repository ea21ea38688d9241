use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use unitdist::bounds::{cr_multi2_even, cr_multi2_large, cr_multi_convex, cr_multi_general, BaseFormula};
use unitdist::constructions::{default_catalog, realize_exact, RealizationStatus};
use unitdist::drawings::{
    build_arc_multigraph, check_proposition_inequality, circle_crossing_stats, count_crossings_straightline,
    harmonic_sum, proposition_for_degrees, thicken, AbstractDrawing, CaroWei, StraightLineDrawing,
};
use unitdist::exact::ConstructibleNumber;
use unitdist::udg::{unit_distance_graph, DegreeStats, ExactPoint, Mode, PointSet, UnitDistanceGraph};

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn pt(x: i64, y: i64) -> ExactPoint {
    ExactPoint::from_ratios((x, 1), (y, 1))
}

fn drawing(pts: Vec<ExactPoint>, edges: &[(usize, usize)]) -> StraightLineDrawing {
    StraightLineDrawing::new(PointSet::exact(pts), edges.iter().copied()).unwrap()
}

fn complete(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

// Convex pentagon with integer corners.
fn k5_convex() -> StraightLineDrawing {
    drawing(vec![pt(0, 0), pt(4, 0), pt(5, 3), pt(2, 5), pt(-1, 3)], &complete(5))
}

fn certified_udg(id: &str) -> UnitDistanceGraph {
    let res = realize_exact(default_catalog().get(id).unwrap());
    assert_eq!(res.status, RealizationStatus::ExactCertified);
    res.derived.unwrap()
}

fn unit_triangle() -> UnitDistanceGraph {
    let h = ConstructibleNumber::from_integer(3).sqrt().unwrap().scale(&BigRational::new(1.into(), 2.into()));
    let pts = vec![
        ExactPoint::from_ratios((0, 1), (0, 1)),
        ExactPoint::from_ratios((1, 1), (0, 1)),
        ExactPoint::new(ConstructibleNumber::from_ratio(1, 2), h),
    ];
    unit_distance_graph(&PointSet::exact(pts), &Mode::Exact).unwrap()
}

#[test]
fn small_crossing_counts() {
    let tri = drawing(vec![pt(0, 0), pt(3, 1), pt(1, 4)], &[(0, 1), (1, 2), (0, 2)]);
    assert_eq!(count_crossings_straightline(&tri).unwrap().total, 0);
    let sq = drawing(vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)], &complete(4));
    assert_eq!(count_crossings_straightline(&sq).unwrap().total, 1);
    // in convex position every 4-subset contributes exactly one crossing
    let cr = count_crossings_straightline(&k5_convex()).unwrap();
    assert_eq!(cr.total, 5);
    assert_eq!(cr.per_edge.iter().sum::<u64>(), 10);
}

#[test]
fn harmonic_examples() {
    assert_eq!(harmonic_sum(&[]), int(0));
    assert_eq!(harmonic_sum(&[0, 0, 0]), int(3));
    let sq = drawing(vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)], &complete(4));
    assert_eq!(harmonic_sum(&count_crossings_straightline(&sq).unwrap().per_edge), int(5));
}

#[test]
fn caro_wei_examples() {
    let tri = drawing(vec![pt(0, 0), pt(3, 1), pt(1, 4)], &[(0, 1), (1, 2), (0, 2)]);
    let cr = count_crossings_straightline(&tri).unwrap();
    let cw = CaroWei::new(3, &cr);
    for s in 0..50 {
        assert_eq!(cw.sample(s).len(), 3);
    }
    let sq = drawing(vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)], &complete(4));
    let cw = CaroWei::new(6, &count_crossings_straightline(&sq).unwrap());
    for s in 0..200 {
        assert_eq!(cw.sample(s).len(), 5);
    }
    assert_eq!(cw.sample(7), cw.sample(7));
}

#[test]
fn caro_wei_expectation() {
    let d = drawing(vec![pt(0, 0), pt(7, 1), pt(9, 6), pt(4, 10), pt(-2, 7), pt(3, 4)], &complete(6));
    let cr = count_crossings_straightline(&d).unwrap();
    assert!(cr.total > 0);
    let h: f64 = {
        use num_traits::ToPrimitive;
        harmonic_sum(&cr.per_edge).to_f64().unwrap()
    };
    let trials = 20_000u64;
    let (mean, sd) = CaroWei::new(d.m(), &cr).monte_carlo(trials, 2024);
    assert!(mean >= h - 3.0 * sd, "mean {mean}, harmonic {h}, sd {sd}");
    let se = sd / (trials as f64).sqrt();
    assert!((mean - h).abs() <= 3.0 * se, "mean {mean}, harmonic {h}, se {se}");
}

#[test]
fn thicken_examples() {
    let k5 = k5_convex();
    let a = AbstractDrawing::from_straightline(&k5, &count_crossings_straightline(&k5).unwrap());
    assert_eq!(thicken(&a, 1).unwrap(), a);
    let one = AbstractDrawing::new(4, vec![(0, 2), (1, 3)], [((0, 1), 1)]).unwrap();
    assert_eq!(thicken(&one, 3).unwrap().total_crossings(), 9);
    let t = thicken(&a, 2).unwrap();
    assert_eq!((t.edges.len(), t.total_crossings(), t.max_multiplicity()), (20, 20, 2));
    let b = cr_multi2_even(5, 20);
    assert!(b.applicable);
    assert_eq!(b.value, Some(int(4)));
    assert!(b.value.unwrap() <= int(t.total_crossings() as i64));
}

#[test]
fn arc_multigraph_examples() {
    let h7 = build_arc_multigraph(&certified_udg("n7")).unwrap();
    assert_eq!(h7.arcs.len(), 24);
    assert!(h7.arc_count_is_2m);
    let h15 = build_arc_multigraph(&certified_udg("n15")).unwrap();
    assert_eq!(h15.arcs.len(), 74);
    assert!(h15.max_multiplicity <= 2);
    let tri = build_arc_multigraph(&unit_triangle()).unwrap();
    assert!(!tri.min_degree_ok);
    assert_eq!(tri.arcs.len(), 6);
}

#[test]
fn circle_stats_examples() {
    let pair = unit_distance_graph(&PointSet::exact(vec![pt(0, 0), pt(1, 0)]), &Mode::Exact).unwrap();
    let s = circle_crossing_stats(&pair).unwrap();
    assert_eq!((s.total_points, s.at_vertices), (2, 0));
    let s = circle_crossing_stats(&unit_triangle()).unwrap();
    assert_eq!((s.total_points, s.at_vertices, s.degree_pairs), (6, 3, 3));
    let tangent = unit_distance_graph(&PointSet::exact(vec![pt(0, 0), pt(2, 0)]), &Mode::Exact).unwrap();
    let s = circle_crossing_stats(&tangent).unwrap();
    assert_eq!((s.tangent_pairs, s.total_points, s.crossings), (1, 1, 0));
    let s = circle_crossing_stats(&certified_udg("n15")).unwrap();
    assert!(s.total_points <= 210);
    assert!(s.vertex_identity_holds());
}

#[test]
fn proposition_examples() {
    let g = certified_udg("n15");
    let r = check_proposition_inequality(&g);
    let oracle: i128 = 4 * 37 - 12 * 15 + 24 + g.degree_stats().degrees.iter().map(|&d| (d * (d - 1) / 2) as i128).sum::<i128>();
    assert_eq!((r.lhs, r.rhs, r.m), (210, oracle, 37));
    assert!(r.holds);
    // 146 = 14*7 + 8*6
    let balanced = DegreeStats::from_degrees([vec![7; 14], vec![6; 8]].concat());
    let r = proposition_for_degrees(22, &balanced);
    assert_eq!((r.m, r.lhs, r.rhs, r.holds), (73, 462, 466, false));
    assert!(!check_proposition_inequality(&unit_triangle()).min_degree_ok);
}

#[test]
fn arc_chain_on_certified_catalog() {
    let cat = default_catalog();
    let mut checked = 0;
    for r in &cat.records {
        let res = realize_exact(r);
        let Some(g) = res.derived else { continue };
        if g.degree_stats().min_degree < 3 {
            continue;
        }
        checked += 1;
        let h = build_arc_multigraph(&g).unwrap();
        let (n, m2) = (g.n() as u64, 2 * g.m() as u64);
        assert!(h.arc_count_is_2m, "{}", r.id);
        assert!(h.max_multiplicity <= 2, "{}", r.id);
        assert!(h.stats.total_points <= h.stats.n_squared_minus_n, "{}", r.id);
        assert!(h.stats.vertex_identity_holds(), "{}", r.id);
        let budget = int(h.stats.crossings as i64);
        for b in [
            cr_multi2_even(n, m2),
            cr_multi2_large(n, m2),
            cr_multi_general(n, m2, 2),
            cr_multi_convex(n, m2, 2, BaseFormula::PlanarExcess),
            cr_multi_convex(n, m2, 2, BaseFormula::Ackerman),
        ] {
            if let Some(v) = b.value {
                assert!(v <= budget, "{} {:?}", r.id, b.formula);
            }
        }
    }
    assert!(checked > 0);
}

fn random_drawing() -> impl Strategy<Value = StraightLineDrawing> {
    (3usize..9)
        .prop_flat_map(|n| {
            (
                prop::collection::vec((-40i64..40, -40i64..40), n),
                prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
            )
        })
        .prop_filter_map("degenerate", |(pts, keep)| {
            let n = pts.len();
            let edges: Vec<_> = complete(n).into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
            let d = StraightLineDrawing::new(PointSet::exact(pts.iter().map(|&(x, y)| pt(x, y)).collect()), edges).ok()?;
            count_crossings_straightline(&d).ok().map(|_| d)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn harmonic_at_most_3n_minus_6(d in random_drawing()) {
        let cr = count_crossings_straightline(&d).unwrap();
        prop_assert!(harmonic_sum(&cr.per_edge) <= int(3 * d.n() as i64 - 6));
    }

    #[test]
    fn averaging_chain(d in random_drawing()) {
        prop_assume!(d.m() > 0);
        let cr = count_crossings_straightline(&d).unwrap();
        let m = int(d.m() as i64);
        let h = harmonic_sum(&cr.per_edge);
        let arith = int(cr.per_edge.iter().map(|&x| x as i64 + 1).sum());
        prop_assert!(&m / int(3 * d.n() as i64 - 6) <= &m / &h);
        prop_assert!(&m / &h <= &arith / &m);
        prop_assert_eq!(&arith / &m, (int(2 * cr.total as i64) + &m) / &m);
    }

    #[test]
    fn caro_wei_output_is_crossing_free(d in random_drawing(), seed in any::<u64>()) {
        let cr = count_crossings_straightline(&d).unwrap();
        let kept = CaroWei::new(d.m(), &cr).sample(seed);
        for &(i, j) in &cr.pairs {
            prop_assert!(!(kept.contains(&i) && kept.contains(&j)));
        }
    }

    #[test]
    fn thicken_square_law(d in random_drawing(), k in 1usize..5) {
        let cr = count_crossings_straightline(&d).unwrap();
        let a = AbstractDrawing::from_straightline(&d, &cr);
        prop_assert_eq!(thicken(&a, k).unwrap().total_crossings(), (k * k) as u64 * cr.total);
    }

    // points on a parabola: the path through consecutive points lies on the hull
    #[test]
    fn harmonic_at_least_tree_size(xs in prop::collection::btree_set(-30i64..30, 3..9), keep in prop::collection::vec(any::<bool>(), 36)) {
        let xs: Vec<i64> = xs.into_iter().collect();
        let n = xs.len();
        let pts: Vec<_> = xs.iter().map(|&x| pt(x, x * x)).collect();
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.extend(complete(n).into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e));
        let d = StraightLineDrawing::new(PointSet::exact(pts), edges).unwrap();
        let cr = count_crossings_straightline(&d);
        prop_assume!(cr.is_ok());
        let cr = cr.unwrap();
        for (i, &e) in d.edges().iter().enumerate() {
            if e.1 == e.0 + 1 {
                prop_assert_eq!(cr.per_edge[i], 0);
            }
        }
        prop_assert!(harmonic_sum(&cr.per_edge) >= int(n as i64 - 1));
    }
}
