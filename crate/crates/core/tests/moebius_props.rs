use proptest::prelude::*;
use qfsep::moebius::{
    axis_crossing_gap, busemann_gap, classify, dist_h3, dist_to_geodesic, fixed_points, translation_length,
    wrap_turns, Geodesic3, IsometryClass, MoebiusMap, Point3, ProjPoint, C64,
};

fn c64() -> impl Strategy<Value = C64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| C64::new(re, im))
}

/// Unimodular maps with entries of moderate size.
fn moebius() -> impl Strategy<Value = MoebiusMap> {
    (c64(), c64(), c64()).prop_filter_map("singular", |(a, b, c)| {
        if a.norm() < 0.2 {
            return None;
        }
        // ad - bc = 1
        let d = (C64::new(1.0, 0.0) + b * c) / a;
        MoebiusMap::new(a, b, c, d).ok()
    })
}

fn loxodromic() -> impl Strategy<Value = MoebiusMap> {
    moebius().prop_filter("loxodromic", |m| {
        classify(m).loxodromic().is_some_and(|d| d.lambda > 1.05)
    })
}

fn point3() -> impl Strategy<Value = Point3> {
    (c64(), 0.05f64..5.0).prop_map(|(z, t)| Point3::new(z, t))
}

fn geodesic() -> impl Strategy<Value = Geodesic3> {
    (c64(), c64()).prop_filter_map("coincident", |(x, e)| {
        if (x - e).norm() < 0.1 {
            return None;
        }
        Geodesic3::from_complex(x, e).ok()
    })
}

fn det_residual(m: &MoebiusMap) -> f64 {
    (m.det() - C64::new(1.0, 0.0)).norm()
}

fn point_on(geo: &Geodesic3, s: f64) -> Point3 {
    geo.normalizer().inverse().apply(Point3::new(C64::new(0.0, 0.0), s.exp()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn long_products_stay_unimodular(ms in proptest::collection::vec(moebius(), 64)) {
        // products of conjugates of a rotation stay bounded, so det is meaningful
        let r = MoebiusMap::diagonal(C64::from_polar(1.0, 0.7));
        let p = ms.iter().fold(MoebiusMap::IDENTITY, |acc, g| acc.compose(&r.conjugate_by(g)));
        prop_assert!(det_residual(&p) < 1e-12 * (1.0 + p.a.norm() * p.d.norm()));
    }

    #[test]
    fn translation_length_is_class_function(m in moebius(), g in moebius()) {
        let l = translation_length(&m);
        prop_assert!((translation_length(&m.inverse()) - l).abs() < 1e-10);
        prop_assert!((translation_length(&m.conjugate_by(&g)) - l).abs() < 1e-10 * (1.0 + l));
    }

    #[test]
    fn fixed_points_are_fixed(m in loxodromic()) {
        let f = fixed_points(&m).unwrap();
        prop_assert!(m.apply_proj(f.attracting).chordal(f.attracting) < 1e-9);
        prop_assert!(m.apply_proj(f.repelling).chordal(f.repelling) < 1e-9);
    }

    #[test]
    fn isometries_preserve_distance(m in moebius(), p in point3(), q in point3()) {
        let d = dist_h3(p, q);
        prop_assert!((dist_h3(m.apply(p), m.apply(q)) - d).abs() < 1e-10 * (1.0 + d));
    }

    #[test]
    fn busemann_closed_form_matches_limit(p in point3(), geo in geodesic()) {
        let gap = busemann_gap(p, &geo).value;
        let (x, y) = (point_on(&geo, -15.0), point_on(&geo, 15.0));
        let limit = dist_h3(p, x) + dist_h3(p, y) - dist_h3(x, y);
        prop_assert!((gap - limit).abs() < 1e-5, "{} vs {}", gap, limit);
    }

    #[test]
    fn crossing_gap_is_conjugation_invariant(g in moebius(), a in geodesic(), b in geodesic(), diag in geodesic()) {
        prop_assume!(!a.same_line(&b, 1e-3));
        let Ok(delta) = axis_crossing_gap(&a, &b, &diag) else { return Ok(()) };
        let moved = axis_crossing_gap(&a.image(&g), &b.image(&g), &diag.image(&g)).unwrap();
        prop_assert!((moved - delta).abs() < 1e-9 * (1.0 + delta));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn classification_is_conjugation_invariant(m in loxodromic(), g in moebius()) {
        let (IsometryClass::Hyperbolic(d) | IsometryClass::LoxodromicStrict(d)) = classify(&m) else {
            unreachable!()
        };
        let moved = classify(&m.conjugate_by(&g));
        let e = moved.loxodromic().expect("conjugate of a loxodromic");
        prop_assert_eq!(std::mem::discriminant(&moved), std::mem::discriminant(&classify(&m)));
        prop_assert!((e.lambda - d.lambda).abs() < 1e-10 * d.lambda);
        prop_assert!(wrap_turns(e.theta - d.theta).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn distance_triangle_inequality(p in point3(), q in point3(), r in point3()) {
        prop_assert!(dist_h3(p, q) + dist_h3(q, r) - dist_h3(p, r) >= -1e-12);
    }

    #[test]
    fn busemann_gap_is_nonnegative(p in point3(), geo in geodesic()) {
        prop_assert!(busemann_gap(p, &geo).value >= 0.0);
    }

    #[test]
    fn foot_lies_on_geodesic(p in point3(), geo in geodesic()) {
        let (_, foot) = dist_to_geodesic(p, &geo);
        prop_assert!(dist_to_geodesic(foot, &geo).0 <= 1e-10);
    }
}

#[test]
fn busemann_gap_vanishes_exactly_on_the_line() {
    let geo = Geodesic3::from_complex(C64::new(-1.0, 0.5), C64::new(2.0, -1.0)).unwrap();
    for s in [-3.0, -0.5, 0.0, 1.0, 4.0] {
        assert!(busemann_gap(point_on(&geo, s), &geo).on_geodesic());
    }
    let p = Point3::new(C64::new(0.0, 0.0), 1.0);
    let off = busemann_gap(p, &Geodesic3::new(ProjPoint::real(1e-3), ProjPoint::infinity()).unwrap());
    assert!(off.value > 0.0 && !off.on_geodesic());
}
