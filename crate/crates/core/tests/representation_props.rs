use proptest::prelude::*;
use qfsep::moebius::{dist_h3, Point3, C64};
use qfsep::representations::{bend, fuchsian_octagon, orbit_distance, stable_length};
use qfsep::surface_group::{free_reduce, Letter};
use qfsep::Word;

fn letter() -> impl Strategy<Value = Letter> {
    (0u8..4, any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv))
}

fn word(maxlen: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(letter(), 0..=maxlen).prop_map(|l| free_reduce(&Word(l)))
}

fn nontrivial(maxlen: usize) -> impl Strategy<Value = Word> {
    word(maxlen).prop_filter("trivial", |w| !fuchsian_octagon().presentation().is_identity(w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spectrum_is_conjugacy_invariant(u in word(4), w in nontrivial(5), angle in 0.0f64..1.0) {
        let q = bend(&fuchsian_octagon(), angle).unwrap();
        let l = stable_length(&q, &w).unwrap();
        let conj = stable_length(&q, &w.conjugate_by(&u)).unwrap();
        prop_assert!((conj - l).abs() < 1e-10 * (1.0 + l), "{} vs {}", conj, l);
    }

    #[test]
    fn squares_double_length(w in nontrivial(4), angle in 0.0f64..1.0) {
        let q = bend(&fuchsian_octagon(), angle).unwrap();
        let l = stable_length(&q, &w).unwrap();
        prop_assert!((stable_length(&q, &w.pow(2)).unwrap() - 2.0 * l).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn orbit_distance_bounds_stable_length(w in nontrivial(6), angle in 0.0f64..1.0) {
        let q = bend(&fuchsian_octagon(), angle).unwrap();
        let d = orbit_distance(&q, &w);
        prop_assert!(d >= stable_length(&q, &w).unwrap() - 1e-10);
        prop_assert!((orbit_distance(&q, &w.inverse()) - d).abs() < 1e-9 * (1.0 + d));
    }

    #[test]
    fn basepoint_moves_orbit_distance_boundedly(w in word(6), x in -0.5f64..0.5, t in 0.5f64..2.0) {
        let f = fuchsian_octagon();
        let y2 = Point3::new(C64::new(x, 0.0), t);
        let moved = f.clone().with_basepoint(y2);
        let bound = 2.0 * dist_h3(f.basepoint(), y2);
        prop_assert!((orbit_distance(&f, &w) - orbit_distance(&moved, &w)).abs() <= bound + 1e-9);
    }
}

#[test]
fn bending_is_continuous_in_the_angle() {
    let (lo, hi) = (bend(&fuchsian_octagon(), 0.3).unwrap(), bend(&fuchsian_octagon(), 0.3 + 1e-6).unwrap());
    let words = fuchsian_octagon().presentation().words(3);
    for w in words.iter().step_by(words.len() / 20).take(20) {
        assert!(lo.evaluate(w).distance(&hi.evaluate(w)) < 1e-4, "{w}");
    }
}
