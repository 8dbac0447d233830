use qfsep_web::{certificate_summary, limit_points, ratio_bound};

#[test]
fn limit_points_come_in_triples_near_the_circle() {
    let flat = ratio_free_points(0.0);
    assert!(flat.len() > 300);
    // the unbent limit set is the reference circle
    for p in flat.chunks(3) {
        assert!((p[0].hypot(p[1]) - 1.0).abs() < 1e-9, "{p:?}");
    }
    let bent = ratio_free_points(0.6);
    assert_eq!(bent.len(), flat.len());
    assert!(bent.chunks(3).any(|p| (p[0].hypot(p[1]) - 1.0).abs() > 1e-3));
}

fn ratio_free_points(angle: f64) -> Vec<f64> {
    let pts = limit_points(angle, 5).unwrap();
    assert_eq!(pts.len() % 3, 0);
    pts
}

#[test]
fn ratio_bound_vanishes_without_bending() {
    let flat = ratio_bound(0.0, 4).unwrap();
    // only rounding in the trace-to-length map remains
    assert!(flat < 1e-9, "{flat}");
    assert!(ratio_bound(0.6, 4).unwrap() > 1e-3);
}

#[test]
fn certificate_summary_is_json() {
    let v: serde_json::Value = serde_json::from_str(&certificate_summary(0.0, 4).unwrap()).unwrap();
    assert_eq!(v["found"], false);
    let v: serde_json::Value = serde_json::from_str(&certificate_summary(0.6, 7).unwrap()).unwrap();
    println!("{v}");
    if v["found"] == true {
        assert!(v["ratio"].as_f64().unwrap() > 1.0);
    }
}
