use qfsep::boundary::{argument_lift_from, find_spiral_witness, BoundaryChart, SpiralWitness};
use qfsep::certificates::{certify, find_separation_certificate, SeparationCertificate};
use qfsep::moebius::wrap_turns;
use qfsep::representations::{bend, find_complex_trace_element, fuchsian_octagon};
use qfsep::{Error, Representation, Word};

fn bent() -> Representation {
    bend(&fuchsian_octagon(), 0.6).unwrap()
}

#[test]
fn translated_walks_shift_the_lift_by_theta() {
    let q = bent();
    let gamma = find_complex_trace_element(&q, 4).unwrap();
    let chart = BoundaryChart::new(&q, &gamma, 8).unwrap();
    let table = chart.lift_table().unwrap();
    let theta = table.winding();
    // walk to the translated reference points directly instead of using equivariance
    let moved: Vec<_> = table
        .u
        .iter()
        .map(|&u| chart.walk(chart.ref_point(1, u)).unwrap().0)
        .collect();
    let first = table.s[0] + theta;
    let start = first + wrap_turns(moved[0].arg() / std::f64::consts::TAU - first);
    let lift = argument_lift_from(&moved, start).unwrap();
    for (i, (_, s)) in lift.iter().enumerate() {
        assert!((s - table.s[i] - theta).abs() < 2e-3, "u = {}: {} vs {}", table.u[i], s, table.s[i] + theta);
    }
}

#[test]
fn witness_json_round_trip() {
    let q = bent();
    let gamma = find_complex_trace_element(&q, 4).unwrap();
    let w = find_spiral_witness(&q, &gamma, 8).unwrap();
    let text = serde_json::to_string(&w).unwrap();
    let back: SpiralWitness = serde_json::from_str(&text).unwrap();
    assert_eq!(back, w);
    assert!(qfsep::boundary::verify_witness_orders(&back, &q));
}

#[test]
fn certificate_json_round_trip() {
    let q = bent();
    let cert = find_separation_certificate(&q, 7, 1.0).unwrap();
    let back = SeparationCertificate::from_json(&cert.to_json().unwrap()).unwrap();
    assert_eq!(back, cert);
    assert!(certify(&back, &q));
    let wrong = cert.to_json().unwrap().replace("qfsep/certificate/v1", "qfsep/certificate/v0");
    assert!(matches!(SeparationCertificate::from_json(&wrong), Err(Error::Schema { .. })));
}

#[test]
fn certificate_is_rejected_for_another_representation() {
    let cert = find_separation_certificate(&bent(), 7, 1.0).unwrap();
    assert!(!certify(&cert, &bend(&fuchsian_octagon(), 0.5).unwrap()));
}

#[test]
fn small_bend_has_too_little_rotation_or_no_certificate() {
    let q = bend(&fuchsian_octagon(), 0.01).unwrap();
    let gamma: Word = "a1 a2".parse().unwrap();
    match find_spiral_witness(&q, &gamma, 8) {
        Ok(w) => assert!(w.big_theta.abs() >= qfsep::boundary::MIN_WINDING),
        Err(e) => assert!(matches!(e, Error::Witness(_))),
    }
}
