//! Length inequalities for Fuchsian representations and separation certificates for
//! bent ones.
//!
//! A certificate is an aligned pair `(a, b)` whose lengths under `q` satisfy
//! `ℓ(a) + ℓ(b) > ℓ(ab)`. Every negatively curved metric has the opposite strict
//! inequality for aligned pairs, so `log` of the ratio lower-bounds the Lipschitz distance
//! from `q` to all of them at once.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::{
    classify_angles, classify_image_pairs, fixed_angles_in, reference, PairConfig, SpiralWitness,
};
use crate::error::{Error, Result};
use crate::moebius::{axis_crossing_gap, cross_ratio, translation_length, Geodesic3, MoebiusMap, ProjPoint};
use crate::representations::{LengthSpectrum, Representation};
use crate::surface_group::Word;

pub const CERTIFICATE_SCHEMA: &str = "qfsep/certificate/v1";
pub const TRIANGLE_SCHEMA: &str = "qfsep/triangle/v1";
pub const RATIO_BOUND_SCHEMA: &str = "qfsep/ratio-bound/v1";
/// Certificates below this ratio are numerically marginal and never emitted.
pub const MIN_RATIO: f64 = 1.0 + 1e-6;
/// Relative tolerance of [`certify`].
pub const CERTIFY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleTestRecord {
    pub a: Word,
    pub b: Word,
    pub config: PairConfig,
    pub ell_a: f64,
    pub ell_b: f64,
    /// `ℓ(ab)`, or `ℓ(a⁻¹b)` for misaligned pairs.
    pub ell_combined: f64,
    /// Positive when the inequality for `config` holds.
    pub slack: f64,
}

fn lengths(rep: &Representation, words: &[Word]) -> Vec<f64> {
    words.par_iter().map(|w| translation_length(&rep.evaluate(w))).collect()
}

/// Checks the length inequality of every ordered pair of conjugacy representatives up to
/// `maxlen` with four distinct fixed points.
///
/// Linked pairs need `ℓ(ab) < ℓ(a) + ℓ(b)`, aligned pairs `ℓ(ab) > ℓ(a) + ℓ(b)` and
/// misaligned pairs `ℓ(a⁻¹b) > ℓ(a) + ℓ(b)`. The first violation is an error.
pub fn triangle_harness(rep: &Representation, maxlen: usize) -> Result<Vec<TriangleTestRecord>> {
    if !rep.is_fuchsian() {
        return Err(Error::WrongKind("Fuchsian"));
    }
    let words = rep.presentation().conjugacy_reps(maxlen, None);
    let angles: Vec<(f64, f64)> = words.iter().map(|w| fixed_angles_in(rep, w)).collect::<Result<_>>()?;
    let ells = lengths(rep, &words);
    let records: Vec<Vec<TriangleTestRecord>> = (0..words.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..words.len() {
                let config = classify_angles(angles[i], angles[j]);
                let (a, b) = (&words[i], &words[j]);
                let combined = match config {
                    PairConfig::Degenerate => continue,
                    PairConfig::UnlinkedMisaligned => a.inverse().mul(b),
                    _ => a.mul(b),
                };
                let ell_combined = translation_length(&rep.evaluate(&combined));
                let sum = ells[i] + ells[j];
                let slack = match config {
                    PairConfig::Linked => sum - ell_combined,
                    _ => ell_combined - sum,
                };
                out.push(TriangleTestRecord {
                    a: a.clone(),
                    b: b.clone(),
                    config,
                    ell_a: ells[i],
                    ell_b: ells[j],
                    ell_combined,
                    slack,
                });
            }
            out
        })
        .collect();
    let records: Vec<TriangleTestRecord> = records.into_iter().flatten().collect();
    if let Some(r) = records.iter().find(|r| !(r.slack > 0.0)) {
        return Err(Error::TriangleViolation {
            a: r.a.to_string(),
            b: r.b.to_string(),
            config: r.config.name(),
            slack: r.slack,
        });
    }
    Ok(records)
}

/// Lower bound `|log((ℓ₁(a)/ℓ₁(b)) / (ℓ₂(a)/ℓ₂(b)))|` on the Lipschitz distance of two classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DlipRatioBound {
    pub schema: String,
    pub spec1: String,
    pub spec2: String,
    pub a: Word,
    pub b: Word,
    pub value: f64,
}

/// Maximizes the double ratio over classes of length at most `maxlen` present in both spectra.
///
/// With `f = log ℓ₁ − log ℓ₂` the double ratio is `|f(a) − f(b)|`, so the maximizing pair
/// is the argmax and argmin of `f`; ties go to the shortlex-first class.
pub fn ratio_lower_bound(spec1: &LengthSpectrum, spec2: &LengthSpectrum, maxlen: usize) -> Result<DlipRatioBound> {
    let mut hi: Option<(&Word, f64)> = None;
    let mut lo: Option<(&Word, f64)> = None;
    for (w, &l1) in spec1.entries.iter().filter(|(w, _)| w.len() <= maxlen) {
        let Some(l2) = spec2.get(w) else { continue };
        if !(l1 > 0.0 && l2 > 0.0) {
            continue;
        }
        let f = l1.ln() - l2.ln();
        if hi.is_none_or(|(_, h)| f > h) {
            hi = Some((w, f));
        }
        if lo.is_none_or(|(_, l)| f < l) {
            lo = Some((w, f));
        }
    }
    let ((a, fa), (b, fb)) = hi.zip(lo).ok_or(Error::EmptyOverlap)?;
    Ok(DlipRatioBound {
        schema: RATIO_BOUND_SCHEMA.into(),
        spec1: spec1.rep_id.clone(),
        spec2: spec2.rep_id.clone(),
        a: a.clone(),
        b: b.clone(),
        value: (fa - fb).abs(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    pub schema: String,
    pub rep_id: String,
    pub a: Word,
    pub b: Word,
    pub config: PairConfig,
    pub ell_q_a: f64,
    pub ell_q_b: f64,
    pub ell_q_ab: f64,
    /// `(ℓ(a) + ℓ(b)) / ℓ(ab)`.
    pub ratio: f64,
    /// `log(ratio)`, the certified distance bound.
    pub alpha: f64,
}

impl SeparationCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: SeparationCertificate = serde_json::from_str(s)?;
        if c.schema != CERTIFICATE_SCHEMA {
            return Err(Error::Schema { expected: CERTIFICATE_SCHEMA.into(), found: c.schema });
        }
        Ok(c)
    }
}

/// `[ℓ(a), ℓ(b), ℓ(ab)]` under `rep`.
pub fn pair_lengths(rep: &Representation, a: &Word, b: &Word) -> Result<[f64; 3]> {
    let ab = a.mul(b);
    if rep.presentation().is_identity(&ab) {
        return Err(Error::TrivialWord(ab.to_string()));
    }
    let l = |w: &Word| translation_length(&rep.evaluate(w));
    Ok([l(a), l(b), l(&ab)])
}

/// `(ℓ(a) + ℓ(b)) / ℓ(ab)` under `rep`.
pub fn length_ratio(rep: &Representation, a: &Word, b: &Word) -> Result<f64> {
    let [la, lb, lab] = pair_lengths(rep, a, b)?;
    Ok((la + lb) / lab)
}

struct Candidate {
    ratio: f64,
    a: usize,
    b: usize,
}

/// Searches aligned pairs `(a, b)` with `a` a conjugacy representative, `b` any reduced
/// word and `|a| + |b| ≤ maxlen`, and returns the pair of largest length ratio.
///
/// Alignment depends on the actual elements, not just their classes, which is why `b`
/// ranges over all words. Pairs are visited by total length, then shortlex in `(a, b)`;
/// ties keep the first. A ratio below `max(min_ratio, MIN_RATIO)` is reported through
/// [`Error::NoCertificate`] together with the best aligned ratio seen.
pub fn find_separation_certificate(rep_q: &Representation, maxlen: usize, min_ratio: f64) -> Result<SeparationCertificate> {
    let pres = rep_q.presentation();
    let refr = reference(pres.genus())?;
    let reps = pres.conjugacy_reps(maxlen.saturating_sub(1), None);
    let words = pres.words(maxlen.saturating_sub(1));
    let prep = |ws: &[Word]| -> Vec<Option<((f64, f64), MoebiusMap, f64)>> {
        ws.par_iter()
            .map(|w| {
                let angles = fixed_angles_in(&refr, w).ok()?;
                let m = rep_q.evaluate(w);
                Some((angles, m, translation_length(&m)))
            })
            .collect()
    };
    let rep_data = prep(&reps);
    let word_data = prep(&words);

    // (total length, index of a, index of b) is the search order
    let best = (0..reps.len())
        .into_par_iter()
        .filter_map(|i| {
            let (aa, ma, la) = rep_data[i].as_ref()?;
            let mut best: Option<(usize, Candidate)> = None;
            for (j, b) in words.iter().enumerate() {
                if reps[i].len() + b.len() > maxlen {
                    break;
                }
                let Some((ab, mb, lb)) = &word_data[j] else { continue };
                if classify_angles(*aa, *ab) != PairConfig::UnlinkedAligned {
                    continue;
                }
                let lab = translation_length(&ma.compose(mb));
                if !(lab > 0.0) {
                    continue;
                }
                let ratio = (la + lb) / lab;
                let total = reps[i].len() + b.len();
                let better = match &best {
                    None => true,
                    Some((t, c)) => ratio > c.ratio || (ratio == c.ratio && total < *t),
                };
                if better {
                    best = Some((total, Candidate { ratio, a: i, b: j }));
                }
            }
            best
        })
        .reduce_with(|x, y| {
            let key = |(t, c): &(usize, Candidate)| (*t, c.a, c.b);
            if y.1.ratio > x.1.ratio || (y.1.ratio == x.1.ratio && key(&y) < key(&x)) {
                y
            } else {
                x
            }
        });
    let Some((_, c)) = best else {
        return Err(Error::NoCertificate { best_ratio: None });
    };
    if c.ratio < min_ratio.max(MIN_RATIO) {
        return Err(Error::NoCertificate { best_ratio: Some(c.ratio) });
    }
    let (a, b) = (reps[c.a].clone(), words[c.b].clone());
    let l = |w: &Word| translation_length(&rep_q.evaluate(w));
    let (ell_q_a, ell_q_b, ell_q_ab) = (l(&a), l(&b), l(&a.mul(&b)));
    let ratio = (ell_q_a + ell_q_b) / ell_q_ab;
    Ok(SeparationCertificate {
        schema: CERTIFICATE_SCHEMA.into(),
        rep_id: rep_q.id(),
        a,
        b,
        config: PairConfig::UnlinkedAligned,
        ell_q_a,
        ell_q_b,
        ell_q_ab,
        ratio,
        alpha: ratio.ln(),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CertifyReport {
    pub failures: Vec<String>,
}

impl CertifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= CERTIFY_TOL * x.abs().max(y.abs()).max(1.0)
}

/// Recomputes every field of `cert` from `rep_q` and the reference circle.
pub fn verify_certificate(cert: &SeparationCertificate, rep_q: &Representation) -> CertifyReport {
    let mut failures = Vec::new();
    if cert.schema != CERTIFICATE_SCHEMA {
        failures.push(format!("schema `{}`", cert.schema));
    }
    if cert.rep_id != rep_q.id() {
        failures.push(format!("certificate is for {}, representation is {}", cert.rep_id, rep_q.id()));
    }
    let config = reference(rep_q.presentation().genus())
        .and_then(|r| Ok(classify_angles(fixed_angles_in(&r, &cert.a)?, fixed_angles_in(&r, &cert.b)?)));
    match config {
        Ok(PairConfig::UnlinkedAligned) => {}
        Ok(c) => failures.push(format!("pair is {} on the circle", c.name())),
        Err(e) => failures.push(e.to_string()),
    }
    if cert.config != PairConfig::UnlinkedAligned {
        failures.push(format!("recorded configuration is {}", cert.config.name()));
    }
    let l = |w: &Word| translation_length(&rep_q.evaluate(w));
    let ab = cert.a.mul(&cert.b);
    let (la, lb, lab) = (l(&cert.a), l(&cert.b), l(&ab));
    for (name, got, want) in [("ell_q_a", cert.ell_q_a, la), ("ell_q_b", cert.ell_q_b, lb), ("ell_q_ab", cert.ell_q_ab, lab)] {
        if !(want > 0.0) {
            failures.push(format!("{name} recomputes to {want}"));
        } else if !close(got, want) {
            failures.push(format!("{name}: recorded {got}, recomputed {want}"));
        }
    }
    let ratio = (la + lb) / lab;
    if !close(cert.ratio, ratio) {
        failures.push(format!("ratio: recorded {}, recomputed {ratio}", cert.ratio));
    }
    if !close(cert.alpha, ratio.ln()) {
        failures.push(format!("alpha: recorded {}, recomputed {}", cert.alpha, ratio.ln()));
    }
    if !(ratio > 1.0 && cert.ratio > 1.0 && cert.alpha > 0.0) {
        failures.push(format!("ratio {ratio} does not exceed 1"));
    }
    CertifyReport { failures }
}

pub fn certify(cert: &SeparationCertificate, rep_q: &Representation) -> bool {
    verify_certificate(cert, rep_q).ok()
}

/// `|log(ratio_q / ratio_g)| − alpha`, where `ratio_g` comes from the lengths
/// `[ℓ_g(a), ℓ_g(b), ℓ_g(ab)]` of the certificate pair under another metric class.
/// Nonnegative whenever the certificate is sound against it.
pub fn soundness_margin(cert: &SeparationCertificate, g_lengths: [f64; 3]) -> f64 {
    let [la, lb, lab] = g_lengths;
    (cert.ratio / ((la + lb) / lab)).ln().abs() - cert.alpha
}

/// Busemann gap of the crossing point of the image axes `(φξ₁, φξ₄)` and `(φξ₂, φξ₃)`,
/// measured against the diagonal `(φξ₂, φξ₄)`.
///
/// The images are moved to `φξ₂ = 0`, `φξ₄ = ∞`, `φξ₁ = 1` first; the gap is invariant
/// and the raw images span too many orders of magnitude for the chordal geometry.
pub fn diagnostic_delta(rep_q: &Representation, witness: &SpiralWitness) -> Result<f64> {
    let chart = crate::boundary::BoundaryChart::with_seed(rep_q, &witness.gamma, &witness.aux)?;
    let mut phi = Vec::with_capacity(4);
    for k in 0..4 {
        let (power, offset) = witness.ray(k).ok_or_else(|| Error::Witness(format!("xi_{} has no ray position", k + 1)))?;
        phi.push(ProjPoint::finite(chart.phi_ray(power, offset)?));
    }
    let (config, gap) = classify_image_pairs((phi[0], phi[3]), (phi[1], phi[2]), crate::boundary::CROSSING_TOL)?;
    if config != PairConfig::Linked || gap >= crate::boundary::CROSSING_TOL {
        return Err(Error::NonCrossingAxes(gap));
    }
    let x3 = cross_ratio(phi[1], phi[3], phi[0], phi[2]);
    let one = ProjPoint::real(1.0);
    axis_crossing_gap(
        &Geodesic3::new(one, ProjPoint::infinity())?,
        &Geodesic3::new(ProjPoint::zero(), x3)?,
        &Geodesic3::new(ProjPoint::zero(), ProjPoint::infinity())?,
    )
}
