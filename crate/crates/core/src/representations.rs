//! Concrete surface-group representations into PSL(2,C): the regular-polygon
//! Fuchsian reference, bending deformations, word evaluation, length spectra
//! and orbit growth.

use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fingerprint::ApproxSet;
use crate::moebius::{
    classify, dist_h3, translation_length, Geodesic3, IsometryClass, MoebiusMap, Point3, C64,
};
use crate::surface_group::{GroupPresentation, Letter, Word};

/// Allowed distance of the relator image from `±I`.
pub const RELATOR_TOL: f64 = 1e-9;
/// Bending angles up to this size are the documented operating envelope.
pub const BEND_ENVELOPE: f64 = 1.0;
/// `|Im tr|` above this marks an element with non-real trace.
pub const COMPLEX_TRACE_TOL: f64 = 1e-6;

pub const REPRESENTATION_SCHEMA: &str = "qfsep/representation/v1";

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RepKind {
    Fuchsian,
    Bent { angle: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    presentation: GroupPresentation,
    images: Vec<MoebiusMap>,
    inverses: Vec<MoebiusMap>,
    kind: RepKind,
    basepoint: Point3,
}

impl Representation {
    /// Validates the relator and, for Fuchsian kind, the reality of the generators.
    pub fn new(presentation: GroupPresentation, images: Vec<MoebiusMap>, kind: RepKind) -> Result<Self> {
        let rep = Self::new_unchecked(presentation, images, kind);
        let residual = rep.relator_residual();
        if residual > RELATOR_TOL {
            return Err(Error::RelatorViolation(residual));
        }
        if kind == RepKind::Fuchsian && !rep.images.iter().all(|m| m.is_real(1e-12)) {
            return Err(Error::WrongKind("real"));
        }
        Ok(rep)
    }

    /// Skips validation; used for deliberately broken test inputs.
    pub fn new_unchecked(presentation: GroupPresentation, images: Vec<MoebiusMap>, kind: RepKind) -> Self {
        assert_eq!(images.len(), presentation.num_generators());
        let inverses = images.iter().map(|m| m.inverse()).collect();
        Self { presentation, images, inverses, kind, basepoint: Point3::ORIGIN }
    }

    pub fn with_basepoint(mut self, basepoint: Point3) -> Self {
        self.basepoint = basepoint;
        self
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn images(&self) -> &[MoebiusMap] {
        &self.images
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn basepoint(&self) -> Point3 {
        self.basepoint
    }

    pub fn is_fuchsian(&self) -> bool {
        self.kind == RepKind::Fuchsian
    }

    pub fn letter_image(&self, l: Letter) -> &MoebiusMap {
        if l.inv {
            &self.inverses[l.gen as usize]
        } else {
            &self.images[l.gen as usize]
        }
    }

    pub fn evaluate(&self, w: &Word) -> MoebiusMap {
        self.evaluate_letters(w.letters())
    }

    pub fn evaluate_letters(&self, letters: &[Letter]) -> MoebiusMap {
        letters.iter().fold(MoebiusMap::IDENTITY, |acc, &l| acc.compose(self.letter_image(l)))
    }

    pub fn relator_residual(&self) -> f64 {
        self.evaluate(self.presentation.relator()).distance_to_identity()
    }

    /// The representation `w -> g rho(w) g^-1`.
    pub fn conjugate(&self, g: &MoebiusMap) -> Representation {
        let images = self.images.iter().map(|m| m.conjugate_by(g)).collect();
        let kind = match self.kind {
            // a complex conjugator leaves PSL(2,R)
            RepKind::Fuchsian if !g.is_real(1e-15) => RepKind::Bent { angle: 0.0 },
            k => k,
        };
        let mut rep = Self::new_unchecked(self.presentation.clone(), images, kind);
        rep.basepoint = g.apply(self.basepoint);
        rep
    }

    /// Canonical-sign matrix entries; identifies group elements.
    pub fn fingerprint(&self, w: &Word) -> [f64; 8] {
        let m = self.evaluate(w).canonical();
        [m.a.re, m.a.im, m.b.re, m.b.im, m.c.re, m.c.im, m.d.re, m.d.im]
    }

    /// Short content hash of the serialized form.
    pub fn id(&self) -> String {
        let json = self.to_json().expect("representation serializes");
        let digest = Sha256::digest(json.as_bytes());
        hex::encode(&digest[..8])
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&RepresentationFile::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: RepresentationFile = serde_json::from_str(s)?;
        file.into_representation()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorImage {
    pub name: String,
    /// Entries `a, b, c, d` as `[re, im]` pairs.
    pub matrix: [C64; 4],
}

/// On-disk form of a [`Representation`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub schema: String,
    pub genus: usize,
    pub kind: String,
    pub bend_angle: Option<f64>,
    pub basepoint: Point3,
    pub relator_residual: f64,
    pub generators: Vec<GeneratorImage>,
}

impl From<&Representation> for RepresentationFile {
    fn from(rep: &Representation) -> Self {
        let (kind, bend_angle) = match rep.kind {
            RepKind::Fuchsian => ("fuchsian", None),
            RepKind::Bent { angle } => ("bent", Some(angle)),
        };
        let generators = rep
            .presentation
            .generator_words()
            .into_iter()
            .zip(&rep.images)
            .map(|(w, m)| GeneratorImage { name: w.to_string(), matrix: [m.a, m.b, m.c, m.d] })
            .collect();
        Self {
            schema: REPRESENTATION_SCHEMA.to_string(),
            genus: rep.presentation.genus(),
            kind: kind.to_string(),
            bend_angle,
            basepoint: rep.basepoint,
            relator_residual: rep.relator_residual(),
            generators,
        }
    }
}

impl RepresentationFile {
    pub fn into_representation(self) -> Result<Representation> {
        if self.schema != REPRESENTATION_SCHEMA {
            return Err(Error::Schema { expected: REPRESENTATION_SCHEMA.into(), found: self.schema });
        }
        let pres = GroupPresentation::new(self.genus)?;
        let kind = match (self.kind.as_str(), self.bend_angle) {
            ("fuchsian", None) => RepKind::Fuchsian,
            ("bent", Some(angle)) => RepKind::Bent { angle },
            _ => return Err(Error::WordParse(format!("bad representation kind `{}`", self.kind))),
        };
        let expected = pres.generator_words();
        if self.generators.len() != expected.len() {
            return Err(Error::WordParse("wrong number of generators".into()));
        }
        let mut images = Vec::with_capacity(expected.len());
        for (g, w) in self.generators.iter().zip(&expected) {
            if g.name != w.to_string() {
                return Err(Error::WordParse(format!("expected generator {w}, found {}", g.name)));
            }
            let [a, b, c, d] = g.matrix;
            // keep stored entries bit-exact; only reject non-unimodular input
            let m = MoebiusMap { a, b, c, d };
            if (m.det() - 1.0).norm() > 1e-9 {
                return Err(Error::Singular(m.det().norm()));
            }
            images.push(m);
        }
        Ok(Representation::new(pres, images, kind)?.with_basepoint(self.basepoint))
    }
}

fn rotation(phi: f64) -> MoebiusMap {
    MoebiusMap::diagonal(C64::from_polar(1.0, phi / 2.0))
}

/// Cayley map from the unit disk to the upper half plane, `w -> i(1+w)/(1-w)`.
pub fn cayley() -> MoebiusMap {
    let i = C64::new(0.0, 1.0);
    MoebiusMap::new(i, i, C64::new(-1.0, 0.0), C64::new(1.0, 0.0)).expect("nonsingular")
}

/// Boundary angle in turns `[0, 1)` of a point of `R ∪ {∞}` seen on the disk boundary.
pub fn disk_angle(p: crate::moebius::ProjPoint) -> f64 {
    let w = cayley().inverse().apply_proj(p);
    let z = w.w1 / w.w2;
    let t = z.arg() / std::f64::consts::TAU;
    if t < 0.0 {
        t + 1.0
    } else if t >= 1.0 {
        t - 1.0
    } else {
        t
    }
}

/// Real-axis point with the given disk boundary angle.
pub fn point_at_angle(turns: f64) -> crate::moebius::ProjPoint {
    let w = C64::from_polar(1.0, std::f64::consts::TAU * turns);
    cayley().apply_complex(w)
}

/// Fuchsian representation from the regular hyperbolic `4g`-gon with vertex angle `π/(2g)`.
///
/// Sides `0..4g` read `a1 b1 A1 B1 a2 ...` around the polygon. Each generator is a
/// rotated copy `R_k T R_k^-1`-style pairing of side `j` with side `j ± 2`, built in the
/// disk and transported to the upper half plane by the Cayley map.
pub fn fuchsian_regular(genus: usize) -> Result<Representation> {
    let pres = GroupPresentation::new(genus)?;
    let n = 4 * genus;
    let vertex_angle = PI / (2.0 * genus as f64);
    let inradius = ((vertex_angle / 2.0).cos() / (PI / n as f64).sin()).acosh();
    let s = 2.0 * inradius;
    let t = MoebiusMap::real((s / 2.0).cosh(), (s / 2.0).sinh(), (s / 2.0).sinh(), (s / 2.0).cosh())?;
    let side = |j: usize| 2.0 * PI * j as f64 / n as f64;
    // maps side `from` onto side `to`, and the polygon onto its neighbour across `to`
    let pairing = |from: usize, to: usize| rotation(side(to)).compose(&t).compose(&rotation(PI - side(from)));
    let c = cayley();
    let mut images = Vec::with_capacity(2 * genus);
    for h in 0..genus {
        let base = 4 * h;
        for disk in [pairing(base + 2, base), pairing(base + 1, base + 3)] {
            let m = disk.conjugate_by(&c);
            images.push(MoebiusMap::real(m.a.re, m.b.re, m.c.re, m.d.re)?);
        }
    }
    Representation::new(pres, images, RepKind::Fuchsian)
}

/// The genus-2 reference: regular octagon with vertex angle `π/4`.
pub fn fuchsian_octagon() -> Representation {
    fuchsian_regular(2).expect("octagon construction closes up")
}

/// Bends along the separating curve `c = [a1, b1]`: generators of handles `2..g` are
/// conjugated by the rotation of `angle` radians about the axis of `c`.
pub fn bend(rep: &Representation, angle: f64) -> Result<Representation> {
    if !rep.is_fuchsian() {
        return Err(Error::WrongKind("Fuchsian"));
    }
    let c = rep.evaluate(&"a1 b1 A1 B1".parse()?);
    let data = *classify(&c).loxodromic().ok_or_else(|| Error::NotLoxodromic("[a1, b1]".into()))?;
    let normalizer = Geodesic3::new(data.fix_minus, data.fix_plus)?.normalizer();
    let spin = MoebiusMap::diagonal(C64::from_polar(1.0, angle / 2.0));
    let e = spin.conjugate_by(&normalizer.inverse());
    let images = rep
        .images
        .iter()
        .enumerate()
        .map(|(i, m)| if i < 2 { *m } else { m.conjugate_by(&e) })
        .collect();
    let bent = Representation::new(rep.presentation.clone(), images, RepKind::Bent { angle })?;
    Ok(bent.with_basepoint(rep.basepoint))
}

pub fn within_bend_envelope(angle: f64) -> bool {
    angle.abs() <= BEND_ENVELOPE
}

pub fn stable_length(rep: &Representation, w: &Word) -> Result<f64> {
    if rep.presentation.is_identity(w) {
        return Err(Error::TrivialWord(w.to_string()));
    }
    Ok(translation_length(&rep.evaluate(w)))
}

pub fn orbit_distance(rep: &Representation, w: &Word) -> f64 {
    dist_h3(rep.evaluate(w).apply(rep.basepoint), rep.basepoint)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "normalization", rename_all = "snake_case")]
pub enum Normalization {
    Raw,
    EntropyNormalized { h: f64 },
}

/// Stable lengths keyed by conjugacy-class representatives.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthSpectrum {
    pub rep_id: String,
    pub entries: BTreeMap<Word, f64>,
    #[serde(flatten)]
    pub normalization: Normalization,
}

impl LengthSpectrum {
    pub fn get(&self, w: &Word) -> Option<f64> {
        self.entries.get(w).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Multiplies every length by `c`, keeping the normalization tag.
    pub fn rescaled(&self, c: f64) -> LengthSpectrum {
        LengthSpectrum {
            rep_id: self.rep_id.clone(),
            entries: self.entries.iter().map(|(w, l)| (w.clone(), l * c)).collect(),
            normalization: self.normalization,
        }
    }
}

pub fn compute_spectrum(rep: &Representation, maxlen: usize) -> LengthSpectrum {
    use rayon::prelude::*;
    let reps = rep.presentation.conjugacy_reps(maxlen, None);
    let entries = reps
        .into_par_iter()
        .map(|w| {
            let l = translation_length(&rep.evaluate(&w));
            (w, l)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    LengthSpectrum { rep_id: rep.id(), entries, normalization: Normalization::Raw }
}

pub fn normalize_spectrum(spec: &LengthSpectrum, h: f64) -> Result<LengthSpectrum> {
    if !(h > 0.0) {
        return Err(Error::NonPositiveScale(h));
    }
    if matches!(spec.normalization, Normalization::EntropyNormalized { .. }) {
        return Err(Error::AlreadyNormalized);
    }
    let mut out = spec.rescaled(h);
    out.normalization = Normalization::EntropyNormalized { h };
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthEstimate {
    pub h: f64,
    pub radii: Vec<f64>,
    pub counts: Vec<u64>,
    pub residual: f64,
    /// Distinct group elements visited, including the pruning margin.
    pub explored: u64,
}

/// Extra search radius beyond `rmax`; exceeds the circumradius of the fundamental polygon.
pub const GROWTH_MARGIN: f64 = 4.0;
pub const GROWTH_STEP: f64 = 0.5;

/// Orbit displacements `d(γy, y)` of all distinct elements with displacement below `limit`,
/// found by breadth-first search through elements whose displacement stays below `limit + margin`.
pub fn orbit_displacements(rep: &Representation, limit: f64, margin: f64) -> (Vec<f64>, u64) {
    let y = rep.basepoint;
    let alphabet = rep.presentation.alphabet();
    let mut seen = ApproxSet::<4>::new(1e-3);
    // distinct orbit points are several units apart in hyperboloid coordinates
    let key = |p: Point3| p.to_hyperboloid();
    seen.insert(&key(y));
    let mut queue = VecDeque::from([MoebiusMap::IDENTITY]);
    let mut inside = vec![0.0];
    let mut explored = 1u64;
    while let Some(g) = queue.pop_front() {
        for &l in &alphabet {
            let h = g.compose(rep.letter_image(l));
            let p = h.apply(y);
            let d = dist_h3(p, y);
            if d >= limit + margin || !seen.insert(&key(p)) {
                continue;
            }
            explored += 1;
            if d < limit {
                inside.push(d);
            }
            queue.push_back(h);
        }
    }
    (inside, explored)
}

pub fn estimate_growth(rep: &Representation, rmax: f64) -> Result<GrowthEstimate> {
    let steps = (rmax / GROWTH_STEP).floor() as usize;
    let radii: Vec<f64> = (1..=steps).map(|k| k as f64 * GROWTH_STEP).collect();
    let upper: Vec<usize> = (0..radii.len()).filter(|&i| radii[i] >= rmax / 2.0).collect();
    if upper.len() < 3 {
        return Err(Error::GrowthGridTooSmall(upper.len()));
    }
    let (mut dists, explored) = orbit_displacements(rep, rmax, GROWTH_MARGIN);
    dists.sort_by(f64::total_cmp);
    let counts: Vec<u64> = radii.iter().map(|&r| dists.partition_point(|&d| d < r) as u64).collect();
    let xs: Vec<f64> = upper.iter().map(|&i| radii[i]).collect();
    let ys: Vec<f64> = upper.iter().map(|&i| (counts[i] as f64).ln()).collect();
    let (slope, intercept) = least_squares(&xs, &ys);
    let residual = (xs.iter().zip(&ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum::<f64>()
        / xs.len() as f64)
        .sqrt();
    Ok(GrowthEstimate { h: slope, radii, counts, residual, explored })
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Shortlex-first word whose image has a non-real trace.
pub fn find_complex_trace_element(rep: &Representation, maxlen: usize) -> Result<Word> {
    for n in 1..=maxlen {
        let mut found = None;
        rep.presentation.words_of_length(n, &mut |letters| {
            if found.is_some() {
                return;
            }
            let m = rep.evaluate_letters(letters);
            if m.canonical_trace().im.abs() > COMPLEX_TRACE_TOL
                && matches!(classify(&m), IsometryClass::LoxodromicStrict(_))
            {
                found = Some(Word(letters.to_vec()));
            }
        });
        if let Some(w) = found {
            return Ok(w);
        }
    }
    Err(Error::NoComplexTrace(maxlen))
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct JorgensenReport {
    pub pairs_checked: usize,
    pub violations: Vec<JorgensenViolation>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JorgensenViolation {
    pub a: Word,
    pub b: Word,
    pub value: f64,
}

/// Screens pairs of images for Jørgensen's inequality `|tr²A − 4| + |tr[A,B] − 2| ≥ 1`,
/// skipping pairs that generate an elementary group (`tr[A,B] = 2`).
pub fn jorgensen_spot_check(rep: &Representation, maxlen: usize) -> JorgensenReport {
    let words = rep.presentation.words(maxlen);
    let mats: Vec<MoebiusMap> = words.iter().map(|w| rep.evaluate(w)).collect();
    let mut report = JorgensenReport::default();
    for i in 0..words.len() {
        for j in 0..words.len() {
            if i == j {
                continue;
            }
            let (a, b) = (&mats[i], &mats[j]);
            if a.distance_to_identity() < 1e-9 || b.distance_to_identity() < 1e-9 {
                continue;
            }
            let comm = a.compose(b).compose(&a.inverse()).compose(&b.inverse());
            let tc = comm.trace();
            if (tc - 2.0).norm() < 1e-9 {
                continue;
            }
            let ta = a.trace();
            let value = (ta * ta - 4.0).norm() + (tc - 2.0).norm();
            report.pairs_checked += 1;
            if value < 1.0 - 1e-9 {
                report.violations.push(JorgensenViolation { a: words[i].clone(), b: words[j].clone(), value });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn octagon_closes_up() {
        let rep = fuchsian_octagon();
        assert!(rep.relator_residual() < 1e-9, "{}", rep.relator_residual());
        let lengths: Vec<f64> = rep
            .presentation()
            .generator_words()
            .iter()
            .map(|g| match classify(&rep.evaluate(g)) {
                IsometryClass::Hyperbolic(d) => d.ell,
                other => panic!("{g}: {other:?}"),
            })
            .collect();
        for l in &lengths {
            assert!((l - lengths[0]).abs() < 1e-9);
        }
        // |tr| = 2 + sqrt 2 for the regular octagon pairing
        let tr = rep.evaluate(&w("a1")).canonical_trace();
        assert!((tr.re - (2.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn higher_genus_polygons_close_up() {
        for g in 3..=4 {
            assert!(fuchsian_regular(g).unwrap().relator_residual() < 1e-9);
        }
    }

    #[test]
    fn bending_preserves_relator() {
        let rep = fuchsian_octagon();
        for angle in [0.0, 0.1, 0.3, 0.6, 1.0] {
            assert!(bend(&rep, angle).unwrap().relator_residual() < 1e-9);
        }
        let bent = bend(&rep, 0.6).unwrap();
        assert!(bent.evaluate(&w("a1 a2")).canonical_trace().im.abs() > 1e-6);
        assert!(matches!(bend(&bent, 0.1), Err(Error::WrongKind(_))));
    }

    #[test]
    fn zero_bend_keeps_spectrum() {
        let rep = fuchsian_octagon();
        let flat = bend(&rep, 0.0).unwrap();
        let s1 = compute_spectrum(&rep, 4);
        let s2 = compute_spectrum(&flat, 4);
        for (k, v) in &s1.entries {
            assert!((v - s2.entries[k]).abs() < 1e-9);
        }
    }

    #[test]
    fn evaluation_basics() {
        let rep = fuchsian_octagon();
        assert_eq!(rep.evaluate(&Word::empty()), MoebiusMap::IDENTITY);
        assert!(rep.evaluate(&Word(vec![Letter::a(1), Letter::a(1).inverse()])).distance_to_identity() < 1e-12);
        assert!(matches!(stable_length(&rep, rep.presentation().relator()), Err(Error::TrivialWord(_))));
        let a1 = w("a1");
        assert_eq!(stable_length(&rep, &a1).unwrap(), translation_length(&rep.evaluate(&a1)));
    }

    #[test]
    fn orbit_distance_bounds_stable_length() {
        let rep = bend(&fuchsian_octagon(), 0.3).unwrap();
        assert_eq!(orbit_distance(&rep, &Word::empty()), 0.0);
        for word in rep.presentation().words(3) {
            let d = orbit_distance(&rep, &word);
            assert!((d - orbit_distance(&rep, &word.inverse())).abs() < 1e-9);
            assert!(d + 1e-9 >= stable_length(&rep, &word).unwrap());
        }
    }

    #[test]
    fn spectrum_normalization_rules() {
        let spec = compute_spectrum(&fuchsian_octagon(), 2);
        assert_eq!(normalize_spectrum(&spec, 1.0).unwrap().entries, spec.entries);
        let once = normalize_spectrum(&spec, 2.0).unwrap();
        assert!(matches!(normalize_spectrum(&once, 2.0), Err(Error::AlreadyNormalized)));
        assert!(matches!(normalize_spectrum(&spec, 0.0), Err(Error::NonPositiveScale(_))));
        let (a, b) = (w("a1"), w("a1 b1"));
        let r0 = spec.get(&a).unwrap() / spec.get(&b).unwrap();
        let r1 = once.get(&a).unwrap() / once.get(&b).unwrap();
        assert!((r0 - r1).abs() < 1e-12);
    }

    #[test]
    fn complex_trace_search() {
        let rep = fuchsian_octagon();
        assert!(matches!(find_complex_trace_element(&rep, 4), Err(Error::NoComplexTrace(4))));
        let bent = bend(&rep, 0.6).unwrap();
        let g = find_complex_trace_element(&bent, 4).unwrap();
        assert!(g.len() <= 2);
        assert!(matches!(classify(&bent.evaluate(&g)), IsometryClass::LoxodromicStrict(_)));
    }

    #[test]
    fn jorgensen_screen() {
        let rep = fuchsian_octagon();
        let report = jorgensen_spot_check(&rep, 2);
        assert!(report.pairs_checked > 1000 && report.violations.is_empty());
        assert!(jorgensen_spot_check(&bend(&rep, 0.3).unwrap(), 2).violations.is_empty());

        let mut images = rep.images().to_vec();
        images[0] = MoebiusMap::diagonal(C64::from_polar(1.0, 0.01));
        let broken = Representation::new_unchecked(rep.presentation().clone(), images, RepKind::Fuchsian);
        assert!(!jorgensen_spot_check(&broken, 1).violations.is_empty());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let rep = bend(&fuchsian_octagon(), 0.6).unwrap();
        let back = Representation::from_json(&rep.to_json().unwrap()).unwrap();
        assert_eq!(back, rep);
        assert_eq!(back.id(), rep.id());
    }

    #[test]
    fn disk_angle_inverts_point_at_angle() {
        for t in [0.0, 0.1, 0.25, 0.5, 0.77, 0.999] {
            assert!((disk_angle(point_at_angle(t)) - t).abs() < 1e-12);
        }
    }
}
