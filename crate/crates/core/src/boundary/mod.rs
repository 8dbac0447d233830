//! The circle at infinity of the group, coordinatized by the reference octagon,
//! and its image under the boundary map of a target representation.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moebius::{classify, Geodesic3, IsometryClass, MoebiusMap, ProjPoint, C64};
use crate::representations::{disk_angle, fuchsian_octagon, fuchsian_regular, Representation};
use crate::surface_group::Word;

mod spiral;
mod walk;

pub use spiral::{
    check_witness, find_spiral_witness, verify_witness_orders, SpiralWitness, WitnessReport, CROSSING_TOL, MIN_WINDING,
    WITNESS_SCHEMA,
};
pub use walk::{BoundaryChart, LiftTable};

/// Points closer than this many turns make a pair configuration degenerate.
pub const ANGLE_TOL: f64 = 1e-8;

pub const LIMIT_SET_SCHEMA: &str = "qfsep/limitset/v1";

/// How a boundary point was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointSource {
    /// Attracting fixed point of the word.
    FixedPoint,
    /// `γ^power` applied to the point at logarithmic offset `offset ∈ [0, 1)` of the
    /// fundamental interval `[t0, γ t0]`.
    RayLimit { power: i64, offset: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPointRef {
    pub word: Word,
    /// Turns in `[0, 1)` on the reference disk boundary.
    pub angle: f64,
    pub source: PointSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairConfig {
    Linked,
    UnlinkedAligned,
    UnlinkedMisaligned,
    Degenerate,
}

impl PairConfig {
    pub fn name(self) -> &'static str {
        match self {
            PairConfig::Linked => "linked",
            PairConfig::UnlinkedAligned => "unlinked_aligned",
            PairConfig::UnlinkedMisaligned => "unlinked_misaligned",
            PairConfig::Degenerate => "degenerate",
        }
    }
}

fn octagon() -> &'static Representation {
    static REF: OnceLock<Representation> = OnceLock::new();
    REF.get_or_init(fuchsian_octagon)
}

/// The reference Fuchsian representation of the given genus.
pub fn reference(genus: usize) -> Result<Representation> {
    if genus == 2 {
        Ok(octagon().clone())
    } else {
        fuchsian_regular(genus)
    }
}

fn reference_for(w: &Word) -> Result<std::borrow::Cow<'static, Representation>> {
    let genus = w.letters().iter().map(|l| l.gen as usize / 2 + 1).max().unwrap_or(2).max(2);
    if genus == 2 {
        Ok(std::borrow::Cow::Borrowed(octagon()))
    } else {
        Ok(std::borrow::Cow::Owned(fuchsian_regular(genus)?))
    }
}

/// `(repelling, attracting)` angles of `w` on the genus-2 reference circle.
pub fn fixed_angles(w: &Word) -> Result<(f64, f64)> {
    fixed_angles_in(&*reference_for(w)?, w)
}

pub fn fixed_angles_in(reference: &Representation, w: &Word) -> Result<(f64, f64)> {
    let m = reference.evaluate(w);
    match classify(&m) {
        IsometryClass::Hyperbolic(d) | IsometryClass::LoxodromicStrict(d) => {
            Ok((disk_angle(d.fix_minus), disk_angle(d.fix_plus)))
        }
        IsometryClass::Identity => Err(Error::TrivialWord(w.to_string())),
        c => Err(Error::NotLoxodromic(format!("{w} ({})", c.name()))),
    }
}

fn circle_gap(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Relative position of the ordered pairs `a = (α1, α2)` and `b = (β1, β2)` on the circle.
pub fn classify_angles(a: (f64, f64), b: (f64, f64)) -> PairConfig {
    let pts = [a.0, a.1, b.0, b.1];
    for i in 0..4 {
        for j in i + 1..4 {
            if circle_gap(pts[i], pts[j]) < ANGLE_TOL {
                return PairConfig::Degenerate;
            }
        }
    }
    let rot = |x: f64| (x - a.0).rem_euclid(1.0);
    let (a2, b1, b2) = (rot(a.1), rot(b.0), rot(b.1));
    let in1 = b1 < a2;
    let in2 = b2 < a2;
    if in1 != in2 {
        PairConfig::Linked
    } else if (in1 && b1 < b2) || (!in1 && b1 > b2) {
        PairConfig::UnlinkedAligned
    } else {
        PairConfig::UnlinkedMisaligned
    }
}

/// Configuration of the axes of `a` and `b` on the reference circle.
pub fn classify_pairs(a: &Word, b: &Word) -> Result<PairConfig> {
    Ok(classify_angles(fixed_angles(a)?, fixed_angles(b)?))
}

pub fn classify_pairs_in(reference: &Representation, a: &Word, b: &Word) -> Result<PairConfig> {
    Ok(classify_angles(fixed_angles_in(reference, a)?, fixed_angles_in(reference, b)?))
}

fn det(p: ProjPoint, q: ProjPoint) -> C64 {
    p.w1 * q.w2 - p.w2 * q.w1
}

/// `tr(P_a P_b)` for the attracting projections of loxodromics with the given fixed points.
///
/// Real and `> 1` for aligned pairs on a circle, in `(0, 1)` for linked ones and negative
/// for misaligned ones.
pub fn projection_trace(a_rep: ProjPoint, a_att: ProjPoint, b_rep: ProjPoint, b_att: ProjPoint) -> C64 {
    let (a_rep, a_att, b_rep, b_att) = (a_rep.normalized(), a_att.normalized(), b_rep.normalized(), b_att.normalized());
    det(a_att, b_rep) * det(b_att, a_rep) / (det(a_att, a_rep) * det(b_att, b_rep))
}

const SHARED_END_TOL: f64 = 1e-12;

/// Configuration of two ordered pairs of points of `C ∪ {∞}`, in hyperbolic 3-space,
/// with the length of the common perpendicular of the two axes.
///
/// The complex distance `δ` of the axes satisfies `cosh²(δ/2) = X` for the projection
/// trace `X`, which stays well conditioned when the points differ by many orders of
/// magnitude. Crossing axes (perpendicular below `cross_tol`) count as linked. Otherwise
/// the four points must lie on a common circle (real `X`) to be aligned or misaligned.
pub fn classify_image_pairs(
    a: (ProjPoint, ProjPoint),
    b: (ProjPoint, ProjPoint),
    cross_tol: f64,
) -> Result<(PairConfig, f64)> {
    let x = projection_trace(a.0, a.1, b.0, b.1);
    if !x.is_finite() {
        return Err(Error::DegenerateGeodesic(0.0));
    }
    // X = 0 or 1 exactly when the axes share an endpoint
    if x.norm() < SHARED_END_TOL || (x - 1.0).norm() < SHARED_END_TOL {
        return Ok((PairConfig::Degenerate, 0.0));
    }
    let gap = (2.0 * x.sqrt().acosh()).re.abs();
    if gap < cross_tol {
        return Ok((PairConfig::Linked, gap));
    }
    let config = if x.im.abs() > 1e-6 * x.norm().max(1.0) {
        PairConfig::Degenerate
    } else if x.re > 1.0 {
        PairConfig::UnlinkedAligned
    } else if x.re < 0.0 {
        PairConfig::UnlinkedMisaligned
    } else {
        PairConfig::Linked
    };
    Ok((config, gap))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitSetEntry {
    pub word: Word,
    pub angle_ref: f64,
    /// Attracting fixed point under the target; `None` is ∞.
    pub image: Option<C64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitSetSample {
    pub rep_id: String,
    pub maxlen: usize,
    pub entries: Vec<LimitSetEntry>,
}

/// Attracting fixed points of all conjugacy representatives up to `maxlen`, paired with
/// their position on the reference circle. Sorted by reference angle.
pub fn limit_set_sample(rep: &Representation, maxlen: usize) -> Result<LimitSetSample> {
    let reference = reference(rep.presentation().genus())?;
    let words = rep.presentation().conjugacy_reps(maxlen, None);
    let mut entries: Vec<LimitSetEntry> = words
        .par_iter()
        .filter_map(|w| {
            let angle_ref = fixed_angles_in(&reference, w).ok()?.1;
            let m = rep.evaluate(w);
            let fp = match classify(&m) {
                IsometryClass::Hyperbolic(d) | IsometryClass::LoxodromicStrict(d) => d.fix_plus,
                _ => return None,
            };
            Some(LimitSetEntry { word: w.clone(), angle_ref, image: fp.to_complex() })
        })
        .collect();
    entries.sort_by(|x, y| x.angle_ref.total_cmp(&y.angle_ref).then_with(|| x.word.cmp(&y.word)));
    Ok(LimitSetSample { rep_id: rep.id(), maxlen, entries })
}

/// Conjugates `rep` so that `gamma` has repelling point 0 and attracting point ∞.
///
/// Returns the conjugated representation and the conjugating chart map.
pub fn normalize_at(rep: &Representation, gamma: &Word) -> Result<(Representation, MoebiusMap)> {
    let m = rep.evaluate(gamma);
    let fp = match classify(&m) {
        IsometryClass::LoxodromicStrict(d) => (d.fix_minus, d.fix_plus),
        c => return Err(Error::NotLoxodromic(format!("{gamma} ({}; need non-real trace)", c.name()))),
    };
    let chart = Geodesic3::new(fp.0, fp.1)?.normalizer();
    Ok((rep.conjugate(&chart), chart))
}

/// Modulus and continuous argument lift, in turns, along a sequence of points.
///
/// Consecutive arguments differ by their representative in `(-1/2, 1/2]`.
pub fn argument_lift(points: &[C64]) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(points.len());
    let mut prev: Option<f64> = None;
    for z in points {
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() == 0.0 {
            return Err(Error::ExcludedPoint);
        }
        let a = z.arg() / std::f64::consts::TAU;
        let s = match prev {
            None => a,
            Some(p) => p + crate::moebius::wrap_turns(a - p),
        };
        out.push((z.norm(), s));
        prev = Some(s);
    }
    Ok(out)
}

/// Same as [`argument_lift`] but anchored so the first lift is `s0`.
pub fn argument_lift_from(points: &[C64], s0: f64) -> Result<Vec<(f64, f64)>> {
    let mut v = argument_lift(points)?;
    if let Some(&(_, first)) = v.first() {
        let shift = s0 - first;
        for e in &mut v {
            e.1 += shift;
        }
    }
    Ok(v)
}
