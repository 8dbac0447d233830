//! Evaluation of the boundary map away from fixed points.
//!
//! A boundary point of the reference circle is approached by a descent through the
//! orbit of the reference basepoint; the same words applied to the target basepoint
//! converge to its image.

use crate::error::{Error, Result};
use crate::moebius::{classify, Geodesic3, IsometryClass, LoxodromicData, MoebiusMap, Point3, ProjPoint, C64};
use crate::representations::Representation;
use crate::surface_group::{Letter, Word};

use super::{argument_lift, reference};

/// The walk stops once the target orbit point is this close to the sphere, relative to its modulus.
pub const WALK_TOL: f64 = 1e-13;
const MAX_STEPS: usize = 600;
const LOOKAHEAD: usize = 5;
/// Largest argument jump between neighbouring lift samples, in turns.
pub const LIFT_STEP: f64 = 0.05;

/// Normalized charts at a loxodromic `gamma` for both the reference and the target.
///
/// In both charts `gamma` fixes 0 and ∞ and the seed point `t0` (attracting fixed point
/// of `aux`) sits at 1. Reference points on the arc from `γ⁻` through `t0` to `γ⁺` are
/// addressed by ray position `P`, the point `Λ^P` of the reference chart.
#[derive(Clone, Debug)]
pub struct BoundaryChart {
    pub reference: Representation,
    pub target: Representation,
    pub gamma: Word,
    pub aux: Word,
    pub ref_chart: MoebiusMap,
    pub chart: MoebiusMap,
    pub ref_data: LoxodromicData,
    pub data: LoxodromicData,
    /// Reference descent steps, shortest first.
    steps: std::sync::Arc<Vec<(Vec<Letter>, MoebiusMap)>>,
}

fn scaled_to_one(n: MoebiusMap, p: ProjPoint) -> Result<MoebiusMap> {
    let z = n.apply_proj(p).to_complex().ok_or(Error::ExcludedPoint)?;
    if z.norm() < 1e-12 {
        return Err(Error::ExcludedPoint);
    }
    let k = (C64::new(1.0, 0.0) / z).sqrt();
    Ok(MoebiusMap::new(k, C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0) / k)?.compose(&n))
}

fn loxodromic(m: &MoebiusMap, w: &Word) -> Result<LoxodromicData> {
    match classify(m) {
        IsometryClass::Hyperbolic(d) | IsometryClass::LoxodromicStrict(d) => Ok(d),
        c => Err(Error::NotLoxodromic(format!("{w} ({})", c.name()))),
    }
}

impl BoundaryChart {
    /// The seed word is the shortlex-first word up to `maxlen` whose reference axis
    /// stays away from the axis of `gamma`.
    pub fn new(target: &Representation, gamma: &Word, maxlen: usize) -> Result<Self> {
        let reference = reference(target.presentation().genus())?;
        let ref_data = loxodromic(&reference.evaluate(gamma), gamma)?;
        let ref_norm = Geodesic3::new(ref_data.fix_minus, ref_data.fix_plus)?.normalizer();
        let far = |p: ProjPoint| {
            let x = ref_norm.apply_proj(p);
            x.chordal(ProjPoint::zero()) > 1e-3 && x.chordal(ProjPoint::infinity()) > 1e-3
        };
        let aux = reference
            .presentation()
            .words(maxlen.max(1))
            .into_iter()
            .filter(|w| !w.is_empty())
            .find(|w| {
                loxodromic(&reference.evaluate(w), w).is_ok_and(|d| far(d.fix_plus) && far(d.fix_minus))
            })
            .ok_or_else(|| Error::Witness("no seed word".into()))?;
        Self::with_seed(target, gamma, &aux)
    }

    pub fn with_seed(target: &Representation, gamma: &Word, aux: &Word) -> Result<Self> {
        let reference = reference(target.presentation().genus())?;
        let ref_data = loxodromic(&reference.evaluate(gamma), gamma)?;
        let data = loxodromic(&target.evaluate(gamma), gamma)?;
        let ref_norm = Geodesic3::new(ref_data.fix_minus, ref_data.fix_plus)?.normalizer();
        let norm = Geodesic3::new(data.fix_minus, data.fix_plus)?.normalizer();
        let ref_seed = loxodromic(&reference.evaluate(aux), aux)?.fix_plus;
        let seed = loxodromic(&target.evaluate(aux), aux)?.fix_plus;
        let steps = (1..=LOOKAHEAD)
            .flat_map(|n| reference.presentation().words(n).into_iter().filter(move |w| w.len() == n))
            .map(|w| {
                let m = reference.evaluate_letters(&w.0);
                (w.0, m)
            })
            .collect();
        Ok(Self {
            steps: std::sync::Arc::new(steps),
            ref_chart: scaled_to_one(ref_norm, ref_seed)?,
            chart: scaled_to_one(norm, seed)?,
            reference,
            target: target.clone(),
            gamma: gamma.clone(),
            aux: aux.clone(),
            ref_data,
            data,
        })
    }

    /// `λ e^{2πiθ}`, the action of `gamma` in the target chart.
    pub fn multiplier(&self) -> C64 {
        self.data.multiplier()
    }

    /// The reference point at ray position `power + offset`, in original coordinates.
    pub fn ref_point(&self, power: i64, offset: f64) -> ProjPoint {
        let x = self.ref_data.lambda.powf(power as f64 + offset);
        self.ref_chart.inverse().apply_proj(ProjPoint::real(x))
    }

    /// Boundary map at ray position `offset ∈ [0, 1]` in the target chart, with the descent word.
    pub fn phi_offset(&self, offset: f64) -> Result<(C64, Word)> {
        let eta = self.ref_point(0, offset);
        self.walk(eta)
    }

    /// Boundary map at ray position `power + offset`, by equivariance from the fundamental interval.
    pub fn phi_ray(&self, power: i64, offset: f64) -> Result<C64> {
        let (z, _) = self.phi_offset(offset)?;
        Ok(z * self.multiplier().powi(power as i32))
    }

    /// Descends through the reference orbit towards `eta`, mirroring each step in the target.
    pub fn walk(&self, eta: ProjPoint) -> Result<(C64, Word)> {
        let o = self.reference.basepoint();
        let y = self.target.basepoint();
        // Busemann function of eta up to an additive constant
        let busemann = |eta: ProjPoint, p: Point3| {
            let v = (p.z * eta.w2 - eta.w1).norm_sqr() + p.t * p.t * eta.w2.norm_sqr();
            (v / p.t).ln()
        };
        // eta seen from the current orbit point, updated step by step to keep heights moderate
        let mut local = eta.normalized();
        let mut g = self.chart;
        let mut letters: Vec<Letter> = Vec::new();
        // single letters first; longer words only when no shorter step descends
        for _ in 0..MAX_STEPS {
            let p = g.apply(y);
            if p.t <= WALK_TOL * (1.0 + p.z.norm()) {
                return Ok((p.z, Word(letters)));
            }
            let here = busemann(local, o);
            let mut best: Option<(&[Letter], &MoebiusMap, f64)> = None;
            for (step, m) in self.steps.iter() {
                if best.is_some() && step.len() > best.map_or(0, |b| b.0.len()) {
                    break;
                }
                if letters.last().is_some_and(|l| l.cancels(step[0])) {
                    continue;
                }
                let value = busemann(local, m.apply(o));
                if value < here && best.is_none_or(|b| value < b.2) {
                    best = Some((step, m, value));
                }
            }
            let Some((step, m, _)) = best else {
                return Err(Error::Witness("boundary walk stalled".into()));
            };
            local = m.inverse().apply_proj(local);
            g = g.compose(&self.target.evaluate_letters(step));
            letters.extend_from_slice(step);
        }
        Err(Error::Witness("boundary walk did not converge".into()))
    }

    /// Samples the fundamental interval finely enough that neighbouring arguments differ
    /// by at most [`LIFT_STEP`] turns, and lifts the argument starting from 0 at `t0`.
    pub fn lift_table(&self) -> Result<LiftTable> {
        const INITIAL: usize = 64;
        let mut pts: Vec<(f64, C64)> = (0..=INITIAL)
            .map(|i| {
                let u = i as f64 / INITIAL as f64;
                self.phi_offset(u).map(|(z, _)| (u, z))
            })
            .collect::<Result<_>>()?;
        loop {
            let mut refined = Vec::with_capacity(pts.len() * 2);
            let mut changed = false;
            for w in pts.windows(2) {
                refined.push(w[0]);
                let jump = crate::moebius::wrap_turns((w[1].1 / w[0].1).arg() / std::f64::consts::TAU).abs();
                if jump > LIFT_STEP {
                    if w[1].0 - w[0].0 < 1e-9 {
                        return Err(Error::Witness("sample too sparse: argument jumps across a tiny interval".into()));
                    }
                    let u = 0.5 * (w[0].0 + w[1].0);
                    refined.push((u, self.phi_offset(u)?.0));
                    changed = true;
                }
            }
            refined.push(*pts.last().expect("nonempty"));
            pts = refined;
            if !changed {
                break;
            }
        }
        let z: Vec<C64> = pts.iter().map(|p| p.1).collect();
        let lift = argument_lift(&z)?;
        let s0 = lift[0].1;
        Ok(LiftTable {
            u: pts.iter().map(|p| p.0).collect(),
            z,
            r: lift.iter().map(|p| p.0).collect(),
            s: lift.iter().map(|p| p.1 - s0).collect(),
        })
    }

    /// Lift at `offset`, continued from the tabulated neighbour at index `i`.
    pub fn lift_near(&self, table: &LiftTable, i: usize, offset: f64) -> Result<(f64, f64, C64)> {
        let (z, _) = self.phi_offset(offset)?;
        let a = z.arg() / std::f64::consts::TAU;
        let s = table.s[i] + crate::moebius::wrap_turns(a - table.s[i]);
        Ok((z.norm(), s, z))
    }
}

/// The boundary map on a grid of the fundamental interval, with a continuous argument.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftTable {
    pub u: Vec<f64>,
    pub z: Vec<C64>,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
}

impl LiftTable {
    /// Net rotation across the fundamental interval, in turns.
    pub fn winding(&self) -> f64 {
        self.s.last().copied().unwrap_or(0.0) - self.s[0]
    }

    pub fn r_max(&self) -> f64 {
        self.r.iter().cloned().fold(0.0, f64::max)
    }

    pub fn r_min(&self) -> f64 {
        self.r.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::fixed_points;
    use crate::representations::{bend, fuchsian_octagon};

    #[test]
    fn walk_matches_fixed_points() {
        let q = bend(&fuchsian_octagon(), 0.6).unwrap();
        let chart = BoundaryChart::new(&q, &"a1 a2".parse().unwrap(), 4).unwrap();
        for s in ["b1", "a2 B1", "B2 a1 b1", "b1 b1 a2"] {
            let w: Word = s.parse().unwrap();
            let eta = fixed_points(&chart.reference.evaluate(&w)).unwrap().attracting;
            let want = chart.chart.apply_proj(fixed_points(&q.evaluate(&w)).unwrap().attracting);
            let (got, path) = chart.walk(eta).unwrap();
            assert!(want.chordal(ProjPoint::finite(got)) < 1e-11, "{s}: {got} vs {want:?}");
            assert!(path.len() > 5);
        }
    }

    #[test]
    fn seed_sits_at_one() {
        let q = bend(&fuchsian_octagon(), 0.6).unwrap();
        let chart = BoundaryChart::new(&q, &"a1 a2".parse().unwrap(), 4).unwrap();
        let (z, _) = chart.phi_offset(0.0).unwrap();
        assert!((z - 1.0).norm() < 1e-11);
        let (z1, _) = chart.phi_offset(1.0).unwrap();
        assert!((z1 - chart.multiplier()).norm() < 1e-10 * chart.data.lambda);
    }

    #[test]
    fn lift_winding_is_a_rotation_representative() {
        let q = bend(&fuchsian_octagon(), 0.6).unwrap();
        let chart = BoundaryChart::new(&q, &"a1 a2".parse().unwrap(), 4).unwrap();
        let t = chart.lift_table().unwrap();
        let d = t.winding() - chart.data.theta;
        assert!((d - d.round()).abs() < 1e-9);
        assert!(t.s.windows(2).all(|w| (w[1] - w[0]).abs() <= LIFT_STEP));
    }
}
