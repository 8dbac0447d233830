//! Spiraling of the limit set at a loxodromic fixed point with non-real trace.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moebius::{classify, IsometryClass, ProjPoint, C64};
use crate::representations::{disk_angle, Representation};
use crate::surface_group::Word;

use super::walk::{BoundaryChart, LiftTable};
use super::{classify_angles, classify_image_pairs, BoundaryPointRef, PairConfig, PointSource};

pub const WITNESS_SCHEMA: &str = "qfsep/witness/v1";
/// Image axes closer than this cross.
pub const CROSSING_TOL: f64 = 1e-8;
/// Smallest usable net rotation per application of `gamma`.
pub const MIN_WINDING: f64 = 1e-4;

/// Four boundary points `ξ1 < ξ2 < ξ3 < ξ4 < γ⁺` on an arc ending at `γ⁺` whose images
/// alternate between the two halves of a real line through the image of `γ⁻`.
///
/// Boundary points are stored by ray position: `ξ = γ^power · η` with `η` in the
/// fundamental interval `[t0, γ t0]`. Images are in the chart where `γ` fixes 0 and ∞
/// and `φ(t0) = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpiralWitness {
    pub schema: String,
    pub rep_id: String,
    pub gamma: Word,
    /// Seed word; its attracting fixed point is `t0`.
    pub aux: Word,
    #[serde(rename = "Lambda")]
    pub lambda: f64,
    /// Rotation of the multiplier, turns.
    pub theta: f64,
    /// Measured net rotation across the fundamental interval, turns.
    #[serde(rename = "Theta")]
    pub big_theta: f64,
    pub n: Vec<i64>,
    pub m: Vec<i64>,
    pub xi: Vec<BoundaryPointRef>,
    pub xi_star: BoundaryPointRef,
    pub images: Vec<C64>,
    pub radii: Vec<f64>,
    pub arglift: Vec<f64>,
    #[serde(rename = "R0")]
    pub r_upper: f64,
    #[serde(rename = "r0")]
    pub r_lower: f64,
}

impl SpiralWitness {
    pub fn ray(&self, k: usize) -> Option<(i64, f64)> {
        match self.xi.get(k)?.source {
            PointSource::RayLimit { power, offset } => Some((power, offset)),
            PointSource::FixedPoint => None,
        }
    }
}

fn strict_data(rep: &Representation, gamma: &Word) -> Result<()> {
    match classify(&rep.evaluate(gamma)) {
        IsometryClass::LoxodromicStrict(_) => Ok(()),
        c => Err(Error::NotLoxodromic(format!("{gamma} ({}; need non-real trace)", c.name()))),
    }
}

/// Solves `s(offset) + power·Θ = level` inside the table cell `i`.
fn bisect_level(chart: &BoundaryChart, table: &LiftTable, i: usize, power: i64, theta: f64, level: f64) -> Result<(f64, f64, C64)> {
    let shift = power as f64 * theta;
    let (mut lo, mut hi) = (table.u[i], table.u[i + 1]);
    let f_lo = table.s[i] + shift - level;
    if f_lo == 0.0 {
        return Ok((lo, table.s[i], table.z[i]));
    }
    let mut best = (lo, table.s[i], table.z[i]);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (_, s, z) = chart.lift_near(table, i, mid)?;
        best = (mid, s, z);
        let f = s + shift - level;
        if f == 0.0 {
            break;
        }
        if (f > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best)
}

/// First ray position in `[n, m)` whose lifted argument lies on `k/2 + Z`.
fn level_crossing(chart: &BoundaryChart, table: &LiftTable, theta: f64, n: i64, m: i64, k: usize) -> Result<(i64, f64, f64, C64)> {
    let half = k as f64 / 2.0;
    for power in n..m {
        let shift = power as f64 * theta;
        for i in 0..table.u.len() - 1 {
            let (a, b) = (table.s[i] + shift, table.s[i + 1] + shift);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let level = half + (lo - half).ceil();
            if level <= hi {
                let (u, s, z) = bisect_level(chart, table, i, power, theta, level)?;
                if u >= 1.0 {
                    // the right end of the interval is the next power's left end
                    continue;
                }
                return Ok((power, u, s + shift, z));
            }
        }
    }
    Err(Error::Witness(format!("no level crossing for xi_{k} in [{n}, {m})")))
}

/// Builds the four-point spiral configuration at `gamma`.
///
/// The seed word is searched up to `maxlen`. Fails when `gamma` has real trace, when the
/// measured rotation is below [`MIN_WINDING`], or when the result does not verify.
pub fn find_spiral_witness(rep: &Representation, gamma: &Word, maxlen: usize) -> Result<SpiralWitness> {
    strict_data(rep, gamma)?;
    let chart = BoundaryChart::new(rep, gamma, maxlen)?;
    let table = chart.lift_table()?;
    let big_theta = table.winding();
    if big_theta.abs() < MIN_WINDING {
        return Err(Error::Witness(format!("net rotation {big_theta:e} below {MIN_WINDING:e}")));
    }
    let lambda = chart.data.lambda;
    // largest radius on [t0, t1], smallest radius on the translates beyond t1
    let r_upper = table.r_max();
    let r_lower = lambda * table.r_min();
    let p = (1.0 / big_theta.abs()).floor() as i64 + 1;
    let mut q = 1i64;
    while lambda.powi(q as i32) <= r_upper / r_lower {
        q += 1;
    }
    let mut n = vec![0i64];
    let mut m = Vec::new();
    for k in 0..4 {
        m.push(n[k] + p);
        if k < 3 {
            n.push(m[k] + q);
        }
    }
    if !lambda.powi(m[3] as i32).is_finite() {
        return Err(Error::Witness("image radii overflow; rotation too small".into()));
    }
    let mut xi = Vec::new();
    let mut images = Vec::new();
    let mut radii = Vec::new();
    let mut arglift = Vec::new();
    let mult = chart.multiplier();
    for k in 0..4 {
        let (power, offset, s, z) = level_crossing(&chart, &table, big_theta, n[k], m[k], k + 1)?;
        let (_, path) = chart.phi_offset(offset)?;
        let image = z * mult.powi(power as i32);
        xi.push(BoundaryPointRef {
            word: gamma.pow(power).mul(&path),
            angle: disk_angle(chart.ref_point(power, offset)),
            source: PointSource::RayLimit { power, offset },
        });
        radii.push(image.norm());
        images.push(image);
        arglift.push(s);
    }
    let xi_star = BoundaryPointRef {
        word: gamma.clone(),
        angle: disk_angle(chart.ref_data.fix_plus),
        source: PointSource::FixedPoint,
    };
    let witness = SpiralWitness {
        schema: WITNESS_SCHEMA.into(),
        rep_id: rep.id(),
        gamma: gamma.clone(),
        aux: chart.aux.clone(),
        lambda,
        theta: chart.data.theta,
        big_theta,
        n,
        m,
        xi,
        xi_star,
        images,
        radii,
        arglift,
        r_upper,
        r_lower,
    };
    let report = check_witness(&witness, rep);
    if !report.ok() {
        return Err(Error::Witness(report.failures.join("; ")));
    }
    Ok(witness)
}

/// Outcome of [`check_witness`], with the measured image-axis separations.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct WitnessReport {
    pub failures: Vec<String>,
    /// Common perpendicular of the images of `(ξ1, ξ4)` and `(ξ2, ξ3)`.
    pub linked_gap: Option<f64>,
    /// Common perpendicular of the images of `(ξ1, ξ3)` and `(ξ2, ξ4)`.
    pub aligned_gap: Option<f64>,
}

impl WitnessReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Recomputes index inequalities, radii, boundary orders and image configurations.
pub fn check_witness(w: &SpiralWitness, rep: &Representation) -> WitnessReport {
    let mut report = WitnessReport::default();
    let mut fail = |s: String| report.failures.push(s);
    if w.xi.len() != 4 || w.n.len() != 4 || w.m.len() != 4 || w.images.len() != 4 || w.radii.len() != 4 {
        fail("witness needs four points".into());
        return report;
    }
    for k in 0..4 {
        if w.n[k] >= w.m[k] {
            fail(format!("n({k}) >= m({k})"));
        }
        if (w.m[k] - w.n[k]) as f64 * w.big_theta.abs() <= 1.0 {
            fail(format!("(m-n)|Theta| <= 1 at k = {}", k + 1));
        }
        if k < 3 {
            if w.m[k] >= w.n[k + 1] {
                fail(format!("m({k}) >= n({})", k + 1));
            }
            if w.lambda.powi((w.n[k + 1] - w.m[k]) as i32) <= w.r_upper / w.r_lower {
                fail(format!("Lambda^(n(k+1)-m(k)) <= R0/r0 at k = {}", k + 1));
            }
        }
    }
    if !(w.r_upper > 0.0 && w.r_lower > 0.0) {
        fail("chart radius bounds must be positive".into());
    }

    if let Err(e) = strict_data(rep, &w.gamma) {
        fail(e.to_string());
        return report;
    }
    let chart = match BoundaryChart::with_seed(rep, &w.gamma, &w.aux) {
        Ok(c) => c,
        Err(e) => {
            fail(e.to_string());
            return report;
        }
    };
    let d = w.big_theta - chart.data.theta;
    if (d - d.round()).abs() > 1e-6 {
        fail(format!("Theta {} is not a representative of theta {}", w.big_theta, chart.data.theta));
    }
    if (w.lambda - chart.data.lambda).abs() > 1e-9 * chart.data.lambda {
        fail("Lambda differs from the multiplier of gamma".into());
    }
    match chart.lift_table() {
        Ok(t) => {
            if (t.r_max() - w.r_upper).abs() > 1e-9 * t.r_max() || (chart.data.lambda * t.r_min() - w.r_lower).abs() > 1e-9 * w.r_lower.abs() {
                fail("R0, r0 do not match the chart".into());
            }
        }
        Err(e) => fail(e.to_string()),
    }

    // order on the boundary circle: increasing ray positions, all below gamma+
    let mut positions = Vec::new();
    for k in 0..4 {
        match w.ray(k) {
            Some((power, offset)) if (0.0..1.0).contains(&offset) => positions.push(power as f64 + offset),
            _ => fail(format!("xi_{} is not a ray point with offset in [0, 1)", k + 1)),
        }
    }
    if positions.len() == 4 {
        if !positions.windows(2).all(|p| p[0] < p[1]) {
            fail("xi_1..xi_4 are not in succession towards gamma+".into());
        }
        // positions order the arc; the complementary arc closes the circle after gamma+
        let mut rank: Vec<usize> = (0..4).collect();
        rank.sort_by(|&i, &j| positions[i].total_cmp(&positions[j]));
        let mut angle = [0.0; 4];
        for (r, &i) in rank.iter().enumerate() {
            angle[i] = 0.1 + 0.2 * r as f64;
        }
        if classify_angles((angle[0], angle[3]), (angle[1], angle[2])) != PairConfig::UnlinkedAligned {
            fail("(xi1, xi4), (xi2, xi3) not unlinked aligned on the circle".into());
        }
        if classify_angles((angle[0], angle[2]), (angle[1], angle[3])) != PairConfig::Linked {
            fail("(xi1, xi3), (xi2, xi4) not linked on the circle".into());
        }
    }

    // images, recomputed
    let mut images = Vec::new();
    for k in 0..4 {
        let Some((power, offset)) = w.ray(k) else { continue };
        match chart.phi_ray(power, offset) {
            Ok(z) => images.push(z),
            Err(e) => fail(e.to_string()),
        }
    }
    if images.len() != 4 {
        return report;
    }
    for k in 0..4 {
        if (images[k] - w.images[k]).norm() > 1e-9 * images[k].norm() {
            fail(format!("stored image of xi_{} does not reproduce", k + 1));
        }
    }
    let radii: Vec<f64> = images.iter().map(|z| z.norm()).collect();
    if !radii.windows(2).all(|r| r[0] < r[1]) {
        fail("radii are not strictly increasing".into());
    }
    let pt = |k: usize| ProjPoint::finite(images[k]);
    match classify_image_pairs((pt(0), pt(3)), (pt(1), pt(2)), CROSSING_TOL) {
        Ok((PairConfig::Linked, gap)) => report.linked_gap = Some(gap),
        Ok((c, gap)) => {
            report.linked_gap = Some(gap);
            report.failures.push(format!("image of (xi1, xi4), (xi2, xi3) is {} (perpendicular {gap:e})", c.name()));
        }
        Err(e) => report.failures.push(e.to_string()),
    }
    match classify_image_pairs((pt(0), pt(2)), (pt(1), pt(3)), CROSSING_TOL) {
        Ok((PairConfig::UnlinkedAligned, gap)) => report.aligned_gap = Some(gap),
        Ok((c, gap)) => {
            report.aligned_gap = Some(gap);
            report.failures.push(format!("image of (xi1, xi3), (xi2, xi4) is {} (perpendicular {gap:e})", c.name()));
        }
        Err(e) => report.failures.push(e.to_string()),
    }
    report
}

pub fn verify_witness_orders(w: &SpiralWitness, rep: &Representation) -> bool {
    check_witness(w, rep).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::{bend, find_complex_trace_element, fuchsian_octagon};

    fn witness() -> (Representation, SpiralWitness) {
        let q = bend(&fuchsian_octagon(), 0.6).unwrap();
        let g = find_complex_trace_element(&q, 4).unwrap();
        let w = find_spiral_witness(&q, &g, 8).unwrap();
        (q, w)
    }

    #[test]
    fn bent_witness_verifies() {
        let (q, w) = witness();
        let report = check_witness(&w, &q);
        assert!(report.ok(), "{:?}", report.failures);
        assert!(report.linked_gap.unwrap() < CROSSING_TOL);
        assert!(w.radii.windows(2).all(|r| r[0] < r[1]));
    }

    #[test]
    fn tampered_witnesses_fail() {
        let (q, w) = witness();
        let mut swapped = w.clone();
        swapped.xi.swap(1, 2);
        swapped.images.swap(1, 2);
        swapped.radii.swap(1, 2);
        assert!(!verify_witness_orders(&swapped, &q));
        let mut flat = w.clone();
        flat.big_theta = 0.0;
        assert!(!verify_witness_orders(&flat, &q));
    }

    #[test]
    fn fuchsian_has_no_witness() {
        let f = fuchsian_octagon();
        assert!(find_spiral_witness(&f, &"a1 a2".parse().unwrap(), 8).is_err());
    }
}
