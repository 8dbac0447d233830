//! Isometries of hyperbolic 3-space in the upper-half-space model.
//!
//! A [`MoebiusMap`] is a unimodular complex 2x2 matrix acting on the Riemann
//! sphere by `z -> (az + b) / (cz + d)` and on `H^3` by its Poincaré extension.
//! Points of the sphere are kept projectively as [`ProjPoint`] so that maps
//! with `c = 0` and the point at infinity need no special cases.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Residual allowed in algebraic identities such as `det = 1`.
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Threshold for geometric predicates (on a geodesic, coincident points).
pub const GEOMETRIC_TOL: f64 = 1e-10;
/// Traces within this distance of 2 are parabolic (or the identity).
pub const PARABOLIC_TOL: f64 = 1e-9;
/// Relative size of `Im tr` below which a trace counts as real.
pub const REAL_TRACE_TOL: f64 = 1e-9;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// A point of `C ∪ {∞}` in homogeneous coordinates `(w1 : w2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjPoint {
    pub w1: C64,
    pub w2: C64,
}

impl ProjPoint {
    pub fn finite(z: C64) -> Self {
        Self { w1: z, w2: ONE }
    }

    pub fn real(x: f64) -> Self {
        Self::finite(C64::new(x, 0.0))
    }

    pub fn infinity() -> Self {
        Self { w1: ONE, w2: ZERO }
    }

    pub fn zero() -> Self {
        Self::finite(ZERO)
    }

    /// Rescales so the larger coordinate has modulus one.
    pub fn normalized(self) -> Self {
        let s = self.w1.norm().max(self.w2.norm());
        if s == 0.0 || !s.is_finite() {
            return self;
        }
        Self { w1: self.w1 / s, w2: self.w2 / s }
    }

    /// Affine coordinate, or `None` at infinity.
    pub fn to_complex(self) -> Option<C64> {
        let p = self.normalized();
        if p.w2.norm() <= f64::EPSILON * p.w1.norm() {
            None
        } else {
            Some(p.w1 / p.w2)
        }
    }

    pub fn is_infinite(self) -> bool {
        self.to_complex().is_none()
    }

    /// Chordal distance on the unit-diameter Riemann sphere, in `[0, 1]`.
    pub fn chordal(self, other: ProjPoint) -> f64 {
        let p = self.normalized();
        let q = other.normalized();
        let num = (p.w1 * q.w2 - p.w2 * q.w1).norm();
        let den = (p.w1.norm_sqr() + p.w2.norm_sqr()).sqrt()
            * (q.w1.norm_sqr() + q.w2.norm_sqr()).sqrt();
        num / den
    }

    pub fn approx_eq(self, other: ProjPoint, tol: f64) -> bool {
        self.chordal(other) <= tol
    }
}

impl From<C64> for ProjPoint {
    fn from(z: C64) -> Self {
        Self::finite(z)
    }
}

/// Unimodular matrix `[[a, b], [c, d]]`, `ad - bc = 1`, up to sign.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl MoebiusMap {
    pub const IDENTITY: MoebiusMap = MoebiusMap { a: ONE, b: ZERO, c: ZERO, d: ONE };

    /// Builds a map from arbitrary nonsingular entries, dividing by a square root of the determinant.
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !(det.norm() > 1e-300) || det.norm() <= 1e-14 * scale * scale {
            return Err(Error::Singular(det.norm()));
        }
        let s = det.sqrt();
        Ok(Self { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    /// `diag(k, 1/k)`, acting as `z -> k^2 z`.
    pub fn diagonal(k: C64) -> Self {
        Self { a: k, b: ZERO, c: ZERO, d: ONE / k }
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    /// Matrix product followed by renormalization to determinant one.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let m = MoebiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        };
        m.renormalized()
    }

    fn renormalized(self) -> Self {
        let det = self.det();
        // det of large-entry matrices is dominated by roundoff; trust the product then
        let scale = (self.a.norm() * self.d.norm()).max(self.b.norm() * self.c.norm());
        if scale > 1e4 || (det - ONE).norm() <= 1e-15 || det.norm() == 0.0 {
            return self;
        }
        let s = det.sqrt();
        Self { a: self.a / s, b: self.b / s, c: self.c / s, d: self.d / s }
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `g m g^-1`.
    pub fn conjugate_by(&self, g: &MoebiusMap) -> MoebiusMap {
        g.compose(self).compose(&g.inverse())
    }

    pub fn pow(&self, n: i64) -> MoebiusMap {
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut k = n.unsigned_abs();
        let mut acc = MoebiusMap::IDENTITY;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// The sign representative with `Re tr > 0`, or `Re tr = 0` and `Im tr >= 0`.
    pub fn canonical(&self) -> MoebiusMap {
        let t = self.trace();
        if t.re > 0.0 || (t.re == 0.0 && t.im >= 0.0) {
            *self
        } else {
            MoebiusMap { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        }
    }

    pub fn canonical_trace(&self) -> C64 {
        self.canonical().trace()
    }

    /// Largest entrywise distance to `+I` or `-I`.
    pub fn distance_to_identity(&self) -> f64 {
        let plus = (self.a - ONE).norm().max(self.b.norm()).max(self.c.norm()).max((self.d - ONE).norm());
        let minus = (self.a + ONE).norm().max(self.b.norm()).max(self.c.norm()).max((self.d + ONE).norm());
        plus.min(minus)
    }

    /// Entrywise distance between the two maps as elements of PSL(2,C).
    pub fn distance(&self, other: &MoebiusMap) -> f64 {
        let direct = (self.a - other.a)
            .norm()
            .max((self.b - other.b).norm())
            .max((self.c - other.c).norm())
            .max((self.d - other.d).norm());
        let flipped = (self.a + other.a)
            .norm()
            .max((self.b + other.b).norm())
            .max((self.c + other.c).norm())
            .max((self.d + other.d).norm());
        direct.min(flipped)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        [self.a, self.b, self.c, self.d].iter().all(|z| z.im.abs() <= tol)
    }

    pub fn apply_complex(&self, z: C64) -> ProjPoint {
        self.apply_proj(ProjPoint::finite(z))
    }

    pub fn apply_proj(&self, p: ProjPoint) -> ProjPoint {
        ProjPoint {
            w1: self.a * p.w1 + self.b * p.w2,
            w2: self.c * p.w1 + self.d * p.w2,
        }
        .normalized()
    }

    /// Poincaré extension to the upper half space.
    pub fn apply(&self, p: Point3) -> Point3 {
        let num = self.a * p.z + self.b;
        let den = self.c * p.z + self.d;
        let t2 = p.t * p.t;
        let scale = den.norm_sqr() + self.c.norm_sqr() * t2;
        let z = (num * den.conj() + self.a * self.c.conj() * t2) / scale;
        Point3 { z, t: p.t / scale }
    }

    /// Multiplier data of the larger eigenvalue, `mu` with `|mu| >= 1`.
    fn eigenvalue(&self) -> C64 {
        let t = self.trace();
        let disc = (t * t - 4.0).sqrt();
        let mu = (t + disc) / 2.0;
        let other = (t - disc) / 2.0;
        if mu.norm() >= other.norm() {
            mu
        } else {
            other
        }
    }

    fn eigenvector(&self, mu: C64) -> ProjPoint {
        let v1 = ProjPoint { w1: self.b, w2: mu - self.a };
        let v2 = ProjPoint { w1: mu - self.d, w2: self.c };
        let n1 = v1.w1.norm_sqr() + v1.w2.norm_sqr();
        let n2 = v2.w1.norm_sqr() + v2.w2.norm_sqr();
        if n1 >= n2 {
            v1.normalized()
        } else {
            v2.normalized()
        }
    }
}

/// Dynamical type of an isometry, read off from the trace.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IsometryClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic(LoxodromicData),
    LoxodromicStrict(LoxodromicData),
}

impl IsometryClass {
    pub fn loxodromic(&self) -> Option<&LoxodromicData> {
        match self {
            IsometryClass::Hyperbolic(d) | IsometryClass::LoxodromicStrict(d) => Some(d),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            IsometryClass::Identity => "identity",
            IsometryClass::Elliptic => "elliptic",
            IsometryClass::Parabolic => "parabolic",
            IsometryClass::Hyperbolic(_) => "hyperbolic",
            IsometryClass::LoxodromicStrict(_) => "loxodromic",
        }
    }
}

/// The map is conjugate to `z -> lambda e^{2 pi i theta} z` with `lambda > 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoxodromicData {
    pub lambda: f64,
    /// Rotation part in turns, in `(-1/2, 1/2]`.
    pub theta: f64,
    pub ell: f64,
    pub fix_minus: ProjPoint,
    pub fix_plus: ProjPoint,
}

impl LoxodromicData {
    pub fn multiplier(&self) -> C64 {
        C64::from_polar(self.lambda, std::f64::consts::TAU * self.theta)
    }
}

/// Reduces a turn count to `(-1/2, 1/2]`.
pub fn wrap_turns(x: f64) -> f64 {
    let r = x - x.round();
    if r <= -0.5 {
        r + 1.0
    } else {
        r
    }
}

pub fn classify(m: &MoebiusMap) -> IsometryClass {
    let t = m.canonical_trace();
    if (t - 2.0).norm() <= PARABOLIC_TOL {
        let id = m.canonical();
        let near_id = (id.a - ONE).norm().max(id.b.norm()).max(id.c.norm()).max((id.d - ONE).norm());
        return if near_id <= PARABOLIC_TOL { IsometryClass::Identity } else { IsometryClass::Parabolic };
    }
    let real = t.im.abs() <= REAL_TRACE_TOL * t.norm().max(1.0);
    if real && t.re.abs() < 2.0 {
        return IsometryClass::Elliptic;
    }
    let mu = m.eigenvalue();
    let mult = mu * mu;
    let data = LoxodromicData {
        lambda: mult.norm(),
        theta: if real { 0.0 } else { wrap_turns(mult.arg() / std::f64::consts::TAU) },
        ell: 2.0 * mu.norm().ln(),
        fix_minus: m.eigenvector(ONE / mu),
        fix_plus: m.eigenvector(mu),
    };
    if real {
        IsometryClass::Hyperbolic(data)
    } else {
        IsometryClass::LoxodromicStrict(data)
    }
}

/// Repelling and attracting fixed points; parabolic maps report their single fixed point twice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPoints {
    pub repelling: ProjPoint,
    pub attracting: ProjPoint,
    pub parabolic: bool,
}

pub fn fixed_points(m: &MoebiusMap) -> Result<FixedPoints> {
    match classify(m) {
        IsometryClass::Identity => Err(Error::IdentityMap),
        IsometryClass::Parabolic => {
            let mu = m.canonical_trace() / 2.0;
            let p = m.canonical().eigenvector(mu);
            Ok(FixedPoints { repelling: p, attracting: p, parabolic: true })
        }
        IsometryClass::Elliptic => {
            let mu = m.eigenvalue();
            Ok(FixedPoints {
                repelling: m.eigenvector(ONE / mu),
                attracting: m.eigenvector(mu),
                parabolic: false,
            })
        }
        IsometryClass::Hyperbolic(d) | IsometryClass::LoxodromicStrict(d) => Ok(FixedPoints {
            repelling: d.fix_minus,
            attracting: d.fix_plus,
            parabolic: false,
        }),
    }
}

/// `2 |Re arccosh(tr / 2)|`; zero for non-loxodromic maps.
pub fn translation_length(m: &MoebiusMap) -> f64 {
    match classify(m) {
        IsometryClass::Hyperbolic(d) | IsometryClass::LoxodromicStrict(d) => d.ell,
        _ => 0.0,
    }
}

/// Point `z + t j` of the upper half space, `t > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub z: C64,
    pub t: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { z: ZERO, t: 1.0 };

    pub fn new(z: C64, t: f64) -> Self {
        debug_assert!(t > 0.0, "height must be positive");
        Self { z, t }
    }

    /// Coordinates on the hyperboloid `x0^2 - x1^2 - x2^2 - x3^2 = 1`.
    pub fn to_hyperboloid(self) -> [f64; 4] {
        let r2 = self.z.norm_sqr() + self.t * self.t;
        [
            (r2 + 1.0) / (2.0 * self.t),
            self.z.re / self.t,
            self.z.im / self.t,
            (r2 - 1.0) / (2.0 * self.t),
        ]
    }

    pub fn from_hyperboloid(x: [f64; 4]) -> Self {
        let t = 1.0 / (x[0] - x[3]);
        Self { z: C64::new(x[1] * t, x[2] * t), t }
    }
}

pub fn dist_h3(p: Point3, q: Point3) -> f64 {
    let euclid2 = (p.z - q.z).norm_sqr() + (p.t - q.t) * (p.t - q.t);
    2.0 * (euclid2.sqrt() / (2.0 * (p.t * q.t).sqrt())).asinh()
}

/// Midpoint of the geodesic segment `[p, q]`.
pub fn midpoint(p: Point3, q: Point3) -> Point3 {
    let x = p.to_hyperboloid();
    let y = q.to_hyperboloid();
    let s = [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]];
    let norm = (s[0] * s[0] - s[1] * s[1] - s[2] * s[2] - s[3] * s[3]).sqrt();
    Point3::from_hyperboloid([s[0] / norm, s[1] / norm, s[2] / norm, s[3] / norm])
}

/// Oriented geodesic line of `H^3` between two ideal points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic3 {
    pub xi: ProjPoint,
    pub eta: ProjPoint,
}

impl Geodesic3 {
    pub fn new(xi: ProjPoint, eta: ProjPoint) -> Result<Self> {
        let sep = xi.chordal(eta);
        if sep < GEOMETRIC_TOL {
            return Err(Error::DegenerateGeodesic(sep));
        }
        Ok(Self { xi: xi.normalized(), eta: eta.normalized() })
    }

    pub fn from_complex(xi: C64, eta: C64) -> Result<Self> {
        Self::new(xi.into(), eta.into())
    }

    /// The vertical line `(0, ∞)`.
    pub fn vertical() -> Self {
        Self { xi: ProjPoint::zero(), eta: ProjPoint::infinity() }
    }

    /// A unimodular map sending `xi` to 0 and `eta` to ∞.
    pub fn normalizer(&self) -> MoebiusMap {
        let (x, e) = (self.xi, self.eta);
        MoebiusMap::new(x.w2, -x.w1, e.w2, -e.w1).expect("distinct endpoints give a nonsingular normalizer")
    }

    pub fn image(&self, m: &MoebiusMap) -> Geodesic3 {
        Geodesic3 { xi: m.apply_proj(self.xi), eta: m.apply_proj(self.eta) }
    }

    /// Same unoriented line, within `tol` chordal.
    pub fn same_line(&self, other: &Geodesic3, tol: f64) -> bool {
        (self.xi.approx_eq(other.xi, tol) && self.eta.approx_eq(other.eta, tol))
            || (self.xi.approx_eq(other.eta, tol) && self.eta.approx_eq(other.xi, tol))
    }
}

/// Distance from `p` to the line and the foot of the perpendicular.
pub fn dist_to_geodesic(p: Point3, geo: &Geodesic3) -> (f64, Point3) {
    let n = geo.normalizer();
    let q = n.apply(p);
    let rho = (q.z.norm_sqr() + q.t * q.t).sqrt();
    // cosh d = rho / t, written as sinh to keep precision near the line
    let d = (q.z.norm() / q.t).asinh();
    let foot = n.inverse().apply(Point3 { z: ZERO, t: rho });
    (d, foot)
}

/// Busemann gap `B_p(xi, eta) = lim d(p,x) + d(p,y) - d(x,y)`, in closed form `2 log cosh d(p, line)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BusemannGap {
    pub p: Point3,
    pub geo: Geodesic3,
    pub value: f64,
}

impl BusemannGap {
    pub fn on_geodesic(&self) -> bool {
        self.value <= 2.0 * GEOMETRIC_TOL
    }
}

pub fn busemann_gap(p: Point3, geo: &Geodesic3) -> BusemannGap {
    let (d, _) = dist_to_geodesic(p, geo);
    let value = if d <= GEOMETRIC_TOL { 0.0 } else { 2.0 * d.cosh().ln() };
    BusemannGap { p, geo: *geo, value }
}

/// The shortest segment joining two geodesic lines; zero length when they cross.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommonPerpendicular {
    pub length: f64,
    pub foot_a: Point3,
    pub foot_b: Point3,
    pub midpoint: Point3,
}

pub fn common_perpendicular(a: &Geodesic3, b: &Geodesic3) -> Result<CommonPerpendicular> {
    if a.same_line(b, GEOMETRIC_TOL) {
        return Err(Error::IdenticalGeodesics);
    }
    let n = a.normalizer();
    let u = n.apply_proj(b.xi);
    let v = n.apply_proj(b.eta);
    let degenerate = |p: ProjPoint| p.chordal(ProjPoint::zero()) < GEOMETRIC_TOL || p.chordal(ProjPoint::infinity()) < GEOMETRIC_TOL;
    if degenerate(u) || degenerate(v) {
        return Err(Error::AsymptoticGeodesics);
    }
    // the perpendicular to (0, ∞) through ±w is perpendicular to (u, v) iff w^2 = uv
    let uv = (u.w1 * v.w1) / (u.w2 * v.w2);
    let foot_a_local = Point3 { z: ZERO, t: uv.norm().sqrt() };
    let b_local = Geodesic3 { xi: u, eta: v };
    let (length, foot_b_local) = dist_to_geodesic(foot_a_local, &b_local);
    let back = n.inverse();
    let foot_a = back.apply(foot_a_local);
    let foot_b = back.apply(foot_b_local);
    Ok(CommonPerpendicular { length, foot_a, foot_b, midpoint: back.apply(midpoint(foot_a_local, foot_b_local)) })
}

/// Busemann gap of the midpoint of the common perpendicular of `a` and `b`, measured against `diag`.
pub fn axis_crossing_gap(a: &Geodesic3, b: &Geodesic3, diag: &Geodesic3) -> Result<f64> {
    let perp = common_perpendicular(a, b)?;
    Ok(busemann_gap(perp.midpoint, diag).value)
}

/// Cross ratio `[p1, p2; q1, q2]`: the image of `q2` under the map sending `p1, p2, q1` to `0, ∞, 1`.
pub fn cross_ratio(p1: ProjPoint, p2: ProjPoint, q1: ProjPoint, q2: ProjPoint) -> ProjPoint {
    let det = |x: ProjPoint, y: ProjPoint| x.w1 * y.w2 - x.w2 * y.w1;
    ProjPoint { w1: det(q2, p1) * det(q1, p2), w2: det(q2, p2) * det(q1, p1) }.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn compose_examples() {
        let m = MoebiusMap::new(c(2.0, 1.0), c(0.5, 0.0), c(1.0, -1.0), c(1.5, 0.3)).unwrap();
        assert!(MoebiusMap::IDENTITY.compose(&m).distance(&m) < 1e-15);
        assert!(m.compose(&m.inverse()).distance_to_identity() < 1e-12);
        let d = MoebiusMap::real(2.0, 0.0, 0.0, 0.5).unwrap();
        let dd = d.compose(&d);
        assert!((dd.a - 4.0).norm() < 1e-15 && (dd.d - 0.25).norm() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        let p = MoebiusMap::real(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(classify(&p), IsometryClass::Parabolic);
        let h = MoebiusMap::real(2.0, 0.0, 0.0, 0.5).unwrap();
        match classify(&h) {
            IsometryClass::Hyperbolic(d) => {
                assert!((d.lambda - 4.0).abs() < 1e-12);
                assert!((d.ell - 4f64.ln()).abs() < 1e-12);
                assert_eq!(d.theta, 0.0);
            }
            other => panic!("{other:?}"),
        }
        let k = C64::from_polar(2f64.sqrt(), PI / 4.0);
        match classify(&MoebiusMap::diagonal(k)) {
            IsometryClass::LoxodromicStrict(d) => {
                assert!((d.lambda - 2.0).abs() < 1e-12);
                assert!((d.theta - 0.25).abs() < 1e-12);
                assert!((d.ell - 2f64.ln()).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(classify(&MoebiusMap::IDENTITY), IsometryClass::Identity);
        let rot = MoebiusMap::diagonal(C64::from_polar(1.0, 0.3));
        assert_eq!(classify(&rot), IsometryClass::Elliptic);
    }

    #[test]
    fn fixed_point_examples() {
        let h = MoebiusMap::real(2.0, 0.0, 0.0, 0.5).unwrap();
        let fp = fixed_points(&h).unwrap();
        assert!(fp.repelling.approx_eq(ProjPoint::zero(), 1e-15));
        assert!(fp.attracting.is_infinite());

        let p = MoebiusMap::real(1.0, 1.0, 0.0, 1.0).unwrap();
        let fp = fixed_points(&p).unwrap();
        assert!(fp.parabolic && fp.attracting.is_infinite() && fp.repelling.is_infinite());

        let m = MoebiusMap::real(2.0, 1.0, 1.0, 1.0).unwrap();
        let fp = fixed_points(&m).unwrap();
        for z in [fp.repelling, fp.attracting] {
            assert!(m.apply_proj(z).chordal(z) < 1e-10);
        }
        // roots of z^2 - z - 1
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(fp.attracting.approx_eq(ProjPoint::real(golden), 1e-12));
        assert!(fp.repelling.approx_eq(ProjPoint::real(1.0 - golden), 1e-12));

        assert!(matches!(fixed_points(&MoebiusMap::IDENTITY), Err(Error::IdentityMap)));
    }

    #[test]
    fn translation_length_examples() {
        let m = MoebiusMap::real(E, 0.0, 0.0, 1.0 / E).unwrap();
        assert!((translation_length(&m) - 2.0).abs() < 1e-12);
        assert_eq!(translation_length(&MoebiusMap::real(1.0, 5.0, 0.0, 1.0).unwrap()), 0.0);
        let h = MoebiusMap::real(2.0, 0.0, 0.0, 0.5).unwrap();
        let mut p = MoebiusMap::IDENTITY;
        for n in 1..=6 {
            p = p.compose(&h);
            assert!((translation_length(&p) - n as f64 * translation_length(&h)).abs() < 1e-9);
        }
    }

    #[test]
    fn dist_examples() {
        assert!((dist_h3(Point3::new(ZERO, 1.0), Point3::new(ZERO, E)) - 1.0).abs() < 1e-14);
        assert_eq!(dist_h3(Point3::ORIGIN, Point3::ORIGIN), 0.0);
        let h = MoebiusMap::real(2.0, 0.0, 0.0, 0.5).unwrap();
        let q = h.apply(Point3::ORIGIN);
        assert!(q.z.norm() < 1e-15 && (q.t - 4.0).abs() < 1e-14);
        assert_eq!(MoebiusMap::IDENTITY.apply(Point3::new(c(0.3, 0.2), 0.7)), Point3::new(c(0.3, 0.2), 0.7));
    }

    #[test]
    fn geodesic_distance_examples() {
        let geo = Geodesic3::vertical();
        let (d, foot) = dist_to_geodesic(Point3::ORIGIN, &geo);
        assert!(d < 1e-15 && dist_h3(foot, Point3::ORIGIN) < 1e-15);

        let p = Point3::new(c(1.0, 0.0), 1.0);
        let (d, foot) = dist_to_geodesic(p, &geo);
        assert!((d - 2f64.sqrt().acosh()).abs() < 1e-12);
        assert!(dist_to_geodesic(foot, &geo).0 <= 1e-10);
        // brute-force minimisation along the line
        let brute = (0..=20000)
            .map(|i| dist_h3(p, Point3::new(ZERO, (-3.0 + 6.0 * i as f64 / 20000.0).exp())))
            .fold(f64::INFINITY, f64::min);
        assert!((brute - d).abs() < 1e-6);
    }

    #[test]
    fn busemann_examples() {
        let geo = Geodesic3::vertical();
        assert_eq!(busemann_gap(Point3::ORIGIN, &geo).value, 0.0);
        let p = Point3::new(c(1.0, 0.0), 1.0);
        let gap = busemann_gap(p, &geo).value;
        assert!((gap - 2f64.ln()).abs() < 1e-12);
        let x = Point3::new(ZERO, 1e-6);
        let y = Point3::new(ZERO, 1e6);
        let brute = dist_h3(p, x) + dist_h3(p, y) - dist_h3(x, y);
        assert!((brute - gap).abs() < 1e-5);
    }

    #[test]
    fn crossing_gap_examples() {
        let a = Geodesic3::from_complex(c(-1.0, 0.0), c(1.0, 0.0)).unwrap();
        let b = Geodesic3::from_complex(c(0.0, -1.0), c(0.0, 1.0)).unwrap();
        let diag = Geodesic3::from_complex(c(0.0, 1.0), c(1.0, 0.0)).unwrap();
        let perp = common_perpendicular(&a, &b).unwrap();
        assert!(perp.length < 1e-12);
        assert!(dist_h3(perp.midpoint, Point3::ORIGIN) < 1e-12);
        let delta = axis_crossing_gap(&a, &b, &diag).unwrap();
        let oracle = {
            let (d, _) = dist_to_geodesic(Point3::ORIGIN, &diag);
            2.0 * d.cosh().ln()
        };
        assert!(delta > 0.0 && (delta - oracle).abs() < 1e-12);
        assert!(axis_crossing_gap(&a, &b, &a).unwrap() < 1e-10);
        assert!(matches!(common_perpendicular(&a, &a), Err(Error::IdenticalGeodesics)));
    }

    #[test]
    fn common_perpendicular_of_disjoint_lines() {
        // (0,∞) and the unit-circle-centred line (2, 3): perpendicular meets the vertical line at height sqrt(6)
        let a = Geodesic3::vertical();
        let b = Geodesic3::from_complex(c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        let perp = common_perpendicular(&a, &b).unwrap();
        assert!((perp.foot_a.t - 6f64.sqrt()).abs() < 1e-12);
        assert!(dist_to_geodesic(perp.foot_b, &b).0 < 1e-10);
        let brute = (0..4000)
            .map(|i| dist_to_geodesic(Point3::new(ZERO, (-1.0 + 3.0 * i as f64 / 4000.0).exp()), &b).0)
            .fold(f64::INFINITY, f64::min);
        assert!((brute - perp.length).abs() < 1e-6);
    }

    #[test]
    fn degenerate_geodesic_rejected() {
        assert!(Geodesic3::from_complex(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn cross_ratio_normalization() {
        let cr = cross_ratio(ProjPoint::zero(), ProjPoint::infinity(), ProjPoint::real(1.0), ProjPoint::real(5.0));
        assert!(cr.approx_eq(ProjPoint::real(5.0), 1e-14));
    }
}
