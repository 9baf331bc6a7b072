//! Koenigs domains: descriptors of domains starlike at infinity, boundary
//! distances, the quasi-geodesic `σ`, slope classification, splitting and
//! model classification.
//!
//! A descriptor is a base shape placed by an optional reflection `z ↦ -z̄`
//! followed by a translation. Every shape lies above a graph over an interval of
//! the real axis, so `Ω* = ⋃_{t≥0} (Ω - it)` is the vertical band over that
//! interval, which decides the model type.

pub(crate) mod boundary;
pub(crate) mod polyline;

use num_complex::Complex64 as Complex;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::conformal::{phi_alpha_inv, OmegaParams};
use crate::error::{Error, Result};
use crate::hyperbolic::PolarPoint;
use crate::numerics::{bisect_threshold, log_grid, ols};
use boundary::{Band, CurveKind, Frame, Nearest, Piece};
use polyline::Chain;

/// Tolerance of the boundary-distance minimisation.
pub const DISTANCE_TOL: f64 = 1e-10;

/// Base shapes of starlike domains, in their own coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params")]
pub enum Shape {
    /// `{Re z > 0}`.
    HalfPlaneRight,
    /// `{Re z < 0}`.
    HalfPlaneLeft,
    /// `{a < Re z < b}`.
    VerticalStrip { a: f64, b: f64 },
    /// `{π/2 - θ < arg z < π/2}`, `θ ∈ (0, π]`.
    Sector { theta: f64 },
    /// `Π_{α,m} = {Re z > 0, Im z > m (Re z)^α}`.
    HalfParabola { alpha: f64, m: f64 },
    /// `Ω_{α,μ} = Φ_α(S_{α,μ})`.
    OmegaFamily { alpha: f64, mu: f64 },
    /// Region above a vertex chain with non-decreasing real parts.
    Polyline { vertices: Vec<Complex> },
    /// Intersection of a domain with the band `x_min < Re z < x_max`.
    Clipped {
        inner: Box<StarlikeDomain>,
        #[serde(default)]
        x_min: Option<f64>,
        #[serde(default)]
        x_max: Option<f64>,
    },
}

/// A domain starlike at infinity: `offset + M(shape)` with `M` the identity or
/// the reflection `z ↦ -z̄`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarlikeDomain {
    #[serde(flatten)]
    pub shape: Shape,
    #[serde(default)]
    pub offset: Complex,
    #[serde(default)]
    pub mirror: bool,
}

/// Type of a semigroup read off from its Koenigs domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum ModelType {
    /// `Ω*` is a strip of width `π/λ`.
    Hyperbolic { lambda: f64 },
    /// `Ω*` is a half-plane.
    ParabolicPositiveStep,
    /// `Ω* = ℂ`.
    ParabolicZeroStep,
}

impl ModelType {
    pub fn is_parabolic(&self) -> bool {
        !matches!(self, ModelType::Hyperbolic { .. })
    }
}

/// A point of a domain used as the origin of boundary-distance queries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasePoint(Complex);

impl BasePoint {
    pub fn new(domain: &StarlikeDomain, p: Complex) -> Result<Self> {
        if !domain.contains(p) {
            return Err(Error::Domain(format!("base point {p} is not in the domain")));
        }
        Ok(Self(p))
    }

    pub fn p(self) -> Complex {
        self.0
    }
}

/// Boundary pieces of a domain in global coordinates.
#[derive(Debug, Clone)]
pub struct Boundary {
    pieces: Vec<(Piece, Band)>,
}

impl Boundary {
    /// Euclidean distance from `z` to the boundary and the nearest boundary point.
    pub fn nearest(&self, z: Complex) -> Option<(f64, Complex)> {
        self.nearest_with(z, f64::INFINITY, DISTANCE_TOL).map(|n| (n.dist, n.point))
    }

    /// Like [`Self::nearest`] with an explicit search tolerance.
    pub fn nearest_within(&self, z: Complex, tol: f64) -> Option<(f64, Complex)> {
        self.nearest_with(z, f64::INFINITY, tol).map(|n| (n.dist, n.point))
    }

    pub fn distance(&self, z: Complex) -> f64 {
        self.nearest(z).map_or(f64::INFINITY, |n| n.0)
    }

    pub(crate) fn nearest_with(&self, z: Complex, upper: f64, tol: f64) -> Option<Nearest> {
        boundary::nearest_on(&self.pieces, z, Band::ALL, upper, tol)
    }

    pub(crate) fn nearest_in_band(&self, z: Complex, band: Band, upper: f64) -> Option<Nearest> {
        boundary::nearest_on(&self.pieces, z, band, upper, DISTANCE_TOL)
    }
}

impl StarlikeDomain {
    fn from_shape(shape: Shape) -> Result<Self> {
        let d = Self { shape, offset: Complex::new(0.0, 0.0), mirror: false };
        d.validate()?;
        Ok(d)
    }

    pub fn half_plane_right() -> Self {
        Self { shape: Shape::HalfPlaneRight, offset: Complex::new(0.0, 0.0), mirror: false }
    }

    pub fn half_plane_left() -> Self {
        Self { shape: Shape::HalfPlaneLeft, offset: Complex::new(0.0, 0.0), mirror: false }
    }

    pub fn vertical_strip(a: f64, b: f64) -> Result<Self> {
        Self::from_shape(Shape::VerticalStrip { a, b })
    }

    pub fn sector(theta: f64) -> Result<Self> {
        Self::from_shape(Shape::Sector { theta })
    }

    pub fn half_parabola(alpha: f64, m: f64) -> Result<Self> {
        Self::from_shape(Shape::HalfParabola { alpha, m })
    }

    pub fn omega_family(alpha: f64, mu: f64) -> Result<Self> {
        Self::from_shape(Shape::OmegaFamily { alpha, mu })
    }

    pub fn polyline(vertices: Vec<Complex>) -> Result<Self> {
        Self::from_shape(Shape::Polyline { vertices })
    }

    /// The domain translated by `delta`.
    pub fn translated(mut self, delta: Complex) -> Self {
        self.offset += delta;
        self
    }

    /// The reflection of the domain across the imaginary axis.
    pub fn mirrored(mut self) -> Self {
        self.mirror = !self.mirror;
        self.offset = Complex::new(-self.offset.re, self.offset.im);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: Self = serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("domain descriptors serialize")
    }

    pub(crate) fn frame(&self) -> Frame {
        Frame { mirror: self.mirror, offset: self.offset }
    }

    fn omega_params(&self) -> Option<OmegaParams> {
        match self.shape {
            Shape::OmegaFamily { alpha, mu } => OmegaParams::new(alpha, mu).ok(),
            _ => None,
        }
    }

    /// Check parameter ranges.
    pub fn validate(&self) -> Result<()> {
        if !self.offset.re.is_finite() || !self.offset.im.is_finite() {
            return Err(Error::Descriptor("offset must be finite".into()));
        }
        match &self.shape {
            Shape::HalfPlaneRight | Shape::HalfPlaneLeft => Ok(()),
            Shape::VerticalStrip { a, b } => {
                if a.is_finite() && b.is_finite() && a < b {
                    Ok(())
                } else {
                    Err(Error::Descriptor(format!("strip needs finite a < b, got ({a}, {b})")))
                }
            }
            Shape::Sector { theta } => {
                if *theta > 0.0 && *theta <= PI {
                    Ok(())
                } else {
                    Err(Error::Descriptor(format!("sector angle {theta} must be in (0, π]")))
                }
            }
            Shape::HalfParabola { alpha, m } => {
                if *alpha > 1.0 && alpha.is_finite() && *m > 0.0 && m.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Descriptor(format!("half-parabola needs α > 1, m > 0, got ({alpha}, {m})")))
                }
            }
            Shape::OmegaFamily { alpha, mu } => {
                OmegaParams::new(*alpha, *mu).map(|_| ()).map_err(|e| Error::Descriptor(e.to_string()))
            }
            Shape::Polyline { vertices } => Chain::new(vertices).map(|_| ()),
            Shape::Clipped { inner, x_min, x_max } => {
                inner.validate()?;
                if x_min.is_none() && x_max.is_none() {
                    return Err(Error::Descriptor("a clipped domain needs at least one cut".into()));
                }
                if let (Some(a), Some(b)) = (x_min, x_max) {
                    if !(a < b) {
                        return Err(Error::Descriptor(format!("empty clip band ({a}, {b})")));
                    }
                }
                Ok(())
            }
        }
    }

    fn contains_local(&self, z: Complex) -> bool {
        match &self.shape {
            Shape::HalfPlaneRight => z.re > 0.0,
            Shape::HalfPlaneLeft => z.re < 0.0,
            Shape::VerticalStrip { a, b } => z.re > *a && z.re < *b,
            Shape::Sector { theta } => {
                let arg = z.arg();
                z.norm() > 0.0 && arg > FRAC_PI_2 - theta && arg < FRAC_PI_2
            }
            Shape::HalfParabola { alpha, m } => z.re > 0.0 && z.im > m * z.re.powf(*alpha),
            Shape::OmegaFamily { .. } => {
                let p = self.omega_params().expect("validated");
                z.re > 0.0
                    && z.im > 0.0
                    && phi_alpha_inv(&p, z).map(|s| p.strip_contains(s)).unwrap_or(false)
            }
            Shape::Polyline { vertices } => Chain::new(vertices).map(|c| c.contains(z)).unwrap_or(false),
            Shape::Clipped { inner, x_min, x_max } => {
                x_min.map_or(true, |a| z.re > a) && x_max.map_or(true, |b| z.re < b) && inner.contains(z)
            }
        }
    }

    /// Membership in the open domain.
    pub fn contains(&self, z: Complex) -> bool {
        if !z.re.is_finite() || !z.im.is_finite() {
            return false;
        }
        self.contains_local(self.frame().invert(z))
    }

    fn x_range_local(&self) -> (f64, f64) {
        match &self.shape {
            Shape::HalfPlaneRight => (0.0, f64::INFINITY),
            Shape::HalfPlaneLeft => (f64::NEG_INFINITY, 0.0),
            Shape::VerticalStrip { a, b } => (*a, *b),
            Shape::Sector { .. } | Shape::HalfParabola { .. } | Shape::OmegaFamily { .. } => (0.0, f64::INFINITY),
            Shape::Polyline { vertices } => {
                Chain::new(vertices).map(|c| c.x_range()).unwrap_or((f64::NAN, f64::NAN))
            }
            Shape::Clipped { inner, x_min, x_max } => {
                let (lo, hi) = inner.x_range();
                (x_min.map_or(lo, |a| lo.max(a)), x_max.map_or(hi, |b| hi.min(b)))
            }
        }
    }

    /// Projection of the domain onto the real axis, as an open interval.
    pub fn x_range(&self) -> (f64, f64) {
        let (lo, hi) = self.x_range_local();
        let (lo, hi) = if self.mirror { (-hi, -lo) } else { (lo, hi) };
        (lo + self.offset.re, hi + self.offset.re)
    }

    /// A canonical interior point: mid-band when the band is bounded, one unit
    /// inside the finite edge otherwise, and one unit above the lowest boundary
    /// point on that vertical.
    pub fn default_base(&self) -> Result<BasePoint> {
        let (lo, hi) = self.x_range();
        let x = match (lo.is_finite(), hi.is_finite()) {
            (true, true) => 0.5 * (lo + hi),
            (true, false) => lo + 1.0,
            (false, true) => hi - 1.0,
            (false, false) => 0.0,
        };
        let y = self.lowest_point_at(x).map_or(0.0, |y| y + 1.0);
        BasePoint::new(self, Complex::new(x, y))
    }

    /// Lowest `y` with `x + iy` in the closure of the domain.
    fn lowest_point_at(&self, x: f64) -> Option<f64> {
        let (lo, hi) = self.x_range();
        if !(x > lo && x < hi) {
            return None;
        }
        let inside = |y: f64| self.contains(Complex::new(x, y));
        let mut top = 1.0f64;
        while !inside(top) {
            top *= 2.0;
            if top > 1e300 {
                return None;
            }
        }
        let mut step = 1.0f64;
        let mut bottom = top - step;
        while inside(bottom) {
            step *= 2.0;
            bottom = top - step;
            if step > 1e300 {
                return None;
            }
        }
        Some(bisect_threshold(inside, bottom, top, 2000))
    }

    fn pieces_local(&self) -> Vec<(Piece, Band)> {
        let i = Complex::new(0.0, 1.0);
        let zero = Complex::new(0.0, 0.0);
        match &self.shape {
            Shape::HalfPlaneRight | Shape::HalfPlaneLeft => vec![(Piece::vertical_line(0.0), Band::ALL)],
            Shape::VerticalStrip { a, b } => {
                vec![(Piece::vertical_line(*a), Band::ALL), (Piece::vertical_line(*b), Band::ALL)]
            }
            Shape::Sector { theta } => vec![
                (Piece::ray(zero, i), Band::ALL),
                (Piece::ray(zero, Complex::from_polar(1.0, FRAC_PI_2 - theta)), Band::ALL),
            ],
            Shape::HalfParabola { alpha, m } => vec![
                (Piece::ray(zero, i), Band::ALL),
                (Piece::curve(CurveKind::PowerWall { alpha: *alpha, m: *m }, 0.0, f64::INFINITY), Band::ALL),
            ],
            Shape::OmegaFamily { .. } => {
                let p = self.omega_params().expect("validated");
                let f = p.floor();
                vec![
                    (Piece::ray(i * f.powf(p.beta), i), Band::ALL),
                    (Piece::curve(CurveKind::Gamma2(p), 0.0, p.c), Band::ALL),
                    (Piece::curve(CurveKind::Gamma3(p), f, f64::INFINITY), Band::ALL),
                ]
            }
            Shape::Polyline { vertices } => Chain::new(vertices).map(|c| c.pieces()).unwrap_or_default(),
            Shape::Clipped { inner, x_min, x_max } => {
                let band = Band {
                    lo: x_min.unwrap_or(f64::NEG_INFINITY),
                    hi: x_max.unwrap_or(f64::INFINITY),
                };
                let mut out: Vec<(Piece, Band)> =
                    inner.boundary().pieces.into_iter().map(|(p, b)| (p, b.intersect(&band))).collect();
                for x in [x_min, x_max].into_iter().flatten() {
                    if let Some(y) = inner.lowest_point_at(*x) {
                        out.push((Piece::ray(Complex::new(*x, y), i), Band::ALL));
                    }
                }
                out
            }
        }
    }

    /// Boundary pieces in global coordinates.
    pub fn boundary(&self) -> Boundary {
        let frame = self.frame();
        let pieces = self
            .pieces_local()
            .into_iter()
            .map(|(piece, band)| {
                let b = if frame.mirror { Band { lo: -band.hi, hi: -band.lo } } else { band };
                let b = Band { lo: b.lo + frame.offset.re, hi: b.hi + frame.offset.re };
                (piece.transformed(&frame), b)
            })
            .collect();
        Boundary { pieces }
    }

    /// The conformal map onto `ℍ` in log-polar form, for shapes where it is closed-form.
    pub fn to_half_plane(&self, z: Complex) -> Option<PolarPoint> {
        let z = self.frame().invert(z);
        match &self.shape {
            Shape::HalfPlaneRight => Some(PolarPoint::from_complex(z)),
            Shape::HalfPlaneLeft => Some(PolarPoint::from_complex(-z)),
            Shape::VerticalStrip { a, b } => {
                let width = b - a;
                Some(PolarPoint::new(-PI * z.im / width, PI * (z.re - a) / width - FRAC_PI_2))
            }
            _ => None,
        }
    }

    /// Exact hyperbolic distance in the domain, available for half-planes and strips.
    pub fn hyperbolic_distance(&self, z1: Complex, z2: Complex) -> Result<f64> {
        for z in [z1, z2] {
            if !self.contains(z) {
                return Err(Error::Domain(format!("{z} is not in the domain")));
            }
        }
        match (self.to_half_plane(z1), self.to_half_plane(z2)) {
            (Some(a), Some(b)) => Ok(a.dist(b)),
            _ => Err(Error::Precondition("no closed-form hyperbolic metric for this domain".into())),
        }
    }

    fn decidable(&self) -> Result<()> {
        match &self.shape {
            Shape::Polyline { vertices } => Chain::new(vertices)?.check_decidable(),
            Shape::Clipped { inner, .. } => inner.decidable(),
            _ => Ok(()),
        }
    }

    /// Intersection with the vertical band `band`, in the domain's own coordinates.
    fn clip_local(&self, lo: f64, hi: f64) -> Result<StarlikeDomain> {
        let (xl, xh) = self.x_range_local();
        let lo = if lo > xl { Some(lo) } else { None };
        let hi = if hi < xh { Some(hi) } else { None };
        let empty = || Error::Precondition("the split leaves an empty domain".into());
        let zero = Complex::new(0.0, 0.0);
        let same = StarlikeDomain { shape: self.shape.clone(), offset: zero, mirror: false };
        if lo.is_none() && hi.is_none() {
            return Ok(same);
        }
        let (a, b) = (lo.unwrap_or(xl), hi.unwrap_or(xh));
        if !(a < b) {
            return Err(empty());
        }
        match &self.shape {
            Shape::HalfPlaneRight | Shape::HalfPlaneLeft | Shape::VerticalStrip { .. } => {
                if a.is_finite() && b.is_finite() {
                    StarlikeDomain::vertical_strip(a, b)
                } else if a.is_finite() {
                    Ok(StarlikeDomain::half_plane_right().translated(Complex::new(a, 0.0)))
                } else {
                    Ok(StarlikeDomain::half_plane_left().translated(Complex::new(b, 0.0)))
                }
            }
            Shape::Polyline { vertices } => {
                let mut v = vertices.clone();
                if let Some(a) = lo {
                    v = Chain::new(&v)?.keep_right_of(a)?;
                }
                if let Some(b) = hi {
                    v = Chain::new(&v)?.keep_left_of(b)?;
                }
                StarlikeDomain::polyline(v)
            }
            _ => Ok(StarlikeDomain {
                shape: Shape::Clipped { inner: Box::new(same), x_min: lo, x_max: hi },
                offset: zero,
                mirror: false,
            }),
        }
    }

    /// Intersection with the band `lo < Re z < hi` in global coordinates.
    pub fn clip(&self, lo: f64, hi: f64) -> Result<StarlikeDomain> {
        let frame = self.frame();
        let local = frame.pull_band(Band { lo, hi });
        let inner = self.clip_local(local.lo, local.hi)?;
        let composed = frame.compose(&inner.frame());
        Ok(StarlikeDomain { shape: inner.shape, offset: composed.offset, mirror: composed.mirror })
    }
}

/// Membership test.
pub fn contains(domain: &StarlikeDomain, z: Complex) -> bool {
    domain.contains(z)
}

/// Boundary distances `(δ⁺, δ⁻)` from `p + it` to the parts of `∂Ω` to the
/// right and to the left of `Re p`, each capped at `t`.
pub fn delta(domain: &StarlikeDomain, p: BasePoint, t: f64) -> Result<(f64, f64)> {
    let boundary = domain.boundary();
    delta_with(domain, &boundary, p, t)
}

fn delta_with(domain: &StarlikeDomain, boundary: &Boundary, p: BasePoint, t: f64) -> Result<(f64, f64)> {
    let p = p.p();
    if !domain.contains(p) {
        return Err(Error::Domain(format!("base point {p} is not in the domain")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("t = {t} must be finite and >= 0")));
    }
    let q = p + Complex::new(0.0, t);
    let side = |band: Band| {
        boundary.nearest_in_band(q, band, t).map_or(f64::INFINITY, |n| n.dist).min(t)
    };
    Ok((side(Band::at_least(p.re)), side(Band::at_most(p.re))))
}

/// The curve `σ(t) = ½(δ⁺(t) - δ⁻(t)) + i(Im p + t)`.
///
/// The real part is measured from `0`, not from `Re p`; translate the domain so
/// that the base point sits on the imaginary axis before calling.
pub fn quasi_geodesic_sigma(domain: &StarlikeDomain, p: BasePoint, t: f64) -> Result<Complex> {
    let (plus, minus) = delta(domain, p, t)?;
    Ok(Complex::new(0.5 * (plus - minus), p.p().im + t))
}

/// Verdict of the slope test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slope {
    NonTangential,
    TangentialMinusHalfPi,
    TangentialPlusHalfPi,
    Inconclusive,
}

impl Slope {
    pub fn describe(&self) -> &'static str {
        match self {
            Slope::NonTangential => "non-tangential",
            Slope::TangentialMinusHalfPi => "tangential, slope −π/2",
            Slope::TangentialPlusHalfPi => "tangential, slope +π/2",
            Slope::Inconclusive => "inconclusive",
        }
    }
}

/// One point of the slope trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeSample {
    pub t: f64,
    pub delta_plus: f64,
    pub delta_minus: f64,
    pub ratio: f64,
}

/// Slope verdict with the ratio trace it was derived from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeVerdict {
    pub verdict: Slope,
    /// Fitted `d log(δ⁺/δ⁻) / d log t` on the top two decades.
    pub drift: f64,
    pub trace: Vec<SlopeSample>,
}

/// Bound on `δ⁺/δ⁻` for a non-tangential verdict.
pub const SLOPE_RATIO_BOUND: f64 = 10.0;
/// Largest drift still read as non-tangential.
pub const SLOPE_FLAT_DRIFT: f64 = 0.05;
/// Smallest drift read as divergence.
pub const SLOPE_DIVERGENT_DRIFT: f64 = 0.1;
/// Ratio the trace must reach at `t_max` for a tangential verdict.
pub const SLOPE_DIVERGENCE_FLOOR: f64 = 1e2;

/// Classify the slope of orbits from the balance of boundary distances.
pub fn slope_classify(domain: &StarlikeDomain, p: BasePoint, t_max: f64, n_samples: usize) -> Result<SlopeVerdict> {
    if !(t_max >= 1e2) {
        return Err(Error::Precondition(format!("t_max = {t_max} must be >= 100")));
    }
    if n_samples < 10 {
        return Err(Error::Precondition(format!("n_samples = {n_samples} must be >= 10")));
    }
    let boundary = domain.boundary();
    let grid = log_grid(1.0, t_max, n_samples)?;
    let mut trace = Vec::with_capacity(grid.len());
    for &t in &grid {
        let (plus, minus) = delta_with(domain, &boundary, p, t)?;
        trace.push(SlopeSample { t, delta_plus: plus, delta_minus: minus, ratio: plus / minus });
    }
    let window: Vec<&SlopeSample> = trace.iter().filter(|s| s.t >= t_max / 100.0).collect();
    let xs: Vec<f64> = window.iter().map(|s| s.t.ln()).collect();
    let ys: Vec<f64> = window.iter().map(|s| s.ratio.ln()).collect();
    let drift = ols(&xs, &ys).map(|f| f.0).unwrap_or(f64::NAN);
    let last = trace.last().expect("grid is non-empty").ratio;
    let bounded = window
        .iter()
        .all(|s| s.ratio >= 1.0 / SLOPE_RATIO_BOUND && s.ratio <= SLOPE_RATIO_BOUND);
    let verdict = if bounded && drift.abs() < SLOPE_FLAT_DRIFT {
        Slope::NonTangential
    } else if drift > SLOPE_DIVERGENT_DRIFT && last > SLOPE_DIVERGENCE_FLOOR {
        Slope::TangentialMinusHalfPi
    } else if drift < -SLOPE_DIVERGENT_DRIFT && last < 1.0 / SLOPE_DIVERGENCE_FLOOR {
        Slope::TangentialPlusHalfPi
    } else {
        Slope::Inconclusive
    };
    Ok(SlopeVerdict { verdict, drift, trace })
}

/// Split `Ω` into `Ω ∩ {Re z > Re p - ε}` and `Ω ∩ {Re z < Re p + ε}`.
pub fn split_domain(domain: &StarlikeDomain, p: BasePoint, eps: f64) -> Result<(StarlikeDomain, StarlikeDomain)> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Precondition(format!("ε = {eps} must be > 0")));
    }
    let p = p.p();
    for k in 1..=8 {
        let r = 2.0 * eps * (k as f64 / 8.0) * (1.0 - 1e-9);
        for j in 0..64 {
            let z = p + Complex::from_polar(r, 2.0 * PI * j as f64 / 64.0);
            if !domain.contains(z) {
                return Err(Error::Precondition(format!("the disc of radius 2ε about {p} leaves the domain near {z}")));
            }
        }
    }
    let plus = domain.clip(p.re - eps, f64::INFINITY)?;
    let minus = domain.clip(f64::NEG_INFINITY, p.re + eps)?;
    Ok((plus, minus))
}

/// Model type from `Ω* = ⋃_{t≥0}(Ω - it)`.
pub fn classify_model(domain: &StarlikeDomain) -> Result<ModelType> {
    domain.validate()?;
    domain.decidable()?;
    let (lo, hi) = domain.x_range();
    Ok(match (lo.is_finite(), hi.is_finite()) {
        (true, true) => ModelType::Hyperbolic { lambda: PI / (hi - lo) },
        (false, false) => ModelType::ParabolicZeroStep,
        _ => ModelType::ParabolicPositiveStep,
    })
}
