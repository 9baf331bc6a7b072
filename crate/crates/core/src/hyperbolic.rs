//! Hyperbolic geometry of the unit disc `𝔻` and of the right half-plane `ℍ`.
//!
//! Distances use the Poincaré metric normalised to curvature `-4`, i.e.
//! `k(z, w) = ½ log((1 + r) / (1 - r))` with `r` the pseudo-hyperbolic distance.
//! Both distance routines evaluate `1 - r²` through the product formula so that
//! points close to the boundary keep full relative precision.
//!
//! Orbits of parabolic semigroups leave the range of `f64` very quickly when
//! written in half-plane coordinates, so [`PolarPoint`] stores `(log ρ, θ)` and
//! provides the distance and disc-side quantities needed downstream in that form.

use num_complex::Complex64 as Complex;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

/// Tolerance on `|τ| = 1` for boundary points.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Pseudo-hyperbolic distances below this are treated as coincident points.
const COINCIDENT: f64 = 1e-16;

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscPoint(Complex);

impl DiscPoint {
    pub fn new(z: Complex) -> Result<Self> {
        if !(z.norm() < 1.0) {
            return Err(Error::Domain(format!("|z| = {} is not < 1", z.norm())));
        }
        Ok(Self(z))
    }

    pub fn z(self) -> Complex {
        self.0
    }
}

/// A point of the right half-plane `ℍ = {Re w > 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlanePoint(Complex);

impl HalfPlanePoint {
    pub fn new(w: Complex) -> Result<Self> {
        if !(w.re > 0.0) || !w.im.is_finite() {
            return Err(Error::Domain(format!("Re w = {} is not > 0", w.re)));
        }
        Ok(Self(w))
    }

    pub fn w(self) -> Complex {
        self.0
    }
}

/// A point of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint(Complex);

impl BoundaryPoint {
    pub fn new(tau: Complex) -> Result<Self> {
        if (tau.norm() - 1.0).abs() > BOUNDARY_TOL {
            return Err(Error::Domain(format!("|τ| = {} is not 1", tau.norm())));
        }
        Ok(Self(tau))
    }

    pub fn one() -> Self {
        Self(Complex::new(1.0, 0.0))
    }

    pub fn from_angle(angle: f64) -> Self {
        Self(Complex::from_polar(1.0, angle))
    }

    pub fn tau(self) -> Complex {
        self.0
    }
}

/// The horocycle `𝓔(τ, R) = {z : |τ - z|² < R (1 - |z|²)}`.
///
/// In Euclidean terms this is the open disc of radius `R / (R + 1)` internally
/// tangent to the unit circle at `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horocycle {
    pub tau: BoundaryPoint,
    pub radius: f64,
}

impl Horocycle {
    pub fn new(tau: BoundaryPoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Domain(format!("horocycle radius {radius} must be > 0")));
        }
        Ok(Self { tau, radius })
    }

    pub fn contains(&self, z: DiscPoint) -> bool {
        let z = z.z();
        (self.tau.tau() - z).norm_sqr() < self.radius * one_minus_abs_sqr(z)
    }

    pub fn euclidean_radius(&self) -> f64 {
        self.radius / (self.radius + 1.0)
    }

    pub fn euclidean_center(&self) -> Complex {
        self.tau.tau() * (1.0 - self.euclidean_radius())
    }
}

/// The Stolz region `𝒮(τ, R) = {z : |τ - z| < R (1 - |z|)}`, `R > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StolzRegion {
    pub tau: BoundaryPoint,
    pub aperture: f64,
}

impl StolzRegion {
    pub fn new(tau: BoundaryPoint, aperture: f64) -> Result<Self> {
        if !(aperture > 1.0) {
            return Err(Error::Domain(format!("Stolz aperture {aperture} must be > 1")));
        }
        Ok(Self { tau, aperture })
    }

    pub fn contains(&self, z: DiscPoint) -> bool {
        let z = z.z();
        (self.tau.tau() - z).norm() < self.aperture * (1.0 - z.norm())
    }

    /// Membership for a point given in half-plane log-polar form (Cayley image
    /// with respect to `τ`), valid far beyond the range where the disc point
    /// itself is representable.
    pub fn contains_polar(&self, w: PolarPoint) -> bool {
        w.log_dist_to_tau() < self.aperture.ln() + w.log_one_minus_abs()
    }
}

/// `1 - |z|²` evaluated as `(1 - |z|)(1 + |z|)`.
fn one_minus_abs_sqr(z: Complex) -> f64 {
    let r = z.norm();
    (1.0 - r) * (1.0 + r)
}

/// The disc automorphism `Θ_w(z) = (w - z) / (1 - w̄ z)`.
pub fn mobius_theta(w: DiscPoint, z: DiscPoint) -> Complex {
    let (w, z) = (w.z(), z.z());
    (w - z) / (1.0 - w.conj() * z)
}

/// `½ log((1 + r)/(1 - r))` given `r` and an accurate value of `1 - r²`.
fn atanh_from_parts(r: f64, one_minus_r2: f64) -> f64 {
    if r < COINCIDENT {
        return 0.0;
    }
    r.ln_1p() - 0.5 * one_minus_r2.ln()
}

/// Poincaré distance in the unit disc.
pub fn dist_disc(z: DiscPoint, w: DiscPoint) -> f64 {
    let theta = mobius_theta(w, z);
    let r = theta.norm();
    let denom = (1.0 - w.z().conj() * z.z()).norm_sqr();
    let one_minus_r2 = one_minus_abs_sqr(z.z()) * one_minus_abs_sqr(w.z()) / denom;
    atanh_from_parts(r, one_minus_r2)
}

/// Poincaré distance in the right half-plane.
pub fn dist_halfplane(w1: HalfPlanePoint, w2: HalfPlanePoint) -> f64 {
    let (a, b) = (w1.w(), w2.w());
    let den = (a + b.conj()).norm();
    let r = (a - b).norm() / den;
    let one_minus_r2 = 4.0 * a.re * b.re / (den * den);
    atanh_from_parts(r, one_minus_r2)
}

/// The Cayley transform `C_τ(z) = (τ + z)/(τ - z)` from `𝔻` onto `ℍ`.
pub fn cayley(tau: BoundaryPoint, z: DiscPoint) -> Result<HalfPlanePoint> {
    let (t, z) = (tau.tau(), z.z());
    let den = t - z;
    if den.norm() == 0.0 {
        return Err(Error::Pole("Cayley transform evaluated at τ".into()));
    }
    let w = (t + z) / den;
    // Re C_τ(z) = (1 - |z|²)/|τ - z|² exactly; keep it positive near the boundary.
    let re = one_minus_abs_sqr(z) / den.norm_sqr();
    HalfPlanePoint::new(Complex::new(re, w.im))
}

/// Inverse Cayley transform `C_τ⁻¹(w) = τ (w - 1)/(w + 1)`.
pub fn cayley_inv(tau: BoundaryPoint, w: HalfPlanePoint) -> DiscPoint {
    let w = w.w();
    let z = tau.tau() * (w - 1.0) / (w + 1.0);
    // |z| < 1 holds in exact arithmetic; rounding may push it onto the circle
    // for |w| beyond ~1e16, so clamp the radius.
    let r = z.norm();
    if r < 1.0 {
        DiscPoint(z)
    } else {
        DiscPoint(z * ((1.0 - f64::EPSILON) / r))
    }
}

/// Hyperbolic projection of `z` onto the diameter `(-τ, τ)`.
///
/// In `ℍ` coordinates the diameter is the positive real axis and the closest
/// point to `w` is `|w|`; the result is `C_τ⁻¹(|C_τ(z)|)`.
pub fn project_to_diameter(tau: BoundaryPoint, z: DiscPoint) -> Result<DiscPoint> {
    let w = cayley(tau, z)?;
    let rho = HalfPlanePoint::new(Complex::new(w.w().norm(), 0.0))?;
    Ok(cayley_inv(tau, rho))
}

/// A half-plane point `ρ e^{iθ}` stored as `(log ρ, θ)`, `|θ| < π/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub log_rho: f64,
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(log_rho: f64, theta: f64) -> Self {
        Self { log_rho, theta }
    }

    pub fn from_complex(w: Complex) -> Self {
        Self { log_rho: w.norm().ln(), theta: w.arg() }
    }

    /// The point as a complex number; overflows to infinity for huge `ρ`.
    pub fn to_complex(self) -> Complex {
        Complex::from_polar(self.log_rho.exp(), self.theta)
    }

    pub fn rho(self) -> f64 {
        self.log_rho.exp()
    }

    /// `log Re w`.
    pub fn log_re(self) -> f64 {
        self.log_rho + self.theta.cos().ln()
    }

    /// `w + delta`, evaluated without forming `w` when `ρ` is large.
    pub fn translate(self, delta: Complex) -> Self {
        if self.log_rho < 1.0 {
            return Self::from_complex(self.to_complex() + delta);
        }
        let rel = Complex::new(1.0, 0.0)
            + delta * Complex::from_polar((-self.log_rho).exp(), -self.theta);
        Self {
            log_rho: self.log_rho + rel.norm().ln(),
            theta: wrap_angle(self.theta + rel.arg()),
        }
    }

    /// `s · w` for `s > 0`.
    pub fn scale(self, s: f64) -> Self {
        Self { log_rho: self.log_rho + s.ln(), theta: self.theta }
    }

    /// Poincaré distance in `ℍ` between two polar points.
    pub fn dist(self, other: Self) -> f64 {
        let (hi, lo) = if self.log_rho >= other.log_rho { (self, other) } else { (other, self) };
        let log_ratio = lo.log_rho - hi.log_rho;
        let a = Complex::from_polar(1.0, hi.theta);
        let b = Complex::from_polar(log_ratio.exp(), lo.theta);
        let den = (a + b.conj()).norm();
        let r = (a - b).norm() / den;
        let log_one_minus_r2 = (4.0f64).ln() + hi.theta.cos().ln() + lo.theta.cos().ln()
            + log_ratio
            - 2.0 * den.ln();
        if r < COINCIDENT {
            return 0.0;
        }
        r.ln_1p() - 0.5 * log_one_minus_r2
    }

    /// Distance from `1`, i.e. `k_𝔻(0, C⁻¹(w))`.
    pub fn dist_from_one(self) -> f64 {
        self.dist(Self::new(0.0, 0.0))
    }

    /// Distance to the positive real axis, attained at `ρ`:
    /// `k_ℍ(ρ e^{iθ}, ρ) = ½ log((1 + |sin θ|)/cos θ)`.
    pub fn dist_to_real_axis(self) -> f64 {
        0.5 * ((1.0 + self.theta.sin().abs()) / self.theta.cos()).ln()
    }

    /// `log |w + 1|`.
    fn log_abs_plus_one(self) -> f64 {
        if self.log_rho < 1.0 {
            return (self.to_complex() + 1.0).norm().ln();
        }
        let r = (-self.log_rho).exp();
        self.log_rho + 0.5 * (2.0 * r * self.theta.cos() + r * r).ln_1p()
    }

    /// `|z|` for `z = C_τ⁻¹(w)`.
    pub fn disc_abs(self) -> f64 {
        if self.log_rho < 1.0 {
            let w = self.to_complex();
            return (w - 1.0).norm() / (w + 1.0).norm();
        }
        let r = (-self.log_rho).exp();
        let c = self.theta.cos();
        ((1.0 - 2.0 * r * c + r * r) / (1.0 + 2.0 * r * c + r * r)).sqrt()
    }

    /// `log |τ - z|` for `z = C_τ⁻¹(w)`; `|τ - z| = 2/|w + 1|`.
    pub fn log_dist_to_tau(self) -> f64 {
        LN_2 - self.log_abs_plus_one()
    }

    /// `log (1 - |z|²)` for `z = C_τ⁻¹(w)`; `1 - |z|² = 4 Re w / |w + 1|²`.
    pub fn log_one_minus_abs_sqr(self) -> f64 {
        2.0 * LN_2 + self.log_re() - 2.0 * self.log_abs_plus_one()
    }

    /// `log (1 - |z|)` for `z = C_τ⁻¹(w)`.
    pub fn log_one_minus_abs(self) -> f64 {
        self.log_one_minus_abs_sqr() - self.disc_abs().ln_1p()
    }

    /// The disc point `C_τ⁻¹(w)`, which rounds onto `τ` once `ρ ≳ 1e16`.
    pub fn to_disc(self, tau: BoundaryPoint) -> DiscPoint {
        let w = self.to_complex();
        if !w.re.is_finite() || !w.im.is_finite() {
            return DiscPoint(tau.tau() * (1.0 - f64::EPSILON));
        }
        let w = Complex::new(w.re.max(f64::MIN_POSITIVE), w.im);
        cayley_inv(tau, HalfPlanePoint(w))
    }
}

/// Wrap an angle into `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut a = a % (2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    } else if a <= -PI {
        a += 2.0 * PI;
    }
    a
}
