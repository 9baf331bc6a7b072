//! Closed-form conformal maps: the power map `Φ_α`, the half-strip map `Ψ_α`,
//! the boundary curves of `Ω_{α,μ}`, the orbit system for `Φ_α⁻¹(ζ₀ + it)`,
//! the sector and strip Koenigs maps, and a generic Newton inverter.
//!
//! `Φ_α(z) = i(-iz)^β` sends the half-strip
//! `S_{α,μ} = {0 < Re z < c, Im z > c/η}` onto `Ω_{α,μ}`, while
//! `Ψ_α(z) = -i sin(-π/2 + πz/c - iπ/η)` sends the same half-strip onto `ℍ`.
//! Under `Ψ_α` the left side `Re z = 0` goes to `i(1, ∞)`, the bottom side to
//! `i[-1, 1]` and the right side `Re z = c` to `i(-∞, -1)`.

use num_complex::Complex64 as Complex;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::hyperbolic::{cayley, BoundaryPoint, DiscPoint, HalfPlanePoint};

const I: Complex = Complex::new(0.0, 1.0);

/// Parameters of the `Ω_{α,μ}` family together with the derived constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OmegaParamsRepr", into = "OmegaParamsRepr")]
pub struct OmegaParams {
    pub alpha: f64,
    pub mu: f64,
    /// Hölder conjugate `α/(α-1)`.
    pub beta: f64,
    /// Half-strip width `(μ^{1/α} β)⁻¹`.
    pub c: f64,
    /// `tan(π/(2β))`.
    pub eta: f64,
}

#[derive(Serialize, Deserialize)]
struct OmegaParamsRepr {
    alpha: f64,
    mu: f64,
}

impl TryFrom<OmegaParamsRepr> for OmegaParams {
    type Error = Error;
    fn try_from(r: OmegaParamsRepr) -> Result<Self> {
        OmegaParams::new(r.alpha, r.mu)
    }
}

impl From<OmegaParams> for OmegaParamsRepr {
    fn from(p: OmegaParams) -> Self {
        Self { alpha: p.alpha, mu: p.mu }
    }
}

impl OmegaParams {
    pub fn new(alpha: f64, mu: f64) -> Result<Self> {
        if !(alpha > 1.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha = {alpha} must be > 1")));
        }
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::Domain(format!("mu = {mu} must be > 0")));
        }
        let beta = alpha / (alpha - 1.0);
        let c = 1.0 / (mu.powf(1.0 / alpha) * beta);
        let eta = (PI / (2.0 * beta)).tan();
        Ok(Self { alpha, mu, beta, c, eta })
    }

    /// Height of the bottom side of the half-strip, `c/η`.
    pub fn floor(&self) -> f64 {
        self.c / self.eta
    }

    /// Whether `z` lies in the open half-strip.
    pub fn strip_contains(&self, z: Complex) -> bool {
        z.re > 0.0 && z.re < self.c && z.im > self.floor()
    }

    /// The default orbit start `Φ_α(c/2 + 2ic/η)`, on the image of the mid-line.
    pub fn default_start(&self) -> Complex {
        phi_alpha(self, Complex::new(self.c / 2.0, 2.0 * self.floor())).expect("mid-line point")
    }
}

/// A point of the open half-strip `S_{α,μ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfStripPoint(Complex);

impl HalfStripPoint {
    pub fn new(params: &OmegaParams, z: Complex) -> Result<Self> {
        if !params.strip_contains(z) {
            return Err(Error::Domain(format!(
                "{z} is not in the half-strip 0 < Re z < {}, Im z > {}",
                params.c,
                params.floor()
            )));
        }
        Ok(Self(z))
    }

    pub fn z(self) -> Complex {
        self.0
    }
}

/// `Φ_α(z) = i(-iz)^β` with the principal branch of `log(-iz)`.
///
/// Defined on the closed half-strip and, more generally, wherever `-iz` is off
/// the closed negative real axis.
pub fn phi_alpha(params: &OmegaParams, z: Complex) -> Result<Complex> {
    let u = -I * z;
    if u.im == 0.0 && u.re <= 0.0 {
        return Err(Error::Branch(format!("-iz = {u} is on the cut of the power map")));
    }
    Ok(I * u.powf(params.beta))
}

/// `Φ_α⁻¹(ζ) = i(-iζ)^{1/β}`, valid on `Ω_{α,μ}` where `arg(-iζ) ∈ (-π/2, 0)`.
pub fn phi_alpha_inv(params: &OmegaParams, zeta: Complex) -> Result<Complex> {
    let u = -I * zeta;
    if u.im == 0.0 && u.re <= 0.0 {
        return Err(Error::Branch(format!("-iζ = {u} is on the cut of the power map")));
    }
    Ok(I * u.powf(1.0 / params.beta))
}

fn psi_raw(params: &OmegaParams, z: Complex) -> Complex {
    let arg = Complex::new(-FRAC_PI_2, -PI / params.eta) + z * (PI / params.c);
    -I * arg.sin()
}

/// `Ψ_α(z) = -i sin(-π/2 + πz/c - iπ/η)`, a conformal map of the half-strip onto `ℍ`.
pub fn psi_alpha(params: &OmegaParams, z: HalfStripPoint) -> Result<HalfPlanePoint> {
    HalfPlanePoint::new(psi_raw(params, z.z()))
}

/// Inverse of [`psi_alpha`]: `z = (asin(iw) + π/2 + iπ/η)·c/π`.
///
/// With `E = e^{iu}` the equation `sin u = iw` reads `E² + 2wE - 1 = 0`. The
/// root of larger modulus is formed without cancellation and the wanted root,
/// `|E| < 1`, is recovered from the product of the roots, `-1`.
pub fn psi_alpha_inv(params: &OmegaParams, w: HalfPlanePoint) -> HalfStripPoint {
    let w = w.w();
    let r = (1.0 + w * w).sqrt();
    let (a, b) = (-w - r, -w + r);
    let big = if a.norm() >= b.norm() { a } else { b };
    let e = -1.0 / big;
    let u = Complex::new(e.arg(), -e.norm().ln());
    let z = (u + Complex::new(FRAC_PI_2, PI / params.eta)) * (params.c / PI);
    HalfStripPoint(z)
}

/// Bottom boundary curve `γ₂(s) = Φ_α(s + ic/η)`, `s ∈ [0, c]`.
pub fn gamma2(params: &OmegaParams, s: f64) -> Complex {
    let u = Complex::new(params.floor(), -s);
    I * u.powf(params.beta)
}

/// Right boundary curve `γ₃(T) = Φ_α(c + iT)`, `T > c/η`.
pub fn gamma3(params: &OmegaParams, t: f64) -> Complex {
    let u = Complex::new(t, -params.c);
    I * u.powf(params.beta)
}

/// Solution of `Φ_α(P + iQ) = ζ₀ + it`, i.e. `(Q - iP)^β = t + y₀ - ix₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PQState {
    pub p: f64,
    pub q: f64,
    pub t: f64,
    pub zeta0: Complex,
}

impl PQState {
    /// `P² + Q²` minus `((t + y₀)² + x₀²)^{1/β}`.
    pub fn modulus_residual(&self, params: &OmegaParams) -> f64 {
        let (x0, y0) = (self.zeta0.re, self.zeta0.im);
        let rhs = ((self.t + y0).powi(2) + x0 * x0).powf(1.0 / params.beta);
        (self.p * self.p + self.q * self.q - rhs) / rhs.max(1.0)
    }

    /// `arctan(P/Q)` minus `(1/β) arctan(x₀/(t + y₀))`.
    pub fn argument_residual(&self, params: &OmegaParams) -> f64 {
        let (x0, y0) = (self.zeta0.re, self.zeta0.im);
        self.p.atan2(self.q) - x0.atan2(self.t + y0) / params.beta
    }
}

/// Closed-form solution of the orbit system from the modulus and argument equations.
pub fn pq_solve(params: &OmegaParams, zeta0: Complex, t: f64) -> Result<PQState> {
    if !(zeta0.re > 0.0) {
        return Err(Error::Domain(format!("Re ζ₀ = {} must be > 0", zeta0.re)));
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("t = {t} must be >= 0")));
    }
    let y = t + zeta0.im;
    let x0 = zeta0.re;
    let r = y.hypot(x0).powf(1.0 / params.beta);
    let phi = x0.atan2(y) / params.beta;
    Ok(PQState { p: r * phi.sin(), q: r * phi.cos(), t, zeta0 })
}

/// Sector Koenigs map `F(z) = i e^{-iθ/2} C₁(z)^{θ/π}` onto `W_θ = {π/2 - θ < arg < π/2}`.
pub fn sector_koenigs(theta: f64, z: DiscPoint) -> Result<Complex> {
    check_sector_angle(theta)?;
    let w = cayley(BoundaryPoint::one(), z)?.w();
    Ok(I * Complex::from_polar(1.0, -theta / 2.0) * w.powf(theta / PI))
}

/// Inverse of [`sector_koenigs`].
pub fn sector_koenigs_inv(theta: f64, zeta: Complex) -> Result<DiscPoint> {
    check_sector_angle(theta)?;
    let a = zeta.arg();
    if !(a > FRAC_PI_2 - theta && a < FRAC_PI_2) || zeta.norm() == 0.0 {
        return Err(Error::Domain(format!("{zeta} is not in the sector of opening {theta}")));
    }
    let u = -I * Complex::from_polar(1.0, theta / 2.0) * zeta;
    let w = HalfPlanePoint::new(u.powf(PI / theta))?;
    Ok(crate::hyperbolic::cayley_inv(BoundaryPoint::one(), w))
}

fn check_sector_angle(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::Domain(format!("sector angle {theta} must be in (0, π]")));
    }
    Ok(())
}

/// Strip Koenigs map `h(z) = (1/λ)(-i Log C₁(z) + π/2)` onto `{0 < Re < π/λ}`.
pub fn strip_koenigs(lambda: f64, z: DiscPoint) -> Result<Complex> {
    check_lambda(lambda)?;
    if z.z() == Complex::new(-1.0, 0.0) {
        return Err(Error::Pole("strip map evaluated at -1".into()));
    }
    let w = cayley(BoundaryPoint::one(), z)?.w();
    Ok((-I * w.ln() + FRAC_PI_2) / lambda)
}

/// Inverse of [`strip_koenigs`]: `C₁(z) = exp(i(λh - π/2))`.
pub fn strip_koenigs_inv(lambda: f64, h: Complex) -> Result<DiscPoint> {
    check_lambda(lambda)?;
    if !(h.re > 0.0 && h.re < PI / lambda) {
        return Err(Error::Domain(format!("{h} is not in the strip of width π/λ")));
    }
    let w = HalfPlanePoint::new((I * (h * lambda - FRAC_PI_2)).exp())?;
    Ok(crate::hyperbolic::cayley_inv(BoundaryPoint::one(), w))
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("lambda = {lambda} must be > 0")));
    }
    Ok(())
}

/// Default Newton tolerance on `|f(z) - w|`.
pub const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 100;

/// Solve `f(z) = w` by Newton's method with a central-difference derivative.
///
/// The step for the difference quotient is `1e-6·(1 + |z|)`.
pub fn newton_invert<F>(f: F, w: Complex, seed: Complex, tol: f64) -> Result<Complex>
where
    F: Fn(Complex) -> Result<Complex>,
{
    let mut z = seed;
    let mut residual = f64::INFINITY;
    for _ in 0..NEWTON_MAX_ITER {
        let fz = f(z)?;
        let r = fz - w;
        residual = r.norm();
        if residual < tol {
            return Ok(z);
        }
        let h = 1e-6 * (1.0 + z.norm());
        let deriv = (f(z + h)? - f(z - h)?) / (2.0 * h);
        if deriv.norm() == 0.0 || !deriv.re.is_finite() {
            break;
        }
        let mut step = r / deriv;
        // Damp steps that leave the map's domain.
        let mut accepted = false;
        for _ in 0..30 {
            if f(z - step).is_ok() {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
        z -= step;
    }
    let last = f(z).map(|fz| (fz - w).norm()).unwrap_or(residual);
    if last < tol {
        return Ok(z);
    }
    Err(Error::NonConvergence { iterations: NEWTON_MAX_ITER, residual: last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn p21() -> OmegaParams {
        OmegaParams::new(2.0, 1.0).unwrap()
    }

    #[test]
    fn derived_constants() {
        let p = p21();
        assert_abs_diff_eq!(p.beta, 2.0);
        assert_abs_diff_eq!(p.c, 0.5);
        assert_abs_diff_eq!(p.eta, 1.0, epsilon = 1e-15);
        assert!(OmegaParams::new(1.0, 1.0).is_err());
        assert!(OmegaParams::new(2.0, 0.0).is_err());
    }

    #[test]
    fn phi_examples() {
        let p = p21();
        let v = phi_alpha(&p, c(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!((v - c(0.0, 1.0)).norm(), 0.0, epsilon = 1e-15);
        let v = phi_alpha(&p, c(0.25, 1.0)).unwrap();
        assert_abs_diff_eq!((v - c(0.5, 0.9375)).norm(), 0.0, epsilon = 1e-15);
        let v = phi_alpha(&p, c(0.0, 2.0)).unwrap();
        assert_abs_diff_eq!((v - c(0.0, 4.0)).norm(), 0.0, epsilon = 1e-14);
        assert!(matches!(phi_alpha(&p, c(0.0, -1.0)), Err(Error::Branch(_))));
    }

    #[test]
    fn psi_examples() {
        let p = p21();
        let w = psi_alpha(&p, HalfStripPoint::new(&p, c(0.25, 1.0)).unwrap()).unwrap().w();
        assert_abs_diff_eq!(w.re, 11.548_739_357_257_748, epsilon = 1e-12);
        assert_abs_diff_eq!(w.im, 0.0, epsilon = 1e-12);
        assert!(HalfStripPoint::new(&p, c(0.25, 0.5)).is_err());
        let w = psi_alpha(&p, HalfStripPoint::new(&p, c(0.25, 0.6)).unwrap()).unwrap().w();
        assert_abs_diff_eq!(w.re, 0.670_483_998_247_397, epsilon = 1e-12);
        for v in [0.7, 1.3, 5.0] {
            let w = psi_alpha(&p, HalfStripPoint::new(&p, c(0.25, v)).unwrap()).unwrap().w();
            assert_abs_diff_eq!(w.im, 0.0, epsilon = 1e-12 * w.re.max(1.0));
            assert!(w.re > 0.0);
        }
    }

    #[test]
    fn psi_boundary_orientation() {
        let p = p21();
        // Left side to i(1, ∞), bottom to i[-1, 1], right side to i(-∞, -1).
        let left = psi_raw(&p, c(0.0, 1.7));
        assert!(left.re.abs() < 1e-12 && left.im > 1.0);
        let bottom = psi_raw(&p, c(0.1, p.floor()));
        assert!(bottom.re.abs() < 1e-12 && bottom.im.abs() <= 1.0);
        let right = psi_raw(&p, c(p.c, 1.7));
        assert!(right.re.abs() < 1e-12 && right.im < -1.0);
    }

    #[test]
    fn psi_round_trip() {
        let p = OmegaParams::new(1.5, 0.5).unwrap();
        for &(x, y) in &[(0.1, 1.0), (0.5, 3.0), (0.9, 0.5)] {
            let z = c(x * p.c, p.floor() + y);
            let w = psi_alpha(&p, HalfStripPoint::new(&p, z).unwrap()).unwrap();
            let back = psi_alpha_inv(&p, w).z();
            assert_abs_diff_eq!((back - z).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn pq_examples() {
        let p = p21();
        let z0 = c(0.5, 0.9375);
        let s = pq_solve(&p, z0, 0.0).unwrap();
        assert_abs_diff_eq!(s.p, 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(s.q, 1.0, epsilon = 1e-14);
        let s = pq_solve(&p, z0, 3.0).unwrap();
        assert_abs_diff_eq!(s.p, 0.125_735_987_940_718, epsilon = 1e-12);
        assert_abs_diff_eq!(s.q, 1.988_293_121_917_25, epsilon = 1e-12);
        assert_abs_diff_eq!(s.p * s.p + s.q * s.q, 3.969_119_077, epsilon = 1e-8);
        assert_abs_diff_eq!(s.p.atan2(s.q), 0.063_154_058_53, epsilon = 1e-10);
        assert!(pq_solve(&p, c(0.0, 1.0), 1.0).is_err());
    }

    #[test]
    fn pq_round_trip_through_phi() {
        let p = OmegaParams::new(3.0, 2.0).unwrap();
        let z0 = p.default_start();
        for t in [0.0, 0.5, 7.0, 1e3, 1e6] {
            let s = pq_solve(&p, z0, t).unwrap();
            let img = phi_alpha(&p, c(s.p, s.q)).unwrap();
            let target = z0 + c(0.0, t);
            assert!((img - target).norm() < 1e-8 * (1.0 + t.abs()), "t={t}");
            assert!(s.modulus_residual(&p).abs() < 1e-10);
            assert!(s.argument_residual(&p).abs() < 1e-10);
        }
    }

    #[test]
    fn sector_examples() {
        let zero = DiscPoint::new(c(0.0, 0.0)).unwrap();
        let v = sector_koenigs(PI, zero).unwrap();
        assert_abs_diff_eq!((v - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        let v = sector_koenigs(PI / 2.0, zero).unwrap();
        assert_abs_diff_eq!((v - Complex::from_polar(1.0, PI / 4.0)).norm(), 0.0, epsilon = 1e-15);
        assert!(sector_koenigs(0.0, zero).is_err());
        let one_ish = DiscPoint::new(c(0.3, -0.4)).unwrap();
        let back = sector_koenigs_inv(1.0, sector_koenigs(1.0, one_ish).unwrap()).unwrap();
        assert_abs_diff_eq!((back.z() - one_ish.z()).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn strip_examples() {
        let zero = DiscPoint::new(c(0.0, 0.0)).unwrap();
        let v = strip_koenigs(1.0, zero).unwrap();
        assert_abs_diff_eq!((v - c(FRAC_PI_2, 0.0)).norm(), 0.0, epsilon = 1e-15);
        let v = strip_koenigs(1.0, DiscPoint::new(c(0.0, 0.5)).unwrap()).unwrap();
        assert_abs_diff_eq!(v.re, 2.498_091_544_796_509, epsilon = 1e-12);
        let back = strip_koenigs_inv(1.0, v).unwrap();
        assert_abs_diff_eq!((back.z() - c(0.0, 0.5)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn gamma_endpoints() {
        let p = OmegaParams::new(2.0, 1.0).unwrap();
        let top = gamma2(&p, 0.0);
        assert_abs_diff_eq!(top.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(top.im, (p.c / p.eta).powf(p.beta), epsilon = 1e-15);
        let corner = gamma2(&p, p.c);
        assert_abs_diff_eq!((corner - gamma3(&p, p.floor())).norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(corner.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn newton_examples() {
        let p = p21();
        let z = newton_invert(|z| phi_alpha(&p, z), c(0.5, 0.9375), c(0.3, 0.9), NEWTON_TOL).unwrap();
        assert_abs_diff_eq!((z - c(0.25, 1.0)).norm(), 0.0, epsilon = 1e-10);
        let one = BoundaryPoint::one();
        let z = newton_invert(
            |z| Ok(cayley(one, DiscPoint::new(z)?)?.w()),
            c(2.0, 0.0),
            c(0.0, 0.0),
            NEWTON_TOL,
        )
        .unwrap();
        assert_abs_diff_eq!((z - c(1.0 / 3.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        let target = c(PI.sinh(), 0.0);
        let z = newton_invert(
            |z| Ok(psi_alpha(&p, HalfStripPoint::new(&p, z)?)?.w()),
            target,
            c(0.25, 0.9),
            NEWTON_TOL,
        )
        .unwrap();
        assert_abs_diff_eq!((z - c(0.25, 1.0)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn newton_reports_non_convergence() {
        let r = newton_invert(|z| Ok(z * z + 1.0), c(0.0, 0.0), c(1.0, 0.0), 1e-30);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }
}
