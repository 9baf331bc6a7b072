//! Concrete non-elliptic semigroups given by their Koenigs maps.
//!
//! Each family is described in half-plane coordinates `w = C_τ(z)` by a raw
//! Koenigs map `H: ℍ → Ω` with closed-form inverse, so that the half-plane
//! semigroup is `ψ_t(w) = H⁻¹(H(w) + it)`. Orbits start at a raw base point
//! `b`; the affine map `A(w) = (w - i Im b)/Re b` sends `b` to `1`, and the disc
//! semigroup is `φ_t = C_τ⁻¹ ∘ A ∘ ψ_t ∘ A⁻¹ ∘ C_τ`, so `φ_t(0)` is the orbit
//! of the origin. Orbit points are kept in log-polar form because the
//! half-plane values overflow `f64` long before the asymptotic regime ends.

use num_complex::Complex64 as Complex;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use crate::conformal::{phi_alpha, phi_alpha_inv, pq_solve, psi_alpha, psi_alpha_inv, HalfStripPoint, OmegaParams};
use crate::domains::{classify_model, ModelType, StarlikeDomain};
use crate::error::{Error, Result};
use crate::hyperbolic::{cayley, cayley_inv, wrap_angle, BoundaryPoint, DiscPoint, HalfPlanePoint, PolarPoint};
use crate::numerics::log_grid;

const I: Complex = Complex::new(0.0, 1.0);

/// Semigroup families with closed-form Koenigs maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Family {
    /// `ψ_t(w) = w + it`.
    ParabolicAutoPlus,
    /// `ψ_t(w) = w - it`.
    ParabolicAutoMinus,
    /// Hyperbolic group with spectral value `λ`; Koenigs domain a strip of width `π/λ`.
    HyperbolicGroup { lambda: f64 },
    /// Koenigs domain the sector `{π/2 - θ < arg < π/2}`.
    SectorFamily { theta: f64 },
    /// Koenigs domain `Ω_{α,μ}`; `zeta0` defaults to the image of the half-strip mid-line point.
    OmegaSemigroup {
        alpha: f64,
        mu: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        zeta0: Option<Complex>,
    },
    /// `ψ̂_t(w) = ψ_t(w + ½) - ½` built from another family.
    HorocycleReduced { inner: Box<Family> },
}

impl Family {
    /// Short name used in tables.
    pub fn name(&self) -> String {
        match self {
            Family::ParabolicAutoPlus => "parabolic-auto".into(),
            Family::ParabolicAutoMinus => "parabolic-auto-minus".into(),
            Family::HyperbolicGroup { .. } => "hyperbolic".into(),
            Family::SectorFamily { .. } => "sector".into(),
            Family::OmegaSemigroup { .. } => "omega".into(),
            Family::HorocycleReduced { inner } => format!("reduced-{}", inner.name()),
        }
    }

    /// `(α, μ)` for the `Ω` family, looking through reductions.
    pub fn omega_parameters(&self) -> Option<(f64, f64)> {
        match self {
            Family::OmegaSemigroup { alpha, mu, .. } => Some((*alpha, *mu)),
            Family::HorocycleReduced { inner } => inner.omega_parameters(),
            _ => None,
        }
    }
}

/// Serializable model description: family parameters plus the raw base point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    #[serde(flatten)]
    pub family: Family,
    /// Raw half-plane base point `b`; the family default when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Complex>,
}

/// Point of an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub t: f64,
    /// `ψ_t(b)` in the family's own half-plane coordinates.
    pub raw: PolarPoint,
    /// `A(ψ_t(b)) = C_τ(φ_t(0))`, the normalised half-plane point `ρ e^{iθ}`.
    pub w: PolarPoint,
    /// `φ_t(0)`; rounds onto `τ` once `ρ` exceeds about `1e16`.
    pub z_disc: DiscPoint,
}

impl OrbitPoint {
    pub fn rho(&self) -> f64 {
        self.w.rho()
    }

    pub fn theta(&self) -> f64 {
        self.w.theta
    }

    /// The normalised half-plane point, when representable.
    pub fn w_half(&self) -> Option<HalfPlanePoint> {
        HalfPlanePoint::new(self.w.to_complex()).ok()
    }
}

/// Internal per-family data.
#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Plus,
    Minus,
    Hyperbolic { lambda: f64 },
    Sector { theta: f64 },
    Omega { params: OmegaParams },
    Reduced { inner: Box<SemigroupModel> },
}

/// A semigroup in the disc given by its Koenigs data.
#[derive(Debug, Clone, PartialEq)]
pub struct SemigroupModel {
    family: Family,
    kind: Kind,
    base: Complex,
    tau: BoundaryPoint,
    model_type: ModelType,
    koenigs_domain: Option<StarlikeDomain>,
}

impl SemigroupModel {
    /// Build a model with the family's default base point.
    pub fn new(family: Family) -> Result<Self> {
        Self::build(family, None)
    }

    pub fn from_descriptor(d: &ModelDescriptor) -> Result<Self> {
        Self::build(d.family.clone(), d.base)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: ModelDescriptor = serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))?;
        Self::from_descriptor(&d)
    }

    pub fn descriptor(&self) -> ModelDescriptor {
        ModelDescriptor { family: self.family.clone(), base: Some(self.base) }
    }

    pub fn parabolic_auto_plus() -> Self {
        Self::new(Family::ParabolicAutoPlus).expect("valid family")
    }

    pub fn parabolic_auto_minus() -> Self {
        Self::new(Family::ParabolicAutoMinus).expect("valid family")
    }

    pub fn hyperbolic_group(lambda: f64) -> Result<Self> {
        Self::new(Family::HyperbolicGroup { lambda })
    }

    pub fn sector_family(theta: f64) -> Result<Self> {
        Self::new(Family::SectorFamily { theta })
    }

    pub fn omega(alpha: f64, mu: f64) -> Result<Self> {
        Self::new(Family::OmegaSemigroup { alpha, mu, zeta0: None })
    }

    fn build(family: Family, base: Option<Complex>) -> Result<Self> {
        if let Some(b) = base {
            if !(b.re > 0.0) || !b.im.is_finite() {
                return Err(Error::Domain(format!("base point {b} must lie in the right half-plane")));
            }
        }
        let one = Complex::new(1.0, 0.0);
        let (kind, default_base, tau, domain) = match &family {
            Family::ParabolicAutoPlus => {
                (Kind::Plus, one, BoundaryPoint::one(), Some(StarlikeDomain::half_plane_right()))
            }
            Family::ParabolicAutoMinus => {
                (Kind::Minus, one, BoundaryPoint::one(), Some(StarlikeDomain::half_plane_left()))
            }
            Family::HyperbolicGroup { lambda } => {
                if !(*lambda > 0.0) || !lambda.is_finite() {
                    return Err(Error::Domain(format!("lambda = {lambda} must be > 0")));
                }
                let strip = StarlikeDomain::vertical_strip(0.0, PI / lambda)?;
                (Kind::Hyperbolic { lambda: *lambda }, one, BoundaryPoint::new(-one)?, Some(strip))
            }
            Family::SectorFamily { theta } => {
                if !(*theta > 0.0 && *theta <= PI) {
                    return Err(Error::Domain(format!("sector angle {theta} must be in (0, π]")));
                }
                (Kind::Sector { theta: *theta }, one, BoundaryPoint::one(), Some(StarlikeDomain::sector(*theta)?))
            }
            Family::OmegaSemigroup { alpha, mu, zeta0 } => {
                let params = OmegaParams::new(*alpha, *mu)?;
                let domain = StarlikeDomain::omega_family(*alpha, *mu)?;
                let zeta0 = zeta0.unwrap_or_else(|| params.default_start());
                if !domain.contains(zeta0) {
                    return Err(Error::Domain(format!("ζ₀ = {zeta0} is not in Ω_{{α,μ}}")));
                }
                let strip_point = HalfStripPoint::new(&params, phi_alpha_inv(&params, zeta0)?)?;
                let b = psi_alpha(&params, strip_point)?.w();
                (Kind::Omega { params }, b, BoundaryPoint::one(), Some(domain))
            }
            Family::HorocycleReduced { inner } => {
                let inner_default = Self::build((**inner).clone(), None)?;
                let b_hat = base.unwrap_or(inner_default.base - 0.5);
                if !(b_hat.re > 0.0) {
                    return Err(Error::Precondition(format!("reduced base {b_hat} must lie in the right half-plane")));
                }
                let inner_model = Self::build((**inner).clone(), Some(b_hat + 0.5))?;
                let domain = match inner_model.kind {
                    Kind::Plus => Some(StarlikeDomain::half_plane_right().translated(Complex::new(0.5, 0.0))),
                    Kind::Minus => Some(StarlikeDomain::half_plane_left().translated(Complex::new(-0.5, 0.0))),
                    _ => None,
                };
                let tau = inner_model.tau;
                let model_type = inner_model.model_type;
                let model = SemigroupModel {
                    family: family.clone(),
                    kind: Kind::Reduced { inner: Box::new(inner_model) },
                    base: b_hat,
                    tau,
                    model_type,
                    koenigs_domain: domain,
                };
                return Ok(model);
            }
        };
        let domain = domain.expect("closed-form families have a domain descriptor");
        let model_type = classify_model(&domain)?;
        let mut model = SemigroupModel {
            family,
            kind,
            base: default_base,
            tau,
            model_type,
            koenigs_domain: Some(domain),
        };
        if let Some(b) = base {
            if let Kind::Omega { params } = &model.kind {
                // A custom base changes ζ₀; record it in the family.
                let zeta0 = model.koenigs(b)?;
                model.family = Family::OmegaSemigroup { alpha: params.alpha, mu: params.mu, zeta0: Some(zeta0) };
            }
            model.base = b;
        }
        Ok(model)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Denjoy–Wolff point.
    pub fn tau(&self) -> BoundaryPoint {
        self.tau
    }

    /// Raw half-plane base point `b = A⁻¹(1)`.
    pub fn base(&self) -> Complex {
        self.base
    }

    pub fn model_type(&self) -> ModelType {
        self.model_type
    }

    /// Koenigs domain descriptor, when it has a closed form.
    pub fn koenigs_domain(&self) -> Option<&StarlikeDomain> {
        self.koenigs_domain.as_ref()
    }

    /// Raw half-plane Koenigs map `H`.
    pub fn koenigs(&self, w: Complex) -> Result<Complex> {
        check_half_plane(w)?;
        match &self.kind {
            Kind::Plus => Ok(w),
            Kind::Minus => Ok(-w),
            Kind::Hyperbolic { lambda } => Ok((I * w.ln() + FRAC_PI_2) / *lambda),
            Kind::Sector { theta } => Ok(I * Complex::from_polar(1.0, -theta / 2.0) * w.powf(theta / PI)),
            Kind::Omega { params } => {
                let s = psi_alpha_inv(params, HalfPlanePoint::new(w)?);
                phi_alpha(params, s.z())
            }
            Kind::Reduced { inner } => inner.koenigs(w + 0.5),
        }
    }

    /// Inverse of [`Self::koenigs`] on the Koenigs domain.
    pub fn koenigs_inv(&self, zeta: Complex) -> Result<Complex> {
        let w = match &self.kind {
            Kind::Plus => zeta,
            Kind::Minus => -zeta,
            Kind::Hyperbolic { lambda } => (-I * (zeta * *lambda - FRAC_PI_2)).exp(),
            Kind::Sector { theta } => (-I * Complex::from_polar(1.0, theta / 2.0) * zeta).powf(PI / theta),
            Kind::Omega { params } => {
                let s = HalfStripPoint::new(params, phi_alpha_inv(params, zeta)?)?;
                psi_alpha(params, s)?.w()
            }
            Kind::Reduced { inner } => inner.koenigs_inv(zeta)? - 0.5,
        };
        check_half_plane(w)?;
        Ok(w)
    }

    /// Half-plane semigroup `ψ_t(w) = H⁻¹(H(w) + it)` in raw coordinates.
    pub fn flow(&self, w: Complex, t: f64) -> Result<Complex> {
        check_time(t)?;
        check_half_plane(w)?;
        match &self.kind {
            Kind::Plus => Ok(w + I * t),
            Kind::Minus => Ok(w - I * t),
            Kind::Hyperbolic { lambda } => Ok(w * (lambda * t).exp()),
            Kind::Reduced { inner } => Ok(inner.flow(w + 0.5, t)? - 0.5),
            _ => self.koenigs_inv(self.koenigs(w)? + I * t),
        }
    }

    /// `ψ_t(b)` in log-polar form, evaluated in closed form for every family.
    pub fn raw_orbit(&self, t: f64) -> Result<PolarPoint> {
        check_time(t)?;
        let b = self.base;
        match &self.kind {
            Kind::Plus => Ok(PolarPoint::from_complex(b + I * t)),
            Kind::Minus => Ok(PolarPoint::from_complex(b - I * t)),
            Kind::Hyperbolic { lambda } => {
                let p = PolarPoint::from_complex(b);
                Ok(PolarPoint::new(p.log_rho + lambda * t, p.theta))
            }
            Kind::Sector { theta } => {
                let u = -I * Complex::from_polar(1.0, theta / 2.0) * (self.koenigs(b)? + I * t);
                let k = PI / theta;
                Ok(PolarPoint::new(k * u.norm().ln(), k * u.arg()))
            }
            Kind::Omega { params } => {
                let zeta0 = self.koenigs(b)?;
                let pq = pq_solve(params, zeta0, t)?;
                let p_tilde = FRAC_PI_2 - PI * pq.p / params.c;
                let q_tilde = PI * pq.q / params.c - PI / params.eta;
                // -i sin(-P̃ + iQ̃) = ½ e^{Q̃ + iP̃} (1 - e^{-2Q̃} e^{-2iP̃}).
                let tail = Complex::new(1.0, 0.0) - Complex::from_polar((-2.0 * q_tilde).exp(), -2.0 * p_tilde);
                Ok(PolarPoint::new(
                    q_tilde - LN_2 + tail.norm().ln(),
                    wrap_angle(p_tilde + tail.arg()),
                ))
            }
            Kind::Reduced { inner } => Ok(inner.raw_orbit(t)?.translate(Complex::new(-0.5, 0.0))),
        }
    }

    /// The normalising map `A(w) = (w - i Im b)/Re b` on a log-polar point.
    pub fn normalize(&self, raw: PolarPoint) -> PolarPoint {
        raw.translate(Complex::new(0.0, -self.base.im)).scale(1.0 / self.base.re)
    }

    fn normalize_complex(&self, w: Complex) -> Complex {
        (w - I * self.base.im) / self.base.re
    }

    fn denormalize_complex(&self, w: Complex) -> Complex {
        w * self.base.re + I * self.base.im
    }

    /// The orbit of the origin at time `t`.
    pub fn orbit(&self, t: f64) -> Result<OrbitPoint> {
        let raw = self.raw_orbit(t)?;
        let w = self.normalize(raw);
        let z_disc = w.to_disc(self.tau);
        Ok(OrbitPoint { t, raw, w, z_disc })
    }

    /// `φ_t(z)` for an arbitrary disc point.
    pub fn phi(&self, t: f64, z: DiscPoint) -> Result<DiscPoint> {
        check_time(t)?;
        if t == 0.0 {
            return Ok(z);
        }
        let w = cayley(self.tau, z)?.w();
        let raw = self.flow(self.denormalize_complex(w), t)?;
        let w_t = self.normalize_complex(raw);
        let w_t = HalfPlanePoint::new(Complex::new(w_t.re.max(f64::MIN_POSITIVE), w_t.im))?;
        Ok(cayley_inv(self.tau, w_t))
    }

    /// Disc Koenigs function `h(z) = H(A⁻¹(C_τ(z)))`.
    pub fn koenigs_disc(&self, z: DiscPoint) -> Result<Complex> {
        let w = cayley(self.tau, z)?.w();
        self.koenigs(self.denormalize_complex(w))
    }
}

fn check_half_plane(w: Complex) -> Result<()> {
    if !(w.re > 0.0) || !w.im.is_finite() {
        return Err(Error::Domain(format!("{w} is not in the right half-plane")));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("t = {t} must be finite and >= 0")));
    }
    Ok(())
}

/// `|φ_{s+t}(0) - φ_s(φ_t(0))|` in disc coordinates.
pub fn verify_semigroup_law(model: &SemigroupModel, s: f64, t: f64) -> Result<f64> {
    let origin = DiscPoint::new(Complex::new(0.0, 0.0))?;
    let direct = model.phi(s + t, origin)?;
    let composed = model.phi(s, model.phi(t, origin)?)?;
    Ok((direct.z() - composed.z()).norm())
}

/// `|h(φ_t(z)) - h(z) - it|`.
pub fn intertwining_residual(model: &SemigroupModel, z: DiscPoint, t: f64) -> Result<f64> {
    let lhs = model.koenigs_disc(model.phi(t, z)?)?;
    let rhs = model.koenigs_disc(z)? + I * t;
    Ok((lhs - rhs).norm())
}

/// Hyperbolic step `k(φ_t(0), φ_{t+1}(0))` at `t_max` and along a log grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicStep {
    pub value: f64,
    pub trace: Vec<(f64, f64)>,
}

/// Points per decade of the hyperbolic-step trace.
const STEP_POINTS_PER_DECADE: f64 = 10.0;

pub fn hyperbolic_step(model: &SemigroupModel, t_max: f64) -> Result<HyperbolicStep> {
    if !(t_max >= 1e2) || !t_max.is_finite() {
        return Err(Error::Precondition(format!("t_max = {t_max} must be >= 100")));
    }
    let n = (t_max.log10() * STEP_POINTS_PER_DECADE).ceil() as usize + 1;
    let mut trace = Vec::with_capacity(n);
    for t in log_grid(1.0, t_max, n)? {
        let k = model.orbit(t)?.w.dist(model.orbit(t + 1.0)?.w);
        trace.push((t, k));
    }
    let value = trace.last().map(|x| x.1).unwrap_or(f64::NAN);
    Ok(HyperbolicStep { value, trace })
}

/// The horocycle-reduced model `ψ̂_t(w) = ψ_t(w + ½) - ½`.
pub fn horocycle_reduce(model: &SemigroupModel) -> Result<SemigroupModel> {
    if !(model.base.re > 0.5) {
        return Err(Error::Precondition(format!(
            "reduction needs Re b > 1/2, got base {}",
            model.base
        )));
    }
    SemigroupModel::build(Family::HorocycleReduced { inner: Box::new(model.family.clone()) }, Some(model.base - 0.5))
}

/// Every family at its default parameters, for sweeps.
pub fn catalog() -> Vec<SemigroupModel> {
    let mut out = vec![
        SemigroupModel::parabolic_auto_plus(),
        SemigroupModel::parabolic_auto_minus(),
        SemigroupModel::hyperbolic_group(1.0).expect("valid"),
        SemigroupModel::hyperbolic_group(2.5).expect("valid"),
        SemigroupModel::sector_family(PI / 2.0).expect("valid"),
        SemigroupModel::sector_family(PI / 3.0).expect("valid"),
    ];
    for alpha in [1.5, 2.0, 3.0] {
        for mu in [0.5, 1.0, 2.0] {
            out.push(SemigroupModel::omega(alpha, mu).expect("valid"));
        }
    }
    out.push(horocycle_reduce(&SemigroupModel::parabolic_auto_plus()).expect("valid"));
    out.push(horocycle_reduce(&SemigroupModel::omega(2.0, 1.0).expect("valid")).expect("valid"));
    out
}
