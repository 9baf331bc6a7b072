//! Total, orthogonal and tangential speeds and the inequality and asymptotic
//! checks built on them.
//!
//! All speeds are computed from the normalised half-plane orbit point
//! `w = ρ e^{iθ}` with base point `1`: `v = k(1, w)`, `v_o = k(1, ρ)` and
//! `v_T = k(w, ρ)`, the distance from `w` to the geodesic `(0, ∞)`.

use num_complex::Complex64 as Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

use crate::domains::{quasi_geodesic_sigma, BasePoint, ModelType, StarlikeDomain};
use crate::error::{Error, Result};
use crate::hyperbolic::{PolarPoint, StolzRegion};
use crate::numerics::{golden_section, log_grid, ols};
use crate::semigroups::SemigroupModel;

/// Slack added on top of every exact inequality.
pub const INEQUALITY_SLACK: f64 = 1e-9;

/// Speeds at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedSample {
    pub t: f64,
    /// Total speed.
    pub v: f64,
    /// Orthogonal speed.
    pub v_o: f64,
    /// Tangential speed.
    pub v_t: f64,
}

impl SpeedSample {
    /// Speeds of the normalised half-plane point `w`.
    pub fn from_point(t: f64, w: PolarPoint) -> Self {
        SpeedSample { t, v: w.dist_from_one(), v_o: 0.5 * w.log_rho.abs(), v_t: w.dist_to_real_axis() }
    }
}

pub fn speeds_at(model: &SemigroupModel, t: f64) -> Result<SpeedSample> {
    let o = model.orbit(t)?;
    Ok(SpeedSample::from_point(t, o.w))
}

/// Speeds along a grid, evaluated in parallel and returned in grid order.
pub fn speed_table(model: &SemigroupModel, grid: &[f64]) -> Result<Vec<SpeedSample>> {
    grid.par_iter().map(|&t| speeds_at(model, t)).collect()
}

/// `v_o + v_T - ½log 2 ≤ v ≤ v_o + v_T` up to [`INEQUALITY_SLACK`].
pub fn pythagoras_check(s: &SpeedSample) -> bool {
    let sum = s.v_o + s.v_t;
    sum - 0.5 * LN_2 - INEQUALITY_SLACK <= s.v && s.v <= sum + INEQUALITY_SLACK
}

/// `v_T ≤ v_o + 4 log 2` up to [`INEQUALITY_SLACK`].
pub fn tangential_bound_check(s: &SpeedSample) -> bool {
    s.v_t <= s.v_o + 4.0 * LN_2 + INEQUALITY_SLACK
}

/// Euclidean comparisons of the three speeds at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EuclidBounds {
    pub t: f64,
    /// `|v - ½log(1/(1-|z|))|`, bounded by `½log 2`.
    pub total_gap: f64,
    /// `|v_o - ½log(1/|τ-z|)|`, bounded by `½log 2`.
    pub ortho_gap: f64,
    /// `|v_T - ½log(|τ-z|/(1-|z|))|`, bounded by `(3/2)log 2`.
    pub tang_gap: f64,
    pub total_ok: bool,
    pub ortho_ok: bool,
    pub tang_ok: bool,
}

impl EuclidBounds {
    pub fn all(&self) -> bool {
        self.total_ok && self.ortho_ok && self.tang_ok
    }
}

pub fn euclid_bounds_check(model: &SemigroupModel, t: f64) -> Result<EuclidBounds> {
    let w = model.orbit(t)?.w;
    Ok(euclid_bounds_at(t, w))
}

/// Euclidean comparisons for a normalised half-plane point, in log form so
/// that they survive `|z|` rounding to `1`.
pub fn euclid_bounds_at(t: f64, w: PolarPoint) -> EuclidBounds {
    let s = SpeedSample::from_point(t, w);
    let log_one_minus = w.log_one_minus_abs();
    let log_to_tau = w.log_dist_to_tau();
    let total_gap = (s.v + 0.5 * log_one_minus).abs();
    let ortho_gap = (s.v_o + 0.5 * log_to_tau).abs();
    let tang_gap = (s.v_t - 0.5 * (log_to_tau - log_one_minus)).abs();
    EuclidBounds {
        t,
        total_gap,
        ortho_gap,
        tang_gap,
        total_ok: total_gap <= 0.5 * LN_2 + INEQUALITY_SLACK,
        ortho_ok: ortho_gap <= 0.5 * LN_2 + INEQUALITY_SLACK,
        tang_ok: tang_gap <= 1.5 * LN_2 + INEQUALITY_SLACK,
    }
}

/// One row of the main-bound trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapPoint {
    pub t: f64,
    /// `v_T(t) - ½log t`.
    pub gap: f64,
    pub running_sup: f64,
}

/// Result of [`main_bound_gap`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainBound {
    pub sup_gap: f64,
    /// Gap at the last grid point.
    pub tail_gap: f64,
    pub trace: Vec<GapPoint>,
}

impl MainBound {
    /// Growth of the running sup after `t0`.
    pub fn growth_after(&self, t0: f64) -> f64 {
        let before = self.trace.iter().filter(|p| p.t <= t0).map(|p| p.running_sup).fold(f64::NEG_INFINITY, f64::max);
        if before == f64::NEG_INFINITY {
            return f64::INFINITY;
        }
        (self.sup_gap - before).max(0.0)
    }
}

/// `v_T(t) - ½log t`, the main-bound gap.
pub fn main_gap(s: &SpeedSample) -> f64 {
    s.v_t - 0.5 * s.t.ln()
}

pub fn main_bound_gap(model: &SemigroupModel, grid: &[f64]) -> Result<MainBound> {
    if !model.model_type().is_parabolic() {
        return Err(Error::Precondition(format!("main bound needs a parabolic model, got {:?}", model.model_type())));
    }
    if grid.is_empty() || grid.iter().any(|t| !(*t >= 1.0) || !t.is_finite()) {
        return Err(Error::Precondition("main-bound grid must be non-empty and inside [1, ∞)".into()));
    }
    let samples = speed_table(model, grid)?;
    let mut running = f64::NEG_INFINITY;
    let trace: Vec<GapPoint> = samples
        .iter()
        .map(|s| {
            let gap = main_gap(s);
            running = running.max(gap);
            GapPoint { t: s.t, gap, running_sup: running }
        })
        .collect();
    let tail_gap = trace.last().map(|p| p.gap).unwrap_or(f64::NAN);
    Ok(MainBound { sup_gap: running, tail_gap, trace })
}

/// Which speed an [`AsymptoticFit`] is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpeedKind {
    Total,
    Orthogonal,
    Tangential,
}

impl SpeedKind {
    pub fn of(self, s: &SpeedSample) -> f64 {
        match self {
            SpeedKind::Total => s.v,
            SpeedKind::Orthogonal => s.v_o,
            SpeedKind::Tangential => s.v_t,
        }
    }
}

/// Abscissa of an [`AsymptoticFit`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Abscissa {
    LogT,
    /// `t^{exponent}`.
    Power(f64),
}

impl Abscissa {
    pub fn of(self, t: f64) -> f64 {
        match self {
            Abscissa::LogT => t.ln(),
            Abscissa::Power(e) => t.powf(e),
        }
    }
}

/// Least-squares fit on the top two decades of the samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticFit {
    pub slope: f64,
    pub offset: f64,
    pub max_residual: f64,
    pub t_window: (f64, f64),
}

/// Minimum number of samples inside the fit window.
pub const FIT_MIN_SAMPLES: usize = 10;

pub fn asymptotic_fit(samples: &[SpeedSample], speed: SpeedKind, abscissa: Abscissa) -> Result<AsymptoticFit> {
    let t_max = samples.iter().map(|s| s.t).fold(f64::NEG_INFINITY, f64::max);
    let t_min = t_max / 100.0;
    let window: Vec<&SpeedSample> = samples.iter().filter(|s| s.t >= t_min * (1.0 - 1e-12)).collect();
    if window.len() < FIT_MIN_SAMPLES {
        return Err(Error::Precondition(format!(
            "fit window [{t_min:e}, {t_max:e}] holds {} samples, need {FIT_MIN_SAMPLES}",
            window.len()
        )));
    }
    let xs: Vec<f64> = window.iter().map(|s| abscissa.of(s.t)).collect();
    let ys: Vec<f64> = window.iter().map(|s| speed.of(s)).collect();
    let (slope, offset, max_residual) = ols(&xs, &ys)?;
    Ok(AsymptoticFit { slope, offset, max_residual, t_window: (t_min, t_max) })
}

/// Result of [`gamma_sigma_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaSigma {
    pub sup_dev: f64,
    /// `(t, v_T(t), inf_s k_Ω(h(0)+it, σ(s)))`.
    pub trace: Vec<(f64, f64, f64)>,
}

const SIGMA_GRID: usize = 200;
const SIGMA_SEEDS: usize = 3;
const SIGMA_TOL: f64 = 1e-8;

/// Compares `v_T(t)` with the distance from `h(0) + it` to the curve `σ`.
///
/// The Koenigs domain is translated so that `h(0)` sits at the origin, which
/// makes the real part of `σ` measured from the base point.
pub fn gamma_sigma_check(model: &SemigroupModel, grid: &[f64]) -> Result<GammaSigma> {
    let domain = model
        .koenigs_domain()
        .ok_or_else(|| Error::Precondition("model has no closed-form Koenigs domain".into()))?;
    let h0 = model.koenigs(model.base())?;
    let omega = domain.clone().translated(-h0);
    let origin = Complex::new(0.0, 0.0);
    if omega.to_half_plane(origin).is_none() {
        return Err(Error::Precondition("no closed-form hyperbolic metric on the Koenigs domain".into()));
    }
    let p = BasePoint::new(&omega, origin)?;
    let trace: Vec<(f64, f64, f64)> = grid
        .par_iter()
        .map(|&t| {
            let v_t = speeds_at(model, t)?.v_t;
            let inf = if t == 0.0 { 0.0 } else { sigma_distance(&omega, p, t)? };
            Ok((t, v_t, inf))
        })
        .collect::<Result<_>>()?;
    let sup_dev = trace.iter().map(|(_, a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(GammaSigma { sup_dev, trace })
}

/// `inf_s k_Ω(it, σ(s))` by a log grid in `s`, golden-section refinement
/// around the best grid points, and one widening if the minimum sits at the
/// top of the grid.
fn sigma_distance(omega: &StarlikeDomain, p: BasePoint, t: f64) -> Result<f64> {
    let target = Complex::new(0.0, t);
    let k = |s: f64| -> f64 {
        match quasi_geodesic_sigma(omega, p, s).and_then(|z| omega.hyperbolic_distance(target, z)) {
            Ok(d) => d,
            Err(_) => f64::INFINITY,
        }
    };
    let mut s_max = 10.0 * (t + 1.0);
    for attempt in 0..2 {
        let mut grid = vec![0.0];
        grid.extend(log_grid(1e-3 * t.min(1.0), s_max, SIGMA_GRID - 1)?);
        let values: Vec<f64> = grid.iter().map(|&s| k(s)).collect();
        let mut order: Vec<usize> = (0..grid.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        if order[0] == grid.len() - 1 {
            if attempt == 0 {
                s_max *= 100.0;
                continue;
            }
            return Err(Error::NonConvergence { iterations: 2, residual: values[order[0]] });
        }
        let mut best = values[order[0]];
        for &i in order.iter().take(SIGMA_SEEDS) {
            let lo = grid[i.saturating_sub(1)];
            let hi = grid[(i + 1).min(grid.len() - 1)];
            let (_, v) = golden_section(k, lo, hi, SIGMA_TOL);
            best = best.min(v);
        }
        if !best.is_finite() {
            return Err(Error::Domain("the curve σ never enters the domain".into()));
        }
        return Ok(best);
    }
    unreachable!("the loop returns on its second pass")
}

/// Result of [`vt_monotonicity_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VtMonotonicity {
    pub sup_diff: f64,
    /// `(t, v_T small, v_T large)`.
    pub trace: Vec<(f64, f64, f64)>,
}

const NESTING_RADII: usize = 12;
const NESTING_ANGLES: usize = 64;

/// `sup_t v_T^{small}(t) - v_T^{large}(t)` for Koenigs domains with
/// `Ω_small + shift ⊆ Ω_large`, the nesting being checked on samples.
pub fn vt_monotonicity_check(
    small: &SemigroupModel,
    large: &SemigroupModel,
    shift: Complex,
    grid: &[f64],
) -> Result<VtMonotonicity> {
    for m in [small, large] {
        if m.model_type() != ModelType::ParabolicPositiveStep {
            return Err(Error::Precondition(format!(
                "{} is not parabolic of positive step",
                m.family().name()
            )));
        }
    }
    let (ds, dl) = match (small.koenigs_domain(), large.koenigs_domain()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Precondition("both models need Koenigs domain descriptors".into())),
    };
    check_nesting(ds, dl, shift, small.koenigs(small.base())?)?;
    let trace: Vec<(f64, f64, f64)> = grid
        .par_iter()
        .map(|&t| Ok((t, speeds_at(small, t)?.v_t, speeds_at(large, t)?.v_t)))
        .collect::<Result<_>>()?;
    let sup_diff = trace.iter().map(|(_, a, b)| a - b).fold(f64::NEG_INFINITY, f64::max);
    Ok(VtMonotonicity { sup_diff, trace })
}

/// Sampled check of `small + shift ⊆ large` on rings around `center`.
pub fn check_nesting(small: &StarlikeDomain, large: &StarlikeDomain, shift: Complex, center: Complex) -> Result<()> {
    for r in log_grid(1e-2, 1e4, NESTING_RADII)? {
        for j in 0..NESTING_ANGLES {
            let a = std::f64::consts::TAU * (j as f64 + 0.5) / NESTING_ANGLES as f64;
            let z = center + Complex::from_polar(r, a);
            if small.contains(z) && !large.contains(z + shift) {
                return Err(Error::Precondition(format!("nesting fails at {z} (shift {shift})")));
            }
        }
    }
    Ok(())
}

/// Result of [`stolz_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StolzReport {
    /// `R₁ = exp(2·max_t(v_T - log t/(2α)) + 3 log 2)`.
    pub r1: f64,
    pub all_contained: bool,
    /// `(t, contained)`.
    pub trace: Vec<(f64, bool)>,
}

/// Whether the orbit lies in the Stolz regions `𝒮(τ, R₁ t^{1/α})` along the grid.
pub fn stolz_check(model: &SemigroupModel, alpha: f64, grid: &[f64]) -> Result<StolzReport> {
    if grid.is_empty() || grid.iter().any(|t| !(*t >= 1.0)) {
        return Err(Error::Precondition("Stolz grid must be non-empty and inside [1, ∞)".into()));
    }
    let points: Vec<(f64, PolarPoint)> =
        grid.par_iter().map(|&t| Ok((t, model.orbit(t)?.w))).collect::<Result<_>>()?;
    let max_gap = points
        .iter()
        .map(|(t, w)| w.dist_to_real_axis() - t.ln() / (2.0 * alpha))
        .fold(f64::NEG_INFINITY, f64::max);
    let r1 = (2.0 * max_gap + 3.0 * LN_2).exp();
    let mut trace = Vec::with_capacity(points.len());
    for (t, w) in &points {
        let region = StolzRegion::new(model.tau(), r1 * t.powf(1.0 / alpha))?;
        trace.push((*t, region.contains_polar(*w)));
    }
    let all_contained = trace.iter().all(|x| x.1);
    Ok(StolzReport { r1, all_contained, trace })
}

/// `log(1/|τ - φ_t(0)|) / t^{exponent}`.
pub fn rate_ratio(model: &SemigroupModel, t: f64, exponent: f64) -> Result<f64> {
    let w = model.orbit(t)?.w;
    Ok(-w.log_dist_to_tau() / t.powf(exponent))
}
