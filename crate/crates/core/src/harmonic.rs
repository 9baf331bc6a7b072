//! Harmonic measure: exact in the right half-plane, walk-on-spheres elsewhere,
//! and the tangential speed recovered from it.

use num_complex::Complex64 as Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::domains::{classify_model, BasePoint, Boundary, ModelType, StarlikeDomain, DISTANCE_TOL};
use crate::error::{Error, Result};
use crate::hyperbolic::HalfPlanePoint;
use crate::numerics::log_grid;

/// Maximum number of steps before a walk is excluded.
pub const WALK_STEP_CAP: usize = 100_000;
/// Largest excluded fraction for which an estimate is still valid.
pub const MAX_EXCLUDED_FRACTION: f64 = 0.01;
/// Walks leaving the disc of radius `ESCAPE_FACTOR·(1 + |z₀|)` are scored by the half-plane kernel.
pub const ESCAPE_FACTOR: f64 = 1e6;
pub const MIN_WALKS: usize = 1000;
pub const EPS_RANGE: (f64, f64) = (1e-6, 1e-2);

/// Harmonic measure of `iℝ⁺` at `w` in the right half-plane: `½ + arg(w)/π`.
pub fn hm_halfplane_ray(w: HalfPlanePoint) -> f64 {
    0.5 + w.w().arg() / PI
}

/// A boundary arc given by an indicator on boundary points, together with its
/// harmonic measure in the bounding half-plane used to score escaped walks.
#[derive(Debug, Clone, Copy)]
pub struct BoundarySet {
    pub name: &'static str,
    pub indicator: fn(Complex) -> bool,
    pub escape_score: fn(Complex) -> f64,
}

/// The upper imaginary semi-axis `iℝ⁺`.
pub const UPPER_IMAGINARY_AXIS: BoundarySet = BoundarySet {
    name: "upper imaginary axis",
    indicator: |q| q.im > 0.0 && q.re.abs() <= 1e-12 * (1.0 + q.im),
    escape_score: |z| (0.5 + z.arg() / PI).clamp(0.0, 1.0),
};

/// Monte-Carlo harmonic-measure estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HmEstimate {
    pub value: f64,
    pub stderr: f64,
    /// Walks that contributed to the estimate.
    pub n_walks: usize,
    pub eps_shell: f64,
    /// Walks scored by the half-plane kernel after escaping.
    pub n_escaped: usize,
    /// Walks dropped at the step cap.
    pub n_excluded: usize,
    /// False when more than [`MAX_EXCLUDED_FRACTION`] of the walks were dropped.
    pub valid: bool,
}

#[derive(Debug, Clone, Copy)]
enum Outcome {
    Absorbed(f64),
    Escaped(f64),
    Excluded,
}

/// Walk-on-spheres estimate of `ω(z₀, set, Ω)`, deterministic in `(seed, n)`.
///
/// Walk `i` draws from a ChaCha stream keyed by `(seed, i)` and scores are
/// summed in index order, so the result does not depend on scheduling.
pub fn hm_wos(domain: &StarlikeDomain, z0: Complex, set: &BoundarySet, eps: f64, n: usize, seed: u64) -> Result<HmEstimate> {
    if !domain.contains(z0) {
        return Err(Error::Domain(format!("{z0} is not in the domain")));
    }
    if !(eps >= EPS_RANGE.0 && eps <= EPS_RANGE.1) {
        return Err(Error::Precondition(format!("ε = {eps} must lie in [{:e}, {:e}]", EPS_RANGE.0, EPS_RANGE.1)));
    }
    if n < MIN_WALKS {
        return Err(Error::Precondition(format!("need at least {MIN_WALKS} walks, got {n}")));
    }
    let boundary = domain.boundary();
    let escape = ESCAPE_FACTOR * (1.0 + z0.norm());
    let key = ChaCha8Rng::seed_from_u64(seed).get_seed();
    let outcomes: Vec<Outcome> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::from_seed(key);
            rng.set_stream(i as u64);
            walk(&boundary, z0, set, eps, escape, &mut rng)
        })
        .collect();
    let (mut sum, mut counted, mut escaped, mut excluded) = (0.0, 0usize, 0usize, 0usize);
    for o in outcomes {
        match o {
            Outcome::Absorbed(s) => {
                sum += s;
                counted += 1;
            }
            Outcome::Escaped(s) => {
                sum += s;
                counted += 1;
                escaped += 1;
            }
            Outcome::Excluded => excluded += 1,
        }
    }
    let value = if counted > 0 { sum / counted as f64 } else { f64::NAN };
    let stderr = (value * (1.0 - value) / counted as f64).sqrt();
    Ok(HmEstimate {
        value,
        stderr,
        n_walks: counted,
        eps_shell: eps,
        n_escaped: escaped,
        n_excluded: excluded,
        valid: counted > 0 && (excluded as f64) <= MAX_EXCLUDED_FRACTION * n as f64,
    })
}

fn walk(boundary: &Boundary, z0: Complex, set: &BoundarySet, eps: f64, escape: f64, rng: &mut ChaCha8Rng) -> Outcome {
    let mut z = z0;
    for _ in 0..WALK_STEP_CAP {
        let Some((d, q)) = boundary.nearest_within(z, DISTANCE_TOL) else {
            return Outcome::Escaped((set.escape_score)(z));
        };
        if d < eps {
            return Outcome::Absorbed(if (set.indicator)(q) { 1.0 } else { 0.0 });
        }
        let angle = rng.random::<f64>() * TAU;
        z += Complex::from_polar(d, angle);
        if z.norm() > escape {
            return Outcome::Escaped((set.escape_score)(z));
        }
    }
    Outcome::Excluded
}

/// Tangential speed recovered from harmonic measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VtFromHm {
    pub t: f64,
    /// `-½ log sin(π ω̂)`.
    pub value: f64,
    /// First-order propagated error `½π|cot(π ω̂)|·stderr`.
    pub stderr: f64,
    pub omega: HmEstimate,
    /// Set when `ω̂ ≤ ½`, where the relation does not apply yet.
    pub flagged: bool,
}

/// `-½ log sin(π ω(p + it, iℝ⁺, Ω))` from a walk-on-spheres estimate.
pub fn vt_via_hm(domain: &StarlikeDomain, p: BasePoint, t: f64, eps: f64, n: usize, seed: u64) -> Result<VtFromHm> {
    if classify_model(domain)? != ModelType::ParabolicPositiveStep {
        return Err(Error::Precondition("the domain must be of parabolic positive-step type".into()));
    }
    if !contains_upper_imaginary_axis(domain) {
        return Err(Error::Precondition("the boundary must contain the upper imaginary semi-axis".into()));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("t = {t} must be finite and >= 0")));
    }
    let omega = hm_wos(domain, p.p() + Complex::new(0.0, t), &UPPER_IMAGINARY_AXIS, eps, n, seed)?;
    Ok(vt_from_estimate(t, omega))
}

/// Applies the sine relation to an existing estimate.
pub fn vt_from_estimate(t: f64, omega: HmEstimate) -> VtFromHm {
    let x = PI * omega.value;
    VtFromHm {
        t,
        value: -0.5 * x.sin().ln(),
        stderr: 0.5 * PI * (x.cos() / x.sin()).abs() * omega.stderr,
        omega,
        flagged: omega.value <= 0.5,
    }
}

/// Sampled check that `iy` lies on the boundary for `y ∈ [10⁻², 10⁶]`.
fn contains_upper_imaginary_axis(domain: &StarlikeDomain) -> bool {
    let boundary = domain.boundary();
    log_grid(1e-2, 1e6, 17)
        .map(|ys| ys.iter().all(|&y| boundary.distance(Complex::new(0.0, y)) <= 1e-9 * (1.0 + y)))
        .unwrap_or(false)
}
