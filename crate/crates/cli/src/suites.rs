//! Verification suites behind `koenigs verify`.

use koenigs::conformal::{pq_solve, OmegaParams};
use koenigs::domains::{slope_classify, Slope};
use koenigs::harmonic::{hm_halfplane_ray, hm_wos, vt_via_hm, UPPER_IMAGINARY_AXIS};
use koenigs::hyperbolic::{cayley, dist_disc, dist_halfplane};
use koenigs::numerics::{log_grid, ols};
use koenigs::semigroups::{catalog, intertwining_residual, verify_semigroup_law};
use koenigs::speeds::{
    asymptotic_fit, euclid_bounds_check, gamma_sigma_check, main_bound_gap, pythagoras_check, rate_ratio,
    speed_table, stolz_check, tangential_bound_check, vt_monotonicity_check, Abscissa, SpeedKind,
};
use koenigs::{BasePoint, BoundaryPoint, Complex, DiscPoint, HalfPlanePoint, SemigroupModel, StarlikeDomain};
use serde::Serialize;
use std::f64::consts::{PI, TAU};

use crate::args::{Suite, VerifyArgs};
use crate::error::CliResult;

/// One pass/fail check with its measured value and threshold.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub threshold: String,
}

fn check(name: impl Into<String>, pass: bool, measured: f64, threshold: impl Into<String>) -> Check {
    Check { name: name.into(), pass, measured, threshold: threshold.into() }
}

const ALPHAS: [f64; 3] = [1.5, 2.0, 3.0];
const MUS: [f64; 3] = [0.5, 1.0, 2.0];
const METRIC_PAIRS: usize = 10_000;
const METRIC_REFERENCE: f64 = 0.549_306_144_334_054_8;
const MIN_SAMPLES: usize = 1000;

pub fn run(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    match args.suite {
        Suite::Metric => metric(args),
        Suite::Semigroup => semigroup(args),
        Suite::Pythagoras => pythagoras(),
        Suite::Euclid => euclid(),
        Suite::MainBound => main_bound(args),
        Suite::OmegaAsymptotics => omega_asymptotics(args),
        Suite::Slope => slope(),
        Suite::Hm => hm(args),
        Suite::GammaSigma => gamma_sigma(args),
        Suite::VtMono => vt_mono(args),
    }
}

fn metric(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed.unwrap_or(1));
    let mut worst: f64 = 0.0;
    for _ in 0..METRIC_PAIRS {
        let tau = BoundaryPoint::from_angle(rng.random::<f64>() * TAU);
        let mut point = || DiscPoint::new(Complex::from_polar(rng.random::<f64>().sqrt() * 0.999, rng.random::<f64>() * TAU));
        let (a, b) = (point()?, point()?);
        worst = worst.max((dist_disc(a, b) - dist_halfplane(cayley(tau, a)?, cayley(tau, b)?)).abs());
    }
    let k = dist_disc(DiscPoint::new(Complex::new(0.0, 0.0))?, DiscPoint::new(Complex::new(0.5, 0.0))?);
    Ok(vec![
        check("transport max error", worst < args.tol.tol_metric, worst, format!("< {:e}", args.tol.tol_metric)),
        check("k(0, 0.5)", (k - METRIC_REFERENCE).abs() <= 1e-9, k, format!("{METRIC_REFERENCE} ± 1e-9")),
    ])
}

fn semigroup(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    let tol = args.tol.tol_law;
    let mut out = Vec::new();
    for m in catalog() {
        let (mut law, mut inter): (f64, f64) = (0.0, 0.0);
        for i in 0..20 {
            let z = DiscPoint::new(Complex::from_polar(0.05 + 0.04 * i as f64, 0.31 * i as f64 - 3.0))?;
            for j in 0..20 {
                let t = 0.25 * j as f64;
                law = law.max(verify_semigroup_law(&m, 0.25 * i as f64, t)?);
                inter = inter.max(intertwining_residual(&m, z, t)?);
            }
        }
        let name = m.family().name();
        out.push(check(format!("{name} semigroup law"), law < tol, law, format!("< {tol:e}")));
        out.push(check(format!("{name} intertwining"), inter < tol, inter, format!("< {tol:e}")));
    }
    Ok(out)
}

fn samples_grid() -> CliResult<Vec<f64>> {
    Ok(log_grid(1e-3, 1e8, 64)?)
}

fn pythagoras() -> CliResult<Vec<Check>> {
    let grid = samples_grid()?;
    let (mut n, mut pyth, mut tang) = (0usize, 0usize, 0usize);
    for m in catalog() {
        for s in speed_table(&m, &grid)? {
            n += 1;
            pyth += usize::from(!pythagoras_check(&s));
            tang += usize::from(!tangential_bound_check(&s));
        }
    }
    Ok(vec![
        check("samples", n >= MIN_SAMPLES, n as f64, format!(">= {MIN_SAMPLES}")),
        check("Pythagoras violations", pyth == 0, pyth as f64, "== 0"),
        check("v_T <= v_o + 4 log 2 violations", tang == 0, tang as f64, "== 0"),
    ])
}

fn euclid() -> CliResult<Vec<Check>> {
    let grid = samples_grid()?;
    let (mut n, mut total, mut ortho, mut tang) = (0usize, 0usize, 0usize, 0usize);
    for m in catalog() {
        for &t in &grid {
            let e = euclid_bounds_check(&m, t)?;
            n += 1;
            total += usize::from(!e.total_ok);
            ortho += usize::from(!e.ortho_ok);
            tang += usize::from(!e.tang_ok);
        }
    }
    Ok(vec![
        check("samples", n >= MIN_SAMPLES, n as f64, format!(">= {MIN_SAMPLES}")),
        check("total-speed bound violations", total == 0, total as f64, "== 0"),
        check("orthogonal-speed bound violations", ortho == 0, ortho as f64, "== 0"),
        check("tangential-speed bound violations", tang == 0, tang as f64, "== 0"),
    ])
}

fn parabolic_models() -> CliResult<Vec<(String, SemigroupModel)>> {
    let mut models = vec![
        ("parabolic-auto".to_string(), SemigroupModel::parabolic_auto_plus()),
        ("parabolic-auto-minus".to_string(), SemigroupModel::parabolic_auto_minus()),
    ];
    for a in ALPHAS {
        for m in MUS {
            models.push((format!("omega({a},{m})"), SemigroupModel::omega(a, m)?));
        }
    }
    Ok(models)
}

fn main_bound(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    let grid = log_grid(1.0, 1e8, 60)?;
    let stable = args.tol.tol_main_stable;
    let mut out = Vec::new();
    for (name, model) in parabolic_models()? {
        let r = main_bound_gap(&model, &grid)?;
        out.push(check(format!("{name} sup gap"), r.sup_gap.is_finite(), r.sup_gap, "finite"));
        let growth = r.growth_after(1e3);
        out.push(check(format!("{name} running-sup growth after 1e3"), growth <= stable, growth, format!("<= {stable:e}")));
        if name == "parabolic-auto" {
            let tol = args.tol.tol_main_tail;
            out.push(check(format!("{name} tail gap"), r.tail_gap.abs() <= tol, r.tail_gap, format!("0 ± {tol}")));
        }
    }
    Ok(out)
}

fn rel(x: f64, target: f64, tol: f64) -> bool {
    (x / target - 1.0).abs() <= tol
}

fn omega_asymptotics(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    let tol = &args.tol;
    let fit_grid = log_grid(1e6, 1e8, 41)?;
    let mut out = Vec::new();
    for a in ALPHAS {
        for m in MUS {
            let model = SemigroupModel::omega(a, m)?;
            let params = OmegaParams::new(a, m)?;
            let samples = speed_table(&model, &fit_grid)?;
            let f = asymptotic_fit(&samples, SpeedKind::Tangential, Abscissa::LogT)?;
            let target = 1.0 / (2.0 * a);
            out.push(check(
                format!("omega({a},{m}) v_T slope"),
                rel(f.slope, target, tol.tol_slope),
                f.slope,
                format!("{target} ± {}%", 100.0 * tol.tol_slope),
            ));
            if a == 2.0 && m == 1.0 {
                let expected = 0.5 * (2.0 / PI).ln();
                out.push(check(
                    "omega(2,1) v_T offset",
                    (f.offset - expected).abs() <= tol.tol_offset,
                    f.offset,
                    format!("{expected} ± {}", tol.tol_offset),
                ));
            }
            let t = 1e8f64;
            let v_o = samples.last().map_or(f64::NAN, |s| s.v_o);
            let ratio = v_o / (PI / (2.0 * params.c) * t.powf(1.0 - 1.0 / a));
            out.push(check(format!("omega({a},{m}) v_o ratio"), rel(ratio, 1.0, tol.tol_slope), ratio, format!("1 ± {}%", 100.0 * tol.tol_slope)));
            let z0 = params.default_start();
            let pq = pq_solve(&params, z0, t)?;
            let q_ratio = pq.q / t.powf(1.0 / params.beta);
            let p_ratio = pq.p * (params.beta / z0.re) * t.powf(1.0 / a);
            out.push(check(format!("omega({a},{m}) Q ratio"), rel(q_ratio, 1.0, 1e-3), q_ratio, "1 ± 0.001"));
            out.push(check(format!("omega({a},{m}) P ratio"), rel(p_ratio, 1.0, 1e-3), p_ratio, "1 ± 0.001"));
        }
    }
    let model = SemigroupModel::omega(2.0, 1.0)?;
    let s = stolz_check(&model, 2.0, &log_grid(1.0, 1e6, 61)?)?;
    out.push(check("omega(2,1) Stolz containment", s.all_contained, s.r1, "R1 from the grid"));
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for t in log_grid(1e4, 1e8, 41)? {
        let r = rate_ratio(&model, t, 0.5)?;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    for (label, k) in [("π", PI), ("2π", 2.0 * PI)] {
        let pass = lo >= (1.0 - tol.tol_rate) * k && hi <= (1.0 + tol.tol_rate) * k;
        let worst = if (lo / k - 1.0).abs() > (hi / k - 1.0).abs() { lo } else { hi };
        out.push(check(format!("omega(2,1) rate ratio vs {label}"), pass, worst, format!("{label} ± {}%", 100.0 * tol.tol_rate)));
    }
    Ok(out)
}

fn slope() -> CliResult<Vec<Check>> {
    let mut cases: Vec<(String, StarlikeDomain, Complex, Slope)> = vec![(
        "strip".into(),
        StarlikeDomain::vertical_strip(0.0, PI)?,
        Complex::new(PI / 2.0, 0.0),
        Slope::NonTangential,
    )];
    for a in ALPHAS {
        for m in MUS {
            let pi = StarlikeDomain::half_parabola(a, m)?;
            let p = Complex::new(0.5, m * 0.5f64.powf(a) + 1.0);
            cases.push((format!("Pi({a},{m})"), pi.clone(), p, Slope::TangentialMinusHalfPi));
            cases.push((format!("mirrored Pi({a},{m})"), pi.mirrored(), Complex::new(-p.re, p.im), Slope::TangentialPlusHalfPi));
            let om = StarlikeDomain::omega_family(a, m)?;
            let q = OmegaParams::new(a, m)?.default_start();
            cases.push((format!("Omega({a},{m})"), om.clone(), q, Slope::TangentialMinusHalfPi));
            cases.push((format!("mirrored Omega({a},{m})"), om.mirrored(), Complex::new(-q.re, q.im), Slope::TangentialPlusHalfPi));
        }
    }
    let mut out = Vec::new();
    for (name, d, p, expected) in cases {
        let v = slope_classify(&d, BasePoint::new(&d, p)?, 1e6, 50)?;
        out.push(check(format!("{name}: {}", v.verdict.describe()), v.verdict == expected, v.drift, expected.describe()));
    }
    Ok(out)
}

fn hm(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    let seed = args.seed.expect("seed checked before dispatch");
    let (n, eps, sig) = (args.walks, args.eps, args.tol.tol_sigmas);
    let h = StarlikeDomain::half_plane_right();
    let z = Complex::new(1.0, 1.0);
    let e = hm_wos(&h, z, &UPPER_IMAGINARY_AXIS, eps, n, seed)?;
    let mut out = vec![
        check("H: ω(1+i) - 0.75 in standard errors", (e.value - 0.75).abs() <= sig * e.stderr, (e.value - 0.75) / e.stderr, format!("|·| <= {sig}")),
        check("H: stderr", e.stderr < 0.002, e.stderr, "< 0.002"),
        check("H: estimate valid", e.valid, e.n_excluded as f64, "<= 1% excluded"),
    ];
    let half = hm_wos(&h, z, &UPPER_IMAGINARY_AXIS, (eps / 2.0).max(1e-6), n, seed)?;
    let shift = (half.value - e.value).abs() / e.stderr.hypot(half.stderr);
    out.push(check("H: ε-halving shift in standard errors", shift < 2.0, shift, "< 2"));
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let w = Complex::from_polar((0.02 * i as f64 - 10.0).exp(), 1.5 * ((0.7 * i as f64).sin()));
        let w = HalfPlanePoint::new(w)?;
        worst = worst.max((w.w().arg().cos() - (PI * hm_halfplane_ray(w)).sin()).abs());
    }
    out.push(check("H: sin relation", worst < 1e-12, worst, "< 1e-12"));

    let pi21 = StarlikeDomain::half_parabola(2.0, 1.0)?;
    let p = BasePoint::new(&pi21, Complex::new(1.0, 2.0))?;
    let (mut xs, mut ys, mut valid) = (Vec::new(), Vec::new(), true);
    for t in [1e2, 1e3, 1e4] {
        let r = vt_via_hm(&pi21, p, t, eps, n, seed)?;
        valid &= r.omega.valid && !r.flagged;
        xs.push(t.ln());
        ys.push(r.value);
    }
    let (slope, _, _) = ols(&xs, &ys)?;
    out.push(check(
        "Pi(2,1) slope of -½ log sin(πω) vs ln t",
        valid && rel(slope, 0.25, args.tol.tol_mc),
        slope,
        format!("0.25 ± {}%", 100.0 * args.tol.tol_mc),
    ));
    let t = 1e3;
    let narrow = StarlikeDomain::half_parabola(2.0, 2.0)?;
    let wide = StarlikeDomain::half_parabola(2.0, 0.5)?;
    let base = Complex::new(0.5, 2.0);
    let a = vt_via_hm(&narrow, BasePoint::new(&narrow, base)?, t, eps, n, seed)?;
    let b = vt_via_hm(&wide, BasePoint::new(&wide, base)?, t, eps, n, seed)?;
    out.push(check("Pi(2,2) minus Pi(2,0.5) at t = 1e3", a.value >= b.value - 1.0, a.value - b.value, ">= -1"));
    let mono = b.omega.value - a.omega.value;
    let bound = sig * a.omega.stderr.hypot(b.omega.stderr);
    out.push(check("domain monotonicity ω(Pi(2,0.5)) - ω(Pi(2,2))", mono <= bound, mono, format!("<= {bound:.3e}")));
    Ok(out)
}

fn gamma_sigma(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    let bound = args.tol.tol_gamma_sigma;
    let grid = log_grid(1.0, 1e4, 41)?;
    let plus = gamma_sigma_check(&SemigroupModel::parabolic_auto_plus(), &grid)?;
    let zero = gamma_sigma_check(&SemigroupModel::parabolic_auto_plus(), &[0.0])?;
    let strip = gamma_sigma_check(&SemigroupModel::hyperbolic_group(1.0)?, &grid)?;
    Ok(vec![
        check("parabolic-auto on H", plus.sup_dev < bound, plus.sup_dev, format!("< {bound}")),
        check("deviation at t = 0", zero.sup_dev == 0.0, zero.sup_dev, "== 0"),
        check("hyperbolic(1) on the strip", strip.sup_dev.is_finite(), strip.sup_dev, "finite"),
    ])
}

fn vt_mono(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    let bound = args.tol.tol_vt_mono;
    let grid = log_grid(1.0, 1e6, 61)?;
    let narrow = SemigroupModel::omega(2.0, 2.0)?;
    let wide = SemigroupModel::omega(2.0, 0.5)?;
    let pair = vt_monotonicity_check(&narrow, &wide, Complex::new(0.0, 0.5), &grid)?;
    let own = vt_monotonicity_check(&narrow, &narrow, Complex::new(0.0, 0.0), &grid)?;
    let half = vt_monotonicity_check(&SemigroupModel::omega(2.0, 1.0)?, &SemigroupModel::parabolic_auto_plus(), Complex::new(0.0, 0.0), &grid)?;
    Ok(vec![
        check("omega(2,2) inside omega(2,0.5)", pair.sup_diff < bound, pair.sup_diff, format!("< {bound}")),
        check("self pair", own.sup_diff == 0.0, own.sup_diff, "== 0"),
        check("omega(2,1) inside H", half.sup_diff.is_finite(), half.sup_diff, "finite"),
    ])
}
