//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

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
use koenigs::{BasePoint, BoundaryPoint, Complex, DiscPoint, HalfPlanePoint, Result, SemigroupModel, StarlikeDomain};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

const METRIC_PAIRS: usize = 10_000;
const METRIC_TOL: f64 = 1e-12;
const METRIC_REFERENCE: f64 = 0.549_306_144_334_054_8;
const METRIC_REFERENCE_TOL: f64 = 1e-9;
const LAW_TOL: f64 = 1e-8;
const MIN_INEQUALITY_SAMPLES: usize = 1000;
const MAIN_GRID_POINTS: usize = 60;
const MAIN_STABLE_AFTER: f64 = 1e3;
/// Largest growth of the running sup after `MAIN_STABLE_AFTER` that still counts as constant.
const MAIN_STABLE_TOL: f64 = 1e-6;
const MAIN_TAIL_TOL: f64 = 0.05;
const CLOSED_FORM_REL_TOL: f64 = 0.02;
const OFFSET_TOL: f64 = 0.35;
const ORTHO_RATIO: (f64, f64) = (0.98, 1.02);
const PQ_TOL: f64 = 1e-10;
const PQ_RATIO: (f64, f64) = (0.999, 1.001);
const SLOPE_T_MAX: f64 = 1e6;
const SLOPE_SAMPLES: usize = 50;
const HM_WALKS: usize = 100_000;
const HM_EPS: f64 = 1e-4;
const HM_SEED: u64 = 7;
const HM_SIGMAS: f64 = 3.0;
const HM_MAX_STDERR: f64 = 0.002;
const SIN_RELATION_TOL: f64 = 1e-12;
const MONTE_CARLO_REL_TOL: f64 = 0.10;
const GAMMA_SIGMA_BOUND: f64 = 1.5;
const VT_MONO_BOUND: f64 = 1.0;
const RATE_BAND: (f64, f64) = (0.9, 1.1);

const ALPHAS: [f64; 3] = [1.5, 2.0, 3.0];
const MUS: [f64; 3] = [0.5, 1.0, 2.0];

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn line(id: &'static str, pass: bool, detail: String) -> Line {
    Line { id, pass, detail }
}

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn omega_models() -> Vec<(f64, f64, SemigroupModel)> {
    let mut out = Vec::new();
    for a in ALPHAS {
        for m in MUS {
            out.push((a, m, SemigroupModel::omega(a, m).expect("valid parameters")));
        }
    }
    out
}

fn within_rel(x: f64, target: f64, tol: f64) -> bool {
    (x / target - 1.0).abs() <= tol
}

fn metric_transport() -> Result<Vec<Line>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    let point = |rng: &mut ChaCha8Rng| {
        let r = rng.random::<f64>().sqrt() * 0.999;
        DiscPoint::new(Complex::from_polar(r, rng.random::<f64>() * std::f64::consts::TAU))
    };
    for _ in 0..METRIC_PAIRS {
        let tau = BoundaryPoint::from_angle(rng.random::<f64>() * std::f64::consts::TAU);
        let (a, b) = (point(&mut rng)?, point(&mut rng)?);
        let kd = dist_disc(a, b);
        let kh = dist_halfplane(cayley(tau, a)?, cayley(tau, b)?);
        worst = worst.max((kd - kh).abs());
    }
    let k = dist_disc(DiscPoint::new(c(0.0, 0.0))?, DiscPoint::new(c(0.5, 0.0))?);
    Ok(vec![
        line("1a", worst < METRIC_TOL, format!("metric transport: max |k_D - k_H∘C| = {worst:.3e} (< {METRIC_TOL:e})")),
        line(
            "1b",
            (k - METRIC_REFERENCE).abs() <= METRIC_REFERENCE_TOL,
            format!("k_D(0, 0.5) = {k:.12} (expected {METRIC_REFERENCE} ± {METRIC_REFERENCE_TOL:e})"),
        ),
    ])
}

fn semigroup_law() -> Result<Vec<Line>> {
    let (mut law, mut inter): (f64, f64) = (0.0, 0.0);
    for m in catalog() {
        for i in 0..20 {
            let z = DiscPoint::new(Complex::from_polar(0.05 + 0.04 * i as f64, 0.31 * i as f64 - 3.0))?;
            for j in 0..20 {
                let t = 0.25 * j as f64;
                law = law.max(verify_semigroup_law(&m, 0.25 * i as f64, t)?);
                inter = inter.max(intertwining_residual(&m, z, t)?);
            }
        }
    }
    Ok(vec![line(
        "2",
        law < LAW_TOL && inter < LAW_TOL,
        format!("semigroup law max {law:.3e}, intertwining max {inter:.3e} (< {LAW_TOL:e}) on 20x20 grids, all families"),
    )])
}

fn inequalities() -> Result<Vec<Line>> {
    let grid = log_grid(1e-3, 1e8, 64)?;
    let (mut n, mut bad) = (0usize, 0usize);
    for m in catalog() {
        for s in speed_table(&m, &grid)? {
            n += 1;
            let e = euclid_bounds_check(&m, s.t)?;
            if !(pythagoras_check(&s) && tangential_bound_check(&s) && e.all()) {
                bad += 1;
            }
        }
    }
    Ok(vec![line(
        "3",
        bad == 0 && n >= MIN_INEQUALITY_SAMPLES,
        format!("Pythagoras, v_T <= v_o + 4 log 2 and Euclidean bounds: {bad} violations in {n} samples"),
    )])
}

fn main_theorem() -> Result<Vec<Line>> {
    let grid = log_grid(1.0, 1e8, MAIN_GRID_POINTS)?;
    let mut models = vec![
        ("auto+".to_string(), SemigroupModel::parabolic_auto_plus()),
        ("auto-".to_string(), SemigroupModel::parabolic_auto_minus()),
    ];
    for (a, m, model) in omega_models() {
        models.push((format!("omega({a},{m})"), model));
    }
    let mut ok = true;
    let mut parts = Vec::new();
    let mut plus_tail = f64::NAN;
    for (name, model) in &models {
        let r = main_bound_gap(model, &grid)?;
        let growth = r.growth_after(MAIN_STABLE_AFTER);
        ok &= r.sup_gap.is_finite() && growth <= MAIN_STABLE_TOL;
        parts.push(format!("{name} sup {:.4}", r.sup_gap));
        if name == "auto+" {
            plus_tail = r.tail_gap;
        }
    }
    Ok(vec![
        line(
            "4a",
            ok,
            format!("main bound: sup finite, running sup constant after t = 1e3 (growth <= {MAIN_STABLE_TOL:e}): {}", parts.join(", ")),
        ),
        line(
            "4b",
            plus_tail.abs() <= MAIN_TAIL_TOL,
            format!("auto+ tail gap v_T - ½ log t at 1e8 = {plus_tail:.6} (expected 0 ± {MAIN_TAIL_TOL})"),
        ),
    ])
}

fn omega_tangential() -> Result<Vec<Line>> {
    let grid = log_grid(1e6, 1e8, 41)?;
    let mut ok = true;
    let mut parts = Vec::new();
    let mut offset = f64::NAN;
    for (a, m, model) in omega_models() {
        let f = asymptotic_fit(&speed_table(&model, &grid)?, SpeedKind::Tangential, Abscissa::LogT)?;
        let target = 1.0 / (2.0 * a);
        ok &= within_rel(f.slope, target, CLOSED_FORM_REL_TOL);
        parts.push(format!("({a},{m}) {:.4}/{:.4}", f.slope, target));
        if a == 2.0 && m == 1.0 {
            offset = f.offset;
        }
    }
    let expected = 0.5 * (2.0 / PI).ln();
    Ok(vec![
        line("5a", ok, format!("v_T slope vs ln t on [1e6, 1e8] within 2%: {}", parts.join(", "))),
        line(
            "5b",
            (offset - expected).abs() <= OFFSET_TOL,
            format!("omega(2,1) v_T offset {offset:.4} (expected {expected:.4} ± {OFFSET_TOL})"),
        ),
    ])
}

fn omega_orthogonal() -> Result<Vec<Line>> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (a, m, model) in omega_models() {
        let t = 1e8f64;
        let params = OmegaParams::new(a, m)?;
        let v_o = speed_table(&model, &[t])?[0].v_o;
        let ratio = v_o / (PI / (2.0 * params.c) * t.powf(1.0 - 1.0 / a));
        ok &= ratio >= ORTHO_RATIO.0 && ratio <= ORTHO_RATIO.1;
        parts.push(format!("({a},{m}) {ratio:.5}"));
    }
    Ok(vec![line("6", ok, format!("v_o(1e8) / (π/(2c) t^(1-1/α)) in [0.98, 1.02]: {}", parts.join(", ")))])
}

fn pq_system() -> Result<Vec<Line>> {
    let mut residual: f64 = 0.0;
    let mut ok = true;
    let mut parts = Vec::new();
    for a in ALPHAS {
        for m in MUS {
            let params = OmegaParams::new(a, m)?;
            let z0 = params.default_start();
            for t in log_grid(1e-3, 1e8, 45)? {
                let pq = pq_solve(&params, z0, t)?;
                residual = residual.max(pq.modulus_residual(&params).abs()).max(pq.argument_residual(&params).abs());
            }
            let t = 1e8f64;
            let pq = pq_solve(&params, z0, t)?;
            let q_ratio = pq.q / t.powf(1.0 / params.beta);
            let p_ratio = pq.p * (params.beta / z0.re) * t.powf(1.0 / a);
            let inside = |x: f64| x >= PQ_RATIO.0 && x <= PQ_RATIO.1;
            ok &= inside(q_ratio) && inside(p_ratio);
            parts.push(format!("({a},{m}) Q {q_ratio:.6} P {p_ratio:.6}"));
        }
    }
    Ok(vec![
        line("7a", residual <= PQ_TOL, format!("P/Q residuals max {residual:.3e} (<= {PQ_TOL:e})")),
        line("7b", ok, format!("P/Q asymptotic ratios at 1e8 in [0.999, 1.001]: {}", parts.join(", "))),
    ])
}

fn slopes() -> Result<Vec<Line>> {
    let mut cases: Vec<(String, StarlikeDomain, Complex, Slope)> = vec![(
        "strip".into(),
        StarlikeDomain::vertical_strip(0.0, PI)?,
        c(PI / 2.0, 0.0),
        Slope::NonTangential,
    )];
    for a in ALPHAS {
        for m in MUS {
            let pi = StarlikeDomain::half_parabola(a, m)?;
            let p = c(0.5, m * 0.5f64.powf(a) + 1.0);
            cases.push((format!("Pi({a},{m})"), pi.clone(), p, Slope::TangentialMinusHalfPi));
            cases.push((format!("-Pi({a},{m})"), pi.mirrored(), c(-p.re, p.im), Slope::TangentialPlusHalfPi));
            let om = StarlikeDomain::omega_family(a, m)?;
            let q = OmegaParams::new(a, m)?.default_start();
            cases.push((format!("Omega({a},{m})"), om.clone(), q, Slope::TangentialMinusHalfPi));
            cases.push((format!("-Omega({a},{m})"), om.mirrored(), c(-q.re, q.im), Slope::TangentialPlusHalfPi));
        }
    }
    let (mut wrong, mut inconclusive) = (Vec::new(), 0usize);
    for (name, d, p, expected) in &cases {
        let v = slope_classify(d, BasePoint::new(d, *p)?, SLOPE_T_MAX, SLOPE_SAMPLES)?.verdict;
        if v == Slope::Inconclusive {
            inconclusive += 1;
        }
        if v != *expected {
            wrong.push(format!("{name}: {}", v.describe()));
        }
    }
    Ok(vec![line(
        "8",
        wrong.is_empty() && inconclusive == 0,
        format!(
            "slope classification on {} domains: {} mismatches, {inconclusive} inconclusive {:?}",
            cases.len(),
            wrong.len(),
            wrong
        ),
    )])
}

fn harmonic() -> Result<Vec<Line>> {
    let h = StarlikeDomain::half_plane_right();
    let e = hm_wos(&h, c(1.0, 1.0), &UPPER_IMAGINARY_AXIS, HM_EPS, HM_WALKS, HM_SEED)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let w = HalfPlanePoint::new(Complex::from_polar((rng.random::<f64>() * 20.0 - 10.0).exp(), (rng.random::<f64>() - 0.5) * 3.14))?;
        worst = worst.max((w.w().arg().cos() - (PI * hm_halfplane_ray(w)).sin()).abs());
    }
    Ok(vec![
        line(
            "9a",
            (e.value - 0.75).abs() <= HM_SIGMAS * e.stderr && e.stderr < HM_MAX_STDERR && e.valid,
            format!("WoS ω(1+i) = {:.5} ± {:.5} vs 0.75 (n = {HM_WALKS}, 3σ, stderr < {HM_MAX_STDERR})", e.value, e.stderr),
        ),
        line("9b", worst < SIN_RELATION_TOL, format!("sin relation max |cos θ - sin(πω)| = {worst:.3e}")),
    ])
}

fn vt_from_hm() -> Result<Vec<Line>> {
    let d = StarlikeDomain::half_parabola(2.0, 1.0)?;
    let p = BasePoint::new(&d, c(1.0, 2.0))?;
    let (mut xs, mut ys, mut parts) = (Vec::new(), Vec::new(), Vec::new());
    let mut valid = true;
    for t in [1e2, 1e3, 1e4] {
        let r = vt_via_hm(&d, p, t, HM_EPS, HM_WALKS, HM_SEED)?;
        valid &= r.omega.valid && !r.flagged;
        xs.push(t.ln());
        ys.push(r.value);
        parts.push(format!("t={t:e} ω={:.5} v={:.4}±{:.4}", r.omega.value, r.value, r.stderr));
    }
    let (slope, _, _) = ols(&xs, &ys)?;
    Ok(vec![line(
        "10",
        valid && within_rel(slope, 0.25, MONTE_CARLO_REL_TOL),
        format!("Pi(2,1) slope of -½ log sin(πω) vs ln t = {slope:.4} (0.25 ± 10%): {}", parts.join(", ")),
    )])
}

fn gamma_sigma() -> Result<Vec<Line>> {
    let r = gamma_sigma_check(&SemigroupModel::parabolic_auto_plus(), &log_grid(1.0, 1e4, 41)?)?;
    Ok(vec![line(
        "11",
        r.sup_dev < GAMMA_SIGMA_BOUND,
        format!("auto+ sup |v_T - inf_s k(1+it, σ(s))| over [1, 1e4] = {:.4} (< {GAMMA_SIGMA_BOUND})", r.sup_dev),
    )])
}

fn vt_mono() -> Result<Vec<Line>> {
    let grid = log_grid(1.0, 1e6, 61)?;
    let small = SemigroupModel::omega(2.0, 2.0)?;
    let large = SemigroupModel::omega(2.0, 0.5)?;
    let pair = vt_monotonicity_check(&small, &large, c(0.0, 0.5), &grid)?;
    let own = vt_monotonicity_check(&small, &small, c(0.0, 0.0), &grid)?;
    Ok(vec![line(
        "12",
        pair.sup_diff < VT_MONO_BOUND && own.sup_diff == 0.0,
        format!(
            "v_T(omega(2,2)) - v_T(omega(2,0.5)) sup = {:.4} (< {VT_MONO_BOUND}); self-pair {}",
            pair.sup_diff, own.sup_diff
        ),
    )])
}

fn stolz_rate() -> Result<Vec<Line>> {
    let model = SemigroupModel::omega(2.0, 1.0)?;
    let s = stolz_check(&model, 2.0, &log_grid(1.0, 1e6, 61)?)?;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for t in log_grid(1e4, 1e8, 41)? {
        let r = rate_ratio(&model, t, 0.5)? / PI;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    let inside = |k: f64| lo >= RATE_BAND.0 * k && hi <= RATE_BAND.1 * k;
    Ok(vec![
        line("13a", s.all_contained, format!("omega(2,1) orbit in S(τ, R1 t^½) on [1, 1e6], R1 = {:.4}", s.r1)),
        line(
            "13b",
            inside(1.0),
            format!("log(1/|τ-φ_t(0)|)/(π t^½) on [1e4, 1e8] in [{lo:.4}, {hi:.4}] (expected [0.9, 1.1])"),
        ),
        line(
            "13c",
            inside(2.0),
            format!("same ratio against 2π t^½, the constant from the orthogonal-speed asymptotics: [{:.4}, {:.4}]", lo / 2.0, hi / 2.0),
        ),
    ])
}

fn determinism() -> Result<Vec<Line>> {
    let h = StarlikeDomain::half_parabola(2.0, 1.0)?;
    let run = || -> Result<String> {
        let e = hm_wos(&h, c(1.0, 20.0), &UPPER_IMAGINARY_AXIS, 1e-3, 5000, 99)?;
        let rows = speed_table(&SemigroupModel::omega(2.0, 1.0)?, &log_grid(1.0, 1e8, 30)?)?;
        Ok(format!("{}{}", serde_json::to_string(&e).unwrap(), serde_json::to_string(&rows).unwrap()))
    };
    let (a, b) = (run()?, run()?);
    Ok(vec![line("14", a == b, format!("repeated seeded runs byte-identical ({} bytes)", a.len()))])
}

type Criterion = (&'static str, fn() -> Result<Vec<Line>>);

fn main() {
    let criteria: [Criterion; 14] = [
        ("1", metric_transport),
        ("2", semigroup_law),
        ("3", inequalities),
        ("4", main_theorem),
        ("5", omega_tangential),
        ("6", omega_orthogonal),
        ("7", pq_system),
        ("8", slopes),
        ("9", harmonic),
        ("10", vt_from_hm),
        ("11", gamma_sigma),
        ("12", vt_mono),
        ("13", stolz_rate),
        ("14", determinism),
    ];
    let mut failed = Vec::new();
    for (id, run) in criteria {
        let start = Instant::now();
        let lines = run().unwrap_or_else(|e| vec![line(id, false, format!("error: {e}"))]);
        for l in lines {
            println!("[{}] criterion {:<3} {} ({:.1}s)", if l.pass { "PASS" } else { "FAIL" }, l.id, l.detail, start.elapsed().as_secs_f64());
            if !l.pass {
                failed.push(l.id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
