//! Small numerical helpers shared by the geometric modules.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// `n` points spaced evenly in `log t` on `[t_min, t_max]`, endpoints included.
pub fn log_grid(t_min: f64, t_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0) || !(t_max >= t_min) || !t_max.is_finite() {
        return Err(Error::Precondition(format!("invalid log grid [{t_min}, {t_max}]")));
    }
    if n == 0 {
        return Err(Error::Precondition("log grid needs at least one point".into()));
    }
    if n == 1 {
        return Ok(vec![t_min]);
    }
    let (a, b) = (t_min.ln(), t_max.ln());
    let step = (b - a) / (n - 1) as f64;
    let mut grid: Vec<f64> = (0..n).map(|i| (a + step * i as f64).exp()).collect();
    grid[0] = t_min;
    grid[n - 1] = t_max;
    Ok(grid)
}

/// Golden-section search for the minimum of `f` on `[a, b]`, stopping once the
/// bracket is narrower than `tol · (1 + |x|)`. Returns `(x, f(x))`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol * (1.0 + c.abs().max(d.abs())) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd { (c, fc) } else { (d, fd) }
}

/// Minimise `f` on `[a, b]`: evaluate a uniform grid of `seeds` points, then
/// refine with golden-section search around the `refine` best grid points.
pub fn grid_then_golden<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    seeds: usize,
    refine: usize,
    tol: f64,
) -> (f64, f64) {
    if !(b > a) {
        return (a, f(a));
    }
    let n = seeds.max(3);
    let h = (b - a) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| if i == n - 1 { b } else { a + h * i as f64 }).collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| fs[i].total_cmp(&fs[j]));
    let mut best = (xs[order[0]], fs[order[0]]);
    for &i in order.iter().take(refine.max(1)) {
        let lo = xs[i.saturating_sub(1)];
        let hi = xs[(i + 1).min(n - 1)];
        let cand = golden_section(&f, lo, hi, tol);
        if cand.1 < best.1 {
            best = cand;
        }
    }
    best
}

/// Ordinary least squares `y ≈ slope · x + offset`; returns `(slope, offset, max |residual|)`.
pub fn ols(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Precondition("least squares needs two or more paired points".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Precondition("degenerate abscissae in least squares".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let offset = my - slope * mx;
    let max_residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - offset).abs())
        .fold(0.0, f64::max);
    Ok((slope, offset, max_residual))
}

/// Smallest `x` in `[lo, hi]` with `pred(x)`, assuming `pred` is monotone
/// (false then true). Returns `hi` if no switch is found.
pub fn bisect_threshold<P: Fn(f64) -> bool>(pred: P, mut lo: f64, mut hi: f64, iterations: usize) -> f64 {
    if pred(lo) {
        return lo;
    }
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
