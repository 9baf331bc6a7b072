//! Boundary pieces of starlike domains and nearest-point queries on them.

use num_complex::Complex64 as Complex;

use crate::conformal::{gamma2, gamma3, OmegaParams};
use crate::numerics::{bisect_threshold, golden_section, grid_then_golden};

/// Coarse seeds for curve minimisation.
const CURVE_SEEDS: usize = 64;
/// Best coarse seeds refined by golden-section search.
const CURVE_REFINE: usize = 3;

/// A rigid motion `z ↦ M(z) + offset` where `M` is the identity or `z ↦ -z̄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Frame {
    pub mirror: bool,
    pub offset: Complex,
}

impl Frame {
    pub const IDENTITY: Frame = Frame { mirror: false, offset: Complex::new(0.0, 0.0) };

    pub fn apply(&self, z: Complex) -> Complex {
        reflect(z, self.mirror) + self.offset
    }

    pub fn invert(&self, z: Complex) -> Complex {
        reflect(z - self.offset, self.mirror)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Frame) -> Frame {
        Frame { mirror: self.mirror ^ inner.mirror, offset: self.apply(inner.offset) }
    }

    /// Image of a vertical band under `invert`.
    pub fn pull_band(&self, b: Band) -> Band {
        let (lo, hi) = (b.lo - self.offset.re, b.hi - self.offset.re);
        if self.mirror { Band { lo: -hi, hi: -lo } } else { Band { lo, hi } }
    }
}

pub(crate) fn reflect(z: Complex, mirror: bool) -> Complex {
    if mirror { Complex::new(-z.re, z.im) } else { z }
}

/// Restriction of a boundary query to the vertical band `lo ≤ Re ≤ hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl Band {
    pub const ALL: Band = Band { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn at_least(x: f64) -> Band {
        Band { lo: x, hi: f64::INFINITY }
    }

    pub fn at_most(x: f64) -> Band {
        Band { lo: f64::NEG_INFINITY, hi: x }
    }

    pub fn intersect(&self, other: &Band) -> Band {
        Band { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

/// Smooth boundary curves with real part strictly increasing in the parameter
/// and modulus increasing in the parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum CurveKind {
    /// `s ↦ s + i m s^α`, `s ≥ 0`.
    PowerWall { alpha: f64, m: f64 },
    /// `s ↦ Φ_α(s + ic/η)`, `s ∈ [0, c]`.
    Gamma2(OmegaParams),
    /// `T ↦ Φ_α(c + iT)`, `T ≥ c/η`.
    Gamma3(OmegaParams),
}

impl CurveKind {
    pub fn eval(&self, s: f64) -> Complex {
        match self {
            CurveKind::PowerWall { alpha, m } => Complex::new(s, m * s.powf(*alpha)),
            CurveKind::Gamma2(p) => gamma2(p, s),
            CurveKind::Gamma3(p) => gamma3(p, s),
        }
    }

    /// Whether `|eval(s)|` is non-decreasing, enabling modulus brackets.
    fn modulus_monotone(&self) -> bool {
        !matches!(self, CurveKind::Gamma2(_))
    }

    /// Parameter bracket `[lo, hi]` outside which `|eval(s)|` leaves `[r_lo, r_hi]`.
    fn modulus_bracket(&self, s0: f64, s1: f64, r_lo: f64, r_hi: f64) -> (f64, f64) {
        match self {
            CurveKind::PowerWall { alpha, m } => {
                // max(s, m s^α) ≤ |ζ| ≤ √2 max(s, m s^α).
                let inv = |r: f64| r.min((r / m).powf(1.0 / alpha));
                let hi = inv(r_hi).min(s1);
                let lo = inv((r_lo / std::f64::consts::SQRT_2).max(0.0)).max(s0);
                (lo, hi)
            }
            _ => {
                let modulus = |s: f64| self.eval(s).norm();
                let hi = if s1.is_finite() && modulus(s1) <= r_hi {
                    s1
                } else {
                    let mut top = (s0.abs() + 1.0) * 2.0;
                    while modulus(top) < r_hi && top < s1 {
                        top *= 2.0;
                    }
                    bisect_threshold(|s| modulus(s) >= r_hi, s0, top.min(s1), 200)
                };
                let lo = if modulus(s0) >= r_lo {
                    s0
                } else {
                    bisect_threshold(|s| modulus(s) >= r_lo, s0, hi, 200)
                };
                (lo, hi.max(lo))
            }
        }
    }

    /// Parameter where the real part reaches `x`, clamped to `[s0, s1]`.
    fn param_for_re(&self, x: f64, s0: f64, s1: f64) -> f64 {
        match self {
            CurveKind::PowerWall { .. } => x.clamp(s0, s1),
            _ => {
                let re = |s: f64| self.eval(s).re;
                if re(s0) >= x {
                    return s0;
                }
                let mut top = if s1.is_finite() { s1 } else { (s0.abs() + 1.0) * 2.0 };
                while !s1.is_finite() && re(top) < x {
                    top *= 2.0;
                }
                bisect_threshold(|s| re(s) >= x, s0, top, 200)
            }
        }
    }
}

/// One piece of a domain boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Piece {
    /// `origin + s·dir` for `s ∈ [s0, s1]`; `dir` has unit length.
    Linear { origin: Complex, dir: Complex, s0: f64, s1: f64 },
    /// A curve expressed in its own frame.
    Curve { kind: CurveKind, frame: Frame, s0: f64, s1: f64 },
}

/// Nearest boundary point found by a query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Nearest {
    pub dist: f64,
    pub point: Complex,
}

impl Piece {
    pub fn segment(a: Complex, b: Complex) -> Piece {
        let len = (b - a).norm();
        Piece::Linear { origin: a, dir: (b - a) / len, s0: 0.0, s1: len }
    }

    pub fn ray(origin: Complex, dir: Complex) -> Piece {
        Piece::Linear { origin, dir: dir / dir.norm(), s0: 0.0, s1: f64::INFINITY }
    }

    pub fn vertical_line(x: f64) -> Piece {
        Piece::Linear {
            origin: Complex::new(x, 0.0),
            dir: Complex::new(0.0, 1.0),
            s0: f64::NEG_INFINITY,
            s1: f64::INFINITY,
        }
    }

    pub fn curve(kind: CurveKind, s0: f64, s1: f64) -> Piece {
        Piece::Curve { kind, frame: Frame::IDENTITY, s0, s1 }
    }

    /// The piece moved by `frame`.
    pub fn transformed(&self, frame: &Frame) -> Piece {
        match *self {
            Piece::Linear { origin, dir, s0, s1 } => Piece::Linear {
                origin: frame.apply(origin),
                dir: reflect(dir, frame.mirror),
                s0,
                s1,
            },
            Piece::Curve { kind, frame: f, s0, s1 } => {
                Piece::Curve { kind, frame: frame.compose(&f), s0, s1 }
            }
        }
    }

    /// Nearest point of the piece to `q` among points with real part in `band`,
    /// searching only within distance `upper` where that speeds things up.
    pub fn nearest(&self, q: Complex, band: Band, upper: f64, tol: f64) -> Option<Nearest> {
        if band.is_empty() {
            return None;
        }
        match *self {
            Piece::Linear { origin, dir, s0, s1 } => {
                let (lo, hi) = clip_linear(origin, dir, s0, s1, band)?;
                let s = (q - origin).re * dir.re + (q - origin).im * dir.im;
                let s = s.clamp(lo, hi);
                let point = origin + dir * s;
                // Keep vertical pieces exactly on their line.
                let point = if dir.re == 0.0 { Complex::new(origin.re, point.im) } else { point };
                Some(Nearest { dist: (point - q).norm(), point })
            }
            Piece::Curve { kind, frame, s0, s1 } => {
                let ql = frame.invert(q);
                let local = frame.pull_band(band);
                let (mut lo, mut hi) = (s0, s1);
                if local.lo > f64::NEG_INFINITY {
                    lo = kind.param_for_re(local.lo, s0, s1);
                    if kind.eval(lo).re < local.lo - 1e-12 * (1.0 + local.lo.abs()) {
                        return None;
                    }
                }
                if local.hi < f64::INFINITY {
                    if kind.eval(lo).re > local.hi {
                        return None;
                    }
                    hi = kind.param_for_re(local.hi, lo, s1);
                }
                let start = kind.eval(lo);
                let bound = upper.min((start - ql).norm());
                if kind.modulus_monotone() {
                    let r = ql.norm();
                    let (blo, bhi) = kind.modulus_bracket(lo, hi, r - bound, r + bound);
                    if blo > lo && blo <= hi {
                        lo = blo;
                    }
                    if bhi < hi && bhi >= lo {
                        hi = bhi;
                    }
                }
                if !hi.is_finite() {
                    return None;
                }
                let f = |s: f64| (kind.eval(s) - ql).norm();
                let (mut s_best, mut d_best) = grid_then_golden(f, lo, hi, CURVE_SEEDS, CURVE_REFINE, tol);
                for s in [lo, hi] {
                    let d = f(s);
                    if d < d_best {
                        s_best = s;
                        d_best = d;
                    }
                }
                // Polish once more in case the best seed sat next to an endpoint.
                let width = (hi - lo) / (CURVE_SEEDS - 1) as f64;
                let (s2, d2) = golden_section(f, (s_best - width).max(lo), (s_best + width).min(hi), tol);
                if d2 < d_best {
                    s_best = s2;
                    d_best = d2;
                }
                Some(Nearest { dist: d_best, point: frame.apply(kind.eval(s_best)) })
            }
        }
    }
}

fn clip_linear(origin: Complex, dir: Complex, s0: f64, s1: f64, band: Band) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (s0, s1);
    if dir.re == 0.0 {
        if origin.re < band.lo || origin.re > band.hi {
            return None;
        }
    } else {
        let a = (band.lo - origin.re) / dir.re;
        let b = (band.hi - origin.re) / dir.re;
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        lo = lo.max(a);
        hi = hi.min(b);
    }
    if lo > hi {
        None
    } else {
        Some((lo, hi))
    }
}

/// Nearest point on a collection of pieces, each restricted to its own band.
pub(crate) fn nearest_on(pieces: &[(Piece, Band)], q: Complex, band: Band, upper: f64, tol: f64) -> Option<Nearest> {
    let mut best: Option<Nearest> = None;
    let mut bound = upper;
    // Linear pieces first: they are exact and cheap, and tighten the curve search.
    let order = pieces
        .iter()
        .filter(|(p, _)| matches!(p, Piece::Linear { .. }))
        .chain(pieces.iter().filter(|(p, _)| matches!(p, Piece::Curve { .. })));
    for (piece, own) in order {
        if let Some(n) = piece.nearest(q, band.intersect(own), bound, tol) {
            if best.map_or(true, |b| n.dist < b.dist) {
                bound = bound.min(n.dist);
                best = Some(n);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn linear_clipping() {
        let seg = Piece::segment(c(0.0, 0.0), c(2.0, 0.0));
        let n = seg.nearest(c(-1.0, 1.0), Band::at_least(1.0), f64::INFINITY, 1e-12).unwrap();
        assert_abs_diff_eq!((n.point - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        assert!(seg.nearest(c(0.0, 1.0), Band::at_least(3.0), f64::INFINITY, 1e-12).is_none());
        let line = Piece::vertical_line(0.0);
        assert!(line.nearest(c(1.0, 3.0), Band::at_least(1.0), f64::INFINITY, 1e-12).is_none());
        let n = line.nearest(c(1.0, 3.0), Band::at_most(1.0), f64::INFINITY, 1e-12).unwrap();
        assert_eq!(n.point, c(0.0, 3.0));
    }

    #[test]
    fn parabola_nearest_matches_brute_force() {
        let wall = Piece::curve(CurveKind::PowerWall { alpha: 2.0, m: 1.0 }, 0.0, f64::INFINITY);
        for &q in &[c(1.0, 2.0), c(0.1, 5.0), c(3.0, 30.0), c(1.0, 1e4)] {
            let n = wall.nearest(q, Band::ALL, f64::INFINITY, 1e-12).unwrap();
            let mut brute = f64::INFINITY;
            let top = q.norm() + 1.0;
            let steps = 2_000_000;
            for i in 0..=steps {
                let s = top.sqrt() * 1.5 * i as f64 / steps as f64;
                brute = brute.min((c(s, s * s) - q).norm());
            }
            assert!(n.dist <= brute + 1e-9, "q={q} {} vs {}", n.dist, brute);
            assert!(n.dist >= brute - 1e-4, "q={q} {} vs {}", n.dist, brute);
        }
    }

    #[test]
    fn mirrored_curve_respects_side() {
        let frame = Frame { mirror: true, offset: c(0.0, 0.0) };
        let wall = Piece::curve(CurveKind::PowerWall { alpha: 2.0, m: 1.0 }, 0.0, f64::INFINITY).transformed(&frame);
        let q = c(-1.0, 3.0);
        assert!(wall.nearest(q, Band::at_least(0.5), f64::INFINITY, 1e-12).is_none());
        let n = wall.nearest(q, Band::at_most(-1.0), f64::INFINITY, 1e-12).unwrap();
        assert!(n.point.re <= -1.0 + 1e-12);
    }
}
