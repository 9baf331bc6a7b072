//! Polygonal starlike domains: the region above a chain of vertices whose real
//! parts never decrease, closed off at both ends by rays that continue the first
//! and last segments.

use num_complex::Complex64 as Complex;

use super::boundary::{Band, Piece};
use crate::error::{Error, Result};

/// Relative tolerance under which a non-vertical terminal ray counts as
/// ambiguous for classification.
const NEAR_VERTICAL: f64 = 1e-9;

/// Validated view of a polyline vertex list.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Chain<'a> {
    pub vertices: &'a [Complex],
}

impl<'a> Chain<'a> {
    pub fn new(vertices: &'a [Complex]) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Descriptor("a polyline needs at least two vertices".into()));
        }
        if vertices.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Descriptor("polyline vertices must be finite".into()));
        }
        for w in vertices.windows(2) {
            if w[1].re < w[0].re {
                return Err(Error::Descriptor("polyline real parts must be non-decreasing".into()));
            }
            if w[1] == w[0] {
                return Err(Error::Descriptor("polyline has repeated consecutive vertices".into()));
            }
        }
        let chain = Self { vertices };
        for d in [chain.left_dir(), chain.right_dir()] {
            if d.re == 0.0 && d.im < 0.0 {
                return Err(Error::Descriptor("vertical terminal rays must point upward".into()));
            }
        }
        Ok(chain)
    }

    fn first(&self) -> Complex {
        self.vertices[0]
    }

    fn last(&self) -> Complex {
        self.vertices[self.vertices.len() - 1]
    }

    /// Direction of the left terminal ray, continuing the first segment outward.
    pub fn left_dir(&self) -> Complex {
        let d = self.vertices[0] - self.vertices[1];
        d / d.norm()
    }

    /// Direction of the right terminal ray, continuing the last segment outward.
    pub fn right_dir(&self) -> Complex {
        let n = self.vertices.len();
        let d = self.vertices[n - 1] - self.vertices[n - 2];
        d / d.norm()
    }

    /// Projection of the domain onto the real axis.
    pub fn x_range(&self) -> (f64, f64) {
        let lo = if self.left_dir().re == 0.0 { self.first().re } else { f64::NEG_INFINITY };
        let hi = if self.right_dir().re == 0.0 { self.last().re } else { f64::INFINITY };
        (lo, hi)
    }

    /// Reject terminal rays that are vertical only up to rounding.
    pub fn check_decidable(&self) -> Result<()> {
        for d in [self.left_dir(), self.right_dir()] {
            if d.re != 0.0 && d.re.abs() <= NEAR_VERTICAL {
                return Err(Error::Inconclusive(format!(
                    "terminal ray direction {d} is vertical only up to {NEAR_VERTICAL:e}"
                )));
            }
        }
        Ok(())
    }

    /// Membership by counting crossings of the downward vertical ray from `z`.
    pub fn contains(&self, z: Complex) -> bool {
        let mut crossings = 0usize;
        let mut edge = |a: Complex, b: Complex| {
            if a.re == b.re {
                return;
            }
            let (l, r) = if a.re < b.re { (a, b) } else { (b, a) };
            if z.re >= l.re && z.re < r.re {
                let y = l.im + (r.im - l.im) * (z.re - l.re) / (r.re - l.re);
                if y < z.im {
                    crossings += 1;
                }
            }
        };
        for w in self.vertices.windows(2) {
            edge(w[0], w[1]);
        }
        let (dl, dr) = (self.left_dir(), self.right_dir());
        if dl.re < 0.0 && z.re < self.first().re {
            let y = self.first().im + dl.im * (z.re - self.first().re) / dl.re;
            if y < z.im {
                crossings += 1;
            }
        }
        if dr.re > 0.0 && z.re >= self.last().re {
            let y = self.last().im + dr.im * (z.re - self.last().re) / dr.re;
            if y < z.im {
                crossings += 1;
            }
        }
        if crossings % 2 == 0 {
            return false;
        }
        // Points on vertical edges or vertical terminal rays are boundary points.
        let on_vertical = |a: Complex, b: Complex| {
            a.re == b.re && z.re == a.re && z.im >= a.im.min(b.im) && z.im <= a.im.max(b.im)
        };
        let on_edge = self.vertices.windows(2).any(|w| on_vertical(w[0], w[1]));
        let on_ray = (dl.re == 0.0 && z.re == self.first().re && z.im >= self.first().im)
            || (dr.re == 0.0 && z.re == self.last().re && z.im >= self.last().im);
        !(on_edge || on_ray)
    }

    pub fn pieces(&self) -> Vec<(Piece, Band)> {
        let mut out = Vec::with_capacity(self.vertices.len() + 1);
        out.push((Piece::ray(self.first(), self.left_dir()), Band::ALL));
        for w in self.vertices.windows(2) {
            out.push((Piece::segment(w[0], w[1]), Band::ALL));
        }
        out.push((Piece::ray(self.last(), self.right_dir()), Band::ALL));
        out
    }

    /// Vertices of the domain intersected with `{Re z > a}`.
    pub fn keep_right_of(&self, a: f64) -> Result<Vec<Complex>> {
        let v = self.vertices;
        let up = Complex::new(0.0, 1.0);
        let (dl, dr) = (self.left_dir(), self.right_dir());
        match v.iter().position(|z| z.re > a) {
            None => {
                if dr.re == 0.0 {
                    return Err(Error::Precondition(format!("the polyline has no points with Re > {a}")));
                }
                let last = self.last();
                let p = last + dr * ((a - last.re) / dr.re);
                Ok(vec![p + up, p, p + dr])
            }
            Some(0) => {
                if dl.re == 0.0 {
                    return Ok(v.to_vec());
                }
                let first = self.first();
                let p = first + dl * ((a - first.re) / dl.re);
                let mut out = vec![p + up, p];
                out.extend_from_slice(v);
                Ok(out)
            }
            Some(k) => {
                let (l, r) = (v[k - 1], v[k]);
                let p = if l.re == a { l } else { l + (r - l) * ((a - l.re) / (r.re - l.re)) };
                let mut out = vec![p + up, p];
                out.extend_from_slice(&v[k..]);
                Ok(out)
            }
        }
    }

    /// Vertices of the domain intersected with `{Re z < b}`.
    pub fn keep_left_of(&self, b: f64) -> Result<Vec<Complex>> {
        let v = self.vertices;
        let n = v.len();
        let up = Complex::new(0.0, 1.0);
        let (dl, dr) = (self.left_dir(), self.right_dir());
        match v.iter().rposition(|z| z.re < b) {
            None => {
                if dl.re == 0.0 {
                    return Err(Error::Precondition(format!("the polyline has no points with Re < {b}")));
                }
                let first = self.first();
                let p = first + dl * ((b - first.re) / dl.re);
                Ok(vec![p + dl, p, p + up])
            }
            Some(j) if j == n - 1 => {
                if dr.re == 0.0 {
                    return Ok(v.to_vec());
                }
                let last = self.last();
                let p = last + dr * ((b - last.re) / dr.re);
                let mut out = v.to_vec();
                out.extend_from_slice(&[p, p + up]);
                Ok(out)
            }
            Some(j) => {
                let (l, r) = (v[j], v[j + 1]);
                let p = if r.re == b { r } else { l + (r - l) * ((b - l.re) / (r.re - l.re)) };
                let mut out = v[..=j].to_vec();
                out.extend_from_slice(&[p, p + up]);
                Ok(out)
            }
        }
    }
}
