//! Speeds of convergence of non-elliptic semigroups in the unit disc.
//!
//! The crate evaluates orbits of concrete semigroup families through their
//! Koenigs maps, measures total, orthogonal and tangential speeds in the
//! Poincaré metric, and provides the geometric and Monte-Carlo machinery used
//! to check the asymptotic behaviour of those speeds.

pub mod conformal;
pub mod domains;
pub mod error;
pub mod harmonic;
pub mod hyperbolic;
pub mod numerics;
pub mod semigroups;
pub mod speeds;

pub use num_complex::Complex64 as Complex;

pub use harmonic::HmEstimate;
pub use domains::{BasePoint, ModelType, Slope, SlopeVerdict, StarlikeDomain};
pub use error::{Error, Result};

pub use hyperbolic::{BoundaryPoint, DiscPoint, HalfPlanePoint, Horocycle, PolarPoint, StolzRegion};
pub use semigroups::{Family, ModelDescriptor, OrbitPoint, SemigroupModel};
pub use speeds::{AsymptoticFit, SpeedSample};


