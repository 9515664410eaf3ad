//! Numerical Fourier analysis on compact homogeneous spaces.
//!
//! The crate models four spaces (the circle, the 2-torus, the 2-sphere and
//! the rotation group SO(3)), exposes forward/inverse Fourier transforms
//! against quadrature grids, a catalogue of norms on functions and on their
//! coefficient fields (Lebesgue, Sobolev, Besov, Triebel-Lizorkin, Wiener
//! and Beurling families), and an experiment layer that measures classical
//! inequalities (Nikolskii, embeddings, interpolation) on band-limited
//! fields at desk scale.
//!
//! Everything is generic over the floating scalar through [`scalar::Real`];
//! `f64` is the working precision and the one the aliases at the crate root
//! fix. All operations are pure and deterministic: given the same inputs
//! (including RNG seeds), outputs are bitwise reproducible.

pub mod dual;
pub mod error;
pub mod field;
pub mod kernel;
pub mod lab;
pub mod linalg;
pub mod norm;
pub mod scalar;
pub mod space;
pub mod transform;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` working-precision aliases for the main types.
pub mod f64_types {
    pub type CMatrix = crate::linalg::CMatrix<f64>;
    pub type CoefficientField = crate::field::CoefficientField<f64>;
    pub type GridFunction = crate::field::GridFunction<f64>;
    pub type QuadratureGrid = crate::space::quadrature::QuadratureGrid<f64>;
    pub type RepClass = crate::space::RepClass<f64>;
}
