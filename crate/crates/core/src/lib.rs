//! Multiaffine complex polynomials and Lee-Yang polynomials.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`] holds the dense multiaffine representation together with the
//!   dagger involution, the coefficient-wise convolution and the self-dual
//!   lift `Ψ_Φ = z_{n+1} Φ† + Φ`.
//! * [`asano`] implements Asano contraction and rebuilds the convolution
//!   from successive contractions.
//! * [`trig`], [`torus`] and [`stability`] form the certification engine:
//!   real trigonometric polynomials on a torus, a branch-and-bound positivity
//!   prover, and a Schur-Cohn recursion over variables that decides whether a
//!   polynomial vanishes on the closed unit polydisk.
//! * [`radius`] turns the engine into certified brackets for the inner radius
//!   and provides a brute-force zero oracle.
//! * [`leeyang`] contains membership tests, the decomposition `Ψ = c Ψ_Φ`,
//!   the model families, temperature sweeps and the pair-interaction
//!   classifier.
//! * [`spins`] covers polynomials of higher degree in each variable, their
//!   block-symmetric multiaffine lift, and the univariate circle-root tools.
//!
//! All numerical code is generic over the real scalar type `T`
//! (`f32` or `f64`); the aliases below fix `f64`, which is what the CLI uses.

pub mod asano;
pub mod error;
pub mod io;
pub mod leeyang;
pub mod poly;
pub mod radius;
pub mod roots;
pub mod scalar;
pub mod spins;
pub mod stability;
pub mod torus;
pub mod trig;

pub use error::{LyError, Result};
pub use num_complex::Complex;
pub use scalar::Scalar;

/// Double precision complex number.
pub type C64 = Complex<f64>;

pub type Poly = poly::MultiAffinePoly<f64>;
pub type Poly32 = poly::MultiAffinePoly<f32>;
pub type Block = spins::BlockPoly<f64>;
pub type Univariate = spins::UnivariatePoly<f64>;
pub type Model = leeyang::TemperatureModel<f64>;
pub type Cert = radius::Certificate<f64>;
pub type Bounds = radius::RadiusBounds<f64>;
