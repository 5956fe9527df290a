//! Symbolic-numeric operational calculus.
//!
//! Elements of the convolution quotient field are handled through several
//! closed, exactly representable classes:
//!
//! * [`RatFun`]: rational functions of the differential operator `s`,
//! * [`ExpPoly`]: exponential polynomials, the time-domain face of proper rational functions,
//! * [`DelayElement`]: finite sums `Σ h^λ R(s)` built from the translation operator `h`,
//! * [`SeriesL`] / [`SeriesH`]: truncated power series in `l = 1/s` and in `h`.
//!
//! The [`numeric`] module is an independent sampled-function oracle used to check
//! every exact identity against direct quadrature.

pub mod delay;
pub mod error;
pub mod exppoly;
pub mod numeric;
pub mod poly;
pub mod series;
pub mod solver;

pub use delay::{h_pow, jump_extract, jump_realize, DelayElement, JumpSeries, PiecewiseEP};
pub use error::{Error, Result};
pub use exppoly::{ep_convolve, realize, unrealize, ExpPoly};
pub use poly::partial::{
    partial_fractions, partial_fractions_with_poles, PartialFractions, PfTerm,
};
pub use poly::ratfun::{RatFun, Subst};
pub use poly::roots::{poly_roots, root_clusters};
pub use poly::{Cplx, Poly};
pub use series::{bessel_coeffs, Series, SeriesH, SeriesL};
pub use solver::{solve_delay_geom, solve_lode, DelayProblem, OdeProblem};
