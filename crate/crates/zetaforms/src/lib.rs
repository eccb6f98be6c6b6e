//! Construction, exact decomposition, arithmetic certification, and
//! high-precision cross-verification of a family of hypergeometric linear
//! forms in Hurwitz zeta values.
//!
//! The pipeline, in order:
//!
//! - [`rational_function`]: the rational function R_n(t) in factored form,
//!   gated by the parameter triple (D, s, n);
//! - [`partial_fractions`]: its exact decomposition into coefficients `A[l][i]`
//!   of (t+l)^{-i};
//! - [`linear_forms`]: the rationals a_{0,j} and a_i with
//!   r_{n,j} = a_{0,j} + sum_i a_i zeta(i, j/D), integrality certificates
//!   against powers of lcm(1..n), and divisor-pattern reductions to linear
//!   forms in zeta(i);
//! - [`numerics`]: arbitrary-precision evaluation of both routes to every
//!   identity - direct series, Hurwitz zeta values, the Beta-factor series
//!   behind the integral representation, the roots-of-unity filter, and the
//!   hypergeometric middle form;
//! - [`suite`]: the pinned verification grid with fixed tolerances.
//!
//! Everything exact is `num-bigint`/`num-rational`; everything numerical is
//! fixed-point with tracked absolute error bounds ([`value`]).

pub mod arith;
pub mod error;
pub mod linear_forms;
pub mod numerics;
pub mod partial_fractions;
pub mod rational_function;
pub mod suite;
pub mod value;

pub use arith::{ExactInt, ExactRational, LcmValue};
pub use error::{Error, Result};
pub use linear_forms::{HurwitzLinearForm, IntegralityCertificate, ZetaLinearForm};
pub use numerics::{GrowthRow, ResidualCheck, RootOfUnity, StarIntegralValue};
pub use partial_fractions::PartialFractionTable;
pub use rational_function::{Params, RationalFunctionRep};
pub use value::{ComplexValue, PrecisionValue};
