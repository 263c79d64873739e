//! Exact and high-precision arithmetic shared by the LG and CY computations:
//! rationals, big complex scalars with Gamma/zeta constants, nilpotent algebra in
//! the hyperplane class, Laurent polynomials in `z`, and truncated series.

pub mod bigcomplex;
pub mod linalg;
pub mod nilpotent;
pub mod rational;
pub mod scalar;
pub mod series;

pub use bigcomplex::BigComplex;
pub use nilpotent::{exp_nilpotent, gamma_nilpotent, NilpotentPoly};
pub use rational::{bernoulli_poly, rat, rising_factorial};
pub use rug::{Integer, Rational};
pub use scalar::Scalar;
pub use series::{series_divide, series_reversion, Coefficient, MultiSeries, StateVector, TSeries, ZLaurent};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("precision mismatch: {0} vs {1} digits")]
    PrecisionMismatch(u32, u32),
    #[error("precision must be at least 30 digits, got {0}")]
    PrecisionTooLow(u32),
    #[error("Gamma has a pole at {0}")]
    Pole(String),
    #[error("Gamma of a nilpotent argument needs a real constant term")]
    ComplexShift,
    #[error("constant term is not invertible")]
    NonUnit,
    #[error("series is not invertible under composition")]
    NotInvertible,
    #[error("nilpotency orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("monomial quadratic in the linear variables ({0}, {1})")]
    Quadratic(String, String),
    #[error("exponential of a non-nilpotent element is not exact")]
    NonNilpotentExp,
    #[error("matrix is singular at working precision")]
    Singular,
}
