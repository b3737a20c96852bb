//! Arithmetic substrate: exact rationals, univariate polynomials, rational
//! functions, a high-precision complex backend and dense linear algebra.

mod bigfloat;
mod linalg;
mod numeric;
mod poly;
mod rat;
mod ratfunc;
mod wfrac;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use bigfloat::{
    constant_precision, set_constant_precision, BigComplex, BigFloat, DEFAULT_PRECISION_BITS,
};
pub use linalg::{determinant, nullspace_exact, rank_exact, rref, Matrix};
pub use numeric::{
    echelon_rows_numeric, eig_numeric, nullspace_numeric, poly_roots, singular_values, EigenPair, NumericError,
};
pub use poly::Poly;
pub use rat::Rat;
pub use ratfunc::RatFunc;
pub use wfrac::WFrac;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("not a rational number: {0:?}")]
    Rational(String),
    #[error("not a decimal number: {0:?}")]
    Decimal(String),
}

/// Ring operations shared by every coefficient domain that can sit under a
/// differential operator. Group algebra elements are rings but not
/// commutative; nothing here assumes commutativity.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scale_int(&self, k: i64) -> Self;
}

/// Scalar fields: [`Rat`], [`BigComplex`] and the exact rational functions.
///
/// Constants enter generic code only through `from_i64` (exactly representable)
/// and `mul_rat`, so numeric values never pick up precision from a constant.
pub trait Field:
    Ring
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn mul_rat(&self, r: &Rat) -> Self;
    fn inv(&self) -> Self;
    /// Rough size used for pivot selection only.
    fn magnitude(&self) -> f64;
}

/// A ring with a derivation `d/du`.
pub trait DiffRing: Ring {
    fn derivative(&self) -> Self;
}

/// Implements [`Ring`] for a type that already has owned arithmetic operators
/// and a [`Field`] impl providing `from_i64`.
macro_rules! ring_via_ops {
    ($t:ty, $zero:expr, $is_zero:expr) => {
        impl $crate::exactalg::Ring for $t {
            fn zero() -> Self {
                $zero
            }
            fn is_zero(&self) -> bool {
                $is_zero(self)
            }
            fn plus(&self, o: &Self) -> Self {
                self.clone() + o.clone()
            }
            fn minus(&self, o: &Self) -> Self {
                self.clone() - o.clone()
            }
            fn times(&self, o: &Self) -> Self {
                self.clone() * o.clone()
            }
            fn negated(&self) -> Self {
                -self.clone()
            }
            fn scale_int(&self, k: i64) -> Self {
                self.clone() * <$t as $crate::exactalg::Field>::from_i64(k)
            }
        }
    };
}
pub(crate) use ring_via_ops;
