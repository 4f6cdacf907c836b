//! Exact scalars and dense linear algebra over them.

mod matrix;
mod numfield;
mod rational;

pub use matrix::{solve_linear, ExactMatrix, LinearSolution};
pub use numfield::{nf_mul, NumberField, NumberFieldElement};
pub use rational::Rational;

use std::fmt;

/// An exact field element usable as a q-series coefficient or matrix entry.
///
/// `Field` identifies the ambient field; it is `()` for the rationals and the
/// shared defining polynomial for number-field residues.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Field: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn field(&self) -> Self::Field;
    fn zero(field: &Self::Field) -> Self;
    fn one(field: &Self::Field) -> Self;
    fn from_rational(field: &Self::Field, r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse, `None` for zero or a zero divisor.
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.field())
    }
}
