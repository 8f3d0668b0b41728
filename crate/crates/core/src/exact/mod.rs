//! Exact arithmetic: rationals, polynomials, number fields, matrices and
//! integer normal forms.

pub mod field;
pub mod linalg;
pub mod matrix;
pub mod normal_form;
pub mod poly;
pub(crate) mod roots;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Int = BigInt;
pub type Rat = BigRational;

pub use field::{FieldElem, FieldMatrix, NumberField};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use poly::Poly;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// `n / d` in lowest terms; panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
