//! Exact scale values `c * sqrt(s)` with `c, s` in a number field.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{FieldElem, Int, NumberField, Poly, Rat};

/// The real number `c * sqrt(s)`, with `s >= 0` under the embedding.
///
/// After normalization `s` is not a square in the field (or `s = 1`); over the
/// rationals `s` is additionally a squarefree integer when it is small enough
/// to factor by trial division.
#[derive(Clone)]
pub struct ScaleValue {
    c: FieldElem,
    s: FieldElem,
}

impl ScaleValue {
    pub fn new(c: FieldElem, s: FieldElem) -> Result<ScaleValue> {
        if c.field() != s.field() {
            return Err(Error::FieldMismatch);
        }
        if s.sign() == Ordering::Less {
            return Err(Error::Domain("negative radicand".into()));
        }
        Ok(ScaleValue { c, s }.normalized())
    }

    pub fn from_elem(c: FieldElem) -> ScaleValue {
        let s = FieldElem::one(c.field());
        ScaleValue { c, s }
    }

    /// `sqrt(s)`.
    pub fn sqrt_of(s: &FieldElem) -> Result<ScaleValue> {
        ScaleValue::new(FieldElem::one(s.field()), s.clone())
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> ScaleValue {
        ScaleValue::from_elem(FieldElem::from_int(field, n))
    }

    fn normalized(self) -> ScaleValue {
        let field = self.c.field().clone();
        if self.c.is_zero() || self.s.is_zero() {
            return ScaleValue::from_elem(FieldElem::zero(&field));
        }
        if let Ok(Some(r)) = self.s.sqrt() {
            return ScaleValue::from_elem(&self.c * &r);
        }
        if let Some(q) = self.s.as_rational() {
            // s = p/q = p q / q^2, then pull square factors out of p q
            let den = q.denom().clone();
            let mut radicand = q.numer() * &den;
            let mut outside = Rat::new(Int::one(), den);
            let (sq, rest) = split_square(&radicand);
            outside *= Rat::from_integer(sq);
            radicand = rest;
            return ScaleValue {
                c: self.c.scale(&outside),
                s: FieldElem::from_rat(&field, Rat::from_integer(radicand)),
            };
        }
        self
    }

    pub fn coefficient(&self) -> &FieldElem {
        &self.c
    }

    pub fn radicand(&self) -> &FieldElem {
        &self.s
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.c.field()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    /// The value as a field element, if it lies in the field.
    pub fn as_field_elem(&self) -> Option<FieldElem> {
        self.s.is_one().then(|| self.c.clone())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        self.as_field_elem().and_then(|c| c.as_rational())
    }

    pub fn as_integer(&self) -> Option<Int> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// `c^2 s`.
    pub fn square(&self) -> FieldElem {
        &(&self.c * &self.c) * &self.s
    }

    pub fn sign(&self) -> Ordering {
        self.c.sign()
    }

    pub fn mul(&self, o: &ScaleValue) -> Result<ScaleValue> {
        ScaleValue::new(self.c.try_mul(&o.c)?, self.s.try_mul(&o.s)?)
    }

    /// Quotient; fails only on division by zero.
    pub fn div(&self, o: &ScaleValue) -> Result<ScaleValue> {
        if o.is_zero() {
            return Err(Error::NotRepresentable("division by zero scale".into()));
        }
        // c1 sqrt(s1) / (c2 sqrt(s2)) = (c1 / (c2 s2)) sqrt(s1 s2)
        let c = self.c.try_div(&o.c.try_mul(&o.s)?)?;
        ScaleValue::new(c, self.s.try_mul(&o.s)?)
    }

    pub fn inv(&self) -> Result<ScaleValue> {
        ScaleValue::from_int(self.field(), 1).div(self)
    }

    pub fn pow(&self, e: u32) -> ScaleValue {
        let c = self.c.pow(e);
        let s = self.s.pow(e);
        ScaleValue { c, s }.normalized()
    }

    /// Monic minimal polynomial over the rationals.
    pub fn minimal_polynomial(&self) -> Poly {
        if self.s.is_one() {
            return self.c.minimal_polynomial();
        }
        // sqrt(s) is not in K, so neither is the value, while its square is:
        // the degree doubles and the minimal polynomial is m(x^2).
        self.square().minimal_polynomial().substitute_square()
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.minimal_polynomial().has_integer_coeffs()
    }

    /// `self / other` is a positive rational integer.
    pub fn divides_into(&self, other: &ScaleValue) -> bool {
        match other.div(self) {
            Ok(q) => q.as_integer().is_some_and(|n| n.is_positive()),
            Err(_) => false,
        }
    }
}

/// `n = a^2 b` with `b` squarefree (up to a trial-division limit).
fn split_square(n: &Int) -> (Int, Int) {
    let Some(mut m) = n.abs().to_u64() else {
        return (Int::one(), n.clone());
    };
    let sign = if n.is_negative() { -1i64 } else { 1 };
    let mut out: u64 = 1;
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= m && p < 1_000_000 {
        while m % (p * p) == 0 {
            m /= p * p;
            out *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (Int::from(out), Int::from(m) * sign)
}

impl PartialEq for ScaleValue {
    fn eq(&self, o: &Self) -> bool {
        self.field() == o.field() && self.square() == o.square() && self.sign() == o.sign()
    }
}

impl fmt::Debug for ScaleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ScaleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_one() {
            return write!(f, "{}", self.c);
        }
        let paren = |e: &FieldElem| {
            let txt = e.to_string();
            if e.as_rational().is_some() {
                txt
            } else {
                format!("({})", txt)
            }
        };
        if self.c.is_one() {
            write!(f, "sqrt({})", self.s)
        } else if (-&self.c).is_one() {
            write!(f, "-sqrt({})", self.s)
        } else {
            write!(f, "{}*sqrt({})", paren(&self.c), self.s)
        }
    }
}
