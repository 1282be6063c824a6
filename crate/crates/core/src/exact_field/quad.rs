use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{FieldError, Rational};

/// Element `a + b·√m` of ℚ(√m), with `m > 0` a rational radicand.
///
/// The representation is never collapsed: when `m` is a rational square the
/// element keeps its `(a, b, m)` form. Structural equality compares the three
/// components; [`QuadExt::is_zero`] tests the real value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    m: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, m: Rational) -> Result<Self, FieldError> {
        if m.signum() <= 0 {
            return Err(FieldError::NonPositiveRadicand(m));
        }
        Ok(QuadExt { a, b, m })
    }

    /// The embedded rational `a + 0·√m`.
    pub fn rational(a: Rational, m: &Rational) -> Result<Self, FieldError> {
        Self::new(a, Rational::zero(), m.clone())
    }

    /// `b·√m`.
    pub fn radical(b: Rational, m: &Rational) -> Result<Self, FieldError> {
        Self::new(Rational::zero(), b, m.clone())
    }

    pub fn zero(m: &Rational) -> Result<Self, FieldError> {
        Self::rational(Rational::zero(), m)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    fn same_field(&self, other: &QuadExt) -> Result<(), FieldError> {
        if self.m != other.m {
            return Err(FieldError::IncompatibleFields {
                left: self.m.clone(),
                right: other.m.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &QuadExt) -> Result<QuadExt, FieldError> {
        self.same_field(other)?;
        Ok(QuadExt { a: &self.a + &other.a, b: &self.b + &other.b, m: self.m.clone() })
    }

    pub fn sub(&self, other: &QuadExt) -> Result<QuadExt, FieldError> {
        self.same_field(other)?;
        Ok(QuadExt { a: &self.a - &other.a, b: &self.b - &other.b, m: self.m.clone() })
    }

    /// `(a+b√m)(c+d√m) = (ac+bdm) + (ad+bc)√m`.
    pub fn mul(&self, other: &QuadExt) -> Result<QuadExt, FieldError> {
        self.same_field(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * &self.m;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadExt { a, b, m: self.m.clone() })
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, m: self.m.clone() }
    }

    pub fn scale(&self, s: &Rational) -> QuadExt {
        QuadExt { a: &self.a * s, b: &self.b * s, m: self.m.clone() }
    }

    pub fn conjugate(&self) -> QuadExt {
        QuadExt { a: self.a.clone(), b: -&self.b, m: self.m.clone() }
    }

    /// Field norm `a² − b²m`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * &self.m
    }

    /// The value as a rational when `m` is a rational square, otherwise `None`.
    pub fn collapse(&self) -> Option<Rational> {
        let s = self.m.sqrt_exact()?;
        Some(&self.a + &self.b * &s)
    }

    /// True when the real number `a + b√m` is zero.
    pub fn is_zero(&self) -> bool {
        match self.collapse() {
            Some(v) => v.is_zero(),
            None => self.a.is_zero() && self.b.is_zero(),
        }
    }

    pub fn inv(&self) -> Result<QuadExt, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        if n.is_zero() {
            // m is a square and the value is nonzero: invert the collapsed rational.
            let v = self.collapse().ok_or(FieldError::DivisionByZero)?;
            return QuadExt::rational(v.recip()?, &self.m);
        }
        let inv_n = n.recip()?;
        Ok(self.conjugate().scale(&inv_n))
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * self.m.to_f64().sqrt()
    }
}

/// `quad_mul` as a free function.
pub fn quad_mul(x: &QuadExt, y: &QuadExt) -> Result<QuadExt, FieldError> {
    x.mul(y)
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.m)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadExt {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || FieldError::MalformedQuad(s.to_string());
        let (a, rest) = s.split_once(" + ").ok_or_else(malformed)?;
        let (b, rest) = rest.split_once("*sqrt(").ok_or_else(malformed)?;
        let m = rest.strip_suffix(')').ok_or_else(malformed)?;
        QuadExt::new(a.parse()?, b.parse()?, m.parse()?)
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::q;

    fn qe(a: Rational, b: Rational, m: i64) -> QuadExt {
        QuadExt::new(a, b, q(m, 1)).unwrap()
    }

    #[test]
    fn closed_form_products() {
        let r2 = qe(q(0, 1), q(1, 1), 2);
        assert_eq!(quad_mul(&r2, &r2).unwrap(), qe(q(2, 1), q(0, 1), 2));

        let x = qe(q(1, 1), q(1, 1), 3);
        let y = qe(q(1, 1), q(-1, 1), 3);
        assert_eq!(quad_mul(&x, &y).unwrap(), qe(q(-2, 1), q(0, 1), 3));

        let h = qe(q(1, 2), q(0, 1), 5);
        let t = qe(q(0, 1), q(2, 1), 5);
        assert_eq!(quad_mul(&h, &t).unwrap(), qe(q(0, 1), q(1, 1), 5));
    }

    #[test]
    fn mismatched_radicands_are_rejected() {
        let x = qe(q(1, 1), q(1, 1), 2);
        let y = qe(q(1, 1), q(1, 1), 3);
        assert!(matches!(quad_mul(&x, &y), Err(FieldError::IncompatibleFields { .. })));
        assert!(x.add(&y).is_err());
    }

    #[test]
    fn radicand_must_be_positive() {
        assert!(QuadExt::new(q(1, 1), q(1, 1), q(0, 1)).is_err());
        assert!(QuadExt::new(q(1, 1), q(1, 1), q(-2, 1)).is_err());
    }

    #[test]
    fn square_radicand_is_not_collapsed() {
        let x = qe(q(1, 1), q(-1, 1), 1);
        assert_eq!(x.b(), &q(-1, 1));
        assert!(x.is_zero());
        assert_eq!(x.collapse(), Some(Rational::zero()));
        assert!(x.inv().is_err());
        let y = qe(q(2, 1), q(1, 1), 4);
        assert_eq!(y.inv().unwrap().collapse(), Some(q(1, 4)));
    }

    #[test]
    fn display_and_parse() {
        let x = QuadExt::new(q(-1, 2), q(3, 1), q(15, 14)).unwrap();
        assert_eq!(x.to_string(), "-1/2 + 3*sqrt(15/14)");
        assert_eq!(x.to_string().parse::<QuadExt>().unwrap(), x);
    }
}
