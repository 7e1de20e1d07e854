//! Exact Laurent polynomials in `s = t^{1/2}` with big-integer coefficients.
//!
//! A power `t^e` is stored as the s-exponent `2e`. Knot polynomials only ever
//! carry even s-exponents; odd ones appear for links and in intermediate
//! bracket computations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational number used for `w3` and derivative combinations.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("s-exponent {0} is odd; expected a polynomial in t and t^-1")]
    OddExponent(i64),
}

/// Laurent polynomial in `s`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(s-exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `-s - s^{-1}`, the value of an extra unknotted component.
    pub fn loop_value() -> Self {
        Self::from_terms([(1, -1), (-1, -1)])
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Multiplies by `s^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `s -> s^{-1}` (equivalently `t -> t^{-1}`).
    pub fn substitute_inverse(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn has_only_even_exponents(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    /// Value at `t = 1`, i.e. the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// The k-th derivative in `t` evaluated at `t = 1`:
    /// `sum_e c_e * e(e-1)...(e-k+1)` over the t-exponents `e`.
    pub fn t_derivative_at_one(&self, k: u32) -> Result<BigInt, LaurentError> {
        let mut total = BigInt::zero();
        for (&s_exp, c) in &self.coeffs {
            if s_exp % 2 != 0 {
                return Err(LaurentError::OddExponent(s_exp));
            }
            let e = s_exp / 2;
            let mut falling = BigInt::one();
            for j in 0..i64::from(k) {
                falling *= e - j;
            }
            total += c * falling;
        }
        Ok(total)
    }

    /// Sorted `(s-exponent, coefficient)` pairs, ascending exponent.
    pub fn to_pairs(&self) -> Vec<(i64, BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c.clone())).collect()
    }

    fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str, divisor: i64) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let exp = e / divisor;
            let unit = mag.is_one();
            if exp == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}*")?;
            }
            if exp == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{exp}")?;
            }
        }
        Ok(())
    }

    /// Human-readable form in `t` (requires even exponents) or `s` otherwise.
    pub fn display_t(&self) -> String {
        struct T<'a>(&'a LaurentPoly);
        impl fmt::Display for T<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.has_only_even_exponents() {
                    self.0.fmt_var(f, "t", 2)
                } else {
                    self.0.fmt_var(f, "s", 1)
                }
            }
        }
        T(self).to_string()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "s", 1)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| &acc + &p)
    }
}

/// Big integers are written as JSON numbers when they fit in 64 bits and as
/// decimal strings otherwise.
/// Serializes a rational as `"p/q"`, or as a plain integer when `q = 1`.
pub fn serialize_rational<S: Serializer>(r: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    rational_to_json(r).serialize(serializer)
}

pub fn rational_to_json(r: &Rational) -> serde_json::Value {
    if r.is_integer() {
        bigint_to_json(r.numer())
    } else {
        serde_json::Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn bigint_to_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::String(v.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            seq.serialize_element(&(e, bigint_to_json(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, serde_json::Value)> = Vec::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        for (e, v) in pairs {
            let c = bigint_from_json(&v)
                .ok_or_else(|| serde::de::Error::custom("coefficient is not an integer"))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn ring_examples() {
        let a = p(&[(1, -1), (-1, -1)]);
        assert_eq!(&a * &p(&[(-1, -1)]), p(&[(0, 1), (-2, 1)]));
        assert_eq!(&a + &LaurentPoly::zero(), a);
        assert_eq!(&a * &a, p(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(a.pow(2), &a * &a);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let q = &p(&[(3, 2)]) - &p(&[(3, 2)]);
        assert!(q.is_zero());
        assert_eq!(p(&[(0, 0)]), LaurentPoly::zero());
    }

    #[test]
    fn inverse_substitution() {
        let v = p(&[(-2, 1), (-6, 1), (-8, -1)]);
        assert_eq!(v.substitute_inverse(), p(&[(2, 1), (6, 1), (8, -1)]));
        assert_eq!(LaurentPoly::one().substitute_inverse(), LaurentPoly::one());
        assert_eq!(v.substitute_inverse().substitute_inverse(), v);
    }

    #[test]
    fn trefoil_derivatives() {
        let v = p(&[(-2, 1), (-6, 1), (-8, -1)]);
        assert_eq!(v.t_derivative_at_one(0).unwrap(), BigInt::from(1));
        assert_eq!(v.t_derivative_at_one(1).unwrap(), BigInt::from(0));
        assert_eq!(v.t_derivative_at_one(2).unwrap(), BigInt::from(-6));
        assert_eq!(v.t_derivative_at_one(3).unwrap(), BigInt::from(54));
        for k in 1..5 {
            assert!(LaurentPoly::one().t_derivative_at_one(k).unwrap().is_zero());
        }
    }

    #[test]
    fn odd_exponent_is_rejected() {
        let v = p(&[(1, 1), (2, 3)]);
        assert_eq!(v.t_derivative_at_one(2), Err(LaurentError::OddExponent(1)));
    }

    #[test]
    fn display_in_t() {
        let v = p(&[(-2, 1), (-6, 1), (-8, -1)]);
        assert_eq!(v.display_t(), "t^-1 + t^-3 - t^-4");
        assert_eq!(p(&[(1, 2), (0, -1)]).display_t(), "2*s - 1");
    }

    #[test]
    fn json_form_is_sorted_pairs() {
        let v = p(&[(4, 7), (-2, 1)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), "[[-2,1],[4,7]]");
        let big = LaurentPoly::monomial(0, BigInt::from(u64::MAX) * 4);
        let back: LaurentPoly =
            serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    fn small_poly(even: bool) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..=4, -5i64..=5), 0..5).prop_map(move |terms| {
            LaurentPoly::from_terms(
                terms
                    .into_iter()
                    .map(|(e, c)| (if even { 2 * e } else { e }, c)),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(false), b in small_poly(false), c in small_poly(false)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &b) + &b, a);
        }

        #[test]
        fn zeroth_derivative_is_evaluation(a in small_poly(true)) {
            prop_assert_eq!(a.t_derivative_at_one(0).unwrap(), a.eval_at_one());
        }

        #[test]
        fn product_rule(a in small_poly(true), b in small_poly(true)) {
            let ab = &a * &b;
            let lhs = ab.t_derivative_at_one(1).unwrap();
            let rhs = a.t_derivative_at_one(1).unwrap() * b.eval_at_one()
                + a.eval_at_one() * b.t_derivative_at_one(1).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
