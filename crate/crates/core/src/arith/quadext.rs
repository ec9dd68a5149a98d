//! Elements `a + b*sqrt(d)` of a single real quadratic field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{from_bigint, sign, squarefree_part, Rational};
use crate::error::{Error, Result};

/// `a + b*sqrt(d)` with `d` squarefree. Rational values carry `d = 1` and
/// `b = 0`, and combine freely with values of any field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadExt {
    /// Builds `a + b*sqrt(d)`; `d` must be squarefree and greater than 1
    /// unless `b` is zero.
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if b.is_zero() {
            return Ok(QuadExt::rational(a));
        }
        if d < 2 {
            return Err(Error::Parse(format!("sqrt{d} is not irrational")));
        }
        let (s, _) = squarefree_part(&Rational::from_integer(BigInt::from(d)))?;
        if s != BigInt::from(d) {
            return Err(Error::Parse(format!("{d} is not squarefree")));
        }
        Ok(QuadExt { a, b, d })
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    pub fn from_int(n: i64) -> Self {
        QuadExt::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        QuadExt::from_int(0)
    }

    pub fn one() -> Self {
        QuadExt::from_int(1)
    }

    /// Exact square root of a rational, normalized to `c*sqrt(s)`.
    /// Negative inputs are rejected.
    pub fn sqrt_of(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::Parse(format!("sqrt of negative {q}")));
        }
        if q.is_zero() {
            return Ok(QuadExt::zero());
        }
        let (s, c) = squarefree_part(q)?;
        if s.is_one() {
            return Ok(QuadExt::rational(c));
        }
        let d = s
            .to_u64()
            .ok_or_else(|| Error::Parse(format!("radicand {s} too large")))?;
        Ok(QuadExt {
            a: Rational::zero(),
            b: c,
            d,
        })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The radicand, `1` for rational values.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// Field norm `a^2 - d*b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - from_bigint(BigInt::from(self.d)) * &self.b * &self.b
    }

    /// Sign of the value under the real embedding `sqrt(d) > 0`.
    pub fn signum(&self) -> i8 {
        let (sa, sb) = (sign(&self.a), sign(&self.b));
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * from_bigint(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    fn field(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(Error::MixedField(d, e)),
        }
    }

    fn normalized(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            QuadExt::rational(a)
        } else {
            QuadExt { a, b, d }
        }
    }

    /// Common radicand of a collection, or `MixedField`.
    pub fn common_field<'a>(values: impl IntoIterator<Item = &'a QuadExt>) -> Result<u64> {
        let mut d = 1;
        for v in values {
            d = match (d, v.d) {
                (1, e) | (e, 1) => e,
                (x, y) if x == y => x,
                (x, y) => return Err(Error::MixedField(x, y)),
            };
        }
        Ok(d)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let d = self.field(rhs)?;
        Ok(QuadExt::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        let d = self.field(rhs)?;
        Ok(QuadExt::normalized(&self.a - &rhs.a, &self.b - &rhs.b, d))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let d = self.field(rhs)?;
        let dq = from_bigint(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dq;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(QuadExt::normalized(a, b, d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadExt::normalized(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.field(rhs)?;
        self.try_mul(&rhs.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadExt::normalized(&self.a * q, &self.b * q, self.d)
    }

    pub fn square(&self) -> Self {
        self.try_mul(self).expect("same field")
    }
}

impl From<Rational> for QuadExt {
    fn from(q: Rational) -> Self {
        QuadExt::rational(q)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            /// Panics when the operands live in different quadratic fields.
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = if self.b.is_one() {
            String::new()
        } else if (-&self.b).is_one() {
            "-".to_string()
        } else {
            format!("{}*", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{coeff}sqrt{}", self.d)
        } else if self.b.is_negative() {
            write!(f, "{}{coeff}sqrt{}", self.a, self.d)
        } else {
            write!(f, "{}+{coeff}sqrt{}", self.a, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Serde adapter writing rationals as `"p/q"` (or `"p"`).
pub mod serde_rational {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse::<Rational>().map_err(D::Error::custom)
    }

    pub mod option {
        use super::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.collect_str(q),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let s: Option<String> = Option::deserialize(d)?;
            s.map(|s| s.trim().parse::<Rational>())
                .transpose()
                .map_err(serde::de::Error::custom)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadExtRepr {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(with = "serde_rational")]
    b: Rational,
    d: u64,
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadExtRepr {
            a: self.a.clone(),
            b: self.b.clone(),
            d: self.d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = QuadExtRepr::deserialize(de)?;
        QuadExt::new(r.a, r.b, r.d).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use proptest::prelude::*;

    fn q(a: Rational, b: Rational, d: u64) -> QuadExt {
        QuadExt::new(a, b, d).unwrap()
    }

    #[test]
    fn sqrt_normalizes() {
        assert_eq!(QuadExt::sqrt_of(&int(8)).unwrap(), q(int(0), int(2), 2));
        assert_eq!(QuadExt::sqrt_of(&rat(9, 4)).unwrap(), QuadExt::rational(rat(3, 2)));
        assert_eq!(
            QuadExt::sqrt_of(&rat(18, 25)).unwrap(),
            q(int(0), rat(3, 5), 2)
        );
    }

    #[test]
    fn mixed_fields_are_errors_unless_rational() {
        let s2 = QuadExt::sqrt_of(&int(2)).unwrap();
        let s3 = QuadExt::sqrt_of(&int(3)).unwrap();
        assert_eq!(s2.try_add(&s3), Err(Error::MixedField(2, 3)));
        let half = QuadExt::rational(rat(1, 2));
        assert_eq!((&s3 * &half).d(), 3);
        // sqrt2 * sqrt2 collapses to a rational and mixes with anything
        let two = &s2 * &s2;
        assert!(two.is_rational());
        assert!(two.try_add(&s3).is_ok());
    }

    #[test]
    fn sign_in_real_embedding() {
        // 1 - sqrt5 < 0, 3 - sqrt5 > 0
        assert_eq!(q(int(1), int(-1), 5).signum(), -1);
        assert_eq!(q(int(3), int(-1), 5).signum(), 1);
        assert_eq!(q(int(-3), int(2), 2).signum(), -1);
        assert_eq!(QuadExt::zero().signum(), 0);
    }

    #[test]
    fn display_and_serde() {
        let x = q(rat(1, 4), rat(-1, 4), 5);
        assert_eq!(x.to_string(), "1/4-1/4*sqrt5");
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"{"a":"1/4","b":"-1/4","d":5}"#);
        let back: QuadExt = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<QuadExt>(r#"{"a":"1","b":"1","d":4}"#).is_err());
    }

    fn arb_q() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_ext(d: u64) -> impl Strategy<Value = QuadExt> {
        (arb_q(), arb_q()).prop_map(move |(a, b)| QuadExt::new(a, b, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_ext(7), y in arb_ext(7), z in arb_ext(7)) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), QuadExt::one());
            }
        }

        #[test]
        fn conjugation_is_a_ring_map(x in arb_ext(3), y in arb_ext(3)) {
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }
    }
}
