//! The quartic satisfied by the distances `(z, u, v)` from a point to
//! `O = (0,0)`, `P = (1,0)` and `P' = (a,b)`.
//!
//! Eliminating `x = (z^2 - u^2 + 1)/2` and
//! `y = (a^2 + b^2 + (1-a) z^2 - v^2 + a u^2 - a)/(2b)` from
//! `x^2 + y^2 = z^2` and clearing the factor `1/(4b^2)` gives
//! `b^2 (2x)^2 + (2by)^2 - 4 b^2 z^2 = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{serde_rational, Rational};
use crate::error::{Error, Result};

/// Exponents of `(z, u, v)`.
pub type Monomial = [u32; 3];

/// Sparse polynomial in `z, u, v` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(BTreeMap<Monomial, Rational>);

impl Poly {
    pub fn constant(c: Rational) -> Self {
        Poly::term(c, [0, 0, 0])
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut map = BTreeMap::new();
        if !c.is_zero() {
            map.insert(m, c);
        }
        Poly(map)
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.0.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn eval(&self, z: &Rational, u: &Rational, v: &Rational) -> Rational {
        let pow = |b: &Rational, e: u32| (0..e).fold(Rational::one(), |acc, _| acc * b);
        self.0
            .iter()
            .map(|(m, c)| c * pow(z, m[0]) * pow(u, m[1]) * pow(v, m[2]))
            .sum()
    }

    pub fn degree(&self) -> u32 {
        self.0.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.0.clone();
        for (m, c) in &rhs.0 {
            let e = out.entry(*m).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.remove(m);
            }
        }
        Poly(out)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &rhs.0 {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
                out = &out + &Poly::term(c1 * c2, m);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.0.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (name, e) in ["z", "u", "v"].iter().zip(m) {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KummerQuartic {
    #[serde(with = "serde_rational")]
    pub a: Rational,
    #[serde(with = "serde_rational")]
    pub b: Rational,
    #[serde(with = "coeff_list")]
    pub poly: Poly,
}

mod coeff_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        z: u32,
        u: u32,
        v: u32,
        #[serde(with = "serde_rational")]
        c: Rational,
    }

    pub fn serialize<S: Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<Entry> = p.terms().map(|(m, c)| Entry { z: m[0], u: m[1], v: m[2], c: c.clone() }).collect();
        list.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        let list = Vec::<Entry>::deserialize(d)?;
        Ok(list.into_iter().fold(Poly::default(), |acc, e| &acc + &Poly::term(e.c, [e.z, e.u, e.v])))
    }
}

pub fn derive_quartic(a: &Rational, b: &Rational) -> Result<KummerQuartic> {
    if b.is_zero() {
        return Err(Error::BZeroDegenerate);
    }
    let k = |c: Rational| Poly::constant(c);
    let z2 = Poly::term(Rational::one(), [2, 0, 0]);
    let u2 = Poly::term(Rational::one(), [0, 2, 0]);
    let v2 = Poly::term(Rational::one(), [0, 0, 2]);
    let neg = |p: &Poly| p * &k(-Rational::one());
    let one = Rational::one();
    // 2x and 2by
    let two_x = &(&z2 + &neg(&u2)) + &k(one.clone());
    let two_by = &(&(&(&k(a * a + b * b - a) + &(&z2 * &k(&one - a))) + &neg(&v2)) + &(&u2 * &k(a.clone())));
    let b2 = k(b * b);
    let lhs = &(&(&b2 * &(&two_x * &two_x)) + &(two_by * two_by)) + &(&z2 * &k(Rational::from_integer((-4).into()) * b * b));
    Ok(KummerQuartic {
        a: a.clone(),
        b: b.clone(),
        poly: lhs,
    })
}

/// Residual of the quartic at `(z, u, v)`.
pub fn quartic_eval(kq: &KummerQuartic, z: &Rational, u: &Rational, v: &Rational) -> Rational {
    kq.poly.eval(z, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn normalized_right_isosceles_quartic() {
        let kq = derive_quartic(&int(0), &int(1)).unwrap();
        let m = |z, u, v, c: i64| Poly::term(int(c), [z, u, v]);
        let expected = [
            m(4, 0, 0, 2),
            m(0, 4, 0, 1),
            m(0, 0, 4, 1),
            m(0, 0, 0, 2),
            m(2, 2, 0, -2),
            m(2, 0, 2, -2),
            m(0, 2, 0, -2),
            m(0, 0, 2, -2),
        ]
        .iter()
        .fold(Poly::default(), |acc, t| &acc + t);
        assert_eq!(kq.poly, expected);
        assert!(quartic_eval(&kq, &int(0), &int(1), &int(1)).is_zero());
        assert!(quartic_eval(&kq, &rat(3, 4), &rat(1, 4), &rat(5, 4)).is_zero());
        assert_eq!(quartic_eval(&kq, &int(1), &int(1), &int(1)), int(-2));
    }

    #[test]
    fn other_shapes() {
        let kq = derive_quartic(&int(0), &int(2)).unwrap();
        assert!(quartic_eval(&kq, &int(0), &int(1), &int(2)).is_zero());
        assert_eq!(kq.poly.degree(), 4);
        assert!(matches!(derive_quartic(&int(1), &int(0)), Err(Error::BZeroDegenerate)));
    }

    #[test]
    fn serde_round_trip() {
        let kq = derive_quartic(&rat(1, 3), &rat(-2, 5)).unwrap();
        let s = serde_json::to_string(&kq).unwrap();
        let back: KummerQuartic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, kq);
    }
}
