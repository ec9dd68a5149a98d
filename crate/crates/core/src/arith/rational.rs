//! Helpers around [`BigRational`]: construction, exact square roots and
//! squarefree normalization.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::factorize;
use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Nonnegative integer square root when `n` is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The nonnegative rational square root of `q`, if `q` is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn is_rational_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

/// Writes `q = s * c^2` with `s` a squarefree integer carrying the sign of
/// `q` and `c > 0` rational.
pub fn squarefree_part(q: &Rational) -> Result<(BigInt, Rational)> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    // q = n/d = (n*d) / d^2
    let nd = q.numer() * q.denom();
    let (s, root) = squarefree_int(&nd)?;
    let c = Rational::new(root, q.denom().clone());
    Ok((s, c))
}

/// `n = s * root^2` with `s` squarefree (sign of `n`), `root > 0`.
pub fn squarefree_int(n: &BigInt) -> Result<(BigInt, BigInt)> {
    let fz = factorize(n)?;
    let mut s = BigInt::from(fz.sign);
    let mut root = BigInt::one();
    for (p, e) in &fz.factors {
        if e % 2 == 1 {
            s *= p;
        }
        root *= num_traits::pow(p.clone(), (*e / 2) as usize);
    }
    Ok((s, root))
}

/// Height `max(|numerator|, denominator)`.
pub fn height(q: &Rational) -> BigInt {
    let n = q.numer().abs();
    if &n > q.denom() {
        n
    } else {
        q.denom().clone()
    }
}

pub fn sign(q: &Rational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sqrt_examples() {
        assert_eq!(rational_sqrt(&rat(361, 100)), Some(rat(19, 10)));
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }

    #[test]
    fn squarefree_examples() {
        let (s, c) = squarefree_part(&rat(4, 9)).unwrap();
        assert_eq!((s, c), (BigInt::from(1), rat(2, 3)));
        let (s, c) = squarefree_part(&rat(18, 25)).unwrap();
        assert_eq!((s, c), (BigInt::from(2), rat(3, 5)));
        let (s, c) = squarefree_part(&int(-3)).unwrap();
        assert_eq!((s, c), (BigInt::from(-3), int(1)));
        assert_eq!(squarefree_part(&int(0)), Err(Error::ZeroInput));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn squarefree_reconstructs(q in arb_rational().prop_filter("nonzero", |q| !q.is_zero())) {
            let (s, c) = squarefree_part(&q).unwrap();
            prop_assert!(c.is_positive());
            prop_assert_eq!(from_bigint(s.clone()) * &c * &c, q);
            let fz = factorize(&s).unwrap();
            prop_assert!(fz.factors.iter().all(|(_, e)| *e == 1));
        }

        #[test]
        fn sqrt_of_square(q in arb_rational()) {
            let sq = &q * &q;
            let r = rational_sqrt(&sq).unwrap();
            prop_assert_eq!(r, q.abs());
            if let Some(r) = rational_sqrt(&q) {
                prop_assert_eq!(&r * &r, q);
            }
        }
    }
}
