//! Integer factorization: trial division followed by a seeded Pollard rho
//! stage with an iteration cap.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TRIAL_LIMIT: u64 = 1_000_000;
pub const DEFAULT_RHO_ITERATIONS: u64 = 2_000_000;
const RHO_SEED: u64 = 0x5eed_f4c7;

static TRIAL_LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_TRIAL_LIMIT);
static RHO_ITERATIONS: AtomicU64 = AtomicU64::new(DEFAULT_RHO_ITERATIONS);

/// Effort budget for [`factorize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    pub trial_limit: u64,
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_limit: DEFAULT_TRIAL_LIMIT,
            rho_iterations: DEFAULT_RHO_ITERATIONS,
        }
    }
}

impl FactorBudget {
    /// The budget used by [`factorize`] and everything built on it.
    pub fn current() -> Self {
        FactorBudget {
            trial_limit: TRIAL_LIMIT.load(Ordering::Relaxed),
            rho_iterations: RHO_ITERATIONS.load(Ordering::Relaxed),
        }
    }

    /// Makes this budget the process-wide default.
    pub fn install(self) {
        TRIAL_LIMIT.store(self.trial_limit.max(2), Ordering::Relaxed);
        RHO_ITERATIONS.store(self.rho_iterations, Ordering::Relaxed);
    }

    /// Parses `"<trial_limit>:<rho_iterations>"` or a bare rho iteration count.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad factorization budget {s:?}"));
        match s.split_once(':') {
            Some((t, r)) => Ok(FactorBudget {
                trial_limit: t.trim().parse().map_err(|_| bad())?,
                rho_iterations: r.trim().parse().map_err(|_| bad())?,
            }),
            None => Ok(FactorBudget {
                rho_iterations: s.trim().parse().map_err(|_| bad())?,
                ..FactorBudget::default()
            }),
        }
    }
}

/// Prime factorization `sign * prod(p^e)` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }
}

pub fn factorize(n: &BigInt) -> Result<Factorization> {
    factorize_with(n, &FactorBudget::current())
}

pub fn factorize_with(n: &BigInt, budget: &FactorBudget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut primes: Vec<BigUint> = Vec::new();

    if let Some(small) = m.to_u64() {
        let (rest, found) = trial_divide_u64(small, budget.trial_limit);
        primes.extend(found.into_iter().map(BigUint::from));
        m = BigUint::from(rest);
    } else {
        let mut d = 2u64;
        while d <= budget.trial_limit {
            let bd = BigUint::from(d);
            if &bd * &bd > m {
                break;
            }
            while (&m % &bd).is_zero() {
                m /= &bd;
                primes.push(bd.clone());
            }
            d += if d == 2 { 1 } else { 2 };
        }
    }

    if !m.is_one() {
        let limit = BigUint::from(budget.trial_limit);
        if m <= &limit * &limit {
            // every factor below the trial limit is gone, so m is prime
            primes.push(m);
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(RHO_SEED);
            let mut stack = vec![m];
            while let Some(c) = stack.pop() {
                if c.is_one() {
                    continue;
                }
                if is_probable_prime(&c) {
                    primes.push(c);
                    continue;
                }
                let d = pollard_rho(&c, budget.rho_iterations, &mut rng)
                    .ok_or_else(|| Error::FactorizationLimitExceeded(n.to_string()))?;
                let other = &c / &d;
                stack.push(d);
                stack.push(other);
            }
        }
    }

    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        let p = BigInt::from(p);
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { sign, factors })
}

fn trial_divide_u64(mut n: u64, limit: u64) -> (u64, Vec<u64>) {
    let mut out = Vec::new();
    while n % 2 == 0 {
        n /= 2;
        out.push(2);
    }
    let mut d = 3u64;
    while d <= limit && d.saturating_mul(d) <= n {
        while n % d == 0 {
            n /= d;
            out.push(d);
        }
        d += 2;
    }
    if d.saturating_mul(d) > n && n > 1 {
        out.push(n);
        n = 1;
    }
    (n, out)
}

const MR_BASES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Miller-Rabin with fixed bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for b in MR_BASES {
        let b = BigUint::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'outer: for b in MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. Returns a nontrivial divisor or `None`
/// once `cap` iterations are spent.
fn pollard_rho(n: &BigUint, cap: u64, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let mut spent = 0u64;
    let one = BigUint::one();
    while spent < cap {
        let c = rng.gen_biguint_range(&one, n);
        let mut y = rng.gen_biguint_range(&one, n);
        let f = |v: &BigUint| (v * v + &c) % n;
        let (mut r, m) = (1u64, 128u64);
        let mut g = one.clone();
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            spent += r;
            r *= 2;
            if spent >= cap {
                break;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: i64) -> Factorization {
        factorize(&BigInt::from(n)).unwrap()
    }

    fn pairs(fz: &Factorization) -> Vec<(i64, u32)> {
        fz.factors.iter().map(|(p, e)| (p.to_i64().unwrap(), *e)).collect()
    }

    #[test]
    fn small_inputs() {
        let one = f(1);
        assert_eq!(one.sign, 1);
        assert!(one.factors.is_empty());

        let m12 = f(-12);
        assert_eq!(m12.sign, -1);
        assert_eq!(pairs(&m12), vec![(2, 2), (3, 1)]);

        assert_eq!(pairs(&f(1854)), vec![(2, 1), (3, 2), (103, 1)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(factorize(&BigInt::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn rho_stage_splits_semiprime() {
        // two primes above the trial limit
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let n = &p * &q * 4;
        let budget = FactorBudget {
            trial_limit: 1000,
            rho_iterations: 1_000_000,
        };
        let fz = factorize_with(&n, &budget).unwrap();
        assert_eq!(fz.product(), n);
        assert_eq!(fz.factors, vec![(BigInt::from(2), 2), (p, 1), (q, 1)]);
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let budget = FactorBudget {
            trial_limit: 10,
            rho_iterations: 1,
        };
        assert!(matches!(
            factorize_with(&n, &budget),
            Err(Error::FactorizationLimitExceeded(_))
        ));
    }

    #[test]
    fn large_prime_is_recognized() {
        let p: BigInt = "170141183460469231731687303715884105727".parse().unwrap();
        let fz = factorize(&p).unwrap();
        assert_eq!(fz.factors, vec![(p, 1)]);
    }

    #[test]
    fn budget_parsing() {
        assert_eq!(
            FactorBudget::parse("100:5").unwrap(),
            FactorBudget { trial_limit: 100, rho_iterations: 5 }
        );
        assert_eq!(FactorBudget::parse("7").unwrap().rho_iterations, 7);
        assert!(FactorBudget::parse("x").is_err());
    }
}
