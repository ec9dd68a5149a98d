//! Deterministic, seed-shuffled enumeration of rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;

/// The Calkin-Wilf sequence `1, 1/2, 2, 1/3, 3/2, ...`, which lists every
/// positive rational exactly once.
#[derive(Debug, Clone)]
pub struct CalkinWilf {
    cur: Rational,
}

impl Default for CalkinWilf {
    fn default() -> Self {
        CalkinWilf {
            cur: Rational::one(),
        }
    }
}

impl Iterator for CalkinWilf {
    type Item = Rational;
    fn next(&mut self) -> Option<Rational> {
        let out = self.cur.clone();
        // next = 1 / (2 floor(q) - q + 1)
        let fl = Rational::from_integer(self.cur.floor().to_integer());
        let two = Rational::from_integer(BigInt::from(2));
        self.cur = Rational::one() / (two * fl - &self.cur + Rational::one());
        Some(out)
    }
}

/// `0`, then `q, -q` for each Calkin-Wilf term `q`, with each block of
/// `block` consecutive values shuffled by a seeded RNG.
#[derive(Debug, Clone)]
pub struct RationalEnumerator {
    cw: CalkinWilf,
    rng: ChaCha8Rng,
    block: usize,
    buf: Vec<Rational>,
    started: bool,
}

impl RationalEnumerator {
    pub fn new(seed: u64) -> Self {
        RationalEnumerator::with_block(seed, 32)
    }

    pub fn with_block(seed: u64, block: usize) -> Self {
        RationalEnumerator {
            cw: CalkinWilf::default(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            block: block.max(1),
            buf: Vec::new(),
            started: false,
        }
    }

    fn refill(&mut self) {
        while self.buf.len() < self.block {
            let q = self.cw.next().expect("infinite");
            self.buf.push(-q.clone());
            self.buf.push(q);
        }
        self.buf.shuffle(&mut self.rng);
    }
}

impl Iterator for RationalEnumerator {
    type Item = Rational;
    fn next(&mut self) -> Option<Rational> {
        if !self.started {
            self.started = true;
            return Some(Rational::zero());
        }
        if self.buf.is_empty() {
            self.refill();
        }
        self.buf.pop()
    }
}
