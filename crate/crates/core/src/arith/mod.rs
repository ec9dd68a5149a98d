//! Exact scalars: rationals, one real quadratic field at a time, and
//! integer factorization.

pub mod factor;
pub mod quadext;
pub mod rational;

pub use factor::{factorize, factorize_with, FactorBudget, Factorization};
pub use quadext::{serde_rational, QuadExt};
pub use rational::{
    from_bigint, int, int_sqrt_exact, is_rational_square, rat, rational_sqrt, squarefree_int,
    squarefree_part, Rational,
};
