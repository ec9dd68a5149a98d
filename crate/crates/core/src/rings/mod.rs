//! Dense families with coordinates and distances in `Z[sqrt(delta)]`
//! and in `Z[i]`.

mod gaussian;
mod realquad;

pub use gaussian::*;
pub use realquad::*;

#[cfg(test)]
mod tests;
