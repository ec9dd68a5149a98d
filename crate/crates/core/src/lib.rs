pub mod arith;
pub mod error;

pub use error::{Error, Result};
pub mod quadforms;
pub mod geometry;
pub mod density;
pub mod enumerate;
pub mod two_point;
pub mod three_point;
pub mod kummer;
pub mod rings;
pub mod search;
