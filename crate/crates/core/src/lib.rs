//! Finite partial monoids and the string rewriting systems they induce.
//!
//! A partial monoid `P` embeds in the free monoid `P*`; the rules
//! `x·y → x*y` (for defined products) and `1 → ε` turn `P*` into a
//! terminating rewriting system. This crate decides its confluence from the
//! multiplication table, computes left-standard normal forms, and checks the
//! relationship between confluence and associativity of the induced product
//! on normal forms, including bracket-moving on binary trees.

pub mod confluence;
pub mod error;
pub mod limits;
pub mod magma;
pub mod monoid;
pub mod random;
pub mod rewriting;
pub mod star;
pub mod words;

pub mod cli;

pub use error::{Error, Result};
pub use limits::Limits;
pub use monoid::{Elem, PartialMonoid};
pub use words::Word;
