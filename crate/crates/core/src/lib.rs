//! Bounds on the number of zeros of multiplicity at least `r` that a
//! multivariate polynomial with a given lexicographic leading monomial can
//! have over a grid `S_1 x ... x S_m`.
//!
//! The crate has three layers:
//!
//! * combinatorial bounds — the recursive upper bound [`dbound::d_bound`],
//!   the constructive lower bound [`linear::h_bound`] attained by products
//!   of univariate linear terms, closed forms in exact rationals
//!   ([`closed`]), and the dimension-count comparison ([`pw`]);
//! * a prime-field oracle ([`field`], [`poly`]) that counts zeros
//!   exhaustively via Hasse derivatives and validates every bound;
//! * reproduction of the reference tables and statistics ([`tables`]) plus
//!   randomized verification sweeps ([`verify`]).

pub mod closed;
pub mod dbound;
pub mod error;
pub mod field;
pub mod linear;
pub mod poly;
pub mod pw;
pub mod query;
pub mod rational;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use query::{BoundQuery, ZeroCount};
pub use rational::ExactRational;
