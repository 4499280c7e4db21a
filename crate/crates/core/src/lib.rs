//! Exact checkers for M♮-concavity, M-concavity and related exchange
//! axioms of set functions, evaluation of their concave conjugates, and
//! construction of explicit price pairs that witness a failure of
//! submodularity of the conjugate whenever an exchange axiom fails.
//!
//! All arithmetic is exact over the rationals; `−∞` is a distinct value,
//! never a large negative number.

pub mod axioms;
pub mod certificates;
pub mod generators;
pub mod rational;
pub mod setfn;
pub mod subset;
pub mod lift;
pub mod document;
pub mod selftest;
pub mod cli;

pub use rational::Rational;
pub use setfn::{ExtValue, GroundSet, PriceVector, SetFn, SetFnError};
pub use subset::Subset;
pub use lift::{lift, LiftedSetFn};
