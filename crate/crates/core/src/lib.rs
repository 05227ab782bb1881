//! Exact computation with elementary numerosities.
//!
//! The crate provides a non-Archimedean ordered field ([`nafield`]), event
//! algebras for coin tosses, the rational real line and finite spaces
//! ([`events`]), numerosities and the probabilities and measures derived from
//! them ([`numerosity`], [`measures`]), a small event language ([`dsl`]), and
//! the batch interface behind the `numerosity` binary ([`cli`]).

pub mod nafield;
pub mod events;
pub mod numerosity;
pub mod measures;
pub mod dsl;
pub mod estimate;
pub mod sampling;
pub mod selftest;
pub mod cli;
