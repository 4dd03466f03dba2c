//! Exact scalar layer: rationals, Bernoulli numbers and polynomials,
//! binomials and Pochhammer symbols.

pub mod bernoulli;
pub mod combinatorics;
pub mod rational;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, BernoulliCache};
pub use combinatorics::{binomial, factorial, multinomial, pochhammer, pochhammer_rational};
pub use rational::{format_rational, int, parse_rational, rat, BigRational};
