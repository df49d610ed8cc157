//! Exact polynomial arithmetic over the rationals.
//!
//! Everything in this module is exact: coefficients are [`BigRational`]s,
//! monomials are sparse exponent maps over [`Var`], and Gröbner bases are
//! computed with plain Buchberger. The derivation calculus (Leibniz
//! extension of generator images and the truncated exponential series)
//! lives here as well since it only needs the polynomial layer.

mod derivation;
mod groebner;
mod monomial;
mod order;
mod polynomial;
mod rational;
mod var;

pub use derivation::{apply_derivation, derivation_chain, exp_action, DerivationImages};
pub use groebner::{buchberger, buchberger_with_cap, Division, GroebnerBasis, DEFAULT_BASIS_CAP};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderScheme};
pub use polynomial::Polynomial;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational, RationalParseError};
pub use var::Var;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactAlgError {
    #[error("Gröbner basis grew to {size} polynomials, exceeding the cap of {cap}")]
    ResourceLimit { size: usize, cap: usize },
    #[error("derivation is not nilpotent on the input within {bound} applications")]
    NotNilpotentWithinBound { bound: usize },
}
