use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{ExactAlgError, Monomial, Polynomial, Rational, Var};

/// Generator images of a derivation; unlisted variables map to zero.
pub type DerivationImages = BTreeMap<Var, Polynomial>;

/// The unique derivation extending `images`, applied to `p`:
/// `sum over v of images[v] * dp/dv`.
pub fn apply_derivation(images: &DerivationImages, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (v, img) in images {
        if img.is_zero() {
            continue;
        }
        let dp = p.partial(*v);
        if !dp.is_zero() {
            out = &out + &(&dp * img);
        }
    }
    out
}

/// `p, D(p), D^2(p), ...` up to and excluding the first zero, or an error
/// if `D^(bound+1)(p)` is still nonzero.
pub fn derivation_chain(
    images: &DerivationImages,
    p: &Polynomial,
    bound: usize,
) -> Result<Vec<Polynomial>, ExactAlgError> {
    let mut chain = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        if chain.len() > bound {
            return Err(ExactAlgError::NotNilpotentWithinBound { bound });
        }
        let next = apply_derivation(images, &cur);
        chain.push(cur);
        cur = next;
    }
    Ok(chain)
}

/// `exp(t D)(p) = sum_{i=0}^{N} t^i D^i(p) / i!` where `D^(N+1)(p) = 0`,
/// with `t` the [`Var::Param`] variable.
pub fn exp_action(
    images: &DerivationImages,
    p: &Polynomial,
    bound: usize,
) -> Result<Polynomial, ExactAlgError> {
    let chain = derivation_chain(images, p, bound)?;
    let mut out = Polynomial::zero();
    let mut factorial = BigInt::from(1);
    for (i, q) in chain.iter().enumerate() {
        if i > 0 {
            factorial *= i;
        }
        let coeff = Rational::new(1.into(), factorial.clone());
        let tp = Monomial::power(Var::Param, i as u32);
        out = &out + &q.scale(&coeff).mul_monomial(&tp);
    }
    Ok(out)
}
