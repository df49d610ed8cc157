use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{format_rational, Monomial, MonomialOrder, Rational, Var};

/// A polynomial with rational coefficients. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if let Some((low, e)) = m.lower(v) {
                out.add_term(low, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Ring homomorphism sending each variable in `images` to its image and
    /// fixing every other variable.
    pub fn substitute(&self, images: &BTreeMap<Var, Polynomial>) -> Polynomial {
        let mut powers: BTreeMap<(Var, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut fixed = Vec::new();
            let mut acc = Polynomial::constant(c.clone());
            for (v, e) in m.iter() {
                match images.get(&v) {
                    Some(img) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| img.pow(e));
                        acc = &acc * pw;
                    }
                    None => fixed.push((v, e)),
                }
            }
            out = &out + &acc.mul_monomial(&Monomial::from_pairs(fixed));
        }
        out
    }

    /// The largest monomial under `order` and its coefficient.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.compare(a, b))
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => Polynomial::zero(),
        }
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| order.compare(b, a));
        v
    }

    /// Returns `c` when `self == c * other` for a nonzero rational `c`.
    pub fn scalar_multiple_of(&self, other: &Polynomial) -> Option<Rational> {
        let (m, a) = other.terms.iter().next()?;
        let c = self.coefficient(m) / a;
        if c.is_zero() {
            return None;
        }
        (other.scale(&c) == *self).then_some(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Polynomial {
        Polynomial::var(v)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Polynomial {
        Polynomial::constant(c)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Terms appear from largest to smallest in the default grevlex order,
/// e.g. `-T0_1^2 - T1_1^2 + T2_1^5` or `2/3*T0_1 + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let order = MonomialOrder::grevlex();
        for (k, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}
