use std::fmt;

use super::Var;

/// A power product with strictly positive exponents, kept sorted by
/// variable. The empty product is the unit monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn power(v: Var, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary `(var, exponent)` pairs, merging
    /// repeated variables and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Monomial {
        let mut v: Vec<(Var, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(x, _)| x);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (x, e) in v {
            match out.last_mut() {
                Some((y, f)) if *y == x => *f += e,
                _ => out.push((x, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(x, _)| x)
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, f)| (v, f * e)).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial::from_pairs(
            other.iter().map(|(v, e)| (v, e - self.exponent(v))),
        ))
    }

    /// Removes one factor of `v`, returning the reduced monomial and the
    /// old exponent, or `None` if `v` does not occur.
    pub fn lower(&self, v: Var) -> Option<(Monomial, u32)> {
        let e = self.exponent(v);
        if e == 0 {
            return None;
        }
        let m = Monomial(
            self.0
                .iter()
                .filter_map(|&(x, f)| match (x == v, f) {
                    (true, 1) => None,
                    (true, f) => Some((x, f - 1)),
                    (false, f) => Some((x, f)),
                })
                .collect(),
        );
        Some((m, e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
