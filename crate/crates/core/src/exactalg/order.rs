use std::cmp::Ordering;

use super::{Monomial, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderScheme {
    Grevlex,
    Lex,
}

/// A monomial order: a scheme plus a ranking of the variables.
///
/// Variables listed in `ranking` are the largest, in the listed order.
/// All other variables follow in the default `Var` order (see [`Var`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub scheme: OrderScheme,
    pub ranking: Vec<Var>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::grevlex()
    }
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder {
            scheme: OrderScheme::Grevlex,
            ranking: Vec::new(),
        }
    }

    pub fn lex() -> Self {
        MonomialOrder {
            scheme: OrderScheme::Lex,
            ranking: Vec::new(),
        }
    }

    pub fn with_ranking(mut self, ranking: Vec<Var>) -> Self {
        self.ranking = ranking;
        self
    }

    /// Sort key of a variable; a smaller key is a larger variable.
    pub(crate) fn var_key(&self, v: Var) -> (u8, usize, Var) {
        match self.ranking.iter().position(|&x| x == v) {
            Some(p) => (0, p, v),
            None => (1, 0, v),
        }
    }

    /// Variables sorted from largest to smallest.
    pub(crate) fn sort_vars(&self, vars: &mut Vec<Var>) {
        vars.sort_by_key(|&v| self.var_key(v));
        vars.dedup();
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let mut vars: Vec<Var> = a.vars().chain(b.vars()).collect();
        self.sort_vars(&mut vars);
        let ea: Vec<u32> = vars.iter().map(|&v| a.exponent(v)).collect();
        let eb: Vec<u32> = vars.iter().map(|&v| b.exponent(v)).collect();
        compare_dense(self.scheme, &ea, &eb)
    }
}

/// Compares exponent vectors whose positions run from the largest variable
/// to the smallest.
pub(crate) fn compare_dense(scheme: OrderScheme, a: &[u32], b: &[u32]) -> Ordering {
    match scheme {
        OrderScheme::Lex => a.cmp(b),
        OrderScheme::Grevlex => {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            })
        }
    }
}
