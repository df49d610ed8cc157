use std::fmt;

/// A ring variable.
///
/// `T { i, j }` is the `j`-th variable of monomial tuple `i` (`j >= 1`),
/// `S(k)` the `k`-th free variable (`k >= 1`) and `Param` the formal
/// parameter `t` of the exponential map.
///
/// The derived `Ord` is the default variable ranking: every `T` before
/// every `S` before `Param`, then by index. Earlier means larger in the
/// monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T { i: u32, j: u32 },
    S(u32),
    Param,
}

impl Var {
    pub fn t(i: u32, j: u32) -> Var {
        Var::T { i, j }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T { i, j } => write!(f, "T{i}_{j}"),
            Var::S(k) => write!(f, "S{k}"),
            Var::Param => f.write_str("t"),
        }
    }
}
