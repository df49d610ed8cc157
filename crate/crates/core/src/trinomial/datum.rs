use std::fmt;

use crate::exactalg::{rat, Monomial, Rational, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyType {
    Type1,
    Type2,
}

impl VarietyType {
    /// First tuple index: 1 for Type 1, 0 for Type 2.
    pub fn q(self) -> usize {
        match self {
            VarietyType::Type1 => 1,
            VarietyType::Type2 => 0,
        }
    }
}

impl fmt::Display for VarietyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyType::Type1 => f.write_str("1"),
            VarietyType::Type2 => f.write_str("2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    /// `(a_1, ..., a_r)`, pairwise distinct.
    Type1(Vec<Rational>),
    /// The two rows of the `2 x (r+1)` matrix, pairwise independent columns.
    Type2([Vec<Rational>; 2]),
}

/// Combinatorial input of a trinomial variety.
///
/// `exponents[k]` is the tuple `l_{q+k}`; tuple indices in the public API
/// are the mathematical ones (`q..=r`), not vector positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrinomialDatum {
    pub variety_type: VarietyType,
    pub r: usize,
    pub m: usize,
    pub partition: Vec<usize>,
    pub exponents: Vec<Vec<u32>>,
    pub coefficients: Coefficients,
}

impl TrinomialDatum {
    /// Type 1 datum; `r` and the partition are read off `exponents`.
    pub fn type1(m: usize, exponents: Vec<Vec<u32>>, a: Vec<Rational>) -> TrinomialDatum {
        TrinomialDatum {
            variety_type: VarietyType::Type1,
            r: exponents.len(),
            m,
            partition: exponents.iter().map(Vec::len).collect(),
            exponents,
            coefficients: Coefficients::Type1(a),
        }
    }

    /// Type 2 datum; `r` and the partition are read off `exponents`.
    pub fn type2(m: usize, exponents: Vec<Vec<u32>>, rows: [Vec<Rational>; 2]) -> TrinomialDatum {
        TrinomialDatum {
            variety_type: VarietyType::Type2,
            r: exponents.len().saturating_sub(1),
            m,
            partition: exponents.iter().map(Vec::len).collect(),
            exponents,
            coefficients: Coefficients::Type2(rows),
        }
    }

    /// Type 1 datum with `a_i = i`.
    pub fn type1_generic(m: usize, exponents: Vec<Vec<u32>>) -> TrinomialDatum {
        let a = (1..=exponents.len() as i64).map(rat).collect();
        TrinomialDatum::type1(m, exponents, a)
    }

    /// Type 2 datum with columns `(1, i)`; the minor of columns `i < j`
    /// is `j - i`.
    pub fn type2_generic(m: usize, exponents: Vec<Vec<u32>>) -> TrinomialDatum {
        let n = exponents.len() as i64;
        let rows = [(0..n).map(|_| rat(1)).collect(), (0..n).map(rat).collect()];
        TrinomialDatum::type2(m, exponents, rows)
    }

    pub fn q(&self) -> usize {
        self.variety_type.q()
    }

    /// Tuple indices `q..=r`.
    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        self.q()..=self.r
    }

    pub fn tuple(&self, i: usize) -> &[u32] {
        &self.exponents[i - self.q()]
    }

    /// `T_i^{l_i}`.
    pub fn monomial(&self, i: usize) -> Monomial {
        Monomial::from_pairs(
            self.tuple(i)
                .iter()
                .enumerate()
                .map(|(j, &e)| (Var::t(i as u32, j as u32 + 1), e)),
        )
    }

    /// Column `i` of the Type 2 matrix. Panics for Type 1 data.
    pub fn column(&self, i: usize) -> (&Rational, &Rational) {
        match &self.coefficients {
            Coefficients::Type2(rows) => (&rows[0][i], &rows[1][i]),
            Coefficients::Type1(_) => panic!("Type 1 data have no coefficient matrix"),
        }
    }

    pub fn t_vars(&self) -> Vec<Var> {
        self.indices()
            .flat_map(|i| (1..=self.tuple(i).len()).map(move |j| Var::t(i as u32, j as u32)))
            .collect()
    }

    pub fn s_vars(&self) -> Vec<Var> {
        (1..=self.m as u32).map(Var::S).collect()
    }

    /// All ring variables: every `T_ij`, then `S_1..S_m`.
    pub fn variables(&self) -> Vec<Var> {
        let mut v = self.t_vars();
        v.extend(self.s_vars());
        v
    }

    /// Index of the tuple containing `v`, if `v` is a `T` variable of this
    /// datum.
    pub fn tuple_of(&self, v: Var) -> Option<(usize, usize)> {
        match v {
            Var::T { i, j } => {
                let (i, j) = (i as usize, j as usize);
                (self.indices().contains(&i) && j >= 1 && j <= self.tuple(i).len())
                    .then_some((i, j))
            }
            _ => None,
        }
    }

    /// Exponent of `T_ij` in its monomial.
    pub fn exponent_of(&self, v: Var) -> Option<u32> {
        self.tuple_of(v).map(|(i, j)| self.tuple(i)[j - 1])
    }

    /// Removes tuple `i` (and its coefficient column or constant),
    /// re-indexing the remaining tuples consecutively.
    pub fn drop_tuple(&self, i: usize) -> TrinomialDatum {
        let k = i - self.q();
        let mut exponents = self.exponents.clone();
        exponents.remove(k);
        match &self.coefficients {
            Coefficients::Type1(a) => {
                let mut a = a.clone();
                a.remove(k);
                TrinomialDatum::type1(self.m, exponents, a)
            }
            Coefficients::Type2(rows) => {
                let mut rows = rows.clone();
                rows[0].remove(k);
                rows[1].remove(k);
                TrinomialDatum::type2(self.m, exponents, rows)
            }
        }
    }

    /// Keeps the first `count` tuples.
    pub fn truncate(&self, count: usize) -> TrinomialDatum {
        let exponents = self.exponents[..count].to_vec();
        match &self.coefficients {
            Coefficients::Type1(a) => TrinomialDatum::type1(self.m, exponents, a[..count].to_vec()),
            Coefficients::Type2(rows) => TrinomialDatum::type2(
                self.m,
                exponents,
                [rows[0][..count].to_vec(), rows[1][..count].to_vec()],
            ),
        }
    }

    /// Reorders tuples (with their coefficients): new position `k` holds
    /// old position `perm[k]`. Positions are vector positions (`0..`).
    pub fn permute_tuples(&self, perm: &[usize]) -> TrinomialDatum {
        let pick = |v: &Vec<Rational>| perm.iter().map(|&p| v[p].clone()).collect::<Vec<_>>();
        let exponents = perm.iter().map(|&p| self.exponents[p].clone()).collect();
        match &self.coefficients {
            Coefficients::Type1(a) => TrinomialDatum::type1(self.m, exponents, pick(a)),
            Coefficients::Type2(rows) => {
                TrinomialDatum::type2(self.m, exponents, [pick(&rows[0]), pick(&rows[1])])
            }
        }
    }

    /// Reorders the entries inside tuple `i` (a mathematical index).
    pub fn permute_within(&self, i: usize, perm: &[usize]) -> TrinomialDatum {
        let mut out = self.clone();
        let k = i - self.q();
        out.exponents[k] = perm.iter().map(|&p| self.exponents[k][p]).collect();
        out
    }

    /// A canonical text key used to sort sweep output.
    pub fn canonical_key(&self) -> String {
        let tuples: Vec<String> = self
            .exponents
            .iter()
            .map(|t| t.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        format!(
            "{}|{}|{}|{}",
            self.variety_type,
            self.r,
            self.m,
            tuples.join(";")
        )
    }
}
