use std::fmt;

use num_traits::Zero;

use super::{minor, Coefficients, TrinomialDatum, VarietyType};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// `r` must be positive.
    ZeroR,
    /// Number of exponent tuples differs from `r + 1 - q`.
    TupleCount {
        expected: usize,
        found: usize,
    },
    /// Partition length differs from the number of tuples.
    PartitionLength {
        expected: usize,
        found: usize,
    },
    /// `n_i` disagrees with the length of tuple `i`.
    PartitionMismatch {
        index: usize,
        declared: usize,
        actual: usize,
    },
    EmptyTuple {
        index: usize,
    },
    ZeroExponent {
        index: usize,
        position: usize,
    },
    /// Coefficient data has the wrong kind or size for the variety type.
    CoefficientShape {
        expected: String,
    },
    /// Type 1: `a_i = a_j`.
    RepeatedConstant {
        i: usize,
        j: usize,
    },
    /// Type 2: columns `i` and `j` are proportional.
    DependentColumns {
        i: usize,
        j: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroR => write!(f, "r must be positive"),
            Violation::TupleCount { expected, found } => {
                write!(f, "expected {expected} exponent tuples, found {found}")
            }
            Violation::PartitionLength { expected, found } => {
                write!(f, "partition has {found} entries, expected {expected}")
            }
            Violation::PartitionMismatch {
                index,
                declared,
                actual,
            } => write!(
                f,
                "n_{index} = {declared} but tuple {index} has {actual} entries"
            ),
            Violation::EmptyTuple { index } => write!(f, "tuple {index} is empty"),
            Violation::ZeroExponent { index, position } => {
                write!(f, "exponent l_{index},{position} is not positive")
            }
            Violation::CoefficientShape { expected } => {
                write!(f, "coefficients must be {expected}")
            }
            Violation::RepeatedConstant { i, j } => write!(f, "a_{i} = a_{j}"),
            Violation::DependentColumns { i, j } => {
                write!(f, "columns {i} and {j} are linearly dependent")
            }
        }
    }
}

/// All violated invariants of a datum; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(Violation::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

pub fn validate(d: &TrinomialDatum) -> ValidationReport {
    let mut v = Vec::new();
    let q = d.q();
    if d.r == 0 {
        v.push(Violation::ZeroR);
    }
    let expected = (d.r + 1).saturating_sub(q);
    if d.exponents.len() != expected {
        v.push(Violation::TupleCount {
            expected,
            found: d.exponents.len(),
        });
    }
    if d.partition.len() != d.exponents.len() {
        v.push(Violation::PartitionLength {
            expected: d.exponents.len(),
            found: d.partition.len(),
        });
    }
    for (k, t) in d.exponents.iter().enumerate() {
        let index = k + q;
        if let Some(&n) = d.partition.get(k) {
            if n != t.len() {
                v.push(Violation::PartitionMismatch {
                    index,
                    declared: n,
                    actual: t.len(),
                });
            }
        }
        if t.is_empty() {
            v.push(Violation::EmptyTuple { index });
        }
        for (p, &e) in t.iter().enumerate() {
            if e == 0 {
                v.push(Violation::ZeroExponent {
                    index,
                    position: p + 1,
                });
            }
        }
    }
    match (&d.coefficients, d.variety_type) {
        (Coefficients::Type1(a), VarietyType::Type1) => {
            if a.len() != d.r {
                v.push(Violation::CoefficientShape {
                    expected: format!("a list of {} constants", d.r),
                });
            } else {
                for i in 0..a.len() {
                    for j in i + 1..a.len() {
                        if a[i] == a[j] {
                            v.push(Violation::RepeatedConstant { i: i + 1, j: j + 1 });
                        }
                    }
                }
            }
        }
        (Coefficients::Type2(rows), VarietyType::Type2) => {
            let width = d.r + 1;
            if rows.iter().any(|row| row.len() != width) {
                v.push(Violation::CoefficientShape {
                    expected: format!("a 2 x {width} matrix"),
                });
            } else {
                for i in 0..width {
                    for j in i + 1..width {
                        if minor(d, i, j).is_zero() {
                            v.push(Violation::DependentColumns { i, j });
                        }
                    }
                }
            }
        }
        (_, VarietyType::Type1) => v.push(Violation::CoefficientShape {
            expected: "a list of constants for Type 1".into(),
        }),
        (_, VarietyType::Type2) => v.push(Violation::CoefficientShape {
            expected: "a 2-row matrix for Type 2".into(),
        }),
    }
    ValidationReport { violations: v }
}
