//! The JSON input format for a trinomial datum.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use tririgid_core::exactalg::{format_rational, parse_rational, Rational, RationalParseError};
use tririgid_core::trinomial::{Coefficients, TrinomialDatum, VarietyType};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("\"type\" must be \"1\" or \"2\", got {0:?}")]
    UnknownType(String),
    #[error("coefficient {text:?}: {source}")]
    Rational {
        text: String,
        source: RationalParseError,
    },
    #[error("\"A\" must be {0}")]
    CoefficientLayout(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientDocument {
    Matrix(Vec<Vec<String>>),
    Constants(Vec<String>),
}

/// Field names are part of the file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(rename = "type")]
    pub variety_type: String,
    pub r: usize,
    pub m: usize,
    pub n: Vec<usize>,
    pub l: Vec<Vec<u32>>,
    #[serde(rename = "A")]
    pub a: CoefficientDocument,
}

fn parse_all(items: &[String]) -> Result<Vec<Rational>, InputError> {
    items
        .iter()
        .map(|s| {
            parse_rational(s).map_err(|source| InputError::Rational {
                text: s.clone(),
                source,
            })
        })
        .collect()
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<InputDocument, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &str) -> Result<InputDocument, InputError> {
        let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
            path: path.to_string(),
            source,
        })?;
        InputDocument::parse(&text)
    }

    /// The datum exactly as written; `r`, `m` and `n` are not re-derived,
    /// so inconsistencies surface in validation.
    pub fn to_datum(&self) -> Result<TrinomialDatum, InputError> {
        let (variety_type, coefficients) = match (self.variety_type.as_str(), &self.a) {
            ("1", CoefficientDocument::Constants(a)) => {
                (VarietyType::Type1, Coefficients::Type1(parse_all(a)?))
            }
            ("1", CoefficientDocument::Matrix(_)) => {
                return Err(InputError::CoefficientLayout(
                    "a list of rational strings for type 1",
                ))
            }
            ("2", CoefficientDocument::Matrix(rows)) if rows.len() == 2 => (
                VarietyType::Type2,
                Coefficients::Type2([parse_all(&rows[0])?, parse_all(&rows[1])?]),
            ),
            ("2", _) => {
                return Err(InputError::CoefficientLayout(
                    "two rows of rational strings for type 2",
                ))
            }
            (other, _) => return Err(InputError::UnknownType(other.to_string())),
        };
        Ok(TrinomialDatum {
            variety_type,
            r: self.r,
            m: self.m,
            partition: self.n.clone(),
            exponents: self.l.clone(),
            coefficients,
        })
    }

    pub fn from_datum(d: &TrinomialDatum) -> InputDocument {
        let fmt = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        let a = match &d.coefficients {
            Coefficients::Type1(a) => CoefficientDocument::Constants(fmt(a)),
            Coefficients::Type2(rows) => {
                CoefficientDocument::Matrix(vec![fmt(&rows[0]), fmt(&rows[1])])
            }
        };
        InputDocument {
            variety_type: d.variety_type.to_string(),
            r: d.r,
            m: d.m,
            n: d.partition.clone(),
            l: d.exponents.clone(),
            a,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("input documents always serialize")
    }
}
