use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use num_rational::BigRational as Rational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` in lowest terms. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` with no spaces; integers are written without the `/1`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

fn parse_int(s: &str, whole: &str, allow_sign: bool) -> Result<BigInt, RationalParseError> {
    let digits = if allow_sign {
        s.strip_prefix(['+', '-']).unwrap_or(s)
    } else {
        s
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Malformed(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| RationalParseError::Malformed(whole.to_string()))
}

/// Parses `[+-]digits` or `[+-]digits/digits`.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s, s, true)?)),
        Some((n, d)) => {
            let n = parse_int(n, s, true)?;
            let d = parse_int(d, s, false)?;
            if d.is_zero() {
                return Err(RationalParseError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(n, d))
        }
    }
}
