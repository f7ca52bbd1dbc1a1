//! Exact rational scalars and the small combinatorial helpers every other
//! module leans on.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Integer embedding.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator; use [`rat_parse`] for
/// untrusted input.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `[+-]?digits(/digits)?` into a reduced rational.
pub fn rat_parse(text: &str) -> Result<Rational, Error> {
    let bad = || Error::RationalSyntax(text.to_string());
    let s = text.trim();
    let (sign, body) = match s.as_bytes().first() {
        Some(b'-') => (-1, &s[1..]),
        Some(b'+') => (1, &s[1..]),
        _ => (1, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |d: &str| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !den.is_none_or(digits) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(num * sign, den))
}

/// Canonical text form: `n` for integers, `n/d` otherwise.
pub fn rat_to_string(q: &Rational) -> String {
    q.to_string()
}

/// `x (x-1) ... (x-n+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(x: &Rational, n: usize) -> Rational {
    degenerate_falling_factorial(x, n, &Rational::one())
}

/// `x (x-lambda) ... (x-(n-1) lambda)`. At `lambda = 0` this is `x^n`.
pub fn degenerate_falling_factorial(x: &Rational, n: usize, lambda: &Rational) -> Rational {
    let mut acc = Rational::one();
    let mut factor = x.clone();
    for _ in 0..n {
        acc *= &factor;
        factor -= lambda;
    }
    acc
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    Rational::from_integer(factorial_int(n))
}

pub(crate) fn factorial_int(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial_int(n, k))
}

pub(crate) fn binomial_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Pascal rows `0..=n`, used by the EGF convolutions.
pub(crate) fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// `q^e` for a signed exponent. `0^0 = 1`; negative powers of zero are an error.
pub fn pow(q: &Rational, e: i64) -> Result<Rational, Error> {
    if e < 0 && q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(num_traits::pow::Pow::pow(q, e as i32))
}

/// Non-negative integer power.
pub fn powu(q: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= q;
    }
    acc
}

/// `(-1)^e` as a rational.
pub fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Checked division.
pub fn div(a: &Rational, b: &Rational) -> Result<Rational, Error> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Serializes as the canonical string form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatStr(pub Rational);

impl fmt::Display for RatStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl serde::Serialize for RatStr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RatStr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        rat_parse(&s).map(RatStr).map_err(serde::de::Error::custom)
    }
}
