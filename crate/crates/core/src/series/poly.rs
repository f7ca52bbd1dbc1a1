use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::{int, Rational};

/// Dense polynomial in `x`, monomial basis, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct XPolynomial {
    coeffs: Vec<Rational>,
}

impl XPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        XPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        Self::new(coeffs)
    }

    /// `(x)_n` expanded in the monomial basis.
    pub fn falling(n: usize) -> Self {
        Self::degenerate_falling(n, &Rational::one())
    }

    /// `(x)_{n,lambda}` expanded in the monomial basis.
    pub fn degenerate_falling(n: usize, lambda: &Rational) -> Self {
        (0..n).fold(Self::one(), |acc, j| {
            let factor = Self::new(vec![-(lambda * int(j as i64)), Rational::one()]);
            &acc * &factor
        })
    }

    /// `sum_k c_k (x)_k`.
    pub fn from_falling_basis(coeffs: &[Rational]) -> Self {
        let mut out = Self::zero();
        let mut falling = Self::one();
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                falling = &falling * &Self::new(vec![int(1 - k as i64), Rational::one()]);
            }
            if !c.is_zero() {
                out = &out + &falling.scale(c);
            }
        }
        out
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * int(j as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// `p(x + y)`.
    pub fn shift(&self, y: &Rational) -> Self {
        // Horner in the shifted variable.
        let step = Self::new(vec![y.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &step) + &Self::constant(c.clone())
        })
    }
}

impl Add for &XPolynomial {
    type Output = XPolynomial;
    fn add(self, rhs: &XPolynomial) -> XPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        XPolynomial::new((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &XPolynomial {
    type Output = XPolynomial;
    fn sub(self, rhs: &XPolynomial) -> XPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        XPolynomial::new((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &XPolynomial {
    type Output = XPolynomial;
    fn mul(self, rhs: &XPolynomial) -> XPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return XPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        XPolynomial::new(out)
    }
}

impl Neg for &XPolynomial {
    type Output = XPolynomial;
    fn neg(self) -> XPolynomial {
        XPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for XPolynomial {
    type Output = XPolynomial;
    fn add(self, rhs: XPolynomial) -> XPolynomial {
        &self + &rhs
    }
}

impl Sub for XPolynomial {
    type Output = XPolynomial;
    fn sub(self, rhs: XPolynomial) -> XPolynomial {
        &self - &rhs
    }
}

impl Mul for XPolynomial {
    type Output = XPolynomial;
    fn mul(self, rhs: XPolynomial) -> XPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = j == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if j > 0 {
                    write!(f, "*")?;
                }
            }
            match j {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{j}")?,
            }
        }
        Ok(())
    }
}
