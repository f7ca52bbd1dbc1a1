use num_traits::{One, Zero};

use super::{TruncatedSeries, XPolynomial};
use crate::exact::{int, pascal, Rational};
use crate::{Error, Result};

/// `sum P_n(x) t^n / n!` truncated at order `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    polys: Vec<XPolynomial>,
}

impl BivariateSeries {
    pub fn new(polys: Vec<XPolynomial>) -> Self {
        assert!(!polys.is_empty(), "bivariate series needs at least P_0");
        BivariateSeries { polys }
    }

    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[XPolynomial] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<XPolynomial> {
        self.polys
    }

    /// Specializes `x`, giving a scalar series.
    pub fn eval_x(&self, x: &Rational) -> TruncatedSeries {
        TruncatedSeries::new(self.polys.iter().map(|p| p.eval(x)).collect())
    }

    /// `exp(x log a(t))` for `a_0 = 1`: `P_n(x) = sum_j x^j [t^n/n!] (log a)^j / j!`.
    pub fn exp_xlog(a: &TruncatedSeries) -> Result<Self> {
        if !a.coeff(0).is_one() {
            return Err(Error::ConstantNotOne);
        }
        let order = a.order();
        let log = a.shift_constant(&-Rational::one()).log1p()?;
        let mut table = vec![vec![Rational::zero(); order + 1]; order + 1];
        let mut power = TruncatedSeries::one(order);
        for j in 0..=order {
            if j > 0 {
                power = power.mul(&log)?.scale(&(Rational::one() / int(j as i64)));
            }
            for (n, c) in power.coeffs().iter().enumerate() {
                table[n][j] = c.clone();
            }
        }
        Ok(Self::new(table.into_iter().map(XPolynomial::new).collect()))
    }

    /// Termwise EGF product with a scalar series.
    pub fn scale(&self, s: &TruncatedSeries) -> Result<Self> {
        if s.order() != self.order() {
            return Err(Error::OrderMismatch(self.order(), s.order()));
        }
        let rows = pascal(self.order());
        let polys = rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                (0..=n).fold(XPolynomial::zero(), |acc, k| {
                    let c = s.coeff(k);
                    if c.is_zero() {
                        acc
                    } else {
                        &acc + &self.polys[n - k].scale(&(c * &row[k]))
                    }
                })
            })
            .collect();
        Ok(Self::new(polys))
    }
}

pub fn bivariate_exp_xlog(a: &TruncatedSeries) -> Result<BivariateSeries> {
    BivariateSeries::exp_xlog(a)
}

pub fn bivariate_scale(b: &BivariateSeries, s: &TruncatedSeries) -> Result<BivariateSeries> {
    b.scale(s)
}
