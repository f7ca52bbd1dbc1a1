//! A power series `f(t) = sum a_k t^k/k!` read as the differential operator
//! `sum (a_k/k!) D^k` on polynomials, and as the linear functional
//! `<f(t) | p(x)> = (f(t) p)(0)`.

use num_traits::Zero;

use crate::exact::{binomial, factorial, int, sign, Rational};
use crate::families::PolynomialFamily;
use crate::series::{TruncatedSeries, XPolynomial};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSeries(pub TruncatedSeries);

impl From<TruncatedSeries> for OperatorSeries {
    fn from(s: TruncatedSeries) -> Self {
        OperatorSeries(s)
    }
}

impl OperatorSeries {
    pub fn series(&self) -> &TruncatedSeries {
        &self.0
    }

    /// `f(t) p(x) = sum_k (a_k/k!) p^{(k)}(x)`.
    pub fn apply(&self, p: &XPolynomial) -> Result<XPolynomial> {
        let Some(deg) = p.degree() else {
            return Ok(XPolynomial::zero());
        };
        if self.0.order() < deg {
            return Err(Error::InsufficientOrder { needed: deg, have: self.0.order() });
        }
        let mut out = XPolynomial::zero();
        let mut deriv = p.clone();
        for k in 0..=deg {
            if k > 0 {
                deriv = deriv.derivative();
            }
            let a = self.0.coeff(k);
            if !a.is_zero() {
                out = &out + &deriv.scale(&(a / factorial(k)));
            }
        }
        Ok(out)
    }

    /// `<f(t) | p(x)>`.
    pub fn pair(&self, p: &XPolynomial) -> Result<Rational> {
        Ok(self.apply(p)?.eval(&Rational::zero()))
    }
}

pub fn apply_operator(f: &OperatorSeries, p: &XPolynomial) -> Result<XPolynomial> {
    f.apply(p)
}

pub fn pair_functional(f: &OperatorSeries, p: &XPolynomial) -> Result<Rational> {
    f.pair(p)
}

/// `Delta^j p(x) = sum_i C(j,i) (-1)^{j-i} p(x+i)`; each shift is the operator
/// `e^{it}`.
pub fn forward_difference(p: &XPolynomial, j: usize) -> XPolynomial {
    let order = p.degree().unwrap_or(0);
    (0..=j).fold(XPolynomial::zero(), |acc, i| {
        let shift = OperatorSeries(TruncatedSeries::exponential(&int(i as i64), order));
        let shifted = shift.apply(p).expect("operator order covers degree");
        &acc + &shifted.scale(&(binomial(j, i) * sign(j - i)))
    })
}

/// `Delta^0 p, ..., Delta^jmax p`, applying the operator `e^t - 1` repeatedly.
pub fn forward_differences(p: &XPolynomial, jmax: usize) -> Vec<XPolynomial> {
    let order = p.degree().unwrap_or(0);
    let delta = OperatorSeries(TruncatedSeries::exponential(&int(1), order).shift_constant(&int(-1)));
    let mut out = Vec::with_capacity(jmax + 1);
    out.push(p.clone());
    for j in 1..=jmax {
        let next = delta.apply(&out[j - 1]).expect("operator order covers degree");
        out.push(next);
    }
    out
}

/// `<op | P_n>` for a family member; the Sheffer property says this is
/// `n! delta_{n,k}` when `op = g(t)^r f(t)^k`.
pub fn sheffer_orthonormality_check(
    op: &OperatorSeries,
    family: &PolynomialFamily,
    n: usize,
) -> Result<Rational> {
    op.pair(&family.polys()[n])
}
