//! Truncated formal power series over exact rationals.
//!
//! A [`TruncatedSeries`] of order `N` holds `c_0..=c_N` and stands for
//! `sum c_n t^n / n!`. Binary operations require equal orders.

mod bivariate;
mod poly;

pub use bivariate::{bivariate_exp_xlog, bivariate_scale, BivariateSeries};
pub use poly::XPolynomial;

use num_traits::{One, Zero};

use crate::exact::{factorial, factorial_int, int, pascal, powu, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from EGF coefficients `c_0..=c_N`. An empty vector is
    /// read as the zero series of order 0.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        TruncatedSeries { coeffs }
    }

    /// Builds from ordinary coefficients `sum d_n t^n`.
    pub fn from_ordinary(ogf: Vec<Rational>) -> Self {
        let coeffs = ogf
            .into_iter()
            .enumerate()
            .map(|(n, d)| d * factorial(n))
            .collect();
        Self::new(coeffs)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::zero(); order + 1])
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The series `t`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// `e^{y t}`, whose EGF coefficients are `y^n`.
    pub fn exponential(y: &Rational, order: usize) -> Self {
        Self::new((0..=order).map(|n| powu(y, n)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// EGF coefficient `n`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Ordinary coefficients `c_n / n!`.
    pub fn ordinary(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c / factorial(n))
            .collect()
    }

    /// Drops (or zero-pads) to the given order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Rational::zero());
        Self::new(coeffs)
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), other.order()))
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Adds a constant to `c_0`.
    pub fn shift_constant(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// EGF Cauchy product: `c_n = sum_k C(n,k) a_k b_{n-k}`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let order = self.order();
        let rows = pascal(order);
        let mut out = Vec::with_capacity(order + 1);
        for (n, row) in rows.iter().enumerate() {
            let mut acc = Rational::zero();
            for k in 0..=n {
                let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc += a * b * &row[k];
            }
            out.push(acc);
        }
        Ok(Self::new(out))
    }

    /// Multiplicative inverse; requires `c_0 != 0`.
    pub fn recip(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstant);
        }
        let order = self.order();
        let rows = pascal(order);
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for (n, row) in rows.iter().enumerate().skip(1) {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &self.coeffs[k] * &out[n - k] * &row[k];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self::new(out))
    }

    /// `self^k` by repeated squaring; `self^0 = 1`.
    pub fn pow(&self, mut k: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    fn require_zero_constant(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstant)
        }
    }

    /// `log(1 + a)` via the alternating sum of powers `sum (-1)^{j-1} a^j / j`.
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let order = self.order();
        let mut out = Self::zero(order);
        let mut power = Self::one(order);
        for j in 1..=order {
            power = power.mul(self)?;
            let term = power.scale(&(int(if j % 2 == 1 { 1 } else { -1 }) / int(j as i64)));
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// `exp(a)` for `a_0 = 0`, from `b' = a' b`, i.e.
    /// `b_{n+1} = sum_k C(n,k) a_{k+1} b_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let order = self.order();
        let rows = pascal(order);
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        out.push(Rational::one());
        for n in 0..order {
            let mut acc = Rational::zero();
            for k in 0..=n {
                if self.coeffs[k + 1].is_zero() {
                    continue;
                }
                acc += &self.coeffs[k + 1] * &out[n - k] * &rows[n][k];
            }
            out.push(acc);
        }
        Ok(Self::new(out))
    }

    /// `self(inner(t))` by Horner's rule; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.same_order(inner)?;
        inner.require_zero_constant()?;
        let order = self.order();
        let ogf = self.ordinary();
        let mut acc = Self::constant(ogf[order].clone(), order);
        for j in (0..order).rev() {
            acc = acc.mul(inner)?.shift_constant(&ogf[j]);
        }
        Ok(acc)
    }

    /// Compositional inverse of a delta series, by Lagrange inversion:
    /// with `h(s) = s / a(s)` in ordinary form, `[t^n] b = [s^{n-1}] h^n / n`.
    pub fn reversion(&self) -> Result<Self> {
        let order = self.order();
        if !self.coeffs[0].is_zero() || order == 0 || self.coeffs[1].is_zero() {
            if order == 0 && self.coeffs[0].is_zero() {
                return Ok(Self::zero(0));
            }
            return Err(Error::NotDeltaSeries);
        }
        let ogf = self.ordinary();
        // a(s)/s truncated to s^{order-1}
        let quotient: Vec<Rational> = ogf[1..].to_vec();
        let h = ogf_recip(&quotient);
        let mut out = vec![Rational::zero(); order + 1];
        let mut power = h.clone();
        for n in 1..=order {
            if n > 1 {
                power = ogf_mul(&power, &h);
            }
            let lagrange = &power[n - 1] / int(n as i64);
            out[n] = lagrange * Rational::from_integer(factorial_int(n));
        }
        Ok(Self::new(out))
    }

    /// Formal derivative in `t` (EGF: shift left), keeping the order.
    pub fn derivative(&self) -> Self {
        let mut coeffs: Vec<Rational> = self.coeffs[1..].to_vec();
        coeffs.push(Rational::zero());
        Self::new(coeffs)
    }
}

fn ogf_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().min(b.len());
    let mut out = vec![Rational::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn ogf_recip(a: &[Rational]) -> Vec<Rational> {
    let inv0 = a[0].recip();
    let mut out: Vec<Rational> = Vec::with_capacity(a.len());
    out.push(inv0.clone());
    for n in 1..a.len() {
        let mut acc = Rational::zero();
        for k in 1..=n {
            if !a[k].is_zero() {
                acc += &a[k] * &out[n - k];
            }
        }
        out.push(-acc * &inv0);
    }
    out
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

pub fn series_inverse_mul(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.recip()
}

pub fn series_log1p(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.log1p()
}

pub fn series_exp(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.exp()
}

pub fn series_compose(outer: &TruncatedSeries, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
    outer.compose(inner)
}

pub fn series_reversion(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.reversion()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn s(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(v.iter().map(|&c| int(c)).collect())
    }

    fn exp_t(order: usize) -> TruncatedSeries {
        TruncatedSeries::exponential(&int(1), order)
    }

    #[test]
    fn products() {
        let e = exp_t(8);
        let sq = e.mul(&e).unwrap();
        for n in 0..=8 {
            assert_eq!(sq.coeff(n), int(1 << n));
        }
        let t = TruncatedSeries::identity(5);
        assert_eq!(t.mul(&t).unwrap(), s(&[0, 0, 2, 0, 0, 0]));
        assert_eq!(
            t.mul(&TruncatedSeries::identity(4)),
            Err(Error::OrderMismatch(5, 4))
        );
    }

    #[test]
    fn squared_exp_minus_one_gives_second_kind_column() {
        // (e^t - 1)^2 / 2! has EGF coefficients S_2(n, 2) = 2^{n-1} - 1.
        let n = 10;
        let e1 = exp_t(n).shift_constant(&int(-1));
        let col = e1.pow(2).scale(&ratio(1, 2));
        for m in 0..=n {
            let expect = if m < 2 { 0 } else { (1 << (m - 1)) - 1 };
            assert_eq!(col.coeff(m), int(expect));
        }
    }

    #[test]
    fn reciprocals() {
        assert_eq!(
            TruncatedSeries::constant(int(2), 3).recip().unwrap(),
            TruncatedSeries::constant(ratio(1, 2), 3)
        );
        let inv = exp_t(7).recip().unwrap();
        for n in 0..=7 {
            assert_eq!(inv.coeff(n), int(if n % 2 == 0 { 1 } else { -1 }));
        }
        let a = s(&[1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(a.mul(&a.recip().unwrap()).unwrap(), TruncatedSeries::one(6));
        assert_eq!(s(&[0, 1]).recip(), Err(Error::ZeroConstant));
    }

    #[test]
    fn logarithms() {
        let n = 9;
        let e1 = exp_t(n).shift_constant(&int(-1));
        assert_eq!(e1.log1p().unwrap(), TruncatedSeries::identity(n));
        // log(1+t): c_n = (-1)^{n-1} (n-1)!
        let l = TruncatedSeries::identity(n).log1p().unwrap();
        assert_eq!(l.coeff(0), int(0));
        for m in 1..=n {
            let f = factorial(m - 1);
            let expect = if m % 2 == 1 { f } else { -f };
            assert_eq!(l.coeff(m), expect);
        }
        assert_eq!(TruncatedSeries::zero(4).log1p().unwrap(), TruncatedSeries::zero(4));
        assert_eq!(exp_t(3).log1p(), Err(Error::NonzeroConstant));
    }

    #[test]
    fn exponentials() {
        assert_eq!(TruncatedSeries::identity(6).exp().unwrap(), exp_t(6));
        assert_eq!(TruncatedSeries::zero(6).exp().unwrap(), TruncatedSeries::one(6));
        assert_eq!(exp_t(2).exp(), Err(Error::NonzeroConstant));
    }

    #[test]
    fn compositions() {
        let n = 8;
        let inner = s(&[0, 3, -1, 4, 0, 2, 1, -5, 7]);
        let outer = s(&[2, -1, 5, 0, 1, 1, 3, 0, -2]);
        let t = TruncatedSeries::identity(n);
        assert_eq!(t.compose(&inner).unwrap(), inner);
        assert_eq!(outer.compose(&t).unwrap(), outer);
        let e1 = exp_t(n).shift_constant(&int(-1));
        let log = t.log1p().unwrap();
        assert_eq!(e1.compose(&log).unwrap(), t);
        assert_eq!(outer.compose(&outer), Err(Error::NonzeroConstant));
    }

    #[test]
    fn reversions() {
        let n = 10;
        let t = TruncatedSeries::identity(n);
        assert_eq!(t.reversion().unwrap(), t);
        let e1 = exp_t(n).shift_constant(&int(-1));
        assert_eq!(e1.reversion().unwrap(), t.log1p().unwrap());
        assert_eq!(s(&[0, 0, 1]).reversion(), Err(Error::NotDeltaSeries));
        assert_eq!(s(&[1, 1, 1]).reversion(), Err(Error::NotDeltaSeries));
    }
}
