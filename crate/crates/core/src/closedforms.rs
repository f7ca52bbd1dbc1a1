//! Closed-form expansions of `(x)_n` and `x^n` in the `r = 1` bases, and the
//! model-specific closed forms of the first-kind tables for the Bernoulli,
//! Poisson, geometric and exponential models.
//!
//! The expansion shapes are
//!
//! ```text
//! (x)_n: a_r = S1(n,r) + n/(1-u) S1(n-1,r)
//! x^n:   a_r = sum_{j=r}^{n} S1(j,r) S_2(n,j)
//!            + 1/(1-u) sum_{k=r}^{n-1} sum_{j=r}^{k} C(n,k) S1(j,r) S_2(k,j)
//! ```
//!
//! with `S1` the probabilistic (degenerate) first-kind numbers. The second
//! sum of the monomial shape is empty when `r = n`.

use num_traits::{One, Zero};

use crate::exact::{binomial, falling_factorial, powu, sign, Rational};
use crate::rvmodels::{ModelKind, MomentModel};
use crate::stirling::{
    classical_s1, classical_s2, degenerate_s1, probabilistic_degenerate_s1, StirlingFamily,
    StirlingTable,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// `(x)_n`
    Falling(usize),
    /// `x^n`
    Monomial(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormResult {
    pub target: Target,
    /// `true` for the `h_{n,lambda}^Y` basis.
    pub degenerate: bool,
    pub coefficients: Vec<Rational>,
}

/// `(x)_n` shape for any first-kind entry function.
pub fn falling_shape(s1: impl Fn(usize, usize) -> Rational, u: &Rational, n: usize) -> Vec<Rational> {
    let scale = Rational::from_integer(n.into()) / (Rational::one() - u);
    (0..=n)
        .map(|r| {
            let head = s1(n, r);
            // S1(n-1, n) = 0, and the n = 0 term carries a factor n.
            if n == 0 || r == n {
                head
            } else {
                head + &scale * s1(n - 1, r)
            }
        })
        .collect()
}

/// `x^n` shape for any first-kind entry function.
pub fn monomial_shape(s1: impl Fn(usize, usize) -> Rational, u: &Rational, n: usize) -> Vec<Rational> {
    let s2 = classical_s2(n);
    let inv = (Rational::one() - u).recip();
    (0..=n)
        .map(|r| {
            let first: Rational = (r..=n).map(|j| s1(j, r) * s2.get(n, j)).sum();
            let mut second = Rational::zero();
            for k in r..n {
                let inner: Rational = (r..=k).map(|j| s1(j, r) * s2.get(k, j)).sum();
                second += binomial(n, k) * inner;
            }
            first + second * &inv
        })
        .collect()
}

/// The model's first-kind entries in closed form, before tabulation.
struct ClosedFirstKind {
    kind: ModelKind,
    lambda: Rational,
    s1: StirlingTable,
    s1_lambda: StirlingTable,
    s2: StirlingTable,
}

impl ClosedFirstKind {
    fn new(m: &MomentModel, lambda: &Rational, nmax: usize) -> Result<Self> {
        match m.kind() {
            ModelKind::Bernoulli { .. }
            | ModelKind::Poisson { .. }
            | ModelKind::Geometric { .. }
            | ModelKind::Exponential { .. } => {}
            _ => return Err(Error::UnsupportedModel(m.name().into())),
        }
        Ok(ClosedFirstKind {
            kind: m.kind().clone(),
            lambda: lambda.clone(),
            s1: classical_s1(nmax),
            s1_lambda: degenerate_s1(nmax, lambda),
            s2: classical_s2(nmax),
        })
    }

    fn entry(&self, n: usize, k: usize) -> Rational {
        if k > n {
            return Rational::zero();
        }
        let lam = &self.lambda;
        // S_{1,lambda} reduces to S_1 at lambda = 0.
        let s1l = |a: usize, b: usize| self.s1_lambda.get(a, b);
        let nn = Rational::from_integer(n.into());
        match &self.kind {
            ModelKind::Bernoulli { p } => powu(&p.recip(), n) * s1l(n, k),
            ModelKind::Poisson { alpha } => {
                let inv = alpha.recip();
                (k..=n)
                    .map(|l| powu(&inv, l) * s1l(l, k) * self.s1.get(n, l))
                    .sum()
            }
            ModelKind::Geometric { p } => {
                let pm1 = p - Rational::one();
                (k..=n)
                    .map(|l| {
                        binomial(n, l)
                            * falling_factorial(&(&nn - Rational::one()), n - l)
                            * powu(p, l)
                            * powu(&pm1, n - l)
                            * s1l(l, k)
                    })
                    .sum()
            }
            ModelKind::Exponential { alpha } if lam.is_zero() => {
                sign(n - k)
                    * binomial(n, k)
                    * falling_factorial(&(&nn - Rational::one()), n - k)
                    * powu(alpha, k)
            }
            ModelKind::Exponential { alpha } => (k..=n)
                .map(|l| {
                    binomial(n, l)
                        * sign(n - l)
                        * falling_factorial(&(&nn - Rational::one()), n - l)
                        * powu(alpha, l)
                        * powu(lam, l - k)
                        * self.s2.get(l, k)
                })
                .sum(),
            ModelKind::Unit | ModelKind::Custom { .. } => unreachable!("rejected in new"),
        }
    }
}

/// Model-specific closed form of `S_1^Y` (`lambda = 0`) or `S_{1,lambda}^Y`.
/// Only the Bernoulli, Poisson, geometric and exponential models have one.
pub fn model_closed_s1(m: &MomentModel, lambda: &Rational, nmax: usize) -> Result<StirlingTable> {
    let closed = ClosedFirstKind::new(m, lambda, nmax)?;
    let rows = (0..=nmax)
        .map(|n| (0..=n).map(|k| closed.entry(n, k)).collect())
        .collect();
    let family = if lambda.is_zero() { StirlingFamily::S1Y } else { StirlingFamily::S1YLambda };
    Ok(StirlingTable::from_parts(family, lambda, m, rows))
}

/// First-kind entries for the closed forms: the model's own closed form when
/// one exists, otherwise the series-reversion table.
fn first_kind_source(
    m: &MomentModel,
    lambda: &Rational,
    n: usize,
) -> Result<Box<dyn Fn(usize, usize) -> Rational>> {
    match ClosedFirstKind::new(m, lambda, n) {
        Ok(closed) => Ok(Box::new(move |a, b| closed.entry(a, b))),
        Err(Error::UnsupportedModel(_)) => {
            let t = probabilistic_degenerate_s1(m, lambda, n)?;
            Ok(Box::new(move |a, b| t.get(a, b)))
        }
        Err(e) => Err(e),
    }
}

fn check_u(u: &Rational) -> Result<()> {
    if u.is_one() {
        Err(Error::UEqualsOne)
    } else {
        Ok(())
    }
}

/// Coefficients of `(x)_n` in the `H^Y` (`lambda = 0`) or `h_lambda^Y` basis.
pub fn closed_falling(m: &MomentModel, u: &Rational, lambda: &Rational, n: usize) -> Result<ClosedFormResult> {
    check_u(u)?;
    let s1 = first_kind_source(m, lambda, n)?;
    Ok(ClosedFormResult {
        target: Target::Falling(n),
        degenerate: !lambda.is_zero(),
        coefficients: falling_shape(s1, u, n),
    })
}

/// Coefficients of `x^n` in the `H^Y` (`lambda = 0`) or `h_lambda^Y` basis.
pub fn closed_monomial(m: &MomentModel, u: &Rational, lambda: &Rational, n: usize) -> Result<ClosedFormResult> {
    check_u(u)?;
    let s1 = first_kind_source(m, lambda, n)?;
    Ok(ClosedFormResult {
        target: Target::Monomial(n),
        degenerate: !lambda.is_zero(),
        coefficients: monomial_shape(s1, u, n),
    })
}
