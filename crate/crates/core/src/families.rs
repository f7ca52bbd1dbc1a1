//! Probabilistic (degenerate, order-`r`) Frobenius–Euler polynomials,
//! generated from
//!
//! ```text
//! ((1-u) / (A(t) - u))^r * A(t)^x = sum_n P_n(x) t^n/n!
//! ```
//!
//! with `A(t) = E[e^{Yt}]`, or `E[e_lambda^Y(t)]` when `lambda != 0`. The unit
//! model gives the classical families; `r = 0` gives `sum_k S_2^Y(n,k) (x)_k`.
//!
//! As a Sheffer sequence the family is attached to `(g(t)^r, f(t))` with
//! `g(t) = (e^t - u)/(1 - u)` and `f` the compositional inverse of `log A(t)`.

use num_traits::{One, Zero};

use crate::exact::Rational;
use crate::rvmodels::MomentModel;
use crate::series::{BivariateSeries, TruncatedSeries, XPolynomial};
use crate::stirling::probabilistic_degenerate_s2;
use crate::umbral::OperatorSeries;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    model: MomentModel,
    u: Rational,
    lambda: Rational,
    order_r: usize,
}

impl FamilySpec {
    pub fn new(model: MomentModel, u: Rational, lambda: Rational, order_r: usize) -> Result<Self> {
        if u.is_one() {
            return Err(Error::UEqualsOne);
        }
        Ok(FamilySpec { model, u, lambda, order_r })
    }

    /// Unit model, `lambda = 0`, `r = 1`: the Frobenius–Euler polynomials `H_n(x|u)`.
    pub fn classical(u: Rational) -> Result<Self> {
        Self::new(MomentModel::unit(), u, Rational::zero(), 1)
    }

    pub fn model(&self) -> &MomentModel {
        &self.model
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn order_r(&self) -> usize {
        self.order_r
    }

    pub fn is_degenerate(&self) -> bool {
        !self.lambda.is_zero()
    }

    /// Same spec with a different `r`.
    pub fn with_order(&self, order_r: usize) -> Self {
        FamilySpec { order_r, ..self.clone() }
    }

    /// Same spec with a different `lambda`.
    pub fn with_lambda(&self, lambda: Rational) -> Self {
        FamilySpec { lambda, ..self.clone() }
    }

    /// `A(t)`.
    pub fn base_series(&self, order: usize) -> Result<TruncatedSeries> {
        self.model.degenerate_mgf_series(&self.lambda, order)
    }

    /// `fbar(t) = log A(t)`.
    pub fn log_base(&self, order: usize) -> Result<TruncatedSeries> {
        self.base_series(order)?.shift_constant(&-Rational::one()).log1p()
    }

    /// The delta series `f(t)`, compositional inverse of `log A(t)`.
    pub fn delta_series(&self, order: usize) -> Result<TruncatedSeries> {
        self.log_base(order)?.reversion()
    }

    /// `g(t) = (e^t - u)/(1 - u)`.
    pub fn g_series(&self, order: usize) -> TruncatedSeries {
        let one_minus_u = Rational::one() - &self.u;
        TruncatedSeries::exponential(&Rational::one(), order)
            .shift_constant(&-&self.u)
            .scale(&one_minus_u.recip())
    }

    /// `g(t)^r f(t)^k` as an operator, truncated at `order`.
    pub fn sheffer_operator(&self, k: usize, order: usize) -> Result<OperatorSeries> {
        let g = self.g_series(order).pow(self.order_r);
        let f = self.delta_series(order)?.pow(k);
        Ok(OperatorSeries(g.mul(&f)?))
    }

    /// `((1-u)/(A(t)-u))^r`.
    pub fn prefactor(&self, order: usize) -> Result<TruncatedSeries> {
        let a = self.base_series(order)?;
        let one_minus_u = Rational::one() - &self.u;
        let single = a.shift_constant(&-&self.u).recip()?.scale(&one_minus_u);
        Ok(single.pow(self.order_r))
    }
}

/// `P_0 ..= P_nmax` for one spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialFamily {
    spec: FamilySpec,
    polys: Vec<XPolynomial>,
}

impl PolynomialFamily {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn nmax(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[XPolynomial] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> &XPolynomial {
        &self.polys[n]
    }

    /// `P_n(0)` for every `n`.
    pub fn numbers(&self) -> Vec<Rational> {
        self.polys.iter().map(|p| p.eval(&Rational::zero())).collect()
    }

    /// `sum_k c_k P_k`.
    pub fn combine(&self, coeffs: &[Rational]) -> XPolynomial {
        assert!(coeffs.len() <= self.polys.len(), "more coefficients than family members");
        coeffs
            .iter()
            .zip(&self.polys)
            .filter(|(c, _)| !c.is_zero())
            .fold(XPolynomial::zero(), |acc, (c, p)| &acc + &p.scale(c))
    }
}

/// Coefficients of the generating function through `t^nmax`.
pub fn build_family(spec: &FamilySpec, nmax: usize) -> Result<PolynomialFamily> {
    let a = spec.base_series(nmax)?;
    let powers = BivariateSeries::exp_xlog(&a)?;
    let polys = powers.scale(&spec.prefactor(nmax)?)?.into_polys();
    Ok(PolynomialFamily { spec: spec.clone(), polys })
}

/// Per-`n` outcome of an identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub results: Vec<bool>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|&ok| ok)
    }

    pub fn failures(&self) -> Vec<usize> {
        self.results
            .iter()
            .enumerate()
            .filter(|(_, ok)| !**ok)
            .map(|(n, _)| n)
            .collect()
    }
}

/// `P_n(x+1) - u P_n(x) = (1-u) sum_k S_{2,lambda}^Y(n,k) (x)_k` for an
/// `r = 1` family, plus the `x = 0` specialization `(1-u) delta_{n,0}`.
pub fn family_boundary_check(f: &PolynomialFamily) -> Result<IdentityReport> {
    let spec = f.spec();
    if spec.order_r() != 1 {
        return Err(Error::SpecMismatch(format!(
            "boundary identity needs r = 1, got r = {}",
            spec.order_r()
        )));
    }
    let s2 = probabilistic_degenerate_s2(spec.model(), spec.lambda(), f.nmax())?;
    let one_minus_u = Rational::one() - spec.u();
    let one = Rational::one();
    let results = f
        .polys()
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let lhs = &p.shift(&one) - &p.scale(spec.u());
            let rhs = XPolynomial::from_falling_basis(&s2.rows()[n]).scale(&one_minus_u);
            let at_zero = lhs.eval(&Rational::zero());
            let delta = if n == 0 { one_minus_u.clone() } else { Rational::zero() };
            lhs == rhs && at_zero == delta
        })
        .collect();
    Ok(IdentityReport { name: "boundary", results })
}

/// `P^{(r)}_n(x+1) - u P^{(r)}_n(x) = (1-u) P^{(r-1)}_n(x)`.
pub fn order_reduction_check(
    f_r: &PolynomialFamily,
    f_rminus1: &PolynomialFamily,
) -> Result<IdentityReport> {
    let (a, b) = (f_r.spec(), f_rminus1.spec());
    if a.order_r() == 0 || a.with_order(a.order_r() - 1) != *b {
        return Err(Error::SpecMismatch("families must differ only by r -> r-1".into()));
    }
    let one_minus_u = Rational::one() - a.u();
    let n = f_r.nmax().min(f_rminus1.nmax());
    let results = (0..=n)
        .map(|i| {
            let p = f_r.get(i);
            let lhs = &p.shift(&Rational::one()) - &p.scale(a.u());
            lhs == f_rminus1.get(i).scale(&one_minus_u)
        })
        .collect();
    Ok(IdentityReport { name: "order-reduction", results })
}

/// `f(t) P_n = n P_{n-1}`, with `P_{-1} = 0`.
pub fn sheffer_recurrence_check(f: &PolynomialFamily) -> Result<IdentityReport> {
    let op = OperatorSeries(f.spec().delta_series(f.nmax())?);
    let results = f
        .polys()
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let lhs = op.apply(p)?;
            let rhs = if n == 0 {
                XPolynomial::zero()
            } else {
                f.get(n - 1).scale(&Rational::from_integer(n.into()))
            };
            Ok(lhs == rhs)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(IdentityReport { name: "sheffer-recurrence", results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, powu, ratio};
    use crate::stirling::probabilistic_s2;

    fn frobenius_euler_numbers(u: &Rational) -> Vec<Rational> {
        let d = Rational::one() - u;
        vec![
            int(1),
            -d.recip(),
            (int(1) + u) / powu(&d, 2),
            -(u * u + int(4) * u + int(1)) / powu(&d, 3),
        ]
    }

    #[test]
    fn classical_numbers() {
        for u in [ratio(1, 2), int(-1), int(3), ratio(-2, 7)] {
            let fam = build_family(&FamilySpec::classical(u.clone()).unwrap(), 3).unwrap();
            assert_eq!(fam.numbers(), frobenius_euler_numbers(&u), "u = {u}");
        }
        let fam = build_family(&FamilySpec::classical(ratio(1, 2)).unwrap(), 3).unwrap();
        assert_eq!(fam.numbers(), vec![int(1), int(-2), int(6), int(-26)]);
    }

    #[test]
    fn euler_polynomial() {
        let fam = build_family(&FamilySpec::classical(int(-1)).unwrap(), 2).unwrap();
        assert_eq!(fam.get(1), &XPolynomial::new(vec![ratio(-1, 2), int(1)]));
    }

    #[test]
    fn u_one_rejected() {
        assert_eq!(FamilySpec::classical(int(1)), Err(Error::UEqualsOne));
    }

    #[test]
    fn order_zero_family() {
        let m = MomentModel::poisson(ratio(3, 2)).unwrap();
        let spec = FamilySpec::new(m.clone(), ratio(1, 2), int(0), 0).unwrap();
        let fam = build_family(&spec, 8).unwrap();
        let s2 = probabilistic_s2(&m, 8).unwrap();
        for n in 0..=8 {
            assert_eq!(fam.get(n), &XPolynomial::from_falling_basis(&s2.rows()[n]));
            let want = if n == 0 { int(1) } else { int(0) };
            assert_eq!(fam.get(n).eval(&int(0)), want);
        }
    }

    #[test]
    fn degrees_and_leading_terms() {
        let m = MomentModel::exponential(int(3)).unwrap();
        for r in 0..3 {
            let spec = FamilySpec::new(m.clone(), int(-1), ratio(1, 4), r).unwrap();
            let fam = build_family(&spec, 8).unwrap();
            for (n, p) in fam.polys().iter().enumerate() {
                assert_eq!(p.degree(), Some(n));
                assert_eq!(p.leading_coeff(), powu(&m.mean(), n));
            }
        }
    }

    #[test]
    fn lambda_zero_matches() {
        let m = MomentModel::geometric(ratio(1, 3)).unwrap();
        let spec = FamilySpec::new(m, ratio(1, 2), int(0), 2).unwrap();
        let a = build_family(&spec, 7).unwrap();
        let b = build_family(&spec.with_lambda(int(0)), 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn identities_hold() {
        let m = MomentModel::exponential(int(3)).unwrap();
        let spec = FamilySpec::new(m, ratio(1, 2), int(0), 1).unwrap();
        let fam = build_family(&spec, 8).unwrap();
        assert!(family_boundary_check(&fam).unwrap().passed());
        assert!(sheffer_recurrence_check(&fam).unwrap().passed());
        let fam0 = build_family(&spec.with_order(0), 8).unwrap();
        assert!(order_reduction_check(&fam, &fam0).unwrap().passed());
        assert!(order_reduction_check(&fam0, &fam).is_err());
        let fam2 = build_family(&spec.with_order(2), 8).unwrap();
        assert!(family_boundary_check(&fam2).is_err());
    }

    #[test]
    fn unit_model_recurrence_is_derivative() {
        let fam = build_family(&FamilySpec::classical(int(3)).unwrap(), 6).unwrap();
        for n in 1..=6 {
            assert_eq!(
                fam.get(n).derivative(),
                fam.get(n - 1).scale(&int(n as i64))
            );
        }
    }
}
