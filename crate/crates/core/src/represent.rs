//! Expansion of an arbitrary polynomial in a probabilistic Frobenius–Euler
//! basis, through every closed coefficient formula, and reconstruction from
//! the coefficients.
//!
//! For the `r = 1` bases the coefficients are driven by the first-kind table
//! `S_{1,lambda}^Y` (which is `S_1^Y` at `lambda = 0`) applied to
//! `a(x) = p(x+1) - u p(x)`:
//!
//! 1. `a_r = 1/(1-u) sum_{j>=r} S1(j,r)/j! (Delta^j p(1) - u Delta^j p(0))`
//! 2. `a_r = 1/(1-u) sum_{k>=r} sum_{j=r}^{k} S1(j,r) S_2(k,j)/k! (p^{(k)}(1) - u p^{(k)}(0))`
//! 3. `a_r = 1/(1-u) sum_{j>=r} sum_{i<=j} (-1)^{j-i} C(j,i)/j! S1(j,r) (p(i+1) - u p(i))`
//!
//! For order `r` the coefficients are `a_k = <g(t)^r f(t)^k | p> / k!`,
//! and three further forms come from expanding `g(t)^r` as a combination of
//! shifts, of forward differences, and of derivatives.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::exact::{binomial, factorial, int, powu, Rational};
use crate::families::{build_family, FamilySpec, PolynomialFamily};
use crate::series::{TruncatedSeries, XPolynomial};
use crate::stirling::{classical_s2, probabilistic_degenerate_s1, StirlingTable};
use crate::umbral::{forward_differences, OperatorSeries};
use crate::{Error, Result};

/// Which basis family the coefficient formula targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// `H_n^Y(x|u)`: `r = 1`, `lambda = 0`.
    Standard,
    /// `h_{n,lambda}^Y(x|u)`: `r = 1`, any `lambda`.
    Degenerate,
    /// `H_n^{Y,(r)}` / `h_{n,lambda}^{Y,(r)}`: any `r`, any `lambda`.
    HigherOrder,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [Theorem::Standard, Theorem::Degenerate, Theorem::HigherOrder];

    /// Command-line / export code.
    pub fn code(self) -> &'static str {
        match self {
            Theorem::Standard => "31",
            Theorem::Degenerate => "33",
            Theorem::HigherOrder => "4",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.code() == code)
    }

    /// Number of coefficient formulas.
    pub fn variants(self) -> usize {
        match self {
            Theorem::Standard | Theorem::Degenerate => 3,
            Theorem::HigherOrder => 4,
        }
    }

    pub fn formulas(self) -> impl Iterator<Item = Formula> {
        (1..=self.variants()).map(move |variant| Formula { theorem: self, variant })
    }
}

/// A theorem plus a 1-based formula index; serialized as `thm31-2` etc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Formula {
    theorem: Theorem,
    variant: usize,
}

impl Formula {
    pub fn new(theorem: Theorem, variant: usize) -> Result<Self> {
        if variant == 0 || variant > theorem.variants() {
            return Err(Error::InvalidParameter(format!(
                "formula {variant} does not exist for theorem {}",
                theorem.code()
            )));
        }
        Ok(Formula { theorem, variant })
    }

    pub fn theorem(self) -> Theorem {
        self.theorem
    }

    pub fn variant(self) -> usize {
        self.variant
    }

    pub fn all() -> impl Iterator<Item = Formula> {
        Theorem::ALL.into_iter().flat_map(Theorem::formulas)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "thm{}-{}", self.theorem.code(), self.variant)
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown formula tag {s:?}"));
        let rest = s.strip_prefix("thm").ok_or_else(bad)?;
        let (thm, var) = rest.split_once('-').ok_or_else(bad)?;
        let theorem = Theorem::from_code(thm).ok_or_else(bad)?;
        let variant = var.parse().map_err(|_| bad())?;
        Formula::new(theorem, variant)
    }
}

/// Coefficients `a_0..a_n` with `p = sum a_k P_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisExpansion {
    pub spec: FamilySpec,
    pub coefficients: Vec<Rational>,
    pub formula: Formula,
}

/// Precomputed tables for one basis and degree bound; expands any polynomial
/// of degree `<= degree`.
#[derive(Debug, Clone)]
pub struct Representer {
    spec: FamilySpec,
    degree: usize,
    s1: StirlingTable,
    s2: StirlingTable,
    /// `f(t)^k`, `k = 0..=degree`.
    f_powers: Vec<OperatorSeries>,
    /// `g(t)^r f(t)^k`.
    gf_powers: Vec<OperatorSeries>,
    family: PolynomialFamily,
}

impl Representer {
    pub fn new(spec: &FamilySpec, degree: usize) -> Result<Self> {
        let s1 = probabilistic_degenerate_s1(spec.model(), spec.lambda(), degree)?;
        let s2 = classical_s2(degree);
        let f = spec.delta_series(degree)?;
        let g_r = spec.g_series(degree).pow(spec.order_r());
        let mut f_powers = Vec::with_capacity(degree + 1);
        let mut gf_powers = Vec::with_capacity(degree + 1);
        let mut power = TruncatedSeries::one(degree);
        for k in 0..=degree {
            if k > 0 {
                power = power.mul(&f)?;
            }
            gf_powers.push(OperatorSeries(g_r.mul(&power)?));
            f_powers.push(OperatorSeries(power.clone()));
        }
        let family = build_family(spec, degree)?;
        Ok(Representer { spec: spec.clone(), degree, s1, s2, f_powers, gf_powers, family })
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn family(&self) -> &PolynomialFamily {
        &self.family
    }

    /// The first-kind table driving the `r = 1` formulas.
    pub fn first_kind(&self) -> &StirlingTable {
        &self.s1
    }

    fn check(&self, p: &XPolynomial, formula: Formula) -> Result<usize> {
        let n = p.degree().unwrap_or(0);
        if n > self.degree {
            return Err(Error::InvalidParameter(format!(
                "polynomial degree {n} exceeds prepared degree {}",
                self.degree
            )));
        }
        let spec = &self.spec;
        match formula.theorem() {
            Theorem::Standard if spec.order_r() != 1 || spec.is_degenerate() => {
                Err(Error::SpecMismatch("this formula needs r = 1 and lambda = 0".into()))
            }
            Theorem::Degenerate if spec.order_r() != 1 => {
                Err(Error::SpecMismatch("this formula needs r = 1".into()))
            }
            _ => Ok(n),
        }
    }

    pub fn expand(&self, p: &XPolynomial, formula: Formula) -> Result<BasisExpansion> {
        let n = self.check(p, formula)?;
        let coefficients = match (formula.theorem(), formula.variant()) {
            (Theorem::HigherOrder, 1) => self.operator_form(p, n)?,
            (Theorem::HigherOrder, 2) => self.shift_form(p, n)?,
            (Theorem::HigherOrder, 3) => self.difference_operator_form(p, n)?,
            (Theorem::HigherOrder, _) => self.derivative_operator_form(p, n)?,
            (_, 1) => self.difference_form(p, n),
            (_, 2) => self.derivative_form(p, n),
            _ => self.point_value_form(p, n),
        };
        Ok(BasisExpansion { spec: self.spec.clone(), coefficients, formula })
    }

    /// `sum_k a_k P_k`.
    pub fn reconstruct(&self, e: &BasisExpansion) -> Result<XPolynomial> {
        if e.spec != self.spec {
            return Err(Error::SpecMismatch("expansion belongs to another basis".into()));
        }
        if e.coefficients.len() > self.degree + 1 {
            return Err(Error::InvalidParameter("more coefficients than prepared degree".into()));
        }
        Ok(self.family.combine(&e.coefficients))
    }

    fn inv_one_minus_u(&self) -> Rational {
        (Rational::one() - self.spec.u()).recip()
    }

    /// `sum_{j=r}^{n} S1(j,r) w_j`, scaled by `1/(1-u)`.
    fn contract_first_kind(&self, weights: &[Rational], n: usize) -> Vec<Rational> {
        let scale = self.inv_one_minus_u();
        (0..=n)
            .map(|r| {
                let sum: Rational = (r..=n).map(|j| self.s1.get(j, r) * &weights[j]).sum();
                sum * &scale
            })
            .collect()
    }

    fn difference_form(&self, p: &XPolynomial, n: usize) -> Vec<Rational> {
        let (one, zero, u) = (Rational::one(), Rational::zero(), self.spec.u());
        let weights: Vec<Rational> = forward_differences(p, n)
            .iter()
            .enumerate()
            .map(|(j, d)| (d.eval(&one) - u * d.eval(&zero)) / factorial(j))
            .collect();
        self.contract_first_kind(&weights, n)
    }

    fn derivative_form(&self, p: &XPolynomial, n: usize) -> Vec<Rational> {
        let (one, zero, u) = (Rational::one(), Rational::zero(), self.spec.u());
        let mut deriv = p.clone();
        let mut edge = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if k > 0 {
                deriv = deriv.derivative();
            }
            edge.push((deriv.eval(&one) - u * deriv.eval(&zero)) / factorial(k));
        }
        let scale = self.inv_one_minus_u();
        (0..=n)
            .map(|r| {
                let mut acc = Rational::zero();
                for (k, e) in edge.iter().enumerate().skip(r) {
                    if e.is_zero() {
                        continue;
                    }
                    let inner: Rational =
                        (r..=k).map(|j| self.s1.get(j, r) * self.s2.get(k, j)).sum();
                    acc += inner * e;
                }
                acc * &scale
            })
            .collect()
    }

    fn point_value_form(&self, p: &XPolynomial, n: usize) -> Vec<Rational> {
        let u = self.spec.u();
        let values: Vec<Rational> = (0..=n)
            .map(|i| p.eval(&int(i as i64 + 1)) - u * p.eval(&int(i as i64)))
            .collect();
        let weights: Vec<Rational> = (0..=n)
            .map(|j| {
                let sum: Rational = (0..=j)
                    .map(|i| {
                        let term = binomial(j, i) * &values[i];
                        if (j - i) % 2 == 0 {
                            term
                        } else {
                            -term
                        }
                    })
                    .sum();
                sum / factorial(j)
            })
            .collect();
        self.contract_first_kind(&weights, n)
    }

    fn operator_form(&self, p: &XPolynomial, n: usize) -> Result<Vec<Rational>> {
        (0..=n)
            .map(|k| Ok(self.gf_powers[k].pair(p)? / factorial(k)))
            .collect()
    }

    /// `f(t)^k p` for every `k`.
    fn reduced(&self, p: &XPolynomial, n: usize) -> Result<Vec<XPolynomial>> {
        (0..=n).map(|k| self.f_powers[k].apply(p)).collect()
    }

    fn shift_form(&self, p: &XPolynomial, n: usize) -> Result<Vec<Rational>> {
        let r = self.spec.order_r();
        let u = self.spec.u();
        let neg_u = -u.clone();
        let scale = powu(&self.inv_one_minus_u(), r);
        let reduced = self.reduced(p, n)?;
        Ok(reduced
            .iter()
            .enumerate()
            .map(|(k, q)| {
                let sum: Rational = (0..=r)
                    .map(|i| binomial(r, i) * powu(&neg_u, r - i) * q.eval(&int(i as i64)))
                    .sum();
                sum * &scale / factorial(k)
            })
            .collect())
    }

    fn difference_operator_form(&self, p: &XPolynomial, n: usize) -> Result<Vec<Rational>> {
        let r = self.spec.order_r();
        let inv = self.inv_one_minus_u();
        let zero = Rational::zero();
        let reduced = self.reduced(p, n)?;
        Ok(reduced
            .iter()
            .enumerate()
            .map(|(k, q)| {
                let sum: Rational = forward_differences(q, r)
                    .iter()
                    .enumerate()
                    .map(|(i, d)| binomial(r, i) * powu(&inv, i) * d.eval(&zero))
                    .sum();
                sum / factorial(k)
            })
            .collect())
    }

    fn derivative_operator_form(&self, p: &XPolynomial, n: usize) -> Result<Vec<Rational>> {
        let r = self.spec.order_r();
        let inv = self.inv_one_minus_u();
        // p^{(j)}(0)
        let taylor: Vec<Rational> = (0..=n).map(|j| p.coeff(j) * factorial(j)).collect();
        (0..=n)
            .map(|k| {
                let op = self.f_powers[k].series();
                // <f^k | p^{(m)}> = sum_j c_j/j! p^{(m+j)}(0)
                let pair = |m: usize| -> Rational {
                    (0..=n - m).map(|j| op.coeff(j) / factorial(j) * &taylor[m + j]).sum()
                };
                let mut acc = Rational::zero();
                for i in 0..=r.min(n) {
                    let outer = binomial(r, i) * powu(&inv, i) * factorial(i);
                    for m in i..=n {
                        let s2 = self.s2.get(m, i);
                        if s2.is_zero() {
                            continue;
                        }
                        acc += &outer * s2 / factorial(m) * pair(m);
                    }
                }
                Ok(acc / factorial(k))
            })
            .collect()
    }
}

fn one_shot(p: &XPolynomial, spec: &FamilySpec, formula: Formula) -> Result<BasisExpansion> {
    Representer::new(spec, p.degree().unwrap_or(0))?.expand(p, formula)
}

/// `H_n^Y` basis (`r = 1`, `lambda = 0`), formula `1..=3`.
pub fn expand_thm31(p: &XPolynomial, spec: &FamilySpec, formula: usize) -> Result<BasisExpansion> {
    one_shot(p, spec, Formula::new(Theorem::Standard, formula)?)
}

/// `h_{n,lambda}^Y` basis (`r = 1`), formula `1..=3`.
pub fn expand_thm33(p: &XPolynomial, spec: &FamilySpec, formula: usize) -> Result<BasisExpansion> {
    one_shot(p, spec, Formula::new(Theorem::Degenerate, formula)?)
}

/// Order-`r` basis, formula `1..=4`.
pub fn expand_thm4(p: &XPolynomial, spec: &FamilySpec, formula: usize) -> Result<BasisExpansion> {
    one_shot(p, spec, Formula::new(Theorem::HigherOrder, formula)?)
}

pub fn reconstruct(e: &BasisExpansion) -> Result<XPolynomial> {
    let family = build_family(&e.spec, e.coefficients.len().saturating_sub(1))?;
    Ok(family.combine(&e.coefficients))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::rvmodels::MomentModel;

    fn poly(v: &[Rational]) -> XPolynomial {
        XPolynomial::new(v.to_vec())
    }

    #[test]
    fn formula_tags() {
        let f: Formula = "thm33-2".parse().unwrap();
        assert_eq!(f, Formula::new(Theorem::Degenerate, 2).unwrap());
        assert_eq!(f.to_string(), "thm33-2");
        assert!("thm31-4".parse::<Formula>().is_err());
        assert!("thm5-1".parse::<Formula>().is_err());
        assert_eq!(Formula::all().count(), 10);
    }

    #[test]
    fn identity_polynomial_unit_model() {
        let u = ratio(1, 2);
        let spec = FamilySpec::classical(u.clone()).unwrap();
        let x = XPolynomial::monomial(1);
        for f in 1..=3 {
            let e = expand_thm31(&x, &spec, f).unwrap();
            assert_eq!(e.coefficients, vec![int(2), int(1)]);
        }
        let u = ratio(-5, 3);
        let spec = FamilySpec::classical(u.clone()).unwrap();
        let e = expand_thm31(&x, &spec, 1).unwrap();
        assert_eq!(e.coefficients, vec![(Rational::one() - u).recip(), int(1)]);
    }

    #[test]
    fn constants() {
        let m = MomentModel::poisson(int(2)).unwrap();
        for r in 0..4 {
            let spec = FamilySpec::new(m.clone(), int(-1), ratio(1, 4), r).unwrap();
            for f in 1..=4 {
                let e = expand_thm4(&XPolynomial::constant(int(5)), &spec, f).unwrap();
                assert_eq!(e.coefficients, vec![int(5)]);
            }
        }
    }

    #[test]
    fn theorem_preconditions() {
        let spec = FamilySpec::new(MomentModel::unit(), int(3), ratio(1, 4), 1).unwrap();
        assert!(expand_thm31(&XPolynomial::monomial(2), &spec, 1).is_err());
        assert!(expand_thm33(&XPolynomial::monomial(2), &spec, 1).is_ok());
        let spec2 = spec.with_order(2);
        assert!(expand_thm33(&XPolynomial::monomial(2), &spec2, 1).is_err());
    }

    #[test]
    fn formulas_agree_and_round_trip() {
        let p = poly(&[ratio(3, 7), int(-2), int(0), ratio(5, 2), int(1)]);
        let m = MomentModel::geometric(ratio(1, 3)).unwrap();
        for (lambda, r) in [(int(0), 1), (ratio(1, 4), 1), (ratio(1, 4), 2), (int(0), 0)] {
            let spec = FamilySpec::new(m.clone(), int(-1), lambda.clone(), r).unwrap();
            let rep = Representer::new(&spec, 4).unwrap();
            let mut seen = Vec::new();
            for formula in Formula::all() {
                let Ok(e) = rep.expand(&p, formula) else { continue };
                assert_eq!(rep.reconstruct(&e).unwrap(), p, "{formula} r={r} lambda={lambda}");
                seen.push(e.coefficients);
            }
            assert!(seen.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn standalone_reconstruct() {
        let spec = FamilySpec::new(MomentModel::exponential(int(3)).unwrap(), ratio(1, 2), int(0), 1)
            .unwrap();
        let p = XPolynomial::falling(4);
        let e = expand_thm31(&p, &spec, 1).unwrap();
        assert_eq!(reconstruct(&e).unwrap(), p);
        let zero = expand_thm31(&XPolynomial::zero(), &spec, 2).unwrap();
        assert_eq!(reconstruct(&zero).unwrap(), XPolynomial::zero());
    }
}
