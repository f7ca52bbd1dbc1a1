//! Random-variable models that expose exact raw moments `E[Y^n]`, the moment
//! generating series `E[e^{Yt}]` and its degenerate counterpart
//! `E[e_lambda^Y(t)] = sum E[(Y)_{n,lambda}] t^n/n!`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::exact::{factorial, rat_parse, Rational};
use crate::series::{TruncatedSeries, XPolynomial};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelKind {
    /// `Y = 1`; recovers the classical objects.
    Unit,
    Bernoulli { p: Rational },
    Poisson { alpha: Rational },
    Geometric { p: Rational },
    Exponential { alpha: Rational },
    /// Caller-supplied `E[Y^0], ..., E[Y^N]`.
    Custom { moments: Vec<Rational> },
}

/// A validated moment model. Construction enforces the parameter ranges and
/// `E[Y] != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentModel {
    kind: ModelKind,
}

#[derive(Deserialize)]
struct MomentsDoc {
    moments: Vec<String>,
}

impl MomentModel {
    pub fn unit() -> Self {
        MomentModel { kind: ModelKind::Unit }
    }

    /// `0 < p <= 1`.
    pub fn bernoulli(p: Rational) -> Result<Self> {
        if p <= Rational::zero() || p > Rational::one() {
            return Err(Error::InvalidParameter(format!("bernoulli needs 0 < p <= 1, got {p}")));
        }
        Ok(MomentModel { kind: ModelKind::Bernoulli { p } })
    }

    /// `alpha > 0`.
    pub fn poisson(alpha: Rational) -> Result<Self> {
        if alpha <= Rational::zero() {
            return Err(Error::InvalidParameter(format!("poisson needs alpha > 0, got {alpha}")));
        }
        Ok(MomentModel { kind: ModelKind::Poisson { alpha } })
    }

    /// `0 < p < 1`; support `{1, 2, ...}`.
    pub fn geometric(p: Rational) -> Result<Self> {
        if p <= Rational::zero() || p >= Rational::one() {
            return Err(Error::InvalidParameter(format!("geometric needs 0 < p < 1, got {p}")));
        }
        Ok(MomentModel { kind: ModelKind::Geometric { p } })
    }

    /// `alpha > 0` (rate).
    pub fn exponential(alpha: Rational) -> Result<Self> {
        if alpha <= Rational::zero() {
            return Err(Error::InvalidParameter(format!(
                "exponential needs alpha > 0, got {alpha}"
            )));
        }
        Ok(MomentModel { kind: ModelKind::Exponential { alpha } })
    }

    /// `moments[n] = E[Y^n]`; needs `moments[0] = 1` and `moments[1] != 0`.
    pub fn custom(moments: Vec<Rational>) -> Result<Self> {
        if moments.first().is_none_or(|m| !m.is_one()) {
            return Err(Error::InvalidParameter("custom moments must start with E[Y^0] = 1".into()));
        }
        match moments.get(1) {
            None => {
                return Err(Error::InvalidParameter("custom moments must include E[Y]".into()))
            }
            Some(m) if m.is_zero() => return Err(Error::ZeroMean),
            _ => {}
        }
        Ok(MomentModel { kind: ModelKind::Custom { moments } })
    }

    /// Builds a parametric model from its name and `name = value` pairs, as
    /// they appear on the command line and in exported JSON. Custom models
    /// carry moments instead and are not built here.
    pub fn from_params(kind: &str, params: &[(String, Rational)]) -> Result<Self> {
        let expected: &[&str] = match kind {
            "unit" => &[],
            "bernoulli" | "geometric" => &["p"],
            "poisson" | "exponential" => &["alpha"],
            "custom" => {
                return Err(Error::InvalidParameter("custom models are read from a moments file".into()))
            }
            other => return Err(Error::InvalidParameter(format!("unknown model {other:?}"))),
        };
        for (name, _) in params {
            if !expected.contains(&name.as_str()) {
                return Err(Error::InvalidParameter(format!("{kind} has no parameter {name:?}")));
            }
        }
        let get = |name: &str| {
            params
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::InvalidParameter(format!("{kind} needs parameter {name}")))
        };
        match kind {
            "unit" => Ok(Self::unit()),
            "bernoulli" => Self::bernoulli(get("p")?),
            "geometric" => Self::geometric(get("p")?),
            "poisson" => Self::poisson(get("alpha")?),
            _ => Self::exponential(get("alpha")?),
        }
    }

    /// Reads `{"moments": ["1", "1/2", ...]}`.
    pub fn custom_from_json(text: &str) -> Result<Self> {
        let doc: MomentsDoc =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        let moments = doc
            .moments
            .iter()
            .map(|s| rat_parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::custom(moments)
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn is_unit(&self) -> bool {
        self.kind == ModelKind::Unit
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ModelKind::Unit => "unit",
            ModelKind::Bernoulli { .. } => "bernoulli",
            ModelKind::Poisson { .. } => "poisson",
            ModelKind::Geometric { .. } => "geometric",
            ModelKind::Exponential { .. } => "exponential",
            ModelKind::Custom { .. } => "custom",
        }
    }

    /// Named parameters, for export.
    pub fn params(&self) -> Vec<(&'static str, Rational)> {
        match &self.kind {
            ModelKind::Unit | ModelKind::Custom { .. } => Vec::new(),
            ModelKind::Bernoulli { p } | ModelKind::Geometric { p } => vec![("p", p.clone())],
            ModelKind::Poisson { alpha } | ModelKind::Exponential { alpha } => {
                vec![("alpha", alpha.clone())]
            }
        }
    }

    /// Highest moment order available, `None` if unbounded.
    pub fn max_order(&self) -> Option<usize> {
        match &self.kind {
            ModelKind::Custom { moments } => Some(moments.len() - 1),
            _ => None,
        }
    }

    pub fn mean(&self) -> Rational {
        match &self.kind {
            ModelKind::Unit => Rational::one(),
            ModelKind::Bernoulli { p } => p.clone(),
            ModelKind::Poisson { alpha } => alpha.clone(),
            ModelKind::Geometric { p } => p.recip(),
            ModelKind::Exponential { alpha } => alpha.recip(),
            ModelKind::Custom { moments } => moments[1].clone(),
        }
    }

    /// `E[e^{Yt}]` through order `order`.
    pub fn mgf_series(&self, order: usize) -> Result<TruncatedSeries> {
        let e_t = || TruncatedSeries::exponential(&Rational::one(), order);
        Ok(match &self.kind {
            ModelKind::Unit => e_t(),
            ModelKind::Bernoulli { p } => e_t().scale(p).shift_constant(&(Rational::one() - p)),
            ModelKind::Poisson { alpha } => {
                e_t().shift_constant(&-Rational::one()).scale(alpha).exp()?
            }
            ModelKind::Geometric { p } => {
                let q = Rational::one() - p;
                let denom = e_t().scale(&-q).shift_constant(&Rational::one());
                e_t().scale(p).mul(&denom.recip()?)?
            }
            ModelKind::Exponential { alpha } => {
                let inv = alpha.recip();
                let mut coeffs = Vec::with_capacity(order + 1);
                let mut power = Rational::one();
                for n in 0..=order {
                    coeffs.push(factorial(n) * &power);
                    power *= &inv;
                }
                TruncatedSeries::new(coeffs)
            }
            ModelKind::Custom { moments } => {
                if order >= moments.len() {
                    return Err(Error::MomentOutOfRange {
                        requested: order,
                        available: moments.len() - 1,
                    });
                }
                TruncatedSeries::new(moments[..=order].to_vec())
            }
        })
    }

    /// `E[Y^n]`.
    pub fn raw_moment(&self, n: usize) -> Result<Rational> {
        Ok(self.mgf_series(n)?.coeff(n))
    }

    /// `E[(Y)_{n,lambda}] = sum_k [x^k](x)_{n,lambda} E[Y^k]`.
    pub fn degenerate_moment(&self, n: usize, lambda: &Rational) -> Result<Rational> {
        let moments = self.mgf_series(n)?;
        Ok(expect_poly(&XPolynomial::degenerate_falling(n, lambda), &moments))
    }

    /// `E[e_lambda^Y(t)]` through order `order`.
    pub fn degenerate_mgf_series(&self, lambda: &Rational, order: usize) -> Result<TruncatedSeries> {
        let moments = self.mgf_series(order)?;
        Ok(TruncatedSeries::new(
            (0..=order)
                .map(|n| expect_poly(&XPolynomial::degenerate_falling(n, lambda), &moments))
                .collect(),
        ))
    }
}

fn expect_poly(p: &XPolynomial, moments: &TruncatedSeries) -> Rational {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c * moments.coeff(k))
        .sum()
}

impl fmt::Display for MomentModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        let params = self.params();
        if !params.is_empty() {
            let inner: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", inner.join(","))?;
        }
        Ok(())
    }
}

pub fn mgf_series(m: &MomentModel, order: usize) -> Result<TruncatedSeries> {
    m.mgf_series(order)
}

pub fn raw_moment(m: &MomentModel, n: usize) -> Result<Rational> {
    m.raw_moment(n)
}

pub fn degenerate_moment(m: &MomentModel, n: usize, lambda: &Rational) -> Result<Rational> {
    m.degenerate_moment(n, lambda)
}

pub fn degenerate_mgf_series(m: &MomentModel, lambda: &Rational, order: usize) -> Result<TruncatedSeries> {
    m.degenerate_mgf_series(lambda, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{degenerate_falling_factorial, int, ratio};

    fn builtins() -> Vec<MomentModel> {
        vec![
            MomentModel::unit(),
            MomentModel::bernoulli(ratio(1, 3)).unwrap(),
            MomentModel::poisson(int(2)).unwrap(),
            MomentModel::geometric(ratio(1, 2)).unwrap(),
            MomentModel::exponential(int(2)).unwrap(),
        ]
    }

    #[test]
    fn parameter_ranges() {
        assert!(MomentModel::bernoulli(int(0)).is_err());
        assert!(MomentModel::bernoulli(int(1)).is_ok());
        assert!(MomentModel::bernoulli(ratio(3, 2)).is_err());
        assert!(MomentModel::poisson(int(0)).is_err());
        assert!(MomentModel::geometric(int(1)).is_err());
        assert!(MomentModel::exponential(int(-1)).is_err());
        assert_eq!(MomentModel::custom(vec![int(1), int(0)]), Err(Error::ZeroMean));
        assert!(MomentModel::custom(vec![int(2), int(1)]).is_err());
    }

    #[test]
    fn mgf_constant_and_mean() {
        for m in builtins() {
            let s = m.mgf_series(12).unwrap();
            assert_eq!(s.coeff(0), int(1), "{m}");
            assert_eq!(s.coeff(1), m.mean(), "{m}");
        }
    }

    #[test]
    fn named_moments() {
        assert_eq!(MomentModel::unit().mgf_series(5).unwrap().coeffs(), vec![int(1); 6]);
        let e = MomentModel::exponential(int(2)).unwrap();
        assert_eq!(e.raw_moment(3).unwrap(), ratio(3, 4));
        let b = MomentModel::bernoulli(ratio(2, 7)).unwrap();
        for n in 1..8 {
            assert_eq!(b.raw_moment(n).unwrap(), ratio(2, 7));
        }
        for m in builtins() {
            assert_eq!(m.raw_moment(0).unwrap(), int(1));
        }
        // Bell number B_3
        assert_eq!(MomentModel::poisson(int(1)).unwrap().raw_moment(3).unwrap(), int(5));
        assert_eq!(MomentModel::geometric(ratio(1, 2)).unwrap().raw_moment(1).unwrap(), int(2));
    }

    #[test]
    fn degenerate_moments() {
        let lam = ratio(1, 4);
        for m in builtins() {
            assert_eq!(
                m.degenerate_mgf_series(&int(0), 10).unwrap(),
                m.mgf_series(10).unwrap()
            );
            for n in 0..6 {
                assert_eq!(m.degenerate_moment(n, &int(0)).unwrap(), m.raw_moment(n).unwrap());
            }
        }
        let unit = MomentModel::unit();
        for n in 0..8 {
            assert_eq!(
                unit.degenerate_moment(n, &lam).unwrap(),
                degenerate_falling_factorial(&int(1), n, &lam)
            );
        }
        let b = MomentModel::bernoulli(ratio(1, 3)).unwrap();
        assert_eq!(b.degenerate_moment(2, &int(1)).unwrap(), int(0));
        let e = MomentModel::exponential(int(5)).unwrap();
        assert_eq!(e.degenerate_mgf_series(&lam, 4).unwrap().coeff(1), ratio(1, 5));
    }

    #[test]
    fn custom_models() {
        let m = MomentModel::custom_from_json(r#"{"moments": ["1", "1/2", "3/4"]}"#).unwrap();
        assert_eq!(m.raw_moment(2).unwrap(), ratio(3, 4));
        assert_eq!(
            m.raw_moment(3),
            Err(Error::MomentOutOfRange { requested: 3, available: 2 })
        );
        assert!(MomentModel::custom_from_json(r#"{"moments": [1, 2]}"#).is_err());
        assert!(MomentModel::custom_from_json(r#"{"moments": ["1", "x"]}"#).is_err());
    }
}
