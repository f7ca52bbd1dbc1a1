//! Stirling-number triangles: classical, degenerate, probabilistic and
//! probabilistic degenerate, of both kinds.
//!
//! Second-kind tables come from column generating functions
//! `(1/k!) (A(t) - 1)^k`. First-kind tables in the probabilistic families come
//! from the compositional inverse of `A(t) - 1`; [`table_invert`] is the
//! independent matrix route used to cross-check them.

use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{binomial, int, sign, Rational};
use crate::rvmodels::MomentModel;
use crate::series::TruncatedSeries;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StirlingFamily {
    S1,
    S2,
    S1Lambda,
    S2Lambda,
    S1Y,
    S2Y,
    S1YLambda,
    S2YLambda,
}

impl StirlingFamily {
    pub const ALL: [StirlingFamily; 8] = [
        StirlingFamily::S1,
        StirlingFamily::S2,
        StirlingFamily::S1Lambda,
        StirlingFamily::S2Lambda,
        StirlingFamily::S1Y,
        StirlingFamily::S2Y,
        StirlingFamily::S1YLambda,
        StirlingFamily::S2YLambda,
    ];

    /// Short name used on the command line and in exports.
    pub fn code(self) -> &'static str {
        match self {
            StirlingFamily::S1 => "s1",
            StirlingFamily::S2 => "s2",
            StirlingFamily::S1Lambda => "s1l",
            StirlingFamily::S2Lambda => "s2l",
            StirlingFamily::S1Y => "s1y",
            StirlingFamily::S2Y => "s2y",
            StirlingFamily::S1YLambda => "s1yl",
            StirlingFamily::S2YLambda => "s2yl",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.code() == code)
    }

    pub fn is_probabilistic(self) -> bool {
        matches!(
            self,
            StirlingFamily::S1Y
                | StirlingFamily::S2Y
                | StirlingFamily::S1YLambda
                | StirlingFamily::S2YLambda
        )
    }

    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            StirlingFamily::S1Lambda
                | StirlingFamily::S2Lambda
                | StirlingFamily::S1YLambda
                | StirlingFamily::S2YLambda
        )
    }

    /// The family of the inverse matrix.
    pub fn dual(self) -> Self {
        match self {
            StirlingFamily::S1 => StirlingFamily::S2,
            StirlingFamily::S2 => StirlingFamily::S1,
            StirlingFamily::S1Lambda => StirlingFamily::S2Lambda,
            StirlingFamily::S2Lambda => StirlingFamily::S1Lambda,
            StirlingFamily::S1Y => StirlingFamily::S2Y,
            StirlingFamily::S2Y => StirlingFamily::S1Y,
            StirlingFamily::S1YLambda => StirlingFamily::S2YLambda,
            StirlingFamily::S2YLambda => StirlingFamily::S1YLambda,
        }
    }
}

impl fmt::Display for StirlingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Lower-triangular table `value(n, k)`, `0 <= k <= n <= nmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    family: StirlingFamily,
    lambda: Option<Rational>,
    model: Option<MomentModel>,
    rows: Vec<Vec<Rational>>,
}

impl StirlingTable {
    pub(crate) fn new(
        family: StirlingFamily,
        lambda: Option<Rational>,
        model: Option<MomentModel>,
        rows: Vec<Vec<Rational>>,
    ) -> Self {
        debug_assert!(rows.iter().enumerate().all(|(n, r)| r.len() == n + 1));
        StirlingTable { family, lambda, model, rows }
    }

    pub(crate) fn from_parts(
        family: StirlingFamily,
        lambda: &Rational,
        model: &MomentModel,
        rows: Vec<Vec<Rational>>,
    ) -> Self {
        let lambda = family.is_degenerate().then(|| lambda.clone());
        Self::new(family, lambda, Some(model.clone()), rows)
    }

    pub fn family(&self) -> StirlingFamily {
        self.family
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn lambda(&self) -> Option<&Rational> {
        self.lambda.as_ref()
    }

    pub fn model(&self) -> Option<&MomentModel> {
        self.model.as_ref()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// `value(n, k)`, zero when `k > n`. Panics if `n > nmax`.
    pub fn get(&self, n: usize, k: usize) -> Rational {
        assert!(n <= self.nmax(), "row {n} beyond table nmax {}", self.nmax());
        self.rows[n].get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Same cells, leading `(nmax+1)` rows only.
    pub fn truncate(&self, nmax: usize) -> Self {
        let mut t = self.clone();
        t.rows.truncate(nmax + 1);
        t
    }
}

/// Rows of the triangle whose column `k` holds the EGF coefficients of
/// `delta^k / k!`.
fn power_columns(delta: &TruncatedSeries) -> Result<Vec<Vec<Rational>>> {
    let nmax = delta.order();
    let mut rows: Vec<Vec<Rational>> = (0..=nmax).map(|n| vec![Rational::zero(); n + 1]).collect();
    let mut power = TruncatedSeries::one(nmax);
    for k in 0..=nmax {
        if k > 0 {
            power = power.mul(delta)?.scale(&(Rational::one() / int(k as i64)));
        }
        for (n, row) in rows.iter_mut().enumerate().skip(k) {
            row[k] = power.coeff(n);
        }
    }
    Ok(rows)
}

/// `S_2(n,k) = k S_2(n-1,k) + S_2(n-1,k-1)`.
pub fn classical_s2(nmax: usize) -> StirlingTable {
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for n in 1..=nmax {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let stay = if k < n { &prev[k] * int(k as i64) } else { Rational::zero() };
                let step = if k > 0 { prev[k - 1].clone() } else { Rational::zero() };
                stay + step
            })
            .collect();
        rows.push(row);
    }
    StirlingTable::new(StirlingFamily::S2, None, None, rows)
}

/// Signed first kind: `S_1(n,k) = S_1(n-1,k-1) - (n-1) S_1(n-1,k)`.
pub fn classical_s1(nmax: usize) -> StirlingTable {
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for n in 1..=nmax {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let step = if k > 0 { prev[k - 1].clone() } else { Rational::zero() };
                let stay = if k < n { &prev[k] * int(n as i64 - 1) } else { Rational::zero() };
                step - stay
            })
            .collect();
        rows.push(row);
    }
    StirlingTable::new(StirlingFamily::S1, None, None, rows)
}

/// Columns of `(1/k!) (e_lambda(t) - 1)^k`, with `e_lambda(t)` having EGF
/// coefficients `(1)_{n,lambda}`.
pub fn degenerate_s2(nmax: usize, lambda: &Rational) -> StirlingTable {
    let rows = power_columns(&unit_degenerate_delta(lambda, nmax)).expect("orders match");
    StirlingTable::new(StirlingFamily::S2Lambda, Some(lambda.clone()), None, rows)
}

/// Inverse matrix of [`degenerate_s2`]; the degenerate logarithm is never
/// evaluated.
pub fn degenerate_s1(nmax: usize, lambda: &Rational) -> StirlingTable {
    table_invert(&degenerate_s2(nmax, lambda)).expect("unit diagonal")
}

fn unit_degenerate_delta(lambda: &Rational, nmax: usize) -> TruncatedSeries {
    MomentModel::unit()
        .degenerate_mgf_series(lambda, nmax)
        .expect("unit model has every moment")
        .shift_constant(&-Rational::one())
}

/// `e_{Y,lambda}(t) = E[e_lambda^Y(t)] - 1`.
fn model_delta(m: &MomentModel, lambda: &Rational, nmax: usize) -> Result<TruncatedSeries> {
    Ok(m.degenerate_mgf_series(lambda, nmax)?.shift_constant(&-Rational::one()))
}

/// Columns of `(1/k!) e_Y(t)^k`.
pub fn probabilistic_s2(m: &MomentModel, nmax: usize) -> Result<StirlingTable> {
    let rows = power_columns(&model_delta(m, &Rational::zero(), nmax)?)?;
    Ok(StirlingTable::new(StirlingFamily::S2Y, None, Some(m.clone()), rows))
}

/// Columns of `(1/k!) ebar_Y(t)^k`, `ebar_Y` the compositional inverse of `e_Y`.
pub fn probabilistic_s1(m: &MomentModel, nmax: usize) -> Result<StirlingTable> {
    let rows = power_columns(&model_delta(m, &Rational::zero(), nmax)?.reversion()?)?;
    Ok(StirlingTable::new(StirlingFamily::S1Y, None, Some(m.clone()), rows))
}

pub fn probabilistic_degenerate_s2(
    m: &MomentModel,
    lambda: &Rational,
    nmax: usize,
) -> Result<StirlingTable> {
    let rows = power_columns(&model_delta(m, lambda, nmax)?)?;
    Ok(StirlingTable::new(
        StirlingFamily::S2YLambda,
        Some(lambda.clone()),
        Some(m.clone()),
        rows,
    ))
}

pub fn probabilistic_degenerate_s1(
    m: &MomentModel,
    lambda: &Rational,
    nmax: usize,
) -> Result<StirlingTable> {
    let rows = power_columns(&model_delta(m, lambda, nmax)?.reversion()?)?;
    Ok(StirlingTable::new(
        StirlingFamily::S1YLambda,
        Some(lambda.clone()),
        Some(m.clone()),
        rows,
    ))
}

/// `S_2^Y(n,k) = (1/k!) sum_j C(k,j) (-1)^{k-j} E[S_j^n]`, where `E[S_j^n]`
/// is the `n`-th EGF coefficient of `E[e^{Yt}]^j`.
pub fn probabilistic_s2_direct(m: &MomentModel, n: usize, k: usize) -> Result<Rational> {
    probabilistic_degenerate_s2_direct(m, &Rational::zero(), n, k)
}

/// Degenerate version: `E[(S_j)_{n,lambda}]` is the `n`-th coefficient of
/// `E[e_lambda^Y(t)]^j`.
pub fn probabilistic_degenerate_s2_direct(
    m: &MomentModel,
    lambda: &Rational,
    n: usize,
    k: usize,
) -> Result<Rational> {
    let mgf = m.degenerate_mgf_series(lambda, n)?;
    let mut power = TruncatedSeries::one(n);
    let mut acc = Rational::zero();
    for j in 0..=k {
        if j > 0 {
            power = power.mul(&mgf)?;
        }
        acc += binomial(k, j) * sign(k - j) * power.coeff(n);
    }
    Ok(acc / crate::exact::factorial(k))
}

/// Inverse of a lower-triangular table with invertible diagonal, by forward
/// substitution.
pub fn table_invert(t: &StirlingTable) -> Result<StirlingTable> {
    let nmax = t.nmax();
    let mut inv: Vec<Vec<Rational>> = (0..=nmax).map(|n| vec![Rational::zero(); n + 1]).collect();
    for n in 0..=nmax {
        let d = &t.rows[n][n];
        if d.is_zero() {
            return Err(Error::SingularDiagonal(n));
        }
        inv[n][n] = d.recip();
        for l in (0..n).rev() {
            // sum_{k=l}^{n} T(n,k) inv(k,l) = 0
            let mut acc = Rational::zero();
            for k in l..n {
                acc += &t.rows[n][k] * &inv[k][l];
            }
            inv[n][l] = -acc / d;
        }
    }
    Ok(StirlingTable::new(t.family.dual(), t.lambda.clone(), t.model.clone(), inv))
}

/// Builds any family by code. `lambda` defaults to zero; probabilistic
/// families require a model.
pub fn build_table(
    family: StirlingFamily,
    nmax: usize,
    lambda: &Rational,
    model: Option<&MomentModel>,
) -> Result<StirlingTable> {
    let need_model = || {
        model.ok_or_else(|| {
            Error::InvalidParameter(format!("family {family} needs a random-variable model"))
        })
    };
    match family {
        StirlingFamily::S1 => Ok(classical_s1(nmax)),
        StirlingFamily::S2 => Ok(classical_s2(nmax)),
        StirlingFamily::S1Lambda => Ok(degenerate_s1(nmax, lambda)),
        StirlingFamily::S2Lambda => Ok(degenerate_s2(nmax, lambda)),
        StirlingFamily::S1Y => probabilistic_s1(need_model()?, nmax),
        StirlingFamily::S2Y => probabilistic_s2(need_model()?, nmax),
        StirlingFamily::S1YLambda => probabilistic_degenerate_s1(need_model()?, lambda, nmax),
        StirlingFamily::S2YLambda => probabilistic_degenerate_s2(need_model()?, lambda, nmax),
    }
}

/// `sum_{k} a(n,k) b(k,l)` over the common range.
pub fn table_product(a: &StirlingTable, b: &StirlingTable) -> Vec<Vec<Rational>> {
    let nmax = a.nmax().min(b.nmax());
    (0..=nmax)
        .map(|n| {
            (0..=n)
                .map(|l| (l..=n).map(|k| a.get(n, k) * b.get(k, l)).sum())
                .collect()
        })
        .collect()
}

/// True when the product is the identity triangle.
pub fn is_identity(m: &[Vec<Rational>]) -> bool {
    m.iter().enumerate().all(|(n, row)| {
        row.iter()
            .enumerate()
            .all(|(l, v)| if n == l { v.is_one() } else { v.is_zero() })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{powu, ratio};
    use crate::series::XPolynomial;

    /// Set partitions of `{0..n}` into exactly `k` blocks, by restricted
    /// growth strings.
    fn count_partitions(n: usize, k: usize) -> usize {
        fn go(i: usize, n: usize, used: usize, k: usize) -> usize {
            if i == n {
                return usize::from(used == k);
            }
            let mut total = 0;
            for b in 0..=used.min(k.saturating_sub(1)) {
                let next = if b == used { used + 1 } else { used };
                if next <= k {
                    total += go(i + 1, n, next, k);
                }
            }
            total
        }
        go(0, n, 0, k)
    }

    #[test]
    fn second_kind_counts_partitions() {
        let t = classical_s2(8);
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(t.get(n, k), int(count_partitions(n, k) as i64), "({n},{k})");
            }
        }
        assert_eq!(t.get(4, 2), int(7));
        assert_eq!(t.get(3, 5), int(0));
    }

    #[test]
    fn first_kind_expands_falling() {
        let t = classical_s1(9);
        assert_eq!(t.get(3, 1), int(2));
        assert_eq!(t.get(3, 2), int(-3));
        for n in 0..=9 {
            let p = XPolynomial::falling(n);
            for k in 0..=n {
                assert_eq!(t.get(n, k), p.coeff(k));
            }
        }
    }

    #[test]
    fn classical_orthogonality() {
        let s1 = classical_s1(12);
        let s2 = classical_s2(12);
        assert!(is_identity(&table_product(&s2, &s1)));
        assert!(is_identity(&table_product(&s1, &s2)));
        assert_eq!(table_invert(&s2).unwrap().rows(), s1.rows());
    }

    #[test]
    fn degenerate_tables() {
        assert_eq!(degenerate_s2(10, &int(0)).rows(), classical_s2(10).rows());
        assert_eq!(degenerate_s1(10, &int(0)).rows(), classical_s1(10).rows());
        assert!(is_identity(degenerate_s2(8, &int(1)).rows()));
        let lam = ratio(1, 4);
        let s2l = degenerate_s2(10, &lam);
        let s1l = degenerate_s1(10, &lam);
        for n in 0..=10 {
            let lhs = XPolynomial::degenerate_falling(n, &lam);
            let rhs = XPolynomial::from_falling_basis(&s2l.rows()[n]);
            assert_eq!(lhs, rhs);
            // (x)_n = sum_k S_{1,lambda}(n,k) (x)_{k,lambda}
            let back = (0..=n).fold(XPolynomial::zero(), |acc, k| {
                &acc + &XPolynomial::degenerate_falling(k, &lam).scale(&s1l.get(n, k))
            });
            assert_eq!(back, XPolynomial::falling(n));
        }
    }

    #[test]
    fn bernoulli_scaling() {
        let p = ratio(2, 5);
        let m = MomentModel::bernoulli(p.clone()).unwrap();
        let s2y = probabilistic_s2(&m, 9).unwrap();
        let s2 = classical_s2(9);
        for n in 0..=9 {
            for k in 0..=n {
                assert_eq!(s2y.get(n, k), powu(&p, k) * s2.get(n, k));
            }
        }
    }

    #[test]
    fn direct_formula_edges() {
        let m = MomentModel::exponential(int(3)).unwrap();
        assert_eq!(probabilistic_s2_direct(&m, 0, 0).unwrap(), int(1));
        assert_eq!(probabilistic_s2_direct(&m, 4, 0).unwrap(), int(0));
        assert_eq!(probabilistic_s2_direct(&MomentModel::unit(), 4, 2).unwrap(), int(7));
    }

    #[test]
    fn singular_inverse() {
        let mut t = classical_s2(3);
        t.rows[2][2] = int(0);
        assert_eq!(table_invert(&t), Err(Error::SingularDiagonal(2)));
    }

    #[test]
    fn involution() {
        let m = MomentModel::geometric(ratio(1, 3)).unwrap();
        let t = probabilistic_degenerate_s2(&m, &ratio(1, 4), 8).unwrap();
        assert_eq!(table_invert(&table_invert(&t).unwrap()).unwrap(), t);
    }
}
