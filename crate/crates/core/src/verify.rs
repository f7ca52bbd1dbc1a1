//! Self-verification suites run by `pfe verify`. Every check compares two
//! independently computed exact objects; a computation error counts as a
//! failed check rather than aborting the suite.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::closedforms::{closed_falling, closed_monomial, model_closed_s1};
use crate::exact::{factorial, int, ratio, Rational};
use crate::families::{
    build_family, family_boundary_check, order_reduction_check, sheffer_recurrence_check,
    FamilySpec,
};
use crate::represent::{Formula, Representer, Theorem};
use crate::rvmodels::MomentModel;
use crate::series::XPolynomial;
use crate::stirling::{
    build_table, is_identity, probabilistic_degenerate_s1, probabilistic_degenerate_s2,
    probabilistic_s2, probabilistic_s2_direct, table_invert, table_product, StirlingFamily,
};
use crate::umbral::sheffer_orthonormality_check;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Orthogonality,
    Roundtrip,
    ClosedForms,
    Identities,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::Orthogonality, Suite::Roundtrip, Suite::ClosedForms, Suite::Identities, Suite::All];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Roundtrip => "roundtrip",
            Suite::ClosedForms => "closedforms",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}", self.suite, self.name)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

struct Collector {
    suite: Suite,
    checks: Vec<Check>,
}

impl Collector {
    fn new(suite: Suite) -> Self {
        Collector { suite, checks: Vec::new() }
    }

    fn record(&mut self, name: String, outcome: Result<std::result::Result<(), String>>) {
        let (passed, detail) = match outcome {
            Ok(Ok(())) => (true, None),
            Ok(Err(why)) => (false, Some(why)),
            Err(e) => (false, Some(format!("error: {e}"))),
        };
        self.checks.push(Check { suite: self.suite, name, passed, detail });
    }
}

fn expect(ok: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

/// The four parametric models exercised by every suite.
pub fn reference_models() -> Vec<MomentModel> {
    vec![
        MomentModel::bernoulli(ratio(2, 3)).expect("valid"),
        MomentModel::poisson(int(2)).expect("valid"),
        MomentModel::geometric(ratio(1, 3)).expect("valid"),
        MomentModel::exponential(int(3)).expect("valid"),
    ]
}

fn with_unit() -> Vec<MomentModel> {
    let mut m = vec![MomentModel::unit()];
    m.extend(reference_models());
    m
}

/// A fixed dense polynomial of degree `n` with non-integer coefficients.
fn mixed_poly(n: usize) -> XPolynomial {
    XPolynomial::new(
        (0..=n)
            .map(|i| {
                let s = if i % 2 == 0 { 1 } else { -1 };
                ratio(s * (i as i64 + 1), i as i64 + 2)
            })
            .collect(),
    )
}

fn orthogonality(nmax: usize) -> Vec<Check> {
    let mut c = Collector::new(Suite::Orthogonality);
    for lambda in [int(0), ratio(1, 4), int(1)] {
        for m in with_unit() {
            c.record(format!("s2yl*s1yl {m} lambda={lambda}"), (|| {
                let s2 = probabilistic_degenerate_s2(&m, &lambda, nmax)?;
                let s1 = probabilistic_degenerate_s1(&m, &lambda, nmax)?;
                Ok(expect(
                    is_identity(&table_product(&s2, &s1)) && is_identity(&table_product(&s1, &s2)),
                    || "product is not the identity".into(),
                ))
            })());
            c.record(format!("invert(s2yl) = s1yl {m} lambda={lambda}"), (|| {
                let s2 = probabilistic_degenerate_s2(&m, &lambda, nmax)?;
                let s1 = probabilistic_degenerate_s1(&m, &lambda, nmax)?;
                Ok(expect(table_invert(&s2)?.rows() == s1.rows(), || "tables differ".into()))
            })());
        }
    }
    for m in reference_models() {
        c.record(format!("s2y = direct sum {m}"), (|| {
            let t = probabilistic_s2(&m, nmax)?;
            for n in 0..=nmax {
                for k in 0..=n {
                    if t.get(n, k) != probabilistic_s2_direct(&m, n, k)? {
                        return Ok(Err(format!("cell ({n},{k})")));
                    }
                }
            }
            Ok(Ok(()))
        })());
    }
    c.checks
}

fn roundtrip(nmax: usize) -> Vec<Check> {
    let mut c = Collector::new(Suite::Roundtrip);
    let polys = [
        XPolynomial::falling(nmax),
        XPolynomial::monomial(nmax),
        mixed_poly(nmax),
    ];
    for m in reference_models() {
        for u in [ratio(1, 2), int(-1), int(3)] {
            for lambda in [int(0), ratio(1, 4)] {
                for r in 0..=3usize {
                    let name = format!("{m} u={u} lambda={lambda} r={r}");
                    c.record(name, (|| {
                        let spec = FamilySpec::new(m.clone(), u.clone(), lambda.clone(), r)?;
                        let rep = Representer::new(&spec, nmax)?;
                        let theorems: Vec<Theorem> = match (r, lambda.is_zero()) {
                            (1, true) => Theorem::ALL.to_vec(),
                            (1, false) => vec![Theorem::Degenerate, Theorem::HigherOrder],
                            _ => vec![Theorem::HigherOrder],
                        };
                        for p in &polys {
                            let mut reference: Option<Vec<Rational>> = None;
                            for th in &theorems {
                                for formula in th.formulas() {
                                    let e = rep.expand(p, formula)?;
                                    if rep.reconstruct(&e)? != *p {
                                        return Ok(Err(format!("{formula} does not reconstruct {p}")));
                                    }
                                    match &reference {
                                        None => reference = Some(e.coefficients),
                                        Some(a) if *a != e.coefficients => {
                                            return Ok(Err(format!("{formula} disagrees on {p}")))
                                        }
                                        Some(_) => {}
                                    }
                                }
                            }
                        }
                        Ok(Ok(()))
                    })());
                }
            }
        }
    }
    c.checks
}

fn closedforms(nmax: usize) -> Vec<Check> {
    let mut c = Collector::new(Suite::ClosedForms);
    for m in reference_models() {
        for lambda in [int(0), ratio(1, 4)] {
            c.record(format!("closed s1 table {m} lambda={lambda}"), (|| {
                let closed = model_closed_s1(&m, &lambda, nmax)?;
                let generic = probabilistic_degenerate_s1(&m, &lambda, nmax)?;
                Ok(expect(closed.rows() == generic.rows(), || "tables differ".into()))
            })());
            for u in [ratio(1, 2), int(-1)] {
                c.record(format!("falling/monomial {m} u={u} lambda={lambda}"), (|| {
                    let spec = FamilySpec::new(m.clone(), u.clone(), lambda.clone(), 1)?;
                    let rep = Representer::new(&spec, nmax)?;
                    let formula = Formula::new(Theorem::Degenerate, 1)?;
                    for n in 0..=nmax {
                        let e = rep.expand(&XPolynomial::falling(n), formula)?;
                        if closed_falling(&m, &u, &lambda, n)?.coefficients != e.coefficients {
                            return Ok(Err(format!("(x)_{n}")));
                        }
                        let e = rep.expand(&XPolynomial::monomial(n), formula)?;
                        if closed_monomial(&m, &u, &lambda, n)?.coefficients != e.coefficients {
                            return Ok(Err(format!("x^{n}")));
                        }
                    }
                    Ok(Ok(()))
                })());
            }
        }
    }
    c.checks
}

fn identities(nmax: usize) -> Vec<Check> {
    let mut c = Collector::new(Suite::Identities);
    for m in with_unit() {
        for u in [ratio(1, 2), int(-1)] {
            for lambda in [int(0), ratio(1, 4)] {
                let families = (0..=3usize)
                    .map(|r| {
                        let spec = FamilySpec::new(m.clone(), u.clone(), lambda.clone(), r)?;
                        build_family(&spec, nmax)
                    })
                    .collect::<Result<Vec<_>>>();
                let tag = format!("{m} u={u} lambda={lambda}");
                let families = match families {
                    Ok(f) => f,
                    Err(e) => {
                        c.record(format!("build {tag}"), Err(e));
                        continue;
                    }
                };
                c.record(format!("boundary {tag}"), family_boundary_check(&families[1]).map(report));
                for r in 1..=3 {
                    c.record(
                        format!("order-reduction r={r} {tag}"),
                        order_reduction_check(&families[r], &families[r - 1]).map(report),
                    );
                }
                for (r, f) in families.iter().enumerate() {
                    c.record(format!("sheffer-recurrence r={r} {tag}"), sheffer_recurrence_check(f).map(report));
                    c.record(format!("orthonormality r={r} {tag}"), (|| {
                        for k in 0..=nmax {
                            let op = f.spec().sheffer_operator(k, nmax)?;
                            for n in 0..=nmax {
                                let want = if n == k { factorial(n) } else { Rational::zero() };
                                if sheffer_orthonormality_check(&op, f, n)? != want {
                                    return Ok(Err(format!("pairing k={k} n={n}")));
                                }
                            }
                        }
                        Ok(Ok(()))
                    })());
                }
            }
        }
    }
    c.record("unit model reduces to classical tables".into(), (|| {
        let unit = MomentModel::unit();
        let lambda = ratio(1, 4);
        for (prob, classical, lam) in [
            (StirlingFamily::S1Y, StirlingFamily::S1, int(0)),
            (StirlingFamily::S2Y, StirlingFamily::S2, int(0)),
            (StirlingFamily::S1YLambda, StirlingFamily::S1Lambda, lambda.clone()),
            (StirlingFamily::S2YLambda, StirlingFamily::S2Lambda, lambda.clone()),
        ] {
            let a = build_table(prob, nmax, &lam, Some(&unit))?;
            let b = build_table(classical, nmax, &lam, None)?;
            if a.rows() != b.rows() {
                return Ok(Err(format!("{prob} vs {classical}")));
            }
        }
        Ok(Ok(()))
    })());
    c.checks
}

fn report(r: crate::families::IdentityReport) -> std::result::Result<(), String> {
    expect(r.passed(), || format!("fails at n = {:?}", r.failures()))
}

/// Runs a suite at degree bound `nmax`.
pub fn run_suite(suite: Suite, nmax: usize) -> Vec<Check> {
    match suite {
        Suite::Orthogonality => orthogonality(nmax),
        Suite::Roundtrip => roundtrip(nmax),
        Suite::ClosedForms => closedforms(nmax),
        Suite::Identities => identities(nmax),
        Suite::All => [Suite::Orthogonality, Suite::Roundtrip, Suite::ClosedForms, Suite::Identities]
            .into_iter()
            .flat_map(|s| run_suite(s, nmax))
            .collect(),
    }
}

/// `true` iff every check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_sizes() {
        for nmax in [0, 3] {
            let checks = run_suite(Suite::All, nmax);
            let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(ToString::to_string).collect();
            assert!(failed.is_empty(), "{failed:#?}");
            assert!(checks.len() > 100);
        }
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
