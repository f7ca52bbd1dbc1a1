//! JSON and CSV documents for tables, families and expansions. Rationals are
//! always written as strings (`"-3/4"`), never as floats.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::closedforms::{ClosedFormResult, Target};
use crate::exact::{RatStr, Rational};
use crate::families::{FamilySpec, PolynomialFamily};
use crate::represent::BasisExpansion;
use crate::rvmodels::{ModelKind, MomentModel};
use crate::stirling::{StirlingFamily, StirlingTable};
use crate::{Error, Result};

fn strs(v: &[Rational]) -> Vec<RatStr> {
    v.iter().cloned().map(RatStr).collect()
}

fn rats(v: Vec<RatStr>) -> Vec<Rational> {
    v.into_iter().map(|r| r.0).collect()
}

fn doc_err(e: serde_json::Error) -> Error {
    Error::Document(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, RatStr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<Vec<RatStr>>,
}

impl ModelDoc {
    pub fn from_model(m: &MomentModel) -> Self {
        let moments = match m.kind() {
            ModelKind::Custom { moments } => Some(strs(moments)),
            _ => None,
        };
        ModelDoc {
            kind: m.name().to_string(),
            params: m.params().into_iter().map(|(k, v)| (k.to_string(), RatStr(v))).collect(),
            moments,
        }
    }

    pub fn to_model(&self) -> Result<MomentModel> {
        match (&self.moments, self.kind.as_str()) {
            (Some(m), "custom") => MomentModel::custom(m.iter().map(|r| r.0.clone()).collect()),
            (None, "custom") => Err(Error::Document("custom model without moments".into())),
            (Some(_), _) => Err(Error::Document("only custom models carry moments".into())),
            (None, kind) => {
                let params: Vec<_> =
                    self.params.iter().map(|(k, v)| (k.clone(), v.0.clone())).collect();
                MomentModel::from_params(kind, &params)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDoc {
    pub model: ModelDoc,
    pub u: RatStr,
    pub lambda: RatStr,
    pub order: usize,
}

impl SpecDoc {
    pub fn from_spec(s: &FamilySpec) -> Self {
        SpecDoc {
            model: ModelDoc::from_model(s.model()),
            u: RatStr(s.u().clone()),
            lambda: RatStr(s.lambda().clone()),
            order: s.order_r(),
        }
    }

    pub fn to_spec(&self) -> Result<FamilySpec> {
        FamilySpec::new(self.model.to_model()?, self.u.0.clone(), self.lambda.0.clone(), self.order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub family: String,
    pub nmax: usize,
    pub lambda: Option<RatStr>,
    pub model: Option<ModelDoc>,
    pub rows: Vec<Vec<RatStr>>,
}

pub fn table_doc(t: &StirlingTable) -> TableDoc {
    TableDoc {
        family: t.family().code().to_string(),
        nmax: t.nmax(),
        lambda: t.lambda().cloned().map(RatStr),
        model: t.model().map(ModelDoc::from_model),
        rows: t.rows().iter().map(|r| strs(r)).collect(),
    }
}

pub fn table_to_json(t: &StirlingTable) -> String {
    serde_json::to_string(&table_doc(t)).expect("table serializes")
}

pub fn table_from_json(text: &str) -> Result<StirlingTable> {
    let doc: TableDoc = serde_json::from_str(text).map_err(doc_err)?;
    let family = StirlingFamily::from_code(&doc.family)
        .ok_or_else(|| Error::Document(format!("unknown family {:?}", doc.family)))?;
    if doc.rows.len() != doc.nmax + 1 || doc.rows.iter().enumerate().any(|(n, r)| r.len() != n + 1) {
        return Err(Error::Document("rows must form a lower triangle of size nmax + 1".into()));
    }
    if family.is_degenerate() != doc.lambda.is_some() {
        return Err(Error::Document(format!("lambda presence does not match family {family}")));
    }
    if family.is_probabilistic() != doc.model.is_some() {
        return Err(Error::Document(format!("model presence does not match family {family}")));
    }
    let model = doc.model.as_ref().map(ModelDoc::to_model).transpose()?;
    let rows = doc.rows.into_iter().map(rats).collect();
    Ok(StirlingTable::new(family, doc.lambda.map(|l| l.0), model, rows))
}

/// Row-major CSV, one table row per line, no header and no quoting.
pub fn table_to_csv(t: &StirlingTable) -> String {
    let mut out = String::new();
    for row in t.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub spec: SpecDoc,
    pub nmax: usize,
    /// Monomial coefficients of `P_n`, constant term first.
    pub polys: Vec<Vec<RatStr>>,
}

pub fn family_doc(f: &PolynomialFamily) -> FamilyDoc {
    FamilyDoc {
        spec: SpecDoc::from_spec(f.spec()),
        nmax: f.nmax(),
        polys: f.polys().iter().map(|p| strs(p.coeffs())).collect(),
    }
}

pub fn family_to_json(f: &PolynomialFamily) -> String {
    serde_json::to_string(&family_doc(f)).expect("family serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionDoc {
    pub basis: SpecDoc,
    pub formula: String,
    pub coefficients: Vec<RatStr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reconstruction_ok: Option<bool>,
    /// Whether every formula of the same theorem gave these coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formulas_agree: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl ExpansionDoc {
    pub fn to_expansion(&self) -> Result<BasisExpansion> {
        Ok(BasisExpansion {
            spec: self.basis.to_spec()?,
            coefficients: self.coefficients.iter().map(|r| r.0.clone()).collect(),
            formula: self.formula.parse()?,
        })
    }
}

pub fn expansion_doc(e: &BasisExpansion, reconstruction_ok: Option<bool>) -> ExpansionDoc {
    ExpansionDoc {
        basis: SpecDoc::from_spec(&e.spec),
        formula: e.formula.to_string(),
        coefficients: strs(&e.coefficients),
        reconstruction_ok,
        formulas_agree: None,
        source: None,
    }
}

pub fn expansion_to_json(e: &BasisExpansion, reconstruction_ok: Option<bool>) -> String {
    serde_json::to_string(&expansion_doc(e, reconstruction_ok)).expect("expansion serializes")
}

pub fn expansion_from_json(text: &str) -> Result<BasisExpansion> {
    let doc: ExpansionDoc = serde_json::from_str(text).map_err(doc_err)?;
    doc.to_expansion()
}

/// Closed-form results use the expansion shape; `formula` names the target.
pub fn closed_form_doc(
    c: &ClosedFormResult,
    spec: &FamilySpec,
    reconstruction_ok: Option<bool>,
) -> ExpansionDoc {
    let formula = match c.target {
        Target::Falling(n) => format!("falling-{n}"),
        Target::Monomial(n) => format!("monomial-{n}"),
    };
    ExpansionDoc {
        basis: SpecDoc::from_spec(spec),
        formula,
        coefficients: strs(&c.coefficients),
        reconstruction_ok,
        formulas_agree: None,
        source: Some("closed-form".into()),
    }
}

pub fn to_pretty<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("document serializes")
}
