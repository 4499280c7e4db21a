//! JSON file formats: set-function documents and machine-readable reports.
//!
//! A document lists the finite values of `f`; every other subset takes the
//! document's `default`, which must be `"-inf"`:
//!
//! ```json
//! { "n": 2, "default": "-inf",
//!   "values": [ { "set": [], "value": "0" }, { "set": [1], "value": "1/2" } ] }
//! ```

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::axioms::{
    CardinalityWitness, DisconnectWitness, ExchangeWitness, LocalCharacterizationFailure, UnitEvaluation,
};
use crate::certificates::SubmodularityCertificate;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::setfn::{SetFn, SetFnError};
use crate::subset::{Subset, MAX_GROUND};

pub const REPORT_SCHEMA: u32 = 1;
pub const TOOL_NAME: &str = "mnat";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueEntry {
    pub set: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFnDocument {
    pub n: usize,
    pub default: String,
    pub values: Vec<ValueEntry>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

impl DocumentError {
    fn field(field: impl Into<String>, message: impl ToString) -> Self {
        DocumentError::Field {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

impl SetFnDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_set_fn(&self) -> Result<SetFn, DocumentError> {
        if !(1..=MAX_GROUND).contains(&self.n) {
            return Err(DocumentError::field("n", format!("must lie in 1..={MAX_GROUND}")));
        }
        if self.default != "-inf" {
            return Err(DocumentError::field("default", "only \"-inf\" is supported"));
        }
        let mut seen = HashSet::new();
        let mut entries = Vec::with_capacity(self.values.len());
        for (k, entry) in self.values.iter().enumerate() {
            let mut mask = Subset::EMPTY;
            for &e in &entry.set {
                if e == 0 || e > self.n {
                    return Err(DocumentError::field(
                        format!("values[{k}].set"),
                        format!("element {e} outside 1..={}", self.n),
                    ));
                }
                if mask.contains(e) {
                    return Err(DocumentError::field(format!("values[{k}].set"), format!("element {e} repeated")));
                }
                mask = mask.with(e);
            }
            if !seen.insert(mask) {
                return Err(DocumentError::field(format!("values[{k}].set"), format!("duplicate set {mask}")));
            }
            let value =
                parse_rational(&entry.value).map_err(|e| DocumentError::field(format!("values[{k}].value"), e))?;
            entries.push((mask, value));
        }
        SetFn::from_finite(self.n, entries).map_err(|e| match e {
            SetFnError::EmptyDomain => DocumentError::field("values", "at least one finite value is required"),
            other => DocumentError::field("values", other),
        })
    }

    /// Canonical document: sets sorted ascending, entries ordered by size
    /// then lexicographically, values in reduced form.
    pub fn from_set_fn(f: &SetFn) -> Self {
        let mut doms: Vec<Subset> = f.domain().to_vec();
        doms.sort_by_key(|x| (x.len(), x.to_vec()));
        SetFnDocument {
            n: f.n(),
            default: "-inf".into(),
            values: doms
                .into_iter()
                .map(|x| ValueEntry {
                    set: x.to_vec(),
                    value: format_rational(f.finite_value(x).expect("domain member")),
                })
                .collect(),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// SHA-256 of the canonical compact form of `f`.
    pub fn digest(f: &SetFn) -> String {
        let canonical = serde_json::to_string(&Self::from_set_fn(f)).expect("documents serialize");
        format!("sha256:{}", hex::encode(Sha256::digest(canonical.as_bytes())))
    }
}

/// Reads and validates a document in one step.
pub fn parse_set_fn(text: &str) -> Result<SetFn, DocumentError> {
    SetFnDocument::parse(text)?.to_set_fn()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    M,
    Mnat,
    Equicardinal,
    Connected,
    Local,
    #[value(alias = "theorem4")]
    LocalCharacterization,
    All,
}

impl Axiom {
    /// Checks run for `--axiom all`, in report order.
    pub const EACH: [Axiom; 6] = [
        Axiom::Equicardinal,
        Axiom::Mnat,
        Axiom::M,
        Axiom::Connected,
        Axiom::Local,
        Axiom::LocalCharacterization,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The check presupposes an equicardinal domain.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    Exchange(ExchangeWitness),
    Cardinality(CardinalityWitness),
    Disconnect(DisconnectWitness),
    LocalCharacterization(LocalCharacterizationFailure),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateValue {
    #[serde(with = "crate::rational::serde_vec")]
    pub price: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
    pub maximizer: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub input_digest: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<AxiomVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugate: Option<ConjugateValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SubmodularityCertificate>,
    /// Best-effort unit-perturbation violation of `g` itself, searched for
    /// when the certificate lives on the lift.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_violation: Option<UnitEvaluation>,
}

impl Report {
    pub fn new(f: &SetFn) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            tool: TOOL_NAME.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input_digest: SetFnDocument::digest(f),
            verdicts: Vec::new(),
            conjugate: None,
            certificate: None,
            base_violation: None,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
