//! JSON documents for forms and decompositions.
//!
//! ```text
//! form:          {"weight": k, "truncation": N, "coeffs": [[c_0(0..N)], [c_1(0..N)], ...]}
//! decomposition: {"weight": k, "e2_coeff": "p/q", "parts": [{"ell": l, "coeffs": [...]}]}
//! ```
//!
//! Rationals are canonical strings (`"p/q"` or `"p"`). Field order is fixed, so
//! output is byte-for-byte deterministic.

use serde::{Deserialize, Serialize};

use crate::classical::HolomorphicForm;
use crate::error::{Error, Result};
use crate::nearly::NearlyForm;
use crate::qseries::{format_rational, parse_rational, QSeries};
use crate::structure::Decomposition;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDocument {
    pub weight: i64,
    pub truncation: usize,
    pub coeffs: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartDocument {
    pub ell: i64,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDocument {
    pub weight: i64,
    pub e2_coeff: String,
    pub parts: Vec<PartDocument>,
}

fn series_strings(s: &QSeries) -> Vec<String> {
    s.coeffs().iter().map(format_rational).collect()
}

fn parse_series(strings: &[String], truncation: usize) -> Result<QSeries> {
    if strings.len() != truncation + 1 {
        return Err(Error::Parse(format!(
            "coefficient array has length {}, expected truncation + 1 = {}",
            strings.len(),
            truncation + 1
        )));
    }
    QSeries::new(
        strings
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_>>()?,
    )
}

impl FormDocument {
    pub fn from_form(f: &NearlyForm) -> Self {
        FormDocument {
            weight: f.weight(),
            truncation: f.truncation(),
            coeffs: f.coeffs().iter().map(series_strings).collect(),
        }
    }

    pub fn to_form(&self) -> Result<NearlyForm> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| parse_series(c, self.truncation))
            .collect::<Result<Vec<_>>>()?;
        NearlyForm::new(self.weight, self.truncation, coeffs)
    }
}

impl DecompositionDocument {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        DecompositionDocument {
            weight: d.weight,
            e2_coeff: format_rational(&d.e2_coeff),
            parts: d
                .parts
                .iter()
                .map(|(&ell, f)| PartDocument {
                    ell,
                    coeffs: series_strings(&f.series),
                })
                .collect(),
        }
    }

    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let truncation = self
            .parts
            .first()
            .map_or(0, |p| p.coeffs.len().saturating_sub(1));
        let mut d = Decomposition::zero(self.weight, truncation);
        d.e2_coeff = parse_rational(&self.e2_coeff)?;
        for part in &self.parts {
            let series = parse_series(&part.coeffs, truncation)?;
            if d.parts
                .insert(part.ell, HolomorphicForm::new(part.ell, series))
                .is_some()
            {
                return Err(Error::Parse(format!(
                    "duplicate part for ell = {}",
                    part.ell
                )));
            }
        }
        Ok(d)
    }
}

pub fn form_to_json(f: &NearlyForm) -> String {
    serde_json::to_string(&FormDocument::from_form(f)).expect("serializable")
}

pub fn form_from_json(text: &str) -> Result<NearlyForm> {
    let doc: FormDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("form document: {e}")))?;
    doc.to_form()
}

pub fn decomposition_to_json(d: &Decomposition) -> String {
    serde_json::to_string(&DecompositionDocument::from_decomposition(d)).expect("serializable")
}

pub fn decomposition_from_json(text: &str) -> Result<Decomposition> {
    let doc: DecompositionDocument = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("decomposition document: {e}")))?;
    doc.to_decomposition()
}
