//! The datum file format.
//!
//! ```json
//! {"labels": [...], "unit": 0, "conductor": 3, "S": {"rows": .., "cols": .., "entries": [[..]]},
//!  "T": [...], "kind": "raw-full", "twists": [...], "duality": [...]}
//! ```
//!
//! Raw files store `T = diag(theta^-1)` alongside the twists; the two must
//! agree. Optional keys: `duality`, `dim_L`, `J` (preferred representatives,
//! as label indices) and `normalizer`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclinalg::CycMatrix;
use crate::cyclotomic::CycNum;
use crate::datum::{DatumError, ModularDatum, RawDatum, RawKind, VerificationReport};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("inconsistent datum file: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Datum(#[from] DatumError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FileKind {
    Normalized,
    RawFull,
    RawBold,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumFile {
    labels: Vec<String>,
    unit: usize,
    conductor: u32,
    #[serde(rename = "S")]
    s: CycMatrix,
    #[serde(rename = "T")]
    t: Vec<CycNum>,
    kind: FileKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    twists: Option<Vec<CycNum>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    duality: Option<Vec<usize>>,
    #[serde(default, rename = "dim_L", skip_serializing_if = "Option::is_none")]
    dim_l: Option<Vec<CycNum>>,
    #[serde(default, rename = "J", skip_serializing_if = "Option::is_none")]
    representatives: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normalizer: Option<CycNum>,
}

/// Contents of a datum file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatumDocument {
    Raw(RawDatum),
    Normalized(ModularDatum),
}

impl From<RawDatum> for DatumDocument {
    fn from(r: RawDatum) -> Self {
        DatumDocument::Raw(r)
    }
}

impl From<ModularDatum> for DatumDocument {
    fn from(m: ModularDatum) -> Self {
        DatumDocument::Normalized(m)
    }
}

impl DatumDocument {
    pub fn kind(&self) -> FileKind {
        match self {
            DatumDocument::Raw(r) if r.kind == RawKind::Full => FileKind::RawFull,
            DatumDocument::Raw(_) => FileKind::RawBold,
            DatumDocument::Normalized(_) => FileKind::Normalized,
        }
    }

    fn to_file(&self) -> DatumFile {
        match self {
            DatumDocument::Raw(r) => DatumFile {
                labels: r.labels.clone(),
                unit: r.unit,
                conductor: r.conductor(),
                s: r.s.clone(),
                t: r.twists.iter().map(|t| t.inv().expect("twists are non-zero")).collect(),
                kind: self.kind(),
                twists: Some(r.twists.clone()),
                duality: r.duality.clone(),
                dim_l: r.dim_l.clone(),
                representatives: r.representatives.clone(),
                normalizer: r.normalizer.clone(),
            },
            DatumDocument::Normalized(m) => DatumFile {
                labels: m.labels.clone(),
                unit: m.unit,
                conductor: m.conductor(),
                s: m.s.clone(),
                t: m.t.clone(),
                kind: FileKind::Normalized,
                twists: None,
                duality: None,
                dim_l: None,
                representatives: None,
                normalizer: None,
            },
        }
    }

    fn from_file(f: DatumFile) -> Result<Self, JsonError> {
        let bad = |m: &str| Err(JsonError::Inconsistent(m.to_string()));
        if f.kind == FileKind::Normalized {
            if f.twists.is_some() || f.duality.is_some() || f.dim_l.is_some() || f.representatives.is_some() {
                return bad("normalized files carry only labels, unit, S and T");
            }
            return Ok(DatumDocument::Normalized(ModularDatum::new(f.labels, f.unit, f.s, f.t)?));
        }
        if f.t.len() != f.labels.len() {
            return bad("T has the wrong length");
        }
        if f.t.iter().any(CycNum::is_zero) {
            return bad("T has a zero entry");
        }
        let from_t: Vec<CycNum> = f.t.iter().map(|t| t.inv().unwrap()).collect();
        let twists = match f.twists {
            Some(tw) if tw != from_t => return bad("twists are not the inverses of the T entries"),
            Some(tw) => tw,
            None => from_t,
        };
        let kind = if f.kind == FileKind::RawFull { RawKind::Full } else { RawKind::Bold };
        let mut raw = RawDatum::new(f.labels, f.unit, f.s, twists, kind)?;
        if let Some(d) = f.duality {
            raw = raw.with_duality(d)?;
        }
        if let Some(dl) = f.dim_l {
            raw = raw.with_dim_l(dl)?;
        }
        if let Some(j) = f.representatives {
            raw = raw.with_representatives(j)?;
        }
        if let Some(c) = f.normalizer {
            raw = raw.with_normalizer(c);
        }
        if f.conductor != 0 && !f.conductor.is_multiple_of(raw.conductor()) {
            return bad("entries do not lie in the declared field");
        }
        Ok(DatumDocument::Raw(raw))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("datum files serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, JsonError> {
        Self::from_file(serde_json::from_str(text)?)
    }
}

pub fn report_to_json(report: &VerificationReport) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

pub fn report_from_json(text: &str) -> Result<VerificationReport, JsonError> {
    Ok(serde_json::from_str(text)?)
}
