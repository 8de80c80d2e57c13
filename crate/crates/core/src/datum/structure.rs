//! Symmetric center, the bar involution, and the shared view of a datum that
//! the identity checks run on.

use serde::{Deserialize, Serialize};

use super::{DatumError, RawDatum, RawKind};
use crate::cyclinalg::CycMatrix;
use crate::cyclotomic::CycNum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Nondegenerate,
    SlightlyDegenerate,
}

/// What the checks need, for either the full nondegenerate matrix or the
/// bold matrix of a slightly degenerate category. In the second case
/// `labels` are the representatives and `dim` is the superdimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedData {
    pub regime: Regime,
    pub labels: Vec<String>,
    pub unit: usize,
    pub s: CycMatrix,
    pub twists: Vec<CycNum>,
    pub dim_r: Vec<CycNum>,
    pub dim_l: Vec<CycNum>,
    /// `theta_{X^*}`, when the duality is known.
    pub theta_dual: Option<Vec<CycNum>>,
    /// `dim(C)` or `sdim(C)`.
    pub dim: CycNum,
    pub bar: Vec<usize>,
    pub unit_bar: usize,
    /// `dim^R(1bar)`.
    pub dim_unit_bar: CycNum,
}

impl BraidedData {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn sqnorms(&self) -> Vec<CycNum> {
        self.dim_r.iter().zip(&self.dim_l).map(|(r, l)| r * l).collect()
    }

    /// `diag(theta^-1)`.
    pub fn t_matrix(&self) -> CycMatrix {
        CycMatrix::diagonal(&self.twists.iter().map(|t| t.inv().unwrap()).collect::<Vec<_>>())
    }

    pub fn t_inv_matrix(&self) -> CycMatrix {
        CycMatrix::diagonal(&self.twists)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterKind {
    Nondegenerate,
    /// `{1, eps}` with `dim(eps) = -1`.
    SlightlyDegenerate { epsilon: usize },
    /// `{1, eps}` with `dim(eps) = +1`, `theta_eps = -1`.
    EvenFermion { epsilon: usize },
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricCenter {
    pub members: Vec<usize>,
    pub kind: CenterKind,
}

impl SymmetricCenter {
    pub fn describe(&self) -> &'static str {
        match self.kind {
            CenterKind::Nondegenerate => "nondegenerate",
            CenterKind::SlightlyDegenerate { .. } => "slightly-degenerate",
            CenterKind::EvenFermion { .. } => "slightly-degenerate (dim eps = +1)",
            CenterKind::Degenerate => "degenerate",
        }
    }
}

/// All `X` with `S[X, Y] = dim^R(X) dim^R(Y)` for every `Y`.
pub fn detect_symmetric_center(raw: &RawDatum) -> Result<SymmetricCenter, DatumError> {
    if raw.kind != RawKind::Full {
        return Err(DatumError::Malformed("symmetric center needs the full S-matrix".into()));
    }
    let dims = raw.dims_r();
    let n = raw.len();
    let members: Vec<usize> =
        (0..n).filter(|&x| (0..n).all(|y| *raw.s.get(x, y) == &dims[x] * &dims[y])).collect();
    let one = CycNum::one(1);
    let kind = match members.as_slice() {
        [u] if *u == raw.unit => CenterKind::Nondegenerate,
        [a, b] if *a == raw.unit || *b == raw.unit => {
            let eps = if *a == raw.unit { *b } else { *a };
            if dims[eps] == -&one {
                CenterKind::SlightlyDegenerate { epsilon: eps }
            } else if dims[eps] == one && raw.twists[eps] == -&one {
                CenterKind::EvenFermion { epsilon: eps }
            } else {
                CenterKind::Degenerate
            }
        }
        _ => CenterKind::Degenerate,
    };
    Ok(SymmetricCenter { members, kind })
}

/// `s_{xb}(Y) = s_x(Y^*)` for all `Y` in `tests`, in division-free form.
fn characters_match(
    s: &CycMatrix,
    dims: &[CycNum],
    dual: &[usize],
    x: usize,
    xb: usize,
    tests: impl Iterator<Item = usize>,
) -> bool {
    let mut tests = tests;
    tests.all(|y| s.get(xb, y) * &dims[x] == s.get(x, dual[y]) * &dims[xb])
}

/// For each candidate `X`, the unique candidate `Xb` whose character is
/// `Y -> s_X(Y^*)`. Returned as positions into `candidates`.
pub(crate) fn match_bar(
    raw: &RawDatum,
    dual: &[usize],
    candidates: &[usize],
) -> Result<Vec<usize>, DatumError> {
    let dims = raw.dims_r();
    let n = raw.len();
    let mut bar = Vec::with_capacity(candidates.len());
    for &x in candidates {
        let hits: Vec<usize> = (0..candidates.len())
            .filter(|&p| characters_match(&raw.s, &dims, dual, x, candidates[p], 0..n))
            .collect();
        match hits.as_slice() {
            [p] => bar.push(*p),
            [] => return Err(DatumError::Degenerate(format!("no bar partner for {:?}", raw.labels[x]))),
            _ => {
                return Err(DatumError::Degenerate(format!(
                    "{:?} has {} candidates for its bar partner",
                    raw.labels[x],
                    hits.len()
                )))
            }
        }
    }
    if let Some(p) = (0..bar.len()).find(|&p| bar[bar[p]] != p) {
        return Err(DatumError::Degenerate(format!(
            "bar is not an involution at {:?}",
            raw.labels[candidates[p]]
        )));
    }
    Ok(bar)
}

/// The involution `X -> Xb` with `s_{Xb}(Y) = s_X(Y^*)`, and `1bar`.
pub fn bar_involution(raw: &RawDatum) -> Result<(Vec<usize>, usize), DatumError> {
    if raw.kind != RawKind::Full {
        return Err(DatumError::Malformed("bar involution of a restricted datum needs its parent".into()));
    }
    let dual = raw.duality.as_ref().ok_or(DatumError::MissingDuality)?;
    let all: Vec<usize> = (0..raw.len()).collect();
    let bar = match_bar(raw, dual, &all)?;
    let unit_bar = bar[raw.unit];
    Ok((bar, unit_bar))
}

/// The checkable view of a full nondegenerate raw datum.
pub fn prepare_nondegenerate(raw: &RawDatum) -> Result<BraidedData, DatumError> {
    let dual = raw.duality.as_ref().ok_or(DatumError::MissingDuality)?;
    let (bar, unit_bar) = bar_involution(raw)?;
    let dim_r = raw.dims_r();
    let dim_l = raw.dims_l()?;
    let dim = dim_r.iter().zip(&dim_l).fold(CycNum::zero(1), |acc, (r, l)| acc + r * l);
    Ok(BraidedData {
        regime: Regime::Nondegenerate,
        labels: raw.labels.clone(),
        unit: raw.unit,
        s: raw.s.clone(),
        twists: raw.twists.clone(),
        dim_unit_bar: dim_r[unit_bar].clone(),
        theta_dual: Some(dual.iter().map(|&j| raw.twists[j].clone()).collect()),
        dim_r,
        dim_l,
        dim,
        bar,
        unit_bar,
    })
}
