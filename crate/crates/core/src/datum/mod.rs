//! Modular data, their raw categorical precursors, and the checks relating
//! them.
//!
//! A [`RawDatum`] is what a category hands over: the unnormalized
//! `S^{R,R}` (or its restriction to a set of representatives), the twists
//! and the duality. A [`ModularDatum`] is the normalized pair `(S, T)` with
//! a distinguished unit. Everything in between is exact.

mod checks;
mod fusion;
mod pipeline;
mod report;
mod sldeg;
mod sqrt;
mod structure;
mod verlinde;

pub use checks::{
    check_balancing, check_raw_unitarity, check_sl2_relations, check_twist_laws, check_vafa, dims_of,
    gauss_sums, Dims, GaussSums,
};
pub use fusion::FusionTensor;
pub use pipeline::{verify_raw, Classification, VerifyMode, VerifyOptions, VerifyOutcome};
pub use report::{CheckResult, Outcome, Status, VerificationReport};
pub use sldeg::{
    emit_zmodular, quotient_constants, reduce_bold, reduce_slightly_degenerate, reduce_with_representatives, signed_verlinde,
    SlightlyDegenerateData, ZModularOutput,
};
pub use sqrt::sqrt_in_field;
pub use structure::{
    bar_involution, detect_symmetric_center, prepare_nondegenerate, BraidedData, CenterKind, Regime, SymmetricCenter,
};
pub use verlinde::{check_axioms, normalize_nondegenerate, verlinde_fusion, VerlindeClass, VerlindeOutcome};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclinalg::{CycMatrix, LinalgError};
use crate::cyclotomic::{CycError, CycNum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DatumError {
    #[error("malformed datum: {0}")]
    Malformed(String),
    #[error("label {0:?} has zero quantum dimension")]
    ZeroDimension(String),
    #[error("duality data is required for this operation")]
    MissingDuality,
    #[error("left dimensions are required for a restricted datum")]
    MissingLeftDimensions,
    #[error("input violates the nondegeneracy hypotheses: {0}")]
    Degenerate(String),
    #[error("symmetric center {center:?} is not of the required shape: {reason}")]
    CenterShape { center: Vec<String>, reason: String },
    #[error(
        "the central object {label:?} has dimension +1 and twist -1; \
         the SL2(Z) relations can fail in this case (see the sl2 q16 counterexample)"
    )]
    EvenFermion { label: String },
    #[error("the epsilon-translate fixes {0:?}")]
    FixedPoint(String),
    #[error("normalizer does not square to {expected}")]
    BadNormalizer { expected: String },
    #[error(transparent)]
    Field(#[from] CycError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Whether a raw S-matrix covers all simples or only a set of
/// representatives of the epsilon-orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RawKind {
    Full,
    Bold,
}

/// Unnormalized categorical data: `S^{R,R}` (or the restricted bold `S`),
/// the twists `theta_X` and the duality. The T-matrix is `diag(theta^-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDatum {
    pub labels: Vec<String>,
    pub unit: usize,
    pub s: CycMatrix,
    pub twists: Vec<CycNum>,
    pub kind: RawKind,
    /// `duality[X]` is the index of `X^*`.
    pub duality: Option<Vec<usize>>,
    /// Left dimensions, for restricted data with no duality.
    pub dim_l: Option<Vec<CycNum>>,
    /// Preferred representatives of the epsilon-orbits.
    pub representatives: Option<Vec<usize>>,
    /// A square root of the normalization scale, if known in closed form.
    pub normalizer: Option<CycNum>,
}

impl RawDatum {
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        s: CycMatrix,
        twists: Vec<CycNum>,
        kind: RawKind,
    ) -> Result<Self, DatumError> {
        let raw = RawDatum {
            labels,
            unit,
            s,
            twists,
            kind,
            duality: None,
            dim_l: None,
            representatives: None,
            normalizer: None,
        };
        raw.validate()?;
        Ok(raw)
    }

    pub fn with_duality(mut self, duality: Vec<usize>) -> Result<Self, DatumError> {
        self.duality = Some(duality);
        self.validate()?;
        Ok(self)
    }

    pub fn with_dim_l(mut self, dim_l: Vec<CycNum>) -> Result<Self, DatumError> {
        self.dim_l = Some(dim_l);
        self.validate()?;
        Ok(self)
    }

    pub fn with_representatives(mut self, reps: Vec<usize>) -> Result<Self, DatumError> {
        self.representatives = Some(reps);
        self.validate()?;
        Ok(self)
    }

    pub fn with_normalizer(mut self, c: CycNum) -> Self {
        self.normalizer = Some(c);
        self
    }

    /// Checks shapes, index ranges and the invariants every raw datum must
    /// satisfy.
    pub fn validate(&self) -> Result<(), DatumError> {
        let n = self.labels.len();
        let bad = |m: String| Err(DatumError::Malformed(m));
        if n == 0 {
            return bad("no labels".into());
        }
        if self.s.shape() != (n, n) {
            return bad(format!("S is {:?} but there are {n} labels", self.s.shape()));
        }
        if self.twists.len() != n {
            return bad(format!("{} twists for {n} labels", self.twists.len()));
        }
        if self.unit >= n {
            return bad(format!("unit index {} out of range", self.unit));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = self.labels.iter().find(|l| !seen.insert(l.as_str())) {
            return bad(format!("duplicate label {dup:?}"));
        }
        for (x, d) in self.s.row(self.unit).iter().enumerate() {
            if d.is_zero() {
                return Err(DatumError::ZeroDimension(self.labels[x].clone()));
            }
        }
        if let Some(x) = self.twists.iter().position(CycNum::is_zero) {
            return bad(format!("twist of {:?} is zero", self.labels[x]));
        }
        if let Some(dual) = &self.duality {
            if dual.len() != n || dual.iter().any(|&j| j >= n) {
                return bad("duality has the wrong length or an index out of range".into());
            }
            if let Some(x) = (0..n).find(|&x| dual[dual[x]] != x) {
                return bad(format!("duality is not an involution at {:?}", self.labels[x]));
            }
            if dual[self.unit] != self.unit {
                return bad("the unit is not self-dual".into());
            }
        }
        if let Some(dl) = &self.dim_l {
            if dl.len() != n {
                return bad(format!("{} left dimensions for {n} labels", dl.len()));
            }
        }
        if let Some(reps) = &self.representatives {
            if reps.iter().any(|&j| j >= n) {
                return bad("representative index out of range".into());
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn conductor(&self) -> u32 {
        self.twists.iter().fold(self.s.conductor(), |m, t| crate::cyclotomic::lcm(m, t.conductor()))
    }

    /// `dim^R(X) = S[unit, X]`.
    pub fn dims_r(&self) -> Vec<CycNum> {
        self.s.row(self.unit).to_vec()
    }

    /// `dim^L(X) = dim^R(X^*)`, or the stored left dimensions.
    pub fn dims_l(&self) -> Result<Vec<CycNum>, DatumError> {
        if let Some(dual) = &self.duality {
            let r = self.dims_r();
            return Ok(dual.iter().map(|&j| r[j].clone()).collect());
        }
        self.dim_l.clone().ok_or(DatumError::MissingDuality)
    }

    /// The T-matrix `diag(theta_X^-1)`.
    pub fn t_matrix(&self) -> CycMatrix {
        let inv: Vec<CycNum> = self.twists.iter().map(|t| t.inv().expect("twists are non-zero")).collect();
        CycMatrix::diagonal(&inv)
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A normalized datum `(S, T)` indexed by `labels`, with unit `labels[unit]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularDatum {
    pub labels: Vec<String>,
    pub unit: usize,
    pub s: CycMatrix,
    /// Diagonal of `T`.
    pub t: Vec<CycNum>,
}

impl ModularDatum {
    pub fn new(labels: Vec<String>, unit: usize, s: CycMatrix, t: Vec<CycNum>) -> Result<Self, DatumError> {
        let n = labels.len();
        if n == 0 || s.shape() != (n, n) || t.len() != n || unit >= n {
            return Err(DatumError::Malformed(format!(
                "{n} labels, S of shape {:?}, {} T entries, unit {unit}",
                s.shape(),
                t.len()
            )));
        }
        Ok(ModularDatum { labels, unit, s, t })
    }

    /// The one-label datum `S = (1)`, `T = (1)`.
    pub fn trivial() -> Self {
        ModularDatum {
            labels: vec!["1".into()],
            unit: 0,
            s: CycMatrix::identity(1, 1),
            t: vec![CycNum::one(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn t_matrix(&self) -> CycMatrix {
        CycMatrix::diagonal(&self.t)
    }

    pub fn conductor(&self) -> u32 {
        self.t.iter().fold(self.s.conductor(), |m, t| crate::cyclotomic::lcm(m, t.conductor()))
    }
}
