//! Verlinde formulas, normalization, and the axiom check of a normalized
//! modular datum.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::checks::unitarity;
use super::fusion::FusionTensor;
use super::report::{compare, num, Outcome, VerificationReport};
use super::sqrt::sqrt_in_field;
use super::structure::BraidedData;
use super::{DatumError, ModularDatum};
use crate::cyclinalg::CycMatrix;
use crate::cyclotomic::CycNum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerlindeClass {
    /// All constants are non-negative integers.
    #[serde(rename = "N-modular")]
    NModular,
    /// All constants are integers, some negative.
    #[serde(rename = "Z-modular")]
    ZModular,
    #[serde(rename = "non-integral")]
    NonIntegral,
}

impl VerlindeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            VerlindeClass::NModular => "N-modular",
            VerlindeClass::ZModular => "Z-modular",
            VerlindeClass::NonIntegral => "non-integral",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerlindeOutcome {
    pub class: VerlindeClass,
    /// Present when every constant is an integer and the duality is readable.
    pub tensor: Option<FusionTensor>,
    /// The offending entry when the class is `NonIntegral` or no duality
    /// could be read off.
    pub witness: Option<Value>,
}

impl VerlindeOutcome {
    fn from_values(labels: &[String], unit: usize, values: Vec<CycNum>) -> Self {
        let n = labels.len();
        let mut ints = Vec::with_capacity(values.len());
        for (idx, v) in values.iter().enumerate() {
            match v.as_integer().and_then(|i| i64::try_from(i).ok()) {
                Some(i) => ints.push(i),
                None => {
                    let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
                    return VerlindeOutcome {
                        class: VerlindeClass::NonIntegral,
                        tensor: None,
                        witness: Some(json!({ "i": labels[i], "j": labels[j], "k": labels[k], "value": num(v) })),
                    };
                }
            }
        }
        let class = if ints.iter().any(|&c| c < 0) { VerlindeClass::ZModular } else { VerlindeClass::NModular };
        match FusionTensor::from_constants(labels.to_vec(), unit, ints) {
            Ok(t) => VerlindeOutcome { class, tensor: Some(t), witness: None },
            Err(e) => VerlindeOutcome { class, tensor: None, witness: Some(json!({ "error": e.to_string() })) },
        }
    }

    pub fn is_integral(&self) -> bool {
        self.class != VerlindeClass::NonIntegral
    }

    /// Report entry: pass iff the constants are integral and form a based
    /// ring with readable duality.
    pub(crate) fn outcome(&self) -> Outcome {
        match (&self.tensor, &self.witness) {
            (Some(t), _) => {
                let negative = t.constants().iter().filter(|&&c| c < 0).count();
                Ok(json!({ "class": self.class.as_str(), "negative_entries": negative }))
            }
            (None, w) => Err(json!({ "class": self.class.as_str(), "witness": w })),
        }
    }
}

/// `N_{i,j}^k = sum_l S_{i,l} S_{j,l} conj(S_{k,l}) / S_{unit,l}`.
pub fn verlinde_fusion(datum: &ModularDatum) -> Result<VerlindeOutcome, DatumError> {
    let n = datum.len();
    let s = &datum.s;
    let inv0: Vec<CycNum> = (0..n)
        .map(|l| {
            s.get(datum.unit, l)
                .inv()
                .map_err(|_| DatumError::Malformed(format!("S[unit, {:?}] = 0", datum.labels[l])))
        })
        .collect::<Result<_, _>>()?;
    let conj: Vec<Vec<CycNum>> = (0..n).map(|k| s.row(k).iter().map(CycNum::conj).collect()).collect();
    let values = sum_triples(n, |i, l| s.get(i, l) * &inv0[l], |j, l| s.get(j, l).clone(), |k, l| conj[k][l].clone());
    Ok(VerlindeOutcome::from_values(&datum.labels, datum.unit, values))
}

/// `sign_Z / (D u) sum_W S_{W,X} S_{W,Y} S_{W,Zbar} / dim^R(W)`, the
/// Verlinde formula of the raw theory. All signs are `+1` in the
/// nondegenerate case.
pub(crate) fn raw_verlinde(data: &BraidedData, signs: &[i8]) -> VerlindeOutcome {
    let n = data.len();
    let s = &data.s;
    let du = &data.dim * &data.dim_unit_bar;
    let scale: Vec<CycNum> = (0..n).map(|w| (&data.dim_r[w] * &du).inv().unwrap()).collect();
    let mut values = sum_triples(
        n,
        |x, w| s.get(w, x) * &scale[w],
        |y, w| s.get(w, y).clone(),
        |z, w| s.get(w, data.bar[z]).clone(),
    );
    for (idx, v) in values.iter_mut().enumerate() {
        if signs[idx % n] < 0 {
            *v = -&*v;
        }
    }
    VerlindeOutcome::from_values(&data.labels, data.unit, values)
}

/// `V[(i n + j) n + k] = sum_l a(i,l) b(j,l) c(k,l)`.
fn sum_triples(
    n: usize,
    a: impl Fn(usize, usize) -> CycNum,
    b: impl Fn(usize, usize) -> CycNum,
    c: impl Fn(usize, usize) -> CycNum,
) -> Vec<CycNum> {
    let a: Vec<Vec<CycNum>> = (0..n).map(|i| (0..n).map(|l| a(i, l)).collect()).collect();
    let b: Vec<Vec<CycNum>> = (0..n).map(|j| (0..n).map(|l| b(j, l)).collect()).collect();
    let c: Vec<Vec<CycNum>> = (0..n).map(|k| (0..n).map(|l| c(k, l)).collect()).collect();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let ab: Vec<CycNum> = (0..n).map(|l| &a[i][l] * &b[j][l]).collect();
            for ck in &c {
                let v = ab.iter().zip(ck).fold(CycNum::zero(1), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { acc + x * y });
                out.push(v);
            }
        }
    }
    out
}

/// Divides `S` by a square root of `D u` (the supplied one, checked, or one
/// found by [`sqrt_in_field`]) and pairs it with `T = diag(theta)`.
///
/// `T` here is the inverse of the raw `diag(theta^-1)`: the relation that
/// becomes a scalar after normalization is `(S T_raw^-1)^3 = xi Id`, while
/// `(S T_raw)^3 = xi^-1 S^2` is only a scalar when bar is trivial.
pub(crate) fn normalize_data(
    data: &BraidedData,
    normalizer: Option<&CycNum>,
) -> Result<Option<(ModularDatum, CycNum)>, DatumError> {
    let target = &data.dim * &data.dim_unit_bar;
    let c = match normalizer {
        Some(c) => {
            if c * c != target {
                return Err(DatumError::BadNormalizer { expected: target.to_string() });
            }
            c.clone()
        }
        None => match sqrt_in_field(&target) {
            Some(c) => c,
            None => return Ok(None),
        },
    };
    let s = data.s.mat_scale(&c.inv()?);
    let datum = ModularDatum::new(data.labels.clone(), data.unit, s, data.twists.clone())?;
    Ok(Some((datum, c)))
}

/// Normalized datum of a nondegenerate category, or `None` when no square
/// root of `dim(C) dim^R(1bar)` was found in the field.
pub fn normalize_nondegenerate(
    data: &BraidedData,
    normalizer: Option<&CycNum>,
) -> Result<Option<(ModularDatum, CycNum)>, DatumError> {
    normalize_data(data, normalizer)
}

/// The seven axioms of a modular datum, all exact.
pub fn check_axioms(datum: &ModularDatum) -> VerificationReport {
    let mut r = VerificationReport::new();
    let n = datum.len();
    let labels = &datum.labels;
    let s = &datum.s;
    let unit_ok = r.run("unit row non-zero", || match (0..n).find(|&i| s.get(datum.unit, i).is_zero()) {
        None => Ok(Value::Null),
        Some(i) => Err(json!({ "label": labels[i] })),
    });
    r.run("S symmetric", || match s.first_asymmetry() {
        None => Ok(Value::Null),
        Some((i, j)) => Err(super::report::entry(labels, i, j, s.get(i, j), s.get(j, i))),
    });
    r.run("S S^dagger = Id", || unitarity(labels, s, &CycNum::one(1)));
    let s2 = s.mat_mul(s).unwrap();
    r.run("S^4 = Id", || compare(labels, &s2.mat_mul(&s2).unwrap(), &CycMatrix::identity(n, 1)));
    let t = datum.t_matrix();
    r.run("(ST)^3 = lambda Id", || {
        let st = s.mat_mul(&t).unwrap();
        let m = st.mat_mul(&st).unwrap().mat_mul(&st).unwrap();
        let lambda = m.get(0, 0).clone();
        compare(labels, &m, &CycMatrix::scalar(n, &lambda)).map(|_| json!({ "lambda": num(&lambda) }))
    });
    r.run("S^2 T = T S^2", || compare(labels, &s2.mat_mul(&t).unwrap(), &t.mat_mul(&s2).unwrap()));
    if unit_ok == super::Status::Pass {
        let v = verlinde_fusion(datum).expect("unit row checked");
        r.run("verlinde_classification", || v.outcome());
    } else {
        r.skip("verlinde_classification", "unit row has a zero entry");
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::root_of_unity;

    #[test]
    fn trivial_datum_is_n_modular() {
        let r = check_axioms(&ModularDatum::trivial());
        assert!(r.all_passed(), "{}", r.render_pretty());
        assert_eq!(r.checks.len(), 7);
        let w = &r.get("(ST)^3 = lambda Id").unwrap().witness;
        assert_eq!(w["lambda"]["text"], "1");
        assert_eq!(r.get("verlinde_classification").unwrap().witness["class"], "N-modular");
        let v = verlinde_fusion(&ModularDatum::trivial()).unwrap();
        assert_eq!(v.tensor.unwrap().constants(), &[1]);
    }

    #[test]
    fn zero_unit_row_skips_verlinde() {
        let s = CycMatrix::new(2, 2, vec![CycNum::one(1), CycNum::zero(1), CycNum::zero(1), CycNum::one(1)]).unwrap();
        let d = ModularDatum::new(vec!["a".into(), "b".into()], 0, s, vec![CycNum::one(1), root_of_unity(3, 1)]).unwrap();
        let r = check_axioms(&d);
        assert_eq!(r.status("unit row non-zero"), Some(super::super::Status::Fail));
        assert_eq!(r.status("verlinde_classification"), Some(super::super::Status::Skipped));
        assert!(verlinde_fusion(&d).is_err());
    }
}
