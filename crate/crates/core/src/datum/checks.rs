//! The exact identities of the nondegenerate and slightly degenerate
//! theories, each evaluated on a [`BraidedData`].
//!
//! Unitarity and the SL2(Z) relations are checked in square-root-free form.
//! With `S~ = S / (sqrt(u) sqrt(D))` and `u` a root of unity,
//! `sqrt(u) * conj(sqrt(u)) = 1` exactly, so `S~` is unitary iff
//! `S S^dagger = D Id`; similarly `xi` is a root of unity iff `xi^2` is.

use serde_json::{json, Value};

use super::fusion::FusionTensor;
use super::report::{compare, entry, labels_at, num, Outcome, VerificationReport};
use super::structure::{BraidedData, Regime};
use super::{DatumError, RawDatum};
use crate::cyclinalg::CycMatrix;
use crate::cyclotomic::CycNum;

/// Quantum dimensions of a raw datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dims {
    pub dim_r: Vec<CycNum>,
    pub dim_l: Vec<CycNum>,
    pub sqnorm: Vec<CycNum>,
    pub global_dim: CycNum,
}

/// `dim^R`, `dim^L`, `|X|^2` and their sum.
pub fn dims_of(raw: &RawDatum) -> Result<Dims, DatumError> {
    let dim_r = raw.dims_r();
    let dim_l = raw.dims_l()?;
    let sqnorm: Vec<CycNum> = dim_r.iter().zip(&dim_l).map(|(r, l)| r * l).collect();
    let global_dim = sqnorm.iter().fold(CycNum::zero(1), |a, b| a + b);
    Ok(Dims { dim_r, dim_l, sqnorm, global_dim })
}

/// Every `|X|^2` is totally positive, decided with interval arithmetic.
pub(crate) fn check_sqnorms_positive(labels: &[String], sqnorm: &[CycNum], precision_bits: u32) -> Outcome {
    for (x, v) in sqnorm.iter().enumerate() {
        match v.is_totally_positive(precision_bits) {
            Ok(true) => {}
            Ok(false) => return Err(json!({ "label": labels[x], "sqnorm": num(v), "reason": "not totally positive" })),
            Err(e) => return Err(json!({ "label": labels[x], "sqnorm": num(v), "reason": e.to_string() })),
        }
    }
    Ok(json!({ "precision_bits": precision_bits }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussSums {
    pub plus: CycNum,
    pub minus: CycNum,
}

/// `tau^{+-} = sum_X theta_X^{+-1} |X|^2` over the labels of `data` (all
/// simples, or the representatives for supersums).
pub fn gauss_sums(data: &BraidedData) -> GaussSums {
    let mut plus = CycNum::zero(1);
    let mut minus = CycNum::zero(1);
    for (t, q) in data.twists.iter().zip(data.sqnorms()) {
        plus = plus + t * &q;
        minus = minus + &t.inv().unwrap() * &q;
    }
    GaussSums { plus, minus }
}

pub(crate) fn check_gauss_product(data: &BraidedData, tau: &GaussSums) -> Outcome {
    let prod = &tau.plus * &tau.minus;
    let info = json!({ "tau+": num(&tau.plus), "tau-": num(&tau.minus), "dim": num(&data.dim) });
    if prod == data.dim {
        Ok(info)
    } else {
        Err(json!({ "product": num(&prod), "expected": num(&data.dim), "sums": info }))
    }
}

/// `S S^dagger = scale * Id`.
pub fn check_raw_unitarity(raw: &RawDatum, scale: &CycNum) -> Outcome {
    unitarity(&raw.labels, &raw.s, scale)
}

pub(crate) fn unitarity(labels: &[String], s: &CycMatrix, scale: &CycNum) -> Outcome {
    let lhs = s.mat_mul(&s.conj_transpose()).map_err(|e| json!({ "error": e.to_string() }))?;
    compare(labels, &lhs, &CycMatrix::scalar(s.rows(), scale)).map(|_| json!({ "scale": num(scale) }))
}

fn names(regime: Regime) -> [&'static str; 4] {
    match regime {
        Regime::Nondegenerate => [
            "(ST)^3 = tau- S^2",
            "S^4 = (D u)^2 Id",
            "(ST^-1)^3 = tau+ D u^2 Id",
            "S^2 = D u E",
        ],
        Regime::SlightlyDegenerate => [
            "(ST)^3 = stau- S^2",
            "S^4 = (sdim u)^2 Id",
            "(ST^-1)^3 = stau+ sdim u^2 Id",
            "S^2 = sdim u E",
        ],
    }
}

/// The four SL2(Z) identities with `T = diag(theta^-1)`, `D` the (super)
/// dimension and `u = dim^R(1bar)`.
pub fn check_sl2_relations(data: &BraidedData, tau: &GaussSums) -> VerificationReport {
    let mut r = VerificationReport::new();
    let [n_st, n_s4, n_sti, n_e] = names(data.regime);
    let labels = &data.labels;
    let s = &data.s;
    let n = data.len();
    let s2 = s.mat_mul(s).unwrap();
    let du = &data.dim * &data.dim_unit_bar;

    r.run(n_st, || {
        let st = s.mat_mul(&data.t_matrix()).unwrap();
        let lhs = st.mat_mul(&st).unwrap().mat_mul(&st).unwrap();
        compare(labels, &lhs, &s2.mat_scale(&tau.minus))
    });
    r.run(n_s4, || compare(labels, &s2.mat_mul(&s2).unwrap(), &CycMatrix::scalar(n, &(&du * &du))));
    r.run(n_sti, || {
        let st = s.mat_mul(&data.t_inv_matrix()).unwrap();
        let lhs = st.mat_mul(&st).unwrap().mat_mul(&st).unwrap();
        let u2 = &data.dim_unit_bar * &data.dim_unit_bar;
        compare(labels, &lhs, &CycMatrix::scalar(n, &(&tau.plus * &(&data.dim * &u2))))
    });
    r.run(n_e, || check_e_matrix(data, &s2, &du));
    r
}

/// `S^2 / (D u)` is a signed permutation whose permutation is bar and whose
/// signs are `+1` exactly when `X^* (x) 1bar` is among the labels, i.e. when
/// `dim^R(Xbar) = dim^L(X) u`.
fn check_e_matrix(data: &BraidedData, s2: &CycMatrix, du: &CycNum) -> Outcome {
    let labels = &data.labels;
    let inv = du.inv().map_err(|e| json!({ "error": e.to_string() }))?;
    let e = s2.mat_scale(&inv);
    let Some(sp) = e.is_signed_permutation() else {
        let (i, j) = first_bad_entry(&e);
        return Err(json!({ "reason": "not a signed permutation", "entry": entry(labels, i, j, e.get(i, j), e.get(i, j)) }));
    };
    if sp.perm != data.bar {
        let x = (0..data.len()).find(|&x| sp.perm[x] != data.bar[x]).unwrap();
        return Err(json!({
            "reason": "permutation differs from bar",
            "label": labels[x], "E": labels[sp.perm[x]], "bar": labels[data.bar[x]],
        }));
    }
    for x in 0..data.len() {
        let xb = data.bar[x];
        let target = &data.dim_l[x] * &data.dim_unit_bar;
        let expected = if data.dim_r[xb] == target {
            1
        } else if data.regime == Regime::SlightlyDegenerate && data.dim_r[xb] == -&target {
            -1
        } else {
            return Err(json!({
                "reason": "dim^R(bar X) is not +-dim^L(X) dim^R(1bar)",
                "label": labels[x], "dim_bar": num(&data.dim_r[xb]), "expected": num(&target),
            }));
        };
        if sp.signs[x] != expected {
            return Err(json!({ "reason": "sign mismatch", "label": labels[x], "sign": sp.signs[x], "expected": expected }));
        }
    }
    let negative: Vec<usize> = (0..data.len()).filter(|&x| sp.signs[x] < 0).collect();
    Ok(json!({ "bar": labels_at(labels, &sp.perm), "negative_signs": labels_at(labels, &negative) }))
}

fn first_bad_entry(m: &CycMatrix) -> (usize, usize) {
    let one = CycNum::one(1);
    for i in 0..m.rows() {
        let nz: Vec<usize> = (0..m.cols()).filter(|&j| !m.get(i, j).is_zero()).collect();
        if nz.len() != 1 {
            return (i, nz.get(1).copied().unwrap_or(0));
        }
        let v = m.get(i, nz[0]);
        if *v != one && *v != -&one {
            return (i, nz[0]);
        }
    }
    (0, 0)
}

/// Twist identities: `theta_{X^*} dim^R(X) = theta_X dim^L(X)`,
/// `theta_{1bar} = 1`, `theta_{Xbar} = theta_{1bar} theta_X`, and the two
/// twisted column sums against `tau^{+-}`.
pub fn check_twist_laws(data: &BraidedData, tau: &GaussSums) -> VerificationReport {
    let mut r = VerificationReport::new();
    let labels = &data.labels;
    let n = data.len();
    let th = &data.twists;
    match &data.theta_dual {
        Some(td) => {
            r.run("theta_{X*} dim^R(X) = theta_X dim^L(X)", || {
                for x in 0..n {
                    let lhs = &td[x] * &data.dim_r[x];
                    let rhs = &th[x] * &data.dim_l[x];
                    if lhs != rhs {
                        return Err(entry(labels, x, x, &lhs, &rhs));
                    }
                }
                Ok(Value::Null)
            });
        }
        None => r.skip("theta_{X*} dim^R(X) = theta_X dim^L(X)", "duality unknown"),
    }
    let theta_ub = th[data.unit_bar].clone();
    r.run("theta_{1bar} = 1", || {
        if theta_ub.is_one() {
            Ok(json!({ "unit_bar": labels[data.unit_bar] }))
        } else {
            Err(json!({ "unit_bar": labels[data.unit_bar], "theta": num(&theta_ub) }))
        }
    });
    r.run("theta_{Xbar} = theta_{1bar} theta_X", || {
        for x in 0..n {
            let lhs = &th[data.bar[x]];
            let rhs = &theta_ub * &th[x];
            if *lhs != rhs {
                return Err(entry(labels, x, data.bar[x], lhs, &rhs));
            }
        }
        Ok(Value::Null)
    });
    let inv: Vec<CycNum> = th.iter().map(|t| t.inv().unwrap()).collect();
    r.run("sum_X theta_X dim^L(X) S_{X,Y} = theta_Y^-1 dim^R(Y) tau+", || {
        for y in 0..n {
            let lhs = (0..n).fold(CycNum::zero(1), |a, x| a + &th[x] * &(&data.dim_l[x] * data.s.get(x, y)));
            let rhs = &inv[y] * &(&data.dim_r[y] * &tau.plus);
            if lhs != rhs {
                return Err(entry(labels, y, y, &lhs, &rhs));
            }
        }
        Ok(Value::Null)
    });
    // In the slightly degenerate case the right-hand side carries theta_{1bar}.
    let factor = match data.regime {
        Regime::Nondegenerate => CycNum::one(1),
        Regime::SlightlyDegenerate => theta_ub.clone(),
    };
    r.run("sum_X theta_X^-1 dim^R(X) S_{X,Y} = theta_Y dim^R(Y) tau-", || {
        for y in 0..n {
            let lhs = (0..n).fold(CycNum::zero(1), |a, x| a + &inv[x] * &(&data.dim_r[x] * data.s.get(x, y)));
            let rhs = &factor * &(&th[y] * &(&data.dim_r[y] * &tau.minus));
            if lhs != rhs {
                return Err(entry(labels, y, y, &lhs, &rhs));
            }
        }
        Ok(Value::Null)
    });
    r
}

/// Every twist is a root of unity, and so is `xi^2` (`tau+^2 u / D`, or
/// `stau+^2 u^2 / sdim` in the slightly degenerate case).
pub fn check_vafa(data: &BraidedData, tau: &GaussSums) -> VerificationReport {
    let mut r = VerificationReport::new();
    r.run("vafa: twists are roots of unity", || {
        let mut orders = Vec::with_capacity(data.len());
        for (x, t) in data.twists.iter().enumerate() {
            match t.is_root_of_unity() {
                Some(w) => orders.push(w.order),
                None => return Err(json!({ "label": data.labels[x], "theta": num(t) })),
            }
        }
        Ok(json!({ "orders": orders }))
    });
    let (name, xi2) = {
        let u = &data.dim_unit_bar;
        let t2 = &tau.plus * &tau.plus;
        match data.regime {
            Regime::Nondegenerate => ("vafa: xi^2 is a root of unity", (&t2 * u).div(&data.dim)),
            Regime::SlightlyDegenerate => ("vafa: sxi^2 is a root of unity", (&t2 * &(u * u)).div(&data.dim)),
        }
    };
    r.run(name, || {
        let xi2 = xi2.map_err(|e| json!({ "error": e.to_string() }))?;
        match xi2.is_root_of_unity() {
            Some(w) => Ok(json!({ "xi^2": num(&xi2), "order": w.order })),
            None => Err(json!({ "xi^2": num(&xi2) })),
        }
    });
    r
}

/// `theta_X theta_Y S_{X,Y} = sum_Z N_{X,Y}^Z dim^R(Z) theta_Z` at every
/// pair, with `N` the (signed) fusion constants on the same labels.
pub fn check_balancing(data: &BraidedData, fusion: &FusionTensor) -> Outcome {
    let n = data.len();
    if fusion.len() != n {
        return Err(json!({ "reason": "fusion tensor has a different label set" }));
    }
    let weighted: Vec<CycNum> = (0..n).map(|z| &data.dim_r[z] * &data.twists[z]).collect();
    for x in 0..n {
        for y in 0..n {
            let lhs = &(&data.twists[x] * &data.twists[y]) * data.s.get(x, y);
            let rhs = fusion
                .product(x, y)
                .into_iter()
                .fold(CycNum::zero(1), |a, (z, c)| a + &CycNum::from_i64(1, c) * &weighted[z]);
            if lhs != rhs {
                return Err(entry(&data.labels, x, y, &lhs, &rhs));
            }
        }
    }
    Ok(Value::Null)
}
