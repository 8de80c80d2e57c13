//! The full verification run behind `modkit verify` and the browser demo.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::checks::{
    check_balancing, check_gauss_product, check_sl2_relations, check_sqnorms_positive, check_twist_laws, check_vafa,
    gauss_sums, unitarity, GaussSums,
};
use super::fusion::FusionTensor;
use super::report::{labels_at, num, VerificationReport};
use super::sldeg::{reduce_bold, reduce_slightly_degenerate, reduce_with_representatives, signed_verlinde};
use super::structure::{detect_symmetric_center, prepare_nondegenerate, BraidedData, CenterKind, Regime};
use super::verlinde::{check_axioms, normalize_data, raw_verlinde, VerlindeClass, VerlindeOutcome};
use super::{DatumError, ModularDatum, RawDatum, RawKind, SlightlyDegenerateData};
use crate::cyclotomic::CycNum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    #[default]
    Auto,
    Nondeg,
    Sldeg,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mode: VerifyMode,
    /// Precision for the interval sign decisions.
    pub precision_bits: u32,
    /// Also normalize and run the modular-datum axioms on the result.
    pub normalize: bool,
    /// Overrides the normalizer stored in the datum.
    pub normalizer: Option<CycNum>,
    /// Explicit representatives for the slightly degenerate reduction.
    pub representatives: Option<Vec<usize>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: VerifyMode::Auto, precision_bits: 256, normalize: true, normalizer: None, representatives: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "N-modular")]
    NModular,
    #[serde(rename = "Z-modular")]
    ZModular,
    #[serde(rename = "non-integral")]
    NonIntegral,
    #[serde(rename = "degenerate")]
    Degenerate,
    #[serde(rename = "slightly-degenerate (dim eps = +1)")]
    EvenFermion,
    #[serde(rename = "unclassified")]
    Unclassified,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::NModular => "N-modular",
            Classification::ZModular => "Z-modular",
            Classification::NonIntegral => "non-integral",
            Classification::Degenerate => "degenerate",
            Classification::EvenFermion => "slightly-degenerate (dim eps = +1)",
            Classification::Unclassified => "unclassified",
        }
    }

    /// N-modular data are in particular Z-modular.
    pub fn is_z_modular(self) -> bool {
        matches!(self, Classification::NModular | Classification::ZModular)
    }
}

impl From<VerlindeClass> for Classification {
    fn from(c: VerlindeClass) -> Self {
        match c {
            VerlindeClass::NModular => Classification::NModular,
            VerlindeClass::ZModular => Classification::ZModular,
            VerlindeClass::NonIntegral => Classification::NonIntegral,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub report: VerificationReport,
    pub classification: Classification,
    pub regime: Option<Regime>,
    pub data: Option<BraidedData>,
    pub sldeg: Option<SlightlyDegenerateData>,
    pub gauss: Option<GaussSums>,
    /// Fusion constants on the working labels (signed on `J`).
    pub fusion: Option<FusionTensor>,
    pub normalized: Option<ModularDatum>,
    pub normalizer: Option<CycNum>,
}

impl VerifyOutcome {
    fn new() -> Self {
        VerifyOutcome {
            report: VerificationReport::new(),
            classification: Classification::Unclassified,
            regime: None,
            data: None,
            sldeg: None,
            gauss: None,
            fusion: None,
            normalized: None,
            normalizer: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.report.all_passed()
    }
}

fn err(e: &DatumError) -> Value {
    json!({ "error": e.to_string() })
}

/// Detects the regime and runs every applicable check. Never fails: problems
/// with the input become failing report entries.
pub fn verify_raw(raw: &RawDatum, opts: &VerifyOptions) -> VerifyOutcome {
    let mut out = VerifyOutcome::new();
    let regime = match raw.kind {
        RawKind::Bold => {
            if opts.mode == VerifyMode::Nondeg {
                out.report.run("symmetric_center", || Err(json!({ "reason": "a restricted datum is never nondegenerate" })));
                return out;
            }
            out.report.skip("symmetric_center", "restricted datum");
            Regime::SlightlyDegenerate
        }
        RawKind::Full => match center_step(raw, opts, &mut out) {
            Some(r) => r,
            None => return out,
        },
    };
    out.regime = Some(regime);
    let data = match regime {
        Regime::Nondegenerate => {
            let prepared = prepare_nondegenerate(raw);
            let status = out.report.run("bar_involution", || match &prepared {
                Ok(d) => Ok(json!({ "unit_bar": d.labels[d.unit_bar], "bar": labels_at(&d.labels, &d.bar) })),
                Err(e) => Err(err(e)),
            });
            if status != super::Status::Pass {
                return out;
            }
            prepared.unwrap()
        }
        Regime::SlightlyDegenerate => {
            let reduced = match (raw.kind, &opts.representatives) {
                (RawKind::Bold, _) => reduce_bold(raw),
                (RawKind::Full, Some(j)) => reduce_with_representatives(raw, j),
                (RawKind::Full, None) => reduce_slightly_degenerate(raw),
            };
            let sd = match reduced {
                Ok(sd) => sd,
                Err(e) => {
                    if matches!(e, DatumError::EvenFermion { .. }) {
                        out.classification = Classification::EvenFermion;
                    }
                    out.report.run("reduction", || Err(err(&e)));
                    return out;
                }
            };
            sldeg_structure_checks(&sd, &mut out.report);
            let d = sd.data.clone();
            out.sldeg = Some(sd);
            d
        }
    };
    common_checks(raw, &data, opts, &mut out);
    out.data = Some(data);
    out
}

fn center_step(raw: &RawDatum, opts: &VerifyOptions, out: &mut VerifyOutcome) -> Option<Regime> {
    let center = match detect_symmetric_center(raw) {
        Ok(c) => c,
        Err(e) => {
            out.report.run("symmetric_center", || Err(err(&e)));
            return None;
        }
    };
    let members = labels_at(&raw.labels, &center.members);
    let witness = json!({ "members": members, "class": center.describe() });
    let found = match center.kind {
        CenterKind::Nondegenerate => Some(Regime::Nondegenerate),
        CenterKind::SlightlyDegenerate { .. } => Some(Regime::SlightlyDegenerate),
        CenterKind::EvenFermion { .. } => {
            out.classification = Classification::EvenFermion;
            None
        }
        CenterKind::Degenerate => {
            out.classification = Classification::Degenerate;
            None
        }
    };
    let wanted = match opts.mode {
        VerifyMode::Auto => found,
        VerifyMode::Nondeg => Some(Regime::Nondegenerate),
        VerifyMode::Sldeg => Some(Regime::SlightlyDegenerate),
    };
    match (found, wanted) {
        (Some(f), Some(w)) if f == w => {
            out.report.run("symmetric_center", || Ok(witness));
            Some(f)
        }
        (_, w) => {
            let mut witness = witness;
            if let Some(w) = w {
                witness["requested"] = json!(w);
            }
            out.report.run("symmetric_center", || Err(witness));
            None
        }
    }
}

fn sldeg_structure_checks(sd: &SlightlyDegenerateData, r: &mut VerificationReport) {
    let (Some(parent), Some(eps), Some(map)) = (&sd.parent, sd.epsilon, &sd.epsilon_map) else {
        r.skip("epsilon: dim = -1, theta = 1", "restricted datum");
        return;
    };
    let labels = &parent.labels;
    r.run("epsilon: dim = -1, theta = 1", || {
        Ok(json!({ "epsilon": labels[eps], "dim": num(&parent.dims_r()[eps]), "theta": num(&parent.twists[eps]) }))
    });
    r.run("epsilon-translate is fixed-point free", || {
        match (0..map.len()).find(|&x| map[x] == x) {
            None => Ok(json!({ "translate": labels_at(labels, map) })),
            Some(x) => Err(json!({ "fixed": labels[x] })),
        }
    });
    r.run("epsilon-rows are negatives", || {
        for x in 0..map.len() {
            let y = map[x];
            if let Some(k) = (0..map.len()).find(|&k| *parent.s.get(y, k) != -parent.s.get(x, k)) {
                return Err(super::report::entry(labels, y, k, parent.s.get(y, k), &-parent.s.get(x, k)));
            }
        }
        Ok(Value::Null)
    });
    r.run("rank(S) = |I|/2", || {
        let rank = parent.s.rank();
        if 2 * rank == parent.len() {
            Ok(json!({ "rank": rank }))
        } else {
            Err(json!({ "rank": rank, "size": parent.len() }))
        }
    });
    r.run("sdim = dim/2", || {
        let dims = super::checks::dims_of(parent).map_err(|e| err(&e))?;
        let half = &dims.global_dim * &CycNum::from_rational(1, &num_rational::BigRational::new(1.into(), 2.into()));
        if half == *sd.sdim() {
            Ok(json!({ "J": labels_at(labels, &sd.j), "sdim": num(sd.sdim()) }))
        } else {
            Err(json!({ "dim/2": num(&half), "sdim": num(sd.sdim()) }))
        }
    });
    r.run("bar_involution", || {
        Ok(json!({ "unit_bar": sd.data.labels[sd.data.unit_bar], "bar": labels_at(&sd.data.labels, &sd.data.bar) }))
    });
}

fn common_checks(raw: &RawDatum, data: &BraidedData, opts: &VerifyOptions, out: &mut VerifyOutcome) {
    let sl = data.regime == Regime::SlightlyDegenerate;
    let r = &mut out.report;
    r.run("|X|^2 totally positive", || check_sqnorms_positive(&data.labels, &data.sqnorms(), opts.precision_bits));
    let tau = gauss_sums(data);
    r.run(if sl { "stau+ stau- = sdim" } else { "tau+ tau- = D" }, || check_gauss_product(data, &tau));
    r.run(if sl { "S S^dagger = sdim Id" } else { "S S^dagger = D Id" }, || unitarity(&data.labels, &data.s, &data.dim));
    for part in [check_sl2_relations(data, &tau), check_twist_laws(data, &tau), check_vafa(data, &tau)] {
        r.extend_prefixed("", part);
    }

    let verlinde: Result<VerlindeOutcome, DatumError> = match &out.sldeg {
        Some(sd) => signed_verlinde(sd),
        None => Ok(raw_verlinde(data, &vec![1; data.len()])),
    };
    match verlinde {
        Ok(v) => {
            r.run("verlinde_classification", || v.outcome());
            out.classification = v.class.into();
            if let Some(t) = v.tensor {
                r.run("fusion duality matches input", || duality_matches(raw, out.sldeg.as_ref(), &t));
                r.extend_prefixed("", t.check_all());
                r.run("balancing", || check_balancing(data, &t));
                out.fusion = Some(t);
            } else {
                for name in ["fusion duality matches input", "fusion_unit", "fusion_duality", "fusion_associativity", "balancing"] {
                    r.skip(name, "no integral fusion tensor");
                }
            }
        }
        Err(e) => {
            r.run("verlinde_classification", || Err(err(&e)));
        }
    }
    out.gauss = Some(tau);

    if !opts.normalize {
        return;
    }
    let supplied = opts.normalizer.as_ref().or(raw.normalizer.as_ref());
    match normalize_data(data, supplied) {
        Ok(Some((datum, c))) => {
            r.run("normalizer", || Ok(json!({ "c": num(&c), "supplied": supplied.is_some() })));
            r.extend_prefixed("normalized: ", check_axioms(&datum));
            out.normalized = Some(datum);
            out.normalizer = Some(c);
        }
        Ok(None) => r.skip("normalizer", "no square root of D u found in a cyclotomic field; verified up to scalar"),
        Err(e) => {
            r.run("normalizer", || Err(err(&e)));
        }
    }
}

/// The duality read off the fusion constants agrees with the input: `X^*`
/// itself, or its epsilon-translate when `X^*` is not a representative.
fn duality_matches(raw: &RawDatum, sd: Option<&SlightlyDegenerateData>, t: &FusionTensor) -> Result<Value, Value> {
    let Some(dual) = &raw.duality else {
        return Ok(json!({ "note": "input has no duality" }));
    };
    let (j, map): (Vec<usize>, Option<&Vec<usize>>) = match sd {
        Some(sd) => (sd.j.clone(), sd.epsilon_map.as_ref()),
        None => ((0..raw.len()).collect(), None),
    };
    for (p, &x) in j.iter().enumerate() {
        let got = j[t.duality[p]];
        let ok = got == dual[x] || map.is_some_and(|m| got == m[dual[x]]);
        if !ok {
            return Err(json!({ "label": raw.labels[x], "fusion_dual": raw.labels[got], "input_dual": raw.labels[dual[x]] }));
        }
    }
    Ok(Value::Null)
}
