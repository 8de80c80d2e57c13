//! Generators for the explicit examples: pointed cyclic categories, the
//! Taft double, and the `sl2` counterexample at a 16-th root of unity.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cyclinalg::CycMatrix;
use crate::cyclotomic::{root_of_unity, CycNum};
use crate::datum::{FusionTensor, RawDatum, RawKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("cannot parse family spec {spec:?}: {reason}")]
    Spec { spec: String, reason: String },
}

/// The simple `M_{l,p}` of the Taft double, `1 <= l <= d-1`, `p` mod `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaftLabel {
    pub l: u32,
    pub p: u32,
}

impl TaftLabel {
    pub fn new(d: u32, l: u32, p: i64) -> Self {
        TaftLabel { l, p: p.rem_euclid(d as i64) as u32 }
    }

    pub fn is_valid(&self, d: u32) -> bool {
        (1..d).contains(&self.l) && self.p < d
    }

    /// Position in the lexicographic order of all `d(d-1)` labels.
    pub fn index(&self, d: u32) -> usize {
        ((self.l - 1) * d + self.p) as usize
    }
}

impl fmt::Display for TaftLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.p)
    }
}

impl FromStr for TaftLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| format!("expected (l,p), got {s:?}"))?;
        let (l, p) = inner.split_once(',').ok_or_else(|| format!("expected (l,p), got {s:?}"))?;
        let l = l.trim().parse().map_err(|_| format!("bad l in {s:?}"))?;
        let p = p.trim().parse().map_err(|_| format!("bad p in {s:?}"))?;
        Ok(TaftLabel { l, p })
    }
}

/// The pointed category on `Z/nZ` with braiding root `zeta = zeta_n^a` and
/// pivot `xi = zeta^k0`.
pub fn pointed_cyclic(n: u32, a: i64, k0: i64) -> Result<RawDatum, FamilyError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(FamilyError::Invalid(format!("n must be odd and at least 3, got {n}")));
    }
    let ni = n as i64;
    let s = CycMatrix::from_fn(n as usize, n as usize, |k, l| {
        let (k, l) = (k as i64, l as i64);
        root_of_unity(n, a * (k0 * (k + l) + 2 * k * l))
    });
    let twists = (0..ni).map(|k| root_of_unity(n, a * (k0 * k + k * k))).collect();
    let labels = (0..n).map(|k| format!("d{k}")).collect();
    let duality = (0..ni).map(|k| ((ni - k) % ni) as usize).collect();
    let raw = RawDatum::new(labels, 0, s, twists, RawKind::Full).and_then(|r| r.with_duality(duality));
    Ok(raw.expect("pointed data are well formed"))
}

fn zeta(d: u32) -> CycNum {
    root_of_unity(d, 1)
}

/// All `d(d-1)` labels in lexicographic order.
pub fn taft_labels(d: u32) -> Vec<TaftLabel> {
    (1..d).flat_map(|l| (0..d).map(move |p| TaftLabel { l, p })).collect()
}

fn taft_exponent(x: TaftLabel, y: TaftLabel) -> i64 {
    let (l, p, l2, p2) = (x.l as i64, x.p as i64, y.l as i64, y.p as i64);
    -l * l2 - l * p2 - p * l2 - 2 * p * p2
}

/// `zeta/(1-zeta) zeta^(-ll'-lp'-pl'-2pp') (1 - zeta^(ll'))`, expanded as a
/// geometric sum.
fn taft_s_entry(d: u32, x: TaftLabel, y: TaftLabel) -> CycNum {
    let e = 1 + taft_exponent(x, y);
    let terms: Vec<(i64, i64)> = (0..(x.l * y.l) as i64).map(|k| (1, e + k)).collect();
    CycNum::from_exponent_sum(d, &terms)
}

/// The full Taft double datum for `d >= 2`, with `zeta = zeta_d`.
///
/// `zeta^(p(l+p))` is the T-matrix entry, so the twist is its inverse; with
/// this reading `theta_{X*} dim^R(X) = theta_X dim^L(X)` holds.
pub fn taft_double(d: u32) -> Result<RawDatum, FamilyError> {
    if d < 2 {
        return Err(FamilyError::Invalid(format!("d must be at least 2, got {d}")));
    }
    let labels = taft_labels(d);
    let n = labels.len();
    let s = CycMatrix::from_fn(n, n, |i, j| taft_s_entry(d, labels[i], labels[j]));
    let twists = labels.iter().map(|x| root_of_unity(d, -((x.p * (x.l + x.p)) as i64))).collect();
    let duality = labels.iter().map(|x| TaftLabel::new(d, x.l, 1 - x.l as i64 - x.p as i64).index(d)).collect();
    let reps = taft_j(d).iter().map(|x| x.index(d)).collect();
    let raw = RawDatum::new(labels.iter().map(|x| x.to_string()).collect(), 0, s, twists, RawKind::Full)
        .and_then(|r| r.with_duality(duality))
        .and_then(|r| r.with_representatives(reps))
        .expect("taft data are well formed");
    Ok(raw.with_normalizer(taft_normalizer(d)))
}

/// `eps (x) M_{l,p} = M_{d-l, l+p}`.
pub fn taft_epsilon_action(d: u32, x: TaftLabel) -> TaftLabel {
    TaftLabel::new(d, d - x.l, (x.l + x.p) as i64)
}

/// `{M_{l,p} | 0 <= p < l+p < d}` in lexicographic order.
pub fn taft_j(d: u32) -> Vec<TaftLabel> {
    taft_labels(d).into_iter().filter(|x| x.l + x.p < d).collect()
}

/// `c = d zeta / (zeta - 1)`, with `c^2 = sdim dim^R(1bar)` asserted.
pub fn taft_normalizer(d: u32) -> CycNum {
    let z = zeta(d);
    let dd = CycNum::from_i64(1, d as i64);
    let c = (&dd * &z).div(&(&z - &CycNum::one(1))).expect("zeta != 1");
    let one_minus = CycNum::one(1) - &z;
    let sdim = (-&(&z * &(&dd * &dd))).div(&(&one_minus * &one_minus)).unwrap();
    let unit_bar_dim = -&z;
    assert_eq!(&c * &c, &sdim * &unit_bar_dim, "normalizer does not square to sdim u");
    c
}

/// `S~_{(l,p),(l',p')} = zeta^(-ll'-lp'-pl'-2pp') (zeta^(ll') - 1) / d` on `J x J`.
pub fn taft_normalized_s(d: u32) -> CycMatrix {
    let j = taft_j(d);
    let inv_d = CycNum::from_rational(1, &num_rational::BigRational::new(1.into(), (d as i64).into()));
    CycMatrix::from_fn(j.len(), j.len(), |a, b| {
        let (x, y) = (j[a], j[b]);
        let e = taft_exponent(x, y);
        let v = CycNum::from_exponent_sum(d, &[(1, e + (x.l * y.l) as i64), (-1, e)]);
        &v * &inv_d
    })
}

type Multiset = Vec<(TaftLabel, i64)>;

fn add(m: &mut Multiset, x: TaftLabel, k: i64) {
    match m.iter_mut().find(|(y, _)| *y == x) {
        Some(e) => e.1 += k,
        None => m.push((x, k)),
    }
}

/// `M_{2,0} (x) M_{l',p}`.
fn times_two(d: u32, y: TaftLabel) -> Vec<TaftLabel> {
    let q = y.p as i64;
    if y.l == 1 {
        vec![TaftLabel::new(d, 2, q)]
    } else if y.l < d - 1 {
        vec![TaftLabel::new(d, y.l + 1, q), TaftLabel::new(d, y.l - 1, q + 1)]
    } else {
        vec![TaftLabel::new(d, d - 2, q + 1)]
    }
}

/// `M_{l,0} (x) y`, by `M_{l,0} + M_{l-2,1} = M_{2,0} (x) M_{l-1,0}`.
fn times_l0(d: u32, l: u32, y: TaftLabel) -> Multiset {
    match l {
        1 => vec![(y, 1)],
        2 => {
            let mut m = Multiset::new();
            for z in times_two(d, y) {
                add(&mut m, z, 1);
            }
            m
        }
        _ => {
            let mut m = Multiset::new();
            for (z, k) in times_l0(d, l - 1, y) {
                for w in times_two(d, z) {
                    add(&mut m, w, k);
                }
            }
            let shifted = TaftLabel::new(d, y.l, y.p as i64 + 1);
            for (z, k) in times_l0(d, l - 2, shifted) {
                add(&mut m, z, -k);
            }
            assert!(m.iter().all(|&(_, k)| k >= 0), "negative multiplicity in M_{{{l},0}} (x) {y}");
            m.retain(|&(_, k)| k != 0);
            m
        }
    }
}

/// Decomposition of `x (x) y`, sorted, with repetitions.
pub fn taft_fusion(d: u32, x: TaftLabel, y: TaftLabel) -> Vec<TaftLabel> {
    assert!(x.is_valid(d) && y.is_valid(d), "invalid label for d = {d}");
    let shifted = TaftLabel::new(d, y.l, (x.p + y.p) as i64);
    let mut out = Vec::new();
    for (z, k) in times_l0(d, x.l, shifted) {
        assert!(z.is_valid(d), "{z} is not a simple of the double for d = {d}");
        out.extend(std::iter::repeat_n(z, k as usize));
    }
    out.sort();
    out
}

/// The full fusion tensor of the Taft double from [`taft_fusion`].
pub fn taft_fusion_tensor(d: u32) -> FusionTensor {
    let labels = taft_labels(d);
    let n = labels.len();
    let mut constants = vec![0i64; n * n * n];
    for (i, &x) in labels.iter().enumerate() {
        for (j, &y) in labels.iter().enumerate() {
            for z in taft_fusion(d, x, y) {
                constants[(i * n + j) * n + z.index(d)] += 1;
            }
        }
    }
    FusionTensor::from_constants(labels.iter().map(|x| x.to_string()).collect(), 0, constants)
        .expect("taft fusion has a duality")
}

/// The `sl2` subcategory at `q = zeta_16`: the full `4 x 4` datum on
/// `V0, V2, V4, V6` and its `2 x 2` bold restriction.
pub fn sl2_q16_counterexample() -> (RawDatum, RawDatum) {
    let three = root_of_unity(16, -2) + CycNum::one(1) + root_of_unity(16, 2);
    let one = CycNum::one(1);
    let m = -&one;
    let i = root_of_unity(16, 4);
    let s = CycMatrix::new(
        4,
        4,
        vec![
            one.clone(), three.clone(), three.clone(), one.clone(),
            three.clone(), m.clone(), m.clone(), three.clone(),
            three.clone(), m.clone(), m.clone(), three.clone(),
            one.clone(), three.clone(), three.clone(), one.clone(),
        ],
    )
    .unwrap();
    let labels = ["V0", "V2", "V4", "V6"].map(String::from).to_vec();
    let twists = vec![one.clone(), i.clone(), -&i, m.clone()];
    let full = RawDatum::new(labels, 0, s, twists, RawKind::Full)
        .and_then(|r| r.with_duality(vec![0, 1, 2, 3]))
        .unwrap();
    let bs = CycMatrix::new(2, 2, vec![one.clone(), three.clone(), three.clone(), m]).unwrap();
    let bold = RawDatum::new(vec!["V0".into(), "V2".into()], 0, bs, vec![one, i], RawKind::Bold)
        .and_then(|r| r.with_duality(vec![0, 1]))
        .unwrap();
    (full, bold)
}

/// A family spec string: `taft:d=5`, `pointed:n=7,a=1,k0=2`,
/// `counterexample:sl2q16` (bold) or `counterexample:sl2q16,part=full`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Taft { d: u32 },
    Pointed { n: u32, a: i64, k0: i64 },
    Counterexample { full: bool },
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(spec: &str) -> Result<Self, FamilyError> {
        let fail = |reason: String| FamilyError::Spec { spec: spec.to_string(), reason };
        let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut params: Vec<(&str, &str)> = Vec::new();
        let mut flags: Vec<&str> = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some((k, v)) => params.push((k.trim(), v.trim())),
                None => flags.push(part),
            }
        }
        let allowed: &[&str] = match family {
            "taft" => &["d"],
            "pointed" => &["n", "a", "k0"],
            "counterexample" => &["part"],
            _ => return Err(fail(format!("unknown family {family:?}"))),
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(k)) {
            return Err(fail(format!("unknown parameter {k:?}")));
        }
        let int = |key: &str| -> Result<Option<i64>, FamilyError> {
            params
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| v.parse::<i64>().map_err(|_| fail(format!("{key} must be an integer, got {v:?}"))))
                .transpose()
        };
        let parsed = match family {
            "taft" => {
                let d = int("d")?.ok_or_else(|| fail("missing d".into()))?;
                if !(2..=64).contains(&d) {
                    return Err(fail(format!("d must be between 2 and 64, got {d}")));
                }
                FamilySpec::Taft { d: d as u32 }
            }
            "pointed" => {
                let n = int("n")?.ok_or_else(|| fail("missing n".into()))?;
                if !(3..=255).contains(&n) || n % 2 == 0 {
                    return Err(fail(format!("n must be odd, between 3 and 255, got {n}")));
                }
                FamilySpec::Pointed { n: n as u32, a: int("a")?.unwrap_or(1), k0: int("k0")?.unwrap_or(0) }
            }
            _ => {
                if flags != ["sl2q16"] {
                    return Err(fail("the only counterexample is sl2q16".into()));
                }
                let full = match params.iter().find(|(k, _)| *k == "part").map(|(_, v)| *v) {
                    None | Some("bold") => false,
                    Some("full") => true,
                    Some(v) => return Err(fail(format!("part must be bold or full, got {v:?}"))),
                };
                FamilySpec::Counterexample { full }
            }
        };
        if !matches!(parsed, FamilySpec::Counterexample { .. }) && !flags.is_empty() {
            return Err(fail(format!("unexpected {:?}", flags[0])));
        }
        Ok(parsed)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Taft { d } => write!(f, "taft:d={d}"),
            FamilySpec::Pointed { n, a, k0 } => write!(f, "pointed:n={n},a={a},k0={k0}"),
            FamilySpec::Counterexample { full: false } => write!(f, "counterexample:sl2q16"),
            FamilySpec::Counterexample { full: true } => write!(f, "counterexample:sl2q16,part=full"),
        }
    }
}

impl FamilySpec {
    pub fn generate(&self) -> Result<RawDatum, FamilyError> {
        match *self {
            FamilySpec::Taft { d } => taft_double(d),
            FamilySpec::Pointed { n, a, k0 } => pointed_cyclic(n, a, k0),
            FamilySpec::Counterexample { full } => {
                let (f, b) = sl2_q16_counterexample();
                Ok(if full { f } else { b })
            }
        }
    }
}
