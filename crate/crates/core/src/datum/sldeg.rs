//! Reduction of a slightly degenerate category to its bold data, the signed
//! structure constants, and the Z-modular datum.

use super::checks::{check_sl2_relations, gauss_sums, unitarity};
use super::fusion::FusionTensor;
use super::report::VerificationReport;
use super::structure::{detect_symmetric_center, match_bar, BraidedData, CenterKind, Regime};
use super::verlinde::{normalize_data, raw_verlinde, VerlindeOutcome};
use super::{DatumError, ModularDatum, RawDatum, RawKind};
use crate::cyclinalg::SignedPermutation;
use crate::cyclotomic::CycNum;

/// A slightly degenerate datum restricted to a set `J` of representatives of
/// the epsilon-orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlightlyDegenerateData {
    /// The full datum, absent when only the bold matrix was supplied.
    pub parent: Option<RawDatum>,
    /// Index of epsilon in the parent.
    pub epsilon: Option<usize>,
    /// `X -> eps (x) X` on the parent labels.
    pub epsilon_map: Option<Vec<usize>>,
    /// Parent indices of the representatives, in order.
    pub j: Vec<usize>,
    /// The bold datum on `J`.
    pub bold: RawDatum,
    pub data: BraidedData,
    /// `S^2 / (sdim dim^R(1bar))`, when it is a signed permutation.
    pub e: Option<SignedPermutation>,
}

impl SlightlyDegenerateData {
    pub fn sdim(&self) -> &CycNum {
        &self.data.dim
    }

    pub fn dim_unit_bar(&self) -> &CycNum {
        &self.data.dim_unit_bar
    }

    /// `1bar`, as a position in `J`.
    pub fn unit_bar(&self) -> usize {
        self.data.unit_bar
    }

    pub fn bar(&self) -> &[usize] {
        &self.data.bar
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }
}

/// `eps (x) X` for each `X`: the unique other label whose S-row is the
/// negative of the row of `X`.
fn epsilon_translate(raw: &RawDatum) -> Result<Vec<usize>, DatumError> {
    let n = raw.len();
    let neg_rows: Vec<Vec<CycNum>> = (0..n).map(|x| raw.s.row(x).iter().map(|v| -v).collect()).collect();
    let mut map = Vec::with_capacity(n);
    for x in 0..n {
        let hits: Vec<usize> = (0..n).filter(|&y| raw.s.row(y) == neg_rows[x].as_slice()).collect();
        match hits.as_slice() {
            [y] if *y == x => return Err(DatumError::FixedPoint(raw.labels[x].clone())),
            [y] => map.push(*y),
            _ => {
                return Err(DatumError::Degenerate(format!(
                    "{:?} has {} candidate epsilon-translates",
                    raw.labels[x],
                    hits.len()
                )))
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| map[map[x]] != x) {
        return Err(DatumError::Degenerate(format!("epsilon-translate is not an involution at {:?}", raw.labels[x])));
    }
    Ok(map)
}

/// Lowest index in each orbit, with the unit forced in.
fn canonical_representatives(unit: usize, eps_map: &[usize]) -> Vec<usize> {
    let mut taken = vec![false; eps_map.len()];
    taken[unit] = true;
    taken[eps_map[unit]] = true;
    let mut j = vec![unit];
    for x in 0..eps_map.len() {
        if !taken[x] {
            taken[x] = true;
            taken[eps_map[x]] = true;
            j.push(x);
        }
    }
    j.sort_unstable();
    j
}

fn valid_representatives(unit: usize, eps_map: &[usize], j: &[usize]) -> bool {
    let mut hit = vec![0u8; eps_map.len()];
    for &x in j {
        if x >= eps_map.len() {
            return false;
        }
        hit[x] += 1;
        hit[eps_map[x]] += 1;
    }
    j.contains(&unit) && hit.iter().all(|&h| h == 1)
}

/// Reduces a full slightly degenerate datum, using its preferred
/// representatives when they are valid and the lowest index per orbit
/// otherwise.
pub fn reduce_slightly_degenerate(full: &RawDatum) -> Result<SlightlyDegenerateData, DatumError> {
    reduce_inner(full, None)
}

/// As [`reduce_slightly_degenerate`] with an explicit representative set.
pub fn reduce_with_representatives(full: &RawDatum, j: &[usize]) -> Result<SlightlyDegenerateData, DatumError> {
    reduce_inner(full, Some(j))
}

fn reduce_inner(full: &RawDatum, explicit: Option<&[usize]>) -> Result<SlightlyDegenerateData, DatumError> {
    let dual = full.duality.as_ref().ok_or(DatumError::MissingDuality)?;
    let center = detect_symmetric_center(full)?;
    let names = |idx: &[usize]| idx.iter().map(|&i| full.labels[i].clone()).collect::<Vec<_>>();
    let eps = match center.kind {
        CenterKind::SlightlyDegenerate { epsilon } => epsilon,
        CenterKind::EvenFermion { epsilon } => {
            return Err(DatumError::EvenFermion { label: full.labels[epsilon].clone() })
        }
        _ => {
            return Err(DatumError::CenterShape {
                center: names(&center.members),
                reason: format!("expected {{unit, eps}} with dim(eps) = -1, found a {} center", center.describe()),
            })
        }
    };
    if !full.twists[eps].is_one() {
        return Err(DatumError::CenterShape {
            center: names(&center.members),
            reason: format!("twist of {:?} is {}, expected 1", full.labels[eps], full.twists[eps]),
        });
    }
    let eps_map = epsilon_translate(full)?;
    let j = match explicit {
        Some(j) if valid_representatives(full.unit, &eps_map, j) => j.to_vec(),
        Some(_) => return Err(DatumError::Malformed("representatives do not form a transversal containing the unit".into())),
        None => match &full.representatives {
            Some(j) if valid_representatives(full.unit, &eps_map, j) => j.clone(),
            _ => canonical_representatives(full.unit, &eps_map),
        },
    };
    let bar = match_bar(full, dual, &j)?;
    let dims_r = full.dims_r();
    let dims_l = full.dims_l()?;
    let unit = j.iter().position(|&x| x == full.unit).unwrap();
    let pick = |v: &[CycNum]| j.iter().map(|&x| v[x].clone()).collect::<Vec<_>>();
    let labels = names(&j);
    let s = full.s.submatrix(&j);
    let twists = pick(&full.twists);
    let dim_r = pick(&dims_r);
    let dim_l = pick(&dims_l);
    let sdim = dim_r.iter().zip(&dim_l).fold(CycNum::zero(1), |a, (r, l)| a + r * l);
    let unit_bar = bar[unit];
    let u = dims_r[intrinsic_unit_bar(full, &eps_map, j[unit_bar])].clone();
    let data = BraidedData {
        regime: Regime::SlightlyDegenerate,
        labels: labels.clone(),
        unit,
        s: s.clone(),
        twists: twists.clone(),
        dim_unit_bar: u,
        theta_dual: Some(j.iter().map(|&x| full.twists[dual[x]].clone()).collect()),
        dim_r,
        dim_l: dim_l.clone(),
        dim: sdim,
        bar,
        unit_bar,
    };
    let bold = RawDatum::new(labels, unit, s, twists, RawKind::Bold)?.with_dim_l(dim_l)?;
    let e = e_matrix(&data);
    Ok(SlightlyDegenerateData {
        parent: Some(full.clone()),
        epsilon: Some(eps),
        epsilon_map: Some(eps_map),
        j,
        bold,
        data,
        e,
    })
}

/// `1bar` and `eps (x) 1bar` have the same character; the one taken is the
/// one in the preferred representatives, else the lower index. This keeps
/// `dim^R(1bar)` independent of the transversal used for the reduction.
fn intrinsic_unit_bar(full: &RawDatum, eps_map: &[usize], x: usize) -> usize {
    let y = eps_map[x];
    match &full.representatives {
        Some(reps) if valid_representatives(full.unit, eps_map, reps) => {
            if reps.contains(&x) {
                x
            } else {
                y
            }
        }
        _ => x.min(y),
    }
}

fn e_matrix(data: &BraidedData) -> Option<SignedPermutation> {
    let scale = (&data.dim * &data.dim_unit_bar).inv().ok()?;
    data.s.mat_mul(&data.s).ok()?.mat_scale(&scale).is_signed_permutation()
}

/// Reads a bold datum given without its parent. `1bar` and bar come from the
/// signed-permutation structure of `S^2`.
pub fn reduce_bold(bold: &RawDatum) -> Result<SlightlyDegenerateData, DatumError> {
    let dim_l = match (&bold.dim_l, &bold.duality) {
        (Some(dl), _) => dl.clone(),
        (None, Some(_)) => bold.dims_l()?,
        (None, None) => return Err(DatumError::MissingLeftDimensions),
    };
    let dim_r = bold.dims_r();
    let n = bold.len();
    let sdim = dim_r.iter().zip(&dim_l).fold(CycNum::zero(1), |a, (r, l)| a + r * l);
    let s2 = bold.s.mat_mul(&bold.s)?;
    let nz: Vec<usize> = (0..n).filter(|&y| !s2.get(bold.unit, y).is_zero()).collect();
    let [unit_bar] = nz.as_slice() else {
        return Err(DatumError::Degenerate("the unit row of S^2 does not have a single non-zero entry".into()));
    };
    let u = dim_r[*unit_bar].clone();
    let e = s2
        .mat_scale(&(&sdim * &u).inv()?)
        .is_signed_permutation()
        .ok_or_else(|| DatumError::Degenerate("S^2 is not a multiple of a signed permutation".into()))?;
    let data = BraidedData {
        regime: Regime::SlightlyDegenerate,
        labels: bold.labels.clone(),
        unit: bold.unit,
        s: bold.s.clone(),
        twists: bold.twists.clone(),
        dim_r,
        dim_l,
        theta_dual: bold.duality.as_ref().map(|d| d.iter().map(|&j| bold.twists[j].clone()).collect()),
        dim: sdim,
        bar: e.perm.clone(),
        unit_bar: *unit_bar,
        dim_unit_bar: u,
    };
    Ok(SlightlyDegenerateData {
        parent: None,
        epsilon: None,
        epsilon_map: None,
        j: (0..n).collect(),
        bold: bold.clone(),
        data,
        e: Some(e),
    })
}

/// `N_{X,Y}^Z + sign N_{X,Y}^{eps (x) Z}` for `X, Y, Z` in `j`. With
/// `sign = -1` these are the constants of `Gr / ([1] + [eps])`.
pub fn quotient_constants(
    fusion: &FusionTensor,
    eps: usize,
    j: &[usize],
    sign: i64,
) -> Result<FusionTensor, DatumError> {
    let n = fusion.len();
    let translate: Vec<usize> = (0..n)
        .map(|z| {
            let p = fusion.product(eps, z);
            match p.as_slice() {
                [(w, 1)] => Ok(*w),
                _ => Err(DatumError::Malformed(format!("{:?} is not invertible", fusion.labels[eps]))),
            }
        })
        .collect::<Result<_, _>>()?;
    let m = j.len();
    let mut out = Vec::with_capacity(m * m * m);
    for &x in j {
        for &y in j {
            for &z in j {
                out.push(fusion.get(x, y, z) + sign * fusion.get(x, y, translate[z]));
            }
        }
    }
    let unit = j
        .iter()
        .position(|&x| x == fusion.unit)
        .ok_or_else(|| DatumError::Malformed("representatives do not contain the unit".into()))?;
    FusionTensor::from_constants(j.iter().map(|&x| fusion.labels[x].clone()).collect(), unit, out)
}

/// `sN_{X,Y}^Z = E_{Z,Zbar} / (sdim u) sum_{W in J} S_{W,X} S_{W,Y} S_{W,Zbar} / dim^R(W)`.
pub fn signed_verlinde(sd: &SlightlyDegenerateData) -> Result<VerlindeOutcome, DatumError> {
    let e = sd
        .e
        .as_ref()
        .ok_or_else(|| DatumError::Degenerate("S^2 is not a multiple of a signed permutation".into()))?;
    Ok(raw_verlinde(&sd.data, &e.signs))
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZModularOutput {
    Normalized { datum: ModularDatum, normalizer: CycNum },
    /// No square root of `sdim u` was found; the square-root-free identities
    /// that certify the datum up to the scalar.
    UpToScalar(VerificationReport),
}

/// `S~ = S / c` with `c^2 = sdim dim^R(1bar)`, paired with `T = diag(theta)`.
pub fn emit_zmodular(
    sd: &SlightlyDegenerateData,
    normalizer: Option<&CycNum>,
) -> Result<ZModularOutput, DatumError> {
    match normalize_data(&sd.data, normalizer)? {
        Some((datum, normalizer)) => Ok(ZModularOutput::Normalized { datum, normalizer }),
        None => {
            let tau = gauss_sums(&sd.data);
            let mut r = check_sl2_relations(&sd.data, &tau);
            r.run("S S^dagger = sdim Id", || unitarity(&sd.data.labels, &sd.data.s, &sd.data.dim));
            Ok(ZModularOutput::UpToScalar(r))
        }
    }
}
