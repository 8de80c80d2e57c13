//! Dense exact matrices over cyclotomic fields.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::{lcm, CycError, CycNum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("expected {expected} entries, got {got}")]
    BadEntryCount { expected: usize, got: usize },
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error(transparent)]
    Field(#[from] CycError),
}

/// Row-major dense matrix whose entries all share one ambient conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CycNum>,
}

/// A matrix with one `+-1` per row and column: row `i` has `signs[i]` at
/// column `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl CycMatrix {
    /// Builds a matrix, lifting every entry to the lcm of their conductors.
    pub fn new(rows: usize, cols: usize, entries: Vec<CycNum>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::BadEntryCount { expected: rows * cols, got: entries.len() });
        }
        let conductor = entries.iter().fold(1, |m, e| lcm(m, e.conductor()));
        let entries = entries.into_iter().map(|e| e.lift(conductor)).collect::<Result<_, _>>()?;
        Ok(CycMatrix { rows, cols, conductor, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycNum) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, entries).expect("entry count matches shape")
    }

    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        CycMatrix { rows, cols, conductor, entries: vec![CycNum::zero(conductor); rows * cols] }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        Self::scalar(n, &CycNum::one(conductor))
    }

    /// `c * Id`.
    pub fn scalar(n: usize, c: &CycNum) -> Self {
        let mut m = Self::zeros(n, n, c.conductor());
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(diag: &[CycNum]) -> Self {
        let n = diag.len();
        let conductor = diag.iter().fold(1, |m, e| lcm(m, e.conductor()));
        let mut m = Self::zeros(n, n, conductor);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.lift(conductor).expect("lcm conductor");
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    /// Re-expresses every entry over a multiple of the current conductor.
    pub fn lift(&self, conductor: u32) -> Result<Self, LinalgError> {
        let entries = self.entries.iter().map(|e| e.lift(conductor)).collect::<Result<_, _>>()?;
        Ok(CycMatrix { rows: self.rows, cols: self.cols, conductor, entries })
    }

    fn aligned(&self, other: &CycMatrix) -> (CycMatrix, CycMatrix) {
        let m = lcm(self.conductor, other.conductor);
        (self.lift(m).unwrap(), other.lift(m).unwrap())
    }

    pub fn mat_mul(&self, other: &CycMatrix) -> Result<CycMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch { op: "mat_mul", left: self.shape(), right: other.shape() });
        }
        if self.conductor != other.conductor {
            let (a, b) = self.aligned(other);
            return a.mat_mul(&b);
        }
        let n = self.conductor;
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for j in 0..other.cols {
                let mut acc = CycNum::zero(n);
                for (k, a) in row.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                out.push(acc);
            }
        }
        Ok(CycMatrix { rows: self.rows, cols: other.cols, conductor: n, entries: out })
    }

    pub fn mat_scale(&self, c: &CycNum) -> CycMatrix {
        let m = lcm(self.conductor, c.conductor());
        let c = c.lift(m).unwrap();
        let base = self.lift(m).unwrap();
        CycMatrix { entries: base.entries.iter().map(|e| e * &c).collect(), ..base }
    }

    fn zip_with(
        &self,
        other: &CycMatrix,
        op: &'static str,
        f: impl Fn(&CycNum, &CycNum) -> CycNum,
    ) -> Result<CycMatrix, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch { op, left: self.shape(), right: other.shape() });
        }
        let (a, b) = self.aligned(other);
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| f(x, y)).collect();
        Ok(CycMatrix { entries, ..a })
    }

    pub fn mat_sub(&self, other: &CycMatrix) -> Result<CycMatrix, LinalgError> {
        self.zip_with(other, "mat_sub", |x, y| x - y)
    }

    pub fn mat_add(&self, other: &CycMatrix) -> Result<CycMatrix, LinalgError> {
        self.zip_with(other, "mat_add", |x, y| x + y)
    }

    pub fn transpose(&self) -> CycMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        CycMatrix { rows: self.cols, cols: self.rows, conductor: self.conductor, entries }
    }

    /// Transpose with entrywise complex conjugation.
    pub fn conj_transpose(&self) -> CycMatrix {
        let t = self.transpose();
        CycMatrix { entries: t.entries.iter().map(CycNum::conj).collect(), ..t }
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// First `(i, j)` with `A[i][j] != A[j][i]`.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.rows).flat_map(|i| (i + 1..self.cols).map(move |j| (i, j))).find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    pub fn pow(&self, e: u32) -> Result<CycMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let mut acc = CycMatrix::identity(self.rows, self.conductor);
        for _ in 0..e {
            acc = acc.mat_mul(self)?;
        }
        Ok(acc)
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn submatrix(&self, idx: &[usize]) -> CycMatrix {
        let k = idx.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                entries.push(self.get(i, j).clone());
            }
        }
        CycMatrix { rows: k, cols: k, conductor: self.conductor, entries }
    }

    /// First entry where two equally-shaped matrices differ.
    pub fn first_difference(&self, other: &CycMatrix) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        (0..self.rows).flat_map(|i| (0..self.cols).map(move |j| (i, j))).find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }

    /// Rank over `Q(zeta_N)` by Gaussian elimination with first-nonzero
    /// pivoting.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<CycNum>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(rank, p);
            let inv = a[rank][c].inv().expect("pivot is non-zero");
            let pivot_row: Vec<CycNum> = a[rank].iter().map(|x| x * &inv).collect();
            for row in a.iter_mut().skip(rank + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for k in c..self.cols {
                    if !pivot_row[k].is_zero() {
                        row[k] = &row[k] - &(&f * &pivot_row[k]);
                    }
                }
            }
            a[rank] = pivot_row;
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Witness that the matrix is a signed permutation matrix.
    pub fn is_signed_permutation(&self) -> Option<SignedPermutation> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let one = CycNum::one(self.conductor);
        let minus_one = -&one;
        let mut perm = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for i in 0..n {
            let mut hit = None;
            for j in 0..n {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if hit.is_some() {
                    return None;
                }
                let s = if *e == one {
                    1
                } else if *e == minus_one {
                    -1
                } else {
                    return None;
                };
                hit = Some((j, s));
            }
            let (j, s) = hit?;
            if seen[j] {
                return None;
            }
            seen[j] = true;
            perm.push(j);
            signs.push(s);
        }
        Some(SignedPermutation { perm, signs })
    }
}

impl SignedPermutation {
    pub fn is_involution(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| self.perm[j] == i)
    }

    pub fn to_matrix(&self, conductor: u32) -> CycMatrix {
        let n = self.perm.len();
        CycMatrix::from_fn(n, n, |i, j| {
            if self.perm[i] == j {
                CycNum::from_i64(conductor, self.signs[i] as i64)
            } else {
                CycNum::zero(conductor)
            }
        })
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<CycNum>>,
}

impl Serialize for CycMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        MatrixJson { rows: self.rows, cols: self.cols, entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(serde::de::Error::custom(format!(
                "matrix entries do not match declared shape {}x{}",
                raw.rows, raw.cols
            )));
        }
        CycMatrix::new(raw.rows, raw.cols, raw.entries.into_iter().flatten().collect())
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::root_of_unity;

    fn int(v: i64) -> CycNum {
        CycNum::from_i64(1, v)
    }

    fn m2(a: i64, b: i64, c: i64, d: i64) -> CycMatrix {
        CycMatrix::new(2, 2, vec![int(a), int(b), int(c), int(d)]).unwrap()
    }

    #[test]
    fn identity_and_zero_scaling() {
        let a = CycMatrix::from_fn(2, 2, |i, j| root_of_unity(5, (i + 2 * j) as i64));
        assert_eq!(CycMatrix::identity(2, 5).mat_mul(&a).unwrap(), a);
        let z = a.mat_scale(&CycNum::zero(1));
        assert!(z.entries().iter().all(CycNum::is_zero));
        assert_eq!(a.mat_sub(&a).unwrap(), CycMatrix::zeros(2, 2, 5));
    }

    #[test]
    fn shape_errors() {
        let a = CycMatrix::identity(2, 1);
        let b = CycMatrix::identity(3, 1);
        assert!(matches!(a.mat_mul(&b), Err(LinalgError::ShapeMismatch { .. })));
        assert!(matches!(a.mat_sub(&b), Err(LinalgError::ShapeMismatch { .. })));
        assert!(CycMatrix::new(2, 2, vec![int(1)]).is_err());
    }

    #[test]
    fn conj_transpose_examples() {
        assert_eq!(CycMatrix::identity(3, 7).conj_transpose(), CycMatrix::identity(3, 7));
        let a = CycMatrix::new(1, 1, vec![root_of_unity(5, 1)]).unwrap();
        assert_eq!(a.conj_transpose(), CycMatrix::new(1, 1, vec![root_of_unity(5, 4)]).unwrap());
        let b = CycMatrix::from_fn(2, 3, |i, j| root_of_unity(7, (i * 3 + j) as i64) + int(i as i64));
        assert_eq!(b.conj_transpose().conj_transpose(), b);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(CycMatrix::identity(3, 1).rank(), 3);
        assert_eq!(CycMatrix::zeros(2, 2, 1).rank(), 0);
        // rows (1, z) and (z, z^2) are proportional
        let z = root_of_unity(7, 1);
        let a = CycMatrix::new(2, 2, vec![int(1), z.clone(), z.clone(), &z * &z]).unwrap();
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn signed_permutation_examples() {
        let id = CycMatrix::identity(3, 1).is_signed_permutation().unwrap();
        assert_eq!(id.perm, vec![0, 1, 2]);
        assert_eq!(id.signs, vec![1, 1, 1]);
        let w = m2(0, -1, 1, 0).is_signed_permutation().unwrap();
        assert_eq!(w.perm, vec![1, 0]);
        assert_eq!(w.signs, vec![-1, 1]);
        assert!(m2(1, 1, 0, 1).is_signed_permutation().is_none());
        assert!(m2(2, 0, 0, 1).is_signed_permutation().is_none());
        assert!(m2(1, 0, 1, 0).is_signed_permutation().is_none());
    }

    #[test]
    fn json_shape_is_checked() {
        let a = m2(1, 2, 3, 4);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<CycMatrix>(&s).unwrap(), a);
        let bad = r#"{"rows":2,"cols":2,"entries":[[{"conductor":1,"coeffs":["1"]}]]}"#;
        assert!(serde_json::from_str::<CycMatrix>(bad).is_err());
    }
}
