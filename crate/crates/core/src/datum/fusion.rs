use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::report::{Outcome, VerificationReport};
use super::DatumError;

/// Integer structure constants `N_{i,j}^k` of a based ring, with its unit and
/// the duality read off from `N_{i,j}^{unit}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionTensor {
    pub labels: Vec<String>,
    pub unit: usize,
    pub duality: Vec<usize>,
    constants: Vec<i64>,
}

impl FusionTensor {
    /// `constants[(i * n + j) * n + k] = N_{i,j}^k`. The duality is the
    /// unique `j` with `N_{i,j}^{unit} != 0`.
    pub fn from_constants(labels: Vec<String>, unit: usize, constants: Vec<i64>) -> Result<Self, DatumError> {
        let n = labels.len();
        if constants.len() != n * n * n || unit >= n {
            return Err(DatumError::Malformed(format!(
                "{} constants for {n} labels (unit {unit})",
                constants.len()
            )));
        }
        let mut duality = Vec::with_capacity(n);
        for i in 0..n {
            let hits: Vec<usize> = (0..n).filter(|&j| constants[(i * n + j) * n + unit] != 0).collect();
            match hits.as_slice() {
                [j] => duality.push(*j),
                _ => {
                    return Err(DatumError::Malformed(format!(
                        "{:?} has {} candidate duals",
                        labels[i],
                        hits.len()
                    )))
                }
            }
        }
        Ok(FusionTensor { labels, unit, duality, constants })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        let n = self.len();
        self.constants[(i * n + j) * n + k]
    }

    pub fn constants(&self) -> &[i64] {
        &self.constants
    }

    /// Non-zero terms of `i * j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        (0..self.len()).filter_map(|k| Some((k, self.get(i, j, k))).filter(|t| t.1 != 0)).collect()
    }

    pub fn has_negative(&self) -> bool {
        self.constants.iter().any(|&c| c < 0)
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn check_unit(&self) -> Outcome {
        let n = self.len();
        for j in 0..n {
            for k in 0..n {
                let expect = i64::from(j == k);
                for (a, b, v) in [(self.unit, j, self.get(self.unit, j, k)), (j, self.unit, self.get(j, self.unit, k))] {
                    if v != expect {
                        return Err(self.witness(a, b, k, v, expect));
                    }
                }
            }
        }
        Ok(Value::Null)
    }

    /// `N_{i,j}^{unit}` is `+-1` at `j = i^*` and zero elsewhere, and `*` is
    /// an involution fixing the unit.
    pub fn check_duality(&self) -> Outcome {
        let mut signed = false;
        for i in 0..self.len() {
            let d = self.duality[i];
            if self.duality[d] != i {
                return Err(json!({ "label": self.labels[i], "dual": self.labels[d], "reason": "not an involution" }));
            }
            let v = self.get(i, d, self.unit);
            if v.abs() != 1 {
                return Err(self.witness(i, d, self.unit, v, 1));
            }
            signed |= v < 0;
        }
        if self.duality[self.unit] != self.unit {
            return Err(json!({ "reason": "unit is not self-dual" }));
        }
        Ok(json!({ "signed": signed }))
    }

    pub fn check_associativity(&self) -> Outcome {
        let n = self.len();
        let products: Vec<Vec<(usize, i64)>> =
            (0..n * n).map(|ij| self.product(ij / n, ij % n)).collect();
        let mut left = vec![0i64; n];
        let mut right = vec![0i64; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    left.iter_mut().for_each(|x| *x = 0);
                    right.iter_mut().for_each(|x| *x = 0);
                    for &(m, a) in &products[i * n + j] {
                        for &(l, b) in &products[m * n + k] {
                            left[l] += a * b;
                        }
                    }
                    for &(m, a) in &products[j * n + k] {
                        for &(l, b) in &products[i * n + m] {
                            right[l] += a * b;
                        }
                    }
                    if let Some(l) = (0..n).find(|&l| left[l] != right[l]) {
                        return Err(json!({
                            "i": self.labels[i], "j": self.labels[j], "k": self.labels[k], "l": self.labels[l],
                            "(ij)k": left[l], "i(jk)": right[l],
                        }));
                    }
                }
            }
        }
        Ok(Value::Null)
    }

    /// Unit, duality and associativity, as three report entries.
    pub fn check_all(&self) -> VerificationReport {
        let mut r = VerificationReport::new();
        r.run("fusion_unit", || self.check_unit());
        r.run("fusion_duality", || self.check_duality());
        r.run("fusion_associativity", || self.check_associativity());
        r
    }

    fn witness(&self, i: usize, j: usize, k: usize, got: i64, expected: i64) -> Value {
        json!({
            "i": self.labels[i], "j": self.labels[j], "k": self.labels[k],
            "got": got, "expected": expected,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FusionTensor {
        let labels = (0..n).map(|k| format!("g{k}")).collect();
        let mut c = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                c[(i * n + j) * n + (i + j) % n] = 1;
            }
        }
        FusionTensor::from_constants(labels, 0, c).unwrap()
    }

    #[test]
    fn group_ring_passes() {
        let t = cyclic(4);
        assert_eq!(t.duality, vec![0, 3, 2, 1]);
        assert!(t.check_all().all_passed());
        assert_eq!(t.product(1, 2), vec![(3, 1)]);
    }

    #[test]
    fn broken_associativity_is_caught() {
        // Fibonacci with a wrong constant: t*t = 1 + 2t
        let mut c = vec![0; 8];
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        c[idx(0, 0, 0)] = 1;
        c[idx(0, 1, 1)] = 1;
        c[idx(1, 0, 1)] = 1;
        c[idx(1, 1, 0)] = 1;
        c[idx(1, 1, 1)] = 1;
        let fib = FusionTensor::from_constants(vec!["1".into(), "t".into()], 0, c.clone()).unwrap();
        assert!(fib.check_all().all_passed());
        c[idx(1, 1, 1)] = 2;
        c[idx(0, 1, 1)] = 2;
        let bad = FusionTensor::from_constants(vec!["1".into(), "t".into()], 0, c).unwrap();
        assert!(bad.check_unit().is_err());
    }

    #[test]
    fn missing_dual_is_rejected() {
        let c = vec![1, 0, 0, 0, 0, 1, 0, 0];
        assert!(FusionTensor::from_constants(vec!["1".into(), "x".into()], 0, c).is_err());
    }
}
