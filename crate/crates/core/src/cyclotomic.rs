//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! A [`CycNum`] stores its conductor `N` and a coefficient vector in the
//! power basis `1, zeta_N, ..., zeta_N^(phi(N)-1)` of `Q[x]/Phi_N(x)`.
//! Coefficients share a single positive denominator, and the pair
//! (numerators, denominator) is kept in lowest terms, so two values with the
//! same conductor are equal iff their stored data are identical. Values with
//! different conductors are compared (and combined) after lifting both to the
//! lcm of the conductors.
//!
//! The embedding into `C` used throughout (complex conjugation, unitarity,
//! numeric enclosures) is `zeta_N -> exp(2 pi i / N)`; complex conjugation is
//! then the Galois map `zeta_N -> zeta_N^-1`.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::interval::{self, ComplexInterval, Interval};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("Galois exponent {j} is not coprime to conductor {conductor}")]
    NotCoprime { j: i64, conductor: u32 },
    #[error("element is not real: conj(a) != a")]
    NotReal,
    #[error("{bits} bits of precision cannot decide the sign of an embedding")]
    InsufficientPrecision { bits: u32 },
    #[error("conductor {from} does not divide {to}")]
    NotADivisor { from: u32, to: u32 },
    #[error("expected {expected} coefficients for conductor {conductor}, got {got}")]
    BadLength { conductor: u32, expected: usize, got: usize },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the cyclotomic polynomial `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of conductor 0");
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut quotient = vec![0i64; n as usize + 1];
    quotient[0] = -1;
    quotient[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            quotient = divide_monic(&quotient, &divisor);
        }
    }
    let arc = Arc::new(quotient);
    poly_cache().lock().unwrap().insert(n, Arc::clone(&arc));
    arc
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

/// Reduces an integer polynomial modulo `Phi_n`, returning exactly `phi(n)`
/// coefficients.
fn reduce_mod_phi(n: u32, mut poly: Vec<BigInt>) -> Vec<BigInt> {
    let phi_poly = cyclotomic_polynomial(n);
    let deg = phi_poly.len() - 1;
    if poly.len() > deg {
        for i in (deg..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[i]);
            for (j, pj) in phi_poly.iter().enumerate().take(deg) {
                if *pj != 0 {
                    poly[i - deg + j] -= &c * *pj;
                }
            }
        }
    }
    poly.resize(deg, BigInt::zero());
    poly
}

/// An exact element of the cyclotomic field `Q(zeta_N)`.
#[derive(Clone, Debug)]
pub struct CycNum {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Witness that an element equals `sign * zeta_conductor^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOfUnity {
    /// Multiplicative order of the element.
    pub order: u64,
    /// Exponent `k` with the element equal to `sign * zeta_N^k`, `N` the
    /// element's conductor.
    pub exponent: i64,
    pub sign: i8,
}

impl CycNum {
    fn from_parts(conductor: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycNum { conductor, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(conductor: u32) -> Self {
        assert!(conductor >= 1);
        CycNum { conductor, num: vec![BigInt::zero(); euler_phi(conductor)], den: BigInt::one() }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_i64(conductor, 1)
    }

    pub fn from_i64(conductor: u32, v: i64) -> Self {
        let mut x = Self::zero(conductor);
        x.num[0] = BigInt::from(v);
        x
    }

    pub fn from_rational(conductor: u32, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); euler_phi(conductor)];
        num[0] = q.numer().clone();
        Self::from_parts(conductor, num, q.denom().clone())
    }

    /// Builds an element from its power-basis coordinates.
    pub fn from_coeffs(conductor: u32, coeffs: &[BigRational]) -> Result<Self, CycError> {
        if conductor == 0 {
            return Err(CycError::ZeroConductor);
        }
        let expected = euler_phi(conductor);
        if coeffs.len() != expected {
            return Err(CycError::BadLength { conductor, expected, got: coeffs.len() });
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_parts(conductor, num, den))
    }

    /// Builds `sum_k coeffs[k] zeta_N^k` for an arbitrary-length integer list
    /// (the redundant basis), reducing modulo `Phi_N`.
    pub fn from_exponent_sum(conductor: u32, terms: &[(i64, i64)]) -> Self {
        let n = conductor as i64;
        let mut poly = vec![BigInt::zero(); conductor as usize];
        for &(coeff, k) in terms {
            poly[k.rem_euclid(n) as usize] += coeff;
        }
        Self::from_parts(conductor, reduce_mod_phi(conductor, poly), BigInt::one())
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// Image of this element in `Q(zeta_m)`, `m` a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Result<Self, CycError> {
        if m == 0 {
            return Err(CycError::ZeroConductor);
        }
        if !m.is_multiple_of(self.conductor) {
            return Err(CycError::NotADivisor { from: self.conductor, to: m });
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (k, c) in self.num.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Ok(CycNum { conductor: m, num: reduce_mod_phi(m, poly), den: self.den.clone() })
    }

    fn unify<'a>(a: &'a CycNum, b: &'a CycNum) -> (Cow<'a, CycNum>, Cow<'a, CycNum>) {
        if a.conductor == b.conductor {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else {
            let m = lcm(a.conductor, b.conductor);
            (Cow::Owned(a.lift(m).unwrap()), Cow::Owned(b.lift(m).unwrap()))
        }
    }

    fn add_ref(&self, other: &CycNum) -> CycNum {
        let (a, b) = Self::unify(self, other);
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return Self::from_parts(a.conductor, num, a.den.clone());
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        Self::from_parts(a.conductor, num, &a.den * &b.den)
    }

    fn mul_ref(&self, other: &CycNum) -> CycNum {
        let (a, b) = Self::unify(self, other);
        let n = a.conductor;
        if a.is_rational() || b.is_rational() {
            let (r, x) = if a.is_rational() { (&a, &b) } else { (&b, &a) };
            let s = &r.num[0];
            let num = x.num.iter().map(|c| c * s).collect();
            return Self::from_parts(n, num, &r.den * &x.den);
        }
        let len = a.num.len();
        let mut poly = vec![BigInt::zero(); 2 * len - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::from_parts(n, reduce_mod_phi(n, poly), &a.den * &b.den)
    }

    pub fn neg(&self) -> CycNum {
        CycNum { conductor: self.conductor, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    /// Image under `zeta_N -> zeta_N^j`.
    pub fn galois_apply(&self, j: i64) -> Result<CycNum, CycError> {
        let n = self.conductor as i64;
        let jr = j.rem_euclid(n);
        if jr.gcd(&n) != 1 {
            return Err(CycError::NotCoprime { j, conductor: self.conductor });
        }
        if jr == 1 % n {
            return Ok(self.clone());
        }
        let mut poly = vec![BigInt::zero(); self.conductor as usize];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                poly[((k as i64) * jr % n) as usize] += c;
            }
        }
        Ok(CycNum { conductor: self.conductor, num: reduce_mod_phi(self.conductor, poly), den: self.den.clone() })
    }

    /// Complex conjugation, the Galois map `zeta_N -> zeta_N^-1`.
    pub fn conj(&self) -> CycNum {
        self.galois_apply(-1).expect("-1 is a unit mod every conductor")
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let (_, norm) = self.norm_cofactor();
        norm
    }

    /// Returns `(P, N)` with `self * P = N` rational; `P` is the product of
    /// the non-trivial Galois conjugates.
    fn norm_cofactor(&self) -> (CycNum, BigRational) {
        let n = self.conductor as i64;
        let mut cofactor = CycNum::one(self.conductor);
        for j in 2..n.max(2) {
            if j.gcd(&n) == 1 {
                cofactor = cofactor.mul_ref(&self.galois_apply(j).unwrap());
            }
        }
        let product = self.mul_ref(&cofactor);
        let norm = product.as_rational().expect("norm of a cyclotomic element is rational");
        (cofactor, norm)
    }

    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if self.is_rational() {
            let mut out = CycNum::zero(self.conductor);
            out.num[0] = self.den.clone();
            return Ok(CycNum::from_parts(self.conductor, out.num, self.num[0].clone()));
        }
        let (cofactor, norm) = self.norm_cofactor();
        let scale = CycNum::from_rational(self.conductor, &norm.recip());
        Ok(cofactor.mul_ref(&scale))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, CycError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(acc)
    }

    /// Returns a witness when the element is `+-zeta_N^k`; every root of
    /// unity inside `Q(zeta_N)` has this form.
    pub fn is_root_of_unity(&self) -> Option<RootOfUnity> {
        if self.is_zero() || !self.mul_ref(&self.conj()).is_one() {
            return None;
        }
        let n = self.conductor as i64;
        let neg = self.neg();
        for (sign, target) in [(1i8, self), (-1i8, &neg)] {
            for k in 0..n {
                if *target == root_of_unity(self.conductor, k) {
                    let order = if sign == 1 {
                        n / n.gcd(&k)
                    } else {
                        let m = 2 * n;
                        m / m.gcd(&(n + 2 * k))
                    };
                    return Some(RootOfUnity { order: order as u64, exponent: k, sign });
                }
            }
        }
        None
    }

    /// Rigorous enclosure of the image under `zeta_N -> exp(2 pi i / N)`.
    pub fn embed_complex(&self, precision_bits: u32) -> ComplexInterval {
        self.embed_with(1, interval::working_precision(precision_bits))
    }

    /// Enclosure of the embedding `zeta_N -> exp(2 pi i j / N)`.
    fn embed_with(&self, j: i64, prec: u32) -> ComplexInterval {
        let n = self.conductor as i64;
        let mut re = Interval::zero(prec);
        let mut im = Interval::zero(prec);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j * k as i64).rem_euclid(n);
            let (cs, sn) = cached_cos_sin(self.conductor, e, prec);
            re = re.add(&cs.scale(c, &self.den));
            im = im.add(&sn.scale(c, &self.den));
        }
        ComplexInterval { re, im }
    }

    /// True iff every Galois embedding of this real element is positive.
    pub fn is_totally_positive(&self, precision_bits: u32) -> Result<bool, CycError> {
        if self.conj() != *self {
            return Err(CycError::NotReal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(q.is_positive());
        }
        let prec = interval::working_precision(precision_bits);
        let n = self.conductor as i64;
        let mut undecided = false;
        for j in 1..=n / 2 {
            if j.gcd(&n) != 1 {
                continue;
            }
            let value = self.embed_with(j, prec).re;
            if value.is_negative() {
                return Ok(false);
            }
            if !value.is_positive() {
                undecided = true;
            }
        }
        if undecided {
            Err(CycError::InsufficientPrecision { bits: precision_bits })
        } else {
            Ok(true)
        }
    }

    /// The same element expressed over the smallest conductor dividing the
    /// current one. Never needed for correctness.
    pub fn minimize_conductor(&self) -> CycNum {
        if self.is_rational() {
            return CycNum::from_parts(1, vec![self.num[0].clone()], self.den.clone());
        }
        let n = self.conductor;
        for m in 1..n {
            if !n.is_multiple_of(m) || (m % 4 == 2) {
                continue;
            }
            if let Some(x) = self.express_over(m) {
                return x;
            }
        }
        self.clone()
    }

    /// Solves for coordinates over `Q(zeta_m)` by exact elimination.
    fn express_over(&self, m: u32) -> Option<CycNum> {
        let target = self.coeffs();
        let basis: Vec<Vec<BigRational>> =
            (0..euler_phi(m)).map(|i| root_of_unity(m, i as i64).lift(self.conductor).unwrap().coeffs()).collect();
        let rows = target.len();
        let cols = basis.len();
        // augmented matrix rows x (cols + 1)
        let mut a: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = basis.iter().map(|b| b[r].clone()).collect();
                row.push(target[r].clone());
                row
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for v in a[r].iter_mut() {
                *v = &*v * &inv;
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for k in 0..=cols {
                        let t = &a[r][k] * &f;
                        a[i][k] -= t;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        if a[r..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let mut x = vec![BigRational::zero(); cols];
        for (i, &c) in pivot_cols.iter().enumerate() {
            x[c] = a[i][cols].clone();
        }
        CycNum::from_coeffs(m, &x).ok()
    }
}

fn cos_sin_cache() -> &'static Mutex<HashMap<(u32, i64, u32), (Interval, Interval)>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, i64, u32), (Interval, Interval)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_cos_sin(n: u32, k: i64, prec: u32) -> (Interval, Interval) {
    let key = (n, k, prec);
    if let Some(v) = cos_sin_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let r = BigRational::new(BigInt::from(k), BigInt::from(n));
    let v = interval::cos_sin_turns(&r, prec);
    cos_sin_cache().lock().unwrap().insert(key, v.clone());
    v
}

/// `zeta_N^k` in `Q(zeta_N)`.
pub fn root_of_unity(n: u32, k: i64) -> CycNum {
    assert!(n >= 1, "root_of_unity requires N >= 1");
    CycNum::from_exponent_sum(n, &[(1, k)])
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = CycNum::unify(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(self, rhs)
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&b.neg()));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(&self)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<BigRational, CycError> {
    let bad = || CycError::BadRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let coef = format_rational(&mag);
            match k {
                0 => write!(f, "{coef}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coef}*")?;
                    }
                    write!(f, "z{}", self.conductor)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumJson {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CycNumJson { conductor: self.conductor, coeffs: self.coeffs().iter().map(format_rational).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = CycNumJson::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        CycNum::from_coeffs(raw.conductor, &coeffs).map_err(serde::de::Error::custom)
    }
}
