//! Square roots of structured cyclotomic numbers.
//!
//! Handles `x = r * w * (1 - zeta^a)^(2e)` with `r` a rational, `w` a root
//! of unity and `|e| <= 2`. Square roots of primes come from quadratic Gauss
//! sums, square roots of roots of unity from the doubled order. Every result
//! is squared back and compared exactly before it is returned.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{root_of_unity, CycNum};

/// A `y` with `y^2 = x` inside some cyclotomic field, when `x` has the
/// structured form above.
pub fn sqrt_in_field(x: &CycNum) -> Option<CycNum> {
    if x.is_zero() {
        return Some(CycNum::zero(1));
    }
    let verified = |y: CycNum| if &y * &y == *x { Some(y) } else { None };
    if let Some(y) = sqrt_rational_times_unit(x).and_then(verified) {
        return Some(y);
    }
    let n = x.conductor();
    for a in 1..=(n / 2) as i64 {
        let f = CycNum::one(n) - root_of_unity(n, a);
        for e in [1i64, -1, 2, -2] {
            let fe = f.pow(e).ok()?;
            let Ok(rest) = x.div(&(&fe * &fe)) else { continue };
            if let Some(y) = sqrt_rational_times_unit(&rest).and_then(|r| verified(&r * &fe)) {
                return Some(y);
            }
        }
    }
    None
}

/// `x = r * w` with `r > 0` rational and `w` a root of unity.
fn sqrt_rational_times_unit(x: &CycNum) -> Option<CycNum> {
    let q = (x * &x.conj()).as_rational()?;
    let r = rational_sqrt(&q)?;
    let w = x * &CycNum::from_rational(1, &r.recip());
    let root = w.is_root_of_unity()?;
    let sqrt_w = if root.order % 2 == 1 {
        w.pow((root.order as i64 + 1) / 2).ok()?
    } else {
        let n = w.conductor() as i64;
        // w = sign * zeta_n^k = zeta_{2n}^(2k + (n if sign < 0))
        let e = 2 * root.exponent + if root.sign < 0 { n } else { 0 };
        root_of_unity((4 * n) as u32, e)
    };
    Some(&sqrt_positive_rational(&r)? * &sqrt_w)
}

/// Exact rational square root of a non-negative rational square.
fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let a = int_sqrt_exact(q.numer())?;
    let b = int_sqrt_exact(q.denom())?;
    Some(BigRational::new(a, b))
}

fn int_sqrt_exact(v: &BigInt) -> Option<BigInt> {
    let s = v.sqrt();
    if &(&s * &s) == v {
        Some(s)
    } else {
        None
    }
}

/// `sqrt(a/b) = sqrt(a b) / b`, with `sqrt(m)` split as `s sqrt(f)`, `f`
/// squarefree.
fn sqrt_positive_rational(q: &BigRational) -> Option<CycNum> {
    let m = q.numer() * q.denom();
    let (square, free) = split_square(&m)?;
    let mut acc = CycNum::from_rational(1, &BigRational::new(square, q.denom().clone()));
    for p in free {
        acc = &acc * &sqrt_prime(p);
    }
    Some(acc)
}

/// `m = s^2 * prod(ps)` with distinct primes `ps`. Gives up on factors above
/// the trial-division bound.
fn split_square(m: &BigInt) -> Option<(BigInt, Vec<u64>)> {
    const BOUND: u64 = 1 << 20;
    let mut rest = m.clone();
    let mut square = BigInt::one();
    let mut free = Vec::new();
    let mut p: u64 = 2;
    while p <= BOUND && BigInt::from(p) * BigInt::from(p) <= rest {
        let bp = BigInt::from(p);
        let mut k = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            k += 1;
        }
        for _ in 0..k / 2 {
            square *= &bp;
        }
        if k % 2 == 1 {
            free.push(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Some((square, free));
    }
    if BigInt::from(p) * BigInt::from(p) > rest {
        free.push(rest.to_u64()?);
        return Some((square, free));
    }
    None
}

/// `sqrt(p)` for a prime `p`.
fn sqrt_prime(p: u64) -> CycNum {
    if p == 2 {
        return root_of_unity(8, 1) + root_of_unity(8, -1);
    }
    let pi = p as i64;
    // g = sum (k/p) zeta_p^k has g^2 = (-1/p) p.
    let terms: Vec<(i64, i64)> = (1..pi).map(|k| (legendre(k, pi), k)).collect();
    let g = CycNum::from_exponent_sum(p as u32, &terms);
    if p % 4 == 1 {
        g
    } else {
        &root_of_unity(4, -1) * &g
    }
}

fn legendre(a: i64, p: i64) -> i64 {
    let r = BigInt::from(a).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    if r.is_one() {
        1
    } else if r.is_zero() {
        0
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(x: &CycNum) -> CycNum {
        let y = sqrt_in_field(x).unwrap_or_else(|| panic!("no root for {x}"));
        assert_eq!(&y * &y, *x);
        y
    }

    #[test]
    fn rationals() {
        assert_eq!(check(&CycNum::from_i64(1, 4)), CycNum::from_i64(1, 2));
        for v in [2, 3, 5, 6, 7, 12, 45, 98] {
            check(&CycNum::from_i64(1, v));
        }
        check(&CycNum::from_rational(1, &BigRational::new(3.into(), 8.into())));
        check(&CycNum::from_i64(1, -3));
    }

    #[test]
    fn roots_of_unity() {
        let y = check(&root_of_unity(3, 4));
        assert!(y == root_of_unity(3, 2) || y == -root_of_unity(3, 2));
        check(&root_of_unity(5, 2));
        check(&-root_of_unity(7, 3));
    }

    #[test]
    fn one_minus_zeta_factors() {
        // zeta^2 d^2 / (1 - zeta)^2 with d = 3, zeta = zeta_3
        let z = root_of_unity(3, 1);
        let f = CycNum::one(3) - &z;
        let x = (&(&z * &z) * &CycNum::from_i64(1, 9)).div(&(&f * &f)).unwrap();
        let y = check(&x);
        let c = (&CycNum::from_i64(1, 3) * &z).div(&(&z - &CycNum::one(1))).unwrap();
        assert!(y == c || y == -&c);
        // 4 + 2 sqrt(2) in Q(zeta_16)
        let three = root_of_unity(16, -2) + CycNum::one(1) + root_of_unity(16, 2);
        check(&(CycNum::one(1) + &three * &three));
    }

    #[test]
    fn non_squares_are_rejected() {
        assert!(sqrt_in_field(&(CycNum::from_i64(1, 2) + root_of_unity(7, 1))).is_none());
    }
}
