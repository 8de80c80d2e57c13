//! Rigorous dyadic interval arithmetic.
//!
//! An [`Interval`] at precision `p` is a pair of integers `(lo, hi)` standing
//! for the closed real interval `[lo * 2^-p, hi * 2^-p]`. Every operation
//! rounds its lower end down and its upper end up, so the true value of any
//! expression evaluated with these operations is always enclosed.
//!
//! Only what the cyclotomic embeddings need is here: ring operations,
//! rational scaling, `pi`, and `cos`/`sin` of rational multiples of `2*pi`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Extra bits carried internally beyond the caller's requested precision.
const GUARD_BITS: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn pow2(p: u32) -> BigInt {
    BigInt::one() << (p as usize)
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Interval {
    pub fn zero(prec: u32) -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero(), prec }
    }

    pub fn from_int(v: &BigInt, prec: u32) -> Self {
        let x = v << (prec as usize);
        Interval { lo: x.clone(), hi: x, prec }
    }

    /// Encloses `num / den` (den must be non-zero).
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let scaled = num << (prec as usize);
        Interval { lo: div_floor(&scaled, &den), hi: div_ceil(&scaled, &den), prec }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_ratio(q.numer(), q.denom(), prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Width of the interval in units of `2^-prec`.
    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.prec, other.prec);
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, prec: self.prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.prec, other.prec);
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        let scale = pow2(self.prec);
        Interval { lo: div_floor(min, &scale), hi: div_ceil(max, &scale), prec: self.prec }
    }

    /// Multiplies by the exact rational `num / den`.
    pub fn scale(&self, num: &BigInt, den: &BigInt) -> Self {
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let a = &self.lo * &num;
        let b = &self.hi * &num;
        let (min, max) = if a <= b { (a, b) } else { (b, a) };
        Interval { lo: div_floor(&min, &den), hi: div_ceil(&max, &den), prec: self.prec }
    }

    fn hull(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec,
        }
    }

    /// Outward-rounded `f64` bounds.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        let lo = ratio_to_f64(&self.lo, self.prec);
        let hi = ratio_to_f64(&self.hi, self.prec);
        (lo.next_down(), hi.next_up())
    }

    pub fn midpoint_f64(&self) -> f64 {
        ratio_to_f64(&(&self.lo + &self.hi), self.prec + 1)
    }

    /// Reduces the stored precision to `prec` (rounding outward).
    pub fn with_precision(&self, prec: u32) -> Self {
        if prec >= self.prec {
            let shift = (prec - self.prec) as usize;
            return Interval { lo: &self.lo << shift, hi: &self.hi << shift, prec };
        }
        let scale = pow2(self.prec - prec);
        Interval { lo: div_floor(&self.lo, &scale), hi: div_ceil(&self.hi, &scale), prec }
    }
}

fn ratio_to_f64(v: &BigInt, prec: u32) -> f64 {
    // v * 2^-prec, computed from the top 64 bits to avoid overflow on big v.
    let bits = v.bits();
    if bits <= 60 {
        let f = v.to_f64().unwrap_or(0.0);
        return f * (-(prec as f64)).exp2();
    }
    let shift = bits - 60;
    let top = (v >> (shift as usize)).to_f64().unwrap_or(0.0);
    top * ((shift as f64) - (prec as f64)).exp2()
}

/// Complex enclosure: a rectangle `re x im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    /// True when the rectangle contains the point `(re, im)`.
    pub fn contains(&self, re: f64, im: f64) -> bool {
        let (rl, rh) = self.re.to_f64_bounds();
        let (il, ih) = self.im.to_f64_bounds();
        rl <= re && re <= rh && il <= im && im <= ih
    }

    pub fn midpoint(&self) -> (f64, f64) {
        (self.re.midpoint_f64(), self.im.midpoint_f64())
    }
}

/// Serializable summary of an enclosure, for reports and the browser demo.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexBounds {
    pub re: [f64; 2],
    pub im: [f64; 2],
}

impl From<&ComplexInterval> for ComplexBounds {
    fn from(c: &ComplexInterval) -> Self {
        let (rl, rh) = c.re.to_f64_bounds();
        let (il, ih) = c.im.to_f64_bounds();
        ComplexBounds { re: [rl, rh], im: [il, ih] }
    }
}

/// Working precision used for a requested output precision.
pub(crate) fn working_precision(precision_bits: u32) -> u32 {
    precision_bits.max(16) + GUARD_BITS
}

/// `arctan(1/m)` for an integer `m >= 2`, enclosed at precision `prec`.
fn arctan_inv(m: u64, prec: u32) -> Interval {
    let one = pow2(prec);
    let m_big = BigInt::from(m);
    let m2 = &m_big * &m_big;
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    // term_k = 1 / ((2k+1) m^(2k+1)); power = m^(2k+1)
    let mut power = m_big.clone();
    let mut k: u64 = 0;
    loop {
        let den = &power * BigInt::from(2 * k + 1);
        let t_lo = div_floor(&one, &den);
        let t_hi = div_ceil(&one, &den);
        if t_hi <= BigInt::one() {
            // Remaining alternating tail is bounded by this term (<= 1 ulp).
            lo -= BigInt::one();
            hi += BigInt::one();
            break;
        }
        if k.is_multiple_of(2) {
            lo += &t_lo;
            hi += &t_hi;
        } else {
            lo -= &t_hi;
            hi -= &t_lo;
        }
        power *= &m2;
        k += 1;
    }
    Interval { lo, hi, prec }
}

/// `pi` via Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u32) -> Interval {
    let guard = prec + 16;
    let a = arctan_inv(5, guard);
    let b = arctan_inv(239, guard);
    let sixteen = BigInt::from(16);
    let four = BigInt::from(4);
    let one = BigInt::one();
    a.scale(&sixteen, &one).sub(&b.scale(&four, &one)).with_precision(prec)
}

/// Taylor evaluation of `cos` and `sin` at a point interval `x` with
/// `0 <= x < 1`. Terms are positive and decreasing, so the alternating tail
/// is bounded by the first omitted term.
fn cos_sin_small(x: &Interval) -> (Interval, Interval) {
    let prec = x.prec;
    let one = pow2(prec);
    // Since cos is decreasing and sin increasing on [0, 1), evaluate each
    // series at both endpoints and take the hull of the enclosures.
    let eval = |xv: &BigInt| -> (Interval, Interval) {
        let mut cos_lo = one.clone();
        let mut cos_hi = one.clone();
        let mut sin_lo = BigInt::zero();
        let mut sin_hi = BigInt::zero();
        // term_n bounds for x^n / n!
        let mut t_lo = one.clone();
        let mut t_hi = one.clone();
        let mut n: u64 = 0;
        loop {
            n += 1;
            let den = BigInt::from(n) * &one;
            t_lo = div_floor(&(&t_lo * xv), &den);
            t_hi = div_ceil(&(&t_hi * xv), &den);
            let sign_negative = matches!(n % 4, 2 | 3);
            let target_is_cos = n.is_multiple_of(2);
            let (acc_lo, acc_hi) = if target_is_cos {
                (&mut cos_lo, &mut cos_hi)
            } else {
                (&mut sin_lo, &mut sin_hi)
            };
            if sign_negative {
                *acc_lo -= &t_hi;
                *acc_hi -= &t_lo;
            } else {
                *acc_lo += &t_lo;
                *acc_hi += &t_hi;
            }
            if t_hi <= BigInt::one() && n >= 2 {
                // Both remaining tails are bounded by the next term <= t_hi.
                let pad = &t_hi + BigInt::one();
                cos_lo -= &pad;
                cos_hi += &pad;
                sin_lo -= &pad;
                sin_hi += &pad;
                break;
            }
        }
        (
            Interval { lo: cos_lo, hi: cos_hi, prec },
            Interval { lo: sin_lo, hi: sin_hi, prec },
        )
    };
    let (c_lo_pt, s_lo_pt) = eval(&x.lo.clone().max(BigInt::zero()));
    let (c_hi_pt, s_hi_pt) = eval(&x.hi);
    (c_lo_pt.hull(&c_hi_pt), s_lo_pt.hull(&s_hi_pt))
}

/// Encloses `(cos(2 pi r), sin(2 pi r))` for a rational `r`.
pub fn cos_sin_turns(r: &BigRational, prec: u32) -> (Interval, Interval) {
    let one = BigRational::one();
    // reduce to [0, 1)
    let mut r = r - r.floor();
    if r < BigRational::zero() {
        r += &one;
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let eighth = BigRational::new(BigInt::one(), BigInt::from(8));
    if r >= half {
        let (c, s) = cos_sin_turns(&(&r - &half), prec);
        return (c.neg(), s.neg());
    }
    if r >= quarter {
        let (c, s) = cos_sin_turns(&(&r - &quarter), prec);
        return (s.neg(), c);
    }
    if r > eighth {
        let (c, s) = cos_sin_turns(&(&quarter - &r), prec);
        return (s, c);
    }
    // x = 2 pi r in [0, pi/4]
    let two_r_num = r.numer() * BigInt::from(2);
    let x = pi(prec).scale(&two_r_num, r.denom());
    cos_sin_small(&x)
}
