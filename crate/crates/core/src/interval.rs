//! Closed intervals with rational endpoints and certified elementary
//! functions (sqrt, ln, atan, arccos, pi).
//!
//! Every function returns an interval that provably contains the true
//! value. The `bits` argument is a target for the absolute width
//! (roughly `2^-bits`), not a guarantee: composite expressions widen.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{ceil_dyadic, floor_dyadic, fmt_decimal, isqrt, pow2, q, qr, to_f64, Q};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
}

impl Interval {
    pub fn new(lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: Q) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(q(n))
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Q {
        (&self.lo + &self.hi) / q(2)
    }

    pub fn mid_f64(&self) -> f64 {
        to_f64(&self.mid())
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Q::zero())
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Certified sign, `None` when the interval straddles zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Integers contained in the interval, ascending.
    pub fn integers(&self) -> impl Iterator<Item = BigInt> {
        let lo = self.lo.ceil().to_integer();
        let hi = self.hi.floor().to_integer();
        num_iter_range(lo, hi)
    }

    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            let m = if -&self.lo > self.hi { -&self.lo } else { self.hi.clone() };
            Interval::new(Q::zero(), m)
        } else if self.hi <= Q::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, other: &Interval) -> Option<Interval> {
        other.recip().map(|r| self * &r)
    }

    pub fn scale(&self, c: &Q) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    pub fn square(&self) -> Interval {
        let a = self.abs();
        Interval::new(&a.lo * &a.lo, &a.hi * &a.hi)
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    /// Outward rounding to dyadic endpoints; keeps rational sizes bounded.
    pub fn round_out(&self, bits: u32) -> Interval {
        Interval::new(floor_dyadic(&self.lo, bits), ceil_dyadic(&self.hi, bits))
    }

    pub fn to_decimal_pair(&self, digits: usize) -> [String; 2] {
        [fmt_decimal(&self.lo, digits, false), fmt_decimal(&self.hi, digits, true)]
    }
}

fn num_iter_range(lo: BigInt, hi: BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = lo;
    std::iter::from_fn(move || {
        if cur > hi {
            None
        } else {
            let out = cur.clone();
            cur += 1;
            Some(out)
        }
    })
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", to_f64(&self.lo), to_f64(&self.hi))
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_decimal_pair(30).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = crate::rational::parse_q(&lo).map_err(serde::de::Error::custom)?;
        let hi = crate::rational::parse_q(&hi).map_err(serde::de::Error::custom)?;
        if lo > hi {
            return Err(serde::de::Error::custom("interval endpoints are inverted"));
        }
        Ok(Interval::new(lo, hi))
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        &self + &o
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        &self - &o
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        &self * &o
    }
}

// ---------------------------------------------------------------------------
// Elementary functions
// ---------------------------------------------------------------------------

/// Working precision used inside series evaluations.
fn guard(bits: u32) -> u32 {
    bits + 16
}

pub fn sqrt_point(x: &Q, bits: u32) -> Interval {
    assert!(!x.is_negative(), "sqrt of a negative number");
    if x.is_zero() {
        return Interval::point(Q::zero());
    }
    let scale = BigInt::one() << (2 * bits as u64);
    let n = (x * Q::from_integer(scale)).floor().to_integer();
    let s = isqrt(&n);
    let den = BigInt::one() << bits as u64;
    let lo = Q::new(s.clone(), den.clone());
    if &lo * &lo == *x {
        return Interval::point(lo);
    }
    Interval::new(lo, Q::new(s + 1, den))
}

/// Square root of an interval; negative parts are clipped to zero.
pub fn sqrt(x: &Interval, bits: u32) -> Interval {
    let lo = if x.lo.is_negative() { Q::zero() } else { x.lo.clone() };
    let hi = if x.hi.is_negative() { Q::zero() } else { x.hi.clone() };
    Interval::new(sqrt_point(&lo, bits).lo, sqrt_point(&hi, bits).hi)
}

/// Alternating series for atan, valid and rigorous for `0 <= y <= 1`.
fn atan_series(y: &Q, bits: u32) -> Interval {
    let w = guard(bits);
    let y2 = Interval::point(y * y).round_out(w);
    let mut power = Interval::point(y.clone());
    let mut sum = Interval::point(Q::zero());
    let eps = pow2(-(bits as i64) - 4);
    let mut n: i64 = 0;
    loop {
        let term = power.scale(&qr(1, 2 * n + 1));
        if n % 2 == 0 {
            sum = (&sum + &term).round_out(w);
        } else {
            sum = (&sum - &term).round_out(w);
        }
        power = (&power * &y2).round_out(w);
        n += 1;
        let next = power.hi.clone() / q(2 * n + 1);
        if next < eps {
            // Alternating with decreasing terms: tail bounded by next term.
            return Interval::new(&sum.lo - &next, &sum.hi + &next);
        }
    }
}

/// Series for atanh, valid for `|u| <= 1/2`.
fn atanh_series(u: &Q, bits: u32) -> Interval {
    let w = guard(bits);
    let u2 = Interval::point(u * u).round_out(w);
    let mut power = Interval::point(u.clone());
    let mut sum = Interval::point(Q::zero());
    let eps = pow2(-(bits as i64) - 4);
    let one_minus = Q::one() - u * u;
    let mut n: i64 = 0;
    loop {
        sum = (&sum + &power.scale(&qr(1, 2 * n + 1))).round_out(w);
        power = (&power * &u2).round_out(w);
        n += 1;
        let mag = power.abs().hi;
        let tail = &mag / (q(2 * n + 1) * &one_minus);
        if tail < eps {
            return Interval::new(&sum.lo - &tail, &sum.hi + &tail);
        }
    }
}

type ConstCache = Mutex<HashMap<u32, Interval>>;

fn memo(cache: &'static OnceLock<ConstCache>, bits: u32, f: impl FnOnce() -> Interval) -> Interval {
    let map = cache.get_or_init(Default::default);
    if let Some(v) = map.lock().expect("constant cache poisoned").get(&bits) {
        return v.clone();
    }
    let v = f();
    map.lock().expect("constant cache poisoned").insert(bits, v.clone());
    v
}

pub fn pi(bits: u32) -> Interval {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    memo(&CACHE, bits, || {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        let b = bits + 6;
        let a = atan_series(&qr(1, 5), b).scale(&q(16));
        let c = atan_series(&qr(1, 239), b).scale(&q(4));
        &a - &c
    })
}

pub fn ln2(bits: u32) -> Interval {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    memo(&CACHE, bits, || atanh_series(&qr(1, 3), bits + 2).scale(&q(2)))
}

pub fn ln_point(x: &Q, bits: u32) -> Interval {
    assert!(x.is_positive(), "ln of a non-positive number");
    // x = 2^k m with m in [2/3, 4/3]
    let mut k: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut m = x / pow2(k);
    while m > qr(4, 3) {
        m /= q(2);
        k += 1;
    }
    while m < qr(2, 3) {
        m *= q(2);
        k -= 1;
    }
    let b = bits + 8 + (64 - (k.unsigned_abs()).leading_zeros());
    let u = (&m - Q::one()) / (&m + Q::one());
    let lm = atanh_series(&u, b).scale(&q(2));
    let l2 = ln2(b).scale(&q(k));
    &lm + &l2
}

pub fn ln(x: &Interval, bits: u32) -> Interval {
    Interval::new(ln_point(&x.lo, bits).lo, ln_point(&x.hi, bits).hi)
}

pub fn atan_point(x: &Q, bits: u32) -> Interval {
    atan(&Interval::point(x.clone()), bits)
}

pub fn atan(x: &Interval, bits: u32) -> Interval {
    if !x.hi.is_positive() {
        return -atan_nonneg(&-x.clone(), bits);
    }
    if !x.lo.is_negative() {
        return atan_nonneg(x, bits);
    }
    let neg = atan_nonneg(&Interval::new(Q::zero(), -x.lo.clone()), bits);
    let pos = atan_nonneg(&Interval::new(Q::zero(), x.hi.clone()), bits);
    Interval::new(-neg.hi, pos.hi)
}

/// Half-angle reduction `atan x = 2 atan(x / (1 + sqrt(1 + x^2)))` applied
/// to both endpoints at once until the series converges quickly. atan is
/// increasing, so each endpoint only needs a one-sided bound.
fn atan_nonneg(x: &Interval, bits: u32) -> Interval {
    let w = guard(bits) + 8;
    let eighth = qr(1, 8);
    let one = Q::one();
    let mut y = x.clone();
    let mut k = 0u32;
    while y.hi > eighth {
        let lo = &y.lo / (&one + sqrt_point(&(&one + &y.lo * &y.lo), w).hi);
        let hi = &y.hi / (&one + sqrt_point(&(&one + &y.hi * &y.hi), w).lo);
        y = Interval::new(lo, hi).round_out(w);
        k += 1;
    }
    let b = bits + k + 2;
    Interval::new(atan_series(&y.lo, b).lo, atan_series(&y.hi, b).hi).scale(&pow2(k as i64))
}

/// arccos on `[-1, 1]`.
pub fn arccos_point(y: &Q, bits: u32) -> Interval {
    assert!(*y >= q(-1) && *y <= q(1), "arccos outside [-1, 1]");
    if *y == q(-1) {
        return pi(bits);
    }
    if *y == q(1) {
        return Interval::point(Q::zero());
    }
    // arccos y = 2 atan(sqrt((1 - y) / (1 + y)))
    let w = guard(bits);
    let ratio = (Q::one() - y) / (Q::one() + y);
    let r = sqrt_point(&ratio, w);
    atan(&r, bits + 1).scale(&q(2))
}

/// Decreasing, so the endpoints swap.
pub fn arccos(y: &Interval, bits: u32) -> Interval {
    let lo = y.lo.clone().max(q(-1));
    let hi = y.hi.clone().min(q(1));
    Interval::new(arccos_point(&hi, bits).lo, arccos_point(&lo, bits).hi)
}
