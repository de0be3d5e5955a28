//! Dense univariate polynomials with integer and rational coefficients.

mod factor;
mod roots;
mod sturm;

pub use factor::{
    cyclotomic, factor_monic, irreducible_over_z, roots_of_unity_factor, MAX_IRREDUCIBILITY_DEGREE,
};
pub use roots::{isolate_roots, unit_circle_root_count, CertifiedRoot, Tri};
pub use sturm::{real_root_intervals, SturmSequence};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{parse_int, Q};

/// Coefficients lowest degree first; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Largest absolute coefficient accepted by the number-theoretic routines.
pub fn height_bound() -> BigInt {
    num_traits::pow(BigInt::from(10), 12)
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - a`
    pub fn linear_root(a: i64) -> Self {
        Self::from_i64(&[-a, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        let mut out = IntPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `x^deg p(1/x)`
    pub fn reciprocal(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// Palindromic coefficient list.
    pub fn is_self_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        n > 0 && (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(x)`, without forming the reduced rational.
    pub fn sign_at(&self, x: &Q) -> i32 {
        let Some((top, rest)) = self.coeffs.split_last() else {
            return 0;
        };
        let (n, d) = (x.numer(), x.denom());
        let mut acc = top.clone();
        let mut dpow = BigInt::one();
        for c in rest.iter().rev() {
            dpow *= d;
            acc = acc * n + c * &dpow;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Integer Horner on the numerator; one reduction at the end.
    pub fn eval_q(&self, x: &Q) -> Q {
        let Some((top, rest)) = self.coeffs.split_last() else {
            return Q::zero();
        };
        let (n, d) = (x.numer(), x.denom());
        let mut acc = top.clone();
        let mut dpow = BigInt::one();
        for c in rest.iter().rev() {
            dpow *= d;
            acc = acc * n + c * &dpow;
        }
        Q::new(acc, dpow)
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        self.coeffs.iter().rev().fold(Interval::point(Q::zero()), |acc, c| {
            &(&acc * x) + &Interval::point(Q::from_integer(c.clone()))
        })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::rational::to_f64(&Q::from_integer(c.clone())))
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| Q::from_integer(c.clone())).collect())
    }

    /// Division with remainder over the rationals. Succeeds only when both
    /// quotient and remainder have integer coefficients.
    pub fn divmod(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (qt, r) = self.to_rat().divmod(&d.to_rat())?;
        match (qt.to_int(), r.to_int()) {
            (Some(qt), Some(r)) => Ok((qt, r)),
            _ => Err(Error::NonExactDivision),
        }
    }

    /// Quotient when `d` divides `self` exactly in `Z[x]`.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        let (qt, r) = self.divmod(d)?;
        if r.is_zero() {
            Ok(qt)
        } else {
            Err(Error::NonExactDivision)
        }
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.div_exact(self).is_ok()
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let g = self.to_rat().gcd(&other.to_rat());
        g.to_primitive_int()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Yun's algorithm. Returns primitive factors `s_k` with `self = c * prod s_k^k`;
    /// factors equal to one are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        if self.degree() == 0 {
            return vec![];
        }
        let f = self.to_rat();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.divmod(&a0).unwrap().0;
        let mut c = df.divmod(&a0).unwrap().0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut k = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.to_primitive_int(), k));
            }
            b = b.divmod(&a).unwrap().0;
            c = d.divmod(&a).unwrap().0;
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    /// Squarefree part (radical), primitive.
    pub fn radical(&self) -> IntPoly {
        self.squarefree_decomposition()
            .into_iter()
            .fold(IntPoly::one(), |acc, (s, _)| &acc * &s)
    }

    /// For a self-reciprocal polynomial of even degree `2k`, the degree-`k`
    /// polynomial `g` with `p(x) = x^k g(x + 1/x)`.
    pub fn trace_polynomial(&self) -> Option<IntPoly> {
        if !self.is_self_reciprocal() || self.degree() % 2 == 1 {
            return None;
        }
        let k = self.degree() / 2;
        let mut rest: Vec<BigInt> = self.coeffs.clone();
        let mut g = vec![BigInt::zero(); k + 1];
        // x^{k-j} (x^2 + 1)^j has top coefficient at x^{k+j}.
        for j in (0..=k).rev() {
            let c = rest[k + j].clone();
            if c.is_zero() {
                continue;
            }
            g[j] = c.clone();
            let mut binom = BigInt::one();
            for i in 0..=j {
                // term C(j,i) x^{2i} * x^{k-j}
                rest[k - j + 2 * i] -= &c * &binom;
                binom = binom * BigInt::from(j - i) / BigInt::from(i + 1);
            }
        }
        if rest.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(g))
    }

    /// Resultant via the Sylvester determinant.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let (m, n) = (self.degree(), other.degree());
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        if m + n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut syl = crate::linalg::Matrix::zeros(size, size);
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                syl[(i, i + j)] = Q::from_integer(c.clone());
            }
        }
        for i in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                syl[(n + i, i + j)] = Q::from_integer(c.clone());
            }
        }
        syl.det().to_integer()
    }

    /// `(-1)^{n(n-1)/2} res(p, p') / lc(p)`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        let r = self.resultant(&self.derivative()) / self.lead();
        if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    pub fn check_height(&self) -> Result<()> {
        if self.height() > height_bound() {
            return Err(Error::HeightBoundExceeded);
        }
        Ok(())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Accepts decimal strings or JSON integers.
#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum IntLike {
    Str(String),
    Int(i64),
}

impl IntLike {
    pub(crate) fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntLike::Str(s) => parse_int(s),
            IntLike::Int(n) => Ok(BigInt::from(*n)),
        }
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<IntLike>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(IntLike::to_bigint)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(IntPoly::new(coeffs))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, o: IntPoly) -> IntPoly {
        &self + &o
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, o: IntPoly) -> IntPoly {
        &self - &o
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, o: IntPoly) -> IntPoly {
        &self * &o
    }
}

/// Polynomials over the rationals; used for gcds and exact division.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<Q>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn sub(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn divmod(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return Ok((RatPoly::default(), self.clone()));
        }
        let lead_inv = d.lead().recip();
        let mut qt = vec![Q::zero(); self.degree() - dd + 1];
        for i in (0..qt.len()).rev() {
            let c = &r[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            qt[i] = c;
        }
        r.truncate(dd);
        Ok((RatPoly::new(qt), RatPoly::new(r)))
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divmod(&b).unwrap().1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().recip();
        RatPoly::new(self.coeffs.iter().map(|c| c * &l).collect())
    }

    pub fn to_int(&self) -> Option<IntPoly> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }

    /// Clears denominators and content; leading coefficient positive.
    pub fn to_primitive_int(&self) -> IntPoly {
        let den = crate::rational::common_denominator(&self.coeffs);
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        IntPoly::new(scaled).primitive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn arithmetic_examples() {
        // (x^2 - 3x + 1) * x^2
        assert_eq!(&p(&[1, -3, 1]) * &p(&[0, 0, 1]), p(&[0, 0, 1, -3, 1]));
        // (x^2 - 1) divmod (x - 1)
        let (qt, r) = p(&[-1, 0, 1]).divmod(&p(&[-1, 1])).unwrap();
        assert_eq!(qt, p(&[1, 1]));
        assert!(r.is_zero());
        // non-monic divisor leaving fractions
        assert_eq!(p(&[1, 0, 1]).divmod(&p(&[1, 2])), Err(Error::NonExactDivision));
        assert_eq!(p(&[1]).divmod(&IntPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn self_reciprocity() {
        assert!(p(&[1, -3, 3, -3, 1]).is_self_reciprocal());
        assert!(p(&[1, 0, -1, -1, -1, 0, 1]).is_self_reciprocal());
        assert!(!p(&[2, -3, 1]).is_self_reciprocal());
    }

    #[test]
    fn trace_polynomial_examples() {
        // x^4 - 3x^3 + 3x^2 - 3x + 1 = x^2 ((y)^2 - 3y + 1), y = x + 1/x
        assert_eq!(p(&[1, -3, 3, -3, 1]).trace_polynomial().unwrap(), p(&[1, -3, 1]));
        // x^2 - a x + 1 -> y - a
        assert_eq!(p(&[1, -5, 1]).trace_polynomial().unwrap(), p(&[-5, 1]));
        // x^6 - x^4 - x^3 - x^2 + 1 -> y^3 - 4y - 1
        assert_eq!(p(&[1, 0, -1, -1, -1, 0, 1]).trace_polynomial().unwrap(), p(&[-1, -4, 0, 1]));
        assert!(p(&[1, 2, 3]).trace_polynomial().is_none());
    }

    #[test]
    fn yun() {
        // (x-1)^2 (x^2-3x+1)
        let f = &p(&[-1, 1]).pow(2) * &p(&[1, -3, 1]);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(p(&[1, -3, 1]), 1), (p(&[-1, 1]), 2)]);
        assert_eq!(f.radical(), &p(&[-1, 1]) * &p(&[1, -3, 1]));
    }

    #[test]
    fn discriminants() {
        assert_eq!(p(&[1, -3, 1]).discriminant(), BigInt::from(5));
        assert_eq!(p(&[1, 0, 1]).discriminant(), BigInt::from(-4));
        // x^3 - 2: -27 * 4
        assert_eq!(p(&[-2, 0, 0, 1]).discriminant(), BigInt::from(-108));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -1, -1, -1, 0, 1]).to_string(), "x^6 - x^4 - x^3 - x^2 + 1");
        assert_eq!(p(&[-2, 1]).to_string(), "x - 2");
    }

    #[test]
    fn json_round_trip() {
        let f = p(&[1, -3, 1]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["1","-3","1"]"#);
        let back: IntPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let from_numbers: IntPoly = serde_json::from_str("[1, -3, 1]").unwrap();
        assert_eq!(from_numbers, f);
    }
}
