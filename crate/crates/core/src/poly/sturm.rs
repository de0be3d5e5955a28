use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{IntPoly, RatPoly};
use crate::interval::Interval;
use crate::rational::{common_denominator, pow2, q, Q};

/// Sturm sequence of the radical of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

/// Multiply by a positive rational so that the result is primitive in `Z[x]`.
/// Keeps the sign of every value, which the sign-variation count relies on.
fn positive_int(p: &RatPoly) -> IntPoly {
    let den = common_denominator(p.coeffs());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Q::from_integer(den.clone())).to_integer())
        .collect();
    let f = IntPoly::new(ints);
    let g = f.content().abs();
    if g.is_zero() {
        return f;
    }
    IntPoly::new(f.coeffs().iter().map(|c| c / &g).collect())
}

impl SturmSequence {
    pub fn new(p: &IntPoly) -> Self {
        let p0 = if p.is_squarefree() { p.clone() } else { p.radical() };
        let mut seq = vec![p0.clone()];
        if p0.degree() == 0 {
            return SturmSequence { seq };
        }
        let mut a = p0.to_rat();
        let mut b = p0.derivative().to_rat();
        seq.push(positive_int(&b));
        loop {
            let r = a.divmod(&b).unwrap().1;
            if r.is_zero() {
                break;
            }
            let neg = RatPoly::new(r.coeffs().iter().map(|c| -c).collect());
            let next = positive_int(&neg);
            seq.push(next.clone());
            a = b;
            b = next.to_rat();
        }
        SturmSequence { seq }
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.seq[0]
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Q) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = if p.lead().is_negative() { -1 } else { 1 };
            if !positive && p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Q, b: &Q) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Q, b: &Q) -> usize {
        let n = self.count_in(a, b);
        if n > 0 && self.seq[0].sign_at(b) == 0 {
            n - 1
        } else {
            n
        }
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }

    /// Power of two strictly larger than every root modulus.
    pub fn root_bound(&self) -> Q {
        let p = &self.seq[0];
        let lead = Q::from_integer(p.lead().abs());
        let mut m = Q::zero();
        for c in &p.coeffs()[..p.degree()] {
            let r = Q::from_integer(c.abs()) / &lead;
            if r > m {
                m = r;
            }
        }
        let bound = m + q(1);
        let mut e = 0i64;
        while pow2(e) <= bound {
            e += 1;
        }
        pow2(e)
    }
}

/// Isolating intervals for the distinct real roots, ascending, each of
/// width at most `tol`. Rational roots that are hit exactly come back as
/// point intervals.
pub fn real_root_intervals(p: &IntPoly, tol: &Q) -> Vec<Interval> {
    let sturm = SturmSequence::new(p);
    let s = sturm.polynomial().clone();
    if s.degree() == 0 {
        return vec![];
    }
    let bound = sturm.root_bound();
    let mut found: Vec<Interval> = Vec::new();
    let mut stack = vec![(-bound.clone(), bound.clone(), sturm.count_open(&-bound.clone(), &bound))];
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            found.push(refine(&sturm, &s, a, b, tol));
            continue;
        }
        let m = (&a + &b) / q(2);
        let left = sturm.count_open(&a, &m);
        let mut right = n - left;
        if s.sign_at(&m) == 0 {
            found.push(Interval::point(m.clone()));
            right -= 1;
        }
        stack.push((a, m.clone(), left));
        stack.push((m, b, right));
    }
    found.sort_by(|x, y| x.lo.cmp(&y.lo));
    found
}

/// Shrinks the open interval `(a, b)`, known to hold exactly one root,
/// below `tol`. Tries a Newton step from the midpoint first and falls back
/// to bisection.
fn refine(sturm: &SturmSequence, s: &IntPoly, mut a: Q, mut b: Q, tol: &Q) -> Interval {
    let ds = s.derivative();
    let mut slack = q(16);
    while &b - &a > *tol {
        let m = (&a + &b) / q(2);
        let sm = s.eval_q(&m);
        if sm.is_zero() {
            return Interval::point(m);
        }
        let dm = ds.eval_q(&m);
        if !dm.is_zero() {
            let width = &b - &a;
            let step = sm / dm;
            let x1 = &m - &step;
            // Newton error is roughly quadratic in the step; never ask for
            // less than a tenfold shrink, nor for more than the tolerance.
            let quad = (&step * &step * &slack).max(tol / q(4));
            let delta = (&width / q(1024)).min(quad);
            let x1 = crate::rational::floor_dyadic(&x1, bits_for(&delta) + 4);
            let lo = &x1 - &delta;
            let hi = &x1 + &delta;
            if lo > a && hi < b {
                for end in [&lo, &hi] {
                    if s.sign_at(end) == 0 {
                        return Interval::point(end.clone());
                    }
                }
                if sturm.count_in(&lo, &hi) == 1 {
                    a = lo;
                    b = hi;
                    continue;
                }
            }
            slack *= q(1 << 16);
        }
        if sturm.count_open(&a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
    Interval::new(a, b)
}

/// Smallest `k >= 0` with `2^-k <= x` (x > 0).
fn bits_for(x: &Q) -> u32 {
    let guess = (x.denom().bits() as i64 - x.numer().bits() as i64).max(0);
    let mut k = (guess - 1).max(0);
    while pow2(-k) > *x {
        k += 1;
    }
    k as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn golden_ratio_roots() {
        let p = IntPoly::from_i64(&[1, -3, 1]);
        let tol = qr(1, 1_000_000_000_000);
        let r = real_root_intervals(&p, &tol);
        assert_eq!(r.len(), 2);
        let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((r[1].mid_f64() - phi2).abs() < 1e-11);
        assert!((r[0].mid_f64() - 1.0 / phi2).abs() < 1e-11);
        for i in &r {
            assert!(i.width() <= tol);
        }
    }

    #[test]
    fn exact_rational_roots_and_counts() {
        // (x-1)(x+2)(2x-1)
        let p = &(&IntPoly::from_i64(&[-1, 1]) * &IntPoly::from_i64(&[2, 1])) * &IntPoly::from_i64(&[-1, 2]);
        let r = real_root_intervals(&p, &qr(1, 1000));
        assert_eq!(r.len(), 3);
        assert!(r[0].contains(&q(-2)) && r[1].contains(&qr(1, 2)) && r[2].contains(&q(1)));
        let st = SturmSequence::new(&p);
        assert_eq!(st.count_real(), 3);
        assert_eq!(st.count_in(&q(0), &q(1)), 2);
        assert_eq!(SturmSequence::new(&IntPoly::from_i64(&[1, 0, 1])).count_real(), 0);
    }
}
