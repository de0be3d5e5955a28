//! Factorization of monic integer polynomials of small degree by searching
//! products of certified root clusters.
//!
//! A monic factor over `Z` is the product of `x - z` over some subset of
//! the roots that is closed under conjugation. We enumerate such subsets
//! by increasing degree, reject a subset as soon as one product coefficient
//! interval contains no integer, and certify survivors by exact division.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::roots::{isolate_roots, CertifiedRoot, Tri};
use super::IntPoly;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{pow2, to_f64, Q};

pub const MAX_IRREDUCIBILITY_DEGREE: usize = 16;

/// `n`-th cyclotomic polynomial, `prod_{d | n} (x^d - 1)^{mu(n/d)}`.
pub fn cyclotomic(n: usize) -> IntPoly {
    assert!(n > 0);
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let xd = &IntPoly::monomial(BigInt::one(), d) - &IntPoly::one();
        match mobius(n / d) {
            1 => num = &num * &xd,
            -1 => den = &den * &xd,
            _ => {}
        }
    }
    num.div_exact(&den).expect("cyclotomic identity")
}

fn mobius(mut n: usize) -> i32 {
    let mut res = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

fn euler_phi(mut n: usize) -> usize {
    let mut res = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            res -= res / p;
        }
        p += 1;
    }
    if n > 1 {
        res -= res / n;
    }
    res
}

/// Largest monic factor of `p` whose roots are all roots of unity.
///
/// A primitive `n`-th root of unity has degree `phi(n)`, and
/// `phi(n) >= sqrt(n / 2)`, so only orders `n <= 2 d^2` can occur in a
/// polynomial of degree `d`. `order_bound` overrides that limit.
pub fn roots_of_unity_factor(p: &IntPoly, order_bound: Option<usize>) -> Result<IntPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = p.degree();
    let bound = order_bound.unwrap_or(2 * d * d);
    let mut rest = p.clone();
    let mut out = IntPoly::one();
    for n in 1..=bound {
        if rest.degree() == 0 {
            break;
        }
        if euler_phi(n) > rest.degree() {
            continue;
        }
        let phi = cyclotomic(n);
        while let Ok(qt) = rest.div_exact(&phi) {
            out = &out * &phi;
            rest = qt;
        }
    }
    Ok(out)
}

/// True iff the monic `p` of degree at least one admits no factorization
/// into monic integer polynomials of lower degree.
pub fn irreducible_over_z(p: &IntPoly) -> Result<bool> {
    check_input(p)?;
    if p.degree() == 0 {
        return Ok(false);
    }
    if p.degree() == 1 {
        return Ok(true);
    }
    if !p.is_squarefree() {
        return Ok(false);
    }
    let s = Splitter::new(p)?;
    Ok(s.smallest_factor(p, &s.all_units())?.is_none())
}

/// Irreducible monic factors with multiplicities, sorted by degree and
/// then by coefficients.
pub fn factor_monic(p: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    check_input(p)?;
    let mut out = Vec::new();
    for (s, k) in p.squarefree_decomposition() {
        for f in split_squarefree(&s)? {
            out.push((f, k));
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())).then(a.1.cmp(&b.1))
    });
    Ok(out)
}

fn check_input(p: &IntPoly) -> Result<()> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if p.degree() > MAX_IRREDUCIBILITY_DEGREE {
        return Err(Error::DegreeBoundExceeded {
            degree: p.degree(),
            bound: MAX_IRREDUCIBILITY_DEGREE,
        });
    }
    p.check_height()
}

fn split_squarefree(s: &IntPoly) -> Result<Vec<IntPoly>> {
    if s.degree() <= 1 {
        return Ok(vec![s.clone()]);
    }
    let sp = Splitter::new(s)?;
    let mut units = sp.all_units();
    let mut rest = s.clone();
    let mut out = Vec::new();
    while rest.degree() > 1 {
        match sp.smallest_factor(&rest, &units)? {
            Some((g, used)) => {
                rest = rest.div_exact(&g)?;
                units = units.into_iter().filter(|u| !used.contains(u)).collect();
                out.push(g);
            }
            None => break,
        }
    }
    if rest.degree() > 0 {
        out.push(rest);
    }
    Ok(out)
}

/// Closed interval of doubles, rounded outward after every operation.
#[derive(Clone, Copy, Debug)]
struct F64I {
    lo: f64,
    hi: f64,
}

impl F64I {
    fn from_interval(x: &Interval) -> F64I {
        F64I {
            lo: to_f64(&x.lo).next_down().next_down(),
            hi: to_f64(&x.hi).next_up().next_up(),
        }
    }

    fn point(x: f64) -> F64I {
        F64I { lo: x, hi: x }
    }

    fn add(self, o: F64I) -> F64I {
        F64I {
            lo: (self.lo + o.lo).next_down(),
            hi: (self.hi + o.hi).next_up(),
        }
    }

    fn mul(self, o: F64I) -> F64I {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        F64I { lo: lo.next_down(), hi: hi.next_up() }
    }

    fn may_hold_integer(self) -> bool {
        !self.lo.is_finite() || !self.hi.is_finite() || self.lo.ceil() <= self.hi
    }
}

/// A real root or a conjugate pair, as the interval coefficients of the
/// monic factor it contributes (lowest degree first, leading one omitted).
#[derive(Clone, Debug, PartialEq)]
struct Unit {
    id: usize,
    coeffs: Vec<Interval>,
}

impl Unit {
    fn degree(&self) -> usize {
        self.coeffs.len()
    }
}

struct Splitter {
    units: Vec<Unit>,
}

impl Splitter {
    fn new(s: &IntPoly) -> Result<Splitter> {
        let mut bits = 80i64;
        for _ in 0..4 {
            let roots = isolate_roots(s, &pow2(-bits))?;
            if let Some(units) = pair_roots(&roots) {
                return Ok(Splitter { units });
            }
            bits *= 2;
        }
        Err(Error::Undetermined("could not pair conjugate roots".into()))
    }

    fn all_units(&self) -> Vec<Unit> {
        self.units.clone()
    }

    /// Smallest-degree monic factor of `rest` built from `units` (the roots
    /// of `rest`); it is irreducible because it has minimal degree.
    fn smallest_factor(&self, rest: &IntPoly, units: &[Unit]) -> Result<Option<(IntPoly, Vec<Unit>)>> {
        let n = rest.degree();
        let u = units.len();
        let degs: Vec<usize> = units.iter().map(Unit::degree).collect();
        let mut masks: Vec<(usize, u32)> = (1u32..(1u32 << u))
            .map(|m| {
                let d: usize = (0..u).filter(|i| m >> i & 1 == 1).map(|i| degs[i]).sum();
                (d, m)
            })
            .filter(|&(d, _)| d <= n / 2)
            .collect();
        masks.sort();
        let f64_units: Vec<Vec<F64I>> = units
            .iter()
            .map(|un| un.coeffs.iter().map(F64I::from_interval).collect())
            .collect();
        for (_, m) in masks {
            let members: Vec<usize> = (0..u).filter(|i| m >> i & 1 == 1).collect();
            let mut prod: Vec<F64I> = vec![];
            for &i in &members {
                prod = mul_f64(&prod, &f64_units[i]);
            }
            if !prod.iter().all(|c| c.may_hold_integer()) {
                continue;
            }
            let mut exact: Vec<Interval> = vec![];
            for &i in &members {
                exact = mul_interval(&exact, &units[i].coeffs);
            }
            for cand in integer_candidates(&exact)? {
                if cand.divides(rest) {
                    return Ok(Some((cand, members.iter().map(|&i| units[i].clone()).collect())));
                }
            }
        }
        Ok(None)
    }
}

/// Products of monic factors, leading one implicit in each operand.
fn mul_f64(a: &[F64I], b: &[F64I]) -> Vec<F64I> {
    let one = F64I::point(1.0);
    let a: Vec<F64I> = a.iter().cloned().chain([one]).collect();
    let b: Vec<F64I> = b.iter().cloned().chain([one]).collect();
    let mut out = vec![F64I::point(0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(x.mul(*y));
        }
    }
    out.pop();
    out
}

fn mul_interval(a: &[Interval], b: &[Interval]) -> Vec<Interval> {
    let one = Interval::point(Q::one());
    let a: Vec<Interval> = a.iter().cloned().chain([one.clone()]).collect();
    let b: Vec<Interval> = b.iter().cloned().chain([one]).collect();
    let mut out = vec![Interval::point(Q::zero()); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out.pop();
    out
}

/// All integer polynomials consistent with the interval coefficients
/// (leading one appended). Empty if some coefficient has no integer.
fn integer_candidates(coeffs: &[Interval]) -> Result<Vec<IntPoly>> {
    let choices: Vec<Vec<BigInt>> = coeffs.iter().map(|c| c.integers().take(65).collect()).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(vec![]);
    }
    let total: usize = choices.iter().map(Vec::len).product();
    if total > 4096 {
        return Err(Error::Undetermined("coefficient enclosures too wide".into()));
    }
    let mut out = vec![vec![]];
    for ch in &choices {
        let mut next = Vec::new();
        for prefix in &out {
            for c in ch {
                let mut v: Vec<BigInt> = prefix.clone();
                v.push(c.clone());
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out
        .into_iter()
        .map(|mut v| {
            v.push(BigInt::one());
            IntPoly::new(v)
        })
        .collect())
}

/// Real roots become linear units; each root in the upper half plane is
/// matched with the unique lower-half root whose box meets its mirror image.
fn pair_roots(roots: &[CertifiedRoot]) -> Option<Vec<Unit>> {
    let mut units = Vec::new();
    let mut id = 0;
    for r in roots.iter().filter(|r| r.is_real == Tri::Yes) {
        units.push(Unit { id, coeffs: vec![-r.re.clone()] });
        id += 1;
    }
    let upper: Vec<&CertifiedRoot> = roots
        .iter()
        .filter(|r| r.is_real == Tri::No && r.im.lo.is_positive())
        .collect();
    let lower: Vec<&CertifiedRoot> = roots
        .iter()
        .filter(|r| r.is_real == Tri::No && r.im.hi.is_negative())
        .collect();
    if upper.len() != lower.len() || upper.len() + units.len() != roots.len() - lower.len() {
        return None;
    }
    let mut used = vec![false; lower.len()];
    for z in upper {
        let mirror = -z.im.clone();
        let hits: Vec<usize> = (0..lower.len())
            .filter(|&j| !used[j] && lower[j].re.intersects(&z.re) && lower[j].im.intersects(&mirror))
            .collect();
        if hits.len() != 1 {
            return None;
        }
        used[hits[0]] = true;
        let two = Q::from_integer(BigInt::from(2));
        // (x - z)(x - conj z) = x^2 - 2 Re z x + |z|^2
        let re = &z.re;
        units.push(Unit {
            id,
            coeffs: vec![z.modulus_sq(), -re.scale(&two)],
        });
        id += 1;
    }
    Some(units)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(30).degree(), 8);
    }

    #[test]
    fn unity_factor_examples() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[1, -3, 1]);
        assert_eq!(roots_of_unity_factor(&f, None).unwrap(), p(&[-1, 1]).pow(2));
        assert_eq!(roots_of_unity_factor(&p(&[1, -3, 1]), None).unwrap(), IntPoly::one());
        assert_eq!(roots_of_unity_factor(&p(&[1, 1, 1]), None).unwrap(), p(&[1, 1, 1]));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(irreducible_over_z(&p(&[1, -3, 1])).unwrap());
        assert!(!irreducible_over_z(&p(&[1, 0, -2, 0, 1])).unwrap());
        assert!(irreducible_over_z(&p(&[1, 0, -1, -1, -1, 0, 1])).unwrap());
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2), no rational roots
        assert!(!irreducible_over_z(&p(&[4, 0, 0, 0, 1])).unwrap());
        // Lehmer's polynomial
        assert!(irreducible_over_z(&p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])).unwrap());
        let big = IntPoly::monomial(BigInt::one(), 17);
        assert!(matches!(irreducible_over_z(&big), Err(Error::DegreeBoundExceeded { .. })));
    }

    #[test]
    fn factorization_reconstructs() {
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[4, 0, 0, 0, 1])) * &p(&[1, -3, 1]);
        let fs = factor_monic(&f).unwrap();
        let back = fs.iter().fold(IntPoly::one(), |acc, (g, k)| &acc * &g.pow(*k));
        assert_eq!(back, f);
        assert_eq!(fs.len(), 4);
    }
}
