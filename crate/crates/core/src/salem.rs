//! Salem polynomials: the families `F+_{2k}`, degree-4 closed forms and
//! equivalence of Salem numbers up to powers.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{self, Interval};
use crate::linalg::Matrix;
use crate::poly::{
    irreducible_over_z, isolate_roots, real_root_intervals, roots_of_unity_factor,
    unit_circle_root_count, CertifiedRoot, IntPoly, SturmSequence, Tri,
};
use crate::rational::{is_perfect_square, pow2, q, qr, Q};

/// Default tolerance for the certified roots stored in [`SalemData`].
pub const DEFAULT_TOL_BITS: i64 = 64;
pub const DEFAULT_K_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitPair {
    /// Angle `s` in `(0, pi)`; the pair is `e^{+is}`, `e^{-is}`.
    pub angle: Interval,
    /// Certified interval for `2 cos s`, a root of the trace polynomial.
    pub trace: Interval,
    pub upper: CertifiedRoot,
    pub lower: CertifiedRoot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SalemData {
    pub poly: IntPoly,
    pub degree: usize,
    pub r: CertifiedRoot,
    pub r_inv: CertifiedRoot,
    /// Certified interval for `r + 1/r`.
    pub trace: Interval,
    pub unit_pairs: Vec<UnitPair>,
}

impl SalemData {
    pub fn k(&self) -> usize {
        self.degree / 2
    }

    /// Certified `ln r`, always positive.
    pub fn ln_r(&self, bits: u32) -> Interval {
        interval::ln(&self.r.re, bits)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Rejection {
    Zero,
    NotMonic,
    DegreeOdd { degree: usize },
    Constant,
    NotSelfReciprocal,
    /// `x^2 - a x + 1` with `a < 3`.
    QuadraticTrace { a: String },
    Reducible,
    WrongCircleCount { expected: usize, found: usize },
    RealRootsNegative,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Zero => write!(f, "zero polynomial"),
            Rejection::NotMonic => write!(f, "not monic"),
            Rejection::DegreeOdd { degree } => write!(f, "odd degree {degree}"),
            Rejection::Constant => write!(f, "constant polynomial"),
            Rejection::NotSelfReciprocal => write!(f, "not self-reciprocal"),
            Rejection::QuadraticTrace { a } => write!(f, "x^2 - a x + 1 needs a >= 3, got a = {a}"),
            Rejection::Reducible => write!(f, "reducible over Z"),
            Rejection::WrongCircleCount { expected, found } => {
                write!(f, "{found} roots on the unit circle, expected {expected}")
            }
            Rejection::RealRootsNegative => write!(f, "real roots are negative"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Member { k: usize, data: Box<SalemData> },
    Rejected(Rejection),
}

impl Classification {
    pub fn is_member(&self) -> bool {
        matches!(self, Classification::Member { .. })
    }

    pub fn data(&self) -> Option<&SalemData> {
        match self {
            Classification::Member { data, .. } => Some(data),
            Classification::Rejected(_) => None,
        }
    }
}

/// Membership in `F+_{2k}` with certified Salem data.
pub fn classify_f_plus(p: &IntPoly) -> Result<Classification> {
    classify_f_plus_tol(p, &pow2(-DEFAULT_TOL_BITS))
}

/// Classification is pure and root isolation is the expensive part, so
/// results are memoized per polynomial and tolerance.
pub fn classify_f_plus_tol(p: &IntPoly, tol: &Q) -> Result<Classification> {
    type Cache = Mutex<HashMap<(IntPoly, Q), Classification>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (p.clone(), tol.clone());
    if let Some(hit) = cache.lock().expect("classification cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let out = classify_uncached(p, tol)?;
    cache.lock().expect("classification cache poisoned").insert(key, out.clone());
    Ok(out)
}

fn classify_uncached(p: &IntPoly, tol: &Q) -> Result<Classification> {
    use Classification::Rejected;
    if p.is_zero() {
        return Ok(Rejected(Rejection::Zero));
    }
    if !p.is_monic() {
        return Ok(Rejected(Rejection::NotMonic));
    }
    let n = p.degree();
    if n == 0 {
        return Ok(Rejected(Rejection::Constant));
    }
    if n % 2 == 1 {
        return Ok(Rejected(Rejection::DegreeOdd { degree: n }));
    }
    if !p.is_self_reciprocal() {
        return Ok(Rejected(Rejection::NotSelfReciprocal));
    }
    let k = n / 2;
    if k == 1 {
        let a = -p.coeff(1);
        if a < BigInt::from(3) {
            return Ok(Rejected(Rejection::QuadraticTrace { a: a.to_string() }));
        }
    } else {
        if !irreducible_over_z(p)? {
            return Ok(Rejected(Rejection::Reducible));
        }
        let found = unit_circle_root_count(p)?;
        if found != 2 * k - 2 {
            return Ok(Rejected(Rejection::WrongCircleCount { expected: 2 * k - 2, found }));
        }
    }
    // One trace root lies outside [-2, 2]; its sign decides the sign of r.
    let g = p.trace_polynomial().expect("self-reciprocal of even degree");
    let st = SturmSequence::new(&g);
    let beyond = st.count_real() - st.count_in(&q(-2), &q(2));
    if beyond != 1 {
        return Err(Error::Inconsistency(format!("{beyond} trace roots outside [-2,2] for {p}")));
    }
    if st.variations_at(&q(2)) == 0 {
        return Ok(Rejected(Rejection::RealRootsNegative));
    }
    let data = salem_data(p, &g, tol)?;
    Ok(Classification::Member { k, data: Box::new(data) })
}

fn salem_data(p: &IntPoly, g: &IntPoly, tol: &Q) -> Result<SalemData> {
    let roots = isolate_roots(p, tol)?;
    let one = q(1);
    let r = roots
        .iter()
        .find(|x| x.is_real == Tri::Yes && x.re.lo > one)
        .cloned()
        .ok_or_else(|| Error::Inconsistency(format!("no real root above 1 for {p}")))?;
    let r_inv = roots
        .iter()
        .find(|x| x.is_real == Tri::Yes && x.re.hi < one && x.re.lo.is_positive())
        .cloned()
        .ok_or_else(|| Error::Inconsistency(format!("no real root in (0,1) for {p}")))?;
    let outside = roots.iter().filter(|x| x.modulus_sq().lo > one).count();
    let inside_or_on = roots.iter().filter(|x| x.modulus_sq().hi <= one || x.on_unit_circle == Tri::Yes).count();
    if outside != 1 || inside_or_on != roots.len() - 1 {
        return Err(Error::Inconsistency(format!("Salem root configuration not certified for {p}")));
    }
    let bits = tol_bits(tol);
    let mut trace_roots = real_root_intervals(g, tol);
    let trace = trace_roots
        .iter()
        .find(|y| y.lo > q(2))
        .cloned()
        .ok_or_else(|| Error::Inconsistency("missing trace root above 2".into()))?;
    trace_roots.retain(|y| y.hi < q(2) && y.lo > q(-2));
    // Descending traces give ascending angles.
    trace_roots.reverse();
    let mut unit_pairs = Vec::new();
    for y in trace_roots {
        let half = y.scale(&qr(1, 2));
        let find = |upper: bool| {
            roots
                .iter()
                .find(|z| {
                    z.on_unit_circle == Tri::Yes
                        && z.is_real == Tri::No
                        && z.re.intersects(&half)
                        && if upper { z.im.lo.is_positive() } else { z.im.hi.is_negative() }
                })
                .cloned()
        };
        let (Some(upper), Some(lower)) = (find(true), find(false)) else {
            return Err(Error::Inconsistency(format!("unmatched unit-circle pair for {p}")));
        };
        unit_pairs.push(UnitPair { angle: interval::arccos(&half, bits), trace: y, upper, lower });
    }
    Ok(SalemData {
        poly: p.clone(),
        degree: p.degree(),
        r,
        r_inv,
        trace,
        unit_pairs,
    })
}

fn tol_bits(tol: &Q) -> u32 {
    let guess = (tol.denom().bits() as i64 - tol.numer().bits() as i64).max(0);
    let mut b = (guess - 1).max(0);
    while pow2(-b) > *tol {
        b += 1;
    }
    b as u32 + 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct F4Params {
    pub a: i64,
    pub b: i64,
}

impl F4Params {
    pub fn new(a: i64, b: i64) -> Self {
        F4Params { a, b }
    }

    /// `x^4 - a x^3 + b x^2 - a x + 1`
    pub fn poly(&self) -> IntPoly {
        IntPoly::from_i64(&[1, -self.a, self.b, -self.a, 1])
    }

    /// `2a > |b + 2|`, `b != 2`, `b != a + 1`, `b != -a + 1`.
    pub fn satisfies_inequalities(&self) -> bool {
        let (a, b) = (self.a, self.b);
        2 * a > (b + 2).abs() && b != 2 && b != a + 1 && b != 1 - a
    }
}

/// All `(a, b)` in the box satisfying the `F+_4` inequalities, each
/// confirmed by [`classify_f_plus`]. Any disagreement is an internal error.
pub fn enumerate_f4(a_min: i64, a_max: i64, b_min: i64, b_max: i64) -> Result<Vec<F4Params>> {
    let grid: Vec<F4Params> = (a_min..=a_max)
        .flat_map(|a| (b_min..=b_max).map(move |b| F4Params::new(a, b)))
        .filter(F4Params::satisfies_inequalities)
        .collect();
    let checked: Vec<Result<F4Params>> = grid
        .into_par_iter()
        .map(|par| {
            if classify_f_plus(&par.poly())?.is_member() {
                Ok(par)
            } else {
                Err(Error::Inconsistency(format!("({}, {}) satisfies the inequalities but is rejected", par.a, par.b)))
            }
        })
        .collect();
    let mut out = checked.into_iter().collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Salem4 {
    pub params: F4Params,
    pub t1: Interval,
    pub t2: Interval,
    pub r: Interval,
    pub s: Interval,
}

/// Closed forms for a quartic in `F+_4`: `t1, t2` roots of
/// `t^2 - a t + b - 2`, `r = (t1 + sqrt(t1^2 - 4)) / 2`, `s = arccos(t2 / 2)`.
/// The results are checked against the certified roots of the quartic.
pub fn salem4_closed_form(params: F4Params, tol: &Q) -> Result<Salem4> {
    if !params.satisfies_inequalities() {
        return Err(Error::InvalidInput(format!("({}, {}) is not in F+_4", params.a, params.b)));
    }
    let bits = tol_bits(tol) + 8;
    let a = q(params.a);
    let half_a = &a / q(2);
    let disc = &half_a * &half_a - q(params.b) + q(2);
    let root = interval::sqrt_point(&disc, bits);
    let t1 = &Interval::point(half_a.clone()) + &root;
    let t2 = &Interval::point(half_a) - &root;
    let inner = &t1.square() - &Interval::from_int(4);
    let r = (&t1 + &interval::sqrt(&inner, bits)).scale(&qr(1, 2));
    let s = interval::arccos(&t2.scale(&qr(1, 2)), bits);
    let out = Salem4 { params, t1, t2, r, s };
    cross_check(&out, tol)?;
    Ok(out)
}

fn cross_check(c: &Salem4, tol: &Q) -> Result<()> {
    let roots = isolate_roots(&c.params.poly(), tol)?;
    let hits_r = roots.iter().any(|z| z.is_real == Tri::Yes && z.re.intersects(&c.r));
    let half_t2 = c.t2.scale(&qr(1, 2));
    let hits_circle = roots
        .iter()
        .any(|z| z.on_unit_circle == Tri::Yes && z.re.intersects(&half_t2));
    if hits_r && hits_circle {
        Ok(())
    } else {
        Err(Error::Inconsistency(format!(
            "closed form disagrees with roots for ({}, {})",
            c.params.a, c.params.b
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Equivalence {
    Equivalent { k1: usize, k2: usize },
    NotEquivalent { reason: String },
    Unknown,
}

pub fn companion(f: &IntPoly) -> Result<Matrix> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree();
    let mut m = Matrix::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Q::one();
    }
    for i in 0..n {
        m[(i, n - 1)] = -Q::from_integer(f.coeff(i));
    }
    Ok(m)
}

/// Minimal polynomial of `r^k`: characteristic polynomial of the `k`-th
/// power of the companion matrix with cyclotomic factors removed. For a
/// Salem number no other conjugate power is a root of unity, so what is
/// left is irreducible.
pub fn power_minpoly(p: &IntPoly, k: usize) -> Result<IntPoly> {
    let c = companion(p)?.pow(k as i64)?;
    let f = c
        .charpoly_int()
        .ok_or_else(|| Error::Inconsistency("non-integral characteristic polynomial".into()))?;
    let cyc = roots_of_unity_factor(&f, None)?;
    f.div_exact(&cyc)
}

/// Searches `1 <= k1, k2 <= k_bound` with `minpoly(r1^k1) = minpoly(r2^k2)`,
/// `k1` major. The first hit is the primitive relation, so the answer is
/// symmetric in the two inputs.
pub fn salem_equivalent(p1: &IntPoly, p2: &IntPoly, k_bound: usize) -> Result<Equivalence> {
    for p in [p1, p2] {
        if let Classification::Rejected(why) = classify_f_plus(p)? {
            return Err(Error::NotSalem(format!("{p}: {why}")));
        }
    }
    if p1.degree() != p2.degree() {
        return Ok(Equivalence::NotEquivalent {
            reason: format!("degree mismatch ({} vs {})", p1.degree(), p2.degree()),
        });
    }
    // Equal fields have equal discriminants up to squares of indices.
    let d = p1.discriminant() * p2.discriminant();
    if !is_perfect_square(&d) {
        return Ok(Equivalence::NotEquivalent {
            reason: "discriminants differ by a non-square factor".into(),
        });
    }
    let mut cache: HashMap<(bool, usize), IntPoly> = HashMap::new();
    let mut get = |second: bool, k: usize| -> Result<IntPoly> {
        if let Some(v) = cache.get(&(second, k)) {
            return Ok(v.clone());
        }
        let v = power_minpoly(if second { p2 } else { p1 }, k)?;
        cache.insert((second, k), v.clone());
        Ok(v)
    };
    for k1 in 1..=k_bound {
        let m1 = get(false, k1)?;
        for k2 in 1..=k_bound {
            if get(true, k2)? == m1 {
                return Ok(Equivalence::Equivalent { k1, k2 });
            }
        }
    }
    Ok(Equivalence::Unknown)
}

/// `x^2 - a x + 1`
pub fn quadratic(a: i64) -> IntPoly {
    IntPoly::from_i64(&[1, -a, 1])
}
