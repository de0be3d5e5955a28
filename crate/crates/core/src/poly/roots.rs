//! Certified isolation of all complex roots.
//!
//! Real roots come from Sturm sequences. Non-real roots are approximated
//! with Aberth iterations (first in `f64`, then in dyadic rationals) and
//! certified with Weierstrass inclusion disks: for distinct approximations
//! `z_i` of the roots of a squarefree `s` of degree `n`, the disks
//! `D(z_i, n |W_i|)` with `W_i = s(z_i) / (lc(s) prod_{j != i} (z_i - z_j))`
//! cover all roots, and each connected component made of `m` disks holds
//! exactly `m` roots. We only accept configurations where all disks are
//! pairwise disjoint.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::sturm::{real_root_intervals, SturmSequence};
use super::IntPoly;
use crate::error::{Error, Result};
use crate::interval::{sqrt_point, Interval};
use crate::rational::{from_f64, pow2, q, to_f64, Q};

type C = Complex<Q>;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Undetermined,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CertifiedRoot {
    pub re: Interval,
    pub im: Interval,
    pub multiplicity: usize,
    pub on_unit_circle: Tri,
    pub is_real: Tri,
}

impl CertifiedRoot {
    /// Certified interval for `|z|^2`.
    pub fn modulus_sq(&self) -> Interval {
        &self.re.square() + &self.im.square()
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }
}

/// Number of distinct roots of modulus one. Exact: the unit-circle roots
/// of `p` are roots of `gcd(p, reciprocal(p))`, and after removing `x -+ 1`
/// that gcd is palindromic of even degree, so its unit-circle roots
/// correspond to real roots of the trace polynomial in `(-2, 2)`.
pub fn unit_circle_root_count(p: &IntPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let s = p.radical();
    let mut h = s.gcd(&s.reciprocal());
    let mut count = 0;
    for a in [1, -1] {
        let lin = IntPoly::linear_root(a);
        if h.eval(&BigInt::from(a)).is_zero() {
            count += 1;
            h = h.div_exact(&lin)?;
        }
    }
    if h.degree() == 0 {
        return Ok(count);
    }
    let g = h
        .primitive()
        .trace_polynomial()
        .ok_or_else(|| Error::Inconsistency(format!("{h} is not palindromic")))?;
    let st = SturmSequence::new(&g);
    Ok(count + 2 * st.count_in(&q(-2), &q(2)))
}

/// Certified boxes for every root of `p`, grouped by squarefree factor.
/// Each box has width at most `tol` in both coordinates.
pub fn isolate_roots(p: &IntPoly, tol: &Q) -> Result<Vec<CertifiedRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !tol.is_positive() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let mut out = Vec::new();
    for (s, k) in p.squarefree_decomposition() {
        for mut r in isolate_squarefree(&s, tol)? {
            r.multiplicity = k;
            out.push(r);
        }
    }
    Ok(out)
}

const MAX_BITS: u32 = 1 << 13;

fn isolate_squarefree(s: &IntPoly, tol: &Q) -> Result<Vec<CertifiedRoot>> {
    let n = s.degree();
    let mut reals: Vec<CertifiedRoot> = real_root_intervals(s, tol)
        .into_iter()
        .map(|re| {
            let on_circle = real_on_circle(s, &re);
            CertifiedRoot {
                re,
                im: Interval::point(Q::zero()),
                multiplicity: 1,
                on_unit_circle: on_circle,
                is_real: Tri::Yes,
            }
        })
        .collect();
    let n_nonreal = n - reals.len();
    if n_nonreal == 0 {
        return Ok(reals);
    }
    let unit_total = unit_circle_root_count(s)?;
    let unit_real = reals.iter().filter(|r| r.on_unit_circle == Tri::Yes).count();
    let unit_nonreal = unit_total - unit_real;

    let mut approx: Vec<C> = aberth_f64(s)
        .into_iter()
        .map(|z| C::new(from_f64(z.re), from_f64(z.im)))
        .collect();
    // Aberth converges cubically from the double-precision start, so a few
    // steps at the target precision usually suffice.
    let mut bits = (tol_bits(tol) + 32).max(64);
    let mut last: Option<Vec<CertifiedRoot>> = None;
    while bits <= MAX_BITS {
        let mut fixed: Vec<Fixed> = approx.iter().map(|z| Fixed::from_c(z, bits)).collect();
        for _ in 0..3 {
            fixed = aberth_step(s, &fixed, bits);
        }
        approx = fixed.iter().map(|z| z.to_c(bits)).collect();
        if let Some(disks) = inclusion_disks(s, &approx) {
            let nonreal: Vec<&(C, Q)> = disks.iter().filter(|(z, r)| z.im.abs() > *r).collect();
            if nonreal.len() == n_nonreal {
                let mut boxes: Vec<CertifiedRoot> = nonreal
                    .iter()
                    .map(|(z, r)| CertifiedRoot {
                        re: Interval::new(&z.re - r, &z.re + r),
                        im: Interval::new(&z.im - r, &z.im + r),
                        multiplicity: 1,
                        on_unit_circle: Tri::Undetermined,
                        is_real: Tri::No,
                    })
                    .collect();
                classify_circle(&mut boxes, unit_nonreal);
                let narrow = nonreal.iter().all(|(_, r)| r * q(2) <= *tol);
                let decided = boxes.iter().all(|b| b.on_unit_circle != Tri::Undetermined);
                if narrow {
                    if decided {
                        reals.extend(boxes);
                        return Ok(reals);
                    }
                    last = Some(boxes);
                }
            }
        }
        bits *= 2;
    }
    match last {
        Some(boxes) => {
            reals.extend(boxes);
            Ok(reals)
        }
        None => Err(Error::ToleranceNotReached),
    }
}

fn tol_bits(tol: &Q) -> u32 {
    (tol.denom().bits() as i64 - tol.numer().bits() as i64 + 1).max(0) as u32
}

fn real_on_circle(s: &IntPoly, re: &Interval) -> Tri {
    for a in [1i64, -1] {
        if re.contains(&q(a)) && s.eval(&BigInt::from(a)).is_zero() {
            return Tri::Yes;
        }
    }
    Tri::No
}

fn classify_circle(boxes: &mut [CertifiedRoot], unit_nonreal: usize) {
    let one = q(1);
    for b in boxes.iter_mut() {
        if !b.modulus_sq().contains(&one) {
            b.on_unit_circle = Tri::No;
        }
    }
    let open = boxes.iter().filter(|b| b.on_unit_circle == Tri::Undetermined).count();
    let target = if unit_nonreal == open {
        Tri::Yes
    } else if unit_nonreal == 0 {
        Tri::No
    } else {
        return;
    };
    for b in boxes.iter_mut() {
        if b.on_unit_circle == Tri::Undetermined {
            b.on_unit_circle = target;
        }
    }
}

fn round_q(x: &Q, bits: u32) -> Q {
    let scale = pow2(bits as i64);
    Q::new((x * &scale).round().to_integer(), scale.to_integer())
}

fn round_c(z: &C, bits: u32) -> C {
    C::new(round_q(&z.re, bits), round_q(&z.im, bits))
}

/// Horner over Gaussian integers with a common denominator, so only the
/// final result is reduced.
fn eval_c(p: &IntPoly, z: &C) -> C {
    let d = z.re.denom().lcm(z.im.denom());
    let a = z.re.numer() * (&d / z.re.denom());
    let b = z.im.numer() * (&d / z.im.denom());
    let coeffs = p.coeffs();
    let Some((top, rest)) = coeffs.split_last() else {
        return C::zero();
    };
    let (mut re, mut im) = (top.clone(), BigInt::zero());
    let mut dpow = BigInt::one();
    for c in rest.iter().rev() {
        let next_re = &re * &a - &im * &b;
        im = &re * &b + &im * &a;
        dpow *= &d;
        re = next_re + c * &dpow;
    }
    C::new(Q::new(re, dpow.clone()), Q::new(im, dpow))
}

fn norm_sq(z: &C) -> Q {
    &z.re * &z.re + &z.im * &z.im
}

/// Gaussian integer `re + i im`, standing for `(re + i im) / 2^bits`.
#[derive(Clone, Debug, PartialEq)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

impl Fixed {
    fn from_c(z: &C, bits: u32) -> Fixed {
        let r = round_c(z, bits);
        let scale = BigInt::one() << bits as u64;
        let part = |x: &Q| x.numer() * (&scale / x.denom());
        Fixed { re: part(&r.re), im: part(&r.im) }
    }

    fn to_c(&self, bits: u32) -> C {
        let scale = BigInt::one() << bits as u64;
        C::new(Q::new(self.re.clone(), scale.clone()), Q::new(self.im.clone(), scale))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn sub(&self, o: &Fixed) -> Fixed {
        Fixed { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Product of two scaled values, rescaled.
    fn mul(&self, o: &Fixed, bits: u32) -> Fixed {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Fixed { re: re >> bits as u64, im: im >> bits as u64 }
    }

    /// `2^shift * self / o` as plain Gaussian integers, truncated.
    fn div_shift(&self, o: &Fixed, shift: u32) -> Fixed {
        let n = &o.re * &o.re + &o.im * &o.im;
        let re = (&self.re * &o.re + &self.im * &o.im) << shift as u64;
        let im = (&self.im * &o.re - &self.re * &o.im) << shift as u64;
        Fixed { re: re / &n, im: im / &n }
    }
}

/// Value of `p` at `z / 2^bits`, times `2^(bits deg p)`.
fn eval_fixed(p: &IntPoly, z: &Fixed, bits: u32) -> Fixed {
    let coeffs = p.coeffs();
    let Some((top, rest)) = coeffs.split_last() else {
        return Fixed { re: BigInt::zero(), im: BigInt::zero() };
    };
    let (mut re, mut im) = (top.clone(), BigInt::zero());
    let mut shift = 0u64;
    for c in rest.iter().rev() {
        let next_re = &re * &z.re - &im * &z.im;
        im = &re * &z.im + &im * &z.re;
        shift += bits as u64;
        re = next_re + (c << shift);
    }
    Fixed { re, im }
}

/// One Aberth sweep in fixed point. Rounding errors are a few units in the
/// last place; certification happens separately.
fn aberth_step(p: &IntPoly, zs: &[Fixed], bits: u32) -> Vec<Fixed> {
    let dp = p.derivative();
    let one = Fixed { re: BigInt::one() << bits as u64, im: BigInt::zero() };
    let mut out = Vec::with_capacity(zs.len());
    for (i, z) in zs.iter().enumerate() {
        // p(z) carries scale 2^(bits n), p'(z) scale 2^(bits (n - 1)).
        let pz = eval_fixed(p, z, bits);
        let dz = eval_fixed(&dp, z, bits);
        if pz.is_zero() || dz.is_zero() {
            out.push(z.clone());
            continue;
        }
        let dz = Fixed { re: dz.re << bits as u64, im: dz.im << bits as u64 };
        let ratio = pz.div_shift(&dz, bits);
        let mut sum = Fixed { re: BigInt::zero(), im: BigInt::zero() };
        let mut degenerate = false;
        for (j, w) in zs.iter().enumerate() {
            if i != j {
                let d = z.sub(w);
                if d.is_zero() {
                    degenerate = true;
                    break;
                }
                let inv = one.div_shift(&d, bits);
                sum = Fixed { re: &sum.re + &inv.re, im: &sum.im + &inv.im };
            }
        }
        let denom = one.sub(&ratio.mul(&sum, bits));
        let step = if degenerate || denom.is_zero() { ratio } else { ratio.div_shift(&denom, bits) };
        out.push(z.sub(&step));
    }
    out
}

/// Upper bound for the square root of a non-negative rational, with small
/// relative error regardless of magnitude.
fn sqrt_upper(x: &Q) -> Q {
    if x.is_zero() {
        return Q::zero();
    }
    let shift = (x.denom().bits() as i64 - x.numer().bits() as i64) / 2;
    let scaled = x * pow2(2 * shift);
    sqrt_point(&scaled, 64).hi / pow2(shift)
}

/// Centres and certified radii; `None` if approximations coincide or disks
/// overlap.
fn inclusion_disks(p: &IntPoly, zs: &[C]) -> Option<Vec<(C, Q)>> {
    let n = zs.len();
    let lead = Q::from_integer(p.lead());
    let lead_sq = &lead * &lead;
    let nn = q((n * n) as i64);
    let mut disks = Vec::with_capacity(n);
    for (i, z) in zs.iter().enumerate() {
        let mut prod = Q::one();
        for (j, w) in zs.iter().enumerate() {
            if i != j {
                let d = norm_sq(&(z - w));
                if d.is_zero() {
                    return None;
                }
                prod *= d;
            }
        }
        let w_sq = norm_sq(&eval_c(p, z)) / (&lead_sq * prod);
        disks.push((z.clone(), sqrt_upper(&(&nn * w_sq))));
    }
    for i in 0..n {
        for j in i + 1..n {
            let rr = &disks[i].1 + &disks[j].1;
            if norm_sq(&(&disks[i].0 - &disks[j].0)) <= &rr * &rr {
                return None;
            }
        }
    }
    Some(disks)
}

/// Plain Aberth iteration in double precision; starting points on a circle
/// of radius given by a Cauchy-type bound.
fn aberth_f64(p: &IntPoly) -> Vec<Complex<f64>> {
    let n = p.degree();
    let c: Vec<f64> = p.coeffs().iter().map(|c| to_f64(&Q::from_integer(c.clone()))).collect();
    let dc: Vec<f64> = (1..=n).map(|i| c[i] * i as f64).collect();
    let lead = c[n];
    let radius = c[..n]
        .iter()
        .enumerate()
        .map(|(i, a)| (a.abs() / lead.abs()).powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(0.5);
    let eval = |coef: &[f64], z: Complex<f64>| {
        coef.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a)
    };
    let mut zs: Vec<Complex<f64>> = (0..n)
        .map(|k| Complex::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let z = zs[i];
            let pz = eval(&c, z);
            let dz = eval(&dc, z);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / dz;
            let sum: Complex<f64> = (0..n).filter(|&j| j != i).map(|j| (z - zs[j]).inv()).sum();
            let step = ratio / (Complex::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                zs[i] = z - step;
                moved = moved.max(step.norm() / (1.0 + z.norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    zs
}
