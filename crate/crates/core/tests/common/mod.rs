//! Oracles and fixtures shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use cocompact::linalg::Matrix;
use cocompact::poly::IntPoly;
use cocompact::rational::{q, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn quadratic3() -> IntPoly {
    IntPoly::from_i64(&[1, -3, 1])
}

/// `x^4 - x^3 - x^2 - x + 1`.
pub fn quartic() -> IntPoly {
    IntPoly::from_i64(&[1, -1, -1, -1, 1])
}

/// `x^6 - x^4 - x^3 - x^2 + 1`.
pub fn sextic() -> IntPoly {
    IntPoly::from_i64(&[1, 0, -1, -1, -1, 0, 1])
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.into_iter().flat_map(|d| [d, -d]).collect()
}

fn eval_i64(c: &[i64], x: i64) -> i64 {
    c.iter().rev().fold(0, |acc, &a| acc * x + a)
}

/// Coefficients (ascending) of the polynomial of degree `< d` through the
/// given points, if it is integral. Divided differences of an integral
/// polynomial at integer nodes are integers, so any inexact step rejects.
fn interpolate(xs: &[i64], ys: &[i64]) -> Option<Vec<i64>> {
    let d = xs.len();
    let mut dd: Vec<i128> = ys.iter().map(|&y| y as i128).collect();
    for level in 1..d {
        for i in (level..d).rev() {
            let num = dd[i] - dd[i - 1];
            let den = (xs[i] - xs[i - level]) as i128;
            if num % den != 0 {
                return None;
            }
            dd[i] = num / den;
        }
    }
    // Newton form to monomial basis, Horner style from the top.
    let mut c: Vec<i128> = vec![dd[d - 1]];
    for k in (0..d - 1).rev() {
        let mut next = vec![0i128; c.len() + 1];
        for (i, &ci) in c.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= ci * xs[k] as i128;
        }
        next[0] += dd[k];
        c = next;
    }
    c.truncate(d);
    c.into_iter().map(|x| i64::try_from(x).ok()).collect()
}

/// Long division by a monic `g`, both ascending.
fn monic_divides(g: &[i64], f: &[i64]) -> bool {
    let mut r: Vec<i128> = f.iter().map(|&c| c as i128).collect();
    let dg = g.len() - 1;
    for top in (dg..r.len()).rev() {
        let c = r[top];
        for (i, &gi) in g.iter().enumerate() {
            r[top - dg + i] -= c * gi as i128;
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}

/// Kronecker's method: a monic factor `g` of degree `d` satisfies
/// `g(x_i) | f(x_i)`, so enumerating divisor tuples at `d` points and
/// interpolating `g - x^d` finds every candidate.
pub fn kronecker_irreducible(f: &[i64]) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let mut pts: Vec<(i64, i64)> = (-8..=8).map(|x| (x, eval_i64(f, x))).collect();
    if pts.iter().any(|&(_, y)| y == 0) {
        return false;
    }
    pts.sort_by_key(|&(x, y)| (divisors(y).len(), x.abs()));
    for d in 1..=n / 2 {
        let chosen = &pts[..d];
        let xs: Vec<i64> = chosen.iter().map(|p| p.0).collect();
        let divs: Vec<Vec<i64>> = chosen.iter().map(|p| divisors(p.1)).collect();
        let mut idx = vec![0usize; d];
        'odometer: loop {
            let ys: Vec<i64> = (0..d).map(|i| divs[i][idx[i]] - xs[i].pow(d as u32)).collect();
            if let Some(mut h) = interpolate(&xs, &ys) {
                h.push(1);
                if monic_divides(&h, f) {
                    return false;
                }
            }
            for i in 0..d {
                idx[i] += 1;
                if idx[i] < divs[i].len() {
                    continue 'odometer;
                }
                idx[i] = 0;
            }
            break;
        }
    }
    true
}

/// `det(k I - M)` by exact elimination.
pub fn char_value(m: &Matrix, k: i64) -> Q {
    let n = m.rows();
    let mut rows: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { q(k) } else { Q::zero() } - &m[(i, j)]).collect()).collect();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else { return Q::zero() };
        if p != c {
            rows.swap(p, c);
            det = -det;
        }
        let piv = rows[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            let f = &rows[r][c] / &piv;
            for j in c..n {
                let v = &f * &rows[c][j];
                rows[r][j] -= v;
            }
        }
    }
    det
}

/// `f` has the characteristic polynomial of `m` iff they agree at `n` points,
/// both being monic of degree `n`.
pub fn is_charpoly(m: &Matrix, f: &IntPoly) -> bool {
    f.degree() == m.rows() && f.is_monic() && (0..m.rows() as i64).all(|k| char_value(m, k) == Q::from_integer(f.eval(&BigInt::from(k))))
}

pub fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn is_nonneg(x: &BigInt) -> bool {
    !x.is_negative()
}
