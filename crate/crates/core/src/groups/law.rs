//! Multiplication in `Osc2_q(mu)` and `D_q(mu)`, generic over exact
//! rationals and doubles.
//!
//! Coordinates: `z` in a basis `b_1, b_2` of the centre (`sigma` itself, or
//! a lattice basis of `Gamma^z`), `a` as pairs `(x_k, y_k)` for
//! `x_k e_k + y_k i e_k`, `t` in the basis `T_1, T_2` with
//! `b_i(T_j) = 2 pi delta_ij`. Then `mu_k(t) = 2 pi (m_k . t)` where `m_k` are
//! the coordinates of `mu_k` in the `b` basis, and
//! `omega(a, a') = sum_k (x_k y'_k - y_k x'_k) m_k`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{deserialize_q, from_f64, qr, serialize_q, to_f64, Q};

pub trait Scalar:
    Clone + PartialEq + Debug + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_q(x: &Q) -> Self;

    /// `(x, y)` rotated by `turns` full turns.
    fn rotate(x: &Self, y: &Self, turns: &Self) -> Result<(Self, Self)>;

    fn zero() -> Self {
        Self::from_q(&<Q as num_traits::Zero>::zero())
    }

    fn half() -> Self {
        Self::from_q(&qr(1, 2))
    }
}

impl Scalar for Q {
    /// Exact for multiples of a quarter turn only.
    fn rotate(x: &Q, y: &Q, turns: &Q) -> Result<(Q, Q)> {
        let quarters = turns * Q::from_integer(4.into());
        if !quarters.is_integer() {
            return Err(Error::InexactPath);
        }
        let k: num_bigint::BigInt = quarters.to_integer().mod_floor(&4.into());
        Ok(match u8::try_from(k).expect("reduced mod 4") {
            0 => (x.clone(), y.clone()),
            1 => (-y.clone(), x.clone()),
            2 => (-x.clone(), -y.clone()),
            _ => (y.clone(), -x.clone()),
        })
    }

    fn from_q(x: &Q) -> Q {
        x.clone()
    }
}

impl Scalar for f64 {
    fn rotate(x: &f64, y: &f64, turns: &f64) -> Result<(f64, f64)> {
        let (s, c) = (std::f64::consts::TAU * turns).sin_cos();
        Ok((x * c - y * s, x * s + y * c))
    }

    fn from_q(x: &Q) -> f64 {
        to_f64(x)
    }
}

/// Coordinates of the `mu_k` in the `b` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Osc2Params<S> {
    pub m: Vec<[S; 2]>,
}

/// `D_q` structure constants in a fixed unit system.
///
/// `c_alpha` is `alpha(T_1, T_2)` in `s`-units and `c_flat` is the factor
/// with `s t^flat = c_flat * s * (-t_2, t_1)` in `z`-units.
#[derive(Clone, Debug, PartialEq)]
pub struct DqParams<S> {
    pub m: Vec<[S; 2]>,
    pub c_alpha: S,
    pub c_flat: S,
}

impl DqParams<Q> {
    /// Units `u_z = lambda^2`, `u_a = lambda`, `u_s = lambda sqrt(pi/2)` with
    /// `lambda = alpha(T_1, T_2) / sqrt(2 pi)`. Then
    /// `alpha(T_1, T_2) = lambda sqrt(2 pi) = 2 u_s` and
    /// `t^flat = (lambda / sqrt(2 pi)) (-t_2, t_1)`, so
    /// `s t^flat = S lambda sqrt(pi/2) lambda / sqrt(2 pi) (-t_2, t_1) = (S/2) lambda^2 (-t_2, t_1)`.
    /// Both constants are rational, which is what makes the lattice check exact.
    pub fn normalized(m: Vec<[Q; 2]>) -> Self {
        DqParams { m, c_alpha: Q::from_integer(2.into()), c_flat: qr(1, 2) }
    }

    /// `D_0` in plain coordinates: `alpha(e_1, e_2) = 1`, `t^flat = (-t_2, t_1)`.
    pub fn plain_d0() -> Self {
        DqParams { m: vec![], c_alpha: Q::from_integer(1.into()), c_flat: Q::from_integer(1.into()) }
    }

    pub fn to_f64(&self) -> DqParams<f64> {
        DqParams {
            m: self.m.iter().map(|[a, b]| [to_f64(a), to_f64(b)]).collect(),
            c_alpha: to_f64(&self.c_alpha),
            c_flat: to_f64(&self.c_flat),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Osc2Elem<S> {
    pub zeta: [S; 2],
    pub a: Vec<[S; 2]>,
    pub tau: [S; 2],
}

/// `h(z, a, s) l(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DqElem<S> {
    pub zeta: [S; 2],
    pub a: Vec<[S; 2]>,
    pub s: S,
    pub tau: [S; 2],
}

fn add2<S: Scalar>(u: &[S; 2], v: &[S; 2]) -> [S; 2] {
    [u[0].clone() + v[0].clone(), u[1].clone() + v[1].clone()]
}

fn scale2<S: Scalar>(c: &S, v: &[S; 2]) -> [S; 2] {
    [c.clone() * v[0].clone(), c.clone() * v[1].clone()]
}

fn neg2<S: Scalar>(v: &[S; 2]) -> [S; 2] {
    [-v[0].clone(), -v[1].clone()]
}

/// `(-t_2, t_1)`, the coordinates of `t^flat` up to the unit factor.
fn flat<S: Scalar>(t: &[S; 2]) -> [S; 2] {
    [-t[1].clone(), t[0].clone()]
}

fn wedge<S: Scalar>(t: &[S; 2], u: &[S; 2]) -> S {
    t[0].clone() * u[1].clone() - t[1].clone() * u[0].clone()
}

pub fn omega<S: Scalar>(m: &[[S; 2]], a: &[[S; 2]], b: &[[S; 2]]) -> [S; 2] {
    let mut out = [S::zero(), S::zero()];
    for ((mk, x), y) in m.iter().zip(a).zip(b) {
        let c = x[0].clone() * y[1].clone() - x[1].clone() * y[0].clone();
        out = add2(&out, &scale2(&c, mk));
    }
    out
}

/// `e^{rho(t)} a`: rotates the `k`-th factor by `m_k . t` turns.
pub fn rotate<S: Scalar>(m: &[[S; 2]], t: &[S; 2], a: &[[S; 2]]) -> Result<Vec<[S; 2]>> {
    m.iter()
        .zip(a)
        .map(|(mk, v)| {
            let turns = mk[0].clone() * t[0].clone() + mk[1].clone() * t[1].clone();
            S::rotate(&v[0], &v[1], &turns).map(|(x, y)| [x, y])
        })
        .collect()
}

fn check_len<S>(m: &[[S; 2]], a: &[[S; 2]]) -> Result<()> {
    if m.len() == a.len() {
        Ok(())
    } else {
        Err(Error::ModelMismatch)
    }
}

/// Heisenberg law `(z, a)(z', a') = (z + z' + omega(a, a')/2, a + a')`.
fn heisenberg<S: Scalar>(m: &[[S; 2]], z: &[S; 2], a: &[[S; 2]], z2: &[S; 2], a2: &[[S; 2]]) -> ([S; 2], Vec<[S; 2]>) {
    let w = omega(m, a, a2);
    let z = add2(&add2(z, z2), &scale2(&S::half(), &w));
    let a = a.iter().zip(a2).map(|(u, v)| add2(u, v)).collect();
    (z, a)
}

impl<S: Scalar> Osc2Elem<S> {
    pub fn identity(q: usize) -> Self {
        Osc2Elem { zeta: [S::zero(), S::zero()], a: vec![[S::zero(), S::zero()]; q], tau: [S::zero(), S::zero()] }
    }
}

impl<S: Scalar> DqElem<S> {
    pub fn identity(q: usize) -> Self {
        DqElem { zeta: [S::zero(), S::zero()], a: vec![[S::zero(), S::zero()]; q], s: S::zero(), tau: [S::zero(), S::zero()] }
    }

    pub fn h(zeta: [S; 2], a: Vec<[S; 2]>, s: S) -> Self {
        DqElem { zeta, a, s, tau: [S::zero(), S::zero()] }
    }

    pub fn l(tau: [S; 2], q: usize) -> Self {
        DqElem { tau, ..Self::identity(q) }
    }
}

/// `(z, a, t)(z', a', t') = (z + z' + omega(a, e^{rho(t)} a')/2, a + e^{rho(t)} a', t + t')`.
pub fn osc2_mul<S: Scalar>(p: &Osc2Params<S>, g: &Osc2Elem<S>, h: &Osc2Elem<S>) -> Result<Osc2Elem<S>> {
    check_len(&p.m, &g.a)?;
    check_len(&p.m, &h.a)?;
    let ra = rotate(&p.m, &g.tau, &h.a)?;
    let (zeta, a) = heisenberg(&p.m, &g.zeta, &g.a, &h.zeta, &ra);
    Ok(Osc2Elem { zeta, a, tau: add2(&g.tau, &h.tau) })
}

pub fn osc2_inv<S: Scalar>(p: &Osc2Params<S>, g: &Osc2Elem<S>) -> Result<Osc2Elem<S>> {
    check_len(&p.m, &g.a)?;
    let t = neg2(&g.tau);
    let a = rotate(&p.m, &t, &g.a)?.iter().map(neg2).collect();
    Ok(Osc2Elem { zeta: neg2(&g.zeta), a, tau: t })
}

/// `l(t) l(t') = h(-alpha(t,t') (t + t'/2)^flat / 3, 0, alpha(t,t') / 2) l(t + t')`,
/// returned as the `(z, s)` parts of the `h` factor.
pub fn ell<S: Scalar>(p: &DqParams<S>, t: &[S; 2], u: &[S; 2]) -> ([S; 2], S) {
    let alpha = p.c_alpha.clone() * wedge(t, u);
    let mid = add2(t, &scale2(&S::half(), u));
    let third = S::from_q(&qr(-1, 3));
    let z = scale2(&(third * alpha.clone() * p.c_flat.clone()), &flat(&mid));
    (z, S::half() * alpha)
}

/// `l(t) h(z, a, s) l(t)^-1 = h(z - s t^flat, e^{rho(t)} a, s)`.
pub fn conj_l<S: Scalar>(p: &DqParams<S>, t: &[S; 2], z: &[S; 2], a: &[[S; 2]], s: &S) -> Result<([S; 2], Vec<[S; 2]>, S)> {
    let sf = scale2(&(p.c_flat.clone() * s.clone()), &flat(t));
    let z = add2(z, &neg2(&sf));
    Ok((z, rotate(&p.m, t, a)?, s.clone()))
}

/// `(h_1 l(t_1))(h_2 l(t_2)) = h_1 (l(t_1) h_2 l(t_1)^-1) (l(t_1) l(t_2))`,
/// each factor evaluated with [`conj_l`] and [`ell`] and the `h` parts
/// combined by the Heisenberg law with `s` additive.
pub fn dq_mul<S: Scalar>(p: &DqParams<S>, g: &DqElem<S>, h: &DqElem<S>) -> Result<DqElem<S>> {
    check_len(&p.m, &g.a)?;
    check_len(&p.m, &h.a)?;
    let (cz, ca, cs) = conj_l(p, &g.tau, &h.zeta, &h.a, &h.s)?;
    let (z, a) = heisenberg(&p.m, &g.zeta, &g.a, &cz, &ca);
    let s = g.s.clone() + cs;
    let (ez, es) = ell(p, &g.tau, &h.tau);
    Ok(DqElem { zeta: add2(&z, &ez), a, s: s + es, tau: add2(&g.tau, &h.tau) })
}

/// `(h(z,a,s) l(t))^-1 = h(-z - s t^flat, -e^{-rho(t)} a, -s) l(-t)`.
pub fn dq_inv<S: Scalar>(p: &DqParams<S>, g: &DqElem<S>) -> Result<DqElem<S>> {
    check_len(&p.m, &g.a)?;
    let t = neg2(&g.tau);
    let sf = scale2(&(p.c_flat.clone() * g.s.clone()), &flat(&g.tau));
    let zeta = add2(&neg2(&g.zeta), &neg2(&sf));
    let a = rotate(&p.m, &t, &g.a)?.iter().map(neg2).collect();
    Ok(DqElem { zeta, a, s: -g.s.clone(), tau: t })
}

impl DqElem<Q> {
    pub fn to_f64(&self) -> DqElem<f64> {
        DqElem {
            zeta: [to_f64(&self.zeta[0]), to_f64(&self.zeta[1])],
            a: self.a.iter().map(|[x, y]| [to_f64(x), to_f64(y)]).collect(),
            s: to_f64(&self.s),
            tau: [to_f64(&self.tau[0]), to_f64(&self.tau[1])],
        }
    }
}

impl DqElem<f64> {
    pub fn max_abs_diff(&self, o: &DqElem<f64>) -> f64 {
        let mut d = (self.s - o.s).abs();
        for i in 0..2 {
            d = d.max((self.zeta[i] - o.zeta[i]).abs()).max((self.tau[i] - o.tau[i]).abs());
        }
        for (u, v) in self.a.iter().zip(&o.a) {
            d = d.max((u[0] - v[0]).abs()).max((u[1] - v[1]).abs());
        }
        d
    }
}

impl Osc2Elem<f64> {
    pub fn max_abs_diff(&self, o: &Osc2Elem<f64>) -> f64 {
        let mut d = 0f64;
        for i in 0..2 {
            d = d.max((self.zeta[i] - o.zeta[i]).abs()).max((self.tau[i] - o.tau[i]).abs());
        }
        for (u, v) in self.a.iter().zip(&o.a) {
            d = d.max((u[0] - v[0]).abs()).max((u[1] - v[1]).abs());
        }
        d
    }
}

impl Osc2Elem<Q> {
    pub fn to_f64(&self) -> Osc2Elem<f64> {
        Osc2Elem {
            zeta: [to_f64(&self.zeta[0]), to_f64(&self.zeta[1])],
            a: self.a.iter().map(|[x, y]| [to_f64(x), to_f64(y)]).collect(),
            tau: [to_f64(&self.tau[0]), to_f64(&self.tau[1])],
        }
    }
}

/// Rationals as `"n/d"` strings, used for the JSON form of exact elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QStr(#[serde(serialize_with = "serialize_q", deserialize_with = "deserialize_q")] pub Q);

fn wrap2(v: &[Q; 2]) -> [QStr; 2] {
    [QStr(v[0].clone()), QStr(v[1].clone())]
}

fn unwrap2(v: [QStr; 2]) -> [Q; 2] {
    let [a, b] = v;
    [a.0, b.0]
}

#[derive(Serialize, Deserialize)]
struct Osc2Json {
    zeta: [QStr; 2],
    a: Vec<[QStr; 2]>,
    tau: [QStr; 2],
}

#[derive(Serialize, Deserialize)]
struct DqJson {
    zeta: [QStr; 2],
    a: Vec<[QStr; 2]>,
    s: QStr,
    tau: [QStr; 2],
}

impl Serialize for Osc2Elem<Q> {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        Osc2Json { zeta: wrap2(&self.zeta), a: self.a.iter().map(wrap2).collect(), tau: wrap2(&self.tau) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Osc2Elem<Q> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = Osc2Json::deserialize(d)?;
        Ok(Osc2Elem { zeta: unwrap2(j.zeta), a: j.a.into_iter().map(unwrap2).collect(), tau: unwrap2(j.tau) })
    }
}

impl Serialize for DqElem<Q> {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        DqJson {
            zeta: wrap2(&self.zeta),
            a: self.a.iter().map(wrap2).collect(),
            s: QStr(self.s.clone()),
            tau: wrap2(&self.tau),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DqElem<Q> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DqJson::deserialize(d)?;
        Ok(DqElem { zeta: unwrap2(j.zeta), a: j.a.into_iter().map(unwrap2).collect(), s: j.s.0, tau: unwrap2(j.tau) })
    }
}

/// Rational approximation used when a double must enter an exact check.
pub fn q_of(x: f64) -> Q {
    from_f64(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use num_traits::Zero;

    fn sigma_params() -> DqParams<Q> {
        DqParams::normalized(vec![[q(1), q(0)], [q(0), q(1)], [q(1), q(1)]])
    }

    fn elem(z: [i64; 2], a: [[i64; 2]; 3], s: i64, t: [i64; 2]) -> DqElem<Q> {
        DqElem {
            zeta: [qr(z[0], 6), qr(z[1], 6)],
            a: a.iter().map(|v| [q(v[0]), q(v[1])]).collect(),
            s: q(s),
            tau: [q(t[0]), q(t[1])],
        }
    }

    #[test]
    fn dq_commutator_of_translations() {
        let p = sigma_params();
        let l1 = DqElem::l([q(1), q(0)], 3);
        let l2 = DqElem::l([q(0), q(1)], 3);
        let c = dq_mul(&p, &dq_mul(&p, &l1, &l2).unwrap(), &dq_mul(&p, &dq_inv(&p, &l1).unwrap(), &dq_inv(&p, &l2).unwrap()).unwrap()).unwrap();
        // [l(T1), l(T2)] = h(z, 0, alpha(T1,T2)) with nonzero a_0 and z parts.
        assert_eq!(c.tau, [q(0), q(0)]);
        assert_eq!(c.s, q(2));
        assert!(!c.zeta[0].is_zero() || !c.zeta[1].is_zero());
        assert!(c.a.iter().all(|v| v[0].is_zero() && v[1].is_zero()));
    }

    #[test]
    fn central_z_commutes_with_l() {
        let p = sigma_params();
        let t = DqElem::l([q(3), q(-2)], 3);
        let z = DqElem::h([qr(1, 6), qr(5, 6)], vec![[q(0), q(0)]; 3], q(0));
        let c = dq_mul(&p, &dq_mul(&p, &t, &z).unwrap(), &dq_inv(&p, &t).unwrap()).unwrap();
        assert_eq!(c, z);
    }

    #[test]
    fn half_alpha_is_one_s_unit() {
        let p = sigma_params();
        let (_, s) = ell(&p, &[q(1), q(0)], &[q(0), q(1)]);
        assert_eq!(s, q(1));
    }

    #[test]
    fn exact_associativity_and_inverse() {
        let p = sigma_params();
        let g = elem([1, -2], [[1, 0], [2, -1], [0, 3]], 2, [1, 2]);
        let h = elem([0, 5], [[-1, 1], [0, 0], [4, 1]], -1, [-3, 1]);
        let k = elem([7, 1], [[2, 2], [1, -1], [0, 1]], 3, [0, -1]);
        let l = dq_mul(&p, &dq_mul(&p, &g, &h).unwrap(), &k).unwrap();
        let r = dq_mul(&p, &g, &dq_mul(&p, &h, &k).unwrap()).unwrap();
        assert_eq!(l, r);
        assert_eq!(dq_mul(&p, &g, &dq_inv(&p, &g).unwrap()).unwrap(), DqElem::identity(3));
    }

    #[test]
    fn osc2_omega_and_rotations() {
        let m = vec![[q(1), q(0)], [q(0), q(1)], [q(1), q(1)]];
        let e = |k: usize, imag: bool| {
            let mut a = vec![[q(0), q(0)]; 3];
            a[k] = if imag { [q(0), q(1)] } else { [q(1), q(0)] };
            a
        };
        for k in 0..3 {
            assert_eq!(omega(&m, &e(k, false), &e(k, true)), m[k]);
            for l in 0..3 {
                if l != k {
                    assert_eq!(omega(&m, &e(k, false), &e(l, false)), [q(0), q(0)]);
                    assert_eq!(omega(&m, &e(k, false), &e(l, true)), [q(0), q(0)]);
                }
            }
        }
        assert_eq!(rotate(&m, &[q(1), q(-4)], &e(2, false)).unwrap(), e(2, false));
        assert_eq!(rotate(&m, &[qr(1, 3), q(0)], &e(0, false)), Err(Error::InexactPath));
    }
}
