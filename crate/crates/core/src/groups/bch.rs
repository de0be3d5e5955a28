//! Cross-check of the closed formula for `l(t) l(t')` against the
//! Baker-Campbell-Hausdorff series.
//!
//! The subalgebra spanned by `l`, `s` and `z` is nilpotent of class 3 with
//! `[t, t'] = alpha(t, t')` in `s`, `[t, s] = -s t^flat` in `z` and `z`
//! central. Every bracket of length 4 vanishes, so the series truncated
//! after the degree-3 terms is exact.

use serde::Serialize;

use super::law::{ell, DqParams, QStr};
use crate::rational::{qr, Q};

/// `z + s + t` in the coordinates of [`super::law::DqElem`].
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElem {
    pub z: [Q; 2],
    pub s: Q,
    pub t: [Q; 2],
}

impl AlgElem {
    pub fn zero() -> Self {
        AlgElem { z: [qr(0, 1), qr(0, 1)], s: qr(0, 1), t: [qr(0, 1), qr(0, 1)] }
    }

    pub fn from_t(t: [Q; 2]) -> Self {
        AlgElem { t, ..Self::zero() }
    }

    fn add(&self, o: &AlgElem) -> AlgElem {
        AlgElem {
            z: [&self.z[0] + &o.z[0], &self.z[1] + &o.z[1]],
            s: &self.s + &o.s,
            t: [&self.t[0] + &o.t[0], &self.t[1] + &o.t[1]],
        }
    }

    fn scale(&self, c: &Q) -> AlgElem {
        AlgElem {
            z: [c * &self.z[0], c * &self.z[1]],
            s: c * &self.s,
            t: [c * &self.t[0], c * &self.t[1]],
        }
    }
}

fn flat(t: &[Q; 2]) -> [Q; 2] {
    [-t[1].clone(), t[0].clone()]
}

pub fn bracket(p: &DqParams<Q>, x: &AlgElem, y: &AlgElem) -> AlgElem {
    let fy = flat(&y.t);
    let fx = flat(&x.t);
    let z = [
        &p.c_flat * (&x.s * &fy[0] - &y.s * &fx[0]),
        &p.c_flat * (&x.s * &fy[1] - &y.s * &fx[1]),
    ];
    let s = &p.c_alpha * (&x.t[0] * &y.t[1] - &x.t[1] * &y.t[0]);
    AlgElem { z, s, t: [qr(0, 1), qr(0, 1)] }
}

/// `X + Y + [X,Y]/2 + ([X,[X,Y]] - [Y,[X,Y]])/12`.
pub fn bch3(p: &DqParams<Q>, x: &AlgElem, y: &AlgElem) -> AlgElem {
    let xy = bracket(p, x, y);
    let xxy = bracket(p, x, &xy);
    let yxy = bracket(p, y, &xy);
    x.add(y)
        .add(&xy.scale(&qr(1, 2)))
        .add(&xxy.add(&yxy.scale(&qr(-1, 1))).scale(&qr(1, 12)))
}

/// `exp(Z + S + T) = h(Z - c_flat S T^flat / 2, 0, S) l(T)`, returned as
/// `(zeta, s, tau)`.
pub fn exp_coords(p: &DqParams<Q>, x: &AlgElem) -> ([Q; 2], Q, [Q; 2]) {
    let ft = flat(&x.t);
    let c = &p.c_flat * &x.s * qr(1, 2);
    ([&x.z[0] - &c * &ft[0], &x.z[1] - &c * &ft[1]], x.s.clone(), x.t.clone())
}

#[derive(Clone, Debug, Serialize)]
pub struct BchReport {
    pub t: [QStr; 2],
    pub t_dot: [QStr; 2],
    pub closed_zeta: [QStr; 2],
    pub closed_s: QStr,
    pub bch_zeta: [QStr; 2],
    pub bch_s: QStr,
    pub tau: [QStr; 2],
    pub equal: bool,
}

fn wrap(v: &[Q; 2]) -> [QStr; 2] {
    [QStr(v[0].clone()), QStr(v[1].clone())]
}

/// Evaluates `l(t) l(t')` by the closed formula and by the series.
pub fn bch_crosscheck_ell(p: &DqParams<Q>, t: &[Q; 2], t_dot: &[Q; 2]) -> BchReport {
    let (cz, cs) = ell(p, t, t_dot);
    let tau = [&t[0] + &t_dot[0], &t[1] + &t_dot[1]];
    let sum = bch3(p, &AlgElem::from_t(t.clone()), &AlgElem::from_t(t_dot.clone()));
    let (bz, bs, bt) = exp_coords(p, &sum);
    let equal = cz == bz && cs == bs && bt == tau;
    BchReport {
        t: wrap(t),
        t_dot: wrap(t_dot),
        closed_zeta: wrap(&cz),
        closed_s: QStr(cs),
        bch_zeta: wrap(&bz),
        bch_s: QStr(bs),
        tau: wrap(&tau),
        equal,
    }
}

/// `n` distinct rational points with small, mixed denominators, including
/// the origin and both unit vectors.
pub fn rational_grid(n: usize) -> Vec<[Q; 2]> {
    let mut out = vec![[qr(0, 1), qr(0, 1)], [qr(1, 1), qr(0, 1)], [qr(0, 1), qr(1, 1)]];
    let mut i: i64 = 0;
    while out.len() < n {
        let x = qr((i * 7) % 11 - 5, 1 + i % 3);
        let y = qr((i * 5) % 13 - 6, 1 + i % 4);
        let p = [x, y];
        if !out.contains(&p) {
            out.push(p);
        }
        i += 1;
    }
    out.truncate(n);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn unit_translations() {
        let p = DqParams::plain_d0();
        let r = bch_crosscheck_ell(&p, &[q(1), q(0)], &[q(0), q(1)]);
        assert!(r.equal);
        // k = c_alpha c_flat = 1: z = (1/6, -1/3), s = 1/2.
        assert_eq!(r.closed_zeta[0].0, qr(1, 6));
        assert_eq!(r.closed_zeta[1].0, qr(-1, 3));
        assert_eq!(r.closed_s.0, qr(1, 2));
    }

    #[test]
    fn degenerate_pairs() {
        let p = DqParams::normalized(vec![]);
        let t = [qr(3, 2), q(-1)];
        let r = bch_crosscheck_ell(&p, &t, &t);
        assert!(r.equal);
        assert_eq!(r.closed_s.0, q(0));
        assert_eq!(r.closed_zeta[0].0, q(0));
        let r = bch_crosscheck_ell(&p, &t, &[-t[0].clone(), -t[1].clone()]);
        assert!(r.equal);
        assert_eq!(r.tau[0].0, q(0));
        assert_eq!(r.closed_s.0, q(0));
    }
}
