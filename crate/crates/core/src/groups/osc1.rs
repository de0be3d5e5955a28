//! Numeric model of `Osc_{1,q}(1, mu)` and the embedding of the abstract
//! lattice `Gamma(A)` into it.
//!
//! `a = (x_0, y_0, x_1, y_1, ...)` where `(x_0, y_0)` lives in the
//! Lorentzian plane and `(x_j, y_j)` in the `j`-th complex factor. The flow
//! `e^{tL}` is the hyperbolic rotation `[[cosh t, sinh t], [sinh t, cosh t]]`
//! on the first plane and rotation by `t mu_j` on the others. The form is
//! `omega(a, a') = y_0 x'_0 - x_0 y'_0 + sum_j mu_j (x_j y'_j - y_j x'_j)`,
//! which `e^{tL}` preserves.
//!
//! The embedding sends `(z, v, n)` to `(z, P v, n t')` with `t' = ln r` and
//! `P` chosen so that `P A = e^{t'L} P` and `omega(Pv, Pw) = v^T J w`. The
//! signs are pinned by construction and re-checked numerically, see
//! [`Osc1Embedding::residuals`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{isolate_roots, IntPoly};
use crate::rational::{qr, to_f64};
use crate::sympmat::{GammaA, GammaElem};

/// Residual accepted by the numeric checks.
pub const NUMERIC_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Osc1Params {
    /// Rotation speeds of the `q` complex factors.
    pub mu: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Osc1Elem {
    pub z: f64,
    pub a: Vec<f64>,
    pub t: f64,
}

impl Osc1Params {
    pub fn dim(&self) -> usize {
        2 + 2 * self.mu.len()
    }

    pub fn identity(&self) -> Osc1Elem {
        Osc1Elem { z: 0.0, a: vec![0.0; self.dim()], t: 0.0 }
    }

    /// `e^{tL} a`.
    pub fn flow(&self, t: f64, a: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(a.len());
        let (ch, sh) = (t.cosh(), t.sinh());
        out.push(ch * a[0] + sh * a[1]);
        out.push(sh * a[0] + ch * a[1]);
        for (j, m) in self.mu.iter().enumerate() {
            let (s, c) = (t * m).sin_cos();
            let (x, y) = (a[2 + 2 * j], a[3 + 2 * j]);
            out.push(c * x - s * y);
            out.push(s * x + c * y);
        }
        out
    }

    pub fn omega(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut w = a[1] * b[0] - a[0] * b[1];
        for (j, m) in self.mu.iter().enumerate() {
            let (x, y, x2, y2) = (a[2 + 2 * j], a[3 + 2 * j], b[2 + 2 * j], b[3 + 2 * j]);
            w += m * (x * y2 - y * x2);
        }
        w
    }

    fn check(&self, g: &Osc1Elem) -> Result<()> {
        if g.a.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::ModelMismatch)
        }
    }

    /// `(z + z' + omega(a, e^{tL} a')/2, a + e^{tL} a', t + t')`.
    pub fn mul(&self, g: &Osc1Elem, h: &Osc1Elem) -> Result<Osc1Elem> {
        self.check(g)?;
        self.check(h)?;
        let fa = self.flow(g.t, &h.a);
        let z = g.z + h.z + 0.5 * self.omega(&g.a, &fa);
        let a = g.a.iter().zip(&fa).map(|(x, y)| x + y).collect();
        Ok(Osc1Elem { z, a, t: g.t + h.t })
    }

    pub fn inverse(&self, g: &Osc1Elem) -> Result<Osc1Elem> {
        self.check(g)?;
        let a = self.flow(-g.t, &g.a).into_iter().map(|x| -x).collect();
        Ok(Osc1Elem { z: -g.z, a, t: -g.t })
    }

    /// Matrix of `e^{tL}`.
    pub fn flow_matrix(&self, t: f64) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            self.flow(t, &e)[i]
        })
    }
}

impl Osc1Elem {
    pub fn max_abs_diff(&self, o: &Osc1Elem) -> f64 {
        let d = (self.z - o.z).abs().max((self.t - o.t).abs());
        self.a.iter().zip(&o.a).fold(d, |d, (x, y)| d.max((x - y).abs()))
    }
}

fn to_dmatrix(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| to_f64(&m[(i, j)]))
}

/// Unit vector spanning the (numerically one-dimensional) kernel of `b - lambda`.
fn null_vector(b: &DMatrix<f64>, lambda: Complex<f64>) -> DVector<Complex<f64>> {
    let n = b.nrows();
    let m = DMatrix::from_fn(n, n, |i, j| Complex::new(b[(i, j)], 0.0) - if i == j { lambda } else { Complex::new(0.0, 0.0) });
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let k = (0..n)
        .min_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]))
        .expect("nonempty");
    DVector::from_fn(n, |i, _| v_t[(k, i)].conj())
}

fn bilinear(j: &DMatrix<f64>, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
    (u.transpose() * j * v)[(0, 0)]
}

/// `Gamma(A)` inside `Osc_{1,q}(1, mu)`.
#[derive(Clone, Debug)]
pub struct Osc1Embedding {
    pub params: Osc1Params,
    pub t_prime: f64,
    /// Columns: images of the standard basis of `Q^{2q+2}`.
    pub p: DMatrix<f64>,
    /// Blocks of `A`: the Salem block `A°` comes after the identity block in
    /// `Gamma(A)` but first in the numeric coordinates.
    identity_dim: usize,
}

impl Osc1Embedding {
    pub fn new(g: &GammaA) -> Result<Self> {
        let n = g.dim();
        let k = g.identity_dim();
        let block = to_dmatrix(&g.block());
        let form = to_dmatrix(&g.block_form());
        let m = n - k;
        let roots = isolate_roots(g.block_poly(), &qr(1, 1 << 30))?;
        let real: Vec<f64> = roots.iter().filter(|r| r.im.is_point()).map(|r| r.approx().0).collect();
        let (r, r_inv) = match real[..] {
            [a, b] => (a.max(b), a.min(b)),
            _ => return Err(Error::Inconsistency("Salem block without two real roots".into())),
        };
        let t_prime = r.ln();

        let real_vec = |lambda: f64| -> DVector<f64> {
            let v = null_vector(&block, Complex::new(lambda, 0.0));
            // Rotate to the real line: the kernel is real up to a phase.
            let (i, _) = v.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())).expect("nonempty");
            let phase = v[i].conj() / v[i].norm();
            DVector::from_fn(m, |l, _| (v[l] * phase).re)
        };
        let u = real_vec(r);
        let w = real_vec(r_inv);
        let j_h = bilinear(&form, &u, &w);

        // Target coordinates inside the numeric model (Salem part only).
        let mut cols_r: Vec<DVector<f64>> = vec![u, w];
        let mut cols_t: Vec<DVector<f64>> = Vec::new();
        let e = |i: usize, c: f64| {
            let mut v = DVector::zeros(m);
            v[i] = c;
            v
        };
        cols_t.push(&e(0, 1.0) + &e(1, 1.0));
        cols_t.push(&e(0, j_h / 2.0) - &e(1, j_h / 2.0));

        let mut mu = Vec::new();
        let tau = std::f64::consts::TAU;
        for (jdx, root) in roots.iter().filter(|r| r.im.sign() == Some(1)).enumerate() {
            let (re, im) = root.approx();
            let v = null_vector(&block, Complex::new(re, im));
            let vr = DVector::from_fn(m, |l, _| v[l].re);
            let vi = DVector::from_fn(m, |l, _| v[l].im);
            let jj = bilinear(&form, &vr, &vi);
            let eps = -jj.signum();
            let s = im.atan2(re);
            let kk = if eps > 0.0 { 0.0 } else { 1.0 };
            let speed = (eps * s + tau * kk) / t_prime;
            let rho = (jj / (-eps * speed)).sqrt();
            let c = 2 + 2 * jdx;
            cols_r.push(vr);
            cols_r.push(vi);
            cols_t.push(e(c, rho));
            cols_t.push(e(c + 1, -eps * rho));
            mu.push(speed);
        }
        let rmat = DMatrix::from_columns(&cols_r);
        let tmat = DMatrix::from_columns(&cols_t);
        let p_block = &tmat * rmat.try_inverse().ok_or_else(|| Error::Inconsistency("eigenvector basis is singular".into()))?;

        // Identity pairs rotate by 2 pi at time t', with a symplectic basis of
        // the restricted form sent to `(e_x, e_y) / sqrt(mu)`.
        let id_form = to_dmatrix(&g.pair().j().submatrix(0, 0, k, k));
        let id_speed = tau / t_prime;
        let id_basis = symplectic_basis(&id_form)?;
        let base = m;
        let total = base + k;
        let mut p = DMatrix::zeros(total, n);
        // Salem block occupies source indices k..n.
        for i in 0..m {
            for l in 0..m {
                p[(i, k + l)] = p_block[(i, l)];
            }
        }
        let mut id_r = Vec::new();
        let mut id_t = Vec::new();
        let rho = 1.0 / id_speed.sqrt();
        for (pi, (ev, fv)) in id_basis.into_iter().enumerate() {
            id_r.push(ev);
            id_r.push(fv);
            let c = 2 * pi;
            let mut tx = DVector::zeros(k);
            tx[c] = rho;
            let mut ty = DVector::zeros(k);
            ty[c + 1] = rho;
            id_t.push(tx);
            id_t.push(ty);
            mu.push(id_speed);
        }
        if k > 0 {
            let p_id = DMatrix::from_columns(&id_t)
                * DMatrix::from_columns(&id_r).try_inverse().ok_or_else(|| Error::Inconsistency("singular identity basis".into()))?;
            for i in 0..k {
                for l in 0..k {
                    p[(base + i, l)] = p_id[(i, l)];
                }
            }
        }
        let emb = Osc1Embedding { params: Osc1Params { mu }, t_prime, p, identity_dim: k };
        let res = emb.residuals(g);
        if res > 1e-6 {
            return Err(Error::Inconsistency(format!("embedding residual {res:e}")));
        }
        Ok(emb)
    }

    pub fn embed(&self, g: &GammaElem) -> Osc1Elem {
        let v = DVector::from_iterator(g.v.len(), g.v.iter().map(to_f64));
        let a = &self.p * v;
        Osc1Elem { z: to_f64(&g.z), a: a.iter().copied().collect(), t: g.n as f64 * self.t_prime }
    }

    /// Largest deviation in `P A = e^{t'L} P` and `P^T Omega P = J`.
    pub fn residuals(&self, g: &GammaA) -> f64 {
        let a = to_dmatrix(g.pair().a());
        let j = to_dmatrix(g.pair().j());
        let lhs = &self.p * a;
        let rhs = self.params.flow_matrix(self.t_prime) * &self.p;
        let n = self.params.dim();
        let omega = DMatrix::from_fn(n, n, |i, l| {
            let mut x = vec![0.0; n];
            let mut y = vec![0.0; n];
            x[i] = 1.0;
            y[l] = 1.0;
            self.params.omega(&x, &y)
        });
        let pull = self.p.transpose() * omega * &self.p;
        (lhs - rhs).amax().max((pull - j).amax())
    }

    pub fn identity_dim(&self) -> usize {
        self.identity_dim
    }
}

/// Numeric symplectic basis `(e_i, f_i)` with `J(e_i, f_i) = 1` and all other
/// pairings zero.
fn symplectic_basis(j: &DMatrix<f64>) -> Result<Vec<(DVector<f64>, DVector<f64>)>> {
    let n = j.nrows();
    let mut pool: Vec<DVector<f64>> = (0..n).map(|i| DVector::from_fn(n, |l, _| if l == i { 1.0 } else { 0.0 })).collect();
    let mut out = Vec::new();
    while let Some(e) = pool.pop() {
        if e.amax() < 1e-12 {
            continue;
        }
        let Some((idx, _)) = pool
            .iter()
            .enumerate()
            .map(|(i, f)| (i, bilinear(j, &e, f).abs()))
            .filter(|(_, w)| *w > 1e-12)
            .max_by(|a, b| a.1.total_cmp(&b.1))
        else {
            return Err(Error::Inconsistency("degenerate form on the identity block".into()));
        };
        let f = pool.remove(idx);
        let w = bilinear(j, &e, &f);
        let f = f / w;
        for v in pool.iter_mut() {
            // v - J(v, f) e + J(v, e) f keeps v orthogonal to both.
            let jf = bilinear(j, v, &f);
            let je = bilinear(j, v, &e);
            *v = &*v - &e * jf + &f * je;
        }
        out.push((e, f));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub numeric: Vec<[f64; 2]>,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Compares the spectrum of `e^{t'L}` with certified roots of
/// `f (x - 1)^{2(q - qbar)}`; every eigenvalue is matched to a distinct
/// root, counted with multiplicity.
pub fn eigenvalue_check(emb: &Osc1Embedding, f: &IntPoly) -> Result<EigenReport> {
    let ones = IntPoly::linear_root(1).pow(emb.identity_dim());
    let g = f * &ones;
    let roots = isolate_roots(&g, &qr(1, 1 << 40))?;
    let mut targets: Vec<(Complex<f64>, f64)> = Vec::new();
    for r in &roots {
        let (re, im) = r.approx();
        let rad = to_f64(&r.re.width()).max(to_f64(&r.im.width()));
        for _ in 0..r.multiplicity {
            targets.push((Complex::new(re, im), rad));
        }
    }
    let eig = emb.params.flow_matrix(emb.t_prime).complex_eigenvalues();
    let mut used = vec![false; targets.len()];
    let mut max_dev: f64 = 0.0;
    let mut numeric = Vec::new();
    for z in eig.iter() {
        numeric.push([z.re, z.im]);
        let best = targets
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, (t, rad))| (i, ((z - t).norm() - rad).max(0.0)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) => {
                used[i] = true;
                max_dev = max_dev.max(d);
            }
            None => max_dev = f64::INFINITY,
        }
    }
    if eig.len() != targets.len() {
        max_dev = f64::INFINITY;
    }
    Ok(EigenReport { numeric, max_deviation: max_dev, passed: max_dev < NUMERIC_TOL })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::salem::quadratic;
    use crate::sympmat::build_a_for_theorem1;

    fn fixtures() -> Vec<(IntPoly, usize)> {
        vec![(quadratic(3), 1), (quadratic(3), 2), (IntPoly::from_i64(&[1, -1, -1, -1, 1]), 1), (quadratic(5), 3)]
    }

    #[test]
    fn embedding_intertwines() {
        for (f, q) in fixtures() {
            let g = GammaA::new(build_a_for_theorem1(&f, q).unwrap()).unwrap();
            let emb = Osc1Embedding::new(&g).unwrap();
            assert!(emb.residuals(&g) < NUMERIC_TOL, "{f} q={q}");
            assert!(emb.params.mu.iter().all(|m| *m > 0.0));
            let rep = eigenvalue_check(&emb, &f).unwrap();
            assert!(rep.passed, "{f} q={q}: {rep:?}");
            let gens = g.generators();
            for a in &gens {
                for b in &gens {
                    let lhs = emb.embed(&g.mul(a, b).unwrap());
                    let rhs = emb.params.mul(&emb.embed(a), &emb.embed(b)).unwrap();
                    assert!(lhs.max_abs_diff(&rhs) < NUMERIC_TOL);
                }
            }
        }
    }
}
