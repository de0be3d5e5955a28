//! Integer matrices preserving an integral symplectic form, the groups
//! `Gamma(A)` (discrete Heisenberg group extended by `Z`) and a
//! semi-decision test for their abstract commensurability.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::IntPoly;
use crate::rational::{fmt_q, parse_q, q, qr, Q};
use crate::salem::{classify_f_plus, salem_equivalent, Classification, Equivalence};

pub use crate::salem::companion;

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_POWER_BOUND: i64 = 6;
pub const DEFAULT_SEARCH_BOUND: i64 = 8;

/// Candidates tried per `(n1, n2)` pair in the similitude search.
const SEARCH_CAP: usize = 200_000;
/// Powers of `A` kept in memory by [`GammaA`].
const POWER_CACHE: i64 = 8;

/// Integer `A` with an integral, primitive, nondegenerate antisymmetric `J`
/// such that `A^T J A = J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SympPairRaw")]
pub struct SympPair {
    #[serde(rename = "A")]
    a: Matrix,
    #[serde(rename = "J")]
    j: Matrix,
}

#[derive(Deserialize)]
struct SympPairRaw {
    #[serde(rename = "A")]
    a: Matrix,
    #[serde(rename = "J")]
    j: Matrix,
}

impl TryFrom<SympPairRaw> for SympPair {
    type Error = Error;
    fn try_from(r: SympPairRaw) -> Result<Self> {
        SympPair::new(r.a, r.j)
    }
}

impl SympPair {
    pub fn new(a: Matrix, j: Matrix) -> Result<Self> {
        let n = a.rows();
        let bad = |m: &str| Err(Error::InvalidInput(m.to_string()));
        if !a.is_square() || !j.is_square() || j.rows() != n {
            return bad("A and J must be square of the same size");
        }
        if n == 0 || n % 2 == 1 {
            return bad("dimension must be even and positive");
        }
        if !a.is_integer() || !j.is_integer() {
            return bad("A and J must be integral");
        }
        if !j.is_antisymmetric() {
            return bad("J is not antisymmetric");
        }
        if j.det().is_zero() {
            return bad("J is degenerate");
        }
        if !content(&j).is_one() {
            return bad("J is not primitive");
        }
        if &(&a.transpose() * &j) * &a != j {
            return bad("A^T J A != J");
        }
        Ok(SympPair { a, j })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn j(&self) -> &Matrix {
        &self.j
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn verify(&self) -> LkoReport {
        verify_lko(&self.a, &self.j)
    }
}

fn content(m: &Matrix) -> BigInt {
    m.to_rows()
        .iter()
        .flatten()
        .fold(BigInt::zero(), |g, x| g.gcd(&x.to_integer()))
}

/// Scales a nonzero rational matrix to a primitive integer matrix whose
/// first nonzero entry (row-major) is positive.
fn primitive(m: &Matrix) -> Matrix {
    let rows = m.to_rows();
    let den = crate::rational::common_denominator(rows.iter().flatten());
    let ints = m.scale(&Q::from_integer(den));
    let g = content(&ints);
    let mut out = ints.scale(&Q::new(BigInt::one(), g));
    if let Some(first) = out.to_rows().into_iter().flatten().find(|x| !x.is_zero()) {
        if first.is_negative() {
            out = -&out;
        }
    }
    out
}

/// Index pairs `(p, q)`, `p < q`, parametrizing antisymmetric matrices.
fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect()
}

fn antisym_from(n: usize, pairs: &[(usize, usize)], x: &[Q]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for (k, &(p, q)) in pairs.iter().enumerate() {
        m[(p, q)] = x[k].clone();
        m[(q, p)] = -x[k].clone();
    }
    m
}

/// Nondegenerate integral antisymmetric `J` with `A^T J A = J`, with the
/// default seed.
pub fn invariant_form(a: &Matrix) -> Result<Matrix> {
    invariant_form_seeded(a, DEFAULT_SEED)
}

/// Solves `A^T J A = J` over `Q` for antisymmetric `J` and picks a
/// nondegenerate solution: each basis element, then their sum, then seeded
/// random combinations. If every sample is degenerate, the determinant is
/// evaluated on a full grid `{0..n}^d` of coefficient vectors; it has degree
/// at most `n` in each variable, so vanishing there means it vanishes
/// identically and [`Error::NoForm`] is exact.
pub fn invariant_form_seeded(a: &Matrix, seed: u64) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::InvalidInput("A must be square".into()));
    }
    if !a.is_integer() {
        return Err(Error::InvalidInput("A must be integral".into()));
    }
    if a.det().is_zero() {
        return Err(Error::InvalidInput("A must be invertible".into()));
    }
    let n = a.rows();
    let pairs = upper_pairs(n);
    if pairs.is_empty() {
        return Err(Error::NoForm);
    }
    // Row (i, j) of the system is the (i, j) entry of A^T B_pq A - B_pq.
    let mut sys = Matrix::zeros(pairs.len(), pairs.len());
    for (r, &(i, j)) in pairs.iter().enumerate() {
        for (c, &(p, qq)) in pairs.iter().enumerate() {
            let mut v = &a[(p, i)] * &a[(qq, j)] - &a[(qq, i)] * &a[(p, j)];
            if (i, j) == (p, qq) {
                v -= Q::one();
            }
            sys[(r, c)] = v;
        }
    }
    let basis: Vec<Matrix> = sys
        .nullspace()
        .iter()
        .map(|x| primitive(&antisym_from(n, &pairs, x)))
        .collect();
    if basis.is_empty() {
        return Err(Error::NoForm);
    }
    let combine = |c: &[i64]| -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for (b, &k) in basis.iter().zip(c) {
            if k != 0 {
                m = &m + &b.scale(&q(k));
            }
        }
        m
    };
    let d = basis.len();
    let mut tries: Vec<Vec<i64>> = (0..d).map(|k| (0..d).map(|i| i64::from(i == k)).collect()).collect();
    tries.push(vec![1; d]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = 4 * n as i64;
    for _ in 0..64 {
        tries.push((0..d).map(|_| rng.gen_range(-range..=range)).collect());
    }
    for c in &tries {
        let m = combine(c);
        if !m.is_zero() && !m.det().is_zero() {
            return Ok(primitive(&m));
        }
    }
    let grid = (n as u64 + 1).checked_pow(d as u32).unwrap_or(u64::MAX);
    if grid > 50_000 {
        return Err(Error::Undetermined(format!(
            "all sampled forms degenerate and the exhaustive test needs {grid} evaluations"
        )));
    }
    let mut c = vec![0i64; d];
    loop {
        let m = combine(&c);
        if !m.det().is_zero() {
            return Ok(primitive(&m));
        }
        let mut i = 0;
        while i < d {
            c[i] += 1;
            if c[i] <= n as i64 {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == d {
            return Err(Error::NoForm);
        }
    }
}

/// `diag([[0,1],[-1,0]], ...)` of size `2m`.
pub fn standard_form(m: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        j[(2 * i, 2 * i + 1)] = Q::one();
        j[(2 * i + 1, 2 * i)] = -Q::one();
    }
    j
}

/// `A = diag(I_{2(q - qbar)}, companion(f))` with `J` the standard form on
/// the identity block and an invariant form on the companion block.
pub fn build_a_for_theorem1(f: &IntPoly, q: usize) -> Result<SympPair> {
    build_a_for_theorem1_seeded(f, q, DEFAULT_SEED)
}

/// As [`build_a_for_theorem1`], with the seed of the invariant-form search.
pub fn build_a_for_theorem1_seeded(f: &IntPoly, q: usize, seed: u64) -> Result<SympPair> {
    let qbar = match classify_f_plus(f)? {
        Classification::Member { k, .. } => k - 1,
        Classification::Rejected(why) => return Err(Error::NotSalem(format!("{f}: {why}"))),
    };
    if q < qbar {
        return Err(Error::InvalidInput(format!("q = {q} is below qbar = {qbar}")));
    }
    let c = companion(f)?;
    let jc = invariant_form_seeded(&c, seed).map_err(|e| match e {
        Error::NoForm => Error::Inconsistency(format!("no invariant form for companion({f})")),
        e => e,
    })?;
    let m = q - qbar;
    let a = Matrix::block_diag(&[&Matrix::identity(2 * m), &c]);
    let j = Matrix::block_diag(&[&standard_form(m), &jc]);
    let expected = f * &IntPoly::from_i64(&[-1, 1]).pow(2 * m);
    if a.charpoly_int().as_ref() != Some(&expected) {
        return Err(Error::Inconsistency("characteristic polynomial of A".into()));
    }
    SympPair::new(a, j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LkoReport {
    pub checks: Vec<Check>,
}

impl LkoReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }
}

/// Checks that `Z^n` is an `A`-stable lattice on which `J` is integral and
/// `A`-invariant, and that `A` is semisimple with integral characteristic
/// polynomial.
pub fn verify_lko(a: &Matrix, j: &Matrix) -> LkoReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: Option<String>| {
        checks.push(Check { name: name.into(), passed, detail });
    };
    let square = a.is_square() && j.is_square() && a.rows() == j.rows();
    push("square", square, None);
    if !square {
        return LkoReport { checks };
    }
    let det_a = a.det();
    push("A integral", a.is_integer(), None);
    push(
        "A unimodular",
        a.is_integer() && det_a.abs().is_one(),
        Some(format!("det A = {}", fmt_q(&det_a))),
    );
    push("J integral", j.is_integer(), None);
    push("J antisymmetric", j.is_antisymmetric(), None);
    push("J nondegenerate", !j.det().is_zero(), None);
    push("A^T J A = J", &(&a.transpose() * j) * a == *j, None);
    let cp = a.charpoly();
    push("char poly integral", cp.to_int().is_some(), None);
    // A is semisimple iff the squarefree part of its characteristic
    // polynomial annihilates it.
    let g = cp.gcd(&cp.derivative());
    let rad = cp.divmod(&g).expect("gcd is nonzero").0;
    let semisimple = a.eval_poly(&rad.to_primitive_int()).is_zero();
    push("A semisimple", semisimple, None);
    LkoReport { checks }
}

/// `(z, v, n)` in `Gamma(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaElem {
    pub z: Q,
    pub v: Vec<Q>,
    pub n: i64,
}

#[derive(Serialize, Deserialize)]
struct GammaElemJson {
    z: String,
    v: Vec<String>,
    n: i64,
}

impl Serialize for GammaElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GammaElemJson { z: fmt_q(&self.z), v: self.v.iter().map(fmt_q).collect(), n: self.n }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GammaElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GammaElemJson::deserialize(d)?;
        let z = parse_q(&j.z).map_err(serde::de::Error::custom)?;
        let v = j.v.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>().map_err(serde::de::Error::custom)?;
        Ok(GammaElem { z, v, n: j.n })
    }
}

impl GammaElem {
    pub fn central(z: Q, dim: usize) -> Self {
        GammaElem { z, v: vec![Q::zero(); dim], n: 0 }
    }

    pub fn vector(v: Vec<Q>) -> Self {
        GammaElem { z: Q::zero(), v, n: 0 }
    }

    pub fn shift(n: i64, dim: usize) -> Self {
        GammaElem { z: Q::zero(), v: vec![Q::zero(); dim], n }
    }
}

/// `Gamma(A) = H(Z) x| Z` over a block matrix `A = diag(I, A°)`.
///
/// The product is `(z,v,n)(z',v',n') = (z + z' + 1/2 v^T J A^n v', v + A^n v', n + n')`:
/// the Heisenberg law with `omega(v, v') = v^T J v'`, twisted by the action
/// `n . (z, v) = (z, A^n v)`. Lattice points have `z` in `1/2 Z`, `v`
/// integral.
#[derive(Clone, Debug)]
pub struct GammaA {
    pair: SympPair,
    identity_dim: usize,
    block_poly: IntPoly,
    powers: Vec<Matrix>,
}

impl GammaA {
    /// Splits off the largest leading identity block and checks that the
    /// rest has characteristic polynomial in `F+`.
    pub fn new(pair: SympPair) -> Result<Self> {
        let a = pair.a();
        let n = pair.n();
        let mut k = 0;
        while k < n && (0..n).all(|i| a[(k, i)] == Q::from(BigInt::from(i64::from(i == k))) && a[(i, k)] == a[(k, i)]) {
            k += 1;
        }
        if k % 2 == 1 {
            return Err(Error::InvalidInput("identity block has odd size".into()));
        }
        if k == n {
            return Err(Error::InvalidInput("A has no Salem block".into()));
        }
        let j = pair.j();
        for i in 0..k {
            for l in k..n {
                if !j[(i, l)].is_zero() {
                    return Err(Error::InvalidInput("J does not split along the blocks of A".into()));
                }
            }
        }
        let block = a.submatrix(k, k, n - k, n - k);
        let block_poly = block
            .charpoly_int()
            .ok_or_else(|| Error::InvalidInput("non-integral characteristic polynomial".into()))?;
        if let Classification::Rejected(why) = classify_f_plus(&block_poly)? {
            return Err(Error::NotSalem(format!("{block_poly}: {why}")));
        }
        let inv = a.inverse()?;
        let mut powers = Vec::with_capacity(2 * POWER_CACHE as usize + 1);
        let mut neg = vec![Matrix::identity(n)];
        let mut pos = vec![Matrix::identity(n)];
        for i in 1..=POWER_CACHE as usize {
            neg.push(&neg[i - 1] * &inv);
            pos.push(&pos[i - 1] * a);
        }
        powers.extend(neg.into_iter().skip(1).rev());
        powers.extend(pos);
        Ok(GammaA { pair, identity_dim: k, block_poly, powers })
    }

    pub fn pair(&self) -> &SympPair {
        &self.pair
    }

    pub fn dim(&self) -> usize {
        self.pair.n()
    }

    /// Multiplicity of the eigenvalue 1, that is `2 (q - qbar)`.
    pub fn identity_dim(&self) -> usize {
        self.identity_dim
    }

    /// Characteristic polynomial of `A°`.
    pub fn block_poly(&self) -> &IntPoly {
        &self.block_poly
    }

    pub fn block(&self) -> Matrix {
        let (k, n) = (self.identity_dim, self.dim());
        self.pair.a().submatrix(k, k, n - k, n - k)
    }

    pub fn block_form(&self) -> Matrix {
        let (k, n) = (self.identity_dim, self.dim());
        self.pair.j().submatrix(k, k, n - k, n - k)
    }

    fn power(&self, e: i64) -> Matrix {
        if e.abs() <= POWER_CACHE {
            self.powers[(e + POWER_CACHE) as usize].clone()
        } else {
            self.pair.a().pow(e).expect("A is unimodular")
        }
    }

    fn act(&self, e: i64, v: &[Q]) -> Vec<Q> {
        if e == 0 {
            return v.to_vec();
        }
        if e.abs() <= POWER_CACHE {
            self.powers[(e + POWER_CACHE) as usize].mul_vec(v)
        } else {
            self.power(e).mul_vec(v)
        }
    }

    pub fn omega(&self, v: &[Q], w: &[Q]) -> Q {
        let jw = self.pair.j().mul_vec(w);
        v.iter().zip(&jw).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn identity(&self) -> GammaElem {
        GammaElem::shift(0, self.dim())
    }

    fn check(&self, g: &GammaElem) -> Result<()> {
        if g.v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::ModelMismatch)
        }
    }

    pub fn mul(&self, g: &GammaElem, h: &GammaElem) -> Result<GammaElem> {
        self.check(g)?;
        self.check(h)?;
        let w = self.act(g.n, &h.v);
        let z = &g.z + &h.z + self.omega(&g.v, &w) * qr(1, 2);
        let v = g.v.iter().zip(&w).map(|(a, b)| a + b).collect();
        Ok(GammaElem { z, v, n: g.n + h.n })
    }

    /// `(z, v, n)^-1 = (-z, -A^-n v, -n)`; the `omega` term vanishes since
    /// `omega(v, v) = 0`.
    pub fn inverse(&self, g: &GammaElem) -> Result<GammaElem> {
        self.check(g)?;
        let v = self.act(-g.n, &g.v).into_iter().map(|x| -x).collect();
        Ok(GammaElem { z: -g.z.clone(), v, n: -g.n })
    }

    pub fn is_member(&self, g: &GammaElem) -> bool {
        g.v.len() == self.dim() && (&g.z * q(2)).is_integer() && g.v.iter().all(|x| x.is_integer())
    }

    /// `(1/2, 0, 0)`, `(0, e_i, 0)` and `(0, 0, 1)`.
    pub fn generators(&self) -> Vec<GammaElem> {
        let n = self.dim();
        let mut out = vec![GammaElem::central(qr(1, 2), n)];
        for i in 0..n {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            out.push(GammaElem::vector(v));
        }
        out.push(GammaElem::shift(1, n));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommensurabilityWitness {
    /// Acts on the `A°` blocks: `S (A1°)^n1 = (A2°)^n2 S`, `S^T J2° S = m J1°`.
    #[serde(rename = "S")]
    pub s: Matrix,
    #[serde(serialize_with = "crate::rational::serialize_q", deserialize_with = "crate::rational::deserialize_q")]
    pub m: Q,
    pub n1: i64,
    pub n2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Commensurability {
    Proven(CommensurabilityWitness),
    Disproven { invariants: Vec<String> },
    Unknown,
}

/// Checks a commensurability witness exactly.
pub fn verify_commensurability(g1: &GammaA, g2: &GammaA, w: &CommensurabilityWitness) -> Result<bool> {
    let (b1, b2) = (g1.block(), g2.block());
    if w.s.rows() != b2.rows() || w.s.cols() != b1.rows() || w.n1 == 0 || w.n2 == 0 || w.m.is_zero() {
        return Ok(false);
    }
    let p1 = b1.pow(w.n1)?;
    let p2 = b2.pow(w.n2)?;
    let intertwines = &w.s * &p1 == &p2 * &w.s;
    let similitude = &(&w.s.transpose() * &g2.block_form()) * &w.s == g1.block_form().scale(&w.m);
    Ok(intertwines && similitude && !w.s.det().is_zero())
}

/// Searches for `S` in `GSp(Q)` with `S (A1°)^n1 = (A2°)^n2 S` after
/// checking the commensurability invariants: total dimension, multiplicity
/// of the eigenvalue 1, and Salem equivalence of the blocks.
///
/// Powers are taken along the primitive relation `r1^k1 = r2^k2` found by
/// the Salem equivalence test, with both signs of `n2`. `S = I` is tried
/// first, then bounded integer combinations of an exact basis of the
/// intertwiner space. If the search fails in one direction it is repeated
/// with the arguments swapped and the witness inverted, so the answer does
/// not depend on argument order.
pub fn commensurable(g1: &GammaA, g2: &GammaA, power_bound: i64, search_bound: i64) -> Result<Commensurability> {
    let mut invariants = Vec::new();
    if g1.dim() != g2.dim() {
        invariants.push(format!("dimension {} vs {}", g1.dim(), g2.dim()));
    }
    if g1.identity_dim() != g2.identity_dim() {
        invariants.push(format!(
            "eigenvalue-1 multiplicity {} vs {}",
            g1.identity_dim(),
            g2.identity_dim()
        ));
    }
    let rel = salem_equivalent(g1.block_poly(), g2.block_poly(), power_bound.max(1) as usize)?;
    let (k1, k2) = match rel {
        Equivalence::NotEquivalent { reason } => {
            invariants.push(format!("Salem numbers not equivalent: {reason}"));
            (0, 0)
        }
        Equivalence::Equivalent { k1, k2 } => (k1 as i64, k2 as i64),
        Equivalence::Unknown => (0, 0),
    };
    if !invariants.is_empty() {
        return Ok(Commensurability::Disproven { invariants });
    }
    if k1 == 0 {
        return Ok(Commensurability::Unknown);
    }
    if let Some(w) = search(g1, g2, k1, k2, power_bound, search_bound)? {
        return Ok(Commensurability::Proven(w));
    }
    if let Some(w) = search(g2, g1, k2, k1, power_bound, search_bound)? {
        let s = w.s.inverse()?;
        let flipped = CommensurabilityWitness { s, m: Q::one() / &w.m, n1: w.n2, n2: w.n1 };
        if !verify_commensurability(g1, g2, &flipped)? {
            return Err(Error::Inconsistency("inverted commensurability witness fails".into()));
        }
        return Ok(Commensurability::Proven(flipped));
    }
    Ok(Commensurability::Unknown)
}

fn search(
    g1: &GammaA,
    g2: &GammaA,
    k1: i64,
    k2: i64,
    power_bound: i64,
    search_bound: i64,
) -> Result<Option<CommensurabilityWitness>> {
    let (b1, b2) = (g1.block(), g2.block());
    let (j1, j2) = (g1.block_form(), g2.block_form());
    let d = b1.rows();
    let mut mult = 1;
    while mult * k1.max(k2) <= power_bound {
        for sign in [1, -1] {
            let (n1, n2) = (mult * k1, sign * mult * k2);
            let p1 = b1.pow(n1)?;
            let p2 = b2.pow(n2)?;
            if p1.charpoly() != p2.charpoly() {
                continue;
            }
            let accept = |s: &Matrix| -> Option<CommensurabilityWitness> {
                let m = similitude_factor(&(&(&s.transpose() * &j2) * s), &j1)?;
                let w = CommensurabilityWitness { s: s.clone(), m, n1, n2 };
                Some(w)
            };
            if d == b2.rows() && p1 == p2 {
                if let Some(w) = accept(&Matrix::identity(d)) {
                    return Ok(Some(w));
                }
            }
            let basis = intertwiners(&p1, &p2);
            if let Some(w) = bounded_combinations(&basis, search_bound).into_par_iter().find_map_first(|c| {
                let s = combine(&basis, &c);
                accept(&s)
            }) {
                if verify_commensurability(g1, g2, &w)? {
                    return Ok(Some(w));
                }
                return Err(Error::Inconsistency("commensurability witness fails its check".into()));
            }
        }
        mult += 1;
    }
    Ok(None)
}

/// `m` with `x = m y`, `m != 0`, if it exists.
fn similitude_factor(x: &Matrix, y: &Matrix) -> Option<Q> {
    let (i, j) = (0..y.rows()).flat_map(|i| (0..y.cols()).map(move |j| (i, j))).find(|&(i, j)| !y[(i, j)].is_zero())?;
    let m = &x[(i, j)] / &y[(i, j)];
    (!m.is_zero() && *x == y.scale(&m)).then_some(m)
}

/// Basis of `{S : S p1 = p2 S}`, each scaled to a primitive integer matrix.
fn intertwiners(p1: &Matrix, p2: &Matrix) -> Vec<Matrix> {
    let (r, c) = (p2.rows(), p1.rows());
    // Unknown S[a][b] at index a*c + b; equation (i, j) of S p1 - p2 S.
    let mut sys = Matrix::zeros(r * c, r * c);
    for i in 0..r {
        for j in 0..c {
            let row = i * c + j;
            for b in 0..c {
                sys[(row, i * c + b)] += &p1[(b, j)];
            }
            for a in 0..r {
                sys[(row, a * c + j)] -= &p2[(i, a)];
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|x| primitive(&Matrix::from_rows(x.chunks(c).map(<[Q]>::to_vec).collect())))
        .collect()
}

fn combine(basis: &[Matrix], c: &[i64]) -> Matrix {
    let mut s = Matrix::zeros(basis[0].rows(), basis[0].cols());
    for (b, &k) in basis.iter().zip(c) {
        if k != 0 {
            s = &s + &b.scale(&q(k));
        }
    }
    s
}

/// Nonzero integer vectors ordered by max-norm, then lexicographically,
/// up to `bound` or [`SEARCH_CAP`] vectors.
fn bounded_combinations(basis: &[Matrix], bound: i64) -> Vec<Vec<i64>> {
    let d = basis.len();
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    for h in 1..=bound {
        let mut c = vec![-h; d];
        'level: loop {
            if c.iter().any(|x| x.abs() == h) {
                out.push(c.clone());
                if out.len() >= SEARCH_CAP {
                    return out;
                }
            }
            let mut i = d;
            loop {
                if i == 0 {
                    break 'level;
                }
                i -= 1;
                if c[i] < h {
                    c[i] += 1;
                    for x in c.iter_mut().skip(i + 1) {
                        *x = -h;
                    }
                    break;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::salem::{quadratic, F4Params};

    #[test]
    fn companion_examples() {
        assert_eq!(companion(&quadratic(3)).unwrap(), Matrix::from_i64(&[&[0, -1], &[1, 3]]));
        assert_eq!(companion(&IntPoly::from_i64(&[-1, 1])).unwrap(), Matrix::from_i64(&[&[1]]));
        let f = F4Params::new(3, 3).poly();
        assert_eq!(companion(&f).unwrap().charpoly_int().unwrap(), f);
    }

    #[test]
    fn invariant_form_examples() {
        let j = invariant_form(&companion(&quadratic(3)).unwrap()).unwrap();
        assert_eq!(j, Matrix::from_i64(&[&[0, 1], &[-1, 0]]));
        assert_eq!(invariant_form(&Matrix::identity(2)).unwrap(), Matrix::from_i64(&[&[0, 1], &[-1, 0]]));
        let half = Matrix::from_rows(vec![vec![q(2), q(0)], vec![q(0), qr(1, 2)]]);
        assert!(matches!(invariant_form(&half), Err(Error::InvalidInput(_))));
        // diag(2, 3) preserves no nonzero antisymmetric form.
        assert_eq!(invariant_form(&Matrix::from_i64(&[&[2, 0], &[0, 3]])), Err(Error::NoForm));
    }

    #[test]
    fn theorem1_pairs() {
        let sp = build_a_for_theorem1(&quadratic(3), 1).unwrap();
        assert_eq!(sp.n(), 4);
        let expected = &quadratic(3) * &IntPoly::from_i64(&[1, -2, 1]);
        assert_eq!(sp.a().charpoly_int().unwrap(), expected);
        assert!(sp.verify().passed());
        let quartic = build_a_for_theorem1(&F4Params::new(3, 3).poly(), 1).unwrap();
        assert_eq!(quartic.n(), 4);
        assert!(quartic.verify().passed());
        assert!(build_a_for_theorem1(&F4Params::new(3, 3).poly(), 0).is_err());
    }

    #[test]
    fn lko_failures() {
        let jordan = verify_lko(&Matrix::from_i64(&[&[1, 1], &[0, 1]]), &standard_form(1));
        assert_eq!(jordan.check("A semisimple"), Some(false));
        assert_eq!(jordan.check("A^T J A = J"), Some(true));
        let det2 = verify_lko(&Matrix::from_i64(&[&[2, 0], &[0, 1]]), &standard_form(1));
        assert_eq!(det2.check("A unimodular"), Some(false));
    }

    #[test]
    fn gamma_law() {
        let g = GammaA::new(build_a_for_theorem1(&quadratic(3), 1).unwrap()).unwrap();
        let e = |i: usize| {
            let mut v = vec![q(0); 4];
            v[i] = q(1);
            GammaElem::vector(v)
        };
        let x = g.mul(&g.mul(&e(0), &e(1)).unwrap(), &g.mul(&g.inverse(&e(0)).unwrap(), &g.inverse(&e(1)).unwrap()).unwrap()).unwrap();
        assert_eq!(x, GammaElem::central(g.omega(&e(0).v, &e(1).v), 4));
        let v = vec![q(1), q(-2), q(3), q(5)];
        let t = GammaElem::shift(1, 4);
        let conj = g.mul(&g.mul(&t, &GammaElem::vector(v.clone())).unwrap(), &g.inverse(&t).unwrap()).unwrap();
        assert_eq!(conj, GammaElem::vector(g.pair().a().mul_vec(&v)));
        assert_eq!(g.mul(&g.identity(), &t).unwrap(), t);
    }

    #[test]
    fn commensurability_examples() {
        let a = build_a_for_theorem1(&quadratic(3), 1).unwrap();
        let g = GammaA::new(a.clone()).unwrap();
        match commensurable(&g, &g, DEFAULT_POWER_BOUND, DEFAULT_SEARCH_BOUND).unwrap() {
            Commensurability::Proven(w) => {
                assert_eq!((w.n1, w.n2, w.m.clone(), w.s.clone()), (1, 1, q(1), Matrix::identity(2)));
            }
            other => panic!("{other:?}"),
        }
        let sq = GammaA::new(SympPair::new(a.a().pow(2).unwrap(), a.j().clone()).unwrap()).unwrap();
        match commensurable(&g, &sq, DEFAULT_POWER_BOUND, DEFAULT_SEARCH_BOUND).unwrap() {
            Commensurability::Proven(w) => assert_eq!((w.n1, w.n2), (2, 1)),
            other => panic!("{other:?}"),
        }
        let quartic = GammaA::new(build_a_for_theorem1(&F4Params::new(3, 3).poly(), 1).unwrap()).unwrap();
        assert!(matches!(
            commensurable(&g, &quartic, DEFAULT_POWER_BOUND, DEFAULT_SEARCH_BOUND).unwrap(),
            Commensurability::Disproven { .. }
        ));
    }
}
