//! Explicit lattices for both existence theorems and the exhaustive word
//! check that they are closed under multiplication.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::law::{dq_inv, dq_mul, omega, osc2_inv, osc2_mul, rotate, DqElem, DqParams, Osc2Elem, Osc2Params, QStr};
use crate::criteria::{verify_lattice_basis, Family, LatticeBasis, MuSpecT2};
use crate::error::{Error, Result};
use crate::interval::{self, Interval};
use crate::poly::IntPoly;
use crate::rational::{q, qr, Q};
use crate::salem::{classify_f_plus, Classification};
use crate::symbolic::{det2, Precision, SymbolicReal};
use crate::sympmat::{build_a_for_theorem1_seeded, verify_lko, DEFAULT_SEED, Check, GammaA, GammaElem, SympPair};

pub const DEFAULT_WORD_LENGTH_T1: usize = 4;
pub const DEFAULT_WORD_LENGTH_T2: usize = 3;

/// `1/2 Z x Z^{2q+2} x t' Z` inside `Osc_{1,q}(1, mu)`, realized as
/// `Gamma(A)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "Osc1LatticeRaw")]
pub struct Osc1Lattice {
    pub f: IntPoly,
    pub q: usize,
    pub qbar: usize,
    /// Certified `t' = ln r`.
    pub t_prime: Interval,
    pub pair: SympPair,
    pub generators: Vec<GammaElem>,
    #[serde(skip)]
    gamma: Option<GammaA>,
}

#[derive(Deserialize)]
struct Osc1LatticeRaw {
    f: IntPoly,
    q: usize,
    qbar: usize,
    t_prime: Interval,
    pair: SympPair,
    generators: Vec<GammaElem>,
}

impl TryFrom<Osc1LatticeRaw> for Osc1Lattice {
    type Error = Error;

    fn try_from(r: Osc1LatticeRaw) -> Result<Self> {
        let gamma = GammaA::new(r.pair.clone())?;
        if gamma.block_poly() != &r.f || r.pair.n() != 2 * r.q + 2 || 2 * r.qbar + 2 != r.f.degree() {
            return Err(Error::InvalidInput("f, q and qbar do not match the pair".into()));
        }
        Ok(Osc1Lattice {
            f: r.f,
            q: r.q,
            qbar: r.qbar,
            t_prime: r.t_prime,
            pair: r.pair,
            generators: r.generators,
            gamma: Some(gamma),
        })
    }
}

impl Osc1Lattice {
    pub fn gamma(&self) -> &GammaA {
        self.gamma.as_ref().expect("built through the validating constructors")
    }
}

/// `Gamma^N x| Gamma'` with `Gamma^N = 1/2 Gamma^z x Lambda`. Coordinates of
/// `z` and `t` are taken in the lattice basis `b` of `Gamma^z` and its dual
/// `T` (`b_i(T_j) = 2 pi delta_ij`), so `mu_k` has integer coordinates `m_k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Osc2Lattice {
    /// `b_1, b_2` in `sigma` coordinates.
    pub lattice_basis: [[SymbolicReal; 2]; 2],
    pub m: Vec<[i64; 2]>,
    pub generators: Vec<Osc2Elem<Q>>,
}

/// Units of the normalized `D_q` model, as certified decimal intervals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Units {
    /// `lambda = alpha(T_1, T_2) / sqrt(2 pi)`.
    pub lambda: Interval,
    pub u_z: String,
    pub u_a: String,
    pub u_s: String,
}

/// `h(Gamma^h) l(Gamma')`. In normalized units
/// `Gamma^h = 1/6 Z^2 x Z^{2q} x Z`; the plain `D_0` model uses
/// `1/6 Z^2 x 1/2 Z x Z^2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DLattice {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lattice_basis: Option<[[SymbolicReal; 2]; 2]>,
    pub m: Vec<[i64; 2]>,
    pub c_alpha: QStr,
    pub c_flat: QStr,
    pub z_step: QStr,
    pub s_step: QStr,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub units: Option<Units>,
    pub generators: Vec<DqElem<Q>>,
}

impl DLattice {
    pub fn params(&self) -> DqParams<Q> {
        DqParams { m: m_q(&self.m), c_alpha: self.c_alpha.0.clone(), c_flat: self.c_flat.0.clone() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum LatticeModel {
    Osc1(Osc1Lattice),
    Osc2(Osc2Lattice),
    D(DLattice),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Osc1(GammaElem),
    Osc2(Osc2Elem<Q>),
    D(DqElem<Q>),
}

fn m_q(m: &[[i64; 2]]) -> Vec<[Q; 2]> {
    m.iter().map(|[a, b]| [q(*a), q(*b)]).collect()
}

fn multiple_of(x: &Q, step: &Q) -> bool {
    (x / step).is_integer()
}

fn q_height(x: &Q) -> BigInt {
    let n = x.numer().abs();
    let d = x.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

impl LatticeModel {
    pub fn family(&self) -> &'static str {
        match self {
            LatticeModel::Osc1(_) => "osc1",
            LatticeModel::Osc2(_) => "osc2",
            LatticeModel::D(_) => "d",
        }
    }

    pub fn generators(&self) -> Vec<Element> {
        match self {
            LatticeModel::Osc1(l) => l.generators.iter().cloned().map(Element::Osc1).collect(),
            LatticeModel::Osc2(l) => l.generators.iter().cloned().map(Element::Osc2).collect(),
            LatticeModel::D(l) => l.generators.iter().cloned().map(Element::D).collect(),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            LatticeModel::Osc1(l) => Element::Osc1(l.gamma().identity()),
            LatticeModel::Osc2(l) => Element::Osc2(Osc2Elem::identity(l.m.len())),
            LatticeModel::D(l) => Element::D(DqElem::identity(l.m.len())),
        }
    }

    pub fn mul(&self, g: &Element, h: &Element) -> Result<Element> {
        match (self, g, h) {
            (LatticeModel::Osc1(l), Element::Osc1(g), Element::Osc1(h)) => l.gamma().mul(g, h).map(Element::Osc1),
            (LatticeModel::Osc2(l), Element::Osc2(g), Element::Osc2(h)) => {
                osc2_mul(&Osc2Params { m: m_q(&l.m) }, g, h).map(Element::Osc2)
            }
            (LatticeModel::D(l), Element::D(g), Element::D(h)) => dq_mul(&l.params(), g, h).map(Element::D),
            _ => Err(Error::ModelMismatch),
        }
    }

    pub fn inverse(&self, g: &Element) -> Result<Element> {
        match (self, g) {
            (LatticeModel::Osc1(l), Element::Osc1(g)) => l.gamma().inverse(g).map(Element::Osc1),
            (LatticeModel::Osc2(l), Element::Osc2(g)) => osc2_inv(&Osc2Params { m: m_q(&l.m) }, g).map(Element::Osc2),
            (LatticeModel::D(l), Element::D(g)) => dq_inv(&l.params(), g).map(Element::D),
            _ => Err(Error::ModelMismatch),
        }
    }

    /// Exact membership predicate.
    pub fn contains(&self, g: &Element) -> bool {
        match (self, g) {
            (LatticeModel::Osc1(l), Element::Osc1(g)) => l.gamma().is_member(g),
            (LatticeModel::Osc2(l), Element::Osc2(g)) => {
                let half = qr(1, 2);
                g.a.len() == l.m.len()
                    && g.zeta.iter().all(|x| multiple_of(x, &half))
                    && g.a.iter().flatten().chain(&g.tau).all(Q::is_integer)
            }
            (LatticeModel::D(l), Element::D(g)) => {
                g.a.len() == l.m.len()
                    && g.zeta.iter().all(|x| multiple_of(x, &l.z_step.0))
                    && multiple_of(&g.s, &l.s_step.0)
                    && g.a.iter().flatten().chain(&g.tau).all(Q::is_integer)
            }
            _ => false,
        }
    }

    pub fn height(g: &Element) -> BigInt {
        let coords: Vec<Q> = match g {
            Element::Osc1(g) => std::iter::once(g.z.clone()).chain(g.v.iter().cloned()).chain([q(g.n)]).collect(),
            Element::Osc2(g) => g.zeta.iter().chain(g.a.iter().flatten()).chain(&g.tau).cloned().collect(),
            Element::D(g) => g.zeta.iter().chain(g.a.iter().flatten()).chain([&g.s]).chain(&g.tau).cloned().collect(),
        };
        coords.iter().map(q_height).max().unwrap_or_else(BigInt::zero)
    }

    /// Step of the central lattice in the `z` (or `zeta`) coordinates.
    pub fn z_step(&self) -> Q {
        match self {
            LatticeModel::Osc1(_) | LatticeModel::Osc2(_) => qr(1, 2),
            LatticeModel::D(l) => l.z_step.0.clone(),
        }
    }

    /// Structural checks independent of the word enumeration.
    pub fn checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let mut push = |name: &str, passed: bool| out.push(Check { name: name.into(), passed, detail: None });
        let gens = self.generators();
        push("generators are members", gens.iter().all(|g| self.contains(g)));
        match self {
            LatticeModel::Osc1(l) => {
                let lko = verify_lko(l.pair.a(), l.pair.j());
                push("A^T J A = J", lko.check("A^T J A = J") == Some(true));
                let g = l.gamma();
                let ones = IntPoly::linear_root(1).pow(g.identity_dim());
                let expected = &l.f * &ones;
                push("char poly = f (x-1)^(2(q-qbar))", l.pair.a().charpoly_int().as_ref() == Some(&expected));
                push("A Lambda = Lambda", lko.check("A integral") == Some(true) && lko.check("A unimodular") == Some(true));
            }
            LatticeModel::Osc2(l) => {
                push("omega(Lambda, Lambda) in Gamma^z", omega_in_lattice(&l.m, &Q::one()));
                push("rotations trivial on Gamma'", rotations_trivial(&l.m, l.generators.iter().map(|g| &g.tau)));
            }
            LatticeModel::D(l) => {
                let p = l.params();
                // omega enters as omega/2, which must land in the z lattice.
                push("omega(Lambda, Lambda)/2 in z lattice", omega_in_lattice(&l.m, &(&l.z_step.0 * q(2))));
                push("rotations trivial on Gamma'", rotations_trivial(&l.m, l.generators.iter().map(|g| &g.tau)));
                // s t^flat for s in the s lattice and t in Gamma'.
                let st = &p.c_flat * &l.s_step.0;
                push("s t^flat in z lattice", multiple_of(&st, &l.z_step.0));
            }
        }
        out
    }
}

/// `e^{rho(t)}` fixes `Lambda` pointwise for every generator translation `t`.
fn rotations_trivial<'a>(m: &[[i64; 2]], taus: impl Iterator<Item = &'a [Q; 2]>) -> bool {
    let mq = m_q(m);
    let basis: Vec<Vec<[Q; 2]>> = (0..2 * m.len()).map(|i| unit_a(m.len(), i)).collect();
    taus.into_iter().all(|t| basis.iter().all(|a| rotate(&mq, t, a).as_ref() == Ok(a)))
}

/// `omega(e, f)` for basis vectors `e, f` of `Lambda` lies in `step Z^2`.
fn omega_in_lattice(m: &[[i64; 2]], step: &Q) -> bool {
    let mq = m_q(m);
    let basis: Vec<Vec<[Q; 2]>> = (0..2 * m.len()).map(|i| unit_a(m.len(), i)).collect();
    basis
        .iter()
        .all(|x| basis.iter().all(|y| omega(&mq, x, y).iter().all(|c| multiple_of(c, step))))
}

fn unit_a(q: usize, i: usize) -> Vec<[Q; 2]> {
    let mut a = vec![[Q::zero(), Q::zero()]; q];
    a[i / 2][i % 2] = Q::one();
    a
}

/// Lattice of the first existence theorem for `f` in `F+_{2qbar+2}` and
/// `q >= qbar`.
pub fn build_lattice_t1(f: &IntPoly, q: usize) -> Result<LatticeModel> {
    build_lattice_t1_seeded(f, q, DEFAULT_SEED)
}

pub fn build_lattice_t1_seeded(f: &IntPoly, q: usize, seed: u64) -> Result<LatticeModel> {
    let data = match classify_f_plus(f)? {
        Classification::Member { data, .. } => data,
        Classification::Rejected(why) => return Err(Error::NotSalem(why.to_string())),
    };
    let qbar = f.degree() / 2 - 1;
    let pair = build_a_for_theorem1_seeded(f, q, seed)?;
    let gamma = GammaA::new(pair.clone())?;
    Ok(LatticeModel::Osc1(Osc1Lattice {
        f: f.clone(),
        q,
        qbar,
        t_prime: data.ln_r(128),
        pair,
        generators: gamma.generators(),
        gamma: Some(gamma),
    }))
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::InvalidInput("lattice coordinate exceeds 64 bits".into()))
}

/// `lambda = alpha(T_1, T_2) / sqrt(2 pi)` where `alpha` is the area form of
/// the `sigma`-dual basis, so `alpha(T_1, T_2) = 4 pi^2 / det(b)`.
fn lambda(mu: &MuSpecT2, b: &[[SymbolicReal; 2]; 2]) -> Result<Interval> {
    let bits = Precision::High.bits();
    let d = det2(&mu.basis, &b[0][0], &b[0][1], &b[1][0], &b[1][1], Precision::High)?;
    let pi = interval::pi(bits);
    let four_pi2 = (&pi * &pi).scale(&q(4));
    let sqrt_2pi = interval::sqrt(&pi.scale(&q(2)), bits);
    let den = &d.value * &sqrt_2pi;
    four_pi2
        .div(&den)
        .map(|x| x.round_out(bits))
        .ok_or_else(|| Error::Undetermined("det(b) not certified nonzero".into()))
}

/// Lattice of the second existence theorem from a basis returned by
/// [`crate::criteria::decide_t2`].
pub fn build_lattice_t2(mu: &MuSpecT2, lb: &LatticeBasis) -> Result<LatticeModel> {
    verify_lattice_basis(mu, lb)?;
    let q = mu.q();
    let m: Vec<[i64; 2]> = lb.coords.iter().map(|[a, b]| Ok([to_i64(a)?, to_i64(b)?])).collect::<Result<_>>()?;
    let zero2 = || [Q::zero(), Q::zero()];
    match mu.family {
        Family::Osc2 => {
            let mut generators = vec![
                Osc2Elem { zeta: [qr(1, 2), Q::zero()], ..Osc2Elem::identity(q) },
                Osc2Elem { zeta: [Q::zero(), qr(1, 2)], ..Osc2Elem::identity(q) },
            ];
            generators.extend((0..2 * q).map(|i| Osc2Elem { a: unit_a(q, i), ..Osc2Elem::identity(q) }));
            generators.push(Osc2Elem { tau: [Q::one(), Q::zero()], ..Osc2Elem::identity(q) });
            generators.push(Osc2Elem { tau: [Q::zero(), Q::one()], ..Osc2Elem::identity(q) });
            Ok(LatticeModel::Osc2(Osc2Lattice { lattice_basis: lb.basis.clone(), m, generators }))
        }
        Family::D if q == 0 => Ok(build_lattice_d0()),
        Family::D => {
            let p = DqParams::normalized(m_q(&m));
            let z_step = qr(1, 6);
            let s_step = Q::one();
            let mut generators = vec![
                DqElem::h([z_step.clone(), Q::zero()], vec![zero2(); q], Q::zero()),
                DqElem::h([Q::zero(), z_step.clone()], vec![zero2(); q], Q::zero()),
            ];
            generators.extend((0..2 * q).map(|i| DqElem::h(zero2(), unit_a(q, i), Q::zero())));
            generators.push(DqElem::h(zero2(), vec![zero2(); q], s_step.clone()));
            generators.push(DqElem::l([Q::one(), Q::zero()], q));
            generators.push(DqElem::l([Q::zero(), Q::one()], q));
            let units = Units {
                lambda: lambda(mu, &lb.basis)?,
                u_z: "lambda^2".into(),
                u_a: "lambda".into(),
                u_s: "lambda sqrt(pi/2)".into(),
            };
            Ok(LatticeModel::D(DLattice {
                lattice_basis: Some(lb.basis.clone()),
                m,
                c_alpha: QStr(p.c_alpha),
                c_flat: QStr(p.c_flat),
                z_step: QStr(z_step),
                s_step: QStr(s_step),
                units: Some(units),
                generators,
            }))
        }
    }
}

/// `1/6 Z^2 x 1/2 Z x Z^2` in `D_0` with `alpha(e_1, e_2) = 1`.
pub fn build_lattice_d0() -> LatticeModel {
    let p = DqParams::plain_d0();
    let z_step = qr(1, 6);
    let s_step = qr(1, 2);
    let generators = vec![
        DqElem::h([z_step.clone(), Q::zero()], vec![], Q::zero()),
        DqElem::h([Q::zero(), z_step.clone()], vec![], Q::zero()),
        DqElem::h([Q::zero(), Q::zero()], vec![], s_step.clone()),
        DqElem::l([Q::one(), Q::zero()], 0),
        DqElem::l([Q::zero(), Q::one()], 0),
    ];
    LatticeModel::D(DLattice {
        lattice_basis: None,
        m: vec![],
        c_alpha: QStr(p.c_alpha),
        c_flat: QStr(p.c_flat),
        z_step: QStr(z_step),
        s_step: QStr(s_step),
        units: None,
        generators,
    })
}

/// Copy of `lat` whose generator `index` has its central coordinate moved
/// by a third of the lattice step. Used as a negative control.
pub fn corrupt(lat: &LatticeModel, index: usize) -> Result<LatticeModel> {
    let shift = lat.z_step() * qr(1, 3);
    let mut out = lat.clone();
    let bad = || Error::InvalidInput(format!("no generator {index}"));
    match &mut out {
        LatticeModel::Osc1(l) => l.generators.get_mut(index).ok_or_else(bad)?.z += shift,
        LatticeModel::Osc2(l) => l.generators.get_mut(index).ok_or_else(bad)?.zeta[0] += shift,
        LatticeModel::D(l) => l.generators.get_mut(index).ok_or_else(bad)?.zeta[0] += shift,
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub family: String,
    pub generators: usize,
    pub word_length: usize,
    pub words_checked: u64,
    /// Largest `max(|numerator|, denominator)` over all coordinates reached.
    pub max_height: String,
    pub violations: usize,
    pub checks: Vec<Check>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.checks.iter().all(|c| c.passed)
    }
}

struct Walk<'a> {
    lat: &'a LatticeModel,
    letters: &'a [Element],
    max_len: usize,
    count: u64,
    height: BigInt,
}

impl Walk<'_> {
    /// Depth-first over all extensions of `word`; stops at the first
    /// non-member.
    fn visit(&mut self, word: &mut Vec<i64>, g: &Element) -> Result<()> {
        self.count += 1;
        if !self.lat.contains(g) {
            return Err(Error::ClosureViolation { word: word.clone() });
        }
        let h = LatticeModel::height(g);
        if h > self.height {
            self.height = h;
        }
        if word.len() == self.max_len {
            return Ok(());
        }
        for (i, x) in self.letters.iter().enumerate() {
            let next = self.lat.mul(g, x)?;
            word.push(letter(i));
            self.visit(word, &next)?;
            word.pop();
        }
        Ok(())
    }
}

/// Letter `i` of the alphabet `g_1, g_1^-1, g_2, ...` as `+1, -1, +2, ...`.
fn letter(i: usize) -> i64 {
    let k = (i / 2 + 1) as i64;
    if i % 2 == 0 {
        k
    } else {
        -k
    }
}

/// Multiplies out every word of length `1..=word_length` in the generators
/// and their inverses and checks membership of each product. The first
/// violation in the fixed enumeration order is returned as
/// [`Error::ClosureViolation`].
pub fn closure_check(lat: &LatticeModel, word_length: usize) -> Result<ClosureReport> {
    let gens = lat.generators();
    let mut letters = Vec::with_capacity(2 * gens.len());
    for g in &gens {
        letters.push(g.clone());
        letters.push(lat.inverse(g)?);
    }
    let branches: Vec<Result<(u64, BigInt)>> = (0..letters.len())
        .into_par_iter()
        .map(|i| {
            if word_length == 0 {
                return Ok((0, BigInt::zero()));
            }
            let mut walk = Walk { lat, letters: &letters, max_len: word_length, count: 0, height: BigInt::zero() };
            walk.visit(&mut vec![letter(i)], &letters[i])?;
            Ok((walk.count, walk.height))
        })
        .collect();
    let mut words = 0;
    let mut height = BigInt::zero();
    for b in branches {
        let (c, h) = b?;
        words += c;
        height = height.max(h);
    }
    Ok(ClosureReport {
        family: lat.family().into(),
        generators: gens.len(),
        word_length,
        words_checked: words,
        max_height: height.to_string(),
        violations: 0,
        checks: lat.checks(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{decide_t2, T2Decision};
    use crate::salem::quadratic;

    fn t2(family: Family) -> LatticeModel {
        let mu = MuSpecT2::rational(&[(q(1), q(0)), (q(0), q(1)), (q(1), q(1))], family).unwrap();
        let T2Decision::LatticeExists(lb) = decide_t2(&mu).unwrap() else { panic!("no lattice") };
        build_lattice_t2(&mu, &lb).unwrap()
    }

    #[test]
    fn t1_quadratic() {
        let lat = build_lattice_t1(&quadratic(3), 1).unwrap();
        assert_eq!(lat.generators().len(), 6);
        let gens = lat.generators();
        for g in &gens {
            assert!(lat.contains(g));
            for h in &gens {
                assert!(lat.contains(&lat.mul(g, h).unwrap()));
            }
        }
        // (0,0,1)(0,v,0)(0,0,-1) = (0,Av,0).
        let LatticeModel::Osc1(l) = &lat else { unreachable!() };
        let shift = gens.last().unwrap();
        let v = &gens[1];
        let c = lat.mul(&lat.mul(shift, v).unwrap(), &lat.inverse(shift).unwrap()).unwrap();
        let Element::Osc1(c) = c else { unreachable!() };
        let Element::Osc1(v) = v else { unreachable!() };
        assert_eq!(c.v, l.pair.a().mul_vec(&v.v));
        assert!(c.z.is_zero() && c.n == 0);
    }

    #[test]
    fn t2_lattices_close() {
        for fam in [Family::Osc2, Family::D] {
            let lat = t2(fam);
            let r = closure_check(&lat, 2).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = closure_check(&build_lattice_d0(), 3).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn corrupted_generator_is_caught() {
        let lat = corrupt(&t2(Family::D), 3).unwrap();
        assert!(matches!(closure_check(&lat, 2), Err(Error::ClosureViolation { .. })));
    }

    #[test]
    fn d_translations_land_in_units() {
        let lat = t2(Family::D);
        let gens = lat.generators();
        let n = gens.len();
        let p = lat.mul(&gens[n - 2], &gens[n - 1]).unwrap();
        assert!(lat.contains(&p));
        let Element::D(p) = p else { unreachable!() };
        assert_eq!(p.s, q(1));
    }

    #[test]
    fn json_round_trip() {
        for lat in [build_lattice_t1(&quadratic(3), 2).unwrap(), t2(Family::D), t2(Family::Osc2), build_lattice_d0()] {
            let s = serde_json::to_string(&lat).unwrap();
            let back: LatticeModel = serde_json::from_str(&s).unwrap();
            assert_eq!(serde_json::to_string(&back).unwrap(), s);
        }
    }
}
