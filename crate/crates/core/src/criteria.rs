//! Lattice-existence criteria for one- and two-dimensional centres,
//! together with the normal forms of the parameter vectors.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{self, Interval};
use crate::linalg::hermite_rows;
use crate::poly::{IntPoly, SturmSequence};
use crate::rational::{common_denominator, pow2, q, Q};
use crate::salem::{classify_f_plus_tol, quadratic, SalemData};
use crate::symbolic::{det2, Basis, Precision, Source, SymbolJson, SymbolicReal, ONE};

pub const DEFAULT_OFFSET_BOUND: i64 = 64;

/// Text recorded in verdicts whose answer relies on declared independence.
pub const INDEPENDENCE_ASSUMPTION: &str =
    "declared symbols are linearly independent over Q together with 1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuSpecT1 {
    pub basis: Basis,
    pub mu: Vec<SymbolicReal>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Osc2,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuSpecT2 {
    pub basis: Basis,
    /// Coordinates of each `mu_j` in the `sigma_1, sigma_2` basis.
    pub mu: Vec<[SymbolicReal; 2]>,
    pub family: Family,
}

#[derive(Serialize, Deserialize)]
pub struct MuSpecT1Json {
    #[serde(default)]
    pub symbols: Vec<SymbolJson>,
    pub entries: Vec<SymbolicReal>,
}

#[derive(Serialize, Deserialize)]
pub struct MuSpecT2Json {
    #[serde(default)]
    pub symbols: Vec<SymbolJson>,
    pub entries: Vec<[SymbolicReal; 2]>,
    pub family: Family,
}

impl MuSpecT1 {
    pub fn new(basis: Basis, mu: Vec<SymbolicReal>) -> Result<Self> {
        for (i, m) in mu.iter().enumerate() {
            basis.check(m)?;
            if m.is_zero() {
                return Err(Error::ZeroEntry(i));
            }
        }
        Ok(MuSpecT1 { basis, mu })
    }

    /// Entries that are rational numbers.
    pub fn rational(values: &[Q]) -> Result<Self> {
        Self::new(Basis::new(), values.iter().map(|v| SymbolicReal::constant(v.clone())).collect())
    }

    pub fn q(&self) -> usize {
        self.mu.len()
    }

    pub fn from_json(j: &MuSpecT1Json) -> Result<Self> {
        Self::new(Basis::from_json(&j.symbols)?, j.entries.clone())
    }

    pub fn to_json(&self) -> MuSpecT1Json {
        MuSpecT1Json { symbols: self.basis.to_json(), entries: self.mu.clone() }
    }
}

impl MuSpecT2 {
    pub fn new(basis: Basis, mu: Vec<[SymbolicReal; 2]>, family: Family) -> Result<Self> {
        for m in &mu {
            basis.check(&m[0])?;
            basis.check(&m[1])?;
        }
        Ok(MuSpecT2 { basis, mu, family })
    }

    /// Entries with rational coordinates.
    pub fn rational(values: &[(Q, Q)], family: Family) -> Result<Self> {
        let mu = values
            .iter()
            .map(|(x, y)| [SymbolicReal::constant(x.clone()), SymbolicReal::constant(y.clone())])
            .collect();
        Self::new(Basis::new(), mu, family)
    }

    pub fn q(&self) -> usize {
        self.mu.len()
    }

    pub fn from_json(j: &MuSpecT2Json) -> Result<Self> {
        Self::new(Basis::from_json(&j.symbols)?, j.entries.clone(), j.family)
    }

    pub fn to_json(&self) -> MuSpecT2Json {
        MuSpecT2Json { symbols: self.basis.to_json(), entries: self.mu.clone(), family: self.family }
    }
}

/// Total order on values using certified enclosures, falling back to the
/// formal difference for ties.
fn compare(basis: &Basis, a: &SymbolicReal, b: &SymbolicReal, i: usize, j: usize) -> Result<Ordering> {
    match basis.sign(&a.sub(b))? {
        Some(0) => Ok(Ordering::Equal),
        Some(s) if s < 0 => Ok(Ordering::Less),
        Some(_) => Ok(Ordering::Greater),
        None => Err(Error::IncomparableEntries(i, j)),
    }
}

fn sort_by_certified<T: Clone>(
    items: &[T],
    cmp: impl Fn(&T, &T, usize, usize) -> Result<Ordering>,
) -> Result<Vec<T>> {
    // Insertion sort so that comparison errors propagate.
    let mut idx: Vec<usize> = Vec::with_capacity(items.len());
    for i in 0..items.len() {
        let mut pos = idx.len();
        while pos > 0 {
            let j = idx[pos - 1];
            if cmp(&items[j], &items[i], j, i)? == Ordering::Greater {
                pos -= 1;
            } else {
                break;
            }
        }
        idx.insert(pos, i);
    }
    Ok(idx.into_iter().map(|i| items[i].clone()).collect())
}

/// Positive entries in ascending order.
pub fn normalize_mu_t1(mu: &MuSpecT1) -> Result<MuSpecT1> {
    let mut flipped = Vec::with_capacity(mu.q());
    for (i, m) in mu.mu.iter().enumerate() {
        match mu.basis.sign(m)? {
            Some(0) => return Err(Error::ZeroEntry(i)),
            Some(s) if s < 0 => flipped.push(m.neg()),
            Some(_) => flipped.push(m.clone()),
            None => return Err(Error::IncomparableEntries(i, i)),
        }
    }
    let sorted = sort_by_certified(&flipped, |a, b, i, j| compare(&mu.basis, a, b, i, j))?;
    Ok(MuSpecT1 { basis: mu.basis.clone(), mu: sorted })
}

/// Symbol names used for parameters derived from a Salem polynomial.
pub fn angle_symbol(j: usize) -> String {
    format!("s{j}/ln_r")
}

pub const TAU_SYMBOL: &str = "2pi/ln_r";

/// Basis holding `s_j / ln r` for every unit pair of `f` and `2 pi / ln r`.
pub fn salem_basis(f: &IntPoly) -> Result<Basis> {
    let qbar = f.degree() / 2 - 1;
    let mut b = Basis::new();
    for j in 1..=qbar {
        b.insert(&angle_symbol(j), Source::SalemAngle { poly: f.clone(), j })?;
    }
    b.insert(TAU_SYMBOL, Source::TwoPiOverLog { poly: f.clone() })?;
    Ok(b)
}

fn validated(f: &IntPoly) -> Result<SalemData> {
    validated_tol(f, 100)
}

fn validated_tol(f: &IntPoly, bits: i64) -> Result<SalemData> {
    classify_f_plus_tol(f, &pow2(-bits))?
        .data()
        .cloned()
        .ok_or_else(|| Error::NotSalem(f.to_string()))
}

/// `mu_j = (signs_j s_j + 2 pi ks_j) / ln r` for the first `qbar` entries and
/// `2 pi ks_j / ln r` for the rest.
pub fn synthesize_mu_t1(f: &IntPoly, q: usize, signs: &[i8], ks: &[i64]) -> Result<MuSpecT1> {
    validated(f)?;
    let qbar = f.degree() / 2 - 1;
    if q < qbar {
        return Err(Error::InvalidInput(format!("q = {q} is smaller than qbar = {qbar}")));
    }
    if signs.len() != qbar || ks.len() != q {
        return Err(Error::InvalidInput("need one sign per unit pair and one offset per entry".into()));
    }
    let basis = salem_basis(f)?;
    let mut mu = Vec::with_capacity(q);
    for j in 0..q {
        let offset = SymbolicReal::term(TAU_SYMBOL, Q::from_integer(ks[j].into()));
        let m = if j < qbar {
            let sign = if signs[j] < 0 { -Q::one() } else { Q::one() };
            SymbolicReal::term(&angle_symbol(j + 1), sign).add(&offset)
        } else {
            offset
        };
        if m.is_zero() {
            return Err(Error::ZeroEntry(j));
        }
        mu.push(m);
    }
    MuSpecT1::new(basis, mu)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Slot {
    /// Unit pair `j` (from 1).
    Circle { j: usize },
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub entry: usize,
    pub slot: Slot,
    pub sign: i8,
    pub k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum T1Membership {
    Member { assignment: Vec<Assignment> },
    /// `conditional` is set when declared independence was used.
    NonMember { conditional: bool },
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Edge {
    Exact(i8, i64),
    Possible,
    No,
}

/// Coefficients of an entry over the parameters of `f`, or `None` when a
/// symbol not derived from `f` occurs.
struct ExactForm {
    angles: Vec<Q>,
    tau: Q,
    one: Q,
}

fn exact_form(basis: &Basis, f: &IntPoly, qbar: usize, m: &SymbolicReal) -> Option<ExactForm> {
    let mut out = ExactForm { angles: vec![Q::zero(); qbar], tau: Q::zero(), one: Q::zero() };
    for (name, c) in m.terms() {
        if name == ONE {
            out.one += c;
            continue;
        }
        match &basis.get(name)?.source {
            Source::SalemAngle { poly, j } if poly == f && (1..=qbar).contains(j) => out.angles[j - 1] += c,
            Source::TwoPiOverLog { poly } if poly == f => out.tau += c,
            _ => return None,
        }
    }
    Some(out)
}

fn small_int(x: &Q, bound: i64) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    x.to_integer().to_i64().filter(|k| k.abs() <= bound)
}

fn exact_edge(form: &ExactForm, slot: Slot, bound: i64) -> Option<(i8, i64)> {
    if !form.one.is_zero() {
        return None;
    }
    let k = small_int(&form.tau, bound)?;
    match slot {
        Slot::Trivial => (form.angles.iter().all(Zero::is_zero) && k != 0).then_some((1, k)),
        Slot::Circle { j } => {
            let others_zero = form.angles.iter().enumerate().all(|(i, a)| i == j - 1 || a.is_zero());
            let a = &form.angles[j - 1];
            if !others_zero {
                None
            } else if a.is_one() {
                Some((1, k))
            } else if *a == -Q::one() {
                Some((-1, k))
            } else {
                None
            }
        }
    }
}

struct NumericData {
    ln_r: Interval,
    two_pi: Interval,
    angles: Vec<Interval>,
}

impl NumericData {
    fn new(data: &SalemData, bits: u32) -> Self {
        NumericData {
            ln_r: data.ln_r(bits),
            two_pi: interval::pi(bits).scale(&q(2)),
            angles: data.unit_pairs.iter().map(|p| p.angle.clone()).collect(),
        }
    }

    /// Whether `m ln r - target` may lie in `2 pi k` for an admissible `k`.
    fn possible(&self, m: &Interval, target: Option<&Interval>, nonzero: bool, bound: i64) -> bool {
        let mut x = m * &self.ln_r;
        if let Some(t) = target {
            x = &x - t;
        }
        let x = x.div(&self.two_pi).expect("2 pi > 0");
        let b = q(bound);
        let lo = x.lo.clone().max(-b.clone());
        let hi = x.hi.clone().min(b);
        if lo > hi {
            return false;
        }
        Interval::new(lo, hi).integers().any(|k| !nonzero || !k.is_zero())
    }

    fn edge(&self, m: &Interval, slot: Slot, bound: i64) -> bool {
        match slot {
            Slot::Trivial => self.possible(m, None, true, bound),
            Slot::Circle { j } => {
                let s = &self.angles[j - 1];
                self.possible(m, Some(s), false, bound) || self.possible(m, Some(&-s.clone()), false, bound)
            }
        }
    }
}

/// Perfect matching of entries to slots by augmenting paths.
fn perfect_matching(adj: &[Vec<usize>], n: usize) -> Option<Vec<usize>> {
    fn try_kuhn(v: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &s in &adj[v] {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            if owner[s].is_none() || try_kuhn(owner[s].unwrap(), adj, seen, owner) {
                owner[s] = Some(v);
                return true;
            }
        }
        false
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for v in 0..adj.len() {
        let mut seen = vec![false; n];
        if !try_kuhn(v, adj, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut slot_of = vec![0; adj.len()];
    for (s, o) in owner.iter().enumerate() {
        if let Some(v) = o {
            slot_of[*v] = s;
        }
    }
    Some(slot_of)
}

/// Decides `mu in M_{f,q}`, with offsets `|k| <= offset_bound`.
pub fn check_mu_t1(mu: &MuSpecT1, f: &IntPoly, offset_bound: i64) -> Result<T1Membership> {
    let data = validated(f)?;
    check_mu_t1_with(mu, f, &data, offset_bound)
}

fn check_mu_t1_with(mu: &MuSpecT1, f: &IntPoly, data: &SalemData, offset_bound: i64) -> Result<T1Membership> {
    let q_len = mu.q();
    let qbar = data.k() - 1;
    if qbar > q_len {
        return Ok(T1Membership::NonMember { conditional: false });
    }
    let slots: Vec<Slot> = (1..=qbar)
        .map(|j| Slot::Circle { j })
        .chain(std::iter::repeat_n(Slot::Trivial, q_len - qbar))
        .collect();
    let low = NumericData::new(data, Precision::Low.bits());
    let mut high: Option<NumericData> = None;
    let mut conditional = false;
    let mut edges = vec![vec![Edge::No; q_len]; q_len];
    for (i, m) in mu.mu.iter().enumerate() {
        let form = exact_form(&mu.basis, f, qbar, m);
        let m_low = mu.basis.eval(m, Precision::Low)?;
        for (s, &slot) in slots.iter().enumerate() {
            if let Some((sign, k)) = form.as_ref().and_then(|fm| exact_edge(fm, slot, offset_bound)) {
                edges[i][s] = Edge::Exact(sign, k);
                continue;
            }
            let mut possible = low.edge(&m_low, slot, offset_bound);
            if possible {
                let hd = high.get_or_insert_with(|| {
                    let d = validated_tol(f, Precision::High.bits() as i64).unwrap_or_else(|_| data.clone());
                    NumericData::new(&d, Precision::High.bits())
                });
                possible = hd.edge(&mu.basis.eval(m, Precision::High)?, slot, offset_bound);
            }
            if possible && form.is_some() {
                // The exact form rules the edge out, given independence.
                conditional = true;
                possible = false;
            }
            edges[i][s] = if possible { Edge::Possible } else { Edge::No };
        }
    }
    let exact_adj: Vec<Vec<usize>> = edges
        .iter()
        .map(|row| (0..q_len).filter(|&s| matches!(row[s], Edge::Exact(..))).collect())
        .collect();
    if let Some(slot_of) = perfect_matching(&exact_adj, q_len) {
        let assignment = slot_of
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                let Edge::Exact(sign, k) = edges[i][s] else { unreachable!() };
                Assignment { entry: i, slot: slots[s], sign, k }
            })
            .collect();
        return Ok(T1Membership::Member { assignment });
    }
    let loose_adj: Vec<Vec<usize>> = edges
        .iter()
        .map(|row| (0..q_len).filter(|&s| row[s] != Edge::No).collect())
        .collect();
    if perfect_matching(&loose_adj, q_len).is_some() {
        Ok(T1Membership::Unknown)
    } else {
        Ok(T1Membership::NonMember { conditional })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum T1Decision {
    LatticeExists { f: IntPoly, assignment: Vec<Assignment> },
    /// Bounded search exhausted; `undecided` counts candidates where the
    /// membership test returned Unknown.
    NoWitnessFound { candidates: usize, undecided: usize },
}

/// Self-reciprocal monic candidates of degree `2k`, ordered by height and
/// then lexicographically, passing the trace-polynomial root count.
fn t1_candidates(k: usize, height: i64) -> Vec<IntPoly> {
    let mut vecs: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::with_capacity(vecs.len() * (2 * height as usize + 1));
        for v in &vecs {
            for c in -height..=height {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        vecs = next;
    }
    vecs.sort_by_key(|v| (v.iter().map(|c| c.abs()).max().unwrap_or(0), v.clone()));
    vecs.into_par_iter()
        .filter_map(|v| {
            // Coefficients of x^{2k-1}, ..., x^k; the rest by symmetry.
            let mut c = vec![0i64; 2 * k + 1];
            c[0] = 1;
            c[2 * k] = 1;
            for (i, &x) in v.iter().enumerate() {
                c[2 * k - 1 - i] = x;
                c[1 + i] = x;
            }
            let p = IntPoly::from_i64(&c);
            let g = p.trace_polynomial()?;
            let st = SturmSequence::new(&g);
            if st.polynomial().degree() != k {
                return None;
            }
            let inside = st.count_in(&q(-2), &q(2));
            let above = st.variations_at(&q(2));
            (inside == k - 1 && above == 1 && st.count_real() == k).then_some(p)
        })
        .collect()
}

/// Bounded search for `f` in `F+_{2 qbar + 2}`, `qbar <= q`, with
/// `mu in M_{f,q}`.
pub fn decide_t1(mu: &MuSpecT1, coeff_height: i64, degree_bound: usize) -> Result<T1Decision> {
    if mu.q() == 0 {
        return Ok(T1Decision::LatticeExists { f: quadratic(3), assignment: vec![] });
    }
    let mut total = 0;
    let mut undecided = 0;
    let max_k = (mu.q() + 1).min(degree_bound / 2);
    for k in 1..=max_k {
        let cands = t1_candidates(k, coeff_height);
        total += cands.len();
        let results: Vec<Result<Option<T1Membership>>> = cands
            .par_iter()
            .map(|p| {
                let Some(data) = classify_f_plus_tol(p, &pow2(-100))?.data().cloned() else {
                    return Ok(None);
                };
                check_mu_t1_with(mu, p, &data, DEFAULT_OFFSET_BOUND).map(Some)
            })
            .collect();
        for (p, r) in cands.iter().zip(results) {
            match r? {
                Some(T1Membership::Member { assignment }) => {
                    return Ok(T1Decision::LatticeExists { f: p.clone(), assignment });
                }
                Some(T1Membership::Unknown) => undecided += 1,
                _ => {}
            }
        }
    }
    Ok(T1Decision::NoWitnessFound { candidates: total, undecided })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Indecomposability {
    Ok,
    Violation { reason: String },
}

pub fn check_indecomposable_t1(mu: &MuSpecT1) -> Indecomposability {
    match mu.mu.iter().position(SymbolicReal::is_zero) {
        Some(i) => Indecomposability::Violation { reason: format!("entry {i} is zero") },
        None => Indecomposability::Ok,
    }
}

/// Whether `a` and `b` are parallel; `None` if undecidable at the
/// available precision.
fn parallel(basis: &Basis, a: &[SymbolicReal; 2], b: &[SymbolicReal; 2]) -> Result<Option<bool>> {
    for prec in [Precision::Low, Precision::High] {
        let d = det2(basis, &a[0], &a[1], &b[0], &b[1], prec)?;
        if d.formally_zero {
            return Ok(Some(true));
        }
        if matches!(d.value.sign(), Some(s) if s != 0) {
            return Ok(Some(false));
        }
    }
    Ok(None)
}

pub fn check_indecomposable_t2(mu: &MuSpecT2) -> Result<Indecomposability> {
    if let Some(i) = mu.mu.iter().position(|m| m[0].is_zero() && m[1].is_zero()) {
        return Ok(Indecomposability::Violation { reason: format!("entry {i} is zero") });
    }
    if mu.family == Family::D {
        return Ok(Indecomposability::Ok);
    }
    if mu.q() < 3 {
        return Ok(Indecomposability::Violation { reason: format!("q = {} < 3", mu.q()) });
    }
    let mut reps: Vec<usize> = Vec::new();
    for (i, m) in mu.mu.iter().enumerate() {
        let mut found = false;
        for &r in &reps {
            match parallel(&mu.basis, &mu.mu[r], m)? {
                Some(true) => {
                    found = true;
                    break;
                }
                Some(false) => {}
                None => return Err(Error::Undetermined(format!("direction of entries {r} and {i}"))),
            }
        }
        if !found {
            reps.push(i);
        }
    }
    if reps.len() <= 2 {
        Ok(Indecomposability::Violation {
            reason: format!("entries lie on {} line(s) through 0", reps.len()),
        })
    } else {
        Ok(Indecomposability::Ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBasis {
    /// Basis vectors in `sigma` coordinates.
    pub basis: [[SymbolicReal; 2]; 2],
    /// Integer coordinates of each `mu_j` in that basis.
    #[serde(with = "crate::rational::int_pairs")]
    pub coords: Vec<[BigInt; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum T2Decision {
    LatticeExists(LatticeBasis),
    No { reason: String, conditional: bool },
    Undetermined { reason: String },
}

fn flatten(mu: &[[SymbolicReal; 2]]) -> (Vec<String>, Vec<Vec<Q>>) {
    let names: BTreeSet<String> = mu.iter().flat_map(|m| m.iter().flat_map(|x| x.terms().keys().cloned())).collect();
    let names: Vec<String> = names.into_iter().collect();
    let rows = mu
        .iter()
        .map(|m| m.iter().flat_map(|x| names.iter().map(move |n| x.coeff(n))).collect())
        .collect();
    (names, rows)
}

fn unflatten(names: &[String], row: &[Q]) -> [SymbolicReal; 2] {
    let n = names.len();
    let part = |off: usize| {
        names
            .iter()
            .enumerate()
            .fold(SymbolicReal::zero(), |acc, (i, name)| acc.add(&SymbolicReal::term(name, row[off + i].clone())))
    };
    [part(0), part(n)]
}

fn std_vec(i: usize) -> [SymbolicReal; 2] {
    let mut v = [SymbolicReal::zero(), SymbolicReal::zero()];
    v[i] = SymbolicReal::constant(Q::one());
    v
}

/// Coordinates of `v` in the flattened basis `b`, which must be exact
/// integers.
fn integer_coords(v: &[Q], b: &[Vec<Q>]) -> Option<[BigInt; 2]> {
    let m = crate::linalg::Matrix::from_rows(b.to_vec()).transpose();
    let mut aug_rows = m.to_rows();
    for (row, x) in aug_rows.iter_mut().zip(v) {
        row.push(x.clone());
    }
    let aug = crate::linalg::Matrix::from_rows(aug_rows);
    let (r, piv) = aug.rref();
    if piv.contains(&b.len()) {
        return None;
    }
    let mut out = [BigInt::zero(), BigInt::zero()];
    for (i, &p) in piv.iter().enumerate() {
        let c = &r[(i, b.len())];
        if !c.is_integer() {
            return None;
        }
        out[p] = c.to_integer();
    }
    Some(out)
}

/// Decides whether the `mu_j` lie in a lattice of the dual plane and
/// returns an explicit basis when they do.
pub fn decide_t2(mu: &MuSpecT2) -> Result<T2Decision> {
    if let Indecomposability::Violation { reason } = check_indecomposable_t2(mu)? {
        return Err(Error::IndecomposabilityViolated(reason));
    }
    if mu.q() == 0 {
        return Ok(T2Decision::LatticeExists(LatticeBasis { basis: [std_vec(0), std_vec(1)], coords: vec![] }));
    }
    let (names, rows) = flatten(&mu.mu);
    let conditional = names.iter().any(|n| n != ONE);
    let den = common_denominator(rows.iter().flatten());
    let dq = Q::from_integer(den.clone());
    let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| (x * &dq).to_integer()).collect()).collect();
    let h = hermite_rows(&int_rows);
    let rank = h.len();
    if rank > 2 {
        return Ok(T2Decision::No {
            reason: format!("the entries generate a free abelian group of rank {rank} > 2"),
            conditional,
        });
    }
    let hq: Vec<Vec<Q>> = h.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone()) / &dq).collect()).collect();
    let b1 = unflatten(&names, &hq[0]);
    let basis = if rank == 2 {
        let b2 = unflatten(&names, &hq[1]);
        match parallel(&mu.basis, &b1, &b2)? {
            Some(true) => {
                return Ok(T2Decision::No {
                    reason: "the entries generate a rank-2 group inside a line, which is not discrete".into(),
                    conditional,
                })
            }
            Some(false) => [b1, b2],
            None => return Ok(T2Decision::Undetermined { reason: "sign of det(b1, b2) not certified".into() }),
        }
    } else {
        let x_nonzero = matches!(mu.basis.sign(&b1[0])?, Some(s) if s != 0);
        let y_nonzero = matches!(mu.basis.sign(&b1[1])?, Some(s) if s != 0);
        if x_nonzero {
            [b1, std_vec(1)]
        } else if y_nonzero {
            [b1, std_vec(0)]
        } else {
            return Ok(T2Decision::Undetermined { reason: "basis vector not certified nonzero".into() });
        }
    };
    let coords = rows
        .iter()
        .map(|r| {
            let flat_basis: Vec<Vec<Q>> = if rank == 2 { hq.clone() } else { vec![hq[0].clone()] };
            integer_coords(r, &flat_basis).map(|c| if rank == 2 { c } else { [c[0].clone(), BigInt::zero()] })
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Inconsistency("entry outside the computed lattice".into()))?;
    let out = LatticeBasis { basis, coords };
    verify_lattice_basis(mu, &out)?;
    Ok(T2Decision::LatticeExists(out))
}

/// Exact check that `mu_j = m_j1 b_1 + m_j2 b_2` for all `j`.
pub fn verify_lattice_basis(mu: &MuSpecT2, lb: &LatticeBasis) -> Result<()> {
    if lb.coords.len() != mu.q() {
        return Err(Error::NotInLattice("coordinate count".into()));
    }
    for (j, (m, c)) in mu.mu.iter().zip(&lb.coords).enumerate() {
        for axis in 0..2 {
            let v = lb.basis[0][axis]
                .scale(&Q::from_integer(c[0].clone()))
                .add(&lb.basis[1][axis].scale(&Q::from_integer(c[1].clone())));
            if v != m[axis] {
                return Err(Error::NotInLattice(format!("entry {j}")));
            }
        }
    }
    Ok(())
}

/// Canonical representative under permutations and sign changes; with
/// `scaling`, also modulo `mu -> s mu` (largest coordinate magnitude 1).
/// Scaling needs all coordinates to be rational multiples of each other.
pub fn mu_orbit_normalize_t2(mu: &MuSpecT2, scaling: bool) -> Result<MuSpecT2> {
    let basis = &mu.basis;
    let mut entries = mu.mu.clone();
    if scaling && !entries.is_empty() {
        let coords: Vec<(usize, SymbolicReal)> = entries
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.iter().cloned().map(move |x| (i, x)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        let mut largest = coords[0].1.clone();
        for (i, x) in &coords[1..] {
            let (ax, al) = (abs_sym(basis, x, *i)?, abs_sym(basis, &largest, *i)?);
            if compare(basis, &ax, &al, *i, *i)? == Ordering::Greater {
                largest = x.clone();
            }
        }
        let scale = abs_sym(basis, &largest, 0)?;
        entries = entries
            .iter()
            .map(|m| {
                let f = |x: &SymbolicReal| {
                    x.ratio_to(&scale).map(SymbolicReal::constant).ok_or_else(|| {
                        Error::InvalidInput("scaling normal form needs mutually commensurable coordinates".into())
                    })
                };
                Ok([if m[0].is_zero() { SymbolicReal::zero() } else { f(&m[0])? }, if m[1].is_zero() { SymbolicReal::zero() } else { f(&m[1])? }])
            })
            .collect::<Result<Vec<_>>>()?;
    }
    for (i, m) in entries.iter_mut().enumerate() {
        let lead = if m[0].is_zero() { &m[1] } else { &m[0] };
        match basis.sign(lead)? {
            Some(s) if s < 0 => *m = [m[0].neg(), m[1].neg()],
            Some(_) => {}
            None => return Err(Error::IncomparableEntries(i, i)),
        }
    }
    let sorted = sort_by_certified(&entries, |a, b, i, j| {
        match compare(basis, &a[0], &b[0], i, j)? {
            Ordering::Equal => compare(basis, &a[1], &b[1], i, j),
            o => Ok(o),
        }
    })?;
    Ok(MuSpecT2 { basis: mu.basis.clone(), mu: sorted, family: mu.family })
}

fn abs_sym(basis: &Basis, x: &SymbolicReal, i: usize) -> Result<SymbolicReal> {
    match basis.sign(x)? {
        Some(s) if s < 0 => Ok(x.neg()),
        Some(_) => Ok(x.clone()),
        None => Err(Error::IncomparableEntries(i, i)),
    }
}

/// Components `x_j y_k - x_k y_j` (`j < k`) of `mu(e_1) ^ mu(e_2)`, the
/// invariant separating metric isomorphism classes up to sign.
pub fn wedge_invariant(mu: &MuSpecT2) -> Result<Vec<Interval>> {
    let mut out = Vec::new();
    for j in 0..mu.q() {
        for k in j + 1..mu.q() {
            let (a, b) = (&mu.mu[j], &mu.mu[k]);
            out.push(det2(&mu.basis, &a[0], &b[0], &a[1], &b[1], Precision::Low)?.value);
        }
    }
    Ok(out)
}
