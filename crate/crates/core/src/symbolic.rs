//! Real numbers written as rational combinations of named constants.
//!
//! Every constant has a certified enclosure. Constants are assumed to be
//! linearly independent over `Q` together with `1` unless declared
//! otherwise; decisions that rely on this say so in their verdicts.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{self, Interval};
use crate::poly::IntPoly;
use crate::rational::{fmt_q, parse_q, pow2, Q};
use crate::salem::{classify_f_plus_tol, SalemData};

/// Name of the rational unit.
pub const ONE: &str = "1";
pub const PI: &str = "pi";

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Precision {
    Low,
    High,
}

impl Precision {
    pub fn bits(self) -> u32 {
        match self {
            Precision::Low => 96,
            Precision::High => 256,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Source {
    One,
    Pi,
    /// Only an enclosure is known.
    Declared { interval: Interval },
    /// `s_j / ln r` for the Salem polynomial `poly`, `j` counted from 1 in
    /// order of increasing angle.
    SalemAngle { poly: IntPoly, j: usize },
    /// `2 pi / ln r` for the Salem polynomial `poly`.
    TwoPiOverLog { poly: IntPoly },
}

impl Source {
    /// Salem polynomial this constant is derived from.
    pub fn salem_poly(&self) -> Option<&IntPoly> {
        match self {
            Source::SalemAngle { poly, .. } | Source::TwoPiOverLog { poly } => Some(poly),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SymbolDef {
    pub source: Source,
    pub independent: bool,
    cache: [OnceLock<Interval>; 2],
}

impl PartialEq for SymbolDef {
    fn eq(&self, o: &Self) -> bool {
        self.source == o.source && self.independent == o.independent
    }
}

impl Eq for SymbolDef {}

impl SymbolDef {
    pub fn new(source: Source) -> Self {
        SymbolDef { source, independent: true, cache: Default::default() }
    }

    pub fn value(&self, prec: Precision) -> Result<Interval> {
        let slot = &self.cache[prec as usize];
        if let Some(v) = slot.get() {
            return Ok(v.clone());
        }
        let v = compute(&self.source, prec.bits())?;
        Ok(slot.get_or_init(|| v).clone())
    }
}

fn salem_data(poly: &IntPoly, bits: u32) -> Result<SalemData> {
    classify_f_plus_tol(poly, &pow2(-(bits as i64)))?
        .data()
        .cloned()
        .ok_or_else(|| Error::NotSalem(poly.to_string()))
}

fn compute(src: &Source, bits: u32) -> Result<Interval> {
    Ok(match src {
        Source::One => Interval::point(Q::one()),
        Source::Pi => interval::pi(bits),
        Source::Declared { interval } => interval.clone(),
        Source::SalemAngle { poly, j } => {
            let data = salem_data(poly, bits + 8)?;
            let pair = data
                .unit_pairs
                .get(j.wrapping_sub(1))
                .ok_or_else(|| Error::InvalidInput(format!("{poly} has no angle number {j}")))?;
            let ln_r = data.ln_r(bits + 8);
            pair.angle.div(&ln_r).expect("ln r > 0").round_out(bits)
        }
        Source::TwoPiOverLog { poly } => {
            let data = salem_data(poly, bits + 8)?;
            let ln_r = data.ln_r(bits + 8);
            let two_pi = interval::pi(bits + 8).scale(&Q::from_integer(2.into()));
            two_pi.div(&ln_r).expect("ln r > 0").round_out(bits)
        }
    })
}

/// Named constants available to [`SymbolicReal`] values. Always contains
/// `1` and `pi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Basis {
    symbols: BTreeMap<String, SymbolDef>,
}

impl Default for Basis {
    fn default() -> Self {
        let mut symbols = BTreeMap::new();
        symbols.insert(ONE.to_string(), SymbolDef::new(Source::One));
        symbols.insert(PI.to_string(), SymbolDef::new(Source::Pi));
        Basis { symbols }
    }
}

impl Basis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str, source: Source) -> Result<()> {
        self.insert_def(name, SymbolDef::new(source))
    }

    pub fn insert_def(&mut self, name: &str, def: SymbolDef) -> Result<()> {
        if let Some(old) = self.symbols.get(name) {
            if *old != def {
                return Err(Error::InvalidInput(format!("symbol {name:?} declared twice")));
            }
            return Ok(());
        }
        self.symbols.insert(name.to_string(), def);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&SymbolDef> {
        self.symbols.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.symbols.keys()
    }

    /// Merges the symbols of `other`; identical names must agree.
    pub fn merge(&mut self, other: &Basis) -> Result<()> {
        for (k, v) in &other.symbols {
            self.insert_def(k, v.clone())?;
        }
        Ok(())
    }

    /// True when every symbol of `x` is declared independent.
    pub fn independence_assumed(&self, x: &SymbolicReal) -> bool {
        x.terms.keys().all(|k| self.symbols.get(k).is_some_and(|d| d.independent))
    }

    pub fn eval(&self, x: &SymbolicReal, prec: Precision) -> Result<Interval> {
        let mut acc = Interval::point(Q::zero());
        for (name, c) in &x.terms {
            let def = self
                .symbols
                .get(name)
                .ok_or_else(|| Error::InvalidInput(format!("undeclared symbol {name:?}")))?;
            acc = &acc + &def.value(prec)?.scale(c);
        }
        Ok(acc.round_out(prec.bits() + 16))
    }

    /// Certified sign; formally zero values return `0` without evaluation.
    pub fn sign(&self, x: &SymbolicReal) -> Result<Option<i32>> {
        if x.is_zero() {
            return Ok(Some(0));
        }
        for prec in [Precision::Low, Precision::High] {
            if let Some(s) = self.eval(x, prec)?.sign() {
                if s != 0 {
                    return Ok(Some(s));
                }
            }
        }
        Ok(None)
    }

    pub fn check(&self, x: &SymbolicReal) -> Result<()> {
        for k in x.terms.keys() {
            if !self.symbols.contains_key(k) {
                return Err(Error::InvalidInput(format!("undeclared symbol {k:?}")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Vec<SymbolJson> {
        self.symbols
            .iter()
            .filter(|(k, _)| k.as_str() != ONE && k.as_str() != PI)
            .map(|(k, d)| SymbolJson {
                name: k.clone(),
                interval: d.value(Precision::Low).ok().map(|i| i.to_decimal_pair(30)),
                source: match &d.source {
                    Source::Declared { .. } => None,
                    s => Some(s.clone()),
                },
                independent: d.independent,
            })
            .collect()
    }

    pub fn from_json(symbols: &[SymbolJson]) -> Result<Basis> {
        let mut b = Basis::new();
        for s in symbols {
            let source = match (&s.source, &s.interval) {
                (Some(src), _) => src.clone(),
                (None, Some([lo, hi])) => {
                    let (lo, hi) = (parse_q(lo)?, parse_q(hi)?);
                    if lo > hi {
                        return Err(Error::InvalidInput(format!("empty interval for {:?}", s.name)));
                    }
                    Source::Declared { interval: Interval::new(lo, hi) }
                }
                (None, None) => {
                    return Err(Error::InvalidInput(format!("symbol {:?} needs an interval or a source", s.name)))
                }
            };
            let mut def = SymbolDef::new(source);
            def.independent = s.independent;
            b.insert_def(&s.name, def)?;
        }
        Ok(b)
    }
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
    #[serde(default = "default_true")]
    pub independent: bool,
}

/// Finite `Q`-linear combination of named constants; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct SymbolicReal {
    terms: BTreeMap<String, Q>,
}

impl SymbolicReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::term(ONE, c)
    }

    pub fn symbol(name: &str) -> Self {
        Self::term(name, Q::one())
    }

    pub fn term(name: &str, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(name.to_string(), c);
        }
        SymbolicReal { terms }
    }

    pub fn terms(&self) -> &BTreeMap<String, Q> {
        &self.terms
    }

    pub fn coeff(&self, name: &str) -> Q {
        self.terms.get(name).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when only the rational unit occurs.
    pub fn as_rational(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(ONE).cloned(),
            _ => None,
        }
    }

    /// `lambda` with `self = lambda * other`, if it exists.
    pub fn ratio_to(&self, other: &SymbolicReal) -> Option<Q> {
        let (name, c) = other.terms.iter().next()?;
        let lambda = self.coeff(name) / c;
        (self == &other.scale(&lambda)).then_some(lambda)
    }

    pub fn add(&self, o: &SymbolicReal) -> SymbolicReal {
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            let e = terms.entry(k.clone()).or_insert_with(Q::zero);
            *e += v;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        SymbolicReal { terms }
    }

    pub fn sub(&self, o: &SymbolicReal) -> SymbolicReal {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> SymbolicReal {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> SymbolicReal {
        if c.is_zero() {
            return SymbolicReal::zero();
        }
        SymbolicReal { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }
}

impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if k == ONE {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{}*{k}", fmt_q(&a))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    sym: String,
    coef: CoefJson,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoefJson {
    Str(String),
    Int(i64),
}

impl Serialize for SymbolicReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms
            .iter()
            .map(|(k, c)| TermJson { sym: k.clone(), coef: CoefJson::Str(fmt_q(c)) })
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

/// A term list, or a bare rational as shorthand for a constant.
#[derive(Deserialize)]
#[serde(untagged)]
enum SymbolicJson {
    Terms(Vec<TermJson>),
    Int(i64),
    Str(String),
}

impl<'de> Deserialize<'de> for SymbolicReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = match SymbolicJson::deserialize(d)? {
            SymbolicJson::Terms(t) => t,
            SymbolicJson::Int(n) => return Ok(SymbolicReal::constant(Q::from_integer(n.into()))),
            SymbolicJson::Str(s) => return parse_q(&s).map(SymbolicReal::constant).map_err(serde::de::Error::custom),
        };
        let mut out = SymbolicReal::zero();
        for t in raw {
            let c = match t.coef {
                CoefJson::Str(s) => parse_q(&s).map_err(serde::de::Error::custom)?,
                CoefJson::Int(n) => Q::from_integer(n.into()),
            };
            out = out.add(&SymbolicReal::term(&t.sym, c));
        }
        Ok(out)
    }
}

/// `det [[a, b], [c, d]] = a d - b c` as a formal quadratic form in the
/// symbols, together with its certified value.
pub struct FormalDet {
    pub formally_zero: bool,
    pub value: Interval,
}

pub fn det2(basis: &Basis, a: &SymbolicReal, b: &SymbolicReal, c: &SymbolicReal, d: &SymbolicReal, prec: Precision) -> Result<FormalDet> {
    let mut quad: BTreeMap<(String, String), Q> = BTreeMap::new();
    let mut acc = |x: &SymbolicReal, y: &SymbolicReal, sign: i64| {
        for (k1, c1) in &x.terms {
            for (k2, c2) in &y.terms {
                let key = if k1 <= k2 { (k1.clone(), k2.clone()) } else { (k2.clone(), k1.clone()) };
                *quad.entry(key).or_insert_with(Q::zero) += c1 * c2 * Q::from_integer(sign.into());
            }
        }
    };
    acc(a, d, 1);
    acc(b, c, -1);
    let formally_zero = quad.values().all(Zero::is_zero);
    let value = &(&basis.eval(a, prec)? * &basis.eval(d, prec)?) - &(&basis.eval(b, prec)? * &basis.eval(c, prec)?);
    Ok(FormalDet { formally_zero, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    #[test]
    fn arithmetic_and_display() {
        let x = SymbolicReal::symbol("a").add(&SymbolicReal::constant(qr(1, 2)));
        let y = x.sub(&SymbolicReal::symbol("a"));
        assert_eq!(y.as_rational(), Some(qr(1, 2)));
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.to_string(), "1/2 + a");
        assert_eq!(x.scale(&q(4)).ratio_to(&x), Some(q(4)));
    }

    #[test]
    fn pi_and_declared() {
        let mut b = Basis::new();
        b.insert("sqrt2", Source::Declared { interval: Interval::new(qr(141421, 100000), qr(141422, 100000)) }).unwrap();
        let v = b.eval(&SymbolicReal::symbol(PI).scale(&q(2)), Precision::Low).unwrap();
        assert!((v.mid_f64() - 2.0 * std::f64::consts::PI).abs() < 1e-15);
        let d = SymbolicReal::symbol("sqrt2").sub(&SymbolicReal::constant(q(1)));
        assert_eq!(b.sign(&d).unwrap(), Some(1));
    }

    #[test]
    fn salem_derived() {
        let mut b = Basis::new();
        let f = crate::salem::quadratic(3);
        b.insert("tau", Source::TwoPiOverLog { poly: f }).unwrap();
        let v = b.eval(&SymbolicReal::symbol("tau"), Precision::Low).unwrap();
        let r: f64 = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((v.mid_f64() - 2.0 * std::f64::consts::PI / r.ln()).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let x: SymbolicReal = serde_json::from_str(r#"[{"sym":"a","coef":"2/3"},{"sym":"1","coef":1}]"#).unwrap();
        assert_eq!(x.coeff("a"), qr(2, 3));
        let s = serde_json::to_string(&x).unwrap();
        let back: SymbolicReal = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
