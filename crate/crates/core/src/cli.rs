//! JSON-in, JSON-out front end. Every subcommand reads one JSON document
//! (from `--input` or stdin) and prints one [`Verdict`].

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::criteria::{
    check_mu_t1, decide_t1, decide_t2, verify_lattice_basis, LatticeBasis, MuSpecT1, MuSpecT1Json, MuSpecT2,
    MuSpecT2Json, T1Decision, T1Membership, T2Decision, DEFAULT_OFFSET_BOUND, INDEPENDENCE_ASSUMPTION,
};
use crate::error::Error;
use crate::groups::{
    bch_crosscheck_ell, build_lattice_d0, build_lattice_t1_seeded, build_lattice_t2, closure_check, rational_grid,
    DqParams, LatticeModel, DEFAULT_WORD_LENGTH_T1, DEFAULT_WORD_LENGTH_T2,
};
use crate::poly::IntPoly;
use crate::rational::{fmt_q, parse_q, pow2, Q};
use crate::salem::{
    classify_f_plus_tol, enumerate_f4, quadratic, salem_equivalent, Classification, Equivalence, DEFAULT_K_BOUND,
    DEFAULT_TOL_BITS,
};
use crate::sympmat::{
    commensurable, verify_commensurability, Commensurability, CommensurabilityWitness, GammaA, SympPair,
    DEFAULT_POWER_BOUND, DEFAULT_SEARCH_BOUND, DEFAULT_SEED,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

/// Default half-width of the `F+_4` enumeration box.
pub const DEFAULT_ENUM_BOUND: i64 = 8;
/// Default coefficient height and degree for the first-theorem search.
pub const DEFAULT_COEFF_HEIGHT: i64 = 3;
pub const DEFAULT_DEGREE_BOUND: usize = 6;
pub const DEFAULT_GRID: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "cocompact", version, about = "Decide, build and verify cocompact lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Read the JSON input from this file instead of stdin.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Search bound; its meaning depends on the subcommand.
    #[arg(long, global = true)]
    pub bound: Option<i64>,
    /// Root tolerance as a rational, e.g. `1/1000000`.
    #[arg(long, global = true)]
    pub tol: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    SalemCheck,
    SalemEnum,
    SalemEquiv,
    MuCheckT1,
    DecideT1,
    DecideT2,
    BuildLattice,
    VerifyLattice,
    Commensurable,
    BchCheck,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: Option<u64>,
    pub bound: Option<i64>,
    pub tol: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Yes,
    No,
    Unknown,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<Value>,
    pub assumptions: Vec<String>,
    pub bounds_used: BTreeMap<String, Value>,
}

impl Verdict {
    fn new(status: Status) -> Self {
        Verdict { status, witness: None, detail: None, assumptions: vec![], bounds_used: BTreeMap::new() }
    }

    fn witness(mut self, w: impl Serialize) -> Self {
        self.witness = Some(to_value(w));
        self
    }

    fn detail(mut self, d: impl Serialize) -> Self {
        self.detail = Some(to_value(d));
        self
    }

    fn bound(mut self, name: &str, v: impl Serialize) -> Self {
        self.bounds_used.insert(name.into(), to_value(v));
        self
    }

    fn assume_if(mut self, cond: bool) -> Self {
        if cond {
            self.assumptions.push(INDEPENDENCE_ASSUMPTION.into());
        }
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.status != Status::Error {
            return EXIT_OK;
        }
        match self.detail.as_ref().and_then(|d| d.get("kind")).and_then(Value::as_str) {
            Some("schema") => EXIT_SCHEMA,
            Some("inconsistency") => EXIT_INCONSISTENT,
            _ => EXIT_ERROR,
        }
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("output types serialize")
}

/// Failure of a subcommand before a verdict could be formed.
enum Failure {
    Schema { path: String, message: String },
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn into_verdict(self) -> Verdict {
        let detail = match self {
            Failure::Schema { path, message } => json!({"kind": "schema", "path": path, "message": message}),
            Failure::Lib(e) => {
                let kind = match e {
                    Error::Inconsistency(_) | Error::ClosureViolation { .. } => "inconsistency",
                    _ => "error",
                };
                let mut d = json!({"kind": kind, "message": e.to_string()});
                if let Error::ClosureViolation { word } = &e {
                    d["word"] = to_value(word);
                }
                d
            }
        };
        Verdict::new(Status::Error).detail(detail)
    }
}

type Out = std::result::Result<Verdict, Failure>;

fn parse<T: DeserializeOwned>(v: &Value) -> std::result::Result<T, Failure> {
    serde_path_to_error::deserialize(v).map_err(|e| Failure::Schema { path: e.path().to_string(), message: e.inner().to_string() })
}

fn schema(path: &str, message: &str) -> Failure {
    Failure::Schema { path: path.into(), message: message.into() }
}

impl Options {
    fn tol(&self) -> std::result::Result<Q, Failure> {
        match &self.tol {
            Some(s) => parse_q(s).map_err(|e| schema("--tol", &e.to_string())),
            None => Ok(pow2(-DEFAULT_TOL_BITS)),
        }
    }

    fn bound_or(&self, default: i64) -> std::result::Result<i64, Failure> {
        match self.bound {
            Some(b) if b < 0 => Err(schema("--bound", "must be nonnegative")),
            Some(b) => Ok(b),
            None => Ok(default),
        }
    }
}

/// Runs one subcommand on a JSON document. Never panics on bad input:
/// malformed documents become `status: error` with the failing path.
pub fn run(cmd: Command, input: &str, opts: &Options) -> Verdict {
    let value: Value = match serde_json::from_str(input) {
        Ok(v) => v,
        Err(e) => return Failure::Schema { path: ".".into(), message: e.to_string() }.into_verdict(),
    };
    let out = match cmd {
        Command::SalemCheck => salem_check(&value, opts),
        Command::SalemEnum => salem_enum(&value, opts),
        Command::SalemEquiv => salem_equiv(&value, opts),
        Command::MuCheckT1 => mu_check_t1(&value, opts),
        Command::DecideT1 => decide_t1_cmd(&value, opts),
        Command::DecideT2 => decide_t2_cmd(&value),
        Command::BuildLattice => build_lattice(&value, opts),
        Command::VerifyLattice => verify_lattice(&value, opts),
        Command::Commensurable => commensurable_cmd(&value, opts),
        Command::BchCheck => bch_check(&value, opts),
    };
    out.unwrap_or_else(Failure::into_verdict)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyInput {
    poly: IntPoly,
}

fn salem_check(v: &Value, opts: &Options) -> Out {
    let inp: PolyInput = parse(v)?;
    let tol = opts.tol()?;
    let verdict = match classify_f_plus_tol(&inp.poly, &tol)? {
        Classification::Member { k, data } => Verdict::new(Status::Yes).witness(json!({"k": k, "data": data})),
        Classification::Rejected(why) => Verdict::new(Status::No).detail(json!({"reason": why, "text": why.to_string()})),
    };
    Ok(verdict.bound("tol", fmt_q(&tol)))
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct EnumInput {
    #[serde(default = "four")]
    degree: usize,
    a_min: Option<i64>,
    a_max: Option<i64>,
    b_min: Option<i64>,
    b_max: Option<i64>,
}

fn four() -> usize {
    4
}

fn salem_enum(v: &Value, opts: &Options) -> Out {
    let inp: EnumInput = parse(v)?;
    let b = opts.bound_or(DEFAULT_ENUM_BOUND)?;
    let (a0, a1) = (inp.a_min.unwrap_or(-b), inp.a_max.unwrap_or(b));
    match inp.degree {
        2 => {
            let members: Vec<Value> = (a0.max(3)..=a1)
                .filter(|&a| classify_f_plus_tol(&quadratic(a), &pow2(-16)).map(|c| c.is_member()).unwrap_or(false))
                .map(|a| json!({"a": a, "poly": quadratic(a)}))
                .collect();
            Ok(Verdict::new(Status::Yes)
                .witness(json!({"count": members.len(), "members": members}))
                .bound("a", [a0, a1]))
        }
        4 => {
            let (b0, b1) = (inp.b_min.unwrap_or(-b), inp.b_max.unwrap_or(b));
            let list = enumerate_f4(a0, a1, b0, b1)?;
            Ok(Verdict::new(Status::Yes)
                .witness(json!({"count": list.len(), "members": list}))
                .bound("a", [a0, a1])
                .bound("b", [b0, b1]))
        }
        d => Err(schema("degree", &format!("unsupported degree {d}, expected 2 or 4"))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EquivInput {
    p1: IntPoly,
    p2: IntPoly,
    k_bound: Option<usize>,
}

fn salem_equiv(v: &Value, opts: &Options) -> Out {
    let inp: EquivInput = parse(v)?;
    let k = match inp.k_bound {
        Some(k) => k,
        None => opts.bound_or(DEFAULT_K_BOUND as i64)? as usize,
    };
    let verdict = match salem_equivalent(&inp.p1, &inp.p2, k)? {
        Equivalence::Equivalent { k1, k2 } => Verdict::new(Status::Yes).witness(json!({"k1": k1, "k2": k2})),
        Equivalence::NotEquivalent { reason } => Verdict::new(Status::No).detail(json!({"reason": reason})),
        Equivalence::Unknown => Verdict::new(Status::Unknown),
    };
    Ok(verdict.bound("k_bound", k))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MuCheckInput {
    mu: MuSpecT1Json,
    f: IntPoly,
    offset_bound: Option<i64>,
}

fn has_symbols(symbols: &[crate::symbolic::SymbolJson]) -> bool {
    symbols.iter().any(|s| s.independent)
}

fn mu_check_t1(v: &Value, opts: &Options) -> Out {
    let inp: MuCheckInput = parse(v)?;
    let mu = MuSpecT1::from_json(&inp.mu)?;
    let bound = match inp.offset_bound {
        Some(b) => b,
        None => opts.bound_or(DEFAULT_OFFSET_BOUND)?,
    };
    let verdict = match check_mu_t1(&mu, &inp.f, bound)? {
        T1Membership::Member { assignment } => Verdict::new(Status::Yes).witness(json!({"assignment": assignment})),
        T1Membership::NonMember { conditional } => Verdict::new(Status::No).assume_if(conditional),
        T1Membership::Unknown => Verdict::new(Status::Unknown).assume_if(has_symbols(&inp.mu.symbols)),
    };
    Ok(verdict.bound("offset_bound", bound))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecideT1Input {
    mu: MuSpecT1Json,
    coeff_height: Option<i64>,
    degree_bound: Option<usize>,
}

fn decide_t1_cmd(v: &Value, opts: &Options) -> Out {
    let inp: DecideT1Input = parse(v)?;
    let mu = MuSpecT1::from_json(&inp.mu)?;
    let height = match inp.coeff_height {
        Some(h) => h,
        None => opts.bound_or(DEFAULT_COEFF_HEIGHT)?,
    };
    let degree = inp.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND);
    let verdict = match decide_t1(&mu, height, degree)? {
        T1Decision::LatticeExists { f, assignment } => {
            Verdict::new(Status::Yes).witness(json!({"f": f, "q": mu.q(), "assignment": assignment}))
        }
        T1Decision::NoWitnessFound { candidates, undecided } => {
            Verdict::new(Status::Unknown).detail(json!({"candidates": candidates, "undecided": undecided}))
        }
    };
    Ok(verdict
        .assume_if(has_symbols(&inp.mu.symbols))
        .bound("coeff_height", height)
        .bound("degree_bound", degree)
        .bound("offset_bound", DEFAULT_OFFSET_BOUND))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecideT2Input {
    mu: MuSpecT2Json,
    /// When present, the basis is verified instead of recomputed.
    basis: Option<LatticeBasis>,
}

fn decide_t2_cmd(v: &Value) -> Out {
    let inp: DecideT2Input = parse(v)?;
    let mu = MuSpecT2::from_json(&inp.mu)?;
    let conditional_inputs = has_symbols(&inp.mu.symbols);
    if let Some(b) = inp.basis {
        let lb = b;
        return Ok(match verify_lattice_basis(&mu, &lb) {
            Ok(()) => Verdict::new(Status::Yes).witness(&lb),
            Err(Error::NotInLattice(why)) => Verdict::new(Status::No).detail(json!({"reason": why})),
            Err(e) => return Err(e.into()),
        });
    }
    Ok(match decide_t2(&mu)? {
        T2Decision::LatticeExists(lb) => Verdict::new(Status::Yes).witness(&lb),
        T2Decision::No { reason, conditional } => {
            Verdict::new(Status::No).detail(json!({"reason": reason})).assume_if(conditional)
        }
        T2Decision::Undetermined { reason } => {
            Verdict::new(Status::Unknown).detail(json!({"reason": reason})).assume_if(conditional_inputs)
        }
    })
}

#[derive(Deserialize)]
#[serde(tag = "theorem", rename_all = "lowercase", deny_unknown_fields)]
enum BuildInput {
    T1 { f: IntPoly, q: usize },
    T2 { mu: MuSpecT2Json, basis: Option<LatticeBasis> },
    D0,
}

fn build_lattice(v: &Value, opts: &Options) -> Out {
    let inp: BuildInput = parse(v)?;
    match inp {
        BuildInput::T1 { f, q } => {
            let seed = opts.seed.unwrap_or(DEFAULT_SEED);
            let lat = build_lattice_t1_seeded(&f, q, seed)?;
            Ok(Verdict::new(Status::Yes).witness(&lat).bound("seed", seed))
        }
        BuildInput::T2 { mu, basis } => {
            let spec = MuSpecT2::from_json(&mu)?;
            let lb = match basis {
                Some(b) => b,
                None => match decide_t2(&spec)? {
                    T2Decision::LatticeExists(lb) => lb,
                    T2Decision::No { reason, conditional } => {
                        return Ok(Verdict::new(Status::No).detail(json!({"reason": reason})).assume_if(conditional))
                    }
                    T2Decision::Undetermined { reason } => {
                        return Ok(Verdict::new(Status::Unknown).detail(json!({"reason": reason})))
                    }
                },
            };
            let lat = build_lattice_t2(&spec, &lb)?;
            Ok(Verdict::new(Status::Yes).witness(&lat).assume_if(has_symbols(&mu.symbols)))
        }
        BuildInput::D0 => Ok(Verdict::new(Status::Yes).witness(build_lattice_d0())),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyInput {
    lattice: LatticeModel,
    word_length: Option<usize>,
}

fn verify_lattice(v: &Value, opts: &Options) -> Out {
    // A bare lattice (the witness of build-lattice) is accepted as is.
    let (lat, len) = if v.get("family").is_some() {
        (parse::<LatticeModel>(v)?, None)
    } else {
        let inp: VerifyInput = parse(v)?;
        (inp.lattice, inp.word_length)
    };
    let default = match lat {
        LatticeModel::Osc1(_) => DEFAULT_WORD_LENGTH_T1,
        _ => DEFAULT_WORD_LENGTH_T2,
    };
    let len = match len {
        Some(l) => l,
        None => opts.bound_or(default as i64)? as usize,
    };
    let report = closure_check(&lat, len)?;
    let status = if report.passed() { Status::Yes } else { Status::No };
    let verdict = if status == Status::Yes { Verdict::new(status).witness(&report) } else { Verdict::new(status).detail(&report) };
    Ok(verdict.bound("word_length", len))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CommInput {
    g1: SympPair,
    g2: SympPair,
    power_bound: Option<i64>,
    search_bound: Option<i64>,
    witness: Option<CommensurabilityWitness>,
}

fn commensurable_cmd(v: &Value, opts: &Options) -> Out {
    let inp: CommInput = parse(v)?;
    let g1 = GammaA::new(inp.g1)?;
    let g2 = GammaA::new(inp.g2)?;
    if let Some(w) = inp.witness {
        let ok = verify_commensurability(&g1, &g2, &w)?;
        return Ok(Verdict::new(if ok { Status::Yes } else { Status::No }).witness(w));
    }
    let power = inp.power_bound.unwrap_or(DEFAULT_POWER_BOUND);
    let search = match inp.search_bound {
        Some(s) => s,
        None => opts.bound_or(DEFAULT_SEARCH_BOUND)?,
    };
    let verdict = match commensurable(&g1, &g2, power, search)? {
        Commensurability::Proven(w) => {
            if !verify_commensurability(&g1, &g2, &w)? {
                return Err(Error::Inconsistency("search returned an invalid witness".into()).into());
            }
            Verdict::new(Status::Yes).witness(w)
        }
        Commensurability::Disproven { invariants } => Verdict::new(Status::No).detail(json!({"invariants": invariants})),
        Commensurability::Unknown => Verdict::new(Status::Unknown),
    };
    Ok(verdict.bound("power_bound", power).bound("search_bound", search))
}

#[derive(Deserialize, Default)]
#[serde(rename_all = "lowercase")]
enum UnitChoice {
    #[default]
    Normalized,
    Plain,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BchInput {
    #[serde(default)]
    units: UnitChoice,
    /// Explicit `[t, t_dot]` pairs; otherwise a square grid is used.
    pairs: Option<Vec<[[String; 2]; 2]>>,
    grid: Option<usize>,
}

fn bch_check(v: &Value, opts: &Options) -> Out {
    let inp: BchInput = parse(v)?;
    let p = match inp.units {
        UnitChoice::Normalized => DqParams::normalized(vec![]),
        UnitChoice::Plain => DqParams::plain_d0(),
    };
    let parse2 = |v: &[String; 2]| -> std::result::Result<[Q; 2], Failure> {
        Ok([
            parse_q(&v[0]).map_err(|e| schema("pairs", &e.to_string()))?,
            parse_q(&v[1]).map_err(|e| schema("pairs", &e.to_string()))?,
        ])
    };
    let (pairs, grid) = match inp.pairs {
        Some(ps) => (ps.iter().map(|[a, b]| Ok((parse2(a)?, parse2(b)?))).collect::<std::result::Result<Vec<_>, Failure>>()?, None),
        None => {
            let n = match inp.grid {
                Some(n) => n,
                None => opts.bound_or(DEFAULT_GRID as i64)? as usize,
            };
            let pts = rational_grid(n);
            let pairs = pts.iter().flat_map(|a| pts.iter().map(move |b| (a.clone(), b.clone()))).collect();
            (pairs, Some(n))
        }
    };
    let reports: Vec<_> = pairs.iter().map(|(a, b)| bch_crosscheck_ell(&p, a, b)).collect();
    let mismatches: Vec<_> = reports.iter().filter(|r| !r.equal).collect();
    let verdict = if mismatches.is_empty() {
        Verdict::new(Status::Yes).witness(json!({"pairs_checked": reports.len()}))
    } else {
        // The two sides are exact formulas for the same product.
        return Err(Error::Inconsistency(format!("{} BCH mismatches, first {:?}", mismatches.len(), to_value(mismatches[0]))).into());
    };
    Ok(match grid {
        Some(n) => verdict.bound("grid", n),
        None => verdict,
    })
}

/// Entry point of the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let mut input = String::new();
    let read = match &cli.input {
        Some(path) => std::fs::read_to_string(path).map(|s| input = s),
        None => std::io::stdin().read_to_string(&mut input).map(|_| ()),
    };
    let opts = Options { seed: cli.seed, bound: cli.bound, tol: cli.tol.clone() };
    let verdict = match read {
        Ok(()) => run(cli.command, &input, &opts),
        Err(e) => Failure::Lib(Error::InvalidInput(format!("cannot read input: {e}"))).into_verdict(),
    };
    let text = serde_json::to_string_pretty(&verdict).expect("verdicts serialize");
    // A closed stdout (e.g. piped into `head`) is not an error of ours.
    let _ = writeln!(std::io::stdout(), "{text}");
    verdict.exit_code()
}
