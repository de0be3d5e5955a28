//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cocompact::criteria::{check_mu_t1, synthesize_mu_t1, decide_t2, Family, MuSpecT1, MuSpecT2, T1Membership, T2Decision};
use cocompact::groups::law::{dq_inv, dq_mul, osc2_inv, osc2_mul};
use cocompact::groups::{
    bch_crosscheck_ell, build_lattice_d0, build_lattice_t1, build_lattice_t2, closure_check, corrupt, eigenvalue_check,
    rational_grid, DqElem, DqParams, LatticeModel, Osc1Elem, Osc1Embedding, Osc1Params, Osc2Elem, Osc2Params,
};
use cocompact::poly::{isolate_roots, IntPoly, Tri};
use cocompact::rational::{q, qr, Q};
use cocompact::salem::{classify_f_plus, enumerate_f4, quadratic, salem4_closed_form, F4Params};
use cocompact::sympmat::{build_a_for_theorem1, commensurable, Commensurability, GammaA, GammaElem, SympPair};
use cocompact::Error;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// The quartic rule written out directly.
fn quartic_rule(a: i64, b: i64) -> bool {
    2 * a > (b + 2).abs() && b != 2 && b != a + 1 && b != -a + 1
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut members = 0;
    for a in -8..=8 {
        for b in -8..=8 {
            let p = IntPoly::from_i64(&[1, -a, b, -a, 1]);
            let by_roots = classify_f_plus(&p).map_err(err)?.is_member();
            ensure(by_roots == quartic_rule(a, b), format!("disagreement at ({a}, {b})"))?;
            members += by_roots as usize;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), format!("took {elapsed:?}"))?;
    Ok(format!("289 pairs, {members} members, 0 discrepancies, {:.2}s", elapsed.as_secs_f64()))
}

fn criterion2() -> Outcome {
    ensure(classify_f_plus(&sextic()).map_err(err)?.is_member(), "sextic rejected")?;
    for a in 3..=10 {
        ensure(classify_f_plus(&quadratic(a)).map_err(err)?.is_member(), format!("a = {a} rejected"))?;
    }
    for a in 0..=2 {
        ensure(!classify_f_plus(&quadratic(a)).map_err(err)?.is_member(), format!("a = {a} accepted"))?;
    }
    Ok("sextic and a = 3..10 accepted, a = 0, 1, 2 rejected".into())
}

fn criterion3() -> Outcome {
    let tol = qr(1, 10_000_000_000);
    let params = enumerate_f4(-8, 8, -8, 8).map_err(err)?;
    for &F4Params { a, b } in &params {
        let c = salem4_closed_form(F4Params::new(a, b), &tol).map_err(err)?;
        ensure(c.r.width() <= tol && c.t2.width() <= tol, format!("({a}, {b}) closed form too wide"))?;
        let roots = isolate_roots(&F4Params::new(a, b).poly(), &tol).map_err(err)?;
        let real = roots.iter().any(|z| z.is_real == Tri::Yes && z.re.intersects(&c.r));
        let half = c.t2.scale(&qr(1, 2));
        let circle = roots.iter().any(|z| z.on_unit_circle == Tri::Yes && z.re.intersects(&half));
        // Independent floating check of s against the root's argument.
        let s = c.s.mid_f64();
        let arg = roots
            .iter()
            .filter(|z| z.on_unit_circle == Tri::Yes)
            .map(|z| z.approx().1.atan2(z.approx().0).abs())
            .fold(f64::INFINITY, |m, t| m.min((t - s).abs()));
        ensure(real && circle && arg < 1e-9, format!("({a}, {b}) closed form misses the roots"))?;
    }
    Ok(format!("{} quartics, r and cos s intersect certified roots at 1e-10", params.len()))
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let mut words = 0;
    for (f, qn) in [(quadratic3(), 1), (quadratic3(), 2), (quartic(), 1)] {
        let lat = build_lattice_t1(&f, qn).map_err(err)?;
        let LatticeModel::Osc1(l) = &lat else { return Err("wrong family".into()) };
        let (a, j) = (l.pair.a(), l.pair.j());
        let qbar = f.degree() / 2 - 1;
        let expected = &f * &IntPoly::linear_root(1).pow(2 * (qn - qbar));
        ensure(is_charpoly(a, &expected), format!("charpoly of A is not {expected}"))?;
        ensure(&(&a.transpose() * j) * a == *j, "A^T J A != J")?;
        ensure(l.pair.verify().passed(), "LKO verification failed")?;
        let r = closure_check(&lat, 4).map_err(err)?;
        ensure(r.passed(), format!("closure failed for {f}, q = {qn}"))?;
        words += r.words_checked;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("3 lattices, {words} words of length <= 4, 0 violations, {:.2}s", elapsed.as_secs_f64()))
}

fn criterion5() -> Outcome {
    let mut words = 0;
    for fam in [Family::Osc2, Family::D] {
        let mu = MuSpecT2::rational(&[(q(1), q(0)), (q(0), q(1)), (q(1), q(1))], fam).map_err(err)?;
        let T2Decision::LatticeExists(lb) = decide_t2(&mu).map_err(err)? else {
            return Err(format!("{fam:?}: no lattice"));
        };
        let lat = build_lattice_t2(&mu, &lb).map_err(err)?;
        let r = closure_check(&lat, 3).map_err(err)?;
        ensure(r.passed(), format!("{fam:?} closure failed"))?;
        words += r.words_checked;
        for i in 0..lat.generators().len() {
            let bad = corrupt(&lat, i).map_err(err)?;
            match closure_check(&bad, 3) {
                Err(Error::ClosureViolation { .. }) => {}
                Ok(r) if !r.passed() => {}
                _ => return Err(format!("{fam:?}: corrupted generator {i} not caught")),
            }
        }
    }
    let r = closure_check(&build_lattice_d0(), 3).map_err(err)?;
    ensure(r.passed(), "D0 closure failed")?;
    Ok(format!("Osc2_3 and D_3 closed ({words} words), every corrupted generator caught, D_0 closed"))
}

fn rand_q(rng: &mut ChaCha8Rng) -> Q {
    qr(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

fn rand_pair(rng: &mut ChaCha8Rng) -> [Q; 2] {
    [rand_q(rng), rand_q(rng)]
}

fn rand_int_pair(rng: &mut ChaCha8Rng) -> [Q; 2] {
    [q(rng.gen_range(-3..=3)), q(rng.gen_range(-3..=3))]
}

fn rand_f(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-2.0..2.0)
}

fn rand_f2(rng: &mut ChaCha8Rng) -> [f64; 2] {
    [rand_f(rng), rand_f(rng)]
}

fn gamma_elem(rng: &mut ChaCha8Rng, dim: usize) -> GammaElem {
    GammaElem {
        z: qr(rng.gen_range(-6..=6), 2),
        v: (0..dim).map(|_| q(rng.gen_range(-4..=4))).collect(),
        n: rng.gen_range(-3..=3),
    }
}

const TRIPLES: usize = 1000;
const NUM_TOL: f64 = 1e-9;

fn criterion6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mu3 = vec![[q(1), q(0)], [q(0), q(1)], [q(1), q(1)]];

    // Exact Gamma(A).
    let pairs: Vec<SympPair> = [(quadratic3(), 1), (quadratic3(), 2), (quartic(), 1), (sextic(), 2)]
        .iter()
        .map(|(f, qn)| build_a_for_theorem1(f, *qn))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let gammas: Vec<GammaA> = pairs.into_iter().map(GammaA::new).collect::<Result<_, _>>().map_err(err)?;
    for g in &gammas {
        for _ in 0..TRIPLES {
            let (a, b, c) = (gamma_elem(&mut rng, g.dim()), gamma_elem(&mut rng, g.dim()), gamma_elem(&mut rng, g.dim()));
            let l = g.mul(&g.mul(&a, &b).map_err(err)?, &c).map_err(err)?;
            let r = g.mul(&a, &g.mul(&b, &c).map_err(err)?).map_err(err)?;
            ensure(l == r, "Gamma(A) not associative")?;
            ensure(g.mul(&a, &g.identity()).map_err(err)? == a, "Gamma(A) identity")?;
            ensure(g.mul(&a, &g.inverse(&a).map_err(err)?).map_err(err)? == g.identity(), "Gamma(A) inverse")?;
        }
    }

    // Exact Osc2 and D (normalized and plain units).
    let o2 = Osc2Params { m: mu3.clone() };
    let dqs = [DqParams::normalized(mu3.clone()), DqParams { m: mu3.clone(), ..DqParams::plain_d0() }];
    for _ in 0..TRIPLES {
        let mut e = || Osc2Elem { zeta: rand_pair(&mut rng), a: (0..3).map(|_| rand_pair(&mut rng)).collect(), tau: rand_int_pair(&mut rng) };
        let (a, b, c) = (e(), e(), e());
        let l = osc2_mul(&o2, &osc2_mul(&o2, &a, &b).map_err(err)?, &c).map_err(err)?;
        let r = osc2_mul(&o2, &a, &osc2_mul(&o2, &b, &c).map_err(err)?).map_err(err)?;
        ensure(l == r, "Osc2 not associative")?;
        ensure(osc2_mul(&o2, &a, &Osc2Elem::identity(3)).map_err(err)? == a, "Osc2 identity")?;
        ensure(osc2_mul(&o2, &a, &osc2_inv(&o2, &a).map_err(err)?).map_err(err)? == Osc2Elem::identity(3), "Osc2 inverse")?;
    }
    for p in &dqs {
        for _ in 0..TRIPLES {
            let mut e = || DqElem {
                zeta: rand_pair(&mut rng),
                a: (0..3).map(|_| rand_pair(&mut rng)).collect(),
                s: rand_q(&mut rng),
                tau: rand_int_pair(&mut rng),
            };
            let (a, b, c) = (e(), e(), e());
            let l = dq_mul(p, &dq_mul(p, &a, &b).map_err(err)?, &c).map_err(err)?;
            let r = dq_mul(p, &a, &dq_mul(p, &b, &c).map_err(err)?).map_err(err)?;
            ensure(l == r, "D not associative")?;
            ensure(dq_mul(p, &a, &DqElem::identity(3)).map_err(err)? == a, "D identity")?;
            ensure(dq_mul(p, &a, &dq_inv(p, &a).map_err(err)?).map_err(err)? == DqElem::identity(3), "D inverse")?;
        }
    }

    // Numeric models with irrational parameters.
    let mut worst: f64 = 0.0;
    let o1 = Osc1Params { mu: vec![1.7, 0.3, std::f64::consts::SQRT_2] };
    for _ in 0..TRIPLES {
        let mut e = || Osc1Elem { z: rand_f(&mut rng), a: (0..8).map(|_| rand_f(&mut rng)).collect(), t: rand_f(&mut rng) };
        let (a, b, c) = (e(), e(), e());
        let l = o1.mul(&o1.mul(&a, &b).map_err(err)?, &c).map_err(err)?;
        let r = o1.mul(&a, &o1.mul(&b, &c).map_err(err)?).map_err(err)?;
        worst = worst.max(l.max_abs_diff(&r));
        worst = worst.max(o1.mul(&a, &o1.inverse(&a).map_err(err)?).map_err(err)?.max_abs_diff(&o1.identity()));
        worst = worst.max(o1.mul(&a, &o1.identity()).map_err(err)?.max_abs_diff(&a));
    }
    let mf = vec![[0.7, -0.2], [0.1, 1.3], [0.8, 1.1]];
    let o2f = Osc2Params { m: mf.clone() };
    let df = DqParams { m: mf, c_alpha: 2.0f64.sqrt(), c_flat: 0.37 };
    for _ in 0..TRIPLES {
        let mut e = || Osc2Elem { zeta: rand_f2(&mut rng), a: (0..3).map(|_| rand_f2(&mut rng)).collect(), tau: rand_f2(&mut rng) };
        let (a, b, c) = (e(), e(), e());
        let l = osc2_mul(&o2f, &osc2_mul(&o2f, &a, &b).map_err(err)?, &c).map_err(err)?;
        let r = osc2_mul(&o2f, &a, &osc2_mul(&o2f, &b, &c).map_err(err)?).map_err(err)?;
        worst = worst.max(l.max_abs_diff(&r));
        worst = worst.max(osc2_mul(&o2f, &a, &osc2_inv(&o2f, &a).map_err(err)?).map_err(err)?.max_abs_diff(&Osc2Elem::identity(3)));
    }
    for _ in 0..TRIPLES {
        let mut e = || DqElem {
            zeta: rand_f2(&mut rng),
            a: (0..3).map(|_| rand_f2(&mut rng)).collect(),
            s: rand_f(&mut rng),
            tau: rand_f2(&mut rng),
        };
        let (a, b, c) = (e(), e(), e());
        let l = dq_mul(&df, &dq_mul(&df, &a, &b).map_err(err)?, &c).map_err(err)?;
        let r = dq_mul(&df, &a, &dq_mul(&df, &b, &c).map_err(err)?).map_err(err)?;
        worst = worst.max(l.max_abs_diff(&r));
        worst = worst.max(dq_mul(&df, &a, &dq_inv(&df, &a).map_err(err)?).map_err(err)?.max_abs_diff(&DqElem::identity(3)));
    }
    ensure(worst < NUM_TOL, format!("numeric residual {worst:e}"))?;

    // Spectrum of the t' conjugation on Osc1.
    let mut eig_dev: f64 = 0.0;
    for g in &gammas {
        let emb = Osc1Embedding::new(g).map_err(err)?;
        let f = g.block_poly().clone();
        let rep = eigenvalue_check(&emb, &f).map_err(err)?;
        ensure(rep.passed, format!("eigenvalues of e^(t'L) do not match {f}"))?;
        eig_dev = eig_dev.max(rep.max_deviation);
    }
    Ok(format!(
        "{TRIPLES} triples per family, exact residual 0, numeric residual {worst:.1e}, eigenvalue deviation {eig_dev:.1e}"
    ))
}

fn criterion7() -> Outcome {
    let grid = rational_grid(20);
    let mut n = 0;
    for p in [DqParams::normalized(vec![]), DqParams::plain_d0()] {
        for t in &grid {
            for u in &grid {
                let rep = bch_crosscheck_ell(&p, t, u);
                ensure(rep.equal, format!("mismatch at {t:?}, {u:?}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs on the 20x20 grid, exact equality in both unit systems"))
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut cycles = 0;
    for f in [quadratic3(), quartic(), sextic()] {
        let qbar = f.degree() / 2 - 1;
        for _ in 0..50 {
            let qn = qbar.max(1) + rng.gen_range(0..=1);
            let signs: Vec<i8> = (0..qbar).map(|_| if rng.gen() { 1 } else { -1 }).collect();
            let ks: Vec<i64> = (0..qn)
                .map(|_| {
                    let k: i64 = rng.gen_range(1..=5);
                    if rng.gen() { k } else { -k }
                })
                .collect();
            let mu = synthesize_mu_t1(&f, qn, &signs, &ks).map_err(err)?;
            let r = check_mu_t1(&mu, &f, 64).map_err(err)?;
            ensure(matches!(r, T1Membership::Member { .. }), format!("{f}: synthesized mu rejected: {r:?}"))?;
            cycles += 1;
        }
    }
    let one = MuSpecT1::rational(&[q(1)]).map_err(err)?;
    let r = check_mu_t1(&one, &quadratic3(), 64).map_err(err)?;
    ensure(r == T1Membership::NonMember { conditional: false }, format!("mu = (1): {r:?}"))?;
    Ok(format!("{cycles} cycles returned Member, mu = (1) certified NonMember"))
}

fn gamma(f: &IntPoly, qn: usize) -> Result<GammaA, String> {
    GammaA::new(build_a_for_theorem1(f, qn).map_err(err)?).map_err(err)
}

fn criterion9() -> Outcome {
    let g = gamma(&quadratic3(), 1)?;
    ensure(matches!(commensurable(&g, &g, 4, 4).map_err(err)?, Commensurability::Proven(_)), "reflexivity not proven")?;

    let pair = g.pair();
    let a2 = pair.a() * pair.a();
    let g2 = GammaA::new(SympPair::new(a2, pair.j().clone()).map_err(err)?).map_err(err)?;
    match commensurable(&g, &g2, 4, 4).map_err(err)? {
        Commensurability::Proven(w) if (w.n1, w.n2) == (2, 1) => {}
        other => return Err(format!("A vs A^2: {other:?}")),
    }

    match commensurable(&gamma(&quartic(), 1)?, &gamma(&quadratic3(), 1)?, 4, 4).map_err(err)? {
        Commensurability::Disproven { invariants } if invariants.iter().any(|s| s.contains("eigenvalue-1")) => {}
        other => return Err(format!("eigenvalue-1 mismatch: {other:?}")),
    }

    match commensurable(&gamma(&quartic(), 2)?, &gamma(&sextic(), 2)?, 4, 4).map_err(err)? {
        Commensurability::Disproven { invariants } if invariants.iter().any(|s| s.contains("degree mismatch")) => {}
        other => return Err(format!("degree 4 vs 6: {other:?}")),
    }
    Ok("reflexive, A ~ A^2 with (2, 1), eigenvalue-1 and degree mismatches disproven".into())
}

fn main() -> ExitCode {
    let criteria: [(u8, fn() -> Outcome); 9] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        match run() {
            Ok(msg) => println!("criterion {n} PASS: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n} FAIL: {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
