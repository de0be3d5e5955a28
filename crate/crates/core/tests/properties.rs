mod common;

use cocompact::criteria::{check_mu_t1, synthesize_mu_t1, T1Membership};
use cocompact::groups::law::{dq_inv, dq_mul, osc2_inv, osc2_mul};
use cocompact::groups::{
    bch_crosscheck_ell, rational_grid, DqElem, DqParams, Osc1Embedding, Osc1Params, Osc2Elem, Osc2Params,
};
use cocompact::linalg::Matrix;
use cocompact::poly::{irreducible_over_z, IntPoly};
use cocompact::rational::{q, qr, Q};
use cocompact::salem::{companion, quadratic};
use cocompact::sympmat::{build_a_for_theorem1, commensurable, GammaA, GammaElem, SympPair};
use common::*;
use proptest::prelude::*;
use std::sync::OnceLock;

fn monic(coeffs: Vec<i64>) -> Vec<i64> {
    let mut c = coeffs;
    c.push(1);
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn irreducibility_matches_kronecker(c in (1usize..=6).prop_flat_map(|d| prop::collection::vec(-4i64..=4, d))) {
        let f = monic(c);
        let p = IntPoly::from_i64(&f);
        prop_assert_eq!(irreducible_over_z(&p).unwrap(), kronecker_irreducible(&f), "{}", p);
    }
}

#[test]
fn irreducibility_exhaustive_low_degree() {
    for d in 1..=4u32 {
        for idx in 0..9i64.pow(d) {
            let mut c: Vec<i64> = (0..d).map(|i| (idx / 9i64.pow(i)) % 9 - 4).collect();
            c.push(1);
            let p = IntPoly::from_i64(&c);
            assert_eq!(irreducible_over_z(&p).unwrap(), kronecker_irreducible(&c), "{p}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn companion_has_charpoly_f(c in (1usize..=8).prop_flat_map(|d| prop::collection::vec(-20i64..=20, d))) {
        let f = IntPoly::from_i64(&monic(c));
        let m = companion(&f).unwrap();
        prop_assert!(is_charpoly(&m, &f));
    }
}

fn theorem1_pairs() -> &'static Vec<SympPair> {
    static PAIRS: OnceLock<Vec<SympPair>> = OnceLock::new();
    PAIRS.get_or_init(|| {
        [(quadratic3(), 1), (quadratic3(), 2), (quartic(), 1), (quartic(), 2), (sextic(), 2), (quadratic(7), 1)]
            .iter()
            .map(|(f, q)| build_a_for_theorem1(f, *q).unwrap())
            .collect()
    })
}

#[test]
fn powers_preserve_form() {
    for pair in theorem1_pairs() {
        let (a, j) = (pair.a(), pair.j());
        for k in -4..=4 {
            let ak = a.pow(k).unwrap();
            assert_eq!(&(&ak.transpose() * j) * &ak, *j);
        }
        // J A J^-1 = (A^T)^-1
        let lhs = &(j * a) * &j.inverse().unwrap();
        assert_eq!(lhs, a.transpose().inverse().unwrap());
    }
}

fn gamma_elem(dim: usize) -> impl Strategy<Value = GammaElem> {
    (-6i64..=6, prop::collection::vec(-4i64..=4, dim), -3i64..=3)
        .prop_map(|(z, v, n)| GammaElem { z: qr(z, 2), v: v.into_iter().map(q).collect(), n })
}

fn gammas() -> &'static Vec<GammaA> {
    static G: OnceLock<Vec<GammaA>> = OnceLock::new();
    G.get_or_init(|| theorem1_pairs().iter().map(|p| GammaA::new(p.clone()).unwrap()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gamma_group_axioms(
        (i, a, b, c) in (0usize..6).prop_flat_map(|i| {
            let d = gammas()[i].dim();
            (Just(i), gamma_elem(d), gamma_elem(d), gamma_elem(d))
        })
    ) {
        let g = &gammas()[i];
        let l = g.mul(&g.mul(&a, &b).unwrap(), &c).unwrap();
        let r = g.mul(&a, &g.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(g.mul(&a, &g.identity()).unwrap(), a.clone());
        prop_assert_eq!(g.mul(&a, &g.inverse(&a).unwrap()).unwrap(), g.identity());
        prop_assert!(g.is_member(&g.mul(&a, &b).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn commensurable_is_symmetric(i in 0usize..6, j in 0usize..6) {
        let (g1, g2) = (&gammas()[i], &gammas()[j]);
        let ab = commensurable(g1, g2, 4, 4).unwrap();
        let ba = commensurable(g2, g1, 4, 4).unwrap();
        prop_assert_eq!(std::mem::discriminant(&ab), std::mem::discriminant(&ba));
    }
}

// Group laws of the exact and numeric models.

fn rat() -> impl Strategy<Value = Q> + Clone {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| qr(n, d))
}

fn int() -> impl Strategy<Value = Q> + Clone {
    (-3i64..=3).prop_map(q)
}

fn pair(s: impl Strategy<Value = Q> + Clone) -> impl Strategy<Value = [Q; 2]> {
    (s.clone(), s).prop_map(|(a, b)| [a, b])
}

fn dq_elem(qn: usize) -> impl Strategy<Value = DqElem<Q>> {
    (pair(rat()), prop::collection::vec(pair(rat()), qn), rat(), pair(int()))
        .prop_map(|(zeta, a, s, tau)| DqElem { zeta, a, s, tau })
}

fn osc2_elem(qn: usize) -> impl Strategy<Value = Osc2Elem<Q>> {
    (pair(rat()), prop::collection::vec(pair(rat()), qn), pair(int())).prop_map(|(zeta, a, tau)| Osc2Elem { zeta, a, tau })
}

fn mu3() -> Vec<[Q; 2]> {
    vec![[q(1), q(0)], [q(0), q(1)], [q(1), q(1)]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dq_exact_axioms(g in dq_elem(3), h in dq_elem(3), k in dq_elem(3), plain in any::<bool>()) {
        let p = if plain { DqParams { m: mu3(), ..DqParams::plain_d0() } } else { DqParams::normalized(mu3()) };
        let l = dq_mul(&p, &dq_mul(&p, &g, &h).unwrap(), &k).unwrap();
        let r = dq_mul(&p, &g, &dq_mul(&p, &h, &k).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(dq_mul(&p, &g, &DqElem::identity(3)).unwrap(), g.clone());
        prop_assert_eq!(dq_mul(&p, &DqElem::identity(3), &g).unwrap(), g.clone());
        prop_assert_eq!(dq_mul(&p, &g, &dq_inv(&p, &g).unwrap()).unwrap(), DqElem::identity(3));
        prop_assert_eq!(dq_mul(&p, &dq_inv(&p, &g).unwrap(), &g).unwrap(), DqElem::identity(3));
    }

    #[test]
    fn osc2_exact_axioms(g in osc2_elem(3), h in osc2_elem(3), k in osc2_elem(3)) {
        let p = Osc2Params { m: mu3() };
        let l = osc2_mul(&p, &osc2_mul(&p, &g, &h).unwrap(), &k).unwrap();
        let r = osc2_mul(&p, &g, &osc2_mul(&p, &h, &k).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(osc2_mul(&p, &g, &Osc2Elem::identity(3)).unwrap(), g.clone());
        prop_assert_eq!(osc2_mul(&p, &g, &osc2_inv(&p, &g).unwrap()).unwrap(), Osc2Elem::identity(3));
    }
}

fn real() -> impl Strategy<Value = f64> + Clone {
    -2.0f64..2.0
}

fn real2() -> impl Strategy<Value = [f64; 2]> {
    (real(), real()).prop_map(|(a, b)| [a, b])
}

fn dq_num(qn: usize) -> impl Strategy<Value = DqElem<f64>> {
    (real2(), prop::collection::vec(real2(), qn), real(), real2()).prop_map(|(zeta, a, s, tau)| DqElem { zeta, a, s, tau })
}

fn osc2_num(qn: usize) -> impl Strategy<Value = Osc2Elem<f64>> {
    (real2(), prop::collection::vec(real2(), qn), real2()).prop_map(|(zeta, a, tau)| Osc2Elem { zeta, a, tau })
}

fn osc1_num(qn: usize) -> impl Strategy<Value = cocompact::groups::Osc1Elem> {
    (real(), prop::collection::vec(real(), 2 + 2 * qn), real()).prop_map(|(z, a, t)| cocompact::groups::Osc1Elem { z, a, t })
}

const TOL: f64 = 1e-9;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dq_numeric_axioms(g in dq_num(3), h in dq_num(3), k in dq_num(3)) {
        // Irrational rotation speeds: `m` is not integral here.
        let p = DqParams { m: vec![[0.7, -0.2], [0.1, 1.3], [0.8, 1.1]], c_alpha: 2.0f64.sqrt(), c_flat: 0.37 };
        let l = dq_mul(&p, &dq_mul(&p, &g, &h).unwrap(), &k).unwrap();
        let r = dq_mul(&p, &g, &dq_mul(&p, &h, &k).unwrap()).unwrap();
        prop_assert!(l.max_abs_diff(&r) < TOL);
        prop_assert!(dq_mul(&p, &g, &dq_inv(&p, &g).unwrap()).unwrap().max_abs_diff(&DqElem::identity(3)) < TOL);
        prop_assert!(dq_mul(&p, &g, &DqElem::identity(3)).unwrap().max_abs_diff(&g) < TOL);
    }

    #[test]
    fn osc2_numeric_axioms(g in osc2_num(3), h in osc2_num(3), k in osc2_num(3)) {
        let p = Osc2Params { m: vec![[0.7, -0.2], [0.1, 1.3], [0.8, 1.1]] };
        let l = osc2_mul(&p, &osc2_mul(&p, &g, &h).unwrap(), &k).unwrap();
        let r = osc2_mul(&p, &g, &osc2_mul(&p, &h, &k).unwrap()).unwrap();
        prop_assert!(l.max_abs_diff(&r) < TOL);
        prop_assert!(osc2_mul(&p, &g, &osc2_inv(&p, &g).unwrap()).unwrap().max_abs_diff(&Osc2Elem::identity(3)) < TOL);
    }

    #[test]
    fn osc1_numeric_axioms(g in osc1_num(2), h in osc1_num(2), k in osc1_num(2)) {
        let p = Osc1Params { mu: vec![1.7, 0.3] };
        let l = p.mul(&p.mul(&g, &h).unwrap(), &k).unwrap();
        let r = p.mul(&g, &p.mul(&h, &k).unwrap()).unwrap();
        prop_assert!(l.max_abs_diff(&r) < TOL);
        prop_assert!(p.mul(&g, &p.inverse(&g).unwrap()).unwrap().max_abs_diff(&p.identity()) < TOL);
        prop_assert!(p.mul(&p.identity(), &g).unwrap().max_abs_diff(&g) < TOL);
    }
}

fn embeddings() -> &'static Vec<Osc1Embedding> {
    static E: OnceLock<Vec<Osc1Embedding>> = OnceLock::new();
    E.get_or_init(|| gammas().iter().map(|g| Osc1Embedding::new(g).unwrap()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// The abstract law and the numeric law agree through the embedding.
    #[test]
    fn osc1_abstract_matches_numeric(
        (i, a, b) in (0usize..6).prop_flat_map(|i| {
            let d = gammas()[i].dim();
            (Just(i), gamma_elem(d), gamma_elem(d))
        })
    ) {
        let (g, e) = (&gammas()[i], &embeddings()[i]);
        let lhs = e.embed(&g.mul(&a, &b).unwrap());
        let rhs = e.params.mul(&e.embed(&a), &e.embed(&b)).unwrap();
        let scale = 1.0f64.max(max_abs(&lhs.a)).max(lhs.z.abs());
        prop_assert!(lhs.max_abs_diff(&rhs) < TOL * scale, "{} vs {:?}", lhs.max_abs_diff(&rhs), lhs);
    }
}

#[test]
fn bch_grid_both_unit_systems() {
    let pts = rational_grid(20);
    for p in [DqParams::normalized(vec![]), DqParams::plain_d0()] {
        for t in &pts {
            for u in &pts {
                assert!(bch_crosscheck_ell(&p, t, u).equal, "{t:?} {u:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn synthesized_mu_is_member(
        fixture in 0usize..3,
        extra in 0usize..2,
        signs in prop::collection::vec(prop::bool::ANY, 2),
        ks in prop::collection::vec((-5i64..=5).prop_filter("nonzero", |k| *k != 0), 4),
    ) {
        let f = [quadratic3(), quartic(), sextic()][fixture].clone();
        let qbar = f.degree() / 2 - 1;
        let qn = qbar.max(1) + extra;
        let signs: Vec<i8> = signs[..qbar].iter().map(|&s| if s { 1 } else { -1 }).collect();
        let mu = synthesize_mu_t1(&f, qn, &signs, &ks[..qn]).unwrap();
        let r = check_mu_t1(&mu, &f, 64).unwrap();
        prop_assert!(matches!(r, T1Membership::Member { .. }), "{:?}", r);
    }
}

#[test]
fn matrix_oracle_sanity() {
    let m = Matrix::from_i64(&[&[0, -1], &[1, 3]]);
    assert!(is_charpoly(&m, &quadratic3()));
    assert!(!is_charpoly(&m, &quadratic(4)));
}
