//! Build a lattice in the oscillator group `Osc_1`, check closure on words,
//! embed it numerically and compare the spectrum of the conjugation.

use cocompact::groups::{build_lattice_t1, closure_check, eigenvalue_check, LatticeModel, Osc1Embedding};
use cocompact::poly::IntPoly;

fn main() -> cocompact::Result<()> {
    let f = IntPoly::from_i64(&[1, -1, -1, -1, 1]);
    let lat = build_lattice_t1(&f, 2)?;
    let report = closure_check(&lat, 3)?;
    println!(
        "{} generators, {} words of length <= 3, {} violations",
        report.generators, report.words_checked, report.violations
    );
    let LatticeModel::Osc1(l) = &lat else { unreachable!() };
    let emb = Osc1Embedding::new(l.gamma())?;
    println!("t' = {}, mu = {:?}", emb.t_prime, emb.params.mu);
    println!("embedding residual {:.2e}", emb.residuals(l.gamma()));
    let eig = eigenvalue_check(&emb, &f)?;
    println!("eigenvalues match: {} (max deviation {:.2e})", eig.passed, eig.max_deviation);
    Ok(())
}
