//! Decide whether the vectors `mu_j` lie in a lattice of the plane.

use cocompact::criteria::{decide_t2, Family, MuSpecT2};
use cocompact::interval::Interval;
use cocompact::rational::{q, qr};
use cocompact::symbolic::{Basis, Source, SymbolicReal};

fn main() -> cocompact::Result<()> {
    let mu = MuSpecT2::rational(&[(q(1), q(0)), (q(0), q(1)), (q(1), q(1))], Family::D)?;
    println!("(e1, e2, e1 + e2): {}", serde_json::to_string(&decide_t2(&mu)?).unwrap());

    let mu = MuSpecT2::rational(&[(qr(1, 2), q(0)), (q(0), qr(1, 3)), (qr(1, 2), qr(1, 3))], Family::Osc2)?;
    println!("((1/2, 0), (0, 1/3), (1/2, 1/3)): {}", serde_json::to_string(&decide_t2(&mu)?).unwrap());

    // An irrational ratio along one axis rules out any lattice.
    let mut b = Basis::new();
    b.insert("sqrt2", Source::Declared { interval: Interval::new(qr(1414, 1000), qr(1415, 1000)) })?;
    let (one, zero) = (SymbolicReal::constant(q(1)), SymbolicReal::zero());
    let mu = MuSpecT2::new(
        b,
        vec![[one.clone(), zero.clone()], [SymbolicReal::symbol("sqrt2"), zero.clone()], [zero, one]],
        Family::D,
    )?;
    println!("(1, sqrt2, e2): {}", serde_json::to_string(&decide_t2(&mu)?).unwrap());
    Ok(())
}
