//! Build a vector `mu` from a Salem polynomial, check it exactly, and run
//! the bounded search that recovers a polynomial from `mu` alone.

use cocompact::criteria::{check_mu_t1, decide_t1, synthesize_mu_t1, MuSpecT1};
use cocompact::poly::IntPoly;
use cocompact::rational::q;

fn main() -> cocompact::Result<()> {
    let f = IntPoly::from_i64(&[1, -1, -1, -1, 1]);
    let mu = synthesize_mu_t1(&f, 2, &[1], &[0, 3])?;
    println!("mu = {:?}", mu.mu.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("check: {}", serde_json::to_string(&check_mu_t1(&mu, &f, 64)?).unwrap());
    println!("search: {}", serde_json::to_string(&decide_t1(&mu, 3, 6)?).unwrap());

    let one = MuSpecT1::rational(&[q(1)])?;
    let quad = IntPoly::from_i64(&[1, -3, 1]);
    println!("mu = (1) with {quad}: {}", serde_json::to_string(&check_mu_t1(&one, &quad, 64)?).unwrap());
    Ok(())
}
