//! Enumerate the quartic Salem polynomials in a coefficient box and print
//! their closed-form invariants.

use cocompact::rational::qr;
use cocompact::salem::{enumerate_f4, salem4_closed_form};

fn main() -> cocompact::Result<()> {
    let tol = qr(1, 10_000_000_000);
    let found = enumerate_f4(-4, 4, -4, 4)?;
    println!("{} quartics with |a|, |b| <= 4", found.len());
    for params in found {
        let c = salem4_closed_form(params, &tol)?;
        println!("a = {:2}, b = {:2}: r = {}, s = {}", params.a, params.b, c.r, c.s);
    }
    Ok(())
}
