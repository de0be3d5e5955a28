//! Certified boxes for all complex roots of an integer polynomial.

use cocompact::poly::{isolate_roots, IntPoly};
use cocompact::rational::qr;

fn main() -> cocompact::Result<()> {
    // (x - 1)^2 (x^4 - x^3 - x^2 - x + 1)
    let p = &IntPoly::from_i64(&[-1, 1]).pow(2) * &IntPoly::from_i64(&[1, -1, -1, -1, 1]);
    println!("roots of {p}:");
    for r in isolate_roots(&p, &qr(1, 1_000_000_000_000))? {
        println!(
            "  re {} im {}  mult {}  real {:?}  |z| = 1 {:?}",
            r.re, r.im, r.multiplicity, r.is_real, r.on_unit_circle
        );
    }
    Ok(())
}
