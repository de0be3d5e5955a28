//! Classify a few polynomials and print the certified Salem data.

use cocompact::poly::IntPoly;
use cocompact::salem::{classify_f_plus, quadratic, Classification};

fn main() -> cocompact::Result<()> {
    let polys = [
        IntPoly::from_i64(&[1, 0, -1, -1, -1, 0, 1]),
        IntPoly::from_i64(&[1, -1, -1, -1, 1]),
        quadratic(3),
        quadratic(2),
        IntPoly::from_i64(&[1, 1, 1, 1, 1]),
    ];
    for p in &polys {
        match classify_f_plus(p)? {
            Classification::Member { k, data } => {
                println!("{p}: in F+_{}", 2 * k);
                println!("  r     = {}", data.r.re);
                for (j, pair) in data.unit_pairs.iter().enumerate() {
                    println!("  s_{}   = {}", j + 1, pair.angle);
                }
            }
            Classification::Rejected(why) => println!("{p}: rejected ({why})"),
        }
    }
    Ok(())
}
