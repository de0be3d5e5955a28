//! Build an integral symplectic pair `(A, J)` for a Salem polynomial and
//! run the exact checks on it.

use cocompact::poly::IntPoly;
use cocompact::sympmat::build_a_for_theorem1;

fn main() -> cocompact::Result<()> {
    let f = IntPoly::from_i64(&[1, -1, -1, -1, 1]);
    let pair = build_a_for_theorem1(&f, 2)?;
    println!("A =\n{}", pair.a());
    println!("J =\n{}", pair.j());
    for check in pair.verify().checks {
        println!("{:40} {}", check.name, if check.passed { "ok" } else { "FAILED" });
    }
    Ok(())
}
