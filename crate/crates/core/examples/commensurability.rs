//! Compare the lattices `Gamma(A)` for a few symplectic pairs.

use cocompact::poly::IntPoly;
use cocompact::salem::quadratic;
use cocompact::sympmat::{build_a_for_theorem1, commensurable, GammaA};

fn gamma(f: &IntPoly, q: usize) -> cocompact::Result<GammaA> {
    GammaA::new(build_a_for_theorem1(f, q)?)
}

fn main() -> cocompact::Result<()> {
    let quartic = IntPoly::from_i64(&[1, -1, -1, -1, 1]);
    let cases = [
        ("x^2-3x+1 vs x^2-7x+1", gamma(&quadratic(3), 1)?, gamma(&quadratic(7), 1)?),
        ("x^2-3x+1 vs x^2-4x+1", gamma(&quadratic(3), 1)?, gamma(&quadratic(4), 1)?),
        ("quartic q=1 vs x^2-3x+1 q=1", gamma(&quartic, 1)?, gamma(&quadratic(3), 1)?),
    ];
    for (name, g1, g2) in &cases {
        let r = commensurable(g1, g2, 4, 4)?;
        println!("{name}: {}", serde_json::to_string(&r).unwrap());
    }
    Ok(())
}
