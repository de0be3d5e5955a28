//! Decide whether two Salem numbers have a common power.

use cocompact::poly::IntPoly;
use cocompact::salem::{power_minpoly, quadratic, salem_equivalent, DEFAULT_K_BOUND};

fn main() -> cocompact::Result<()> {
    let r3 = quadratic(3);
    println!("minimal polynomial of r^2 for {r3}: {}", power_minpoly(&r3, 2)?);
    let cases = [
        (quadratic(3), quadratic(7)),
        (quadratic(3), quadratic(4)),
        (IntPoly::from_i64(&[1, -1, -1, -1, 1]), quadratic(3)),
    ];
    for (p1, p2) in &cases {
        let rel = salem_equivalent(p1, p2, DEFAULT_K_BOUND)?;
        println!("{p1} vs {p2}: {}", serde_json::to_string(&rel).unwrap());
    }
    Ok(())
}
