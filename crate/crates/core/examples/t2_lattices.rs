//! Lattices in `Osc2_3`, `D_3` and `D_0`, plus a corrupted generator that
//! the closure check must reject.

use cocompact::criteria::{decide_t2, Family, MuSpecT2, T2Decision};
use cocompact::groups::{build_lattice_d0, build_lattice_t2, closure_check, corrupt};
use cocompact::rational::q;
use cocompact::Error;

fn main() -> cocompact::Result<()> {
    for family in [Family::Osc2, Family::D] {
        let mu = MuSpecT2::rational(&[(q(1), q(0)), (q(0), q(1)), (q(1), q(1))], family)?;
        let T2Decision::LatticeExists(lb) = decide_t2(&mu)? else { unreachable!() };
        let lat = build_lattice_t2(&mu, &lb)?;
        let r = closure_check(&lat, 3)?;
        println!("{family:?}: {} words, {} violations", r.words_checked, r.violations);

        match closure_check(&corrupt(&lat, 3)?, 3) {
            Err(Error::ClosureViolation { word }) => println!("  corrupted generator caught by word {word:?}"),
            other => println!("  corrupted generator NOT caught: {other:?}"),
        }
    }
    let r = closure_check(&build_lattice_d0(), 3)?;
    println!("D_0: {} words, {} violations", r.words_checked, r.violations);
    Ok(())
}
