//! Compare the closed form of the translation cocycle with the truncated
//! Baker-Campbell-Hausdorff series on a rational grid.

use cocompact::groups::{bch_crosscheck_ell, rational_grid, DqParams};

fn main() {
    let grid = rational_grid(20);
    for (name, p) in [("normalized", DqParams::normalized(vec![])), ("plain", DqParams::plain_d0())] {
        let bad = grid
            .iter()
            .flat_map(|t| grid.iter().map(move |u| (t, u)))
            .filter(|(t, u)| !bch_crosscheck_ell(&p, t, u).equal)
            .count();
        println!("{name}: {} pairs, {bad} mismatches", grid.len() * grid.len());
    }
    let p = DqParams::normalized(vec![]);
    let r = bch_crosscheck_ell(&p, &grid[3], &grid[7]);
    println!("sample: {}", serde_json::to_string(&r).unwrap());
}
