//! Classify the action of the lifted longest restricted Weyl element on the
//! L-invariants of small G2 modules, for the split real form.

use satake_w0::hwmodule::DEFAULT_DIM_CAP;
use satake_w0::rootsystem::Weight;
use satake_w0::satake::catalog::lookup;
use satake_w0::w0action::classify_w0;

fn main() -> satake_w0::Result<()> {
    let g = lookup("G")?;
    println!("{:<8} {:>6} {:>5} {:>5}  verdict", "lambda", "dim V", "V_0", "V^L");
    for a in 0..=2 {
        for b in 0..=2 {
            let c = classify_w0(&g, &Weight(vec![a, b]), DEFAULT_DIM_CAP)?;
            println!("{:<8} {:>6} {:>5} {:>5}  {}", format!("({a},{b})"), c.dim_v, c.dim_zero, c.dim_vl, c.verdict);
        }
    }
    Ok(())
}
