//! Construct an irreducible module from its highest weight and inspect its
//! weight spaces, Serre relations and zero-weight data.

use satake_w0::hwmodule::{weight_system, HWModule, ZeroSlice, DEFAULT_DIM_CAP};
use satake_w0::rootsystem::{RootSystem, Weight};

fn main() -> satake_w0::Result<()> {
    let rs = RootSystem::new("B3".parse()?)?;
    let lambda = Weight(vec![1, 1, 0]);
    let ws = weight_system(&rs, &lambda)?;
    println!("V({lambda}) for B3: dim {} by Weyl, {} by Freudenthal", rs.weyl_dim(&lambda)?, ws.total());

    let m = HWModule::build(&rs, &lambda, DEFAULT_DIM_CAP)?;
    m.check_relations(&rs)?;
    println!("built {} basis vectors in {} weight spaces; relations hold", m.dim(), m.blocks().len());
    for (mu, range) in m.blocks().iter().filter(|(mu, _)| mu.is_dominant()) {
        println!("  dominant weight {mu}: multiplicity {}", range.len());
    }

    let slice = ZeroSlice::build(&rs, &lambda, DEFAULT_DIM_CAP)?;
    println!("zero-weight space: dim {}", slice.dim0());
    for i in 1..=rs.rank() {
        let s = slice.reflection(i);
        println!("  n_{i} on V_0 squares to identity: {}", s.mul(&s).is_identity());
    }
    Ok(())
}
