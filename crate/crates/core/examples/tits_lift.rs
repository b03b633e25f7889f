//! Build a whole module, apply the Tits lift of the restricted longest
//! element, and compare it with the computation done on the zero-weight
//! space alone.

use satake_w0::exactla::restrict_images;
use satake_w0::hwmodule::{tits_representative, HWModule, ZeroSlice, DEFAULT_DIM_CAP};
use satake_w0::linvariant::l_invariants;
use satake_w0::rootsystem::Weight;
use satake_w0::satake::catalog::lookup;
use satake_w0::w0action::{lift_word, w0_matrix_on_zero_space, WordChoice};

fn main() -> satake_w0::Result<()> {
    let sd = lookup("so(2,5)")?;
    let rs = sd.root_system();
    let lambda = Weight(vec![1, 0, 2]);

    let m = HWModule::build(&rs, &lambda, DEFAULT_DIM_CAP)?;
    m.check_relations(&rs)?;
    let word = lift_word(&sd, WordChoice::default())?;
    let t = tits_representative(&m, &word)?;
    println!("{} {}: dim {}, lift word {}", sd.name(), lambda, m.dim(), word);

    let slice = ZeroSlice::build(&rs, &lambda, DEFAULT_DIM_CAP)?;
    let inv = l_invariants(&slice, &sd)?;
    let embedded = inv.embed(&m);
    let images: Vec<_> = embedded.basis().iter().map(|b| t.matrix.mul_vec(b)).collect();
    let full = restrict_images(&images, &embedded)?;

    let on_zero = w0_matrix_on_zero_space(&slice, &sd, WordChoice::default())?;
    let images: Vec<_> = inv.space.basis().iter().map(|b| on_zero.mul_vec(b)).collect();
    let sliced = restrict_images(&images, &inv.space)?;

    println!("dim V^L = {}", inv.dim);
    for r in full.to_dense() {
        println!("  {}", r.iter().map(ToString::to_string).collect::<Vec<_>>().join("  "));
    }
    println!("agrees with zero-weight computation: {}", full == sliced);
    println!("squares to identity: {}", full.mul(&full).is_identity());
    Ok(())
}
