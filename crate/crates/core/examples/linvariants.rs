//! Dimensions of L-invariants across real forms of the same complex type.
//! The zero-weight data is computed once per weight and shared.

use satake_w0::cache::SliceCache;
use satake_w0::hwmodule::DEFAULT_DIM_CAP;
use satake_w0::linvariant::l_invariants;
use satake_w0::rootsystem::Weight;
use satake_w0::satake::catalog::lookup;

fn main() -> satake_w0::Result<()> {
    let forms: Vec<_> = ["so(4,5)", "so(3,6)", "so(2,7)", "so(1,8)"].iter().map(|f| lookup(f)).collect::<Result<_, _>>()?;
    let rs = forms[0].root_system();
    let cache = SliceCache::in_memory();
    print!("{:<10} {:>5}", "lambda", "V_0");
    for f in &forms {
        print!(" {:>8}", f.name());
    }
    println!();
    for lambda in [[0, 1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 2], [1, 0, 1, 0], [0, 2, 0, 0]] {
        let lambda = Weight(lambda.to_vec());
        let slice = cache.get(&rs, &lambda, DEFAULT_DIM_CAP)?;
        print!("{:<10} {:>5}", lambda.to_string(), slice.dim0());
        for f in &forms {
            print!(" {:>8}", l_invariants(&slice, f)?.dim);
        }
        println!();
    }
    println!("{:?}", cache.stats());
    Ok(())
}
