//! Sweep a box of dominant weights for one real form and compare every
//! verdict with the weight table.
//!
//! Usage: `cargo run --release --example verify_sweep -- so(1,4) 3`

use satake_w0::cache::SliceCache;
use satake_w0::conjecture::{to_pretty, verify_range, Bounds};
use satake_w0::hwmodule::DEFAULT_DIM_CAP;
use satake_w0::satake::catalog::lookup;

fn main() -> satake_w0::Result<()> {
    let mut args = std::env::args().skip(1);
    let form = args.next().unwrap_or_else(|| "so(1,4)".to_string());
    let max: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let sd = lookup(&form)?;
    let cache = SliceCache::in_memory();
    let bounds = Bounds::scaled(&sd, max, DEFAULT_DIM_CAP, &cache)?;
    let report = verify_range(&sd, &bounds, &cache, None)?;
    print!("{}", to_pretty(&report));
    if !report.all_consistent() {
        println!("inconsistent at {:?}", report.failures);
    }
    Ok(())
}
