//! Print the restricted root system of a real form: its type, positive
//! restricted roots with multiplicities, and a lift of the longest element.
//!
//! Usage: `cargo run --example restricted_roots -- 'so*(10)'`

use satake_w0::satake::catalog::lookup;

fn main() -> satake_w0::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "EIII".to_string());
    let sd = lookup(&name)?;
    let rr = sd.restricted_roots()?;
    println!("{}: type {}, black nodes {:?}, arrows {:?}", sd.name(), sd.cartan_type(), sd.black(), sd.arrows());
    println!("restricted root system {} (real rank {})", rr.type_label(), rr.rank());
    for root in rr.positive_roots() {
        println!("  {:?}  multiplicity {}", root.coords, rr.multiplicity(&root.coords));
    }
    let lift = sd.restricted_w0_lift()?;
    println!("restricted w0 = {}", lift.restricted_word);
    println!("lifted word   = {}", lift.reduced_word(&sd.root_system(), Default::default()));
    Ok(())
}
