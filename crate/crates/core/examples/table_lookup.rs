//! Query the weight tables: which rows list a given weight, and how a
//! block reused from another family is expanded.

use satake_w0::conjecture::{FormParams, RowKind, Table};
use satake_w0::rootsystem::Weight;

fn main() -> satake_w0::Result<()> {
    let table = Table::builtin()?;
    println!("rows per table: {:?}", table.row_counts());

    for (form, lambda) in [("so(2,7)", vec![0, 3, 0, 4]), ("so(3,6)", vec![1, 0, 1, 0]), ("so*(10)", vec![0, 1, 0, 0, 0]), ("FII", vec![0, 0, 0, 2])] {
        let lambda = Weight(lambda);
        let rows = table.matches(form, &lambda)?;
        println!("{form:<8} {lambda:<12} listed by rows {rows:?}");
    }

    let params = FormParams::parse("so(2,6)")?;
    println!("expanded rows for so(2,6):");
    for row in table.expand(&params)? {
        if let RowKind::Weights { shape, index, coeff } = &row.kind {
            println!("  {}#{:<2} {:<24} i: {:<14} coeff: {}", row.block, row.line, shape.source(), index.source(), coeff.source());
        }
    }
    Ok(())
}
