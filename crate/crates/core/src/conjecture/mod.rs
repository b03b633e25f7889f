//! Encoding of the weight tables and the verification driver.
//!
//! [`table_predicate`] decides whether a weight is listed for a form.
//! [`verify_range`] classifies every weight in a box and checks the two
//! halves of the conjectured pattern: listed weights act by a sign, and
//! unlisted weights with nonzero invariants do not.

pub mod expr;
mod report;
mod table;
mod verify;

pub use report::{to_csv, to_json, to_pretty};
pub use table::{FormParams, RowKind, Shape, Table, TableBlock, TableRow};
pub use verify::{
    consistent, minimal_p_i, verify_range, verify_weight, Bounds, MinimalP, Record, Summary, VerificationReport,
    SCHEMA_VERSION,
};

use crate::rootsystem::Weight;
use crate::Result;

/// Whether `lambda` is listed for `form` in the built-in table.
pub fn table_predicate(form: &str, lambda: &Weight) -> Result<bool> {
    Ok(!Table::builtin()?.matches(form, lambda)?.is_empty())
}
