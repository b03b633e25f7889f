use std::fmt::Write;

use serde::Serialize;

use super::verify::VerificationReport;
use crate::{Error, Result};

/// Pretty-printed JSON with a trailing newline. Output depends only on the
/// report, so it is byte-identical across runs and thread counts.
pub fn to_json(report: &VerificationReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    schema_version: u32,
    form: &'a str,
    lambda: String,
    #[serde(rename = "dim_V")]
    dim_v: String,
    #[serde(rename = "dim_VL")]
    dim_vl: Option<usize>,
    verdict: Option<String>,
    sign: Option<i8>,
    table_member: bool,
    consistent: Option<bool>,
    skipped: Option<&'a str>,
}

/// One line per record; `lambda` is space-separated coefficients.
pub fn to_csv(report: &VerificationReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &report.records {
        let lambda: Vec<String> = r.lambda.iter().map(i64::to_string).collect();
        w.serialize(CsvRow {
            schema_version: report.schema_version,
            form: &r.form,
            lambda: lambda.join(" "),
            dim_v: r.dim_v.to_string(),
            dim_vl: r.dim_vl,
            verdict: r.verdict.map(|v| v.to_string()),
            sign: r.sign,
            table_member: r.table_member,
            consistent: r.consistent,
            skipped: r.skipped.as_deref(),
        })
        .map_err(|e| Error::Internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

/// A human-readable table followed by the summary.
pub fn to_pretty(report: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "form {}  caps {:?}  dim cap {}", report.form, report.bounds.caps, report.bounds.dim_cap);
    if let Some(ps) = &report.bounds.minimal_p {
        let ps: Vec<String> = ps.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "minimal multiples p_i: {}", ps.join(", "));
    }
    let _ = writeln!(s, "{:<24} {:>12} {:>6} {:<12} {:<6} status", "lambda", "dim V", "dim VL", "verdict", "listed");
    for r in &report.records {
        let lambda = format!("{:?}", r.lambda);
        let status = match (r.consistent, &r.skipped) {
            (_, Some(why)) => format!("skipped: {why}"),
            (Some(true), _) => "ok".to_string(),
            _ => "INCONSISTENT".to_string(),
        };
        let _ = writeln!(
            s,
            "{:<24} {:>12} {:>6} {:<12} {:<6} {}",
            lambda,
            r.dim_v.to_string(),
            r.dim_vl.map_or("-".to_string(), |d| d.to_string()),
            r.verdict.map_or("-".to_string(), |v| v.to_string()),
            if r.table_member { "yes" } else { "no" },
            status
        );
    }
    let m = &report.summary;
    let _ = writeln!(
        s,
        "total {}  computed {}  skipped {}  consistent {}  inconsistent {}",
        m.total, m.computed, m.skipped, m.consistent, m.inconsistent
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cache::SliceCache;
    use crate::conjecture::{verify_range, Bounds};
    use crate::satake::catalog::lookup;

    #[test]
    fn formats_agree() {
        let sd = lookup("G").unwrap();
        let r = verify_range(&sd, &Bounds::uniform(2, 1, 20000), &SliceCache::in_memory(), Some(1)).unwrap();
        let json = to_json(&r).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["records"].as_array().unwrap().len(), 4);
        assert_eq!(v["records"][0]["lambda"], serde_json::json!([0, 0]));
        let csv = to_csv(&r).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].starts_with("schema_version,form,lambda,dim_V,dim_VL,verdict"));
        assert!(lines[1].starts_with("1,G,0 0,1,1,PlusId,1,true,true,"));
        assert!(to_pretty(&r).contains("consistent 4"));
    }
}
