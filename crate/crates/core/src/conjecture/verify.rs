use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::table::{FormParams, Table};
use crate::cache::SliceCache;
use crate::hwmodule::ZeroSlice;
use crate::linvariant::l_invariants;
use crate::rootsystem::Weight;
use crate::satake::SatakeDiagram;
use crate::w0action::{classify_slice, serialize_big, Certificate, Verdict, WordChoice};
use crate::{Error, Result};

/// Version of the report layout; bump on any change to the JSON or CSV
/// columns.
pub const SCHEMA_VERSION: u32 = 1;

/// Least `p >= 1` with `V_{p ϖ_i}^L != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimalP {
    Found(u32),
    /// Fixed to 1 for the spin nodes `i in {2p, 2p+1}` of `so(p,q)` with
    /// `p = (p+q-2)/4`, where no multiple has invariants.
    Convention,
    /// Not found for multiples below this bound (search limit or size cap).
    AtLeast(u32),
}

impl MinimalP {
    /// The value used for coefficient caps; a lower bound counts as itself.
    pub fn value(self) -> u32 {
        match self {
            MinimalP::Found(p) | MinimalP::AtLeast(p) => p,
            MinimalP::Convention => 1,
        }
    }
}

impl fmt::Display for MinimalP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalP::Found(p) => write!(f, "{p}"),
            MinimalP::Convention => write!(f, "1 (convention)"),
            MinimalP::AtLeast(p) => write!(f, ">= {p}"),
        }
    }
}

impl Serialize for MinimalP {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MinimalP::Found(p) => s.serialize_u32(*p),
            _ => s.collect_str(self),
        }
    }
}

fn is_convention_case(sd: &SatakeDiagram, i: usize) -> bool {
    match FormParams::parse(sd.name()) {
        Ok(FormParams::So { p, q }) => 4 * p == p + q - 2 && (i as i64 == 2 * p || i as i64 == 2 * p + 1),
        _ => false,
    }
}

/// Searches `p = 1, 2, ..., limit` for the least multiple of `ϖ_i` with
/// nonzero invariants, stopping early at the dimension cap.
pub fn minimal_p_i(sd: &SatakeDiagram, i: usize, limit: u32, dim_cap: u64, cache: &SliceCache) -> Result<MinimalP> {
    if i == 0 || i > sd.rank() {
        return Err(Error::RankMismatch { expected: sd.rank(), got: i });
    }
    if is_convention_case(sd, i) {
        return Ok(MinimalP::Convention);
    }
    let rs = sd.root_system();
    for p in 1..=limit {
        let lambda = Weight::fundamental(sd.rank(), i).scaled(p as i64);
        let slice = match cache.get(&rs, &lambda, dim_cap) {
            Ok(s) => s,
            Err(Error::SizeCap { .. }) => return Ok(MinimalP::AtLeast(p)),
            Err(e) => return Err(e),
        };
        if l_invariants(&slice, sd)?.dim > 0 {
            return Ok(MinimalP::Found(p));
        }
    }
    Ok(MinimalP::AtLeast(limit + 1))
}

/// Which dominant weights to enumerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// `c_i <= caps[i-1]` for every coordinate.
    pub caps: Vec<i64>,
    pub dim_cap: u64,
    /// Minimal multiples used to derive the caps, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_p: Option<Vec<MinimalP>>,
}

impl Bounds {
    pub fn uniform(rank: usize, max_coeff: i64, dim_cap: u64) -> Self {
        Bounds { caps: vec![max_coeff; rank], dim_cap, minimal_p: None }
    }

    /// Caps `min(3 p_i, max_coeff)` from the minimal multiples `p_i`.
    pub fn scaled(sd: &SatakeDiagram, max_coeff: i64, dim_cap: u64, cache: &SliceCache) -> Result<Self> {
        let ps = (1..=sd.rank())
            .map(|i| minimal_p_i(sd, i, max_coeff.max(1) as u32, dim_cap, cache))
            .collect::<Result<Vec<_>>>()?;
        let caps = ps.iter().map(|p| (3 * p.value() as i64).min(max_coeff)).collect();
        Ok(Bounds { caps, dim_cap, minimal_p: Some(ps) })
    }

    /// All weights in the box, lexicographic in ϖ-coordinates.
    pub fn weights(&self) -> Vec<Weight> {
        let mut out = vec![Vec::new()];
        for &cap in &self.caps {
            out = out.into_iter().flat_map(|w: Vec<i64>| (0..=cap.max(0)).map(move |c| [w.clone(), vec![c]].concat())).collect();
        }
        out.into_iter().map(Weight).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub form: String,
    pub lambda: Vec<i64>,
    #[serde(rename = "dim_V", serialize_with = "serialize_big")]
    pub dim_v: BigUint,
    #[serde(rename = "dim_VL")]
    pub dim_vl: Option<usize>,
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    pub table_member: bool,
    /// Printed lines of the table data file that list `λ`.
    pub table_rows: Vec<usize>,
    pub consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// The consistency rule: listed weights act by a sign (or have no
/// invariants); unlisted weights with invariants do not act by a sign.
pub fn consistent(member: bool, verdict: Verdict, dim_vl: usize) -> bool {
    if member {
        verdict.is_scalar_or_vacuous()
    } else {
        dim_vl == 0 || verdict == Verdict::NonScalar
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub computed: usize,
    pub skipped: usize,
    pub consistent: usize,
    pub inconsistent: usize,
    pub table_members: usize,
    pub verdicts: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub form: String,
    pub bounds: Bounds,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub failures: Vec<Vec<i64>>,
    pub skipped: Vec<Vec<i64>>,
}

impl VerificationReport {
    /// True iff every computed record is consistent. Skipped records do not
    /// count either way.
    pub fn all_consistent(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Classifies one weight and compares it with the table.
pub fn verify_weight(sd: &SatakeDiagram, lambda: &Weight, dim_cap: u64, cache: &SliceCache) -> Result<Record> {
    let rs = sd.root_system();
    let table = Table::builtin()?;
    let rows = table.matches(sd.name(), lambda)?;
    let dim_v = rs.weyl_dim(lambda)?;
    let mut rec = Record {
        form: sd.name().to_string(),
        lambda: lambda.coords().to_vec(),
        dim_v: dim_v.clone(),
        dim_vl: None,
        verdict: None,
        sign: None,
        table_member: !rows.is_empty(),
        table_rows: rows,
        consistent: None,
        certificate: None,
        skipped: None,
    };
    let slice: std::sync::Arc<ZeroSlice> = match cache.get(&rs, lambda, dim_cap) {
        Ok(s) => s,
        Err(Error::SizeCap { .. }) => {
            rec.skipped = Some("size".to_string());
            return Ok(rec);
        }
        Err(e) => return Err(e),
    };
    let c = classify_slice(&slice, sd, dim_v, WordChoice::default())?;
    rec.dim_vl = Some(c.dim_vl);
    rec.verdict = Some(c.verdict);
    rec.sign = c.verdict.sign();
    rec.consistent = Some(consistent(rec.table_member, c.verdict, c.dim_vl));
    if c.verdict == Verdict::NonScalar {
        rec.certificate = Some(c.certificate);
    }
    Ok(rec)
}

/// Runs every weight in the bounds. `jobs = None` uses rayon's default pool.
pub fn verify_range(sd: &SatakeDiagram, bounds: &Bounds, cache: &SliceCache, jobs: Option<usize>) -> Result<VerificationReport> {
    if bounds.caps.len() != sd.rank() {
        return Err(Error::RankMismatch { expected: sd.rank(), got: bounds.caps.len() });
    }
    FormParams::parse(sd.name())?;
    let weights = bounds.weights();
    let run = || -> Result<Vec<Record>> {
        weights.par_iter().map(|l| verify_weight(sd, l, bounds.dim_cap, cache)).collect()
    };
    let records = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let mut summary = Summary { total: records.len(), ..Summary::default() };
    let mut failures = Vec::new();
    let mut skipped = Vec::new();
    for r in &records {
        summary.table_members += r.table_member as usize;
        match (r.consistent, r.verdict) {
            (Some(ok), Some(v)) => {
                summary.computed += 1;
                *summary.verdicts.entry(v.to_string()).or_default() += 1;
                if ok {
                    summary.consistent += 1;
                } else {
                    summary.inconsistent += 1;
                    failures.push(r.lambda.clone());
                }
            }
            _ => {
                summary.skipped += 1;
                skipped.push(r.lambda.clone());
            }
        }
    }
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        form: sd.name().to_string(),
        bounds: bounds.clone(),
        records,
        summary,
        failures,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hwmodule::DEFAULT_DIM_CAP;
    use crate::satake::catalog::lookup;

    #[test]
    fn consistency_rule() {
        assert!(consistent(true, Verdict::VacuousZero, 0));
        assert!(consistent(true, Verdict::MinusId, 1));
        assert!(!consistent(true, Verdict::NonScalar, 2));
        assert!(consistent(false, Verdict::VacuousZero, 0));
        assert!(!consistent(false, Verdict::PlusId, 1));
        assert!(consistent(false, Verdict::NonScalar, 3));
    }

    #[test]
    fn weights_are_lexicographic() {
        let b = Bounds::uniform(2, 1, 10);
        let w: Vec<Vec<i64>> = b.weights().into_iter().map(|w| w.0).collect();
        assert_eq!(w, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn minimal_multiples() {
        let cache = SliceCache::in_memory();
        let b2 = SatakeDiagram::split("B2".parse().unwrap());
        assert_eq!(minimal_p_i(&b2, 1, 4, DEFAULT_DIM_CAP, &cache).unwrap(), MinimalP::Found(1));
        assert_eq!(minimal_p_i(&b2, 2, 4, DEFAULT_DIM_CAP, &cache).unwrap(), MinimalP::Found(2));
        let so = lookup("so(1,5)").unwrap();
        assert_eq!(minimal_p_i(&so, 2, 4, DEFAULT_DIM_CAP, &cache).unwrap(), MinimalP::Convention);
        assert_eq!(minimal_p_i(&so, 3, 4, DEFAULT_DIM_CAP, &cache).unwrap(), MinimalP::Convention);
        // The vector module restricts to the standard module of M = SO(4)
        // on the zero weight space of a, so the first invariant is in S^2.
        assert_eq!(minimal_p_i(&so, 1, 4, DEFAULT_DIM_CAP, &cache).unwrap(), MinimalP::Found(2));
        // No multiple of the spin weight of so(1,5) has invariants.
        for k in 1..=4 {
            let s = cache.get(&so.root_system(), &Weight(vec![0, k, 0]), DEFAULT_DIM_CAP).unwrap();
            assert_eq!(l_invariants(&s, &so).unwrap().dim, 0);
        }
        let g = lookup("G").unwrap();
        assert_eq!(minimal_p_i(&g, 1, 4, 5, &cache).unwrap(), MinimalP::AtLeast(1));
    }

    #[test]
    fn g2_small_sweep() {
        let sd = lookup("G").unwrap();
        let r = verify_range(&sd, &Bounds::uniform(2, 2, DEFAULT_DIM_CAP), &SliceCache::in_memory(), Some(2)).unwrap();
        assert!(r.all_consistent(), "{:?}", r.failures);
        assert_eq!(r.summary.total, 9);
        assert_eq!(r.records[0].verdict, Some(Verdict::PlusId));
    }

    #[test]
    fn oversize_weights_are_skipped() {
        let sd = lookup("G").unwrap();
        let r = verify_range(&sd, &Bounds::uniform(2, 2, 100), &SliceCache::in_memory(), Some(1)).unwrap();
        assert!(r.summary.skipped > 0);
        assert_eq!(r.summary.skipped + r.summary.computed, r.summary.total);
        assert!(r.records.iter().filter(|x| x.skipped.is_some()).all(|x| x.dim_v > BigUint::from(100u32)));
    }
}
