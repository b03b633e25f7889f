//! The `satake-w0` command line.
//!
//! Exit codes: 0 success, 1 inconsistent verification records, 2 bad
//! arguments (including unknown forms and malformed weights), 3 a module
//! over the dimension cap in `classify`, 4 any other failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cache::{self, SliceCache, CACHE_DIR_ENV};
use crate::conjecture::{table_predicate, to_csv, to_json, to_pretty, verify_range, Bounds, SCHEMA_VERSION};
use crate::hwmodule::DEFAULT_DIM_CAP;
use crate::rootsystem::Weight;
use crate::satake::catalog::{entries, lookup};
use crate::w0action::{classify_slice, Certificate, Verdict, WordChoice};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "satake-w0", version, about = "Sign of the longest restricted Weyl element on L-invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the action on V_λ^L for one weight.
    Classify(ClassifyArgs),
    /// Classify every weight in a box and compare with the table.
    Verify(VerifyArgs),
    /// List the cataloged real forms.
    Forms(FormsArgs),
    /// Inspect or clear an on-disk cache.
    Cache(CacheArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Pretty,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct CacheOpts {
    /// Directory for cached zero-weight data (default: $SATAKE_W0_CACHE if set).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Compute everything from scratch.
    #[arg(long, conflicts_with = "cache_dir")]
    pub no_cache: bool,
}

impl CacheOpts {
    fn open(&self) -> Result<SliceCache> {
        if self.no_cache {
            return Ok(SliceCache::disabled());
        }
        match self.cache_dir.clone().or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)) {
            Some(dir) => SliceCache::with_dir(dir),
            None => Ok(SliceCache::in_memory()),
        }
    }
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Real form, e.g. `G`, `FI`, `so(2,7)`, `so*(10)`.
    #[arg(long)]
    pub form: String,
    /// Highest weight as comma-separated coefficients of the fundamental
    /// weights, Bourbaki order.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: String,
    #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
    pub dim_cap: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Include the matrix on V^L.
    #[arg(long)]
    pub matrix: bool,
    #[command(flatten)]
    pub cache: CacheOpts,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub form: String,
    /// Uniform cap on every coefficient.
    #[arg(long, default_value_t = 2)]
    pub max_coeff: i64,
    /// Per-coordinate caps, comma-separated; overrides --max-coeff.
    #[arg(long, conflicts_with = "scaled")]
    pub caps: Option<String>,
    /// Cap coordinate i at min(3 p_i, max-coeff), p_i the least multiple of
    /// ϖ_i with invariants.
    #[arg(long)]
    pub scaled: bool,
    #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
    pub dim_cap: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub cache: CacheOpts,
}

#[derive(Args, Debug)]
pub struct FormsArgs {
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CacheArgs {
    #[command(subcommand)]
    pub action: CacheAction,
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// List cached files with their sizes.
    List {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Delete all cached files.
    Clear {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

/// Output of `classify`.
#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub schema_version: u32,
    pub form: String,
    pub lambda: Vec<i64>,
    #[serde(rename = "dim_V")]
    pub dim_v: String,
    pub dim_zero: usize,
    #[serde(rename = "dim_VL")]
    pub dim_vl: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    pub table_member: bool,
    pub certificate: Certificate,
    pub word: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize)]
pub struct FormInfo {
    pub name: String,
    pub complex_type: String,
    pub real_rank: usize,
    pub restricted_type: String,
    pub non_reduced: bool,
    pub black: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownForm(_) | Error::RankMismatch { .. } | Error::NotDominant(_) | Error::InvalidCartanType(_) => 2,
        Error::SizeCap { .. } => 3,
        _ => 4,
    }
}

fn parse_weight(s: &str) -> Result<Weight> {
    s.parse().map_err(|_| Error::UnknownForm(format!("malformed weight {s:?}")))
}

fn csv_line<T: Serialize>(header: bool, rows: &[T]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(header).from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Internal(e.to_string()))?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Internal(e.to_string()))?).map_err(|e| Error::Internal(e.to_string()))
}

pub fn classify(args: &ClassifyArgs) -> Result<ClassifyReport> {
    let sd = lookup(&args.form)?;
    let lambda = parse_weight(&args.weight)?;
    let rs = sd.root_system();
    let dim_v = rs.weyl_dim(&lambda)?;
    let member = table_predicate(sd.name(), &lambda)?;
    let slice = args.cache.open()?.get(&rs, &lambda, args.dim_cap)?;
    let c = classify_slice(&slice, &sd, dim_v, WordChoice::default())?;
    let matrix = args.matrix.then(|| {
        (0..c.matrix.nrows()).map(|r| (0..c.matrix.ncols()).map(|k| c.matrix.get(r, k).to_string()).collect()).collect()
    });
    Ok(ClassifyReport {
        schema_version: SCHEMA_VERSION,
        form: c.form,
        lambda: c.lambda.0,
        dim_v: c.dim_v.to_string(),
        dim_zero: c.dim_zero,
        dim_vl: c.dim_vl,
        verdict: c.verdict,
        sign: c.verdict.sign(),
        table_member: member,
        certificate: c.certificate,
        word: c.word.0,
        matrix,
    })
}

fn render_classify(r: &ClassifyReport, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).map_err(|e| Error::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                schema_version: u32,
                form: &'a str,
                lambda: String,
                #[serde(rename = "dim_V")]
                dim_v: &'a str,
                #[serde(rename = "dim_VL")]
                dim_vl: usize,
                verdict: String,
                sign: Option<i8>,
                table_member: bool,
            }
            let lambda: Vec<String> = r.lambda.iter().map(i64::to_string).collect();
            csv_line(
                true,
                &[Row {
                    schema_version: r.schema_version,
                    form: &r.form,
                    lambda: lambda.join(" "),
                    dim_v: &r.dim_v,
                    dim_vl: r.dim_vl,
                    verdict: r.verdict.to_string(),
                    sign: r.sign,
                    table_member: r.table_member,
                }],
            )?
        }
        Format::Pretty => {
            let mut s = format!("form      {}\nlambda    {:?}\ndim V     {}\ndim V_0   {}\ndim V^L   {}\n", r.form, r.lambda, r.dim_v, r.dim_zero, r.dim_vl);
            s += &format!("verdict   {}\nlisted    {}\n", r.verdict, if r.table_member { "yes" } else { "no" });
            let word: Vec<String> = r.word.iter().map(usize::to_string).collect();
            s += &format!("lift word ({})\n", word.join(" "));
            if let Certificate::NonScalar { indices, submatrix } = &r.certificate {
                s += &format!(
                    "witness   rows/cols {:?}: [[{}, {}], [{}, {}]]\n",
                    indices, submatrix[0][0], submatrix[0][1], submatrix[1][0], submatrix[1][1]
                );
            }
            if let Some(m) = &r.matrix {
                for row in m {
                    s += &format!("  [{}]\n", row.join(", "));
                }
            }
            s
        }
    })
}

pub fn verify(args: &VerifyArgs) -> Result<crate::conjecture::VerificationReport> {
    let sd = lookup(&args.form)?;
    let cache = args.cache.open()?;
    let bounds = if let Some(caps) = &args.caps {
        let caps: Vec<i64> = parse_weight(caps)?.0;
        if caps.len() != sd.rank() {
            return Err(Error::RankMismatch { expected: sd.rank(), got: caps.len() });
        }
        Bounds { caps, dim_cap: args.dim_cap, minimal_p: None }
    } else if args.scaled {
        Bounds::scaled(&sd, args.max_coeff, args.dim_cap, &cache)?
    } else {
        Bounds::uniform(sd.rank(), args.max_coeff, args.dim_cap)
    };
    if bounds.caps.iter().any(|&c| c < 0) {
        return Err(Error::UnknownForm("coefficient caps must be nonnegative".to_string()));
    }
    verify_range(&sd, &bounds, &cache, args.jobs)
}

pub fn forms() -> Result<Vec<FormInfo>> {
    entries()?
        .iter()
        .map(|sd| {
            let rr = sd.restricted_roots()?;
            Ok(FormInfo {
                name: sd.name().to_string(),
                complex_type: sd.cartan_type().to_string(),
                real_rank: sd.real_rank(),
                restricted_type: rr.type_label(),
                non_reduced: rr.is_non_reduced(),
                black: sd.black().to_vec(),
                arrows: sd.arrows(),
            })
        })
        .collect()
}

fn render_forms(list: &[FormInfo], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(list).map_err(|e| Error::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                name: &'a str,
                complex_type: &'a str,
                real_rank: usize,
                restricted_type: &'a str,
                non_reduced: bool,
            }
            let rows: Vec<Row> = list
                .iter()
                .map(|f| Row {
                    name: &f.name,
                    complex_type: &f.complex_type,
                    real_rank: f.real_rank,
                    restricted_type: &f.restricted_type,
                    non_reduced: f.non_reduced,
                })
                .collect();
            csv_line(true, &rows)?
        }
        Format::Pretty => {
            let mut s = format!("{:<10} {:<6} {:>9} {:<11} {}\n", "form", "type", "real rank", "restricted", "black nodes");
            for f in list {
                let black: Vec<String> = f.black.iter().map(usize::to_string).collect();
                let label = if f.non_reduced { format!("{} (non-reduced)", f.restricted_type) } else { f.restricted_type.clone() };
                s += &format!("{:<10} {:<6} {:>9} {:<11} {}\n", f.name, f.complex_type, f.real_rank, label, black.join(","));
            }
            s
        }
    })
}

fn cache_dir(arg: &Option<PathBuf>) -> Result<PathBuf> {
    arg.clone()
        .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
        .ok_or_else(|| Error::UnknownForm(format!("no cache directory: pass --cache-dir or set {CACHE_DIR_ENV}")))
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result: Result<i32> = (|| match &cli.command {
        Command::Classify(a) => {
            let r = classify(a)?;
            write_out(out, &render_classify(&r, a.format)?)?;
            Ok(0)
        }
        Command::Verify(a) => {
            let r = verify(a)?;
            let text = match a.format {
                Format::Json => to_json(&r)?,
                Format::Csv => to_csv(&r)?,
                Format::Pretty => to_pretty(&r),
            };
            match &a.output {
                Some(path) => std::fs::write(path, text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?,
                None => write_out(out, &text)?,
            }
            let m = &r.summary;
            let _ = writeln!(
                err,
                "{}: {} weights, {} computed, {} skipped (size), {} inconsistent",
                r.form, m.total, m.computed, m.skipped, m.inconsistent
            );
            for l in &r.skipped {
                let _ = writeln!(err, "  skipped {l:?}");
            }
            for l in &r.failures {
                let _ = writeln!(err, "  INCONSISTENT {l:?}");
            }
            Ok(if r.all_consistent() { 0 } else { 1 })
        }
        Command::Forms(a) => {
            write_out(out, &render_forms(&forms()?, a.format)?)?;
            Ok(0)
        }
        Command::Cache(a) => match &a.action {
            CacheAction::List { cache_dir: d } => {
                let dir = cache_dir(d)?;
                let files = cache::list(&dir)?;
                let mut s = String::new();
                for (path, bytes) in &files {
                    s += &format!("{bytes:>10}  {}\n", path.display());
                }
                s += &format!("{} files\n", files.len());
                write_out(out, &s)?;
                Ok(0)
            }
            CacheAction::Clear { cache_dir: d } => {
                let n = cache::clear(&cache_dir(d)?)?;
                write_out(out, &format!("removed {n} files\n"))?;
                Ok(0)
            }
        },
    })();
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn write_out(out: &mut dyn Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes()).map_err(|e| Error::Internal(format!("writing output: {e}")))
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(std::iter::once("satake-w0").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_examples() {
        let (code, out, _) = run_args(&["classify", "--form", "G", "--weight", "1,0", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "MinusId");
        assert_eq!(v["sign"], -1);
        assert_eq!(v["dim_V"], "7");

        let (code, out, _) = run_args(&["classify", "--form", "so(2,7)", "--weight", "1,0,0,0", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "VacuousZero");
        assert_eq!(v["dim_VL"], 0);

        let (code, out, _) = run_args(&["classify", "--form", "G", "--weight", "0,0"]);
        assert_eq!(code, 0);
        assert!(out.contains("PlusId"));
        assert!(out.contains("dim V^L   1"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["classify", "--form", "G", "--weight", "1,0,0"]).0, 2);
        assert_eq!(run_args(&["classify", "--form", "XYZ", "--weight", "1"]).0, 2);
        assert_eq!(run_args(&["classify", "--form", "so(7,2)", "--weight", "1,0,0,0"]).0, 2);
        assert_eq!(run_args(&["classify", "--form", "G", "--weight", "a,b"]).0, 2);
        assert_eq!(run_args(&["classify", "--form", "G", "--weight", "-1,0"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        let (code, _, err) = run_args(&["classify", "--form", "G", "--weight", "3,3", "--dim-cap", "100"]);
        assert_eq!(code, 3);
        assert!(err.contains("dimension"), "{err}");
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn verify_and_forms() {
        let (code, out, _) = run_args(&["verify", "--form", "G", "--max-coeff", "1", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 5);
        let (code, out, _) = run_args(&["forms"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l.starts_with("G ") && l.contains("G2")));
        assert!(out.lines().any(|l| l.starts_with("FII ") && l.contains("BC1 (non-reduced)")));
        assert_eq!(out, run_args(&["forms"]).1);
    }

    #[test]
    fn cache_commands() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let with = run_args(&["classify", "--form", "G", "--weight", "2,0", "--format", "json", "--cache-dir", d]);
        let again = run_args(&["classify", "--form", "G", "--weight", "2,0", "--format", "json", "--cache-dir", d]);
        let without = run_args(&["classify", "--form", "G", "--weight", "2,0", "--format", "json", "--no-cache"]);
        assert_eq!(with.1, without.1);
        assert_eq!(again.1, without.1);
        let (code, out, _) = run_args(&["cache", "list", "--cache-dir", d]);
        assert_eq!(code, 0);
        assert!(out.contains("1 files"));
        assert_eq!(run_args(&["cache", "clear", "--cache-dir", d]).1, "removed 1 files\n");
    }
}
