//! End-to-end acceptance checks, one line per criterion.
//!
//! Criteria 1-8 and 10 are gating, 9 is reported only. The process exits
//! nonzero on a gating failure only when `SATAKE_W0_STRICT=1`, so that a
//! known counterexample does not hide the other results of a workspace test
//! run.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use satake_w0::cache::SliceCache;
use satake_w0::cli::main_with_args;
use satake_w0::conjecture::{table_predicate, to_json, verify_range, Bounds, VerificationReport};
use satake_w0::hwmodule::{checked_dim, tits_representative, weight_system, HWModule, DEFAULT_DIM_CAP};
use satake_w0::rootsystem::{CartanType, RootSystem, Weight};
use satake_w0::satake::catalog::lookup;
use satake_w0::satake::SatakeDiagram;
use satake_w0::w0action::{classify_slice, involution_check, lift_word, w0_matrix_on_zero_space, Verdict, WordChoice};

type Outcome = Result<(bool, String), String>;

struct Runner {
    gating_failures: Vec<String>,
}

impl Runner {
    fn run(&mut self, id: &str, title: &str, limit: Duration, gating: bool, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (mut ok, mut detail) = match outcome {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if elapsed > limit {
            ok = false;
            detail = format!("{detail}; over time limit of {} s", limit.as_secs());
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        let stretch = if gating { "" } else { " (stretch, non-gating)" };
        println!("[{tag}] {id} {title}{stretch}: {detail} ({:.1} s)", elapsed.as_secs_f64());
        if !ok && gating {
            self.gating_failures.push(id.to_string());
        }
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn modules() -> Vec<(&'static str, Vec<i64>)> {
    let mut v: Vec<(&str, Vec<i64>)> = Vec::new();
    for k in [1, 2, 3, 4, 10] {
        v.push(("A1", vec![k]));
    }
    for l in [[1, 0], [1, 1], [2, 1], [2, 2], [3, 0]] {
        v.push(("A2", l.to_vec()));
    }
    for l in [[1, 0, 0], [0, 1, 0], [1, 0, 1], [1, 1, 1], [0, 2, 0]] {
        v.push(("A3", l.to_vec()));
    }
    for l in [[1, 0], [0, 1], [1, 1], [2, 0], [0, 2], [2, 2]] {
        v.push(("B2", l.to_vec()));
    }
    for l in [[1, 0, 0], [0, 0, 1], [0, 1, 0], [1, 1, 0], [1, 1, 1]] {
        v.push(("B3", l.to_vec()));
    }
    for l in [[1, 0], [0, 1], [1, 1], [2, 1]] {
        v.push(("G2", l.to_vec()));
    }
    v
}

fn form_for(t: CartanType) -> SatakeDiagram {
    match t.to_string().as_str() {
        "B2" => lookup("so(2,3)").unwrap(),
        "B3" => lookup("so(3,4)").unwrap(),
        "G2" => lookup("G").unwrap(),
        _ => SatakeDiagram::split(t),
    }
}

fn a1_a2(mods: &[(RootSystem, HWModule)]) -> (Outcome, Outcome) {
    let mut bad1 = Vec::new();
    let mut bad2 = Vec::new();
    let mut max_dim = 0;
    for (rs, m) in mods {
        let label = format!("{} {}", rs.cartan_type(), m.lambda());
        max_dim = max_dim.max(m.dim());
        let weyl = rs.weyl_dim(m.lambda()).map(|d| d.to_string()).unwrap_or_default();
        let freud = weight_system(rs, m.lambda()).map(|w| w.total().to_string()).unwrap_or_default();
        if weyl != freud || weyl != m.dim().to_string() || m.check_relations(rs).is_err() {
            bad1.push(label.clone());
        }
        let sd = form_for(rs.cartan_type());
        let ok2 = (|| -> satake_w0::Result<bool> {
            let word = lift_word(&sd, WordChoice::default())?;
            let t = tits_representative(m, &word)?;
            Ok(involution_check(&m.zero_slice(rs), &sd)? && m.permutes_blocks(rs, &t.matrix, &word))
        })();
        if !matches!(ok2, Ok(true)) {
            bad2.push(label);
        }
    }
    let n = mods.len();
    let r1 = if bad1.is_empty() {
        Ok((n == 30, format!("{n} modules up to dim {max_dim}: Freudenthal total = Weyl dimension, relations exact")))
    } else {
        Ok((false, format!("failures at {bad1:?}")))
    };
    let r2 = if bad2.is_empty() {
        Ok((true, format!("{n} modules: lift squares to identity on V_0 and permutes weight blocks")))
    } else {
        Ok((false, format!("failures at {bad2:?}")))
    };
    (r1, r2)
}

fn a3() -> Outcome {
    let cases: [(&str, [&[i64]; 3]); 5] = [
        ("G", [&[1, 0], &[0, 1], &[1, 1]]),
        ("FI", [&[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 2]]),
        ("so(2,7)", [&[0, 1, 0, 0], &[2, 0, 0, 0], &[0, 0, 0, 2]]),
        ("so(3,4)", [&[0, 1, 0], &[2, 0, 0], &[0, 0, 2]]),
        ("so*(10)", [&[0, 1, 0, 0, 0], &[2, 0, 0, 0, 0], &[0, 0, 0, 1, 1]]),
    ];
    let cache = SliceCache::in_memory();
    let mut diffs = Vec::new();
    let mut distinct_words = 0;
    let mut nonvacuous = 0;
    for (form, weights) in cases {
        let sd = lookup(form).map_err(e)?;
        let rs = sd.root_system();
        let (w1, w2) = (lift_word(&sd, WordChoice::default()).map_err(e)?, lift_word(&sd, WordChoice::alternative()).map_err(e)?);
        if w1 != w2 {
            distinct_words += 1;
        }
        for l in weights {
            let l = Weight(l.to_vec());
            let slice = cache.get(&rs, &l, DEFAULT_DIM_CAP).map_err(e)?;
            let dim_v = rs.weyl_dim(&l).map_err(e)?;
            let a = classify_slice(&slice, &sd, dim_v.clone(), WordChoice::default()).map_err(e)?;
            let b = classify_slice(&slice, &sd, dim_v, WordChoice::alternative()).map_err(e)?;
            let za = w0_matrix_on_zero_space(&slice, &sd, WordChoice::default()).map_err(e)?;
            let zb = w0_matrix_on_zero_space(&slice, &sd, WordChoice::alternative()).map_err(e)?;
            if a.dim_vl > 0 {
                nonvacuous += 1;
            }
            if a.verdict != b.verdict || a.matrix != b.matrix || za != zb {
                diffs.push(format!("{form} {l}"));
            }
        }
    }
    Ok((
        diffs.is_empty() && distinct_words == 5,
        format!(
            "15 cases ({nonvacuous} nonvacuous), {distinct_words}/5 forms with distinct words; verdicts, V^L and V_0 matrices agree{}",
            if diffs.is_empty() { String::new() } else { format!(" except {diffs:?}") }
        ),
    ))
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with_args(std::iter::once("satake-w0").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn a4(json: &str, code: i32) -> Outcome {
    let v: serde_json::Value = serde_json::from_str(json).map_err(e)?;
    let records = v["records"].as_array().ok_or("no records")?;
    let mut scalar = Vec::new();
    let mut expected = vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1], vec![0, 2]];
    let mut problems = Vec::new();
    for r in records {
        let l: Vec<i64> = serde_json::from_value(r["lambda"].clone()).map_err(e)?;
        let verdict = r["verdict"].as_str().unwrap_or("");
        if matches!(verdict, "PlusId" | "MinusId") {
            scalar.push(l.clone());
        }
        if l == [3, 0] || l == [0, 3] {
            let dim_vl = r["dim_VL"].as_u64().unwrap_or(0);
            let cert = &r["certificate"]["NonScalar"];
            if dim_vl == 0 || verdict != "NonScalar" || cert.is_null() {
                problems.push(format!("{l:?}: {verdict}, dim_VL {dim_vl}"));
            }
        }
    }
    scalar.sort();
    expected.sort();
    let ok = code == 0 && scalar == expected && problems.is_empty() && records.len() == 16;
    Ok((ok, format!("exit {code}; scalar at {scalar:?}; 3w1, 3w2 NonScalar with certificates{}", if problems.is_empty() { String::new() } else { format!(" except {problems:?}") })))
}

fn a5() -> Outcome {
    let sd = lookup("FI").map_err(e)?;
    let rs = sd.root_system();
    let mut got = Vec::new();
    let mut ok = true;
    for (i, kmax) in [(4usize, 3i64), (1, 2)] {
        for k in 1..=kmax {
            let l = Weight::fundamental(4, i).scaled(k);
            let dim_v = checked_dim(&rs, &l, DEFAULT_DIM_CAP).map_err(e)?;
            let slice = satake_w0::hwmodule::ZeroSlice::build(&rs, &l, DEFAULT_DIM_CAP).map_err(e)?;
            let c = classify_slice(&slice, &sd, dim_v, WordChoice::default()).map_err(e)?;
            let scalar = matches!(c.verdict, Verdict::PlusId | Verdict::MinusId);
            ok &= scalar == (k <= 2) && c.dim_vl > 0;
            got.push(format!("{k}w{i}: {} (dim V^L {})", c.verdict, c.dim_vl));
        }
    }
    Ok((ok, got.join(", ")))
}

fn sweep_forms() -> Vec<&'static str> {
    vec![
        "so(1,2)", "so(1,4)", "so(2,3)", "so(1,6)", "so(2,5)", "so(3,4)", "so(1,8)", "so(2,7)", "so(3,6)", "so(4,5)",
        "so(1,5)", "so(2,4)", "so(3,3)", "so(1,7)", "so(2,6)", "so(3,5)", "so(4,4)", "so(1,9)", "so(2,8)", "so(3,7)",
        "so(4,6)", "so(5,5)", "so*(6)", "so*(8)",
    ]
}

fn a6_sweep(jobs: usize) -> Result<Vec<VerificationReport>, String> {
    let cache = SliceCache::in_memory();
    sweep_forms()
        .into_iter()
        .map(|f| {
            let sd = lookup(f).map_err(e)?;
            let bounds = Bounds::scaled(&sd, 3, DEFAULT_DIM_CAP, &cache).map_err(e)?;
            verify_range(&sd, &bounds, &cache, Some(jobs)).map_err(e)
        })
        .collect()
}

fn a6(reports: &[VerificationReport]) -> Outcome {
    let total: usize = reports.iter().map(|r| r.summary.total).sum();
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("a6-skipped.txt");
    let computed: usize = reports.iter().map(|r| r.summary.computed).sum();
    let mut failures = Vec::new();
    let mut skipped = BTreeMap::<String, usize>::new();
    let mut listing = String::new();
    for r in reports {
        for l in &r.failures {
            let rec = r.records.iter().find(|x| &x.lambda == l).unwrap();
            failures.push(format!("{} {:?} ({}, dim_VL {})", r.form, l, rec.verdict.map_or("-".into(), |v| v.to_string()), rec.dim_vl.unwrap_or(0)));
        }
        if !r.skipped.is_empty() {
            skipped.insert(r.form.clone(), r.skipped.len());
        }
        for l in &r.skipped {
            listing += &format!("{} {:?}\n", r.form, l);
        }
    }
    std::fs::write(&path, listing).map_err(e)?;
    let detail = format!(
        "{} forms, {total} weights, {computed} computed, {} skipped over the size cap {:?} (listed in {}), inconsistent {}{}",
        reports.len(),
        total - computed,
        skipped,
        path.display(),
        failures.len(),
        if failures.is_empty() { String::new() } else { format!(": listed in the table but NonScalar at {}", failures.join(", ")) }
    );
    Ok((failures.is_empty(), detail))
}

fn a7() -> Outcome {
    let star = lookup("so*(8)").map_err(e)?;
    let so = lookup("so(2,6)").map_err(e)?;
    let rs = star.root_system();
    let relabel = [4usize, 2, 3, 1];
    let cache = SliceCache::in_memory();
    let mut a = BTreeMap::<String, usize>::new();
    let mut b = BTreeMap::<String, usize>::new();
    let mut mismatches = Vec::new();
    for n in 0..16u32 {
        let l = Weight((0..4).map(|j| i64::from((n >> (3 - j)) & 1)).collect());
        let s = Weight(relabel.iter().map(|&j| l.0[j - 1]).collect());
        let dim = rs.weyl_dim(&l).map_err(e)?;
        let c1 = classify_slice(&*cache.get(&rs, &l, DEFAULT_DIM_CAP).map_err(e)?, &star, dim.clone(), WordChoice::default()).map_err(e)?;
        let c2 = classify_slice(&*cache.get(&rs, &s, DEFAULT_DIM_CAP).map_err(e)?, &so, dim, WordChoice::default()).map_err(e)?;
        *a.entry(c1.verdict.to_string()).or_default() += 1;
        *b.entry(c2.verdict.to_string()).or_default() += 1;
        let member = (table_predicate("so*(8)", &l).map_err(e)?, table_predicate("so(2,6)", &s).map_err(e)?);
        if c1.verdict != c2.verdict || c1.dim_vl != c2.dim_vl || member.0 != member.1 {
            mismatches.push(format!("{l} vs {s}"));
        }
    }
    Ok((a == b && mismatches.is_empty(), format!("16 weights, verdicts {a:?} vs {b:?}, per-weight mismatches {mismatches:?}")))
}

fn a8() -> Outcome {
    let (code, out) = cli(&["classify", "--form", "so(2,7)", "--weight", "1,0,0,0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).map_err(e)?;
    let verdict = v["verdict"].as_str().unwrap_or("").to_string();
    let member = v["table_member"].as_bool().unwrap_or(false);
    let consistent = satake_w0::conjecture::consistent(member, Verdict::VacuousZero, 0);
    Ok((
        code == 0 && verdict == "VacuousZero" && member && v["dim_VL"] == 0 && consistent,
        format!("verdict {verdict}, dim_VL {}, table_member {member}, consistent {consistent}", v["dim_VL"]),
    ))
}

fn a9() -> Outcome {
    let sd = lookup("EIII").map_err(e)?;
    let rs = sd.root_system();
    let mut parts = Vec::new();
    let mut ok = true;
    for k in 0..=3 {
        let l = Weight::fundamental(6, 1).scaled(k);
        let dim = checked_dim(&rs, &l, DEFAULT_DIM_CAP).map_err(e)?;
        let slice = satake_w0::hwmodule::ZeroSlice::build(&rs, &l, DEFAULT_DIM_CAP).map_err(e)?;
        let c = classify_slice(&slice, &sd, dim, WordChoice::default()).map_err(e)?;
        if k <= 2 {
            ok &= c.verdict != Verdict::NonScalar;
        }
        parts.push(format!("{k}w1: {} (dim V^L {})", c.verdict, c.dim_vl));
    }
    Ok((ok, format!("{}; k = 1, 2 hold only vacuously", parts.join(", "))))
}

fn main() {
    let mut runner = Runner { gating_failures: Vec::new() };
    let min = |m: u64| Duration::from_secs(60 * m);

    let mut r2: Outcome = Err("not run".to_string());
    let t1 = Instant::now();
    runner.run("A1", "construction soundness", min(2), true, || {
        let mods = modules()
            .into_iter()
            .map(|(t, l)| {
                let rs = RootSystem::new(t.parse().map_err(e)?).map_err(e)?;
                let m = HWModule::build(&rs, &Weight(l), 3000).map_err(e)?;
                Ok((rs, m))
            })
            .collect::<Result<Vec<_>, String>>()?;
        let (r1, second) = a1_a2(&mods);
        r2 = second;
        r1
    });
    // criterion 2 shares the budget of criterion 1
    let shared = t1.elapsed();
    runner.run("A2", "representative sanity", min(2).saturating_sub(shared), true, || {
        r2.map(|(ok, d)| (ok, format!("{d}; computed with A1")))
    });
    runner.run("A3", "word independence", min(10), true, a3);

    let mut g_run = (0, String::new());
    runner.run("A4", "G2 reproduction", min(2), true, || {
        g_run = cli(&["verify", "--form", "G", "--max-coeff", "3", "--format", "json", "--jobs", "1"]);
        a4(&g_run.1, g_run.0)
    });
    let (code1, json1) = g_run;
    runner.run("A5", "FI reproduction", min(15), true, a5);

    let mut sweep1: Result<Vec<VerificationReport>, String> = Err("not run".to_string());
    runner.run("A6", "orthogonal sweep", min(45), true, || {
        sweep1 = a6_sweep(1);
        a6(sweep1.as_ref().map_err(Clone::clone)?)
    });
    runner.run("A7", "alias coherence", min(10), true, a7);
    runner.run("A8", "vacuous case", Duration::from_secs(60), true, a8);
    runner.run("A9", "EIII", min(30), false, a9);
    runner.run("A10", "determinism", min(60), true, || {
        let (code2, json2) = cli(&["verify", "--form", "G", "--max-coeff", "3", "--format", "json", "--jobs", "2"]);
        let sweep2 = a6_sweep(2)?;
        let sweep1 = sweep1.as_ref().map_err(Clone::clone)?;
        let mut differing = Vec::new();
        for (a, b) in sweep1.iter().zip(&sweep2) {
            if to_json(a).map_err(e)? != to_json(b).map_err(e)? {
                differing.push(a.form.clone());
            }
        }
        let same4 = code1 == code2 && json1 == json2;
        Ok((
            same4 && differing.is_empty() && sweep1.len() == sweep2.len(),
            format!("G sweep identical: {same4}; orthogonal sweep identical for {}/{} forms (jobs 1 vs 2)", sweep1.len() - differing.len(), sweep1.len()),
        ))
    });

    if runner.gating_failures.is_empty() {
        println!("all gating criteria pass");
    } else {
        println!("gating criteria failing: {}", runner.gating_failures.join(", "));
        if std::env::var("SATAKE_W0_STRICT").is_ok_and(|v| v == "1") {
            std::process::exit(1);
        }
    }
}
