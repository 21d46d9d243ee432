//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.
//!
//! `POLYMATROID_N5_BUDGET` caps the five-element enumeration in seconds
//! (default 3600).

#[path = "../../core/tests/common/mod.rs"]
mod common;
#[path = "../../core/tests/suites/mod.rs"]
mod suites;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use polymatroid::catalog::{self, Entry};
use polymatroid::cone::{
    cached_facets_checked, classify_isomorphism, enumerate_extreme_rays, find_elimination, lemma_filter, Budget,
    EliminationRule, EnumerationOptions, ExtremeRay, FilterOutcome,
};
use polymatroid::extend::{check_star, is_linear};
use polymatroid::io::{export_rays, import_rays, parse_linrep};
use polymatroid::linrep::rank_from_representation;
use polymatroid::pipeline::PipelineCertificate;
use polymatroid::{IsoClass, RankFunction, SubsetId};
use rayon::prelude::*;

const M10_OVER_GF2: &str = "linrep v1 p=2 d=3\na: 1 0 0\nb: 0 1 0\nc: 0 0 1\nd: 1 1 0; 1 0 1\n";

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

struct Data {
    rays: Vec<Vec<ExtremeRay>>,
    times: Vec<Duration>,
    classes: Vec<Vec<IsoClass>>,
    outcome5: FilterOutcome,
    ray_file: tempfile::NamedTempFile,
}

fn n5_budget() -> f64 {
    std::env::var("POLYMATROID_N5_BUDGET").ok().and_then(|v| v.parse().ok()).unwrap_or(3600.0)
}

fn compute() -> Result<Data, String> {
    let mut rays = vec![Vec::new(), Vec::new()];
    let mut times = vec![Duration::ZERO; 2];
    for n in 2..=5 {
        let facets = cached_facets_checked(n).map_err(|e| e.to_string())?;
        let opts = if n == 5 {
            EnumerationOptions {
                budget: Budget { max_seconds: Some(n5_budget()), max_rays: None },
                check_invariants: false,
            }
        } else {
            EnumerationOptions::default()
        };
        let start = Instant::now();
        let r = enumerate_extreme_rays(facets, &opts).map_err(|e| format!("n = {n}: {e}"))?;
        times.push(start.elapsed());
        rays.push(r);
    }
    let classes: Vec<Vec<IsoClass>> = rays.iter().map(|r| classify_isomorphism(r)).collect();
    let outcome5 = lemma_filter(&classes[5]);
    let ray_file = tempfile::Builder::new().suffix(".rays").tempfile().map_err(|e| e.to_string())?;
    export_rays(ray_file.path(), 5, &rays[5]).map_err(|e| e.to_string())?;
    Ok(Data { rays, times, classes, outcome5, ray_file })
}

fn canonical_set(vectors: impl IntoIterator<Item = RankFunction>) -> BTreeSet<String> {
    vectors.into_iter().map(|f| f.canonical_form().to_string()).collect()
}

fn table_set(table: &[Entry]) -> BTreeSet<String> {
    canonical_set(table.iter().map(Entry::rank_function))
}

fn class_set(classes: &[IsoClass]) -> BTreeSet<String> {
    canonical_set(classes.iter().map(|c| c.representative.to_rank_function()))
}

fn ray_counts(d: &Data) -> Verdict {
    let mut parts = Vec::new();
    for n in 2..=5 {
        let expected = catalog::expected_counts(n).unwrap().0;
        ensure(d.rays[n].len() == expected, format!("n = {n}: {} rays, expected {expected}", d.rays[n].len()))?;
        if n <= 4 {
            ensure(d.times[n] < Duration::from_secs(5), format!("n = {n} took {:?}", d.times[n]))?;
        }
        parts.push(format!("n={n}: {} in {:.2?}", d.rays[n].len(), d.times[n]));
    }
    let imported = import_rays(d.ray_file.path(), 5).map_err(|e| format!("re-import: {e}"))?;
    ensure(imported == d.rays[5], "re-imported n = 5 rays differ")?;
    parts.push(format!("re-import {}", imported.len()));
    Ok(parts.join(", "))
}

fn class_counts(d: &Data) -> Verdict {
    for (n, table) in [(3, catalog::THREE_ELEMENT_CLASSES), (4, catalog::FOUR_ELEMENT_CLASSES)] {
        let got = class_set(&d.classes[n]);
        ensure(got == table_set(table), format!("n = {n}: classes differ from the table"))?;
        ensure(got.len() == table.len(), format!("n = {n}: {} classes", got.len()))?;
    }
    let n5 = d.classes[5].len();
    ensure(n5 == 1320, format!("n = 5: {n5} classes"))?;
    let orbit_total: usize = d.classes[5].iter().map(|c| c.orbit_size).sum();
    ensure(orbit_total == d.rays[5].len(), "n = 5 orbit sizes do not add up")?;
    Ok(format!("4 / 11 match the tables, {n5} at n=5"))
}

fn lemma_filter_result(d: &Data) -> Verdict {
    let survivors = class_set(&d.outcome5.survivors);
    ensure(survivors.len() == 17, format!("{} survivors", survivors.len()))?;
    ensure(survivors == table_set(catalog::FIVE_ELEMENT_SURVIVORS), "survivors differ from the table")?;

    let m11 = catalog::FOUR_ELEMENT_CLASSES.iter().find(|e| e.name == "M_11").unwrap().rank_function();
    let e = find_elimination(&m11).ok_or("M_11 is not eliminated")?;
    let (ac, bd) = (SubsetId(0b0101), SubsetId(0b1010));
    ensure(e.rule == EliminationRule::NonPrincipalDisjointCut, "M_11 rule is not (b)")?;
    ensure((e.first, e.second) == (ac, bd), format!("M_11 witness is {:?}, {:?}", e.first, e.second))?;
    let expected_cut = vec![ac, bd, SubsetId(0b1111)];
    ensure(e.cut.as_ref() == Some(&expected_cut), format!("M_11 cut is {:?}", e.cut))?;
    e.revalidate(&m11)?;
    Ok(format!("17 survivors match, {} eliminated; M_11 by (b) with cut {{ac, bd, abcd}}", d.outcome5.eliminated.len()))
}

fn star_property(d: &Data) -> Verdict {
    let start = Instant::now();
    for n in [4, 5] {
        let violated =
            d.classes[n].par_iter().filter(|c| check_star(&c.representative.to_rank_function()).is_violated()).count();
        ensure(violated == 0, format!("n = {n}: {violated} classes violate the star property"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), format!("star checks took {elapsed:?}"))?;
    Ok(format!("11 + 1320 classes, none violated, {elapsed:.2?}"))
}

fn linearity(d: &Data) -> Verdict {
    let mut checked: Vec<RankFunction> = Vec::new();
    for n in 2..=3 {
        checked.extend(d.classes[n].iter().map(|c| c.representative.to_rank_function()));
    }
    checked.extend(catalog::FOUR_ELEMENT_CLASSES.iter().filter(|e| e.name != "M_11").map(Entry::rank_function));
    checked.extend(d.outcome5.survivors.iter().map(|c| c.representative.to_rank_function()));
    let failing: Vec<String> = checked.par_iter().filter(|f| !is_linear(f).linear).map(|f| f.to_string()).collect();
    ensure(failing.is_empty(), format!("not linear: {}", failing.join(" | ")))?;
    Ok(format!("{} polymatroids linear", checked.len()))
}

fn representation_oracle() -> Verdict {
    let rep = parse_linrep(M10_OVER_GF2).map_err(|e| e.to_string())?;
    let got = rank_from_representation(&rep);
    let m10 = catalog::FOUR_ELEMENT_CLASSES.iter().find(|e| e.name == "M_10").unwrap().rank_function();
    ensure(got == m10, format!("GF(2) representation gives {got}"))?;
    Ok(format!("GF(2) recipe gives {got}"))
}

fn property_suites() -> Verdict {
    let mut parts = Vec::new();
    for (name, suite) in suites::ALL {
        let cases = suite().map_err(|e| format!("{name}: {e}"))?;
        ensure(cases >= 200, format!("{name}: only {cases} cases"))?;
        parts.push(cases.to_string());
    }
    Ok(format!("{} suites, cases {}", suites::ALL.len(), parts.join("/")))
}

fn pipeline(d: &Data) -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cert_path = dir.path().join("certificate.json");
    let bin = Path::new(env!("CARGO_BIN_EXE_polymatroid"));
    let start = Instant::now();
    let out = Command::new(bin)
        .arg("verify-paper")
        .args(["--max-n", "5", "--rays-from"])
        .arg(d.ray_file.path())
        .arg("--certificate")
        .arg(&cert_path)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        out.status.success(),
        format!("verify-paper exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)),
    )?;
    let elapsed = start.elapsed();
    let text = std::fs::read_to_string(&cert_path).map_err(|e| e.to_string())?;
    let cert: PipelineCertificate = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(cert.passed(), format!("verdict {}: {:?}", cert.verdict, cert.failures))?;
    cert.revalidate().map_err(|e| format!("certificate does not re-validate: {e}"))?;
    let check = Command::new(bin).arg("check-certificate").arg(&cert_path).output().map_err(|e| e.to_string())?;
    ensure(check.status.success(), "check-certificate rejected the certificate")?;
    Ok(format!("PASS in {elapsed:.2?}, {} sections re-validated", cert.sections.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let data = compute();
    let results: Vec<(&str, Verdict)> = match &data {
        Ok(d) => vec![
            ("1 ray counts", ray_counts(d)),
            ("2 isomorphism classes", class_counts(d)),
            ("3 elimination rules", lemma_filter_result(d)),
            ("4 star property", star_property(d)),
            ("5 linearity", linearity(d)),
            ("6 representation oracle", representation_oracle()),
            ("7 property suites", property_suites()),
            ("8 verify-paper certificate", pipeline(d)),
        ],
        Err(e) => {
            let skipped = |_| Err(format!("enumeration failed: {e}"));
            vec![
                ("1 ray counts", Err(e.clone())),
                ("2 isomorphism classes", skipped(())),
                ("3 elimination rules", skipped(())),
                ("4 star property", skipped(())),
                ("5 linearity", skipped(())),
                ("6 representation oracle", representation_oracle()),
                ("7 property suites", property_suites()),
                ("8 verify-paper certificate", skipped(())),
            ]
        }
    };
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    println!("acceptance: {} of {} passed in {:.1?}", results.len() - failed, results.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
