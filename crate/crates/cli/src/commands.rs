use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use serde::Serialize;

use polymatroid::cone::{
    cached_facets_checked, classify_isomorphism, enumerate_extreme_rays, find_elimination, lemma_filter,
    verify_survivors, Elimination, EnumerationOptions, ExtremeRay, IsoClass,
};
use polymatroid::extend::{check_star, is_linear, validate_excess, StarReport};
use polymatroid::flats::{flats, nonmodular_flat_pairs};
use polymatroid::io;
use polymatroid::linrep::{intersection_extension, rank_from_representation};
use polymatroid::pipeline::{run_pipeline, PipelineCertificate, PipelineOptions};
use polymatroid::setfun::{rat, RankFunction, ValidationMode, ValidationReport};
use polymatroid::subset::{GroundSet, SubsetId};

use crate::{Format, GlobalOpts, Input, Outcome};

fn read_polymatroids(input: &Input) -> anyhow::Result<Vec<RankFunction>> {
    let text = match (&input.expr, &input.path) {
        (Some(expr), _) => expr.clone(),
        (None, Some(p)) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        (None, Some(p)) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        (None, None) => bail!("no input given"),
    };
    Ok(io::parse_polymatroids(&text)?)
}

fn emit_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Success
    } else {
        Outcome::Failure
    }
}

fn names(ground: &GroundSet, sets: &[SubsetId]) -> Vec<String> {
    sets.iter().map(|&s| ground.format(s)).collect()
}

fn braced(ground: &GroundSet, sets: &[SubsetId]) -> String {
    format!("{{{}}}", names(ground, sets).join(", "))
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct ViolationOut {
    inequality: String,
    subsets: Vec<String>,
    slack: String,
}

#[derive(Serialize)]
struct ValidationOut {
    valid: bool,
    violation_count: usize,
    violations: Vec<ViolationOut>,
}

impl ValidationOut {
    fn new(ground: &GroundSet, r: &ValidationReport) -> Self {
        ValidationOut {
            valid: r.valid,
            violation_count: r.violation_count,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationOut {
                    inequality: v.inequality.clone(),
                    subsets: names(ground, &v.subsets),
                    slack: v.slack.clone(),
                })
                .collect(),
        }
    }

    fn print_text(&self, indent: &str) {
        for v in &self.violations {
            println!("{indent}violated: {} (slack {})", v.inequality, v.slack);
        }
        if self.violation_count > self.violations.len() {
            println!("{indent}... {} more", self.violation_count - self.violations.len());
        }
    }
}

#[derive(Serialize)]
struct ValidateEntry {
    index: usize,
    vector: String,
    #[serde(flatten)]
    report: ValidationOut,
}

#[derive(Serialize)]
struct ValidateOut {
    command: &'static str,
    mode: ValidationMode,
    valid: bool,
    results: Vec<ValidateEntry>,
}

pub fn validate(g: &GlobalOpts, input: &Input, mode: ValidationMode) -> anyhow::Result<Outcome> {
    let list = read_polymatroids(input)?;
    let results: Vec<ValidateEntry> = list
        .iter()
        .enumerate()
        .map(|(i, f)| ValidateEntry {
            index: i + 1,
            vector: f.to_string(),
            report: ValidationOut::new(f.ground(), &f.validate(mode)),
        })
        .collect();
    let valid = results.iter().all(|r| r.report.valid);
    match g.format {
        Format::Json => emit_json(&ValidateOut { command: "validate", mode, valid, results })?,
        Format::Text => {
            for r in &results {
                let verdict = if r.report.valid {
                    "valid".to_string()
                } else {
                    format!("invalid ({} violations)", r.report.violation_count)
                };
                println!("polymatroid {}: {verdict}", r.index);
                r.report.print_text("  ");
            }
        }
    }
    Ok(outcome(valid))
}

#[derive(Serialize)]
struct PairOut {
    first: String,
    second: String,
    defect: String,
    intersecting: bool,
}

#[derive(Serialize)]
struct StarOut {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    first: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    second: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cut: Option<Vec<String>>,
}

impl StarOut {
    fn new(ground: &GroundSet, star: &StarReport) -> Self {
        match star {
            StarReport::Witnessed { first, second, cut } => StarOut {
                status: star.status(),
                first: Some(ground.format(*first)),
                second: Some(ground.format(*second)),
                cut: Some(names(ground, cut)),
            },
            _ => StarOut { status: star.status(), first: None, second: None, cut: None },
        }
    }

    fn text(&self) -> String {
        match (&self.first, &self.second, &self.cut) {
            (Some(a), Some(b), Some(cut)) => format!("witnessed by {a}, {b}; cut {{{}}}", cut.join(", ")),
            _ => self.status.to_string(),
        }
    }
}

#[derive(Serialize)]
struct EliminationOut {
    rule: &'static str,
    first: String,
    second: String,
    defect: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    cut: Option<Vec<String>>,
}

impl EliminationOut {
    fn new(ground: &GroundSet, e: &Elimination) -> Self {
        EliminationOut {
            rule: e.rule.label(),
            first: ground.format(e.first),
            second: ground.format(e.second),
            defect: e.defect.clone(),
            cut: e.cut.as_ref().map(|c| names(ground, c)),
        }
    }

    fn text(&self) -> String {
        let mut s = format!("rule ({}) on {}, {} (defect {})", self.rule, self.first, self.second, self.defect);
        if let Some(cut) = &self.cut {
            s.push_str(&format!("; cut {{{}}}", cut.join(", ")));
        }
        s
    }
}

#[derive(Serialize)]
struct AnalyzeEntry {
    index: usize,
    vector: String,
    n: usize,
    validation: ValidationOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    flats: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nonmodular_flat_pairs: Option<Vec<PairOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    star: Option<StarOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    linear: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failing_pair: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elimination: Option<EliminationOut>,
}

fn analyze_one(index: usize, f: &RankFunction) -> AnalyzeEntry {
    let ground = f.ground();
    let validation = ValidationOut::new(ground, &f.validate(ValidationMode::Full));
    let mut entry = AnalyzeEntry {
        index,
        vector: f.to_string(),
        n: f.n(),
        validation,
        flats: None,
        nonmodular_flat_pairs: None,
        star: None,
        linear: None,
        failing_pair: None,
        elimination: None,
    };
    if !entry.validation.valid {
        return entry;
    }
    entry.flats = Some(names(ground, flats(f).sorted()));
    entry.nonmodular_flat_pairs = Some(
        nonmodular_flat_pairs(f, false)
            .into_iter()
            .map(|p| PairOut {
                first: ground.format(p.first),
                second: ground.format(p.second),
                defect: p.defect,
                intersecting: !p.first.intersection(p.second).is_empty(),
            })
            .collect(),
    );
    entry.star = Some(StarOut::new(ground, &check_star(f)));
    let lin = is_linear(f);
    entry.linear = Some(lin.linear);
    entry.failing_pair = lin.failing_pair.map(|(x, y)| [ground.format(x), ground.format(y)]);
    entry.elimination = find_elimination(f).map(|e| EliminationOut::new(ground, &e));
    entry
}

pub fn analyze(g: &GlobalOpts, input: &Input) -> anyhow::Result<Outcome> {
    let list = read_polymatroids(input)?;
    let entries: Vec<AnalyzeEntry> = list.iter().enumerate().map(|(i, f)| analyze_one(i + 1, f)).collect();
    let ok = entries.iter().all(|e| e.validation.valid && e.star.as_ref().is_some_and(|s| s.status != "violated"));
    match g.format {
        Format::Json => emit_json(&entries)?,
        Format::Text => {
            for e in &entries {
                println!("polymatroid {}: {}", e.index, e.vector);
                if !e.validation.valid {
                    println!("  not a polymatroid ({} violations)", e.validation.violation_count);
                    e.validation.print_text("  ");
                    continue;
                }
                println!("  flats: {}", e.flats.as_deref().unwrap_or_default().join(" "));
                let pairs = e.nonmodular_flat_pairs.as_deref().unwrap_or_default();
                if pairs.is_empty() {
                    println!("  non-modular flat pairs: none");
                } else {
                    let shown: Vec<String> =
                        pairs.iter().map(|p| format!("({}, {}) defect {}", p.first, p.second, p.defect)).collect();
                    println!("  non-modular flat pairs: {}", shown.join("; "));
                }
                println!("  star: {}", e.star.as_ref().map(StarOut::text).unwrap_or_default());
                match (&e.linear, &e.failing_pair) {
                    (Some(true), _) => println!("  linear: yes"),
                    (_, Some([x, y])) => println!("  linear: no ({x}, {y} not intersectable)"),
                    _ => println!("  linear: no"),
                }
                match &e.elimination {
                    Some(el) => println!("  elimination: {}", el.text()),
                    None => println!("  elimination: none"),
                }
            }
        }
    }
    Ok(outcome(ok))
}

pub fn check_certificate(g: &GlobalOpts, path: &Path) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cert: PipelineCertificate = serde_json::from_str(&text).context("parsing certificate")?;
    let check = cert.revalidate();
    #[derive(Serialize)]
    struct Out<'a> {
        consistent: bool,
        error: Option<&'a str>,
        verdict: &'a str,
        sections: usize,
    }
    let out = Out {
        consistent: check.is_ok(),
        error: check.as_ref().err().map(String::as_str),
        verdict: &cert.verdict,
        sections: cert.sections.len(),
    };
    match g.format {
        Format::Json => emit_json(&out)?,
        Format::Text => match &check {
            Ok(()) => println!("certificate consistent: {} sections, verdict {}", out.sections, cert.verdict),
            Err(e) => println!("certificate rejected: {e}"),
        },
    }
    Ok(outcome(check.is_ok() && cert.passed()))
}

pub struct RaysOptions {
    pub n: usize,
    pub import: Option<PathBuf>,
    pub export: Option<PathBuf>,
    pub classify: bool,
    pub filter: bool,
    pub verify: bool,
    pub list: bool,
}

#[derive(Serialize)]
struct ClassOut {
    vector: Vec<i64>,
    orbit_size: usize,
}

#[derive(Serialize)]
struct EliminatedOut {
    vector: Vec<i64>,
    elimination: EliminationOut,
}

#[derive(Serialize)]
struct SurvivorOut {
    vector: Vec<i64>,
    linear: bool,
    star: StarOut,
}

#[derive(Serialize)]
struct VerificationOut {
    all_survivors_linear: bool,
    any_star_violated: bool,
    survivors: Vec<SurvivorOut>,
}

#[derive(Serialize)]
struct RaysOut {
    n: usize,
    source: String,
    rays: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    ray_list: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<ClassOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    survivors: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eliminated: Option<Vec<EliminatedOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationOut>,
}

fn class_out(c: &IsoClass) -> ClassOut {
    ClassOut { vector: c.representative.display_vector(), orbit_size: c.orbit_size }
}

pub fn rays(g: &GlobalOpts, o: &RaysOptions) -> anyhow::Result<Outcome> {
    let facets = cached_facets_checked(o.n)?;
    let ground = GroundSet::new(o.n)?;
    let start = Instant::now();
    let (rays, source): (Vec<ExtremeRay>, String) = match &o.import {
        Some(p) => (io::import_rays(p, o.n)?, format!("imported:{}", p.display())),
        None => {
            let opts = EnumerationOptions { budget: g.budget(), check_invariants: false };
            (enumerate_extreme_rays(facets, &opts)?, "enumerated".into())
        }
    };
    let ray_secs = start.elapsed().as_secs_f64();
    if let Some(p) = &o.export {
        io::export_rays(p, o.n, &rays)?;
    }
    let mut out = RaysOut {
        n: o.n,
        source,
        rays: rays.len(),
        ray_list: o.list.then(|| rays.iter().map(ExtremeRay::display_vector).collect()),
        classes: None,
        survivors: None,
        eliminated: None,
        verification: None,
    };
    let mut ok = true;
    if o.classify {
        let classes = classify_isomorphism(&rays);
        out.classes = Some(classes.iter().map(class_out).collect());
        if o.filter {
            let outcome = lemma_filter(&classes);
            out.survivors = Some(outcome.survivors.iter().map(|c| c.representative.display_vector()).collect());
            out.eliminated = Some(
                outcome
                    .eliminated
                    .iter()
                    .map(|(c, e)| EliminatedOut {
                        vector: c.representative.display_vector(),
                        elimination: EliminationOut::new(&ground, e),
                    })
                    .collect(),
            );
            if o.verify {
                let report = verify_survivors(&outcome);
                ok = report.all_survivors_linear && !report.any_star_violated;
                out.verification = Some(VerificationOut {
                    all_survivors_linear: report.all_survivors_linear,
                    any_star_violated: report.any_star_violated,
                    survivors: report
                        .survivors
                        .iter()
                        .map(|s| SurvivorOut {
                            vector: s.vector.clone(),
                            linear: s.linearity.linear,
                            star: StarOut::new(&ground, &s.star),
                        })
                        .collect(),
                });
            }
        }
    }
    match g.format {
        Format::Json => emit_json(&out)?,
        Format::Text => print_rays_text(&out, ray_secs, o.list),
    }
    Ok(outcome(ok))
}

fn print_rays_text(out: &RaysOut, secs: f64, list: bool) {
    println!("n={}: {} extreme rays ({}, {secs:.2} s)", out.n, out.rays, out.source);
    if let Some(rays) = &out.ray_list {
        for r in rays {
            println!("  {}", join(r));
        }
    }
    if let Some(classes) = &out.classes {
        println!("isomorphism classes: {}", classes.len());
        if list {
            for c in classes {
                println!("  {}  (orbit {})", join(&c.vector), c.orbit_size);
            }
        }
    }
    if let (Some(surv), Some(elim)) = (&out.survivors, &out.eliminated) {
        let by_rule = |r: &str| elim.iter().filter(|e| e.elimination.rule == r).count();
        println!(
            "survivors: {}, eliminated: {} (rule a: {}, rule b: {})",
            surv.len(),
            elim.len(),
            by_rule("a"),
            by_rule("b")
        );
        if list {
            for s in surv {
                println!("  {}", join(s));
            }
        }
    }
    if let Some(v) = &out.verification {
        println!("all survivors linear: {}", if v.all_survivors_linear { "yes" } else { "no" });
        println!("star property violated by some class: {}", if v.any_star_violated { "yes" } else { "no" });
    }
}

pub fn verify_paper(
    g: &GlobalOpts,
    max_n: usize,
    rays_from: Vec<PathBuf>,
    certificate: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let opts = PipelineOptions { max_n, rays_from, budget: g.budget() };
    let cert = run_pipeline(&opts, &mut |line| eprintln!("{line}")).map_err(|e| match e {
        polymatroid::Error::BudgetExceeded(_) => {
            anyhow::anyhow!("{e}; export rays elsewhere with `rays N --export PATH` and pass `--rays-from PATH`")
        }
        other => other.into(),
    })?;
    if let Some(path) = certificate {
        let mut text = serde_json::to_string_pretty(&cert)?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    match g.format {
        Format::Json => emit_json(&cert)?,
        Format::Text => {
            for s in &cert.sections {
                let ground = GroundSet::new(s.n)?;
                println!(
                    "n={}: rays {}/{}, classes {}/{}, survivors {}, star violations {}",
                    s.n, s.rays, s.expected_rays, s.classes, s.expected_classes, s.survivors, s.star_violations
                );
                for t in &s.tables {
                    println!("  {}: {}", t.table, if t.matched { "match" } else { "MISMATCH" });
                }
                if let Some(nc) = &s.named_cut {
                    println!(
                        "  cut generated by {}, {}: {} ({})",
                        ground.format(nc.first),
                        ground.format(nc.second),
                        braced(&ground, &nc.cut),
                        if nc.principal { "principal" } else { "not principal" }
                    );
                }
            }
            for f in &cert.failures {
                println!("failure: {f}");
            }
            println!("verdict: {}", cert.verdict);
        }
    }
    Ok(outcome(cert.passed()))
}

#[derive(Serialize)]
struct PairCheckOut {
    x: String,
    y: String,
    defect: String,
    e_x: String,
    e_y: String,
    e_meet: String,
    excess_valid: bool,
    ok: bool,
}

#[derive(Serialize)]
struct LinrepOut {
    prime: u64,
    dimension: usize,
    rank: String,
    validation: ValidationOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches_expected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair: Option<PairCheckOut>,
}

pub fn linrep_check(
    g: &GlobalOpts,
    path: &Path,
    expect: Option<&str>,
    pair: Option<Vec<String>>,
) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rep = io::parse_linrep(&text)?;
    let f = rank_from_representation(&rep);
    let ground = rep.ground();
    let matches_expected = match expect {
        Some(v) => {
            let want = io::parse_polymatroid(v)?;
            Some(want.display_values() == f.display_values())
        }
        None => None,
    };
    let pair = match pair.as_deref() {
        Some([x, y]) => {
            let (x, y) = (ground.parse_subset(x)?, ground.parse_subset(y)?);
            let e = intersection_extension(&rep, x, y)?;
            let defect = f.modular_defect(x, y);
            let meet = x.intersection(y);
            let excess_valid = validate_excess(&f, &e)?.valid;
            let zero = rat(0);
            let ok = e.value(x) == &zero && e.value(y) == &zero && e.value(meet) == &defect && excess_valid;
            Some(PairCheckOut {
                x: ground.format(x),
                y: ground.format(y),
                defect: defect.to_string(),
                e_x: e.value(x).to_string(),
                e_y: e.value(y).to_string(),
                e_meet: e.value(meet).to_string(),
                excess_valid,
                ok,
            })
        }
        Some(_) => bail!("--pair takes two subsets"),
        None => None,
    };
    let out = LinrepOut {
        prime: rep.prime(),
        dimension: rep.dimension(),
        rank: f.to_string(),
        validation: ValidationOut::new(ground, &f.validate(ValidationMode::Full)),
        matches_expected,
        pair,
    };
    let ok = out.validation.valid && out.matches_expected != Some(false) && out.pair.as_ref().is_none_or(|p| p.ok);
    match g.format {
        Format::Json => emit_json(&out)?,
        Format::Text => {
            println!("GF({}) representation in dimension {}", out.prime, out.dimension);
            println!("rank: {}", out.rank);
            println!("polymatroid: {}", if out.validation.valid { "valid" } else { "invalid" });
            if let Some(m) = out.matches_expected {
                println!("expected vector: {}", if m { "match" } else { "MISMATCH" });
            }
            if let Some(p) = &out.pair {
                println!(
                    "intersection extension for {}, {}: e({}) = {}, e({}) = {}, e(meet) = {}, defect = {}, excess {}",
                    p.x,
                    p.y,
                    p.x,
                    p.e_x,
                    p.y,
                    p.e_y,
                    p.e_meet,
                    p.defect,
                    if p.excess_valid { "valid" } else { "INVALID" }
                );
            }
        }
    }
    Ok(outcome(ok))
}
