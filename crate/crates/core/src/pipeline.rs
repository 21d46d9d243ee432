//! End-to-end reproduction of the small-ground-set computations: enumerate
//! (or import) the extreme rays for each `n`, classify them, apply the
//! elimination rules, and check linearity and the star property. The result
//! is a certificate whose witnesses can be re-checked independently.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, Entry};
use crate::cone::{
    cached_facets, canonical_display, classify_isomorphism, enumerate_extreme_rays, find_elimination, Budget,
    Elimination, EliminationRule, EnumerationOptions, ExtremeRay,
};
use crate::cuts::generate_modular_cut;
use crate::error::{Error, Result};
use crate::extend::{check_star, is_intersectable, is_linear, Intersectability, LinearityReport, StarReport};
use crate::flats::{flats, nonmodular_flat_pairs};
use crate::io::{import_rays, ray_file_size};
use crate::perm::PermutationTable;
use crate::subset::SubsetId;

pub const CERTIFICATE_FORMAT: &str = "polymatroid-certificate v1";

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Largest ground set size, in `2..=5`.
    pub max_n: usize,
    /// Ray files to use instead of enumeration, keyed by the `n` in their
    /// header.
    pub rays_from: Vec<PathBuf>,
    pub budget: Budget,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { max_n: 4, rays_from: Vec::new(), budget: Budget::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMatch {
    pub table: String,
    pub matched: bool,
    /// Table rows (canonical) not found among the computed vectors.
    pub missing: Vec<Vec<i64>>,
    /// Computed vectors (canonical) absent from the table.
    pub unexpected: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    /// Canonical display vector.
    pub vector: Vec<i64>,
    pub orbit_size: usize,
    pub star: StarReport,
    pub elimination: Option<Elimination>,
    /// Present for every class when `n <= 4`, and for survivors otherwise.
    pub linearity: Option<LinearityReport>,
}

/// The named disjoint-flat witness on the published labelling of the last
/// four-element table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCutCheck {
    pub polymatroid: Vec<i64>,
    pub first: SubsetId,
    pub second: SubsetId,
    pub cut: Vec<SubsetId>,
    pub principal: bool,
    /// Rule assigned to the class by the filter.
    pub class_rule: Option<EliminationRule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub n: usize,
    pub ray_source: String,
    pub rays: usize,
    pub expected_rays: usize,
    pub classes: usize,
    pub expected_classes: usize,
    pub tables: Vec<TableMatch>,
    pub survivors: usize,
    pub star_violations: usize,
    pub non_linear_checked: Vec<Vec<i64>>,
    pub named_cut: Option<NamedCutCheck>,
    pub class_list: Vec<ClassEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineCertificate {
    pub format: String,
    pub max_n: usize,
    pub sections: Vec<Section>,
    pub failures: Vec<String>,
    pub verdict: String,
}

impl PipelineCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }
}

fn canonical_of(table: &PermutationTable, n: usize, e: &Entry) -> Result<Vec<i64>> {
    let ray = ExtremeRay::from_display(cached_facets(n), e.ranks)
        .map_err(|err| Error::NotExtreme(format!("table row {}: {err}", e.name)))?;
    Ok(canonical_display(table, &ray).0)
}

fn compare(table: &str, want: BTreeSet<Vec<i64>>, got: BTreeSet<Vec<i64>>) -> TableMatch {
    let missing: Vec<_> = want.difference(&got).cloned().collect();
    let unexpected: Vec<_> = got.difference(&want).cloned().collect();
    TableMatch { table: table.into(), matched: missing.is_empty() && unexpected.is_empty(), missing, unexpected }
}

fn named_cut_check(class_list: &[ClassEntry], table: &PermutationTable) -> Result<NamedCutCheck> {
    let row = catalog::FOUR_ELEMENT_CLASSES.last().expect("nonempty table");
    let rank = row.rank_function();
    let (first, second) = (SubsetId(0b0101), SubsetId(0b1010));
    let cut = generate_modular_cut(&rank, &[first, second])?;
    let canon = canonical_of(table, 4, row)?;
    let class_rule = class_list.iter().find(|c| c.vector == canon).and_then(|c| c.elimination.as_ref().map(|e| e.rule));
    Ok(NamedCutCheck {
        polymatroid: row.ranks.to_vec(),
        first,
        second,
        cut: cut.sorted(),
        principal: cut.is_principal(),
        class_rule,
    })
}

fn obtain_rays(
    n: usize,
    opts: &PipelineOptions,
    files: &BTreeMap<usize, PathBuf>,
) -> Result<(Vec<ExtremeRay>, String)> {
    if let Some(path) = files.get(&n) {
        return Ok((import_rays(path, n)?, format!("imported:{}", path.display())));
    }
    let eo = EnumerationOptions { budget: opts.budget.clone(), check_invariants: false };
    Ok((enumerate_extreme_rays(cached_facets(n), &eo)?, "enumerated".into()))
}

fn run_section(n: usize, rays: &[ExtremeRay], ray_source: String) -> Result<Section> {
    let (expected_rays, expected_classes) = catalog::expected_counts(n).expect("n in 2..=5");
    let table = PermutationTable::new(n);
    let classes = classify_isomorphism(rays);
    let class_list: Vec<ClassEntry> = classes
        .par_iter()
        .map(|c| {
            let f = c.representative.to_rank_function();
            let elimination = find_elimination(&f);
            let linearity = (n <= 4 || elimination.is_none()).then(|| is_linear(&f));
            ClassEntry {
                vector: c.representative.display_vector(),
                orbit_size: c.orbit_size,
                star: check_star(&f),
                elimination,
                linearity,
            }
        })
        .collect();

    let computed: BTreeSet<Vec<i64>> = class_list.iter().map(|c| c.vector.clone()).collect();
    let canon_table =
        |rows: &[Entry]| -> Result<BTreeSet<Vec<i64>>> { rows.iter().map(|e| canonical_of(&table, n, e)).collect() };
    let mut tables = Vec::new();
    match n {
        2 => {
            let want = catalog::TWO_ELEMENTS.iter().map(|e| e.ranks.to_vec()).collect();
            let got = rays.iter().map(ExtremeRay::display_vector).collect();
            tables.push(compare("two-element rays", want, got));
        }
        3 => tables.push(compare("three-element classes", canon_table(catalog::THREE_ELEMENT_CLASSES)?, computed)),
        4 => tables.push(compare("four-element classes", canon_table(catalog::FOUR_ELEMENT_CLASSES)?, computed)),
        5 => {
            let surv = class_list.iter().filter(|c| c.elimination.is_none()).map(|c| c.vector.clone()).collect();
            tables.push(compare("five-element survivors", canon_table(catalog::FIVE_ELEMENT_SURVIVORS)?, surv));
        }
        _ => unreachable!(),
    }
    let named_cut = if n == 4 { Some(named_cut_check(&class_list, &table)?) } else { None };
    Ok(Section {
        n,
        ray_source,
        rays: rays.len(),
        expected_rays,
        classes: class_list.len(),
        expected_classes,
        tables,
        survivors: class_list.iter().filter(|c| c.elimination.is_none()).count(),
        star_violations: class_list.iter().filter(|c| c.star.is_violated()).count(),
        non_linear_checked: class_list
            .iter()
            .filter(|c| c.linearity.as_ref().is_some_and(|l| !l.linear))
            .map(|c| c.vector.clone())
            .collect(),
        named_cut,
        class_list,
    })
}

/// Which classes must come out linear: all of them below four elements, the
/// table rows other than the last at four, every survivor at five.
fn linear_expectation(n: usize, table: &PermutationTable, c: &ClassEntry) -> Result<bool> {
    Ok(match n {
        4 => {
            let last = catalog::FOUR_ELEMENT_CLASSES.last().expect("nonempty table");
            c.vector != canonical_of(table, 4, last)?
        }
        5 => c.elimination.is_none(),
        _ => true,
    })
}

fn section_failures(s: &Section) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let n = s.n;
    if s.rays != s.expected_rays {
        out.push(format!("n={n}: {} rays, expected {}", s.rays, s.expected_rays));
    }
    if s.classes != s.expected_classes {
        out.push(format!("n={n}: {} classes, expected {}", s.classes, s.expected_classes));
    }
    for t in s.tables.iter().filter(|t| !t.matched) {
        out.push(format!(
            "n={n}: {} mismatch ({} missing, {} unexpected)",
            t.table,
            t.missing.len(),
            t.unexpected.len()
        ));
    }
    if s.star_violations > 0 {
        out.push(format!("n={n}: {} classes violate the star property", s.star_violations));
    }
    let table = PermutationTable::new(n);
    for c in &s.class_list {
        if linear_expectation(n, &table, c)? && !c.linearity.as_ref().is_some_and(|l| l.linear) {
            out.push(format!("n={n}: class {:?} expected linear", c.vector));
        }
    }
    if let Some(nc) = &s.named_cut {
        let want = vec![nc.first, nc.second, SubsetId::full(4)];
        if nc.cut != want || nc.principal || nc.class_rule != Some(EliminationRule::NonPrincipalDisjointCut) {
            out.push(format!("n=4: named disjoint-flat cut check failed: {nc:?}"));
        }
    }
    Ok(out)
}

/// Runs the pipeline for `n = 2..=max_n`. `log` receives one line per stage.
pub fn run_pipeline(opts: &PipelineOptions, log: &mut dyn FnMut(&str)) -> Result<PipelineCertificate> {
    if !(2..=5).contains(&opts.max_n) {
        return Err(Error::UnsupportedSize(opts.max_n, "2..=5 for the pipeline"));
    }
    let mut files = BTreeMap::new();
    for path in &opts.rays_from {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        files.insert(ray_file_size(&text)?, path.clone());
    }
    let mut sections = Vec::new();
    for n in 2..=opts.max_n {
        let (rays, source) = obtain_rays(n, opts, &files)?;
        log(&format!("n={n}: {} rays ({source})", rays.len()));
        let section = run_section(n, &rays, source)?;
        log(&format!("n={n}: {} classes, {} survivors", section.classes, section.survivors));
        sections.push(section);
    }
    let mut failures = Vec::new();
    for s in &sections {
        failures.extend(section_failures(s)?);
    }
    let mut cert = PipelineCertificate {
        format: CERTIFICATE_FORMAT.into(),
        max_n: opts.max_n,
        sections,
        failures,
        verdict: String::new(),
    };
    if let Err(e) = cert.revalidate() {
        cert.failures.push(format!("witness re-validation: {e}"));
    }
    cert.verdict = if cert.failures.is_empty() { "PASS" } else { "FAIL" }.into();
    Ok(cert)
}

fn check_star_witness(rank: &crate::setfun::RankFunction, star: &StarReport) -> std::result::Result<(), String> {
    match star {
        StarReport::Vacuous => {
            if nonmodular_flat_pairs(rank, false).is_empty() {
                Ok(())
            } else {
                Err("claimed vacuous but a non-modular flat pair exists".into())
            }
        }
        StarReport::Witnessed { first, second, cut } => {
            let fs = flats(rank);
            if !fs.contains(*first) || !fs.contains(*second) {
                return Err("star witnesses are not flats".into());
            }
            let generated = generate_modular_cut(rank, &[*first, *second]).map_err(|e| e.to_string())?;
            if &generated.sorted() != cut {
                return Err("recorded cut differs from the generated one".into());
            }
            if generated.contains(first.intersection(*second)) || generated.is_principal() {
                return Err("recorded cut is principal".into());
            }
            Ok(())
        }
        StarReport::Violated { pairs } => {
            if pairs.is_empty() {
                return Err("violation without pairs".into());
            }
            if check_star(rank).is_violated() {
                Ok(())
            } else {
                Err("claimed violation is not reproducible".into())
            }
        }
    }
}

fn check_linearity(rank: &crate::setfun::RankFunction, rep: &LinearityReport) -> std::result::Result<(), String> {
    match (rep.linear, rep.failing_pair) {
        (true, None) => {
            if is_linear(rank).linear {
                Ok(())
            } else {
                Err("claimed linear but is not".into())
            }
        }
        (false, Some((x, y))) => {
            if is_intersectable(rank, x, y).verdict == Intersectability::NotIntersectable {
                Ok(())
            } else {
                Err(format!("pair {x:?}, {y:?} is intersectable"))
            }
        }
        _ => Err("inconsistent linearity report".into()),
    }
}

impl PipelineCertificate {
    /// Re-checks every recorded witness and count against the library,
    /// starting from the recorded vectors alone.
    pub fn revalidate(&self) -> std::result::Result<(), String> {
        if self.format != CERTIFICATE_FORMAT {
            return Err(format!("unknown certificate format `{}`", self.format));
        }
        for s in &self.sections {
            let n = s.n;
            let facets = crate::cone::cached_facets_checked(n).map_err(|e| e.to_string())?;
            let table = PermutationTable::new(n);
            let (rays, classes) = catalog::expected_counts(n).ok_or(format!("no expected counts for n={n}"))?;
            if (s.expected_rays, s.expected_classes) != (rays, classes) {
                return Err(format!("n={n}: expected counts were altered"));
            }
            if s.class_list.len() != s.classes {
                return Err(format!("n={n}: class list length differs from class count"));
            }
            if s.class_list.iter().map(|c| c.orbit_size).sum::<usize>() != s.rays {
                return Err(format!("n={n}: orbit sizes do not add up to the ray count"));
            }
            if s.class_list.windows(2).any(|w| w[0].vector >= w[1].vector) {
                return Err(format!("n={n}: classes are not strictly sorted"));
            }
            let results: Vec<std::result::Result<(), String>> = s
                .class_list
                .par_iter()
                .map(|c| {
                    let ray = ExtremeRay::from_display(facets, &c.vector).map_err(|e| e.to_string())?;
                    let (canon, orbit) = canonical_display(&table, &ray);
                    if canon != c.vector || orbit != c.orbit_size {
                        return Err("representative is not canonical or orbit size is wrong".into());
                    }
                    let rank = ray.to_rank_function();
                    check_star_witness(&rank, &c.star)?;
                    match &c.elimination {
                        Some(e) => e.revalidate(&rank)?,
                        None => {
                            if find_elimination(&rank).is_some() {
                                return Err("survivor is eliminated by a rule".into());
                            }
                        }
                    }
                    if let Some(l) = &c.linearity {
                        check_linearity(&rank, l)?;
                    }
                    Ok(())
                })
                .collect();
            for (c, r) in s.class_list.iter().zip(results) {
                r.map_err(|e| format!("n={n}, class {:?}: {e}", c.vector))?;
            }
            if s.survivors != s.class_list.iter().filter(|c| c.elimination.is_none()).count() {
                return Err(format!("n={n}: survivor count differs from the class list"));
            }
            if s.star_violations != s.class_list.iter().filter(|c| c.star.is_violated()).count() {
                return Err(format!("n={n}: violation count differs from the class list"));
            }
            if let Some(nc) = &s.named_cut {
                let row = catalog::FOUR_ELEMENT_CLASSES.last().expect("nonempty table");
                let rank = row.rank_function();
                let cut = generate_modular_cut(&rank, &[nc.first, nc.second]).map_err(|e| e.to_string())?;
                if cut.sorted() != nc.cut || cut.is_principal() != nc.principal {
                    return Err("named cut does not regenerate".into());
                }
            }
            let fresh = section_failures(s).map_err(|e| e.to_string())?;
            if fresh.iter().any(|f| !self.failures.contains(f)) {
                return Err(format!("n={n}: unrecorded failures {fresh:?}"));
            }
        }
        let expected_verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        if !self.verdict.is_empty() && self.verdict != expected_verdict {
            return Err(format!("verdict {} does not follow from the failures", self.verdict));
        }
        Ok(())
    }
}
