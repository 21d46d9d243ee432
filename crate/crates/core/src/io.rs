//! Text formats.
//!
//! * Polymatroids: one per line, rational ranks separated by commas (`;` is
//!   accepted as a group separator), subsets in display order. Blank lines
//!   and lines starting with `#` are skipped.
//! * Rays: a `polymatroid-rays v1 n=<n> count=<k>` header, then one primitive
//!   integer vector per line in display order.
//! * Linear representations: a `linrep v1 p=<p> d=<d>` header, then one line
//!   `label: v1; v2; ...` per element, vectors as space-separated residues.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::cone::{sort_rays, ExtremeRay, FacetSystem};
use crate::error::{Error, Result};
use crate::linrep::LinearRepresentation;
use crate::setfun::{ground_size_for_len, RankFunction, Rational};
use crate::subset::GroundSet;

fn parse_rational(tok: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("`{tok}` is not a rational number"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(tok).map_err(|_| bad())?)),
    }
}

fn tokens(line: &str) -> impl Iterator<Item = &str> {
    line.split([',', ';']).map(str::trim).filter(|t| !t.is_empty())
}

fn is_content(line: &str) -> bool {
    let t = line.trim();
    !t.is_empty() && !t.starts_with('#')
}

/// Parses one polymatroid line; the ground size follows from the entry count.
pub fn parse_polymatroid(line: &str) -> Result<RankFunction> {
    let values: Vec<Rational> = tokens(line).map(parse_rational).collect::<Result<_>>()?;
    let n = ground_size_for_len(values.len())?;
    RankFunction::from_display_values(GroundSet::new(n)?, values)
}

pub fn parse_polymatroids(text: &str) -> Result<Vec<RankFunction>> {
    let list: Vec<RankFunction> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| is_content(l))
        .map(|(i, l)| {
            parse_polymatroid(l).map_err(|e| match e {
                Error::Parse(msg) => Error::Parse(format!("line {}: {msg}", i + 1)),
                other => Error::Parse(format!("line {}: {other}", i + 1)),
            })
        })
        .collect::<Result<_>>()?;
    if list.is_empty() {
        return Err(Error::Parse("no polymatroid found".into()));
    }
    Ok(list)
}

pub fn format_polymatroid(rank: &RankFunction) -> String {
    rank.to_string()
}

fn join_ints(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub fn format_rays(n: usize, rays: &[ExtremeRay]) -> String {
    let mut out = format!("polymatroid-rays v1 n={n} count={}\n", rays.len());
    for r in rays {
        out.push_str(&join_ints(&r.display_vector()));
        out.push('\n');
    }
    out
}

/// Reads `key=value` fields after the expected leading words.
fn header_fields<'a>(line: &'a str, magic: &[&str]) -> Result<Vec<(&'a str, &'a str)>> {
    let mut words = line.split_whitespace();
    for &m in magic {
        if words.next() != Some(m) {
            return Err(Error::Parse(format!("expected header starting `{}`, got `{line}`", magic.join(" "))));
        }
    }
    words.map(|w| w.split_once('=').ok_or_else(|| Error::Parse(format!("bad header field `{w}`")))).collect()
}

fn field<T: FromStr>(fields: &[(&str, &str)], key: &str) -> Result<T> {
    let (_, v) =
        fields.iter().find(|(k, _)| *k == key).ok_or_else(|| Error::Parse(format!("header field `{key}` missing")))?;
    v.parse().map_err(|_| Error::Parse(format!("header field `{key}={v}` is invalid")))
}

/// Parses a ray file, re-verifying that every vector spans an extreme ray of
/// the cone. Returns the rays sorted by display vector.
pub fn parse_rays(text: &str, facets: &FacetSystem) -> Result<Vec<ExtremeRay>> {
    let mut lines = text.lines().filter(|l| is_content(l));
    let header = lines.next().ok_or_else(|| Error::Parse("empty ray file".into()))?;
    let fields = header_fields(header, &["polymatroid-rays", "v1"])?;
    let n: usize = field(&fields, "n")?;
    let count: usize = field(&fields, "count")?;
    if n != facets.n() {
        return Err(Error::Parse(format!("ray file is for n={n}, expected n={}", facets.n())));
    }
    let mut rays = Vec::with_capacity(count);
    for (k, line) in lines.enumerate() {
        let v: Vec<i64> = tokens(line)
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("ray {}: `{t}` is not an integer", k + 1))))
            .collect::<Result<_>>()?;
        let ray = ExtremeRay::from_display(facets, &v).map_err(|e| match e {
            Error::NotExtreme(msg) => Error::NotExtreme(format!("ray {}: {msg}", k + 1)),
            other => Error::Parse(format!("ray {}: {other}", k + 1)),
        })?;
        rays.push(ray);
    }
    if rays.len() != count {
        return Err(Error::Parse(format!("header says {count} rays, file has {}", rays.len())));
    }
    sort_rays(&mut rays);
    if rays.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Parse("duplicate ray".into()));
    }
    Ok(rays)
}

/// Reads the `n=` field of a ray file header without parsing the body.
pub fn ray_file_size(text: &str) -> Result<usize> {
    let header = text.lines().find(|l| is_content(l)).ok_or_else(|| Error::Parse("empty ray file".into()))?;
    field(&header_fields(header, &["polymatroid-rays", "v1"])?, "n")
}

pub fn import_rays(path: &Path, n: usize) -> Result<Vec<ExtremeRay>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_rays(&text, crate::cone::cached_facets_checked(n)?)
}

pub fn export_rays(path: &Path, n: usize, rays: &[ExtremeRay]) -> Result<()> {
    std::fs::write(path, format_rays(n, rays)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn parse_linrep(text: &str) -> Result<LinearRepresentation> {
    let mut lines = text.lines().filter(|l| is_content(l));
    let header = lines.next().ok_or_else(|| Error::Parse("empty representation file".into()))?;
    let fields = header_fields(header, &["linrep", "v1"])?;
    let p: u64 = field(&fields, "p")?;
    let d: usize = field(&fields, "d")?;
    let mut labels = Vec::new();
    let mut generators = Vec::new();
    for line in lines {
        let (label, rest) =
            line.split_once(':').ok_or_else(|| Error::Parse(format!("expected `label: vectors`, got `{line}`")))?;
        labels.push(label.trim().to_string());
        let gens = rest
            .split(';')
            .map(str::trim)
            .filter(|v| !v.is_empty())
            .map(|v| {
                v.split_whitespace()
                    .map(|x| x.parse::<u64>().map_err(|_| Error::Parse(format!("`{x}` is not a residue"))))
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        generators.push(gens);
    }
    LinearRepresentation::new(p, d, GroundSet::with_labels(labels)?, generators)
}

pub fn format_linrep(rep: &LinearRepresentation) -> String {
    let mut out = format!("linrep v1 p={} d={}\n", rep.prime(), rep.dimension());
    for (i, label) in rep.ground().labels().iter().enumerate() {
        let vecs: Vec<String> =
            rep.generators(i).iter().map(|v| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")).collect();
        let _ = writeln!(out, "{label}: {}", vecs.join("; "));
    }
    out
}
