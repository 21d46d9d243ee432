//! Rank functions over the subsets of a ground set, exact rational valued.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::PermutationTable;
use crate::subset::{GroundSet, SubsetId};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Which inequality system `validate` checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationMode {
    /// Nonnegativity, every monotonicity pair and every submodularity pair.
    #[default]
    Full,
    /// Only the facets of the polymatroid cone: `δ(iK, jK) ≥ 0` and
    /// `f(M) ≥ f(M - i)`.
    Facet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub inequality: String,
    pub subsets: Vec<SubsetId>,
    /// Value of the left-hand side minus the right-hand side; negative.
    pub slack: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// Total number of violated inequalities.
    pub violation_count: usize,
    /// The first few violations, in check order.
    pub violations: Vec<Violation>,
}

const MAX_REPORTED: usize = 64;

#[derive(Default)]
pub(crate) struct ReportBuilder {
    count: usize,
    violations: Vec<Violation>,
}

impl ReportBuilder {
    pub(crate) fn check(&mut self, slack: Rational, subsets: &[SubsetId], describe: impl FnOnce() -> String) {
        if slack.is_negative() {
            self.count += 1;
            if self.violations.len() < MAX_REPORTED {
                self.violations.push(Violation {
                    inequality: describe(),
                    subsets: subsets.to_vec(),
                    slack: slack.to_string(),
                });
            }
        }
    }

    pub(crate) fn finish(self) -> ValidationReport {
        ValidationReport { valid: self.count == 0, violation_count: self.count, violations: self.violations }
    }
}

/// A set function `f` with `f(∅) = 0`, stored as one exact rational per
/// subset indexed by bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RankFunction {
    ground: GroundSet,
    values: Vec<Rational>,
}

impl RankFunction {
    /// Builds from the values on nonempty subsets in bitmask order
    /// (`values[m - 1] = f(m)`).
    pub fn from_mask_values(ground: GroundSet, values: Vec<Rational>) -> Result<Self> {
        let expected = ground.subset_count() - 1;
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: values.len() });
        }
        let mut all = Vec::with_capacity(expected + 1);
        all.push(Rational::zero());
        all.extend(values);
        Ok(RankFunction { ground, values: all })
    }

    /// Builds from the values on nonempty subsets in display order
    /// (cardinality, then position of elements).
    pub fn from_display_values(ground: GroundSet, values: Vec<Rational>) -> Result<Self> {
        let order = ground.display_order();
        if values.len() != order.len() {
            return Err(Error::DimensionMismatch { expected: order.len(), got: values.len() });
        }
        let mut all = vec![Rational::zero(); ground.subset_count()];
        for (s, v) in order.into_iter().zip(values) {
            all[s.index()] = v;
        }
        Ok(RankFunction { ground, values: all })
    }

    /// Integer values in display order on the default ground set; the ground
    /// size is inferred from the length.
    pub fn from_display_ints(values: &[i64]) -> Result<Self> {
        let n = ground_size_for_len(values.len())?;
        Self::from_display_values(GroundSet::new(n)?, values.iter().map(|&v| rat(v)).collect())
    }

    pub fn from_fn(ground: GroundSet, mut f: impl FnMut(SubsetId) -> Rational) -> Self {
        let mut values: Vec<Rational> = ground.subsets().map(&mut f).collect();
        values[0] = Rational::zero();
        RankFunction { ground, values }
    }

    pub fn zero(ground: GroundSet) -> Self {
        Self::from_fn(ground, |_| Rational::zero())
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> SubsetId {
        self.ground.full()
    }

    #[inline]
    pub fn value(&self, s: SubsetId) -> &Rational {
        &self.values[s.index()]
    }

    /// All `2^n` values by mask, `f(∅) = 0` first.
    pub fn by_mask(&self) -> &[Rational] {
        &self.values
    }

    pub fn display_values(&self) -> Vec<Rational> {
        self.ground.display_order().into_iter().map(|s| self.values[s.index()].clone()).collect()
    }

    /// Whether every value is an integer.
    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    /// `δ_f(A, B) = f(A) + f(B) - f(A ∪ B) - f(A ∩ B)`.
    pub fn modular_defect(&self, a: SubsetId, b: SubsetId) -> Rational {
        defect(&self.values, a, b)
    }

    pub fn is_modular_pair(&self, a: SubsetId, b: SubsetId) -> bool {
        self.modular_defect(a, b).is_zero()
    }

    pub fn validate(&self, mode: ValidationMode) -> ValidationReport {
        let mut report = ReportBuilder::default();
        let full = self.full();
        let name = |s: SubsetId| self.ground.format(s);
        match mode {
            ValidationMode::Full => {
                for a in self.ground.subsets() {
                    report.check(self.value(a).clone(), &[a], || format!("f({}) >= 0", name(a)));
                }
                for b in self.ground.subsets() {
                    for a in b.subsets().filter(|&a| a != b) {
                        let slack = self.value(b) - self.value(a);
                        report.check(slack, &[a, b], || format!("f({}) <= f({})", name(a), name(b)));
                    }
                }
                for a in self.ground.subsets() {
                    for b in self.ground.subsets().filter(|&b| b.0 > a.0 && a.is_incomparable(b)) {
                        report.check(self.modular_defect(a, b), &[a, b], || {
                            format!("submodularity of ({}, {})", name(a), name(b))
                        });
                    }
                }
            }
            ValidationMode::Facet => {
                for i in 0..self.n() {
                    let rest = full.without(i);
                    let slack = self.value(full) - self.value(rest);
                    report.check(slack, &[rest, full], || format!("f({}) <= f({})", name(rest), name(full)));
                }
                for (k, i, j) in facet_triples(self.n()) {
                    let (ik, jk) = (k.with(i), k.with(j));
                    report.check(self.modular_defect(ik, jk), &[ik, jk], || {
                        format!("submodularity of ({}, {})", name(ik), name(jk))
                    });
                }
            }
        }
        report.finish()
    }

    /// Errors unless `f` is a polymatroid. The facet system is checked; it
    /// accepts exactly the vectors the full system accepts.
    pub fn ensure_polymatroid(&self) -> Result<()> {
        let report = self.validate(ValidationMode::Facet);
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::NotAPolymatroid(format!("{} (slack {})", v.inequality, v.slack))),
        }
    }

    /// The contraction `A ↦ f(A ∪ S) - f(S)` on `M - S`.
    pub fn contract(&self, s: SubsetId) -> Result<RankFunction> {
        let full = self.full();
        let s = s.intersection(full);
        let rest = full.difference(s);
        let base = self.value(s).clone();
        self.on_subset(rest, |a| self.value(a.union(s)) - &base)
    }

    /// The restriction of `f` to the subsets of `T`.
    pub fn restrict(&self, t: SubsetId) -> Result<RankFunction> {
        self.on_subset(t.intersection(self.full()), |a| self.value(a).clone())
    }

    /// Builds a function on the elements of `keep`, reindexed in order.
    fn on_subset(&self, keep: SubsetId, f: impl Fn(SubsetId) -> Rational) -> Result<RankFunction> {
        let kept: Vec<usize> = keep.elements().collect();
        let ground = GroundSet::with_labels(kept.iter().map(|&i| self.ground.labels()[i].clone()))?;
        Ok(RankFunction::from_fn(ground, |local| {
            let mut global = SubsetId::EMPTY;
            for k in local.elements() {
                global = global.with(kept[k]);
            }
            f(global)
        }))
    }

    pub fn scale(&self, factor: &Rational) -> RankFunction {
        RankFunction { ground: self.ground.clone(), values: self.values.iter().map(|v| v * factor).collect() }
    }

    /// Relabels with `perm` (element `i` becomes `perm[i]`).
    pub fn permute(&self, perm: &[usize]) -> RankFunction {
        let mut values = self.values.clone();
        for s in self.ground.subsets() {
            values[crate::perm::apply(perm, s).index()] = self.values[s.index()].clone();
        }
        RankFunction { ground: self.ground.clone(), values }
    }

    /// The lexicographically smallest display vector over all relabelings.
    pub fn canonical_form(&self) -> RankFunction {
        let table = PermutationTable::new(self.n());
        self.canonical_form_with(&table)
    }

    pub fn canonical_form_with(&self, table: &PermutationTable) -> RankFunction {
        let (p, _) = table.minimize(|m| &self.values[m as usize]);
        RankFunction { ground: self.ground.clone(), values: table.relabel(p, &self.values) }
    }

    pub fn is_isomorphic(&self, other: &RankFunction) -> bool {
        self.n() == other.n() && self.canonical_form().values == other.canonical_form().values
    }
}

/// Pointwise `Σ c_k · f_k` over a common ground set.
pub fn conic_combination<'a>(terms: impl IntoIterator<Item = (Rational, &'a RankFunction)>) -> Result<RankFunction> {
    let mut acc: Option<RankFunction> = None;
    for (c, f) in terms {
        if c.is_negative() {
            return Err(Error::NegativeCoefficient(c.to_string()));
        }
        match &mut acc {
            None => acc = Some(f.scale(&c)),
            Some(sum) => {
                if sum.ground != f.ground {
                    return Err(Error::MixedGroundSets);
                }
                for (s, v) in sum.values.iter_mut().zip(&f.values) {
                    *s += &c * v;
                }
            }
        }
    }
    acc.ok_or(Error::DimensionMismatch { expected: 1, got: 0 })
}

#[inline]
pub(crate) fn defect(values: &[Rational], a: SubsetId, b: SubsetId) -> Rational {
    &values[a.index()] + &values[b.index()] - &values[a.union(b).index()] - &values[a.intersection(b).index()]
}

/// The `(K, i, j)` index triples of the submodular facets, `i < j`, `i, j ∉ K`,
/// sorted by `K` then `i` then `j`.
pub fn facet_triples(n: usize) -> Vec<(SubsetId, usize, usize)> {
    let mut out = Vec::new();
    for k in 0..1u32 << n {
        let k = SubsetId(k);
        for i in 0..n {
            for j in i + 1..n {
                if !k.contains(i) && !k.contains(j) {
                    out.push((k, i, j));
                }
            }
        }
    }
    out
}

pub(crate) fn ground_size_for_len(len: usize) -> Result<usize> {
    (1..=crate::subset::MAX_ELEMENTS)
        .find(|&n| (1usize << n) - 1 == len)
        .ok_or_else(|| Error::Parse(format!("{len} values is not 2^n - 1 for any supported n")))
}

impl fmt::Debug for RankFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.display_values().iter().map(|v| v.to_string()).collect();
        write!(f, "RankFunction[n={}]({})", self.n(), parts.join(","))
    }
}

impl fmt::Display for RankFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.display_values().iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}
