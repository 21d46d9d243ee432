//! One-point extensions, excess functions, intersectability and linearity,
//! and the check that a non-modular pair of flats comes with a non-principal
//! modular cut.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cuts::{generate_cut_with, generate_filter_with, ModularCut, ModularFilter, Modularity};
use crate::error::{Error, Result};
use crate::flats::{flats, nonmodular_pairs_in, FlatPair};
use crate::setfun::{defect, facet_triples, rat, RankFunction, Rational, ReportBuilder, ValidationReport};
use crate::subset::{GroundSet, SubsetId};

/// `e(A) = f'(A + x) - f'(A)` for a one-point extension `f'`, one value per
/// subset of the ground set (the empty set included), indexed by mask.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExcessFunction {
    n: usize,
    values: Vec<Rational>,
}

impl ExcessFunction {
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self> {
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, got: values.len() });
        }
        Ok(ExcessFunction { n, values })
    }

    pub fn from_fn(n: usize, f: impl FnMut(SubsetId) -> Rational) -> Self {
        ExcessFunction { n, values: (0..1u32 << n).map(SubsetId).map(f).collect() }
    }

    pub fn zero(n: usize) -> Self {
        Self::constant(n, Rational::zero())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::from_fn(n, |_| c.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn value(&self, s: SubsetId) -> &Rational {
        &self.values[s.index()]
    }

    pub fn by_mask(&self) -> &[Rational] {
        &self.values
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExcessFunction { n: self.n, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &ExcessFunction) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::MixedGroundSets);
        }
        Ok(ExcessFunction { n: self.n, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() })
    }

    /// `{A : e(A) = 0}`.
    pub fn zero_set(&self) -> Vec<SubsetId> {
        (0..1u32 << self.n).map(SubsetId).filter(|&s| self.value(s).is_zero()).collect()
    }
}

/// Checks the three conditions characterizing excess functions of `rank`.
pub fn validate_excess(rank: &RankFunction, e: &ExcessFunction) -> Result<ValidationReport> {
    if e.n != rank.n() {
        return Err(Error::DimensionMismatch { expected: rank.ground().subset_count(), got: e.values.len() });
    }
    let mut report = ReportBuilder::default();
    let g = rank.ground();
    let name = |s: SubsetId| g.format(s);
    let full = rank.full();
    for a in g.subsets() {
        report.check(e.value(a).clone(), &[a], || format!("e({}) >= 0", name(a)));
        for i in (0..rank.n()).filter(|&i| !a.contains(i)) {
            let b = a.with(i);
            report.check(e.value(a) - e.value(b), &[a, b], || format!("e({}) >= e({})", name(a), name(b)));
        }
    }
    for i in 0..rank.n() {
        let rest = full.without(i);
        let slack = (e.value(full) - e.value(rest)) + (rank.value(full) - rank.value(rest));
        report.check(slack, &[rest, full], || format!("extension keeps f'(M) >= f'(M - {})", g.labels()[i]));
    }
    for (k, i, j) in facet_triples(rank.n()) {
        let (ik, jk) = (k.with(i), k.with(j));
        let slack = defect(&e.values, ik, jk) + rank.modular_defect(ik, jk);
        report.check(slack, &[ik, jk], || format!("δ_e + δ_f at ({}, {}) >= 0", name(ik), name(jk)));
    }
    Ok(report.finish())
}

fn ensure_excess(rank: &RankFunction, e: &ExcessFunction) -> Result<()> {
    let report = validate_excess(rank, e)?;
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidExcess(format!("{} (slack {})", v.inequality, v.slack))),
    }
}

/// The rank function on `M + x` with `f'(A) = f(A)` and `f'(A + x) = f(A) + e(A)`.
/// The new element is the last one, labelled `x` unless that label is taken.
pub fn one_point_extension(rank: &RankFunction, e: &ExcessFunction) -> Result<RankFunction> {
    ensure_excess(rank, e)?;
    let n = rank.n();
    let mut labels = rank.ground().labels().to_vec();
    let new_label = std::iter::once("x".to_string())
        .chain((0..).map(|k| format!("x{k}")))
        .find(|l| !labels.contains(l))
        .expect("unbounded label supply");
    labels.push(new_label);
    let ground = GroundSet::with_labels(labels)?;
    Ok(RankFunction::from_fn(ground, |s| {
        let base = s.without(n);
        if s.contains(n) {
            rank.value(base) + e.value(base)
        } else {
            rank.value(base).clone()
        }
    }))
}

/// Half of the smallest positive value among `f(M) - f(M - i)` and the facet
/// defects `δ_f(aA, bA)`; one if there is none.
pub fn filter_epsilon(rank: &RankFunction) -> Rational {
    let full = rank.full();
    let drops = (0..rank.n()).map(|i| rank.value(full) - rank.value(full.without(i)));
    let defects = facet_triples(rank.n()).into_iter().map(|(k, i, j)| rank.modular_defect(k.with(i), k.with(j)));
    drops.chain(defects).filter(|v| v.is_positive()).min().map_or_else(Rational::one, |m| m / rat(2))
}

/// The excess function vanishing exactly on the filter, `ε` elsewhere.
pub fn excess_from_filter(rank: &RankFunction, filter: &ModularFilter) -> Result<ExcessFunction> {
    crate::cuts::check_modular_filter(rank, filter.members()).map_err(Error::InvalidFilter)?;
    Ok(excess_from_valid_filter(rank, filter))
}

fn excess_from_valid_filter(rank: &RankFunction, filter: &ModularFilter) -> ExcessFunction {
    let eps = filter_epsilon(rank);
    ExcessFunction::from_fn(rank.n(), |s| if filter.contains(s) { Rational::zero() } else { eps.clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Intersectability {
    Modular,
    ExcessWitness,
    NotIntersectable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectabilityWitness {
    pub verdict: Intersectability,
    /// For `ExcessWitness`: vanishes on both sets, positive on their
    /// intersection.
    pub excess: Option<ExcessFunction>,
    /// The filter generated by the pair, when they are not modular.
    pub filter: Option<ModularFilter>,
}

impl IntersectabilityWitness {
    pub fn is_intersectable(&self) -> bool {
        self.verdict != Intersectability::NotIntersectable
    }
}

pub fn is_intersectable(rank: &RankFunction, x: SubsetId, y: SubsetId) -> IntersectabilityWitness {
    intersectable_with(&Modularity::new(rank), x, y)
}

fn intersectable_with(modularity: &Modularity<'_>, x: SubsetId, y: SubsetId) -> IntersectabilityWitness {
    if modularity.is_modular(x, y) {
        return IntersectabilityWitness { verdict: Intersectability::Modular, excess: None, filter: None };
    }
    let rank = modularity.rank();
    let filter = generate_filter_with(modularity, &[x, y]);
    if filter.contains(x.intersection(y)) {
        return IntersectabilityWitness {
            verdict: Intersectability::NotIntersectable,
            excess: None,
            filter: Some(filter),
        };
    }
    let e = excess_from_valid_filter(rank, &filter);
    debug_assert!(e.value(x).is_zero() && e.value(y).is_zero() && e.value(x.intersection(y)).is_positive());
    IntersectabilityWitness { verdict: Intersectability::ExcessWitness, excess: Some(e), filter: Some(filter) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearityReport {
    pub linear: bool,
    /// The first non-intersectable pair in (cardinality, bitmask) order.
    pub failing_pair: Option<(SubsetId, SubsetId)>,
}

/// Whether every pair of subsets is intersectable.
pub fn is_linear(rank: &RankFunction) -> LinearityReport {
    let modularity = Modularity::new(rank);
    let mut subsets: Vec<SubsetId> = rank.ground().subsets().collect();
    subsets.sort_by_key(|s| s.order_key());
    for (k, &x) in subsets.iter().enumerate() {
        // Nested pairs are modular.
        for &y in subsets[k + 1..].iter().filter(|y| x.is_incomparable(**y)) {
            if !intersectable_with(&modularity, x, y).is_intersectable() {
                return LinearityReport { linear: false, failing_pair: Some((x, y)) };
            }
        }
    }
    LinearityReport { linear: true, failing_pair: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum StarReport {
    /// Every pair of flats is modular.
    Vacuous,
    /// `first ∩ second` is outside the modular cut they generate, so that cut
    /// is not principal.
    Witnessed { first: SubsetId, second: SubsetId, cut: Vec<SubsetId> },
    /// Non-modular flat pairs exist but every generated cut is principal.
    Violated { pairs: Vec<FlatPair> },
}

impl StarReport {
    pub fn status(&self) -> &'static str {
        match self {
            StarReport::Vacuous => "vacuous",
            StarReport::Witnessed { .. } => "witnessed",
            StarReport::Violated { .. } => "violated",
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, StarReport::Violated { .. })
    }
}

/// Decides whether the existence of a non-modular pair of flats is matched
/// by a non-principal modular cut.
pub fn check_star(rank: &RankFunction) -> StarReport {
    let fs = flats(rank);
    let pairs = nonmodular_pairs_in(rank, &fs, false);
    if pairs.is_empty() {
        return StarReport::Vacuous;
    }
    let modularity = Modularity::new(rank);
    // Modular pairs put their intersection into the cut, so only the
    // non-modular ones can witness.
    for (f1, f2, _) in &pairs {
        let cut = generate_cut_with(&modularity, &fs, &[*f1, *f2]).expect("flats are valid seeds");
        if !cut.contains(f1.intersection(*f2)) {
            return StarReport::Witnessed { first: *f1, second: *f2, cut: cut.sorted() };
        }
    }
    StarReport::Violated {
        pairs: pairs.into_iter().map(|(first, second, d)| FlatPair { first, second, defect: d.to_string() }).collect(),
    }
}

/// The cut generated by two flats, if it leaves out their intersection.
pub fn non_principal_cut_from(rank: &RankFunction, f1: SubsetId, f2: SubsetId) -> Result<Option<ModularCut>> {
    let cut = crate::cuts::generate_modular_cut(rank, &[f1, f2])?;
    Ok((!cut.contains(f1.intersection(f2))).then_some(cut))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{cut_to_filter, generate_modular_cut, generate_modular_filter};
    use crate::setfun::{conic_combination, ratio, ValidationMode};

    fn pm(v: &[i64]) -> RankFunction {
        RankFunction::from_display_ints(v).unwrap()
    }

    fn m11() -> RankFunction {
        pm(&[2, 2, 2, 2, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4])
    }

    fn m_star() -> RankFunction {
        pm(&[1, 1, 1, 2, 2, 2, 2])
    }

    #[test]
    fn zero_and_constant_excess_are_valid() {
        for f in [m11(), m_star(), pm(&[1, 0, 1])] {
            assert!(validate_excess(&f, &ExcessFunction::zero(f.n())).unwrap().valid);
            assert!(validate_excess(&f, &ExcessFunction::constant(f.n(), ratio(5, 2))).unwrap().valid);
        }
    }

    #[test]
    fn increasing_excess_is_invalid() {
        let f = m_star();
        let e = ExcessFunction::from_fn(3, |s| rat(s.len() as i64));
        let report = validate_excess(&f, &e).unwrap();
        assert!(!report.valid);
        assert!(matches!(one_point_extension(&f, &e), Err(Error::InvalidExcess(_))));
        assert!(validate_excess(&f, &ExcessFunction::zero(2)).is_err());
    }

    #[test]
    fn loop_extension() {
        let f = m11();
        let ext = one_point_extension(&f, &ExcessFunction::zero(4)).unwrap();
        assert_eq!(ext.ground().labels().last().unwrap(), "x");
        for a in f.ground().subsets() {
            assert_eq!(ext.value(a.with(4)), f.value(a));
        }
        assert_eq!(ext.restrict(f.full()).unwrap(), f);
    }

    #[test]
    fn m_star_with_unit_excess() {
        let f = m_star();
        let ext = one_point_extension(&f, &ExcessFunction::constant(3, rat(1))).unwrap();
        assert_eq!(ext.value(SubsetId::singleton(3)), &rat(1));
        assert_eq!(ext.value(SubsetId(0b1111)), &rat(3));
        assert!(ext.validate(ValidationMode::Full).valid);
    }

    #[test]
    fn excess_from_filter_examples() {
        let f = m11();
        let all = crate::subset::SubsetFamily::from_iter(4, f.ground().subsets());
        let g = ModularFilter::from_family(&f, all).unwrap();
        let e = excess_from_filter(&f, &g).unwrap();
        assert!(e.by_mask().iter().all(|v| v.is_zero()));

        let (ac, bd) = (SubsetId(0b0101), SubsetId(0b1010));
        let g = generate_modular_filter(&f, &[ac, bd]);
        let e = excess_from_filter(&f, &g).unwrap();
        assert!(e.value(ac).is_zero() && e.value(bd).is_zero());
        assert!(e.value(SubsetId::EMPTY).is_positive());
        assert!(validate_excess(&f, &e).unwrap().valid);

        let f = m_star();
        let g = generate_modular_filter(&f, &[]);
        let e = excess_from_filter(&f, &g).unwrap();
        for s in f.ground().subsets() {
            assert_eq!(e.value(s).is_zero(), f.value(s) == f.value(f.full()));
        }
        assert!(validate_excess(&f, &e).unwrap().valid);
    }

    #[test]
    fn epsilon_is_half_the_smallest_positive_gap() {
        assert_eq!(filter_epsilon(&m_star()), ratio(1, 2));
        assert_eq!(filter_epsilon(&RankFunction::zero(GroundSet::new(3).unwrap())), rat(1));
        let f = pm(&[2, 2, 3]);
        assert_eq!(filter_epsilon(&f), ratio(1, 2));
    }

    #[test]
    fn intersectability_examples() {
        let f = m11();
        let w = is_intersectable(&f, SubsetId(0b0001), SubsetId(0b0011));
        assert_eq!(w.verdict, Intersectability::Modular);
        let w = is_intersectable(&f, SubsetId(0b0101), SubsetId(0b1010));
        assert_eq!(w.verdict, Intersectability::ExcessWitness);
        let e = w.excess.unwrap();
        assert!(e.value(SubsetId::EMPTY).is_positive());
        assert!(validate_excess(&f, &e).unwrap().valid);
    }

    #[test]
    fn small_extremal_polymatroids_are_linear() {
        let rows: [&[i64]; 7] = [
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
            &[1, 0, 0, 1, 1, 0, 1],
            &[1, 1, 0, 1, 1, 1, 1],
            &[1; 7],
            &[1, 1, 1, 2, 2, 2, 2],
        ];
        for row in rows {
            assert!(is_linear(&pm(row)).linear, "{row:?}");
        }
        assert!(is_linear(&RankFunction::zero(GroundSet::new(4).unwrap())).linear);
        let mix = conic_combination([(ratio(1, 3), &pm(&[1, 0, 1])), (rat(2), &pm(&[1, 1, 1]))]).unwrap();
        assert!(is_linear(&mix).linear);
    }

    #[test]
    fn star_examples() {
        assert_eq!(check_star(&m_star()), StarReport::Vacuous);
        match check_star(&m11()) {
            StarReport::Witnessed { cut, .. } => {
                assert!(cut.contains(&SubsetId(0b1111)));
                assert!(!cut.contains(&SubsetId::EMPTY));
            }
            other => panic!("{other:?}"),
        }
        // (ac, bd) itself is a witnessing pair.
        let cut = non_principal_cut_from(&m11(), SubsetId(0b0101), SubsetId(0b1010)).unwrap().unwrap();
        assert_eq!(cut.sorted(), vec![SubsetId(0b0101), SubsetId(0b1010), SubsetId(0b1111)]);
        assert_eq!(check_star(&RankFunction::zero(GroundSet::new(2).unwrap())), StarReport::Vacuous);
    }

    #[test]
    fn cut_and_filter_routes_agree_on_flat_pairs() {
        let f = m11();
        let fs = flats(&f);
        for a in fs.iter() {
            for b in fs.iter() {
                let cut = generate_modular_cut(&f, &[a, b]).unwrap();
                let via_cut = cut_to_filter(&f, &cut);
                let g = generate_modular_filter(&f, &[a, b]);
                assert_eq!(cut.contains(a.intersection(b)), g.contains(a.intersection(b)));
                assert_eq!(via_cut.members(), g.members());
            }
        }
    }
}
