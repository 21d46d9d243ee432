//! The polymatroid cone: facets, extreme rays, isomorphism classes and the
//! elimination of extremal polymatroids that cannot take part in a smallest
//! counterexample to the flat-pair/modular-cut property.

mod classify;
pub mod dd;
mod facets;
mod filter;

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub(crate) use classify::canonical_display;
pub use classify::{classify_isomorphism, IsoClass};
pub use dd::{Budget, DdStats};
pub use facets::{expected_facet_count, facet_inequalities, Facet, FacetSystem, FacetTag, MAX_FACET_N};
pub use filter::{
    find_elimination, lemma_filter, verify_survivors, Elimination, EliminationRule, FilterOutcome, SurvivorReport,
    SurvivorVerdict,
};

use crate::error::{Error, Result};
use crate::linalg::{exact_rank_at_least, gcd_slice};
use crate::setfun::{RankFunction, Rational};
use crate::subset::{display_order, GroundSet, SubsetId};

/// Largest ground set for which in-process enumeration is attempted.
pub const MAX_ENUMERATION_N: usize = 5;

/// A primitive integer vector on an extreme ray of the polymatroid cone,
/// together with the facets it is tight on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtremeRay {
    n: usize,
    /// Cone coordinates: entry `m - 1` is the rank of mask `m`.
    coords: Vec<i64>,
    tight: u128,
}

impl ExtremeRay {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn value(&self, s: SubsetId) -> i64 {
        if s.is_empty() {
            0
        } else {
            self.coords[s.index() - 1]
        }
    }

    pub fn display_vector(&self) -> Vec<i64> {
        display_order(self.n).into_iter().map(|s| self.value(s)).collect()
    }

    pub fn tight_mask(&self) -> u128 {
        self.tight
    }

    /// Indices into the facet system of the facets this ray lies on.
    pub fn tight_facets(&self) -> Vec<usize> {
        (0..128).filter(|i| self.tight >> i & 1 == 1).collect()
    }

    pub fn to_rank_function(&self) -> RankFunction {
        let ground = GroundSet::new(self.n).expect("ray ground size is valid");
        RankFunction::from_fn(ground, |s| Rational::from_integer(BigInt::from(self.value(s))))
    }

    /// Checks that `coords` lies on an extreme ray of the cone described by
    /// `facets` and builds the normalized ray.
    pub fn from_coords(facets: &FacetSystem, coords: Vec<i64>) -> Result<Self> {
        let dim = facets.dimension();
        if coords.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: coords.len() });
        }
        let g = gcd_slice(&coords);
        if g == 0 {
            return Err(Error::NotExtreme("zero vector".into()));
        }
        if g != 1 {
            return Err(Error::NotExtreme(format!("entries share the factor {g}")));
        }
        let mut tight = 0u128;
        let mut tight_rows = Vec::new();
        let dense = facets.dense_rows();
        for (i, (facet, row)) in facets.rows().iter().zip(&dense).enumerate() {
            let s = facet.eval_ints(&coords);
            if s < 0 {
                return Err(Error::NotExtreme(format!("violates facet {i} ({:?})", facet.tag)));
            }
            if s == 0 {
                tight |= 1 << i;
                tight_rows.push(row.as_slice());
            }
        }
        let rank = exact_rank_at_least(&tight_rows, dim - 1);
        if rank != dim - 1 {
            return Err(Error::NotExtreme(format!("tight facets have rank {rank}, need {}", dim - 1)));
        }
        Ok(ExtremeRay { n: facets.n(), coords, tight })
    }

    /// Builds from an integer vector in display order, checking extremality.
    pub fn from_display(facets: &FacetSystem, display: &[i64]) -> Result<Self> {
        let order = display_order(facets.n());
        if display.len() != order.len() {
            return Err(Error::DimensionMismatch { expected: order.len(), got: display.len() });
        }
        let mut coords = vec![0; order.len()];
        for (s, &v) in order.iter().zip(display) {
            coords[s.index() - 1] = v;
        }
        Self::from_coords(facets, coords)
    }
}

impl std::fmt::Debug for ExtremeRay {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExtremeRay{:?}", self.display_vector())
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnumerationOptions {
    pub budget: Budget,
    /// Re-verify every intermediate cone. Expensive at five elements.
    pub check_invariants: bool,
}

impl EnumerationOptions {
    /// Options with invariant checking on in debug builds.
    pub fn debug_default() -> Self {
        EnumerationOptions { budget: Budget::default(), check_invariants: cfg!(debug_assertions) }
    }
}

/// Serializable summary of one enumeration run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub n: usize,
    pub facets: usize,
    pub rays: usize,
    pub peak_intermediate_rays: usize,
}

/// All extreme rays of the cone, primitive and sorted by display vector.
pub fn enumerate_extreme_rays(facets: &FacetSystem, opts: &EnumerationOptions) -> Result<Vec<ExtremeRay>> {
    enumerate_with_stats(facets, opts).map(|(rays, _)| rays)
}

pub fn enumerate_with_stats(facets: &FacetSystem, opts: &EnumerationOptions) -> Result<(Vec<ExtremeRay>, DdStats)> {
    if facets.n() > MAX_ENUMERATION_N {
        return Err(Error::UnsupportedSize(facets.n(), "1..=5 for enumeration"));
    }
    let dd_opts = dd::DdOptions { budget: opts.budget.clone(), check_invariants: opts.check_invariants, order: None };
    let (raw, stats) = dd::extreme_rays(&facets.dense_rows(), &dd_opts)?;
    let mut rays: Vec<ExtremeRay> =
        raw.into_iter().map(|(coords, tight)| ExtremeRay { n: facets.n(), coords, tight }).collect();
    sort_rays(&mut rays);
    Ok((rays, stats))
}

pub(crate) fn sort_rays(rays: &mut [ExtremeRay]) {
    rays.sort_by_cached_key(|r| r.display_vector());
}

/// Cached facet systems for the supported sizes.
pub(crate) fn cached_facets(n: usize) -> &'static FacetSystem {
    static CACHE: OnceLock<Vec<FacetSystem>> = OnceLock::new();
    let all = CACHE.get_or_init(|| (1..=MAX_FACET_N).map(|n| facet_inequalities(n).unwrap()).collect());
    &all[n - 1]
}

/// The shared facet system for `n` in `1..=6`.
pub fn cached_facets_checked(n: usize) -> Result<&'static FacetSystem> {
    if !(1..=MAX_FACET_N).contains(&n) {
        return Err(Error::UnsupportedSize(n, "1..=6 for the facet system"));
    }
    Ok(cached_facets(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cones_have_expected_ray_counts() {
        for (n, count) in [(1, 1), (2, 3), (3, 8), (4, 41)] {
            let rays = enumerate_extreme_rays(cached_facets(n), &EnumerationOptions::debug_default()).unwrap();
            assert_eq!(rays.len(), count, "n = {n}");
        }
    }

    #[test]
    fn two_element_rays_are_the_three_table_rows() {
        let rays = enumerate_extreme_rays(cached_facets(2), &EnumerationOptions::default()).unwrap();
        let v: Vec<Vec<i64>> = rays.iter().map(|r| r.display_vector()).collect();
        assert_eq!(v, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn every_enumerated_ray_is_a_polymatroid_and_re_verifies() {
        let facets = cached_facets(4);
        for ray in enumerate_extreme_rays(facets, &EnumerationOptions::default()).unwrap() {
            assert!(ray.to_rank_function().validate(crate::setfun::ValidationMode::Full).valid);
            let again = ExtremeRay::from_coords(facets, ray.coords().to_vec()).unwrap();
            assert_eq!(again, ray);
        }
    }

    #[test]
    fn non_extreme_vectors_are_rejected() {
        let facets = cached_facets(2);
        // (1,1,2) = M_a + M_b is inside a two-dimensional face.
        assert!(matches!(ExtremeRay::from_display(facets, &[1, 1, 2]), Err(Error::NotExtreme(_))));
        assert!(matches!(ExtremeRay::from_display(facets, &[2, 0, 2]), Err(Error::NotExtreme(_))));
        assert!(matches!(ExtremeRay::from_display(facets, &[1, 0, 0]), Err(Error::NotExtreme(_))));
        assert!(ExtremeRay::from_display(facets, &[1, 0, 1]).is_ok());
    }

    #[test]
    fn ray_budget_is_enforced() {
        let opts =
            EnumerationOptions { budget: Budget { max_seconds: None, max_rays: Some(5) }, check_invariants: false };
        assert!(matches!(enumerate_extreme_rays(cached_facets(4), &opts), Err(Error::BudgetExceeded(_))));
    }
}
