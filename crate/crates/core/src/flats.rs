//! Closure operator and flats.

use serde::{Deserialize, Serialize};

use crate::setfun::{RankFunction, Rational};
use crate::subset::{SubsetFamily, SubsetId};

/// Largest superset of `a` with the same rank.
///
/// Element `i` can be added to `a` without raising the rank iff
/// `f(a + i) = f(a)`, and by submodularity this stays true for every superset
/// of `a`, so one pass over the elements suffices.
pub fn closure(rank: &RankFunction, a: SubsetId) -> SubsetId {
    let base = rank.value(a);
    let mut cl = a;
    for i in 0..rank.n() {
        if !a.contains(i) && rank.value(a.with(i)) == base {
            cl = cl.with(i);
        }
    }
    cl
}

pub fn is_flat(rank: &RankFunction, a: SubsetId) -> bool {
    closure(rank, a) == a
}

/// The flats of a polymatroid, sorted by (cardinality, bitmask).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatSet {
    flats: Vec<SubsetId>,
    members: SubsetFamily,
}

impl FlatSet {
    pub fn sorted(&self) -> &[SubsetId] {
        &self.flats
    }

    pub fn contains(&self, s: SubsetId) -> bool {
        self.members.contains(s)
    }

    pub fn family(&self) -> &SubsetFamily {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetId> + '_ {
        self.flats.iter().copied()
    }
}

pub fn flats(rank: &RankFunction) -> FlatSet {
    let mut flats: Vec<SubsetId> = rank.ground().subsets().filter(|&s| is_flat(rank, s)).collect();
    flats.sort_by_key(|s| s.order_key());
    let members = SubsetFamily::from_iter(rank.n(), flats.iter().copied());
    FlatSet { flats, members }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatPair {
    pub first: SubsetId,
    pub second: SubsetId,
    /// Positive modular defect, as an exact rational string.
    pub defect: String,
}

/// Unordered pairs of flats with positive modular defect, in (first, second)
/// order of the sorted flat list. With `intersecting_only`, pairs of disjoint
/// flats are skipped.
pub fn nonmodular_flat_pairs(rank: &RankFunction, intersecting_only: bool) -> Vec<FlatPair> {
    nonmodular_pairs_in(rank, &flats(rank), intersecting_only)
        .into_iter()
        .map(|(first, second, d)| FlatPair { first, second, defect: d.to_string() })
        .collect()
}

pub(crate) fn nonmodular_pairs_in(
    rank: &RankFunction,
    flats: &FlatSet,
    intersecting_only: bool,
) -> Vec<(SubsetId, SubsetId, Rational)> {
    let list = flats.sorted();
    let mut out = Vec::new();
    for (k, &f1) in list.iter().enumerate() {
        for &f2 in &list[k + 1..] {
            if !f1.is_incomparable(f2) || (intersecting_only && f1.intersection(f2).is_empty()) {
                continue;
            }
            let d = rank.modular_defect(f1, f2);
            if d > num_traits::Zero::zero() {
                out.push((f1, f2, d));
            }
        }
    }
    out
}
