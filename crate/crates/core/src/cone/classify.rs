use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{cached_facets, ExtremeRay};
use crate::perm::PermutationTable;

/// One permutation orbit of extreme rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    /// The member with the lexicographically smallest display vector.
    pub representative: ExtremeRay,
    /// `n!` divided by the order of the representative's stabilizer.
    pub orbit_size: usize,
    /// How many of the classified rays fell into this class.
    pub member_count: usize,
}

/// Display vector of the canonical relabeling of `ray`, and the orbit size.
pub(crate) fn canonical_display(table: &PermutationTable, ray: &ExtremeRay) -> (Vec<i64>, usize) {
    let mut by_mask = Vec::with_capacity(ray.coords().len() + 1);
    by_mask.push(0);
    by_mask.extend_from_slice(ray.coords());
    let (p, ties) = table.minimize(|m| by_mask[m as usize]);
    let canon = table.relabel(p, &by_mask);
    let display = crate::subset::display_order(ray.n()).into_iter().map(|s| canon[s.index()]).collect();
    (display, table.len() / ties)
}

/// Groups rays by canonical form. Classes come out sorted by canonical
/// vector.
pub fn classify_isomorphism(rays: &[ExtremeRay]) -> Vec<IsoClass> {
    let Some(first) = rays.first() else { return Vec::new() };
    let n = first.n();
    assert!(rays.iter().all(|r| r.n() == n), "rays must share one ground set");
    let table = PermutationTable::new(n);
    let keyed: Vec<(Vec<i64>, usize)> = rays.par_iter().map(|r| canonical_display(&table, r)).collect();
    let mut groups: BTreeMap<Vec<i64>, (usize, usize)> = BTreeMap::new();
    for (key, orbit) in keyed {
        groups.entry(key).or_insert((orbit, 0)).1 += 1;
    }
    let facets = cached_facets(n);
    groups
        .into_iter()
        .map(|(display, (orbit_size, member_count))| IsoClass {
            representative: ExtremeRay::from_display(facets, &display).expect("a relabeled extreme ray is extreme"),
            orbit_size,
            member_count,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{enumerate_extreme_rays, EnumerationOptions};

    #[test]
    fn three_and_four_element_class_counts() {
        for (n, rays, classes) in [(2, 3, 2), (3, 8, 4), (4, 41, 11)] {
            let all = enumerate_extreme_rays(cached_facets(n), &EnumerationOptions::default()).unwrap();
            assert_eq!(all.len(), rays);
            let cls = classify_isomorphism(&all);
            assert_eq!(cls.len(), classes);
            assert_eq!(cls.iter().map(|c| c.orbit_size).sum::<usize>(), rays);
            assert!(cls.iter().all(|c| c.orbit_size == c.member_count));
        }
    }

    #[test]
    fn representatives_are_canonical() {
        let all = enumerate_extreme_rays(cached_facets(3), &EnumerationOptions::default()).unwrap();
        for class in classify_isomorphism(&all) {
            let f = class.representative.to_rank_function();
            assert_eq!(f.canonical_form(), f);
        }
    }
}
