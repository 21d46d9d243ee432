//! Modular cuts (collections of flats) and modular filters (collections of
//! arbitrary subsets), generated as least fixpoints from seed sets.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::flats::{closure, flats, FlatSet};
use crate::setfun::RankFunction;
use crate::subset::{SubsetFamily, SubsetId};

/// Modular-pair lookup for one rank function, tabulated for small ground
/// sets.
pub(crate) struct Modularity<'a> {
    rank: &'a RankFunction,
    table: Option<Vec<u64>>,
}

impl<'a> Modularity<'a> {
    const TABLE_MAX_N: usize = 8;

    pub(crate) fn new(rank: &'a RankFunction) -> Self {
        let n = rank.n();
        let table = (n <= Self::TABLE_MAX_N).then(|| {
            let size = 1usize << n;
            let mut bits = vec![0u64; (size * size).div_ceil(64)];
            for a in 0..size as u32 {
                for b in 0..size as u32 {
                    if rank.modular_defect(SubsetId(a), SubsetId(b)).is_zero() {
                        let i = a as usize * size + b as usize;
                        bits[i / 64] |= 1 << (i % 64);
                    }
                }
            }
            bits
        });
        Modularity { rank, table }
    }

    pub(crate) fn rank(&self) -> &'a RankFunction {
        self.rank
    }

    #[inline]
    pub(crate) fn is_modular(&self, a: SubsetId, b: SubsetId) -> bool {
        match &self.table {
            Some(bits) => {
                let i = a.index() << self.rank.n() | b.index();
                bits[i / 64] >> (i % 64) & 1 == 1
            }
            None => self.rank.is_modular_pair(a, b),
        }
    }
}

/// A nonempty collection of flats, closed upwards among flats and under
/// intersection of modular pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularCut {
    members: SubsetFamily,
    seeds: Vec<SubsetId>,
}

impl ModularCut {
    pub fn members(&self) -> &SubsetFamily {
        &self.members
    }

    /// Members sorted by (cardinality, bitmask).
    pub fn sorted(&self) -> Vec<SubsetId> {
        self.members.sorted()
    }

    pub fn seeds(&self) -> &[SubsetId] {
        &self.seeds
    }

    pub fn contains(&self, s: SubsetId) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Principal iff the intersection of all members is a member.
    pub fn is_principal(&self) -> bool {
        self.members.contains(self.members.meet())
    }
}

/// An upward closed collection of subsets, closed under intersection of
/// modular pairs and containing every set of full rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularFilter {
    members: SubsetFamily,
    seeds: Vec<SubsetId>,
}

impl ModularFilter {
    pub fn members(&self) -> &SubsetFamily {
        &self.members
    }

    pub fn sorted(&self) -> Vec<SubsetId> {
        self.members.sorted()
    }

    pub fn seeds(&self) -> &[SubsetId] {
        &self.seeds
    }

    pub fn contains(&self, s: SubsetId) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_principal(&self) -> bool {
        self.members.contains(self.members.meet())
    }

    /// Wraps an arbitrary family after checking the filter axioms.
    pub fn from_family(rank: &RankFunction, members: SubsetFamily) -> Result<Self> {
        check_modular_filter(rank, &members).map_err(Error::InvalidFilter)?;
        Ok(ModularFilter { members, seeds: Vec::new() })
    }
}

/// The smallest modular cut containing `seeds`. Every seed must be a flat.
pub fn generate_modular_cut(rank: &RankFunction, seeds: &[SubsetId]) -> Result<ModularCut> {
    let fs = flats(rank);
    generate_cut_with(&Modularity::new(rank), &fs, seeds)
}

pub(crate) fn generate_cut_with(modularity: &Modularity<'_>, fs: &FlatSet, seeds: &[SubsetId]) -> Result<ModularCut> {
    let rank = modularity.rank();
    if let Some(&bad) = seeds.iter().find(|&&s| !fs.contains(s)) {
        return Err(Error::NotAFlat(bad));
    }
    let mut members = SubsetFamily::from_iter(rank.n(), seeds.iter().copied());
    members.insert(rank.full());
    loop {
        let mut changed = false;
        for f in fs.iter() {
            if !members.contains(f) && members.iter().any(|g| g.is_subset_of(f)) {
                members.insert(f);
                changed = true;
            }
        }
        changed |= close_modular_intersections(modularity, &mut members);
        if !changed {
            break;
        }
    }
    Ok(ModularCut { members, seeds: seeds.to_vec() })
}

/// Adds `A ∩ B` for every modular pair of members; reports whether anything
/// was added.
fn close_modular_intersections(modularity: &Modularity<'_>, members: &mut SubsetFamily) -> bool {
    let mut changed = false;
    loop {
        let list: Vec<SubsetId> = members.iter().collect();
        let mut added = false;
        for (k, &a) in list.iter().enumerate() {
            for &b in &list[k + 1..] {
                let meet = a.intersection(b);
                if !members.contains(meet) && modularity.is_modular(a, b) {
                    members.insert(meet);
                    added = true;
                }
            }
        }
        if !added {
            return changed;
        }
        changed = true;
    }
}

pub fn is_principal_cut(cut: &ModularCut) -> bool {
    cut.is_principal()
}

/// The smallest modular filter containing `seeds`.
pub fn generate_modular_filter(rank: &RankFunction, seeds: &[SubsetId]) -> ModularFilter {
    generate_filter_with(&Modularity::new(rank), seeds)
}

pub(crate) fn generate_filter_with(modularity: &Modularity<'_>, seeds: &[SubsetId]) -> ModularFilter {
    let rank = modularity.rank();
    let top = rank.value(rank.full());
    let mut members = SubsetFamily::from_iter(rank.n(), seeds.iter().copied());
    for s in rank.ground().subsets() {
        if rank.value(s) == top {
            members.insert(s);
        }
    }
    loop {
        let mut changed = close_upwards(&mut members);
        changed |= close_modular_intersections(modularity, &mut members);
        if !changed {
            break;
        }
    }
    ModularFilter { members, seeds: seeds.to_vec() }
}

fn close_upwards(members: &mut SubsetFamily) -> bool {
    let n = members.ground_size();
    let mut changed = false;
    // Increasing mask order visits every `X - i` before `X`.
    for x in 1..1u32 << n {
        let x = SubsetId(x);
        if !members.contains(x) && x.elements().any(|i| members.contains(x.without(i))) {
            members.insert(x);
            changed = true;
        }
    }
    changed
}

/// `{A : cl(A) ∈ cut}`.
pub fn cut_to_filter(rank: &RankFunction, cut: &ModularCut) -> ModularFilter {
    let members =
        SubsetFamily::from_iter(rank.n(), rank.ground().subsets().filter(|&a| cut.contains(closure(rank, a))));
    ModularFilter { members, seeds: cut.seeds.clone() }
}

/// Checks the modular cut axioms, naming the first failure.
pub fn check_modular_cut(rank: &RankFunction, members: &SubsetFamily) -> std::result::Result<(), String> {
    let fs = flats(rank);
    let name = |s: SubsetId| rank.ground().format(s);
    if !members.contains(rank.full()) {
        return Err("does not contain the ground set".into());
    }
    for a in members.iter() {
        if !fs.contains(a) {
            return Err(format!("{} is not a flat", name(a)));
        }
        if let Some(f) = fs.iter().find(|&f| a.is_subset_of(f) && !members.contains(f)) {
            return Err(format!("not closed upwards: {} ⊆ {}", name(a), name(f)));
        }
        for b in members.iter() {
            if rank.is_modular_pair(a, b) && !members.contains(a.intersection(b)) {
                return Err(format!("modular pair ({}, {}) has its intersection outside", name(a), name(b)));
            }
        }
    }
    Ok(())
}

/// Checks the modular filter axioms, naming the first failure.
pub fn check_modular_filter(rank: &RankFunction, members: &SubsetFamily) -> std::result::Result<(), String> {
    let name = |s: SubsetId| rank.ground().format(s);
    let top = rank.value(rank.full());
    for a in rank.ground().subsets() {
        if rank.value(a) == top && !members.contains(a) {
            return Err(format!("spanning set {} is missing", name(a)));
        }
    }
    for a in members.iter() {
        if let Some(i) = (0..rank.n()).find(|&i| !members.contains(a.with(i))) {
            return Err(format!("not closed upwards: {} ⊆ {}", name(a), name(a.with(i))));
        }
        for b in members.iter() {
            if rank.is_modular_pair(a, b) && !members.contains(a.intersection(b)) {
                return Err(format!("modular pair ({}, {}) has its intersection outside", name(a), name(b)));
            }
        }
    }
    Ok(())
}
