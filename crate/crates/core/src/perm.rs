//! Ground-set permutations acting on subset-indexed vectors.

use itertools::Itertools;

use crate::subset::{display_order, SubsetId};

/// `perm[i]` is the image of element `i`.
pub type Permutation = Vec<usize>;

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    (0..n).permutations(n).collect()
}

#[inline]
pub fn apply(perm: &[usize], s: SubsetId) -> SubsetId {
    let mut out = 0u32;
    for i in s.elements() {
        out |= 1 << perm[i];
    }
    SubsetId(out)
}

/// Precomputed action of every permutation of an `n`-set, used to find
/// lexicographically smallest relabelings.
pub struct PermutationTable {
    n: usize,
    order: Vec<SubsetId>,
    /// For each permutation, `pulls[p][k]` is the mask whose value lands on
    /// display position `k`.
    pulls: Vec<Vec<u32>>,
}

impl PermutationTable {
    pub fn new(n: usize) -> Self {
        let order = display_order(n);
        let pulls = all_permutations(n)
            .into_iter()
            .map(|perm| {
                let mut inv = vec![0; n];
                for (i, &j) in perm.iter().enumerate() {
                    inv[j] = i;
                }
                order.iter().map(|&s| apply(&inv, s).0).collect()
            })
            .collect();
        PermutationTable { n, order, pulls }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pulls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulls.is_empty()
    }

    /// Index of the permutation giving the lexicographically smallest display
    /// vector, plus the number of permutations attaining it (the stabilizer
    /// order). `value` reads a vector by mask.
    pub fn minimize<T: Ord, F: Fn(u32) -> T>(&self, value: F) -> (usize, usize) {
        let mut best = 0;
        let mut ties = 1;
        for p in 1..self.pulls.len() {
            let mut ord = std::cmp::Ordering::Equal;
            for (a, b) in self.pulls[p].iter().zip(&self.pulls[best]) {
                ord = value(*a).cmp(&value(*b));
                if ord.is_ne() {
                    break;
                }
            }
            match ord {
                std::cmp::Ordering::Less => {
                    best = p;
                    ties = 1;
                }
                std::cmp::Ordering::Equal => ties += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
        (best, ties)
    }

    /// The mask-indexed vector (length `2^n`, empty set at index 0) obtained by
    /// relabeling with permutation `p`.
    pub fn relabel<T: Clone>(&self, p: usize, by_mask: &[T]) -> Vec<T> {
        let mut out = by_mask.to_vec();
        for (k, &src) in self.pulls[p].iter().enumerate() {
            out[self.order[k].index()] = by_mask[src as usize].clone();
        }
        out
    }
}
