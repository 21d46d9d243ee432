use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setfun::{facet_triples, RankFunction, Rational};
use crate::subset::SubsetId;

/// Largest ground set for which the facet system is generated.
pub const MAX_FACET_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FacetTag {
    /// `f(M) - f(M - element) ≥ 0`
    Monotone { element: usize },
    /// `f(iK) + f(jK) - f(ijK) - f(K) ≥ 0`
    Submodular { i: usize, j: usize, k: SubsetId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub tag: FacetTag,
    /// Sparse coefficients `(mask, coefficient)`; the empty set never appears.
    pub terms: Vec<(SubsetId, i64)>,
}

impl Facet {
    /// Dense coefficient row over the cone coordinates (`mask - 1`).
    pub fn dense(&self, dim: usize) -> Vec<i64> {
        let mut row = vec![0; dim];
        for &(s, c) in &self.terms {
            row[s.index() - 1] += c;
        }
        row
    }

    pub fn eval_ints(&self, coords: &[i64]) -> i64 {
        self.terms.iter().map(|&(s, c)| c * coords[s.index() - 1]).sum()
    }

    pub fn eval(&self, rank: &RankFunction) -> Rational {
        let mut acc = Rational::from_integer(0.into());
        for &(s, c) in &self.terms {
            acc += rank.value(s) * Rational::from_integer(c.into());
        }
        acc
    }
}

/// The facet inequalities of the polymatroid cone on `n` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetSystem {
    n: usize,
    rows: Vec<Facet>,
}

impl FacetSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of cone coordinates, `2^n - 1`.
    pub fn dimension(&self) -> usize {
        (1 << self.n) - 1
    }

    pub fn rows(&self) -> &[Facet] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dense_rows(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.dense(self.dimension())).collect()
    }

    pub fn is_satisfied_by(&self, rank: &RankFunction) -> bool {
        rank.n() == self.n && self.rows.iter().all(|r| r.eval(rank) >= Rational::from_integer(0.into()))
    }
}

/// Monotone rows first (by element), then submodular rows sorted by
/// `(K, i, j)` with `K` in bitmask order.
pub fn facet_inequalities(n: usize) -> Result<FacetSystem> {
    if !(1..=MAX_FACET_N).contains(&n) {
        return Err(Error::UnsupportedSize(n, "1..=6"));
    }
    let full = SubsetId::full(n);
    let mut rows = Vec::new();
    for i in 0..n {
        let mut terms = vec![(full, 1)];
        if n > 1 {
            terms.push((full.without(i), -1));
        }
        rows.push(Facet { tag: FacetTag::Monotone { element: i }, terms });
    }
    for (k, i, j) in facet_triples(n) {
        let mut terms = vec![(k.with(i), 1), (k.with(j), 1), (k.with(i).with(j), -1)];
        if !k.is_empty() {
            terms.push((k, -1));
        }
        rows.push(Facet { tag: FacetTag::Submodular { i, j, k }, terms });
    }
    Ok(FacetSystem { n, rows })
}

/// `C(n,2) · 2^(n-2) + n`.
pub fn expected_facet_count(n: usize) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    if n >= 2 {
        pairs * (1 << (n - 2)) + n
    } else {
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facet_counts() {
        for n in 1..=6 {
            let fs = facet_inequalities(n).unwrap();
            assert_eq!(fs.len(), expected_facet_count(n));
        }
        let two = facet_inequalities(2).unwrap();
        assert_eq!((two.len(), two.dimension()), (3, 3));
        let five = facet_inequalities(5).unwrap();
        assert_eq!((five.len(), five.dimension()), (85, 31));
        assert!(facet_inequalities(0).is_err());
        assert!(facet_inequalities(7).is_err());
    }

    #[test]
    fn order_is_monotone_then_submodular() {
        let fs = facet_inequalities(3).unwrap();
        assert!(matches!(fs.rows()[0].tag, FacetTag::Monotone { element: 0 }));
        assert!(matches!(fs.rows()[3].tag, FacetTag::Submodular { i: 0, j: 1, k: SubsetId(0) }));
        assert!(matches!(fs.rows()[8].tag, FacetTag::Submodular { i: 0, j: 1, k: SubsetId(4) }));
    }

    #[test]
    fn single_element_cone_is_a_half_line() {
        let fs = facet_inequalities(1).unwrap();
        assert_eq!(fs.dense_rows(), vec![vec![1]]);
    }
}
