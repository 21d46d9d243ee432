//! Linear representations over prime fields: each element gets a list of
//! generator vectors, and the rank of a set is the dimension of the span of
//! its generators.

use crate::error::{Error, Result};
use crate::extend::ExcessFunction;
use crate::linalg::pow_mod;
use crate::setfun::{rat, RankFunction};
use crate::subset::{GroundSet, SubsetId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRepresentation {
    p: u64,
    dim: usize,
    ground: GroundSet,
    generators: Vec<Vec<Vec<u64>>>,
}

impl LinearRepresentation {
    pub fn new(p: u64, dim: usize, ground: GroundSet, generators: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRepresentation(format!("{p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidRepresentation(format!("prime {p} is too large")));
        }
        if generators.len() != ground.len() {
            return Err(Error::InvalidRepresentation(format!(
                "{} generator lists for {} elements",
                generators.len(),
                ground.len()
            )));
        }
        for (label, gens) in ground.labels().iter().zip(&generators) {
            for v in gens {
                if v.len() != dim {
                    return Err(Error::InvalidRepresentation(format!(
                        "{label}: vector of length {}, expected {dim}",
                        v.len()
                    )));
                }
                if let Some(x) = v.iter().find(|&&x| x >= p) {
                    return Err(Error::InvalidRepresentation(format!("{label}: entry {x} is not a residue mod {p}")));
                }
            }
        }
        Ok(LinearRepresentation { p, dim, ground, generators })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn generators(&self, element: usize) -> &[Vec<u64>] {
        &self.generators[element]
    }

    fn stacked(&self, s: SubsetId) -> Vec<Vec<u64>> {
        s.elements().flat_map(|i| self.generators[i].iter().cloned()).collect()
    }

    /// A basis of the span of the generators of the elements of `s`.
    pub fn span_basis(&self, s: SubsetId) -> Vec<Vec<u64>> {
        row_reduce(self.stacked(s), self.p).0
    }

    /// Adds an element generated by `vectors`, labelled `x` unless taken.
    pub fn with_element(&self, vectors: Vec<Vec<u64>>) -> Result<Self> {
        let mut labels = self.ground.labels().to_vec();
        let label = std::iter::once("x".to_string())
            .chain((0..).map(|k| format!("x{k}")))
            .find(|l| !labels.contains(l))
            .expect("unbounded label supply");
        labels.push(label);
        let mut generators = self.generators.clone();
        generators.push(vectors);
        Self::new(self.p, self.dim, GroundSet::with_labels(labels)?, generators)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Row echelon form over GF(p); returns the nonzero rows and the rank.
fn row_reduce(mut m: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, usize) {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    (m, rank)
}

/// `f(A) = dim span(V_A)`.
pub fn rank_from_representation(rep: &LinearRepresentation) -> RankFunction {
    RankFunction::from_fn(rep.ground.clone(), |s| rat(row_reduce(rep.stacked(s), rep.p).1 as i64))
}

/// A basis of `span(V_X) ∩ span(V_Y)` by the Zassenhaus method: reduce the
/// block matrix `[B_X B_X; B_Y 0]`; rows whose left half vanishes carry the
/// intersection in their right half.
pub fn span_intersection(rep: &LinearRepresentation, x: SubsetId, y: SubsetId) -> Vec<Vec<u64>> {
    let (bx, by) = (rep.span_basis(x), rep.span_basis(y));
    let d = rep.dim;
    let mut block: Vec<Vec<u64>> = bx.iter().map(|v| v.iter().chain(v).copied().collect()).collect();
    block.extend(by.iter().map(|v| v.iter().copied().chain(std::iter::repeat_n(0, d)).collect()));
    let (reduced, _) = row_reduce(block, rep.p);
    reduced.into_iter().filter(|r| r[..d].iter().all(|&v| v == 0)).map(|r| r[d..].to_vec()).collect()
}

/// The representation extended by an element spanning
/// `span(V_X) ∩ span(V_Y)`.
pub fn extend_with_intersection(rep: &LinearRepresentation, x: SubsetId, y: SubsetId) -> Result<LinearRepresentation> {
    rep.with_element(span_intersection(rep, x, y))
}

/// Excess function of the intersection extension: vanishes on `X` and `Y`,
/// and `e(X ∩ Y) = δ_f(X, Y)`.
pub fn intersection_extension(rep: &LinearRepresentation, x: SubsetId, y: SubsetId) -> Result<ExcessFunction> {
    let n = rep.ground.len();
    let ext = extend_with_intersection(rep, x, y)?;
    let f = rank_from_representation(&ext);
    Ok(ExcessFunction::from_fn(n, |a| f.value(a.with(n)) - f.value(a)))
}
