//! Double description enumeration of the extreme rays of a pointed cone
//! `{x : A x ≥ 0}` with integer rows, in exact integer arithmetic.
//!
//! Rays are kept primitive (gcd 1). Adjacency of two rays of the current cone
//! is decided combinatorially: they are adjacent iff no third ray is tight on
//! every row on which both are tight.

use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{gcd_slice, integer_rank, primitive_integer, rank_mod_prime, rational_inverse};

/// Row sets are bitmasks; rows beyond this are not supported.
pub const MAX_ROWS: usize = 128;

#[derive(Clone, Debug, Default)]
pub struct Budget {
    pub max_seconds: Option<f64>,
    pub max_rays: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct DdOptions {
    pub budget: Budget,
    /// Re-check every intermediate cone (satisfied rows and tight sets).
    pub check_invariants: bool,
    /// Row insertion order; `None` inserts in the given row order.
    pub order: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default)]
pub struct DdStats {
    /// Ray count after each inserted row, starting with the initial cone.
    pub ray_counts: Vec<usize>,
    pub candidate_pairs: u64,
}

struct RaySet {
    dim: usize,
    coords: Vec<i64>,
    tight: Vec<u128>,
}

impl RaySet {
    fn with_dim(dim: usize) -> Self {
        RaySet { dim, coords: Vec::new(), tight: Vec::new() }
    }

    fn len(&self) -> usize {
        self.tight.len()
    }

    fn ray(&self, i: usize) -> &[i64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    fn push(&mut self, v: &[i64], tight: u128) {
        self.coords.extend_from_slice(v);
        self.tight.push(tight);
    }
}

fn dot(row: &[i64], v: &[i64]) -> Result<i64> {
    let s: i128 = row.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
    i64::try_from(s).map_err(|_| Error::Overflow)
}

/// A primitive ray with its tight row mask.
pub type RawRay = (Vec<i64>, u128);

/// Extreme rays in no particular order.
pub fn extreme_rays(rows: &[Vec<i64>], opts: &DdOptions) -> Result<(Vec<RawRay>, DdStats)> {
    let start = Instant::now();
    let dim = rows.first().map_or(0, Vec::len);
    if rows.len() > MAX_ROWS {
        return Err(Error::UnsupportedSize(rows.len(), "at most 128 inequalities"));
    }
    let order: Vec<usize> = opts.order.clone().unwrap_or_else(|| (0..rows.len()).collect());

    // Initial simplicial cone from the first independent rows in order.
    let mut basis: Vec<usize> = Vec::new();
    for &r in &order {
        let mut trial: Vec<&[i64]> = basis.iter().map(|&b| rows[b].as_slice()).collect();
        trial.push(&rows[r]);
        let rank = if rank_mod_prime(&trial) == trial.len() { trial.len() } else { integer_rank(&trial) };
        if rank == trial.len() {
            basis.push(r);
            if basis.len() == dim {
                break;
            }
        }
    }
    if basis.len() < dim {
        return Err(Error::NotExtreme("cone is not pointed".into()));
    }
    let b: Vec<Vec<i64>> = basis.iter().map(|&r| rows[r].clone()).collect();
    let inv = rational_inverse(&b).expect("basis rows are independent");
    let mut rays = RaySet::with_dim(dim);
    let mut inserted: u128 = 0;
    for &r in &basis {
        inserted |= 1 << r;
    }
    for j in 0..dim {
        let col: Vec<_> = inv.iter().map(|row| row[j].clone()).collect();
        let v = primitive_integer(&col).ok_or(Error::Overflow)?;
        let mut tight = 0u128;
        for (k, &r) in basis.iter().enumerate() {
            if k != j {
                tight |= 1 << r;
            }
        }
        rays.push(&v, tight);
    }

    let mut stats = DdStats { ray_counts: vec![rays.len()], candidate_pairs: 0 };
    for &row_idx in order.iter().filter(|r| !basis.contains(r)) {
        let row = &rows[row_idx];
        let bit = 1u128 << row_idx;
        let slacks: Vec<i64> = (0..rays.len()).map(|i| dot(row, rays.ray(i))).collect::<Result<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| slacks[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| slacks[i] < 0).collect();

        let mut next = RaySet::with_dim(dim);
        for (i, &s) in slacks.iter().enumerate() {
            if s > 0 {
                next.push(rays.ray(i), rays.tight[i]);
            } else if s == 0 {
                next.push(rays.ray(i), rays.tight[i] | bit);
            }
        }
        if !neg.is_empty() && !pos.is_empty() {
            let (anchors, others_positive) = if pos.len() <= neg.len() { (&pos, false) } else { (&neg, true) };
            let batches = anchors
                .par_iter()
                .map(|&a| adjacent_combinations(&rays, &slacks, a, others_positive, dim, bit))
                .collect::<Result<Vec<_>>>()?;
            for (coords, tights, pairs) in batches {
                stats.candidate_pairs += pairs;
                next.coords.extend_from_slice(&coords);
                next.tight.extend_from_slice(&tights);
            }
        }
        rays = next;
        inserted |= bit;
        stats.ray_counts.push(rays.len());

        if let Some(limit) = opts.budget.max_rays {
            if rays.len() > limit {
                return Err(Error::BudgetExceeded(format!("{} intermediate rays > limit {limit}", rays.len())));
            }
        }
        if let Some(secs) = opts.budget.max_seconds {
            if start.elapsed().as_secs_f64() > secs {
                return Err(Error::BudgetExceeded(format!("wall clock limit of {secs} s")));
            }
        }
        if opts.check_invariants {
            check_partial_cone(rows, inserted, &rays)?;
        }
    }

    let out = (0..rays.len()).map(|i| (rays.ray(i).to_vec(), rays.tight[i])).collect();
    Ok((out, stats))
}

/// New rays from pairs `(anchor, other)` straddling the inserted row, where
/// `other` lies on the opposite side and is adjacent to `anchor`.
fn adjacent_combinations(
    rays: &RaySet,
    slacks: &[i64],
    anchor: usize,
    others_positive: bool,
    dim: usize,
    bit: u128,
) -> Result<(Vec<i64>, Vec<u128>, u64)> {
    let ta = rays.tight[anchor];
    let need = (dim as u32).saturating_sub(2);
    // Every ray sharing enough tight rows with the anchor; any ray whose tight
    // set contains the anchor/other intersection lands here.
    let mut near: Vec<(usize, u128)> = Vec::new();
    for (i, &t) in rays.tight.iter().enumerate() {
        let z = ta & t;
        if i != anchor && z.count_ones() >= need {
            near.push((i, z));
        }
    }
    let mut coords = Vec::new();
    let mut tights = Vec::new();
    let mut pairs = 0u64;
    for &(other, z) in &near {
        let s = slacks[other];
        if (others_positive && s <= 0) || (!others_positive && s >= 0) {
            continue;
        }
        pairs += 1;
        let blocked = near.iter().any(|&(q, zq)| q != other && zq & z == z);
        if blocked {
            continue;
        }
        let (p, n) = if others_positive { (other, anchor) } else { (anchor, other) };
        let sp = slacks[p] as i128;
        let sn = -(slacks[n] as i128);
        let (vp, vn) = (rays.ray(p), rays.ray(n));
        let mut w: Vec<i128> = vp.iter().zip(vn).map(|(&a, &b)| sn * a as i128 + sp * b as i128).collect();
        let g = w.iter().fold(0i128, |acc, &x| acc.gcd(&x));
        if g > 1 {
            for x in w.iter_mut() {
                *x /= g;
            }
        }
        for x in w {
            coords.push(i64::try_from(x).map_err(|_| Error::Overflow)?);
        }
        tights.push(z | bit);
    }
    Ok((coords, tights, pairs))
}

fn check_partial_cone(rows: &[Vec<i64>], inserted: u128, rays: &RaySet) -> Result<()> {
    for i in 0..rays.len() {
        let v = rays.ray(i);
        if gcd_slice(v) != 1 {
            return Err(Error::NotExtreme(format!("ray {i} is not primitive")));
        }
        let mut tight = 0u128;
        for (r, row) in rows.iter().enumerate() {
            if inserted >> r & 1 == 0 {
                continue;
            }
            let s = dot(row, v)?;
            if s < 0 {
                return Err(Error::NotExtreme(format!("ray {i} violates inserted row {r}")));
            }
            if s == 0 {
                tight |= 1 << r;
            }
        }
        if tight != rays.tight[i] {
            return Err(Error::NotExtreme(format!("ray {i} has a stale tight set")));
        }
    }
    Ok(())
}
