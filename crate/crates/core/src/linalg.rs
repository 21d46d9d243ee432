//! Small exact linear algebra over the rationals and over prime fields.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::setfun::Rational;

/// Row-reduces `m` in place and returns its rank.
pub fn rational_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in rank + 1..m.len() {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] / &pivot;
            for k in c..cols {
                let t = &factor * &m[rank][k];
                m[r][k] -= t;
            }
        }
        rank += 1;
    }
    rank
}

pub fn integer_rank(rows: &[&[i64]]) -> usize {
    rational_rank(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).collect())
}

/// Rank of an integer matrix modulo a fixed large prime. Never exceeds the
/// rank over the rationals.
pub fn rank_mod_prime(rows: &[&[i64]]) -> usize {
    const P: u64 = 2_305_843_009_213_693_951; // 2^61 - 1
    let cols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u64>> =
        rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(P as i64) as u64).collect()).collect();
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % P as u128) as u64;
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][c], P - 2, P);
        for r in rank + 1..m.len() {
            if m[r][c] == 0 {
                continue;
            }
            let factor = mulmod(m[r][c], inv);
            for k in c..cols {
                let t = mulmod(factor, m[rank][k]);
                m[r][k] = (m[r][k] + P - t) % P;
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rank of an integer matrix: the modular rank when it already reaches
/// `target`, else the rational rank.
pub fn exact_rank_at_least(rows: &[&[i64]], target: usize) -> usize {
    let r = rank_mod_prime(rows);
    if r >= target {
        r
    } else {
        integer_rank(rows)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Inverse of a square integer matrix, or `None` if singular.
pub fn rational_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let factor = a[r][c].clone();
                for k in 0..2 * n {
                    let t = &factor * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Scales a nonzero rational vector to the unique primitive integer vector
/// with the same direction.
pub fn primitive_integer(v: &[Rational]) -> Option<Vec<i64>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    ints.iter().map(|x| i64::try_from(x / &g).ok()).collect()
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_agree_on_small_matrices() {
        let a: [&[i64]; 3] = [&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]];
        assert_eq!(integer_rank(&a), 2);
        assert_eq!(rank_mod_prime(&a), 2);
        assert_eq!(exact_rank_at_least(&a, 3), 2);
    }

    #[test]
    fn inverse_of_triangular() {
        let m = vec![vec![1, 1], vec![0, 2]];
        let inv = rational_inverse(&m).unwrap();
        assert_eq!(inv[0][1], Rational::new((-1).into(), 2.into()));
        assert!(rational_inverse(&[vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![Rational::new(1.into(), 2.into()), Rational::new(3.into(), 4.into())];
        assert_eq!(primitive_integer(&v), Some(vec![2, 3]));
        assert!(primitive_integer(&[Rational::zero()]).is_none());
    }
}
