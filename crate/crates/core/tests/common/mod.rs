#![allow(dead_code)]

use std::sync::OnceLock;

use polymatroid::cone::{enumerate_extreme_rays, facet_inequalities, EnumerationOptions};
use polymatroid::linrep::{rank_from_representation, LinearRepresentation};
use polymatroid::setfun::{conic_combination, ratio};
use polymatroid::{GroundSet, RankFunction, Rational};
use proptest::test_runner::{Config, RngSeed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn config(seed: u64) -> Config {
    Config { cases: 256, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Extreme rays of the cone on `n <= 4` elements, as rank functions.
pub fn extreme(n: usize) -> &'static [RankFunction] {
    static CACHE: OnceLock<Vec<Vec<RankFunction>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (1..=4)
            .map(|n| {
                let facets = facet_inequalities(n).unwrap();
                enumerate_extreme_rays(&facets, &EnumerationOptions::default())
                    .unwrap()
                    .iter()
                    .map(|r| r.to_rank_function())
                    .collect()
            })
            .collect()
    });
    &all[n - 1]
}

pub fn positive_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(1..=6), rng.gen_range(1..=4))
}

/// A conic combination of one to four extreme rays on `n <= 4` elements.
pub fn random_polymatroid(rng: &mut impl Rng, n: usize) -> RankFunction {
    let rays = extreme(n);
    let k = rng.gen_range(1..=4);
    let terms: Vec<(Rational, &RankFunction)> =
        (0..k).map(|_| (positive_rational(rng), rays.choose(rng).unwrap())).collect();
    conic_combination(terms).unwrap()
}

/// A representation over GF(2) or GF(3) with zero to two vectors per element.
pub fn random_representation(rng: &mut impl Rng, n: usize, max_dim: usize) -> LinearRepresentation {
    let p = *[2u64, 3].choose(rng).unwrap();
    let d = rng.gen_range(1..=max_dim);
    let generators = (0..n)
        .map(|_| (0..rng.gen_range(0..=2)).map(|_| (0..d).map(|_| rng.gen_range(0..p)).collect()).collect())
        .collect();
    LinearRepresentation::new(p, d, GroundSet::new(n).unwrap(), generators).unwrap()
}

pub fn random_linear(rng: &mut impl Rng, n: usize) -> RankFunction {
    rank_from_representation(&random_representation(rng, n, 3))
}

/// Random vectors on `n` elements, roughly half of them polymatroids.
pub fn random_vector(rng: &mut impl Rng, n: usize) -> RankFunction {
    let ground = GroundSet::new(n).unwrap();
    match rng.gen_range(0..3) {
        0 => RankFunction::from_fn(ground, |s| {
            if s.is_empty() {
                ratio(0, 1)
            } else {
                ratio(rng.gen_range(0..=4), rng.gen_range(1..=2))
            }
        }),
        1 => random_polymatroid(rng, n),
        _ => {
            let f = random_polymatroid(rng, n);
            let target = rng.gen_range(1..1u32 << n);
            let bump = ratio(*[-2i64, -1, 1, 2].choose(rng).unwrap(), 2);
            RankFunction::from_fn(ground, |s| {
                let v = f.value(s).clone();
                if s.bits() == target {
                    v + &bump
                } else {
                    v
                }
            })
        }
    }
}
