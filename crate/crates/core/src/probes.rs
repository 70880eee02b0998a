//! Seeded random weighted functions for the identity suites.
//!
//! Monomial exponents are at most 5, coefficients are drawn from
//! `{−9..9}/{1..4}`, and the weight exponent is a small signed rational.
//! The generator is ChaCha-based so a seed reproduces the same probes on
//! every platform.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, BiPoly, Rational, WeightedFn};

pub const MAX_EXPONENT: u32 = 5;

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random polynomial with 1 to 4 terms and exponents `<= max_exp`.
pub fn random_poly(rng: &mut ChaCha8Rng, max_exp: u32) -> BiPoly {
    let mut p = BiPoly::zero();
    while p.is_zero() {
        for _ in 0..rng.gen_range(1..=4) {
            let i = rng.gen_range(0..=max_exp);
            let j = rng.gen_range(0..=max_exp);
            p.add_term(i, j, random_coeff(rng));
        }
    }
    p
}

/// A small signed rational with denominator at most 4.
pub fn random_exponent(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=4))
}

/// One probe in the weight family of curvature `kappa`.
pub fn random_probe(rng: &mut ChaCha8Rng, kappa: &Rational, max_exp: u32) -> WeightedFn {
    let poly = random_poly(rng, max_exp);
    let e = random_exponent(rng);
    WeightedFn::for_curvature(kappa, e, poly)
}

/// `count` probes for curvature `kappa`, reproducible from `seed`.
pub fn random_probes(kappa: &Rational, count: usize, seed: u64) -> Vec<WeightedFn> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_probe(&mut rng, kappa, MAX_EXPONENT))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
