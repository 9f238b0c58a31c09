//! Random generators shared by the integration suites.
//!
//! Everything is driven by a seeded ChaCha stream so failures replay from
//! the seed alone; proptest strategies pick the seed.

#![allow(dead_code)]

use std::collections::BTreeSet;

use grd_core::algebra::LaurentPoly;
use grd_core::exact::{factorial, int, pow, ratio, ExponentVector, Rational};
use grd_core::schemes::{grd_from_nodes, parity_split, require_grd, DiffScheme, Parity};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn seeds() -> impl Strategy<Value = u64> {
    any::<u64>()
}

/// Small nonzero rational `p/q`, `|p| <= 9`, `1 <= q <= 6`.
pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let p = rng.gen_range(-9i64..=9);
        if p != 0 {
            return ratio(p, rng.gen_range(1..=6));
        }
    }
}

pub fn positive_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(1..=9), rng.gen_range(1..=6))
}

/// `count` distinct rational nodes; node 0 appears with probability 1/3.
pub fn distinct_nodes(rng: &mut impl Rng, count: usize) -> Vec<Rational> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    if rng.gen_ratio(1, 3) {
        seen.insert(int(0));
        out.push(int(0));
    }
    while out.len() < count {
        let node = ratio(rng.gen_range(-8..=8), rng.gen_range(1..=4));
        if seen.insert(node.clone()) {
            out.push(node);
        }
    }
    out.shuffle(rng);
    out
}

/// Random scheme with up to 6 nonzero terms (possibly not a GRD).
pub fn random_scheme(rng: &mut impl Rng) -> DiffScheme {
    let count = rng.gen_range(1..=6);
    let nodes = distinct_nodes(rng, count);
    DiffScheme::from_terms(nodes.into_iter().map(|a| (nonzero_rational(rng), a))).unwrap()
}

/// GRD of order `n` with exactly `n + 1 + excess` nodes.
///
/// The minimal scheme on the first `n + 1` nodes is perturbed by random
/// multiples of null schemes (vanishing moments `0..=n`), one per extra node.
pub fn random_grd(rng: &mut impl Rng, n: u32, excess: u32) -> DiffScheme {
    loop {
        let nodes = distinct_nodes(rng, (n + 1 + excess) as usize);
        let base_nodes = &nodes[..=n as usize];
        let mut s = grd_from_nodes(base_nodes, n).unwrap();
        for extra in &nodes[n as usize + 1..] {
            let mut support = base_nodes.to_vec();
            support.push(extra.clone());
            let null = grd_from_nodes(&support, n + 1).unwrap();
            s = s.add(&null.scale(&nonzero_rational(rng)).unwrap());
        }
        if require_grd(&s).ok() == Some(n) && s.len() == (n + 1 + excess) as usize {
            return s;
        }
    }
}

/// GRD with order in `1..=4` and excess in `0..=2`.
pub fn any_grd(rng: &mut impl Rng) -> DiffScheme {
    let n = rng.gen_range(1..=4);
    let e = rng.gen_range(0..=2);
    random_grd(rng, n, e)
}

/// A GRD implied by `s`: a combination of dilates normalized to keep the
/// n-th moment at n!.
pub fn combination_of_dilates(rng: &mut impl Rng, s: &DiffScheme) -> DiffScheme {
    let n = require_grd(s).expect("grd");
    loop {
        let terms = rng.gen_range(1..=3);
        let mut total = DiffScheme::zero();
        for _ in 0..terms {
            let r = nonzero_rational(rng);
            let c = nonzero_rational(rng);
            total = total.add(&s.dilate(&r).unwrap().scale(&c).unwrap());
        }
        let nth = total.moment(n);
        if nth.is_zero() {
            continue;
        }
        let out = total.scale(&(factorial(n) / nth)).unwrap();
        if require_grd(&out).ok() == Some(n) {
            return out;
        }
    }
}

/// `s^-n dilate(eps, s) + A dilate(eps', r)`: a random scheme equivalent to `g`.
pub fn unit_transform(rng: &mut impl Rng, g: &DiffScheme) -> DiffScheme {
    let n = require_grd(g).expect("grd");
    let split = parity_split(g);
    let eps = Parity::of_order(n);
    let s = positive_rational(rng);
    let r = positive_rational(rng);
    let a = nonzero_rational(rng);
    let main = split.component(eps).scaling(&s).unwrap();
    let prime = split.component(eps.opposite());
    if prime.is_zero() {
        return main;
    }
    main.add(&prime.dilate(&r).unwrap().scale(&a).unwrap())
}

/// Adds a random epsilon-prime part (first nonzero moment beyond `n`) to `g`.
pub fn with_random_prime_part(rng: &mut impl Rng, g: &DiffScheme) -> DiffScheme {
    let n = require_grd(g).expect("grd");
    let prime = Parity::of_order(n).opposite();
    loop {
        // A null scheme of high order, symmetrized into the opposite parity.
        let nodes = distinct_nodes(rng, n as usize + 2);
        let null = grd_from_nodes(&nodes, n + 1).unwrap();
        let part = parity_split(&null).component(prime).clone();
        if part.is_zero() {
            continue;
        }
        let out = g.add(&part.scale(&nonzero_rational(rng)).unwrap());
        if require_grd(&out).ok() == Some(n)
            && !parity_split(&out).component(prime).is_zero()
        {
            return out;
        }
    }
}

/// Laurent polynomial in up to 3 of the primes 2, 3, 5 with exponents in
/// `[-2, 2]` and up to `max_terms` terms.
pub fn random_laurent(rng: &mut impl Rng, max_terms: usize) -> LaurentPoly {
    let primes = [2u64, 3, 5];
    let k = rng.gen_range(1..=3);
    let terms = rng.gen_range(1..=max_terms);
    let poly = LaurentPoly::from_terms((0..terms).map(|_| {
        let v = ExponentVector::from_pairs(primes[..k].iter().map(|&p| (p, rng.gen_range(-2..=2))));
        (v, nonzero_rational(rng))
    }));
    if poly.is_zero() {
        LaurentPoly::constant(Rational::one())
    } else {
        poly
    }
}

/// `t^j` for exact comparisons in tests.
pub fn power(t: &Rational, j: i64) -> Rational {
    pow(t, j)
}
