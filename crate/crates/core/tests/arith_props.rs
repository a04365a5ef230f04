//! Invariants of the arithmetic layer: character multiplicativity and
//! periodicity, decomposition consistency, Euler product splitting.

use proptest::prelude::*;
use qmodl::arith::{
    euler_product, for_each_prime, fundamental_decomposition, is_fundamental, kronecker,
};
use rand::{Rng, SeedableRng};

proptest! {
    #[test]
    fn kronecker_is_totally_multiplicative(
        d in -500i64..500,
        m in (-100i64..100).prop_filter("nonzero", |&m| m != 0),
        n in (-100i64..100).prop_filter("nonzero", |&n| n != 0),
    ) {
        prop_assume!(d != 0);
        prop_assert_eq!(
            kronecker(d, m * n),
            kronecker(d, m) * kronecker(d, n)
        );
    }
}

#[test]
fn kronecker_multiplicative_bulk() {
    // 10^4 seeded random pairs across a few discriminants
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let a: u64 = rng.gen_range(1..=100);
        let d = -4 * a as i64;
        let m: i64 = rng.gen_range(1..=10_000);
        let n: i64 = rng.gen_range(1..=10_000);
        assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
    }
}

#[test]
fn kronecker_periodicity_mod_4a() {
    for a in 1..=100i64 {
        let d = -4 * a;
        for n in 1..=10_000i64 {
            assert_eq!(kronecker(d, n), kronecker(d, n + 4 * a), "a={a} n={n}");
        }
    }
}

#[test]
fn decomposition_consistency_to_ten_thousand() {
    let primes = qmodl::arith::primes_up_to(100);
    for a in 1..=10_000u64 {
        let dec = fundamental_decomposition(a);
        assert_eq!(dec.fund * (dec.sq * dec.sq) as i64, -4 * a as i64, "a = {a}");
        assert!(is_fundamental(dec.fund), "a = {a}");
        for &p in &primes {
            if 2 * a % p == 0 || dec.sq % p == 0 {
                continue;
            }
            assert_eq!(
                kronecker(-4 * a as i64, p as i64),
                kronecker(dec.fund, p as i64),
                "a = {a}, p = {p}"
            );
        }
    }
}

#[test]
fn euler_product_splits_multiplicatively() {
    for d in [-4i64, -3, -20, -23, -163] {
        for (y1, y2) in [(10.0, 100.0), (31.0, 1_000.0), (2.0, 10_000.0)] {
            let full = euler_product(d, y2);
            let prefix = euler_product(d, y1);
            let mut suffix = 1.0f64;
            for_each_prime(y2 as u64, |p| {
                if p as f64 > y1 {
                    let chi = kronecker(d, p as i64);
                    if chi != 0 {
                        suffix *= 1.0 - chi as f64 / p as f64;
                    }
                }
            });
            let recombined = prefix * suffix;
            assert!(
                ((full - recombined) / full).abs() < 1e-12,
                "d={d} split at {y1}: {full} vs {recombined}"
            );
        }
    }
}
