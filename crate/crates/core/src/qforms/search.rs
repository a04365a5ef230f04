//! Bounded exhaustive search for `2^m + n0 = u y^2`.
//!
//! Finiteness of the full solution set is an ineffective statement (it
//! rests on integral points of elliptic curves), so no bound on `m` can be
//! certified from inside a computation; what can be verified is the
//! complete list of solutions with `m <= m_max`, in exact arbitrary
//! precision.

use super::FormError;
use crate::arith::factorize;
use num_bigint::BigInt;
use num_traits::Signed;

/// One solution of `2^m + n0 = u y^2` with `u` a squarefree divisor of
/// `2N` and `y >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pow2Square {
    pub m: u32,
    pub u: u64,
    pub y: BigInt,
}

/// All solutions with `1 <= m <= m_max`, ordered by `(m, u)`. Exhaustive
/// within the range; exact big-integer arithmetic throughout.
pub fn pow2_square_search(n0: i64, n: u64, m_max: u32) -> Result<Vec<Pow2Square>, FormError> {
    if n0 == 0 {
        return Err(FormError::ZeroN0);
    }
    // squarefree divisors of 2N = products of subsets of its distinct primes
    let primes: Vec<u64> = factorize(2 * n).into_iter().map(|(p, _)| p).collect();
    let mut divisors: Vec<u64> = vec![1];
    for p in primes {
        let len = divisors.len();
        for i in 0..len {
            divisors.push(divisors[i] * p);
        }
    }
    divisors.sort_unstable();

    let mut out = Vec::new();
    let n0 = BigInt::from(n0);
    for m in 1..=m_max {
        let t = (BigInt::from(1) << m) + &n0;
        if t.is_negative() {
            continue;
        }
        for &u in &divisors {
            let (q, r) = num_integer::Integer::div_rem(&t, &BigInt::from(u));
            if r != BigInt::from(0) {
                continue;
            }
            let y = q.sqrt();
            if &y * &y == q {
                out.push(Pow2Square { m, u, y });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_triples(v: Vec<Pow2Square>) -> Vec<(u32, u64, u64)> {
        v.into_iter()
            .map(|s| (s.m, s.u, u64::try_from(s.y).unwrap()))
            .collect()
    }

    /// Brute-force oracle over plain integers (valid for m <= 62).
    fn oracle(n0: i64, n: u64, m_max: u32) -> Vec<(u32, u64, u64)> {
        let mut divisors = Vec::new();
        for u in 1..=(2 * n) {
            if 2 * n % u == 0 && crate::arith::factorize(u).iter().all(|&(_, e)| e == 1) {
                divisors.push(u);
            }
        }
        let mut out = Vec::new();
        for m in 1..=m_max {
            let t = (1i128 << m) + n0 as i128;
            if t < 0 {
                continue;
            }
            for &u in &divisors {
                if t % u as i128 != 0 {
                    continue;
                }
                let q = (t / u as i128) as u64;
                let y = q.isqrt();
                if y * y == q {
                    out.push((m, u, y));
                }
            }
        }
        out
    }

    #[test]
    fn worked_instances() {
        // 2^1 + 7 = 9 = 1 * 3^2; a mod-8 argument excludes m >= 2
        assert_eq!(as_triples(pow2_square_search(7, 1, 40).unwrap()), vec![(1, 1, 3)]);
        // y^2 + 1 = 2^m forces m = 1
        assert_eq!(as_triples(pow2_square_search(-1, 1, 40).unwrap()), vec![(1, 1, 1)]);
        // (y-1)(y+1) = 2^m forces y = 3
        assert_eq!(as_triples(pow2_square_search(1, 1, 40).unwrap()), vec![(3, 1, 3)]);
    }

    #[test]
    fn matches_brute_force_oracle() {
        for (n0, n) in [(7i64, 1u64), (-1, 1), (1, 1), (17, 3), (-9, 6), (23, 15)] {
            assert_eq!(
                as_triples(pow2_square_search(n0, n, 40).unwrap()),
                oracle(n0, n, 40),
                "n0 = {n0}, N = {n}"
            );
        }
    }

    #[test]
    fn every_triple_satisfies_the_equation() {
        for s in pow2_square_search(-7, 30, 120).unwrap() {
            let lhs = (BigInt::from(1) << s.m) + BigInt::from(-7);
            assert_eq!(BigInt::from(s.u) * &s.y * &s.y, lhs);
        }
    }

    #[test]
    fn rejects_zero_n0() {
        assert_eq!(pow2_square_search(0, 1, 10).unwrap_err(), FormError::ZeroN0);
    }
}
