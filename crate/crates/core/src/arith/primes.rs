//! Primality testing and segmented prime sieving.

/// Deterministic Miller-Rabin for `u64`.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// be exact for all n < 3.3 * 10^24, which covers the full u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    base %= m;
    let mut acc = 1u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const SEGMENT_SPAN: u64 = 1 << 21;

/// Calls `visit` on every prime `<= y`, ascending. Segmented sieve of
/// Eratosthenes over odd numbers; memory stays bounded by the segment size
/// regardless of `y`.
pub fn for_each_prime<F: FnMut(u64)>(y: u64, mut visit: F) {
    if y >= 2 {
        visit(2);
    }
    if y < 3 {
        return;
    }
    // base odd primes up to sqrt(y), by a plain odd sieve
    let root = y.isqrt();
    let base_len = (root.saturating_sub(1) / 2) as usize; // odd numbers 3,5,..,<=root
    let mut base_composite = vec![false; base_len];
    let mut base_primes: Vec<u64> = Vec::new();
    for i in 0..base_len {
        if !base_composite[i] {
            let p = 2 * i as u64 + 3;
            base_primes.push(p);
            let mut j = (p * p - 3) / 2;
            while (j as usize) < base_len {
                base_composite[j as usize] = true;
                j += p;
            }
        }
    }
    // sweep odd numbers in segments
    let mut low: u64 = 3;
    let mut segment = vec![false; (SEGMENT_SPAN / 2) as usize];
    while low <= y {
        let high = (low + SEGMENT_SPAN).min(y + 1); // numbers in [low, high)
        let slots = ((high - low) / 2 + (high - low) % 2) as usize;
        segment[..slots].fill(false);
        for &p in &base_primes {
            if p * p >= high {
                break;
            }
            let mut start = p * p;
            if start < low {
                start = low.div_ceil(p) * p;
                if start % 2 == 0 {
                    start += p;
                }
            }
            let mut j = start;
            while j < high {
                segment[((j - low) / 2) as usize] = true;
                j += 2 * p;
            }
        }
        for (i, &c) in segment[..slots].iter().enumerate() {
            if !c {
                visit(low + 2 * i as u64);
            }
        }
        low += SEGMENT_SPAN;
    }
}

/// All primes `<= y`, ascending.
pub fn primes_up_to(y: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_prime(y, |p| out.push(p));
    out
}

/// `pi(y)`, streaming (no prime table is materialized).
pub fn prime_count(y: u64) -> u64 {
    let mut n = 0;
    for_each_prime(y, |_| n += 1);
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(2), vec![2]);
        assert_eq!(primes_up_to(3), vec![2, 3]);
    }

    #[test]
    fn counts_match_naive_sieve() {
        // independent oracle: naive boolean sieve
        let y = 20_000usize;
        let mut comp = vec![false; y + 1];
        let mut naive = Vec::new();
        for n in 2..=y {
            if !comp[n] {
                naive.push(n as u64);
                let mut m = n * n;
                while m <= y {
                    comp[m] = true;
                    m += n;
                }
            }
        }
        assert_eq!(primes_up_to(y as u64), naive);
    }

    #[test]
    fn pi_of_million() {
        assert_eq!(prime_count(1_000_000), 78_498);
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0u64..2_000 {
            let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), naive, "n = {n}");
        }
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
    }

    #[test]
    fn segment_boundaries() {
        // every number near the first segment edge classified correctly
        let y = SEGMENT_SPAN + 1000;
        let primes = primes_up_to(y);
        let near: std::collections::HashSet<u64> = primes
            .iter()
            .copied()
            .filter(|&p| p + 2000 > SEGMENT_SPAN)
            .collect();
        for n in (SEGMENT_SPAN - 2000)..=y {
            assert_eq!(near.contains(&n), is_prime(n), "n = {n}");
        }
    }
}
