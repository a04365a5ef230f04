//! Fundamental-discriminant decomposition and class numbers of definite
//! binary quadratic forms.

use super::ArithError;

/// The decomposition `-4a = fund * sq^2` with `fund` a negative fundamental
/// discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscDecomp {
    pub a: u64,
    /// Negative fundamental discriminant.
    pub fund: i64,
    /// Positive integer with `fund * sq^2 = -4a`.
    pub sq: u64,
}

/// Trial-division factorization, `(prime, exponent)` pairs ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Is `d` a fundamental discriminant? (`d = 1 mod 4` squarefree, or
/// `d = 4k` with `k = 2, 3 mod 4` squarefree; `1` itself is excluded.)
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let square_free = |n: u64| factorize(n).iter().all(|&(_, e)| e == 1);
    match d.rem_euclid(4) {
        1 => square_free(d.unsigned_abs()),
        0 => {
            let k = d / 4;
            matches!(k.rem_euclid(4), 2 | 3) && square_free(k.unsigned_abs())
        }
        _ => false,
    }
}

/// The unique decomposition `-4a = fund * sq^2` with `fund` fundamental.
pub fn fundamental_decomposition(a: u64) -> DiscDecomp {
    assert!(a >= 1, "a must be positive");
    // squarefree kernel of 4a: 4a = s * m^2 with s squarefree
    let mut s: u64 = 1;
    let mut m: u64 = 1;
    for (p, e) in factorize(4 * a) {
        if e % 2 == 1 {
            s *= p;
        }
        m *= p.pow(e / 2);
    }
    // -4a = (-s) * m^2; fold a factor 4 into the discriminant unless
    // -s is already 1 mod 4.
    if (-(s as i64)).rem_euclid(4) == 1 {
        DiscDecomp { a, fund: -(s as i64), sq: m }
    } else {
        debug_assert!(m % 2 == 0);
        DiscDecomp { a, fund: -4 * s as i64, sq: m / 2 }
    }
}

/// Class number `h(D)` for a negative fundamental discriminant, by
/// exhaustive enumeration of reduced primitive forms `(a, b, c)`:
/// `b^2 - 4ac = D`, `-a < b <= a <= c`, and `b >= 0` when `a = c`.
/// Exact and O(|D|); no analytic input.
pub fn class_number(d: i64) -> Result<u64, ArithError> {
    if d >= 0 || !is_fundamental(d) {
        return Err(ArithError::NotFundamental(d));
    }
    let abs_d = d.unsigned_abs();
    let mut h = 0u64;
    let a_max = (abs_d / 3).isqrt();
    for a in 1..=a_max {
        let a_i = a as i64;
        let mut b = -(a_i) + 1;
        // match parity: b = d (mod 2)
        if (b - d).rem_euclid(2) != 0 {
            b += 1;
        }
        while b <= a_i {
            let num = b * b - d; // = b^2 + |d| > 0
            let den = 4 * a_i;
            if num % den == 0 {
                let c = num / den;
                if c >= a_i && !(a_i == c && b < 0) {
                    let g = gcd(gcd(a, b.unsigned_abs()), c as u64);
                    if g == 1 {
                        h += 1;
                    }
                }
            }
            b += 2;
        }
    }
    Ok(h)
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
