//! Exact-integer oracles shared by the integration suites.
//!
//! Everything here works over Z with arbitrary precision and never touches
//! the mod-l series engine, so it can stand as an independent witness for
//! it: Delta's integer coefficients (tau), and the j-invariant's integer
//! coefficients via E4^3 / Delta computed with rational-free arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Truncated product of two integer series (index = exponent, offset 0).
fn mul_trunc(a: &[BigInt], b: &[BigInt], prec: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); prec];
    for (i, ai) in a.iter().enumerate().take(prec) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(prec - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// `prod_{n>=1} (1 - q^n)` over Z via the pentagonal number theorem.
fn pentagonal_z(prec: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); prec];
    for k in 0i64.. {
        let g1 = k * (3 * k - 1) / 2;
        if g1 >= prec as i64 {
            break;
        }
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        out[g1 as usize] += &sign;
        let g2 = k * (3 * k + 1) / 2;
        if k > 0 && g2 < prec as i64 {
            out[g2 as usize] += &sign;
        }
    }
    out
}

/// `prod (1 - q^n)^24` over Z, exponents `0..prec`.
fn eta24_z(prec: usize) -> Vec<BigInt> {
    let p = pentagonal_z(prec);
    let p2 = mul_trunc(&p, &p, prec);
    let p4 = mul_trunc(&p2, &p2, prec);
    let p8 = mul_trunc(&p4, &p4, prec);
    let p16 = mul_trunc(&p8, &p8, prec);
    mul_trunc(&p16, &p8, prec)
}

/// `tau(n)` for `1 <= n <= n_max`, from the integer expansion of
/// `Delta = q prod (1 - q^n)^24`.
pub fn tau_oracle(n_max: usize) -> Vec<BigInt> {
    let e = eta24_z(n_max);
    (1..=n_max).map(|n| e[n - 1].clone()).collect()
}

/// Integer coefficients `c(-1), c(0), ..., c(n_max)` of the j-invariant,
/// via `j = E4^3 / Delta` with `E4 = 1 + 240 sum sigma_3(n) q^n`, all over Z.
pub fn j_oracle(n_max: usize) -> Vec<BigInt> {
    let prec = n_max + 2;
    // E4
    let mut e4 = vec![BigInt::zero(); prec];
    e4[0] = BigInt::one();
    for n in 1..prec {
        let mut s3: u64 = 0;
        for d in 1..=n as u64 {
            if n as u64 % d == 0 {
                s3 += d * d * d;
            }
        }
        e4[n] = BigInt::from(240u32) * BigInt::from(s3);
    }
    let e4_2 = mul_trunc(&e4, &e4, prec);
    let e4_3 = mul_trunc(&e4_2, &e4, prec);
    // 1 / prod(1-q^n)^24: leading coefficient 1, so the inverse is integral
    let d = eta24_z(prec);
    assert!(d[0].is_one());
    let mut inv = vec![BigInt::zero(); prec];
    inv[0] = BigInt::one();
    for n in 1..prec {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            if !d[k].is_zero() {
                acc += &d[k] * &inv[n - k];
            }
        }
        inv[n] = -acc;
    }
    // j = q^{-1} * E4^3 * inv: c(n) = sum_{i+k=n+1} e4_3[i] inv[k]
    (0..=n_max + 1)
        .map(|e| {
            let mut c = BigInt::zero();
            for i in 0..=e {
                if !e4_3[i].is_zero() && !inv[e - i].is_zero() {
                    c += &e4_3[i] * &inv[e - i];
                }
            }
            c
        })
        .collect()
}

#[allow(dead_code)]
pub fn self_check() {
    // textbook values pin the oracles themselves
    let tau = tau_oracle(10);
    let expected: [i64; 10] = [
        1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
    ];
    for (n, &e) in expected.iter().enumerate() {
        assert_eq!(tau[n], BigInt::from(e), "tau({})", n + 1);
    }
    let j = j_oracle(2);
    assert_eq!(j[0], BigInt::one()); // c(-1)
    assert_eq!(j[1], BigInt::from(744u32)); // c(0)
    assert_eq!(j[2], BigInt::from(196_884u32)); // c(1)
    assert_eq!(j[3], BigInt::from(21_493_760u64)); // c(2)
}
