//! Dirichlet L-values of real characters and truncated Euler products.

use super::disc::factorize;
use super::{class_number, for_each_prime, is_fundamental, kronecker, ArithError};
use serde::Serialize;
use std::f64::consts::PI;

/// `L(1, chi_D)` for a negative fundamental discriminant, by the exact
/// finite formula
///
/// `L(1, chi_D) = -pi |D|^{-3/2} * sum_{r=1}^{|D|-1} chi_D(r) r`.
///
/// The character sum is accumulated exactly in integers; only the final
/// scaling is floating point.
pub fn l_one(d: i64) -> Result<f64, ArithError> {
    if d >= 0 || !is_fundamental(d) {
        return Err(ArithError::NotFundamental(d));
    }
    let abs_d = d.unsigned_abs();
    let mut sum: i128 = 0;
    for r in 1..abs_d {
        sum += kronecker(d, r as i64) as i128 * r as i128;
    }
    let scale = -PI / (abs_d as f64).powf(1.5);
    Ok(scale * sum as f64)
}

/// Number of units of the imaginary quadratic order of discriminant `d`:
/// 6 for -3, 4 for -4, 2 otherwise.
pub fn unit_count(d: i64) -> u32 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

/// `2 pi h(D) / (w(D) sqrt(|D|))` — the class number formula route to
/// `L(1, chi_D)`, used as an independent cross-check of [`l_one`].
pub fn class_number_formula_l(d: i64) -> Result<f64, ArithError> {
    let h = class_number(d)? as f64;
    Ok(2.0 * PI * h / (unit_count(d) as f64 * (d.unsigned_abs() as f64).sqrt()))
}

/// Splits a negative discriminant as `d = fund * f^2` with `fund`
/// fundamental.
pub fn split_discriminant(d: i64) -> Result<(i64, u64), ArithError> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(ArithError::NotDiscriminant(d));
    }
    let mut s: u64 = 1;
    let mut m: u64 = 1;
    for (p, e) in factorize(d.unsigned_abs()) {
        if e % 2 == 1 {
            s *= p;
        }
        m *= p.pow(e / 2);
    }
    if (-(s as i64)).rem_euclid(4) == 1 {
        Ok((-(s as i64), m))
    } else {
        debug_assert!(m % 2 == 0, "d = 0,1 mod 4 forces an even square part here");
        Ok((-4 * s as i64, m / 2))
    }
}

/// `L(1, chi_d)` for an arbitrary negative discriminant `d` (the Kronecker
/// symbol `(d|.)`, possibly imprimitive): the primitive value at the
/// fundamental part, corrected by the Euler factors that the imprimitive
/// character kills. Exact up to the floating-point scaling in [`l_one`].
pub fn l_one_imprimitive(d: i64) -> Result<f64, ArithError> {
    let (fund, _) = split_discriminant(d)?;
    let mut value = l_one(fund)?;
    for (p, _) in factorize(d.unsigned_abs()) {
        if fund % p as i64 != 0 {
            value *= 1.0 - kronecker(fund, p as i64) as f64 / p as f64;
        }
    }
    Ok(value)
}

/// Truncated Dirichlet series `sum_{n<=terms} chi_D(n) n^{-s}` for `s > 1`,
/// with compensated (Kahan) summation. The omitted tail is of magnitude
/// about `terms^{-(s-1)}` in the worst case and far smaller for
/// oscillating characters; it is reported nowhere and certified nowhere.
pub fn l_value(d: i64, s: f64, terms: u64) -> f64 {
    assert!(s > 1.0, "s must exceed 1");
    assert!(terms >= 1);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in 1..=terms {
        let chi = kronecker(d, n as i64);
        if chi == 0 {
            continue;
        }
        let term = chi as f64 * (n as f64).powf(-s);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// `prod_{p <= y} (1 - chi_D(p)/p)`; the empty product is 1.
pub fn euler_product(d: i64, y: f64) -> f64 {
    let mut prod = 1.0f64;
    if y < 2.0 {
        return prod;
    }
    for_each_prime(y as u64, |p| {
        let chi = kronecker(d, p as i64);
        if chi != 0 {
            prod *= 1.0 - chi as f64 / p as f64;
        }
    });
    prod
}

/// Proxy classification of a fundamental discriminant by the size of
/// `L(1, chi_D)`.
///
/// The analytic notion this stands in for is a zero-free region for
/// `L(s, chi_D)`, which is out of reach of direct computation here; an
/// exceptionally small `L(1)` value is the operative consequence, so the
/// proxy flags `l_one(D) < c0 / log |D|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscClass {
    GoodProxy,
    BadProxy,
}

impl DiscClass {
    pub fn is_good(self) -> bool {
        matches!(self, DiscClass::GoodProxy)
    }
}

pub fn classify_discriminant(d: i64, c0: f64) -> Result<DiscClass, ArithError> {
    let l = l_one(d)?;
    let threshold = c0 / (d.unsigned_abs() as f64).ln();
    Ok(if l < threshold {
        DiscClass::BadProxy
    } else {
        DiscClass::GoodProxy
    })
}

/// Three routes to the same truncated Euler product over `p <= X^{1/4}`
/// for the character of discriminant `-4a`, and their ratios:
///
/// - `lhs`: the product itself;
/// - `m1`: `1 / L(1 + 1/log X, chi_fund)` (Dirichlet series truncated at
///   `terms`);
/// - `m2`: the split product over the fundamental character — primes up to
///   `small_cutoff` away from `sq`, and primes in `[small_cutoff, X^{1/4}]`
///   dividing `sq` with inverted factors.
///
/// No constant is asserted; the report carries raw ratios.
#[derive(Debug, Clone, Serialize)]
pub struct AgoodReport {
    pub a: u64,
    pub fund: i64,
    pub sq: u64,
    pub x: f64,
    pub small_cutoff: f64,
    pub lhs: f64,
    pub m1: f64,
    pub m2: f64,
    pub ratio_m1: f64,
    pub ratio_m2: f64,
}

pub fn agood_compare(a: u64, x: f64, small_cutoff: f64, terms: u64) -> Result<AgoodReport, ArithError> {
    if a < 1 || (a as f64) > x {
        return Err(ArithError::InvalidRange(format!("need 1 <= a <= X, got a={a}, X={x}")));
    }
    let dec = super::fundamental_decomposition(a);
    let y = x.powf(0.25);
    let lhs = euler_product(-4 * a as i64, y);

    let s = 1.0 + 1.0 / x.ln();
    let m1 = 1.0 / l_value(dec.fund, s, terms);

    let mut m2 = 1.0f64;
    for_each_prime(y as u64, |p| {
        let chi = kronecker(dec.fund, p as i64);
        if chi == 0 {
            return;
        }
        let factor = 1.0 - chi as f64 / p as f64;
        let divides_sq = dec.sq % p == 0;
        if (p as f64) <= small_cutoff && !divides_sq {
            m2 *= factor;
        } else if (p as f64) >= small_cutoff && divides_sq {
            m2 /= factor;
        }
    });

    Ok(AgoodReport {
        a,
        fund: dec.fund,
        sq: dec.sq,
        x,
        small_cutoff,
        lhs,
        m1,
        m2,
        ratio_m1: lhs / m1,
        ratio_m2: lhs / m2,
    })
}
