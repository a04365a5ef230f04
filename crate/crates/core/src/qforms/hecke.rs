//! Hecke operators on q-expansions and the coefficient scans built on them.

use super::{FormError, TaggedForm};
use crate::arith::is_prime;
use crate::fpseries::{mod_inverse, mod_pow, QSeries};

/// `T_p` on a holomorphic integral-weight expansion:
/// the output coefficient at `m` is `a_{mp} + p^{k-1} a_{m/p}` mod l, with
/// `a_{m/p} = 0` when `p` does not divide `m`. The diamond operator is the
/// identity here (trivial character action in every case this crate
/// exercises). Output window `[0, floor((end-1)/p) + 1)`.
///
/// Holomorphicity makes the coefficients below the stored offset true
/// zeros (the offset records vanishing order at the cusp), so they are
/// read as such.
pub fn hecke_tp(h: &TaggedForm, p: u64) -> Result<TaggedForm, FormError> {
    if !is_prime(p) {
        return Err(FormError::NotPrime(p));
    }
    if h.meta.level % p == 0 {
        return Err(FormError::PrimeDividesLevel { p, level: h.meta.level });
    }
    if h.meta.twice_weight % 2 != 0 {
        return Err(FormError::HalfIntegralWeight(h.meta.twice_weight));
    }
    if h.meta.twice_weight < 0 {
        return Err(FormError::NegativeWeight(h.meta.twice_weight));
    }
    let v = h.series.offset();
    if v < 0 {
        return Err(FormError::NotHolomorphic(v));
    }
    if h.series.is_empty() {
        return Err(FormError::Series(crate::fpseries::SeriesError::EmptySeries));
    }
    let l = h.meta.modulus;
    let k = h.meta.twice_weight / 2;
    // p^(k-1) mod l; k = 0 needs the inverse of p
    let p_red = (p % l as u64) as u32;
    let pk1 = if k >= 1 {
        mod_pow(p_red as u64, (k - 1) as u64, l as u64) as u32
    } else if p_red == 0 {
        return Err(FormError::WeightZeroAtP);
    } else {
        mod_inverse(p_red, l)
    };

    let end = h.series.end();
    let out_end = (end - 1) / p as i64 + 1;
    let mut out = QSeries::zeros(l, 0, out_end as usize)?;
    let l64 = l as u64;
    for m in 0..out_end {
        let mut c = h.series.coeff_or_zero(m * p as i64) as u64;
        if m % p as i64 == 0 {
            c += pk1 as u64 * h.series.coeff_or_zero(m / p as i64) as u64;
        }
        let c = (c % l64) as u32;
        if c != 0 {
            out.set_rel(m as usize, c);
        }
    }
    Ok(TaggedForm::new(out, h.meta))
}

/// Is the expansion constant on its window (no nonzero coefficient at any
/// exponent >= 1)?
fn is_constant_on_window(s: &QSeries) -> bool {
    s.support().iter().all(|&e| e <= 0)
}

/// Checks the implication "`T_p h` constant mod l implies `a_n(h) = 0`
/// whenever `ord_p(n)` is odd", scanning `1 <= n <= x`.
///
/// Returns true vacuously when `T_p h` is not constant on its window;
/// otherwise scans the support of `h` up to `x` and reports whether every
/// exponent with odd p-adic valuation carries a zero coefficient.
pub fn odd_ord_vanishing_check(h: &TaggedForm, p: u64, x: i64) -> Result<bool, FormError> {
    if x >= h.series.end() {
        return Err(FormError::ScanPastWindow { need: x, end: h.series.end() });
    }
    let tp = hecke_tp(h, p)?;
    if !is_constant_on_window(&tp.series) {
        return Ok(true);
    }
    let p = p as i64;
    for e in h.series.support() {
        if e > x {
            break;
        }
        if e >= 1 {
            let mut n = e;
            let mut ord = 0u32;
            while n % p == 0 {
                n /= p;
                ord += 1;
            }
            if ord % 2 == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For each `u <= u_max`, the primes `p <= p_max` with a nonzero
/// coefficient at exponent `u p` — the finite stand-in for the
/// positive-density sets the theory supplies.
pub fn scan_up_nonzero(
    h: &TaggedForm,
    u_max: u64,
    p_max: u64,
) -> Result<Vec<(u64, Vec<u64>)>, FormError> {
    let need = (u_max * p_max) as i64;
    if need >= h.series.end() {
        return Err(FormError::ScanPastWindow { need, end: h.series.end() });
    }
    let primes = crate::arith::primes_up_to(p_max);
    let mut out = Vec::with_capacity(u_max as usize);
    for u in 1..=u_max {
        let hits: Vec<u64> = primes
            .iter()
            .copied()
            .filter(|&p| h.series.coeff_or_zero((u * p) as i64) != 0)
            .collect();
        out.push((u, hits));
    }
    Ok(out)
}
