//! The named expansions the experiments run on.
//!
//! Exponent conventions: eta1 is eta(24z), supported on squares (6n+1)^2;
//! the partition generating function is its inverse, with p(n) sitting at
//! exponent 24n - 1; Delta is the weight-12 level-1 cusp form; `j_mod2`
//! is the j-invariant reduced mod 2, where it coincides with 1/Delta.

use super::{FormError, FormMeta, TaggedForm};
use crate::fpseries::QSeries;

/// CLI-facing names accepted by [`named_form`].
pub const FORM_NAMES: [&str; 5] = ["eta1", "partition", "theta0", "delta", "j2"];

/// eta(24z) as a theta series: coefficient (-1)^n at exponent (6n+1)^2 for
/// every integer n with (6n+1)^2 < prec. Weight 1/2, level 576. Window
/// `[1, prec)`.
pub fn eta1(l: u32, prec: usize) -> Result<TaggedForm, FormError> {
    assert!(prec >= 2, "eta1 needs prec >= 2");
    let mut s = QSeries::zeros(l, 1, prec - 1)?;
    let minus_one = l - 1;
    for t in 0i64.. {
        // n = t contributes (6t+1)^2 with sign (-1)^t,
        // n = -(t+1) contributes (6t+5)^2 with sign (-1)^(t+1)
        let e1 = (6 * t + 1) * (6 * t + 1);
        if e1 >= prec as i64 {
            break;
        }
        let sign1 = if t % 2 == 0 { 1 } else { minus_one };
        s.set_rel((e1 - 1) as usize, sign1 % l);
        let e2 = (6 * t + 5) * (6 * t + 5);
        if e2 < prec as i64 {
            let sign2 = if t % 2 == 0 { minus_one } else { 1 };
            s.set_rel((e2 - 1) as usize, sign2 % l);
        }
    }
    Ok(TaggedForm::new(s, FormMeta::new(1, 576, l)))
}

/// The same expansion by its product form `q prod_{n>=1} (1 - q^{24n})`,
/// built by sequential sparse multiplication. Must agree with [`eta1`]
/// exactly; the pair is a standing cross-check of the series engine.
pub fn eta1_product(l: u32, prec: usize) -> Result<TaggedForm, FormError> {
    assert!(prec >= 2, "eta1_product needs prec >= 2");
    let mut s = QSeries::zeros(l, 1, prec - 1)?;
    s.set_rel(0, 1); // q
    let len = prec - 1;
    let mut m = 24usize;
    while m < len {
        s.mul_one_minus_qm(m);
        m += 24;
    }
    Ok(TaggedForm::new(s, FormMeta::new(1, 576, l)))
}

/// `p(n) mod l` for `0 <= n <= n_max` by the Euler pentagonal recurrence
/// `p(n) = sum_{k>=1} (-1)^(k-1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]`.
pub fn partition_mod(l: u32, n_max: usize) -> Vec<u32> {
    let l64 = l as u64;
    let mut p = vec![0u32; n_max + 1];
    p[0] = 1 % l;
    for n in 1..=n_max {
        let mut plus: u64 = 0;
        let mut minus: u64 = 0;
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
            *acc += p[n - g1] as u64;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                *acc += p[n - g2] as u64;
            }
            k += 1;
        }
        p[n] = ((plus % l64 + l64 - minus % l64) % l64) as u32;
    }
    p
}

/// The partition generating function `sum_n p(n) q^{24n-1}` mod l, window
/// `[-1, prec)`. Weight -1/2, level 576. Coefficients come from the
/// pentagonal recurrence; see [`partition_series_via_inv`] for the
/// independent route through `1/eta1`.
pub fn partition_series(l: u32, prec: usize) -> Result<TaggedForm, FormError> {
    assert!(prec >= 1);
    let len = prec + 1; // window [-1, prec)
    let mut s = QSeries::zeros(l, -1, len)?;
    let n_max = (prec + 1) / 24; // largest n with 24n - 1 < prec
    let p = partition_mod(l, n_max);
    for (n, &c) in p.iter().enumerate() {
        let e = 24 * n as i64 - 1;
        if e < prec as i64 && c != 0 {
            s.set_rel((e + 1) as usize, c);
        }
    }
    Ok(TaggedForm::new(s, FormMeta::new(-1, 576, l)))
}

/// The partition series computed as `inv(eta1)` instead of by recurrence.
pub fn partition_series_via_inv(l: u32, prec: usize) -> Result<TaggedForm, FormError> {
    assert!(prec >= 1);
    let eta = eta1(l, prec + 2)?;
    Ok(TaggedForm::new(eta.series.inv()?, FormMeta::new(-1, 576, l)))
}

/// `theta_0 = 1 + 2 sum_{n>=1} q^{n^2}` mod l, weight 1/2, level 4.
/// Window `[0, prec)`.
pub fn theta0(l: u32, prec: usize) -> Result<TaggedForm, FormError> {
    assert!(prec >= 1);
    let mut s = QSeries::zeros(l, 0, prec)?;
    s.set_rel(0, 1 % l);
    let two = 2 % l;
    if two != 0 {
        let mut n = 1usize;
        while n * n < prec {
            s.set_rel(n * n, two);
            n += 1;
        }
    }
    Ok(TaggedForm::new(s, FormMeta::new(1, 4, l)))
}

/// `prod_{n>=1} (1 - q^n)` on `[0, prec)` via Euler's pentagonal number
/// theorem (sparse exact support, no sequential product needed).
fn pentagonal_series(l: u32, prec: usize) -> Result<QSeries, FormError> {
    let mut s = QSeries::zeros(l, 0, prec)?;
    let minus_one = l - 1;
    for k in 0i64.. {
        let g1 = k * (3 * k - 1) / 2;
        if g1 >= prec as i64 {
            break;
        }
        let sign = if k % 2 == 0 { 1 % l } else { minus_one };
        s.set_rel(g1 as usize, sign);
        let g2 = k * (3 * k + 1) / 2;
        if k > 0 && g2 < prec as i64 {
            s.set_rel(g2 as usize, sign);
        }
    }
    Ok(s)
}

/// `Delta = q prod (1 - q^n)^24` mod l: the 24th power of the sparse
/// pentagonal expansion, shifted by one. Weight 12, level 1. Window
/// `[1, prec)` (possibly longer when the digit decomposition grants it).
///
/// The exponent is split along base-l digits, `24 = sum c_i l^i`, so each
/// factor is a Frobenius dilation of the pentagonal series raised to a
/// power below l. Mod 2 this leaves only the sparse product
/// `P(q^8) P(q^16)`, which is what makes million-term Delta windows cheap.
pub fn delta(l: u32, prec: usize) -> Result<TaggedForm, FormError> {
    assert!(prec >= 2, "delta needs prec >= 2");
    let target = prec - 1; // window end before the shift by q
    let mut acc: Option<QSeries> = None;
    let mut exp = 24u64;
    let mut i = 0u32;
    while exp > 0 {
        let c = exp % l as u64;
        exp /= l as u64;
        if c > 0 {
            let li = (l as u64).pow(i);
            let base_prec = (target as u64).div_ceil(li) as usize + 1;
            let factor = pentagonal_series(l, base_prec)?
                .frobenius_pow(i)?
                .pow(c)?;
            acc = Some(match acc {
                None => factor,
                Some(a) => a.mul(&factor)?,
            });
        }
        i += 1;
    }
    let p24 = acc.expect("24 > 0 always leaves a factor");
    Ok(TaggedForm::new(p24.shifted(1), FormMeta::new(24, 1, l)))
}

/// `sum c(n) q^n` mod 2 with offset -1: the j-invariant's coefficients
/// reduced mod 2, computed as `1/Delta` (E4 = 1 mod 2, so j = E4^3/Delta
/// collapses). The identity is gated by an exact-integer oracle in the
/// acceptance suite before being relied on at large precision. Window
/// `[-1, prec)`.
pub fn j_mod2(prec: usize) -> Result<TaggedForm, FormError> {
    assert!(prec >= 1);
    let d = delta(2, prec + 2)?;
    Ok(TaggedForm::new(d.series.inv()?, FormMeta::new(0, 1, 2)))
}

/// Looks up a CLI-facing form name. `prec` is the window end; `j2`
/// requires modulus 2.
pub fn named_form(name: &str, l: u32, prec: usize) -> Result<TaggedForm, FormError> {
    match name {
        "eta1" => eta1(l, prec),
        "partition" => partition_series(l, prec),
        "theta0" => theta0(l, prec),
        "delta" => delta(l, prec),
        "j2" => {
            if l != 2 {
                return Err(FormError::NotModTwo(l));
            }
            j_mod2(prec)
        }
        other => Err(FormError::UnknownForm(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta1_first_terms() {
        // l = 5, prec 60: +1 at 1, -1 at 25, -1 at 49
        let f = eta1(5, 60).unwrap();
        assert_eq!(f.series.support(), vec![1, 25, 49]);
        assert_eq!(f.series.coeff(1), Some(1));
        assert_eq!(f.series.coeff(25), Some(4));
        assert_eq!(f.series.coeff(49), Some(4));
        // mod 2 the signs vanish
        let f2 = eta1(2, 60).unwrap();
        assert_eq!(f2.series.support(), vec![1, 25, 49]);
        assert_eq!((f2.meta.twice_weight, f2.meta.level), (1, 576));
    }

    #[test]
    fn eta1_equals_product_form() {
        for l in [2u32, 3, 5] {
            let a = eta1(l, 3000).unwrap();
            let b = eta1_product(l, 3000).unwrap();
            assert_eq!(a.series, b.series, "l = {l}");
        }
    }

    #[test]
    fn partition_values_match_exhaustive_enumeration() {
        // oracle: count partitions of n <= 40 by bounded-part recursion,
        // independent of the pentagonal recurrence
        fn count(n: usize, max_part: usize) -> u64 {
            if n == 0 {
                return 1;
            }
            (1..=max_part.min(n)).map(|k| count(n - k, k)).sum()
        }
        let oracle: Vec<u64> = (0..=40).map(|n| count(n, n.max(1))).collect();
        assert_eq!(&oracle[..11], &[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(oracle[40], 37_338);
        for l in [2u32, 5, 13] {
            let p = partition_mod(l, 40);
            for n in 0..=40 {
                assert_eq!(p[n] as u64, oracle[n] % l as u64, "l={l} n={n}");
            }
        }
        // parity of p(0..10): 1,1,0,1,1,1,1,1,0,0,0
        assert_eq!(partition_mod(2, 10), vec![1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn partition_series_coefficients_sit_at_24n_minus_1() {
        let f = partition_series(7, 200).unwrap();
        assert_eq!(f.series.offset(), -1);
        assert_eq!(f.series.coeff(-1), Some(1)); // p(0)
        assert_eq!(f.series.coeff(23), Some(1)); // p(1)
        assert_eq!(f.series.coeff(47), Some(2)); // p(2)
        assert_eq!(f.series.coeff(0), Some(0));
    }

    #[test]
    fn eta1_times_partition_is_one() {
        for l in [2u32, 3, 5, 7, 11, 13] {
            let eta = eta1(l, 500).unwrap();
            let p = partition_series(l, 500).unwrap();
            let prod = eta.series.mul(&p.series).unwrap();
            assert_eq!(prod.offset(), 0);
            assert_eq!(prod.coeff(0), Some(1));
            assert_eq!(prod.nnz(), 1, "l = {l}");
        }
    }

    #[test]
    fn partition_two_paths_agree() {
        for (l, prec) in [(2u32, 400usize), (5, 10_000), (7, 400)] {
            let a = partition_series(l, prec).unwrap();
            let b = partition_series_via_inv(l, prec).unwrap();
            for e in -1..prec as i64 {
                assert_eq!(a.series.coeff(e), b.series.coeff(e), "l={l} e={e}");
            }
        }
    }

    #[test]
    fn ramanujan_mod_5_spot() {
        // coefficient at 24(5n+4)-1 vanishes mod 5
        let f = partition_series(5, 5000).unwrap();
        for n in 0.. {
            let e = 24 * (5 * n + 4) - 1;
            if e >= 5000 {
                break;
            }
            assert_eq!(f.series.coeff(e), Some(0), "n = {n}");
        }
    }

    #[test]
    fn theta0_shapes() {
        // mod 2 the even coefficients vanish: constant 1
        let t = theta0(2, 60).unwrap();
        assert_eq!(t.series.support(), vec![0]);
        // mod 3: 1 + 2q + 2q^4 + 2q^9 + 2q^16 for prec 20
        let t = theta0(3, 20).unwrap();
        assert_eq!(t.series.support(), vec![0, 1, 4, 9, 16]);
        assert_eq!(t.series.coeff(0), Some(1));
        assert_eq!(t.series.coeff(4), Some(2));
        // non-square exponents are zero mod 5
        let t = theta0(5, 50).unwrap();
        for e in [2i64, 3, 5, 6, 7, 8, 10, 48] {
            assert_eq!(t.series.coeff(e), Some(0));
        }
        assert_eq!((t.meta.twice_weight, t.meta.level), (1, 4));
    }

    #[test]
    fn delta_leading_terms() {
        // tau(1) = 1, tau(2) = -24
        for l in [3u32, 5, 7] {
            let d = delta(l, 10).unwrap();
            assert_eq!(d.series.coeff(1), Some(1), "l = {l}");
            assert_eq!(d.series.coeff(2), Some((l - 24 % l) % l), "l = {l}");
        }
        // tau(5) = 4830 = 0 mod 5
        let d = delta(5, 10).unwrap();
        assert_eq!(d.series.coeff(5), Some(0));
    }

    #[test]
    fn delta_mod_2_is_supported_on_odd_squares() {
        let d = delta(2, 2000).unwrap();
        assert!(d.series.end() >= 2000);
        let end = d.series.end();
        let expected: Vec<i64> = (0..)
            .map(|k| (2 * k + 1) * (2 * k + 1))
            .take_while(|&e| e < end)
            .collect();
        assert_eq!(d.series.support(), expected);
    }

    #[test]
    fn j_mod2_leading_terms() {
        let j = j_mod2(40).unwrap();
        assert_eq!(j.series.coeff(-1), Some(1)); // c(-1) = 1
        assert_eq!(j.series.coeff(0), Some(0)); // c(0) = 744, even
        assert!(j.series.end() >= 40);
    }

    #[test]
    fn named_form_dispatch() {
        assert!(named_form("eta1", 3, 10).is_ok());
        assert!(named_form("j2", 3, 10).is_err());
        assert!(named_form("j2", 2, 10).is_ok());
        assert!(matches!(
            named_form("nope", 2, 10),
            Err(FormError::UnknownForm(_))
        ));
    }
}
