//! Turning weakly holomorphic forms into holomorphic cusp forms.
//!
//! The workhorse is multiplication by `eta1^{l^m}`: the Frobenius power is
//! supported on `l^m (6n+1)^2`, so once `l^m` beats the pole order the
//! product has strictly positive vanishing order. Mod 2 a half-integral
//! weight can first be traded for an integral one by multiplying with
//! `theta_0`, which is 1 mod 2.

use super::forms::eta1;
use super::{FormError, FormMeta, TaggedForm};
use num_integer::lcm;

/// `h = f * eta1^{l^m}`: weight gains `l^m / 2` (twice-weight gains
/// `l^m`), the level absorbs 576, and the result is cuspidal-shaped
/// (offset >= 1 after normalize) provided `l^m` exceeds the pole order of
/// `f`, which is enforced.
pub fn holomorphize(f: &TaggedForm, m: u32) -> Result<TaggedForm, FormError> {
    let l = f.meta.modulus;
    let lm: u64 = (l as u64)
        .checked_pow(m)
        .ok_or(FormError::PoleOrder { lm: u64::MAX, pole: 0 })?;
    let nf = f.series.normalize();
    if nf.is_empty() {
        return Err(FormError::Series(crate::fpseries::SeriesError::EmptySeries));
    }
    let pole = (-nf.offset()).max(0) as u64;
    if lm <= pole {
        return Err(FormError::PoleOrder { lm, pole });
    }
    // enough eta precision that the product keeps f's whole relative window
    let eta_prec = (f.series.len() as u64).div_ceil(lm) as usize + 2;
    let eta = eta1(l, eta_prec.max(2))?;
    let dilated = eta.series.frobenius_pow(m)?;
    let series = f.series.mul(&dilated)?;
    let meta = FormMeta::new(
        f.meta.twice_weight + lm as i64,
        lcm(f.meta.level, 576),
        l,
    );
    Ok(TaggedForm::new(series, meta))
}

/// `f * theta_0` for l = 2: the coefficients are unchanged (theta_0 = 1
/// mod 2), only the weight bookkeeping moves — twice-weight up by one,
/// level absorbing 4. This is the trade of integral for half-integral
/// weight available only in characteristic 2.
pub fn multiply_theta0(f: &TaggedForm) -> Result<TaggedForm, FormError> {
    if f.meta.modulus != 2 {
        return Err(FormError::NotModTwo(f.meta.modulus));
    }
    let meta = FormMeta::new(f.meta.twice_weight + 1, lcm(f.meta.level, 4), 2);
    Ok(TaggedForm::new(f.series.clone(), meta))
}
