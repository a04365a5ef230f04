//! Truncated Laurent q-series with coefficients in F_l.
//!
//! A [`QSeries`] stores the coefficients of `q^v, q^{v+1}, ...` on an
//! explicit precision window `[v, v + len)`; `v` may be negative (a pole at
//! the cusp). Arithmetic follows conservative truncation rules: an operation
//! never pretends to know a coefficient outside the window the inputs
//! justify. Storage is one bit per coefficient for l = 2 and one `u32`
//! residue per coefficient for odd l.

mod bits;
mod io;
mod ops;

pub use io::SeriesJson;
pub(crate) use bits::BitBuf;
pub(crate) use ops::{mod_inverse, mod_pow};
use thiserror::Error;

/// Hard upper bound on stored window length, shared by all constructors.
/// Policy caps (per-modulus memory budgets) live in the CLI layer.
pub const MAX_SERIES_LEN: usize = 1 << 31;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("modulus {0} is not prime (2 <= l < 2^31 required)")]
    BadModulus(u32),
    #[error("empty series rejected by arithmetic")]
    EmptySeries,
    #[error("result precision window is empty")]
    EmptyWindow,
    #[error("series is zero on its whole window; not invertible")]
    NotInvertible,
    #[error("X = {x} is outside the precision window ending at {end}")]
    PrecisionExceeded { x: i64, end: i64 },
    #[error("requested window length {0} exceeds the supported maximum {max}", max = MAX_SERIES_LEN)]
    LengthLimit(u128),
    #[error("malformed serialized series: {0}")]
    Format(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum CoeffStore {
    /// l = 2: packed bits.
    Bits(BitBuf),
    /// l > 2: residues in `[0, l)`.
    Words(Vec<u32>),
}

/// A truncated Laurent series over F_l with precision window `[v, v + len)`.
///
/// Values are immutable after construction; every operation returns a new
/// series. A zero-length series denotes the zero series at unknown precision
/// and is rejected by arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    modulus: u32,
    offset: i64,
    coeffs: CoeffStore,
}

fn check_modulus(modulus: u32) -> Result<(), SeriesError> {
    if modulus < 2 || modulus > i32::MAX as u32 || !crate::arith::is_prime(modulus as u64) {
        return Err(SeriesError::BadModulus(modulus));
    }
    Ok(())
}

fn check_len(len: u128) -> Result<usize, SeriesError> {
    if len > MAX_SERIES_LEN as u128 {
        return Err(SeriesError::LengthLimit(len));
    }
    Ok(len as usize)
}

impl QSeries {
    /// All-zero series on the window `[offset, offset + len)`.
    pub fn zeros(modulus: u32, offset: i64, len: usize) -> Result<QSeries, SeriesError> {
        check_modulus(modulus)?;
        check_len(len as u128)?;
        let coeffs = if modulus == 2 {
            CoeffStore::Bits(BitBuf::zeros(len))
        } else {
            CoeffStore::Words(vec![0; len])
        };
        Ok(QSeries { modulus, offset, coeffs })
    }

    /// Series with the given coefficients for `q^offset, q^{offset+1}, ...`,
    /// reduced mod `modulus`.
    pub fn from_coeffs(modulus: u32, offset: i64, coeffs: &[u32]) -> Result<QSeries, SeriesError> {
        let mut s = QSeries::zeros(modulus, offset, coeffs.len())?;
        for (i, &c) in coeffs.iter().enumerate() {
            s.set_rel(i, c % modulus);
        }
        Ok(s)
    }

    /// The constant series 1 on the window `[0, len)`.
    pub fn one(modulus: u32, len: usize) -> Result<QSeries, SeriesError> {
        if len == 0 {
            return Err(SeriesError::EmptyWindow);
        }
        let mut s = QSeries::zeros(modulus, 0, len)?;
        s.set_rel(0, 1);
        Ok(s)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Smallest exponent with a stored coefficient.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Window length (number of stored coefficients).
    pub fn len(&self) -> usize {
        match &self.coeffs {
            CoeffStore::Bits(b) => b.len(),
            CoeffStore::Words(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// One past the last exponent in the window.
    pub fn end(&self) -> i64 {
        self.offset + self.len() as i64
    }

    /// Coefficient of `q^n`, or `None` when `n` lies outside the window.
    pub fn coeff(&self, n: i64) -> Option<u32> {
        if n < self.offset || n >= self.end() {
            return None;
        }
        Some(self.get_rel((n - self.offset) as usize))
    }

    /// Coefficient of `q^n`, reading exponents outside the window as 0.
    pub fn coeff_or_zero(&self, n: i64) -> u32 {
        self.coeff(n).unwrap_or(0)
    }

    #[inline]
    pub(crate) fn get_rel(&self, i: usize) -> u32 {
        match &self.coeffs {
            CoeffStore::Bits(b) => b.get(i) as u32,
            CoeffStore::Words(w) => w[i],
        }
    }

    /// Sets the coefficient at relative index `i`; `v` must already be reduced.
    #[inline]
    pub(crate) fn set_rel(&mut self, i: usize, v: u32) {
        debug_assert!(v < self.modulus);
        match &mut self.coeffs {
            CoeffStore::Bits(b) => b.set(i, v != 0),
            CoeffStore::Words(w) => w[i] = v,
        }
    }

    /// Number of nonzero stored coefficients.
    pub fn nnz(&self) -> usize {
        match &self.coeffs {
            CoeffStore::Bits(b) => b.count_ones() as usize,
            CoeffStore::Words(w) => w.iter().filter(|&&c| c != 0).count(),
        }
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<i64> {
        let v = self.offset;
        match &self.coeffs {
            CoeffStore::Bits(b) => b.iter_ones().map(|i| v + i as i64).collect(),
            CoeffStore::Words(w) => w
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, _)| v + i as i64)
                .collect(),
        }
    }

    /// `#{ n : offset <= n <= x, coeff(n) != 0 }`.
    ///
    /// Errors when `x` is at or beyond the precision end: coefficients there
    /// are unknown, and counting them would silently extend precision.
    pub fn nonzero_count(&self, x: i64) -> Result<u64, SeriesError> {
        if x >= self.end() {
            return Err(SeriesError::PrecisionExceeded { x, end: self.end() });
        }
        if x < self.offset {
            return Ok(0);
        }
        let upto = (x - self.offset + 1) as usize;
        Ok(match &self.coeffs {
            CoeffStore::Bits(b) => b.count_ones_below(upto),
            CoeffStore::Words(w) => w[..upto].iter().filter(|&&c| c != 0).count() as u64,
        })
    }

    /// Exact multiplication by `q^k`: the window shifts, nothing else.
    pub fn shifted(&self, k: i64) -> QSeries {
        let mut out = self.clone();
        out.offset += k;
        out
    }

    /// Strips leading zero coefficients, advancing the offset; an all-zero
    /// window yields the empty series. Trailing zeros (and the precision
    /// end) are untouched.
    pub fn normalize(&self) -> QSeries {
        let first = (0..self.len()).find(|&i| self.get_rel(i) != 0);
        match first {
            None => QSeries::zeros(self.modulus, 0, 0).expect("empty window"),
            Some(0) => self.clone(),
            Some(i) => {
                let mut out =
                    QSeries::zeros(self.modulus, self.offset + i as i64, self.len() - i)
                        .expect("shrinking window");
                for j in i..self.len() {
                    out.set_rel(j - i, self.get_rel(j));
                }
                out
            }
        }
    }

    pub(crate) fn check_same_modulus(&self, other: &QSeries) -> Result<(), SeriesError> {
        if self.modulus != other.modulus {
            return Err(SeriesError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub(crate) fn bits(&self) -> Option<&BitBuf> {
        match &self.coeffs {
            CoeffStore::Bits(b) => Some(b),
            CoeffStore::Words(_) => None,
        }
    }

    pub(crate) fn bits_mut(&mut self) -> Option<&mut BitBuf> {
        match &mut self.coeffs {
            CoeffStore::Bits(b) => Some(b),
            CoeffStore::Words(_) => None,
        }
    }

    pub(crate) fn words(&self) -> Option<&[u32]> {
        match &self.coeffs {
            CoeffStore::Bits(_) => None,
            CoeffStore::Words(w) => Some(w),
        }
    }

    pub(crate) fn words_mut(&mut self) -> Option<&mut Vec<u32>> {
        match &mut self.coeffs {
            CoeffStore::Bits(_) => None,
            CoeffStore::Words(w) => Some(w),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(
            QSeries::zeros(6, 0, 4).unwrap_err(),
            SeriesError::BadModulus(6)
        );
        assert_eq!(
            QSeries::zeros(1, 0, 4).unwrap_err(),
            SeriesError::BadModulus(1)
        );
        assert!(QSeries::zeros(2_147_483_647, 0, 4).is_ok()); // 2^31 - 1 is prime
    }

    #[test]
    fn coefficients_reduced_on_construction() {
        let s = QSeries::from_coeffs(3, 0, &[4, 5, 6]).unwrap();
        assert_eq!(s.coeff(0), Some(1));
        assert_eq!(s.coeff(1), Some(2));
        assert_eq!(s.coeff(2), Some(0));
        assert_eq!(s.coeff(3), None);
        assert_eq!(s.coeff(-1), None);
    }

    #[test]
    fn normalize_strips_leading_zeros() {
        // 0 + 0*q + q^2 on [0,3) -> q^2 on [2,3)
        let s = QSeries::from_coeffs(5, 0, &[0, 0, 1]).unwrap();
        let n = s.normalize();
        assert_eq!(n.offset(), 2);
        assert_eq!(n.len(), 1);
        assert_eq!(n.coeff(2), Some(1));
        // idempotence
        assert_eq!(n.normalize(), n);
        // all-zero window -> empty
        let z = QSeries::zeros(5, 3, 4).unwrap();
        assert!(z.normalize().is_empty());
    }

    #[test]
    fn normalize_preserves_values_on_common_window() {
        let s = QSeries::from_coeffs(2, -2, &[0, 0, 1, 0, 1, 1]).unwrap();
        let n = s.normalize();
        for e in -2..s.end() {
            if e >= n.offset() {
                assert_eq!(s.coeff(e), n.coeff(e));
            }
        }
    }

    #[test]
    fn nonzero_count_basics() {
        // zero series on [0, X] counts 0
        let z = QSeries::zeros(7, 0, 11).unwrap();
        assert_eq!(z.nonzero_count(10).unwrap(), 0);
        // beyond window errors
        assert!(matches!(
            z.nonzero_count(11),
            Err(SeriesError::PrecisionExceeded { .. })
        ));
        // x below offset counts 0
        let s = QSeries::from_coeffs(7, 5, &[1, 2]).unwrap();
        assert_eq!(s.nonzero_count(4).unwrap(), 0);
        assert_eq!(s.nonzero_count(6).unwrap(), 2);
    }

    #[test]
    fn support_and_nnz() {
        let s = QSeries::from_coeffs(2, -1, &[1, 0, 1, 1]).unwrap();
        assert_eq!(s.support(), vec![-1, 1, 2]);
        assert_eq!(s.nnz(), 3);
    }
}
