//! Arithmetic on truncated q-series.
//!
//! Precision bookkeeping is conservative throughout:
//!
//! - `add`: result window `[min(v_f, v_g), min(end_f, end_g))`;
//! - `mul`: result offset `v_f + v_g`, result end
//!   `min(end_f + v_g, end_g + v_f)` (so the relative length is the min of
//!   the operands' lengths);
//! - `frobenius_pow`: exponent dilation is exact, the window scales by l^m;
//! - `pow`: repeated squaring under the `mul` rule.
//!
//! No operation ever extends a window beyond what its inputs justify.

use super::{check_len, CoeffStore, QSeries, SeriesError};

impl QSeries {
    /// Coefficientwise sum on the window `[min(v_f, v_g), min(end_f, end_g))`,
    /// reading exponents outside either stored window as zero.
    pub fn add(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        self.check_same_modulus(other)?;
        if self.is_empty() || other.is_empty() {
            return Err(SeriesError::EmptySeries);
        }
        let v = self.offset.min(other.offset);
        let end = self.end().min(other.end());
        if end <= v {
            return Err(SeriesError::EmptyWindow);
        }
        let len = (end - v) as usize;
        let l = self.modulus;
        let mut out = QSeries::zeros(l, v, len)?;
        for i in 0..len {
            let n = v + i as i64;
            let c = (self.coeff_or_zero(n) + other.coeff_or_zero(n)) % l;
            out.set_rel(i, c);
        }
        Ok(out)
    }

    /// Truncated convolution.
    ///
    /// The outer loop runs over the support of the sparser operand, so the
    /// cost is `nnz(sparse) * len(other)`; for l = 2 each row is a
    /// word-level shift/xor.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        self.check_same_modulus(other)?;
        if self.is_empty() || other.is_empty() {
            return Err(SeriesError::EmptySeries);
        }
        let (sparse, dense) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let out_len = sparse.len().min(dense.len());
        let v = self.offset + other.offset;
        let l = self.modulus;
        let mut out = QSeries::zeros(l, v, out_len)?;
        match (&sparse.coeffs, &dense.coeffs, &mut out.coeffs) {
            (CoeffStore::Bits(s), CoeffStore::Bits(d), CoeffStore::Bits(o)) => {
                for j in s.iter_ones() {
                    if j >= out_len {
                        break;
                    }
                    o.xor_shifted(d, j);
                }
            }
            (CoeffStore::Words(s), CoeffStore::Words(d), CoeffStore::Words(o)) => {
                let l = l as u64;
                for (j, &c) in s.iter().enumerate().filter(|(_, &c)| c != 0) {
                    if j >= out_len {
                        break;
                    }
                    let c = c as u64;
                    let kmax = d.len().min(out_len - j);
                    for (k, &dk) in d[..kmax].iter().enumerate() {
                        if dk != 0 {
                            let slot = &mut o[j + k];
                            *slot = ((*slot as u64 + c * dk as u64) % l) as u32;
                        }
                    }
                }
            }
            _ => unreachable!("same modulus implies same storage kind"),
        }
        Ok(out)
    }

    /// Multiplicative inverse by the linear recurrence on coefficients.
    ///
    /// The input is normalized first; if the window is identically zero
    /// there is nothing to invert. The result has offset `-v` and the same
    /// relative window length, so `f * inv(f) = 1` on `[0, len)`.
    ///
    /// Cost is `len * nnz(f)`: near-linear for the lacunary inputs
    /// (eta-like series) this crate cares about.
    pub fn inv(&self) -> Result<QSeries, SeriesError> {
        if self.is_empty() {
            return Err(SeriesError::EmptySeries);
        }
        let f = self.normalize();
        if f.is_empty() {
            return Err(SeriesError::NotInvertible);
        }
        let len = f.len();
        let l = self.modulus;
        let mut out = QSeries::zeros(l, -f.offset, len)?;
        if l == 2 {
            // leading coefficient is 1; support of the tail drives the xor.
            let support: Vec<usize> = f
                .bits()
                .expect("mod-2 storage")
                .iter_ones()
                .skip(1)
                .collect();
            let o = out.bits_mut().expect("mod-2 storage");
            o.set(0, true);
            for n in 1..len {
                let mut acc = false;
                for &k in support.iter().take_while(|&&k| k <= n) {
                    acc ^= o.get(n - k);
                }
                o.set(n, acc);
            }
        } else {
            let fw = f.words().expect("word storage");
            let lead_inv = mod_inverse(fw[0], l);
            let support: Vec<(usize, u64)> = fw
                .iter()
                .enumerate()
                .skip(1)
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (k, c as u64))
                .collect();
            let o = out.words_mut().expect("word storage");
            o[0] = lead_inv;
            let l64 = l as u64;
            for n in 1..len {
                let mut acc: u64 = 0;
                for &(k, c) in support.iter().take_while(|&&(k, _)| k <= n) {
                    acc = (acc + c * o[n - k] as u64) % l64;
                }
                // g[n] = -lead_inv * acc
                o[n] = ((l64 - acc) % l64 * lead_inv as u64 % l64) as u32;
            }
        }
        Ok(out)
    }

    /// `f^(l^m)` by exponent dilation: the coefficient of `q^{n l^m}` in the
    /// output is the coefficient of `q^n` in `f` (Frobenius, coefficients
    /// fixed by `a^l = a` in F_l). Dilation is exact, so the whole window
    /// scales: offset `v l^m`, end `end_f * l^m`.
    pub fn frobenius_pow(&self, m: u32) -> Result<QSeries, SeriesError> {
        if self.is_empty() {
            return Err(SeriesError::EmptySeries);
        }
        let l = self.modulus;
        let scale: u128 = (l as u128)
            .checked_pow(m)
            .ok_or(SeriesError::LengthLimit(u128::MAX))?;
        if m == 0 {
            return Ok(self.clone());
        }
        let new_len = check_len(self.len() as u128 * scale)?;
        let scale = scale as i64;
        let mut out = QSeries::zeros(l, self.offset * scale, new_len)?;
        match (&self.coeffs, &mut out.coeffs) {
            (CoeffStore::Bits(b), CoeffStore::Bits(o)) => {
                for i in b.iter_ones() {
                    o.set(i * scale as usize, true);
                }
            }
            (CoeffStore::Words(w), CoeffStore::Words(o)) => {
                for (i, &c) in w.iter().enumerate() {
                    if c != 0 {
                        o[i * scale as usize] = c;
                    }
                }
            }
            _ => unreachable!(),
        }
        Ok(out)
    }

    /// `f^e` by repeated squaring under the `mul` truncation rule.
    /// `pow(f, 0)` is the constant 1 on `[0, len)`.
    pub fn pow(&self, e: u64) -> Result<QSeries, SeriesError> {
        if self.is_empty() {
            return Err(SeriesError::EmptySeries);
        }
        if e == 0 {
            return QSeries::one(self.modulus, self.len());
        }
        let mut result: Option<QSeries> = None;
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(result.expect("e >= 1"))
    }

    /// In-place multiplication by the exact polynomial `1 - q^m`, `m >= 1`.
    ///
    /// Builder for sequential products like `prod (1 - q^{24n})`: since the
    /// factor is exact, the window is unchanged. Coefficients below the
    /// offset are taken as true zeros, so this is only correct for series
    /// whose expansion genuinely starts at the offset (every internal use
    /// does).
    pub(crate) fn mul_one_minus_qm(&mut self, m: usize) {
        let len = self.len();
        if m == 0 || m >= len {
            return;
        }
        match &mut self.coeffs {
            CoeffStore::Bits(b) => {
                // self ^= self << m, high to low via a shifted copy
                let copy = b.clone();
                b.xor_shifted(&copy, m);
            }
            CoeffStore::Words(w) => {
                let l = self.modulus;
                for i in (m..len).rev() {
                    w[i] = (w[i] + l - w[i - m]) % l;
                }
            }
        }
    }
}

/// Inverse of `a` mod prime `l`, via Fermat.
pub(crate) fn mod_inverse(a: u32, l: u32) -> u32 {
    mod_pow(a as u64, l as u64 - 2, l as u64) as u32
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    base %= m;
    let mut acc: u64 = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}
