//! Packed bit buffer backing mod-2 series.
//!
//! Coefficients mod 2 are stored one per bit in little-endian order inside
//! `u64` words, so that multiplying series reduces to word-level shift/xor.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitBuf {
    words: Vec<u64>,
    len: usize,
}

impl BitBuf {
    pub fn zeros(len: usize) -> Self {
        BitBuf {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if v {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[cfg(test)]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    /// `self ^= other << shift`, truncated to `self.len` bits.
    ///
    /// This is one row of a carry-less convolution: word-aligned xor of
    /// `other` displaced by `shift` bit positions.
    pub fn xor_shifted(&mut self, other: &BitBuf, shift: usize) {
        if shift >= self.len {
            return;
        }
        let word_shift = shift >> 6;
        let bit_shift = shift & 63;
        let n_words = self.words.len();
        if bit_shift == 0 {
            for (i, &w) in other.words.iter().enumerate() {
                let d = i + word_shift;
                if d >= n_words {
                    break;
                }
                self.words[d] ^= w;
            }
        } else {
            let mut carry = 0u64;
            for (i, &w) in other.words.iter().enumerate() {
                let d = i + word_shift;
                if d >= n_words {
                    break;
                }
                self.words[d] ^= (w << bit_shift) | carry;
                carry = w >> (64 - bit_shift);
            }
            let d = other.words.len() + word_shift;
            if d < n_words {
                self.words[d] ^= carry;
            }
        }
        self.clear_tail();
    }

    /// Number of set bits among positions `[0, end)`.
    pub fn count_ones_below(&self, end: usize) -> u64 {
        let end = end.min(self.len);
        let full = end >> 6;
        let mut total: u64 = self.words[..full].iter().map(|w| w.count_ones() as u64).sum();
        let rem = end & 63;
        if rem != 0 {
            total += (self.words[full] & ((1u64 << rem) - 1)).count_ones() as u64;
        }
        total
    }

    pub fn count_ones(&self) -> u64 {
        self.count_ones_below(self.len)
    }

    /// Positions of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((wi << 6) + b)
                }
            })
        })
    }

    /// Zeroes the unused bits of the last word so word-level equality and
    /// popcounts stay exact after shifts.
    fn clear_tail(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}
