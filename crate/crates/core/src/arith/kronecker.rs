//! The Kronecker symbol (a|n), totally multiplicative in n, with the
//! standard completions at 2, -1, and 0.

use super::ArithError;

/// Kronecker symbol `(a|n)` for arbitrary integers.
///
/// For odd prime `p` not dividing `a` this is the Legendre symbol; the
/// extension to even and negative `n` follows the usual conventions
/// `(a|2) = 0, +1, -1` for `a = 0, ±1 mod 8`, `(a|-1) = sign(a)`, and
/// `(a|0) = 1` iff `a = ±1`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut sign = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    if n % 2 == 0 {
        if a % 2 == 0 {
            return 0;
        }
        let t = n.trailing_zeros();
        n >>= t;
        if t % 2 == 1 {
            // (a|2) for odd a: +1 iff a = ±1 mod 8
            match a.rem_euclid(8) {
                3 | 5 => sign = -sign,
                _ => {}
            }
        }
    }
    // n now odd and positive: Jacobi with quadratic reciprocity
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            match n % 8 {
                3 | 5 => sign = -sign,
                _ => {}
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// A real Dirichlet character `chi_D = (D|.)` attached to a discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KroneckerChar {
    d: i64,
}

impl KroneckerChar {
    /// Requires a genuine discriminant: `D != 0`, `D = 0 or 1 (mod 4)`.
    pub fn new(d: i64) -> Result<KroneckerChar, ArithError> {
        if d == 0 || !matches!(d.rem_euclid(4), 0 | 1) {
            return Err(ArithError::NotDiscriminant(d));
        }
        Ok(KroneckerChar { d })
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn eval(&self, n: i64) -> i32 {
        kronecker(self.d, n)
    }
}
