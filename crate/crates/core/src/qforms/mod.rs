//! Named modular-form expansions mod l, Hecke operators on q-expansions,
//! and the searches built from them.
//!
//! Forms are carried as a [`TaggedForm`]: a truncated series plus the
//! weight/level bookkeeping that the operators need. Weights are stored
//! doubled so half-integral weights stay in integers.

mod forms;
mod hecke;
mod pipeline;
mod search;

pub use forms::{
    delta, eta1, eta1_product, j_mod2, named_form, partition_mod, partition_series,
    partition_series_via_inv, theta0, FORM_NAMES,
};
pub use hecke::{hecke_tp, odd_ord_vanishing_check, scan_up_nonzero};
pub use pipeline::{holomorphize, multiply_theta0};
pub use search::{pow2_square_search, Pow2Square};

use crate::fpseries::{QSeries, SeriesError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("l^m = {lm} does not exceed the pole order {pole}")]
    PoleOrder { lm: u64, pole: u64 },
    #[error("operation requires modulus 2, got {0}")]
    NotModTwo(u32),
    #[error("Hecke operators need integral weight; twice_weight {0} is odd")]
    HalfIntegralWeight(i64),
    #[error("Hecke operators need nonnegative weight; twice_weight {0} is negative")]
    NegativeWeight(i64),
    #[error("p = {p} divides the level {level}")]
    PrimeDividesLevel { p: u64, level: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("form is not holomorphic: offset {0} < 0")]
    NotHolomorphic(i64),
    #[error("scan needs exponent {need} but the window ends at {end}")]
    ScanPastWindow { need: i64, end: i64 },
    #[error("n0 must be nonzero")]
    ZeroN0,
    #[error("unknown form name {0:?}")]
    UnknownForm(String),
    #[error("p^(k-1) is undefined mod l when k = 0 and l | p")]
    WeightZeroAtP,
}

/// Weight/level/modulus bookkeeping attached to a q-expansion.
///
/// `twice_weight` is 2k, so half-integral weights are the odd values; it
/// may be negative for weakly holomorphic forms of negative weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormMeta {
    pub twice_weight: i64,
    pub level: u64,
    pub modulus: u32,
}

impl FormMeta {
    pub fn new(twice_weight: i64, level: u64, modulus: u32) -> FormMeta {
        assert!(level >= 1, "level must be positive");
        FormMeta { twice_weight, level, modulus }
    }

    pub fn is_half_integral(&self) -> bool {
        self.twice_weight % 2 != 0
    }
}

/// A truncated q-expansion together with its form metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedForm {
    pub series: QSeries,
    pub meta: FormMeta,
}

impl TaggedForm {
    pub fn new(series: QSeries, meta: FormMeta) -> TaggedForm {
        assert_eq!(
            series.modulus(),
            meta.modulus,
            "series and metadata must share a modulus"
        );
        TaggedForm { series, meta }
    }
}
