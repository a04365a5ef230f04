//! The extremal construction: pick odd squarefree `d` in `[Z, 2Z]` with the
//! smallest `L(1, chi_{-4d})`, take `A = {d k^2 : k <= sqrt(X/2Z)}`, and
//! measure how many primes up to `X/2` the set represents as `a + b^2`.
//!
//! The first and second moments of the representation count `r_A(p)` give,
//! via Cauchy-Schwarz, the exact lower bound
//! `#{p : r(p) > 0} >= (sum r)^2 / (sum r^2)`, which is asserted on every
//! run; the asymptotic normalizations are reported, never asserted.
//!
//! `b` ranges over `b >= 1`: the construction's elements `d k^2` are never
//! prime for `k >= 1, d > 1`, so admitting `b = 0` would change nothing on
//! the sets this module builds.

use crate::arith::{self, ArithError};
use crate::fpseries::BitBuf;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Memory guard for the prime table over `[0, X/2]`.
pub const MAX_CONSTRUCTION_X: u64 = 1 << 31;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OptError {
    #[error("only {found} odd squarefree candidates in [{z}, {two_z}], need {want}")]
    NotEnoughCandidates { found: usize, want: usize, z: u64, two_z: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConstructionParams {
    pub x: u64,
    pub z: u64,
    pub d_count: usize,
}

/// `exp((log X)^{1/10})`, the scale the asymptotic analysis wants for `Z`.
/// Collapses to single digits at desk scale, so callers normally override.
pub fn default_z(x: u64) -> u64 {
    ((x as f64).ln().powf(0.1).exp().round() as u64).max(3)
}

/// Scans odd squarefree `d` in `[z, 2z]`, computing `L(1, chi_{-4d})`
/// (exact finite sum at the fundamental part, Euler-corrected otherwise),
/// and returns the `d_count` smallest L-values ascending.
pub fn choose_discriminants(z: u64, d_count: usize) -> Result<Vec<(u64, f64)>, OptError> {
    if z < 3 || d_count == 0 {
        return Err(OptError::InvalidParams(format!(
            "need z >= 3 and d_count >= 1, got z={z}, d_count={d_count}"
        )));
    }
    let candidates: Vec<u64> = (z..=2 * z)
        .filter(|&d| d % 2 == 1 && arith::factorize(d).iter().all(|&(_, e)| e == 1))
        .collect();
    if candidates.len() < d_count {
        return Err(OptError::NotEnoughCandidates {
            found: candidates.len(),
            want: d_count,
            z,
            two_z: 2 * z,
        });
    }
    let mut scored: Vec<(u64, f64)> = candidates
        .par_iter()
        .map(|&d| {
            let l = arith::l_one_imprimitive(-4 * d as i64).expect("-4d is a discriminant");
            (d, l)
        })
        .collect();
    scored.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
    scored.truncate(d_count);
    Ok(scored)
}

/// `{d k^2 : d in D, 1 <= k <= sqrt(X/2Z)}`, deduplicated and sorted.
/// Every element is at most `X` because `d <= 2Z`.
pub fn build_set(ds: &[u64], x: u64, z: u64) -> Vec<u64> {
    assert!(z >= 1 && x >= 2 * z, "need X >= 2Z");
    let k_max = (x / (2 * z)).isqrt();
    let mut out = BTreeSet::new();
    for &d in ds {
        debug_assert!(d <= 2 * z);
        for k in 1..=k_max {
            out.insert(d * k * k);
        }
    }
    out.into_iter().collect()
}

fn prime_table(limit: u64) -> BitBuf {
    let mut t = BitBuf::zeros(limit as usize + 1);
    arith::for_each_prime(limit, |p| t.set(p as usize, true));
    t
}

/// `r_A(p)` for primes `p <= X/2`: the number of pairs `(a, b)`, `a` in
/// `A`, `b >= 1`, with `a + b^2 = p`. Loops over `(a, b)` and increments a
/// prime-indexed table; only primes with `r > 0` appear in the map.
pub fn rep_counts(a_set: &[u64], x: u64) -> BTreeMap<u64, u64> {
    let half = x / 2;
    let primes = prime_table(half);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &a in a_set {
        let mut b = 1u64;
        while let Some(v) = a.checked_add(b * b).filter(|&v| v <= half) {
            if primes.get(v as usize) {
                *counts.entry(v).or_insert(0) += 1;
            }
            b += 1;
        }
    }
    counts
}

/// The transposed computation: loops over primes `p <= X/2` and `b >= 1`,
/// testing `p - b^2` for membership in `A`. Must agree with [`rep_counts`]
/// exactly; the pair is a standing cross-check.
pub fn rep_counts_by_prime(a_set: &[u64], x: u64) -> BTreeMap<u64, u64> {
    let members: BTreeSet<u64> = a_set.iter().copied().collect();
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    arith::for_each_prime(x / 2, |p| {
        let mut r = 0u64;
        let mut b = 1u64;
        while b * b < p {
            if members.contains(&(p - b * b)) {
                r += 1;
            }
            b += 1;
        }
        if r > 0 {
            counts.insert(p, r);
        }
    });
    counts
}

/// Exact moment statistics of a representation-count map, with the
/// Cauchy-Schwarz support bound `ceil((sum r)^2 / sum r^2)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentReport {
    pub sum_r: u64,
    pub sum_r2: u64,
    pub represented: u64,
    pub cs_bound: u64,
}

pub fn moments(r: &BTreeMap<u64, u64>) -> MomentReport {
    let mut sum_r: u64 = 0;
    let mut sum_r2: u64 = 0;
    let mut represented: u64 = 0;
    for &v in r.values() {
        sum_r += v;
        sum_r2 += v * v;
        if v > 0 {
            represented += 1;
        }
    }
    let cs_bound = if sum_r2 == 0 {
        0
    } else {
        let num = (sum_r as u128) * (sum_r as u128);
        num.div_ceil(sum_r2 as u128) as u64
    };
    assert!(
        represented >= cs_bound,
        "Cauchy-Schwarz violated: {represented} < {cs_bound}"
    );
    MomentReport { sum_r, sum_r2, represented, cs_bound }
}

/// Full run: discriminant selection, set construction, representation
/// counts (both loop orders, compared exactly), moments, and the
/// normalized statistics the asymptotics are phrased in.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    pub params: ConstructionParams,
    pub chosen: Vec<(u64, f64)>,
    pub a_size: usize,
    /// `|A| log log X / sqrt(X)`
    pub a_size_normalized: f64,
    pub moments: MomentReport,
    pub pi_half_x: u64,
    /// `represented / pi(X/2)`
    pub represented_fraction: f64,
    /// `sum_r log X / X`
    pub sum_r_normalized: f64,
    /// `sum_r2 log X / X`
    pub sum_r2_normalized: f64,
    pub warning: Option<String>,
}

pub fn run_construction(params: &ConstructionParams) -> Result<ConstructionReport, OptError> {
    let ConstructionParams { x, z, d_count } = *params;
    if x < 2 * z || d_count == 0 {
        return Err(OptError::InvalidParams(format!(
            "need 2Z <= X and d_count >= 1, got X={x}, Z={z}, d_count={d_count}"
        )));
    }
    if x > MAX_CONSTRUCTION_X {
        return Err(OptError::InvalidParams(format!(
            "X = {x} exceeds the construction memory guard {MAX_CONSTRUCTION_X}"
        )));
    }
    let warning = (z < 10).then(|| {
        format!("Z = {z} is far below any asymptotic regime; statistics are purely illustrative")
    });
    let chosen = choose_discriminants(z, d_count)?;
    let ds: Vec<u64> = chosen.iter().map(|&(d, _)| d).collect();
    let a_set = build_set(&ds, x, z);
    let counts = rep_counts(&a_set, x);
    let counts_t = rep_counts_by_prime(&a_set, x);
    assert_eq!(counts, counts_t, "the two rep-count loop orders disagree");
    let m = moments(&counts);
    let pi_half_x = arith::prime_count(x / 2);
    let xf = x as f64;
    Ok(ConstructionReport {
        params: *params,
        chosen,
        a_size: a_set.len(),
        a_size_normalized: a_set.len() as f64 * xf.ln().ln() / xf.sqrt(),
        moments: m,
        pi_half_x,
        represented_fraction: m.represented as f64 / pi_half_x as f64,
        sum_r_normalized: m.sum_r as f64 * xf.ln() / xf,
        sum_r2_normalized: m.sum_r2 as f64 * xf.ln() / xf,
        warning,
    })
}
