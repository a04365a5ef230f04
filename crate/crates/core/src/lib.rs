//! Exact desk-scale arithmetic for q-expansions of modular forms modulo a
//! prime, together with the number-theoretic machinery needed to run
//! experiments on the count of non-vanishing Fourier coefficients.
//!
//! The crate is organised in five layers:
//!
//! - [`fpseries`]: truncated Laurent q-series with coefficients in F_l
//!   (bit-packed for l = 2, one word per residue otherwise);
//! - [`qforms`]: named expansions (eta(24z), the partition generating
//!   function, theta, Delta, the j-invariant mod 2), Hecke operators on
//!   q-expansions, and the searches built on top of them;
//! - [`arith`]: prime sieves, Kronecker symbols, fundamental-discriminant
//!   decomposition, class numbers, and Dirichlet L-values;
//! - [`sievelab`]: direct counts of primes of the shape (a + m^2)/u and the
//!   aggregate represented-prime experiment;
//! - [`optimality`]: the extremal construction A = {d k^2} from
//!   small-L(1) discriminants, with representation moments.
//!
//! All series operations are pure functions over immutable values and are
//! safe to evaluate concurrently.

pub mod arith;
pub mod fpseries;
pub mod optimality;
pub mod qforms;
pub mod sievelab;

pub use fpseries::{QSeries, SeriesError};
pub use qforms::{FormMeta, TaggedForm};
