//! Exact arithmetic for Springer isomorphisms of classical matrix groups in
//! characteristic `p`: the reduced Artin-Hasse exponential, Witt-vector
//! embeddings of unipotent elements, and the truncated exponential on
//! restricted parabolics, together with seeded property suites that check
//! them.
//!
//! Everything is exact. Scalars live in `F_p` or `F_{p^2}` ([`Field`]),
//! matrices are dense ([`FpMatrix`]), and rational series use big integers.

pub mod error;
pub mod exec;
pub mod field;
pub mod groups;
pub mod linalg;
pub mod matrix;
pub mod parabolic;
pub mod rng;
pub mod series;
pub mod springer;
pub mod verify;
pub mod witt;
pub mod zpoly;

pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{Field, FieldScalar};
pub use groups::{in_group, in_lie_algebra, random_nilpotent, GroupKind, GroupSpec, NilpotentSampler};
pub use matrix::{centralizer_space, jordan_type, nilpotent_order, unipotent_order, FpMatrix, JordanType};
pub use parabolic::{random_p_element, Composition, ParabolicGL};
pub use series::{ah_coeffs_mod_p, ah_inverse_coeffs, ah_rational_coeffs, FpSeries, RationalSeries};
pub use springer::{ah_exp, ah_log, bch, bch_dynkin, truncated_exp, truncated_log, witt_embed};
pub use witt::{witt_add, witt_from_integer, witt_neg, witt_order, witt_pow_p, WittVector};
pub use verify::{run_suite, Report, SuiteConfig, SuiteRecord};
