//! Invariant-theory operators on generic binary forms: the derivations
//! `D`, `D*`, `E`, classification of semi-invariants and covariants, the
//! maps `kappa`/`kappa_inv`, transvectants and semi-transvectants.

mod context;
mod covariant;
mod derivation;
mod semi;

pub use context::FormContext;
pub use covariant::{generic_form, kappa, kappa_inv, transvectant, xy_order};
pub use derivation::{
    derive_d, derive_dstar, derive_e, is_covariant, is_invariant, is_isobaric, is_semi_invariant, ord,
    ord_iterated, printed_weight, weight,
};
pub use semi::{semi_transvectant, SemiInvariant};

use crate::exact_poly::{PolyError, Series, Variable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("variable {variable} is outside the context (order {order}, series {series})")]
    OutOfContext { variable: Variable, order: u32, series: String },
    #[error("series {0} is not active in the context")]
    InactiveSeries(Series),
    #[error("a form context needs a positive order and at least one series")]
    EmptyContext,
    #[error("contexts of different orders ({0} and {1}) cannot be joined")]
    OrderMismatch(u32, u32),
    #[error("polynomial is zero")]
    Zero,
    #[error("polynomial is not a semi-invariant (D does not annihilate it)")]
    NotSemiInvariant,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not isobaric")]
    NotIsobaric,
    #[error("polynomial is not homogeneous in X, Y")]
    NotXyHomogeneous,
    #[error("index r = {r} exceeds the admissible maximum {max}")]
    Range { r: u32, max: u32 },
    #[error("certified {what} is {actual}, expected {expected}")]
    Metadata { what: &'static str, expected: i64, actual: i64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}
