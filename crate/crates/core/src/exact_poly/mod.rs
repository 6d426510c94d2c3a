//! Exact rational arithmetic, sparse multivariate polynomials, polynomial
//! determinants and the textual expression format.

mod format;
mod matrix;
mod parse;
mod polynomial;
mod rational;
mod variable;

pub use format::{format, format_latex, format_plain, Style};
pub use matrix::{det, det_bareiss, det_cofactor, det_minors, PolyMatrix, COFACTOR_LIMIT};
pub use parse::{parse, parse_with_limit, ParseError};
pub use polynomial::{Monomial, Polynomial};
pub use rational::{
    binomial, factorial, falling_factorial, format_rational, from_bigint, int, parse_rational, rat,
    Rational,
};
pub(crate) use rational::{serde_string, serde_string_opt};
pub use variable::{Series, Variable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("no binding for variable {0}")]
    MissingBinding(Variable),
    #[error("matrix is not square ({rows} rows, a row of {cols} columns)")]
    Shape { rows: usize, cols: usize },
    #[error("polynomial division leaves a remainder")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("internal error: Bareiss elimination left a remainder at step {step}")]
    BareissRemainder { step: usize },
}
