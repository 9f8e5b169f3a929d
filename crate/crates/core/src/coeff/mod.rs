//! Exact arithmetic for the coefficient tower: rationals, Laurent
//! polynomials in the quantum parameter `A`, the rational-function field
//! over them, and univariate polynomial rings plus fraction fields over
//! any coefficient field.

mod field;
mod laurent;
mod parse;
mod poly;
mod polyfrac;
mod ratfunc;

pub use field::CoeffField;
pub use laurent::{poly_gcd, LaurentPoly};
pub use parse::{parse_laurent, parse_poly_in_m, parse_scalar};
pub use poly::{poly_eval_matrix, Matrix, PolyOverField};
pub use polyfrac::{M2Var, MeridianVar, PolyFrac, QAm2, VarName};
pub use ratfunc::RatFunc;

pub(crate) use polyfrac::fraction_string;

/// Which of the two exposed coefficient fields a document uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffTag {
    /// Rational functions in `A`.
    QA,
    /// Rational functions in `m2` over `QA` (the localized case).
    QAm2,
}

impl CoeffTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CoeffTag::QA => "QA",
            CoeffTag::QAm2 => "QAm2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "QA" => Some(CoeffTag::QA),
            "QAm2" => Some(CoeffTag::QAm2),
            _ => None,
        }
    }
}

/// Errors from coefficient arithmetic and scalar parsing.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown variable '{name}' at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0}")]
    Domain(String),
}
