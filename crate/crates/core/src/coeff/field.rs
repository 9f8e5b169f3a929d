//! The abstract coefficient field interface.
//!
//! Every algebraic module in this crate is generic over a [`CoeffField`],
//! so the same elimination machinery runs over the base field of rational
//! functions in `A` and over its extension by a second commuting variable.

use std::fmt;

use num::BigRational;

use super::poly::{monic_euclid, PolyOverField};
use super::{CoeffError, LaurentPoly};

/// An exact field of coefficients.
///
/// Values are immutable and every operation is pure; implementations must
/// keep a unique canonical representation per value so that `==` decides
/// mathematical equality.
pub trait CoeffField:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + Sized + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse; error on zero.
    fn inv(&self) -> Result<Self, CoeffError>;

    fn div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_rational(c: BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// The monomial `A^k` of the quantum parameter.
    fn a_power(k: i64) -> Self;

    fn from_laurent(p: &LaurentPoly) -> Self;

    /// Resolves a variable token `name^k` from the expression grammar, if
    /// this field (or one of its coefficient levels) owns that variable.
    fn from_var_pow(name: &str, k: i64) -> Option<Self>;

    /// `Some((negative, k))` iff the value equals `±A^k`.
    fn as_unit_monomial(&self) -> Option<(bool, i64)>;

    /// `Some(c)` iff the value is the constant rational `c`.
    fn as_rational_const(&self) -> Option<BigRational>;

    /// True iff `Display` yields a single product of factors with no sign
    /// and no parentheses, so it can be spliced into a larger product.
    fn is_simple_positive_factor(&self) -> bool;

    /// A nonzero multiplier that clears every polynomial denominator in
    /// `items`, leaving values printable without division.
    fn integralizer<'a, I: Iterator<Item = &'a Self>>(items: I) -> Self;

    /// True iff `Display` for this value involves no polynomial division.
    fn is_division_free(&self) -> bool;

    /// Parses a scalar in the polynomial expression grammar.
    fn parse(text: &str) -> Result<Self, CoeffError> {
        super::parse::parse_scalar(text)
    }

    /// Monic gcd of univariate polynomials over this field. The default
    /// is Euclid with monic remainders; fields whose element
    /// representations grow under repeated division (rational functions)
    /// override this with a fraction-free pseudo-remainder sequence.
    fn poly_gcd_monic(a: &PolyOverField<Self>, b: &PolyOverField<Self>) -> PolyOverField<Self> {
        monic_euclid(a, b)
    }
}
