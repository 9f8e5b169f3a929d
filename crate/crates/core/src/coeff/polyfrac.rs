//! The fraction field of univariate polynomials over an abstract
//! coefficient field.
//!
//! Instantiated twice: with the meridian variable `m` it is the field the
//! annihilator elimination runs over, and with the second formal variable
//! `m2` it is the extended (localized) coefficient field itself.

use std::fmt;
use std::marker::PhantomData;

use num::{BigRational, Signed, Zero};

use super::field::CoeffField;
use super::laurent::LaurentPoly;
use super::poly::PolyOverField;
use super::CoeffError;

/// Marker naming the formal variable of a [`PolyFrac`] level.
pub trait VarName: Clone + Copy + PartialEq + fmt::Debug + Send + Sync + 'static {
    const NAME: &'static str;
}

/// The meridian variable `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeridianVar;
impl VarName for MeridianVar {
    const NAME: &'static str = "m";
}

/// The second commuting formal variable `m2` of the localized case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct M2Var;
impl VarName for M2Var {
    const NAME: &'static str = "m2";
}

/// An element of `Frac(F[x])` in canonical form: the denominator is monic
/// and coprime to the numerator, and zero is `0/1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyFrac<F: CoeffField, V: VarName> {
    num: PolyOverField<F>,
    den: PolyOverField<F>,
    _var: PhantomData<V>,
}

/// The extended coefficient field of the localized case: rational
/// functions in `m2` over the base field.
pub type QAm2 = PolyFrac<super::ratfunc::RatFunc, M2Var>;

impl<F: CoeffField, V: VarName> PolyFrac<F, V> {
    pub fn new(num: PolyOverField<F>, den: PolyOverField<F>) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(num: PolyOverField<F>) -> Self {
        PolyFrac { num, den: PolyOverField::one(), _var: PhantomData }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(PolyOverField::constant(c))
    }

    /// The variable to a (possibly negative) power.
    pub fn var_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(PolyOverField::var_pow(k as usize))
        } else {
            PolyFrac {
                num: PolyOverField::one(),
                den: PolyOverField::var_pow((-k) as usize),
                _var: PhantomData,
            }
        }
    }

    pub fn num(&self) -> &PolyOverField<F> {
        &self.num
    }

    pub fn den(&self) -> &PolyOverField<F> {
        &self.den
    }

    /// `Some(num)` iff the value is a polynomial (denominator 1).
    pub fn as_poly(&self) -> Option<&PolyOverField<F>> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn normalize(num: PolyOverField<F>, den: PolyOverField<F>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return PolyFrac {
                num: PolyOverField::zero(),
                den: PolyOverField::one(),
                _var: PhantomData,
            };
        }
        let g = num.gcd_monic(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lead_inv = den.leading_coeff().inv().expect("nonzero denominator");
        PolyFrac {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
            _var: PhantomData,
        }
    }
}

impl<F: CoeffField, V: VarName> CoeffField for PolyFrac<F, V> {
    fn zero() -> Self {
        Self::from_poly(PolyOverField::zero())
    }

    fn one() -> Self {
        Self::from_poly(PolyOverField::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::normalize(num, self.den.mul(&rhs.den))
    }

    fn sub(&self, rhs: &Self) -> Self {
        let num = self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den));
        Self::normalize(num, self.den.mul(&rhs.den))
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self::normalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn neg(&self) -> Self {
        PolyFrac { num: self.num.neg(), den: self.den.clone(), _var: PhantomData }
    }

    fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    fn from_rational(c: BigRational) -> Self {
        Self::constant(F::from_rational(c))
    }

    fn a_power(k: i64) -> Self {
        Self::constant(F::a_power(k))
    }

    fn from_laurent(p: &LaurentPoly) -> Self {
        Self::constant(F::from_laurent(p))
    }

    fn from_var_pow(name: &str, k: i64) -> Option<Self> {
        if name == V::NAME {
            Some(Self::var_pow(k))
        } else {
            F::from_var_pow(name, k).map(Self::constant)
        }
    }

    fn as_unit_monomial(&self) -> Option<(bool, i64)> {
        let p = self.as_poly()?;
        if p.degree() == Some(0) {
            p.coeff(0).as_unit_monomial()
        } else {
            None
        }
    }

    fn as_rational_const(&self) -> Option<BigRational> {
        let p = self.as_poly()?;
        if p.is_zero() {
            return Some(BigRational::zero());
        }
        if p.degree() == Some(0) {
            p.coeff(0).as_rational_const()
        } else {
            None
        }
    }

    fn is_simple_positive_factor(&self) -> bool {
        match self.as_poly() {
            Some(p) => {
                p.num_terms() == 1 && {
                    let (k, c) = p.iter().next().unwrap();
                    if *k == 0 {
                        c.is_simple_positive_factor()
                    } else {
                        c.is_one() || c.is_simple_positive_factor()
                    }
                }
            }
            None => false,
        }
    }

    fn integralizer<'a, I: Iterator<Item = &'a Self>>(items: I) -> Self {
        let items: Vec<&Self> = items.collect();
        let mut den_lcm = PolyOverField::<F>::one();
        for x in &items {
            den_lcm = den_lcm.lcm_monic(&x.den);
        }
        // After multiplying by den_lcm each item is a polynomial; clear
        // the coefficient-level denominators of all of them at once.
        let mut inner: Vec<F> = Vec::new();
        for x in &items {
            let cleared = x.num.mul(&den_lcm.exact_div(&x.den));
            inner.extend(cleared.iter().map(|(_, c)| c.clone()));
        }
        let c = F::integralizer(inner.iter());
        Self::from_poly(den_lcm.scale(&c))
    }

    fn is_division_free(&self) -> bool {
        self.den.is_one() && self.num.iter().all(|(_, c)| c.is_division_free())
    }
}

/// Renders `c * var^k`, with the sign carried by a leading `-` when it can
/// be extracted. Coefficients that are not plain products are wrapped in
/// parentheses so the output stays inside the expression grammar.
fn term_string<F: CoeffField>(c: &F, var: &str, k: usize) -> String {
    let power = match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{}^{}", var, k),
    };
    if k == 0 {
        return c.to_string();
    }
    if c.is_one() {
        return power;
    }
    if *c == F::one().neg() {
        return format!("-{}", power);
    }
    if let Some(r) = c.as_rational_const() {
        let sign = if r.is_negative() { "-" } else { "" };
        let abs = r.abs();
        let body = if abs.denom() == &num::BigInt::from(1) {
            format!("{}", abs.numer())
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        return format!("{}{}*{}", sign, body, power);
    }
    if c.is_simple_positive_factor() {
        format!("{}*{}", c, power)
    } else {
        format!("({})*{}", c, power)
    }
}

/// Renders a polynomial with division-free coefficients, ascending in
/// degree.
pub(crate) fn poly_string<F: CoeffField>(p: &PolyOverField<F>, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (k, c) in p.iter() {
        let t = term_string(c, var, *k);
        if first {
            out.push_str(&t);
            first = false;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

/// True iff the rendered side can stand next to the top-level `/`
/// without parentheses: a single product with no inner sum or division
/// (a leading sign is fine).
fn is_atomic_operand(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.contains(['+', '-', '/'])
}

/// Renders `num / den` over `var` after clearing coefficient-level
/// denominators, parenthesizing any side that is not a single product.
pub(crate) fn fraction_string<F: CoeffField>(
    num: &PolyOverField<F>,
    den: &PolyOverField<F>,
    var: &str,
) -> String {
    let clear = F::integralizer(num.iter().map(|(_, c)| c).chain(den.iter().map(|(_, c)| c)));
    let num = num.scale(&clear);
    let den = den.scale(&clear);
    let ns = poly_string(&num, var);
    if den.is_one() {
        return ns;
    }
    let ds = poly_string(&den, var);
    let left = if is_atomic_operand(&ns) { ns } else { format!("({})", ns) };
    let right = if is_atomic_operand(&ds) { ds } else { format!("({})", ds) };
    format!("{}/{}", left, right)
}

impl<F: CoeffField, V: VarName> fmt::Display for PolyFrac<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fraction_string(&self.num, &self.den, V::NAME))
    }
}

#[cfg(test)]
mod tests {
    use super::super::ratfunc::RatFunc;
    use super::*;

    type Ext = QAm2;

    #[test]
    fn variable_inverse_round_trip() {
        let x = Ext::var_pow(1);
        let xi = x.inv().unwrap();
        assert_eq!(x.mul(&xi), Ext::one());
        assert_eq!(Ext::var_pow(-2), xi.mul(&xi));
    }

    #[test]
    fn gcd_reduction_in_m2() {
        // (m2^2 - 1)/(m2 - 1) = m2 + 1
        let num = PolyOverField::from_coeffs([(2, RatFunc::one()), (0, RatFunc::from_int(-1))]);
        let den = PolyOverField::from_coeffs([(1, RatFunc::one()), (0, RatFunc::from_int(-1))]);
        let x = Ext::new(num, den).unwrap();
        let expect = Ext::from_poly(PolyOverField::from_coeffs([
            (1, RatFunc::one()),
            (0, RatFunc::one()),
        ]));
        assert_eq!(x, expect);
    }

    #[test]
    fn display_clears_coefficient_denominators() {
        // (1/(A) ) * m2 prints as A-cleared fraction: m2/A
        let c = RatFunc::a_power(-1);
        let x = Ext::from_poly(PolyOverField::from_coeffs([(1, c)]));
        assert_eq!(x.to_string(), "A^-1*m2");
        // 1/(m2 + 1) stays a fraction in m2
        let y = Ext::new(
            PolyOverField::one(),
            PolyOverField::from_coeffs([(1, RatFunc::one()), (0, RatFunc::one())]),
        )
        .unwrap();
        assert_eq!(y.to_string(), "1/(1 + m2)");
    }

    #[test]
    fn unit_monomial_through_the_tower() {
        let x = Ext::a_power(3).neg();
        assert_eq!(x.as_unit_monomial(), Some((true, 3)));
        assert_eq!(Ext::var_pow(1).as_unit_monomial(), None);
    }
}
