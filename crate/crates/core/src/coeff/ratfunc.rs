//! The base coefficient field: rational functions in the quantum
//! parameter `A` over the rationals.

use std::fmt;

use num::{BigRational, Signed, Zero};

use super::field::CoeffField;
use super::laurent::{dense_div_rem, poly_gcd, LaurentPoly};
use super::poly::PolyOverField;
use super::CoeffError;

/// An element of the field of rational functions in `A`.
///
/// Canonical form: the denominator is an ordinary monic polynomial with
/// nonzero constant term and is coprime to the numerator; any pure power
/// of `A` is carried by the (Laurent) numerator. Equal values therefore
/// have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Builds `num / den` in canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// `Some(num)` iff the denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() };
        }
        // Split off pure powers of A so both parts are ordinary with
        // nonzero constant term; the power difference belongs to num.
        let s = num.min_exp().unwrap();
        let t = den.min_exp().unwrap();
        let num_ord = num.shifted(-s);
        let den_ord = den.shifted(-t);
        let g = poly_gcd(&num_ord, &den_ord);
        let (num_red, den_red) = if g.is_one() {
            (num_ord, den_ord)
        } else {
            let (qn, rn) = dense_div_rem(&num_ord.to_dense(), &g.to_dense());
            let (qd, rd) = dense_div_rem(&den_ord.to_dense(), &g.to_dense());
            debug_assert!(rn.is_empty() && rd.is_empty());
            (LaurentPoly::from_dense(&qn), LaurentPoly::from_dense(&qd))
        };
        let lead = den_red.leading_coeff();
        let inv_lead = lead.recip();
        RatFunc {
            num: num_red.scaled(&inv_lead).shifted(s - t),
            den: den_red.scaled(&inv_lead),
        }
    }
}

impl CoeffField for RatFunc {
    fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::normalize(num, &self.den * &rhs.den)
    }

    fn sub(&self, rhs: &Self) -> Self {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        Self::normalize(num, &self.den * &rhs.den)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    fn a_power(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::var_pow(k))
    }

    fn from_laurent(p: &LaurentPoly) -> Self {
        RatFunc::from_laurent(p.clone())
    }

    fn from_var_pow(name: &str, k: i64) -> Option<Self> {
        if name == "A" {
            Some(Self::a_power(k))
        } else {
            None
        }
    }

    fn as_unit_monomial(&self) -> Option<(bool, i64)> {
        self.as_laurent().and_then(|p| p.as_unit_monomial())
    }

    fn as_rational_const(&self) -> Option<BigRational> {
        let p = self.as_laurent()?;
        if p.is_zero() {
            return Some(BigRational::zero());
        }
        if p.num_terms() == 1 && p.min_exp() == Some(0) {
            Some(p.coeff(0))
        } else {
            None
        }
    }

    fn is_simple_positive_factor(&self) -> bool {
        match self.as_laurent() {
            Some(p) => p.num_terms() == 1 && p.leading_coeff().is_positive(),
            None => false,
        }
    }

    fn integralizer<'a, I: Iterator<Item = &'a Self>>(items: I) -> Self {
        let mut acc = LaurentPoly::one();
        for item in items {
            if item.den.is_one() {
                continue;
            }
            // lcm(acc, den) = acc * den / gcd
            let g = poly_gcd(&acc, &item.den);
            let prod = &acc * &item.den;
            let (q, r) = dense_div_rem(&prod.to_dense(), &g.to_dense());
            debug_assert!(r.is_empty());
            acc = LaurentPoly::from_dense(&q);
        }
        Self::from_laurent(acc)
    }

    fn is_division_free(&self) -> bool {
        self.den.is_one()
    }

    /// Fraction-free gcd: clear the coefficients to Laurent polynomials,
    /// strip the content over the polynomial ring in `A`, and run a
    /// primitive pseudo-remainder sequence. Plain Euclid over the
    /// rational-function field blows up its intermediate representations.
    fn poly_gcd_monic(a: &PolyOverField<Self>, b: &PolyOverField<Self>) -> PolyOverField<Self> {
        let prepare = |p: &PolyOverField<Self>| -> Vec<LaurentPoly> {
            if p.is_zero() {
                return Vec::new();
            }
            let mut v = clear_to_laurent(p);
            strip_content(&mut v);
            v
        };
        let mut x = prepare(a);
        let mut y = prepare(b);
        while !y.is_empty() {
            if x.len() < y.len() {
                std::mem::swap(&mut x, &mut y);
                continue;
            }
            let mut r = prem_laurent(&x, &y);
            strip_content(&mut r);
            x = y;
            y = r;
        }
        if x.is_empty() {
            return PolyOverField::zero();
        }
        let inv = RatFunc::from_laurent(x.last().unwrap().clone())
            .inv()
            .expect("leading coefficient is nonzero");
        PolyOverField::from_coeffs(
            x.into_iter()
                .enumerate()
                .map(|(k, c)| (k, RatFunc::from_laurent(c).mul(&inv))),
        )
    }
}

/// Clears every coefficient of `p` to a Laurent polynomial by a common
/// multiplier, returning the dense coefficient vector.
fn clear_to_laurent(p: &PolyOverField<RatFunc>) -> Vec<LaurentPoly> {
    let mult = RatFunc::integralizer(p.iter().map(|(_, c)| c));
    let deg = p.degree().expect("nonzero polynomial");
    (0..=deg)
        .map(|k| {
            let c = p.coeff(k).mul(&mult);
            c.as_laurent().expect("denominators cleared").clone()
        })
        .collect()
}

/// Monic gcd in the polynomial ring of the ordinary parts of the nonzero
/// entries; 1 when everything is zero.
fn laurent_content(v: &[LaurentPoly]) -> LaurentPoly {
    let mut g = LaurentPoly::zero();
    for c in v {
        if c.is_zero() {
            continue;
        }
        let ord = c.shifted(-c.min_exp().unwrap());
        g = poly_gcd(&g, &ord);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        LaurentPoly::one()
    } else {
        g
    }
}

/// Divides out the common A-power and the polynomial content.
fn strip_content(v: &mut [LaurentPoly]) {
    let shift = v
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.min_exp().unwrap())
        .min()
        .unwrap_or(0);
    if shift != 0 {
        for c in v.iter_mut() {
            *c = c.shifted(-shift);
        }
    }
    let g = laurent_content(v);
    if g.is_one() {
        return;
    }
    for c in v.iter_mut() {
        if c.is_zero() {
            continue;
        }
        let s = c.min_exp().unwrap();
        let (q, r) = dense_div_rem(&c.shifted(-s).to_dense(), &g.to_dense());
        debug_assert!(r.is_empty());
        *c = LaurentPoly::from_dense(&q).shifted(s);
    }
}

/// Pseudo-remainder in the outer variable with Laurent coefficients;
/// no coefficient division happens.
fn prem_laurent(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            let delta = &lr * bc;
            r[k + j] = &r[k + j] - &delta;
        }
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            return r;
        }
    }
    r
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.num_terms() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, One};

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(k, c)| (k, rat(c))))
    }

    #[test]
    fn gcd_cancellation() {
        // (A^2 - 1)/(A - 1) normalizes to A + 1.
        let x = RatFunc::new(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(x, RatFunc::from_laurent(lp(&[(1, 1), (0, 1)])));
        assert!(x.is_division_free());
    }

    #[test]
    fn pure_power_moves_to_numerator() {
        // (A^2 + 1)/A carries A^-1 into the numerator.
        let x = RatFunc::new(lp(&[(2, 1), (0, 1)]), lp(&[(1, 1)])).unwrap();
        assert_eq!(x, RatFunc::from_laurent(lp(&[(1, 1), (-1, 1)])));
        // A^-1 + A agrees with it.
        let y = RatFunc::a_power(-1).add(&RatFunc::a_power(1));
        assert_eq!(x, y);
    }

    #[test]
    fn additive_inverse_gives_zero() {
        let x = RatFunc::new(lp(&[(3, 2), (0, 5)]), lp(&[(2, 1), (0, 7)])).unwrap();
        assert!(x.add(&x.neg()).is_zero());
    }

    #[test]
    fn denominator_is_monic_with_nonzero_constant() {
        let x = RatFunc::new(lp(&[(0, 1)]), lp(&[(3, 2), (1, 2)])).unwrap();
        assert!(x.den().leading_coeff().is_one());
        assert!(!x.den().coeff(0).is_zero());
        // 1/(2A^3 + 2A) = A^-1/(2A^2+2) = (1/2 * A^-1)/(A^2 + 1)
        assert_eq!(x.num(), &LaurentPoly::from_terms(vec![(-1, rat(1) / rat(2))]));
        assert_eq!(x.den(), &lp(&[(2, 1), (0, 1)]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            RatFunc::new(lp(&[(0, 1)]), LaurentPoly::zero()).unwrap_err(),
            CoeffError::DivisionByZero
        );
        assert_eq!(RatFunc::zero().inv().unwrap_err(), CoeffError::DivisionByZero);
    }

    #[test]
    fn unit_monomial_detection_after_normalization() {
        // (A^2)/(A^-1) = A^3.
        let x = RatFunc::new(lp(&[(2, 1)]), lp(&[(-1, 1)])).unwrap();
        assert_eq!(x.as_unit_monomial(), Some((false, 3)));
        let y = RatFunc::new(lp(&[(2, 1), (0, 1)]), LaurentPoly::one()).unwrap();
        assert_eq!(y.as_unit_monomial(), None);
    }
}
