//! Laurent polynomials in the quantum parameter `A` with exact rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

/// A Laurent polynomial in `A`: a finite sum of terms `c * A^k` with
/// `c` a nonzero rational and `k` any integer.
///
/// Terms are kept in a sorted map from exponent to coefficient, so the
/// representation (and hence printing) is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// The monomial `A^k`.
    pub fn var_pow(k: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, BigRational::one());
        LaurentPoly { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in iter {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&k) {
            None => {
                self.terms.insert(k, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(k, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: i64) -> BigRational {
        self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Smallest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the highest-degree term; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigRational {
        self.max_exp().map(|k| self.coeff(k)).unwrap_or_else(BigRational::zero)
    }

    /// Multiplies by `A^k`.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// True iff the polynomial is a single term `±A^k`; returns (negative, k).
    pub fn as_unit_monomial(&self) -> Option<(bool, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((false, *k))
        } else if (-c).is_one() {
            Some((true, *k))
        } else {
            None
        }
    }

    /// True iff all exponents are nonnegative.
    pub fn is_ordinary(&self) -> bool {
        self.min_exp().map_or(true, |k| k >= 0)
    }

    /// Dense coefficient vector `[c_0, ..., c_d]`; requires an ordinary
    /// polynomial. The zero polynomial yields an empty vector.
    pub(crate) fn to_dense(&self) -> Vec<BigRational> {
        if self.is_zero() {
            return Vec::new();
        }
        assert!(self.is_ordinary(), "dense form needs nonnegative exponents");
        let d = self.max_exp().unwrap() as usize;
        let mut v = vec![BigRational::zero(); d + 1];
        for (k, c) in &self.terms {
            v[*k as usize] = c.clone();
        }
        v
    }

    pub(crate) fn from_dense(v: &[BigRational]) -> Self {
        Self::from_terms(v.iter().enumerate().map(|(k, c)| (k as i64, c.clone())))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

/// Quotient and remainder of dense rational polynomials.
pub(crate) fn dense_div_rem(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty(), "division by zero polynomial");
    let dd = den.len() - 1;
    let mut rem: Vec<BigRational> = num.to_vec();
    if rem.len() < den.len() {
        return (Vec::new(), trim_dense(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    let lead = &den[dd];
    for i in (dd..rem.len()).rev() {
        let c = &rem[i] / lead;
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let idx = i - dd + j;
            let delta = &c * dc;
            rem[idx] = &rem[idx] - delta;
        }
    }
    (trim_dense(quot), trim_dense(rem))
}

fn trim_dense(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Clears a rational coefficient vector to a primitive integer vector
/// (common denominator times, integer content out).
fn to_int_primitive(v: &[BigRational]) -> Vec<BigInt> {
    use num::Integer;
    let mut den_lcm = BigInt::one();
    for c in v {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut out: Vec<BigInt> = v
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &out {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in out.iter_mut() {
            *c = &*c / &content;
        }
    }
    out
}

/// Pseudo-remainder of primitive integer polynomials, with the content
/// stripped after every outer step to keep coefficient growth linear.
fn int_prem_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    use num::Integer;
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
            r[k + j] = &r[k + j] - delta;
        }
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            return r;
        }
    }
    let mut content = BigInt::zero();
    for c in &r {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in r.iter_mut() {
            *c = &*c / &content;
        }
    }
    r
}

/// Monic gcd of two ordinary polynomials over the rationals, computed by
/// a primitive pseudo-remainder sequence over the integers to avoid the
/// coefficient explosion of plain Euclid. gcd(0, 0) = 0.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut x = to_int_primitive(&a.to_dense());
    let mut y = to_int_primitive(&b.to_dense());
    while !y.is_empty() {
        let r = int_prem_primitive(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return LaurentPoly::zero();
    }
    let lead = BigRational::from_integer(x.last().unwrap().clone());
    let g = LaurentPoly::from_terms(
        x.iter()
            .enumerate()
            .map(|(k, c)| (k as i64, BigRational::from_integer(c.clone()))),
    );
    g.scaled(&lead.recip())
}

fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_power(k: i64) -> String {
    if k == 1 {
        "A".to_string()
    } else {
        format!("A^{}", k)
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical form: exponents ascending, `+`/`-` separated terms,
    /// coefficients as reduced rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *k == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_power(*k))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), fmt_power(*k))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = LaurentPoly::from_terms(vec![(2, rat(1)), (2, rat(-1)), (0, rat(3))]);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(0), rat(3));
    }

    #[test]
    fn product_of_monomials_adds_exponents() {
        let p = LaurentPoly::var_pow(-3);
        let q = LaurentPoly::var_pow(5);
        assert_eq!(&p * &q, LaurentPoly::var_pow(2));
    }

    #[test]
    fn display_is_ascending_and_reparses() {
        let p = LaurentPoly::from_terms(vec![(4, rat(1)), (2, rat(-2)), (0, rat(1))]);
        assert_eq!(p.to_string(), "1 - 2*A^2 + A^4");
        let m = LaurentPoly::from_terms(vec![(-3, rat(-1)), (1, rat(1) / rat(2))]);
        assert_eq!(m.to_string(), "-A^-3 + 1/2*A");
    }

    #[test]
    fn gcd_of_cyclotomic_factors() {
        // A^2 - 1 and A^2 - 2A + 1 share the factor A - 1.
        let a = LaurentPoly::from_terms(vec![(2, rat(1)), (0, rat(-1))]);
        let b = LaurentPoly::from_terms(vec![(2, rat(1)), (1, rat(-2)), (0, rat(1))]);
        let g = poly_gcd(&a, &b);
        let expect = LaurentPoly::from_terms(vec![(1, rat(1)), (0, rat(-1))]);
        assert_eq!(g, expect);
    }

    #[test]
    fn dense_division_exact() {
        // (A^2 - 1) / (A - 1) = A + 1.
        let a = LaurentPoly::from_terms(vec![(2, rat(1)), (0, rat(-1))]);
        let b = LaurentPoly::from_terms(vec![(1, rat(1)), (0, rat(-1))]);
        let (q, r) = dense_div_rem(&a.to_dense(), &b.to_dense());
        assert!(r.is_empty());
        assert_eq!(
            LaurentPoly::from_dense(&q),
            LaurentPoly::from_terms(vec![(1, rat(1)), (0, rat(1))])
        );
    }
}
