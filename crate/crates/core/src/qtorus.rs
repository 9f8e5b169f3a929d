//! The quantum torus in the `e`-basis and its involution-invariant
//! subalgebra in the symmetric `ẽ`-basis.
//!
//! Basis vectors `e_{α,β}` are indexed by lattice points; the product
//! twists by a power of `A`:
//!
//! ```text
//! e_{α,β} · e_{μ,ν} = A^{αν − βμ} e_{α+μ, β+ν}
//! ```
//!
//! The involution negates indices, and the symmetric basis
//! `ẽ_{α,β} = e_{α,β} + e_{−α,−β}` is indexed by lattice points modulo
//! the simultaneous sign flip, with the paper-facing product
//!
//! ```text
//! ẽ_{α,β} · ẽ_{μ,ν} = A^{αν − βμ} ẽ_{α+μ, β+ν} + A^{βμ − αν} ẽ_{α−μ, β−ν}
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::CoeffField;

/// A lattice point `(p, q)`, standing for the curve `l^p m^q` of slope
/// `q/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentPair {
    pub p: i64,
    pub q: i64,
}

impl ExponentPair {
    pub fn new(p: i64, q: i64) -> Self {
        ExponentPair { p, q }
    }

    pub fn neg(self) -> Self {
        ExponentPair { p: -self.p, q: -self.q }
    }

    pub fn add(self, rhs: Self) -> Self {
        ExponentPair { p: self.p + rhs.p, q: self.q + rhs.q }
    }

    pub fn sub(self, rhs: Self) -> Self {
        ExponentPair { p: self.p - rhs.p, q: self.q - rhs.q }
    }

    pub fn is_origin(self) -> bool {
        self.p == 0 && self.q == 0
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// A lattice point modulo the simultaneous sign flip, stored by its
/// canonical representative: `p > 0`, or `p = 0` and `q ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymmetricClass(ExponentPair);

impl SymmetricClass {
    pub fn of(pair: ExponentPair) -> Self {
        if Self::is_canonical(pair) {
            SymmetricClass(pair)
        } else {
            SymmetricClass(pair.neg())
        }
    }

    pub fn is_canonical(pair: ExponentPair) -> bool {
        pair.p > 0 || (pair.p == 0 && pair.q >= 0)
    }

    pub fn rep(self) -> ExponentPair {
        self.0
    }

    pub fn is_origin(self) -> bool {
        self.0.is_origin()
    }
}

impl fmt::Display for SymmetricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Errors from quantum torus operations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QTorusError {
    #[error("element is not theta-invariant at index ({p}, {q})")]
    NotThetaInvariant { p: i64, q: i64 },
}

/// A finite linear combination of `e`-basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement<F: CoeffField> {
    terms: BTreeMap<ExponentPair, F>,
}

impl<F: CoeffField> TorusElement<F> {
    pub fn zero() -> Self {
        TorusElement { terms: BTreeMap::new() }
    }

    /// The algebra unit `e_{0,0}`.
    pub fn unit() -> Self {
        Self::basis(ExponentPair::new(0, 0))
    }

    pub fn basis(at: ExponentPair) -> Self {
        let mut e = Self::zero();
        e.add_term(at, F::one());
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (ExponentPair, F)>>(iter: I) -> Self {
        let mut e = Self::zero();
        for (at, c) in iter {
            e.add_term(at, c);
        }
        e
    }

    pub fn add_term(&mut self, at: ExponentPair, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&at) {
            None => {
                self.terms.insert(at, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(at, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, at: ExponentPair) -> F {
        self.terms.get(&at).cloned().unwrap_or_else(F::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentPair, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (at, c) in &rhs.terms {
            out.add_term(*at, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (at, c) in &rhs.terms {
            out.add_term(*at, c.neg());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TorusElement {
            terms: self.terms.iter().map(|(at, v)| (*at, v.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TorusElement {
            terms: self.terms.iter().map(|(at, v)| (*at, v.neg())).collect(),
        }
    }

    /// The product, bilinear over `e_{α,β}·e_{μ,ν} = A^{αν−βμ} e_{α+μ,β+ν}`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let twist = F::a_power(a.p * b.q - a.q * b.p);
                out.add_term(a.add(*b), ca.mul(cb).mul(&twist));
            }
        }
        out
    }

    /// The involution `e_{α,β} ↦ e_{−α,−β}`.
    pub fn theta(&self) -> Self {
        TorusElement {
            terms: self.terms.iter().map(|(at, c)| (at.neg(), c.clone())).collect(),
        }
    }

    /// Rewrites a theta-invariant element in the symmetric basis; the
    /// expansion of the result recovers the input exactly.
    pub fn symmetrize(&self) -> Result<SymmetricElement<F>, QTorusError> {
        for (at, c) in &self.terms {
            if self.coeff(at.neg()) != *c {
                return Err(QTorusError::NotThetaInvariant { p: at.p, q: at.q });
            }
        }
        let mut out = SymmetricElement::zero();
        let half = F::from_rational(num::BigRational::new(1.into(), 2.into()));
        for (at, c) in &self.terms {
            if !SymmetricClass::is_canonical(*at) {
                continue;
            }
            if at.is_origin() {
                // ẽ_{0,0} = 2 e_{0,0}
                out.add_term(SymmetricClass::of(*at), c.mul(&half));
            } else {
                out.add_term(SymmetricClass::of(*at), c.clone());
            }
        }
        Ok(out)
    }
}

/// A finite linear combination of symmetric basis vectors `ẽ_{α,β}`,
/// indexed by sign-flip classes.
///
/// The class at the origin is the basis vector `ẽ_{0,0} = 2 e_{0,0}`; the
/// algebra unit `e_{0,0}` is half of it.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricElement<F: CoeffField> {
    terms: BTreeMap<SymmetricClass, F>,
}

impl<F: CoeffField> SymmetricElement<F> {
    pub fn zero() -> Self {
        SymmetricElement { terms: BTreeMap::new() }
    }

    /// The algebra unit `e_{0,0} = ẽ_{0,0}/2`.
    pub fn unit() -> Self {
        let half = F::from_rational(num::BigRational::new(1.into(), 2.into()));
        let mut e = Self::zero();
        e.add_term(SymmetricClass::of(ExponentPair::new(0, 0)), half);
        e
    }

    pub fn basis(class: SymmetricClass) -> Self {
        let mut e = Self::zero();
        e.add_term(class, F::one());
        e
    }

    pub fn basis_at(p: i64, q: i64) -> Self {
        Self::basis(SymmetricClass::of(ExponentPair::new(p, q)))
    }

    pub fn from_terms<I: IntoIterator<Item = (SymmetricClass, F)>>(iter: I) -> Self {
        let mut e = Self::zero();
        for (class, c) in iter {
            e.add_term(class, c);
        }
        e
    }

    pub fn add_term(&mut self, class: SymmetricClass, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&class) {
            None => {
                self.terms.insert(class, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(class, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, class: SymmetricClass) -> F {
        self.terms.get(&class).cloned().unwrap_or_else(F::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SymmetricClass, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> impl Iterator<Item = &SymmetricClass> {
        self.terms.keys()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (class, c) in &rhs.terms {
            out.add_term(*class, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (class, c) in &rhs.terms {
            out.add_term(*class, c.neg());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymmetricElement {
            terms: self.terms.iter().map(|(class, v)| (*class, v.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SymmetricElement {
            terms: self.terms.iter().map(|(class, v)| (*class, v.neg())).collect(),
        }
    }

    /// Expands back into the `e`-basis: `ẽ_{α,β} = e_{α,β} + e_{−α,−β}`
    /// (so the origin class contributes `2 e_{0,0}`).
    pub fn expand(&self) -> TorusElement<F> {
        let mut out = TorusElement::zero();
        for (class, c) in &self.terms {
            let r = class.rep();
            out.add_term(r, c.clone());
            out.add_term(r.neg(), c.clone());
        }
        out
    }

    /// The product, bilinear over
    /// `ẽ_{α,β}·ẽ_{μ,ν} = A^{αν−βμ} ẽ_{α+μ,β+ν} + A^{βμ−αν} ẽ_{α−μ,β−ν}`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ca, a) in &self.terms {
            for (cb, b) in &rhs.terms {
                let x = ca.rep();
                let y = cb.rep();
                let e = x.p * y.q - x.q * y.p;
                let c = a.mul(b);
                out.add_term(SymmetricClass::of(x.add(y)), c.mul(&F::a_power(e)));
                out.add_term(SymmetricClass::of(x.sub(y)), c.mul(&F::a_power(-e)));
            }
        }
        out
    }
}
