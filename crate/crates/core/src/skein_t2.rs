//! The skein algebra of the torus: multicurve basis, Chebyshev basis
//! changes, the curve-to-symmetric-basis isomorphism and its inverse, and
//! conversion of peripheral polynomials into the symmetric algebra.
//!
//! Multicurves on the torus are parallel copies of a single primitive
//! curve, so the basis is indexed by a primitive direction together with
//! a number of copies. With `T_n` the Chebyshev-like polynomials
//! (`T_0 = 2`, `T_1 = x`, `x T_n = T_{n+1} + T_{n−1}`), the isomorphism
//! sends `T_gcd(p,q)(γ_{q/p})` to the symmetric basis vector at `(p, q)`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Zero};

use crate::coeff::{CoeffField, PolyOverField};
use crate::qtorus::{ExponentPair, SymmetricClass, SymmetricElement};

/// Errors from skein-side constructions.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SkeinError {
    #[error("direction ({p}, {q}) is not primitive")]
    NotPrimitive { p: i64, q: i64 },
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// A multicurve on the torus: either empty (the algebra unit) or `copies`
/// parallel copies of the primitive curve in direction `dir`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurveMonomial {
    Empty,
    Curve { dir: SymmetricClass, copies: u32 },
}

impl CurveMonomial {
    /// `copies` parallel copies of the curve `l^p m^q`; `(p, q)` must be
    /// primitive. Zero copies give the empty multicurve.
    pub fn new(p: i64, q: i64, copies: u32) -> Result<Self, SkeinError> {
        if copies == 0 {
            return Ok(CurveMonomial::Empty);
        }
        if gcd_i64(p, q) != 1 {
            return Err(SkeinError::NotPrimitive { p, q });
        }
        Ok(CurveMonomial::Curve {
            dir: SymmetricClass::of(ExponentPair::new(p, q)),
            copies,
        })
    }
}

impl fmt::Display for CurveMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveMonomial::Empty => write!(f, "empty"),
            CurveMonomial::Curve { dir, copies } => {
                write!(f, "curve{}^{}", dir.rep(), copies)
            }
        }
    }
}

/// A finite linear combination of multicurves.
#[derive(Clone, Debug, PartialEq)]
pub struct SkeinElement<F: CoeffField> {
    terms: BTreeMap<CurveMonomial, F>,
}

impl<F: CoeffField> SkeinElement<F> {
    pub fn zero() -> Self {
        SkeinElement { terms: BTreeMap::new() }
    }

    /// The empty multicurve, the unit of the algebra.
    pub fn empty() -> Self {
        Self::monomial(CurveMonomial::Empty)
    }

    pub fn monomial(m: CurveMonomial) -> Self {
        let mut e = Self::zero();
        e.add_term(m, F::one());
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (CurveMonomial, F)>>(iter: I) -> Self {
        let mut e = Self::zero();
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: CurveMonomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &CurveMonomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CurveMonomial, &F)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SkeinElement {
            terms: self.terms.iter().map(|(m, v)| (*m, v.mul(c))).collect(),
        }
    }
}

/// Coefficients `[c_0, ..., c_n]` of `T_n`, where `T_0 = 2`, `T_1 = x`
/// and `x T_n = T_{n+1} + T_{n−1}`.
pub fn chebyshev(n: usize) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![BigInt::from(2)];
    if n == 0 {
        return prev;
    }
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(1)];
    for _ in 1..n {
        // next = x*cur - prev
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] = c.clone();
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// The inverse basis change: `x^n = Σ_{k≥1} c_k T_k + c·1`, returned as
/// the map `k ↦ c_k` together with the unit coefficient `c`.
///
/// The unit is kept separate from `T_0 = 2·1` so all coefficients stay
/// integers.
pub fn power_to_chebyshev(n: usize) -> (BTreeMap<usize, BigInt>, BigInt) {
    // Iterate x^j = x * x^{j-1} in the basis {1, T_1, T_2, ...} using
    // x·1 = T_1, x·T_1 = T_2 + 2·1, x·T_k = T_{k+1} + T_{k-1}.
    let mut cheb: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut unit = BigInt::from(1);
    for _ in 0..n {
        let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut next_unit = BigInt::zero();
        let bump = |map: &mut BTreeMap<usize, BigInt>, k: usize, c: &BigInt| {
            let e = map.entry(k).or_insert_with(BigInt::zero);
            *e += c;
        };
        if !unit.is_zero() {
            bump(&mut next, 1, &unit);
        }
        for (k, c) in &cheb {
            match k {
                0 => unreachable!("unit tracked separately"),
                1 => {
                    bump(&mut next, 2, c);
                    next_unit += c * BigInt::from(2);
                }
                k => {
                    bump(&mut next, k + 1, c);
                    bump(&mut next, k - 1, c);
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        cheb = next;
        unit = next_unit;
    }
    (cheb, unit)
}

fn int_coeff<F: CoeffField>(c: &BigInt) -> F {
    F::from_rational(BigRational::from_integer(c.clone()))
}

/// Maps `n` parallel copies of the primitive curve in direction `dir`
/// into the symmetric basis via the Chebyshev expansion of `x^n`.
fn curve_power_to_symmetric<F: CoeffField>(dir: ExponentPair, n: u32) -> SymmetricElement<F> {
    let (cheb, unit) = power_to_chebyshev(n as usize);
    let mut out = SymmetricElement::unit().scale(&int_coeff::<F>(&unit));
    for (k, c) in &cheb {
        let at = ExponentPair::new(dir.p * *k as i64, dir.q * *k as i64);
        out.add_term(SymmetricClass::of(at), int_coeff(c));
    }
    out
}

/// The algebra isomorphism from the multicurve basis to the symmetric
/// basis of the quantum torus.
pub fn phi<F: CoeffField>(x: &SkeinElement<F>) -> SymmetricElement<F> {
    let mut out = SymmetricElement::zero();
    for (m, c) in x.iter() {
        let img = match m {
            CurveMonomial::Empty => SymmetricElement::unit(),
            CurveMonomial::Curve { dir, copies } => {
                curve_power_to_symmetric(dir.rep(), *copies)
            }
        };
        out = out.add(&img.scale(c));
    }
    out
}

/// The inverse isomorphism: each symmetric basis vector at `(p, q)` pulls
/// back to `T_gcd(p,q)` of the primitive curve in that direction.
pub fn phi_inv<F: CoeffField>(x: &SymmetricElement<F>) -> SkeinElement<F> {
    let mut out = SkeinElement::zero();
    for (class, c) in x.iter() {
        let r = class.rep();
        if r.is_origin() {
            // ẽ_{0,0} = 2∅
            out.add_term(CurveMonomial::Empty, c.mul(&F::from_int(2)));
            continue;
        }
        let g = gcd_i64(r.p, r.q);
        let dir = ExponentPair::new(r.p / g, r.q / g);
        for (j, t) in chebyshev(g as usize).iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let m = CurveMonomial::new(dir.p, dir.q, j as u32).expect("primitive direction");
            out.add_term(m, c.mul(&int_coeff(t)));
        }
    }
    out
}

/// A peripheral polynomial `Σ_i a_i(m) l^i` with `a_i` polynomials in the
/// meridian over the coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub struct PeripheralPoly<F: CoeffField> {
    coeffs: BTreeMap<usize, PolyOverField<F>>,
}

impl<F: CoeffField> PeripheralPoly<F> {
    pub fn zero() -> Self {
        PeripheralPoly { coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (usize, PolyOverField<F>)>>(iter: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, a) in iter {
            if !a.is_zero() {
                coeffs.insert(i, a);
            }
        }
        PeripheralPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `l`; `None` for the zero polynomial.
    pub fn l_degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, i: usize) -> PolyOverField<F> {
        self.coeffs.get(&i).cloned().unwrap_or_else(PolyOverField::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &PolyOverField<F>)> {
        self.coeffs.iter()
    }
}

/// Image of a polynomial in the meridian under the isomorphism: `m^k`
/// expands along the direction `(0, 1)`.
pub fn phi_poly_in_m<F: CoeffField>(p: &PolyOverField<F>) -> SymmetricElement<F> {
    let mut out = SymmetricElement::zero();
    for (k, c) in p.iter() {
        let img = curve_power_to_symmetric::<F>(ExponentPair::new(0, 1), *k as u32);
        out = out.add(&img.scale(c));
    }
    out
}

/// Converts a peripheral polynomial into the symmetric algebra:
/// `Σ_i φ(a_i(m)) · φ(l)^i` with the meridian image on the left and the
/// products taken left-to-right.
pub fn peripheral_to_etilde<F: CoeffField>(q: &PeripheralPoly<F>) -> SymmetricElement<F> {
    let l_img = SymmetricElement::basis_at(1, 0);
    let mut out = SymmetricElement::zero();
    for (i, a) in q.iter() {
        let mut acc = phi_poly_in_m(a);
        for _ in 0..*i {
            acc = acc.mul(&l_img);
        }
        out = out.add(&acc);
    }
    out
}
