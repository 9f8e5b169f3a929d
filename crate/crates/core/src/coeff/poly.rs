//! Univariate polynomials over an abstract coefficient field, with the
//! small exact matrices used for annihilator verification.

use std::collections::BTreeMap;
use std::fmt;

use super::field::CoeffField;
use super::CoeffError;

/// A polynomial in one variable over `F`, stored sparsely.
///
/// No zero coefficients are kept; the zero polynomial has an empty map and
/// `degree() == None` (the degree sentinel is a genuine absence, not a
/// fake integer).
#[derive(Clone, Debug, PartialEq)]
pub struct PolyOverField<F: CoeffField> {
    coeffs: BTreeMap<usize, F>,
}

impl<F: CoeffField> PolyOverField<F> {
    pub fn zero() -> Self {
        PolyOverField { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        PolyOverField { coeffs }
    }

    /// The monomial `x^k`.
    pub fn var_pow(k: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, F::one());
        PolyOverField { coeffs }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (usize, F)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in iter {
            p.add_coeff(k, c);
        }
        p
    }

    fn add_coeff(&mut self, k: usize, c: F) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&k) {
            None => {
                self.coeffs.insert(k, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.coeffs.insert(k, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map_or(false, |c| c.is_one())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(&k).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_coeff(&self) -> F {
        self.degree().map(|d| self.coeff(d)).unwrap_or_else(F::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &F)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_coeff(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_coeff(*k, c.neg());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in &self.coeffs {
            for (j, b) in &rhs.coeffs {
                out.add_coeff(i + j, a.mul(b));
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        PolyOverField {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyOverField {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.mul(c))).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        PolyOverField {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Polynomial division with remainder; error if `den` is zero.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self), CoeffError> {
        let dd = den.degree().ok_or(CoeffError::DivisionByZero)?;
        let lead_inv = den.leading_coeff().inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.coeff(rd).mul(&lead_inv);
            let k = rd - dd;
            quot.add_coeff(k, c.clone());
            let factor = Self::from_coeffs([(k, c)]).mul(den);
            rem = rem.sub(&factor);
        }
        Ok((quot, rem))
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn exact_div(&self, den: &Self) -> Self {
        let (q, r) = self.div_rem(den).expect("exact_div by zero");
        assert!(r.is_zero(), "exact_div left a remainder");
        q
    }

    /// Monic gcd; dispatches to the field's preferred algorithm.
    /// gcd(0, 0) = 0.
    pub fn gcd_monic(&self, rhs: &Self) -> Self {
        F::poly_gcd_monic(self, rhs)
    }

    /// Monic least common multiple.
    pub fn lcm_monic(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g = self.gcd_monic(rhs);
        let prod = self.mul(rhs);
        let l = prod.exact_div(&g);
        let li = l.leading_coeff().inv().expect("nonzero lcm");
        l.scale(&li)
    }

    /// Substitutes `x := value` within `F`.
    pub fn eval(&self, value: &F) -> F {
        let mut acc = F::zero();
        let mut last = match self.degree() {
            None => return acc,
            Some(d) => d,
        };
        // Horner from the top degree down.
        for (k, c) in self.coeffs.iter().rev() {
            for _ in *k..last {
                acc = acc.mul(value);
            }
            // first iteration: last == k, no multiplication happens yet
            acc = acc.add(c);
            last = *k;
        }
        for _ in 0..last {
            acc = acc.mul(value);
        }
        acc
    }
}

/// A dense rows-by-cols matrix with entries in `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: CoeffField> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: CoeffField> Matrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, CoeffError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(CoeffError::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut F {
        &mut self.entries[i * self.cols + j]
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, CoeffError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(CoeffError::Dimension(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, CoeffError> {
        if self.cols != rhs.rows {
            return Err(CoeffError::Dimension(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = F::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, CoeffError> {
        if self.cols != v.len() {
            return Err(CoeffError::Dimension(format!(
                "mul {}x{} with vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = F::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(&v[k]));
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        }
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

impl<F: CoeffField> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Euclid's algorithm with every remainder rescaled to be monic; the
/// default gcd for fields without a faster route.
pub(crate) fn monic_euclid<F: CoeffField>(
    a: &PolyOverField<F>,
    b: &PolyOverField<F>,
) -> PolyOverField<F> {
    let monic = |p: PolyOverField<F>| match p.leading_coeff().inv() {
        Ok(li) => p.scale(&li),
        Err(_) => p, // zero polynomial
    };
    let mut a = monic(a.clone());
    let mut b = monic(b.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b).expect("nonzero divisor");
        a = b;
        b = monic(r);
    }
    a
}

/// Substitutes a square matrix for the polynomial variable; the constant
/// term contributes a multiple of the identity.
pub fn poly_eval_matrix<F: CoeffField>(
    p: &PolyOverField<F>,
    mx: &Matrix<F>,
) -> Result<Matrix<F>, CoeffError> {
    if !mx.is_square() {
        return Err(CoeffError::Dimension(format!(
            "matrix substitution needs a square matrix, got {}x{}",
            mx.rows(),
            mx.cols()
        )));
    }
    let n = mx.rows();
    let d = match p.degree() {
        None => return Ok(Matrix::zero(n, n)),
        Some(d) => d,
    };
    // Horner: acc = ((c_d M + c_{d-1} I) M + ...) + c_0 I.
    let mut acc = Matrix::identity(n).scale(&p.coeff(d));
    for k in (0..d).rev() {
        acc = acc.mul(mx)?;
        acc = acc.add(&Matrix::identity(n).scale(&p.coeff(k)))?;
    }
    Ok(acc)
}
