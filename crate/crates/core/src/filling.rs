//! The Dehn-filling rewriting engine: filling relations, band reduction,
//! reduction along the filling direction, and the full analysis
//! producing excluded slopes, spanning sets and dimension bounds, with
//! machine-checkable soundness certificates.
//!
//! Every elimination is recorded as a certificate step; replaying the
//! steps through the symmetric-basis product reconstructs
//! `input − output` as an explicit left combination of translated
//! annihilating relations and filling relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::annihilator::AnnihilatingRelation;
use crate::coeff::CoeffField;
use crate::lattice::{
    band_forms, band_pair, count_classes, enumerate_classes, slopes, BandPair, LatticeError,
    NewtonPolygon, Slope,
};
use crate::qtorus::{ExponentPair, SymmetricClass, SymmetricElement};
use crate::skein_t2::gcd_i64;

/// Errors from the filling analysis.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FillingError {
    #[error("slope {slope} is an edge slope of the polygon; no band reduction exists")]
    NotReducible { slope: Slope },
    #[error("certificate replay does not reconstruct input - output at generator {gen}")]
    CertificateMismatch { gen: usize },
    #[error("invalid slope: {0}")]
    BadSlope(String),
    #[error("module vector refers to generator {gen} but only {count} relations were given")]
    UnknownGenerator { gen: usize, count: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A filling direction: coprime `(p, q)` with `p > 0`, or `(0, 1)`;
/// the displayed slope is `q/p` (infinity for the latter).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FillingSlope {
    p: i64,
    q: i64,
}

impl FillingSlope {
    pub fn new(p: i64, q: i64) -> Result<Self, FillingError> {
        if p == 0 && q == 0 {
            return Err(FillingError::BadSlope("(0, 0) is not a direction".into()));
        }
        if gcd_i64(p, q) != 1 {
            return Err(FillingError::BadSlope(format!(
                "({p}, {q}) is not coprime"
            )));
        }
        if p < 0 || (p == 0 && q < 0) {
            Ok(FillingSlope { p: -p, q: -q })
        } else {
            Ok(FillingSlope { p, q })
        }
    }

    pub fn from_slope(s: Slope) -> Self {
        match s {
            Slope::Infinity => FillingSlope { p: 0, q: 1 },
            Slope::Finite { num, den } => FillingSlope { p: den, q: num },
        }
    }

    pub fn parse(text: &str) -> Result<Self, FillingError> {
        Slope::parse(text)
            .map(Self::from_slope)
            .ok_or_else(|| FillingError::BadSlope(format!("cannot parse slope '{text}'")))
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn slope(&self) -> Slope {
        Slope::new(self.q, self.p)
    }

    pub fn direction(&self) -> ExponentPair {
        ExponentPair::new(self.p, self.q)
    }
}

impl fmt::Display for FillingSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.slope())
    }
}

/// A formal sum `Σ_i x_i · f_i` of symmetric-algebra coefficients over
/// the generators, indexed by generator position. Zero components are
/// not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector<F: CoeffField> {
    components: BTreeMap<usize, SymmetricElement<F>>,
}

impl<F: CoeffField> ModuleVector<F> {
    pub fn zero() -> Self {
        ModuleVector { components: BTreeMap::new() }
    }

    pub fn from_component(gen: usize, x: SymmetricElement<F>) -> Self {
        let mut v = Self::zero();
        v.set_component(gen, x);
        v
    }

    pub fn set_component(&mut self, gen: usize, x: SymmetricElement<F>) {
        if x.is_zero() {
            self.components.remove(&gen);
        } else {
            self.components.insert(gen, x);
        }
    }

    pub fn component(&self, gen: usize) -> SymmetricElement<F> {
        self.components.get(&gen).cloned().unwrap_or_else(SymmetricElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &SymmetricElement<F>)> {
        self.components.iter()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (gen, x) in &rhs.components {
            let s = out.component(*gen).add(x);
            out.set_component(*gen, s);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (gen, x) in &rhs.components {
            let s = out.component(*gen).sub(x);
            out.set_component(*gen, s);
        }
        out
    }
}

/// One recorded elimination: which generator it acts on, which relation
/// was applied (a translated annihilating relation or a filling relation
/// based at a lattice point), and the scalar it was applied with.
#[derive(Clone, Debug, PartialEq)]
pub enum AppliedRelation {
    Translated { mu: i64, nu: i64 },
    Dehn { base: ExponentPair },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertStep<F: CoeffField> {
    pub gen: usize,
    pub applied: AppliedRelation,
    pub scale: F,
}

/// An ordered record of eliminations. Replaying the steps yields
/// `input − output` exactly; see [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ReductionCertificate<F: CoeffField> {
    pub steps: Vec<CertStep<F>>,
}

impl<F: CoeffField> ReductionCertificate<F> {
    pub fn empty() -> Self {
        ReductionCertificate { steps: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn extend(&mut self, other: ReductionCertificate<F>) {
        self.steps.extend(other.steps);
    }
}

/// The three-term relation imposed by filling along `(p, q)`, based at
/// `(α, β)`:
///
/// ```text
/// A^{pβ−qα} ẽ_{α+p, β+q} + A^{qα−pβ} ẽ_{α−p, β−q} + (A² + A⁻²) ẽ_{α,β}
/// ```
///
/// It annihilates every vector of the filled module, and equals the
/// product `(ẽ_{p,q} + (A² + A⁻²)·1) · ẽ_{α,β}` in the symmetric algebra.
pub fn dehn_relation<F: CoeffField>(
    s: FillingSlope,
    alpha: i64,
    beta: i64,
) -> SymmetricElement<F> {
    let (p, q) = (s.p(), s.q());
    let mut out = SymmetricElement::zero();
    out.add_term(
        SymmetricClass::of(ExponentPair::new(alpha + p, beta + q)),
        F::a_power(p * beta - q * alpha),
    );
    out.add_term(
        SymmetricClass::of(ExponentPair::new(alpha - p, beta - q)),
        F::a_power(q * alpha - p * beta),
    );
    out.add_term(
        SymmetricClass::of(ExponentPair::new(alpha, beta)),
        F::a_power(2).add(&F::a_power(-2)),
    );
    out
}

/// The filling operator `ẽ_{p,q} + (A² + A⁻²)·1`, whose product with any
/// symmetric basis vector is the corresponding filling relation.
fn dehn_operator<F: CoeffField>(s: FillingSlope) -> SymmetricElement<F> {
    SymmetricElement::basis_at(s.p(), s.q())
        .add(&SymmetricElement::unit().scale(&F::a_power(2).add(&F::a_power(-2))))
}

fn lam_of(bp: &BandPair, class: SymmetricClass) -> i64 {
    bp.lam_at(class.rep()).abs()
}

/// Reduces a combination `x · f` against the generator's annihilating
/// relation until every class satisfies `|λ| ≤ M`. Reduction fires only
/// for `|λ| > M`: each step rewrites the class where `|λ|` is maximal
/// (ties broken by class order) through the translated relation whose
/// unique λ-maximal term lands on it.
///
/// A relation whose polygon is the single point at the origin forces the
/// generator to vanish, so everything reduces to zero.
pub fn band_reduce<F: CoeffField>(
    rel: &AnnihilatingRelation<F>,
    s: FillingSlope,
    x: &SymmetricElement<F>,
) -> Result<(SymmetricElement<F>, ReductionCertificate<F>), FillingError> {
    let mut cert = ReductionCertificate::empty();
    if let NewtonPolygon::Point(at) = rel.polygon() {
        debug_assert!(at.is_origin(), "symmetric point polygon sits at the origin");
        // c₀ e_{0,0} · f = 0 with c₀ ≠ 0, so f = 0.
        let c0 = rel.coeff_at(ExponentPair::new(0, 0));
        let c0_inv = c0.inv().expect("vertex coefficient is nonzero");
        for (class, t) in x.iter() {
            let rep = class.rep();
            cert.steps.push(CertStep {
                gen: 0,
                applied: AppliedRelation::Translated { mu: rep.p, nu: rep.q },
                scale: t.mul(&c0_inv),
            });
        }
        return Ok((SymmetricElement::zero(), cert));
    }
    let (bp, unique) = band_pair(s.p(), s.q(), rel.polygon())?;
    if !unique {
        return Err(FillingError::NotReducible { slope: s.slope() });
    }
    let vmax = rel
        .polygon()
        .vertices()
        .into_iter()
        .find(|v| bp.lam_at(*v) == bp.m)
        .expect("a vertex attains the maximum");
    let mut out = x.clone();
    loop {
        let target = out
            .iter()
            .filter(|(class, _)| lam_of(&bp, **class) > bp.m)
            .max_by_key(|(class, _)| (lam_of(&bp, **class), std::cmp::Reverse(**class)))
            .map(|(class, t)| (*class, t.clone()));
        let Some((class, t)) = target else {
            return Ok((out, cert));
        };
        let rep = class.rep();
        let w = if bp.lam_at(rep) >= 0 { rep } else { rep.neg() };
        let (mu, nu) = (w.p - vmax.p, w.q - vmax.q);
        let translated = crate::annihilator::translate_relation(rel, mu, nu);
        let kappa = translated.coeff(class);
        debug_assert!(!kappa.is_zero(), "λ-maximal coefficient is a vertex coefficient");
        let sigma = t.mul(&kappa.inv().expect("nonzero vertex coefficient"));
        out = out.sub(&translated.scale(&sigma));
        debug_assert!(out.coeff(class).is_zero());
        cert.steps.push(CertStep {
            gen: 0,
            applied: AppliedRelation::Translated { mu, nu },
            scale: sigma,
        });
    }
}

/// Reduces a combination with the filling relations until every class
/// has `ε ∈ {0, 1}` on one of its representatives, preserving `λ`
/// term-by-term (the filling relation shifts by `(p, q)` and `λ(p,q)=0`).
pub fn epsilon_reduce<F: CoeffField>(
    s: FillingSlope,
    x: &SymmetricElement<F>,
) -> (SymmetricElement<F>, ReductionCertificate<F>) {
    let (_, eps) = band_forms(s.p(), s.q()).expect("filling slope is coprime");
    let eps_at = |at: ExponentPair| eps.0 * at.p + eps.1 * at.q;
    let mut cert = ReductionCertificate::empty();
    let mut out = x.clone();
    loop {
        let target = out
            .iter()
            .filter(|(class, _)| eps_at(class.rep()).abs() > 1)
            .max_by_key(|(class, _)| (eps_at(class.rep()).abs(), std::cmp::Reverse(**class)))
            .map(|(class, t)| (*class, t.clone()));
        let Some((class, t)) = target else {
            return (out, cert);
        };
        let rep = class.rep();
        let w = if eps_at(rep) >= 2 { rep } else { rep.neg() };
        debug_assert!(eps_at(w) >= 2);
        let base = ExponentPair::new(w.p - s.p(), w.q - s.q());
        let relation = dehn_relation::<F>(s, base.p, base.q);
        let kappa = relation.coeff(class);
        debug_assert!(!kappa.is_zero());
        let sigma = t.mul(&kappa.inv().expect("filling coefficient is a power of A"));
        out = out.sub(&relation.scale(&sigma));
        debug_assert!(out.coeff(class).is_zero());
        cert.steps.push(CertStep {
            gen: 0,
            applied: AppliedRelation::Dehn { base },
            scale: sigma,
        });
    }
}

/// Union of the edge slopes of all relation polygons: the finite set of
/// slopes the analysis cannot handle.
pub fn excluded_slopes<F: CoeffField>(
    relations: &[AnnihilatingRelation<F>],
) -> BTreeSet<Slope> {
    let mut out = BTreeSet::new();
    for rel in relations {
        out.extend(slopes(rel.polygon()));
    }
    out
}

/// Per-generator outcome of a filling analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorAnalysis {
    /// True iff the relation forces the generator to vanish (point
    /// polygon at the origin); such generators contribute bound 0.
    pub zero: bool,
    pub band: Option<BandPair>,
    pub classes: Vec<SymmetricClass>,
    pub bound: u64,
}

/// The outcome of analysing one filling slope against a family of
/// annihilating relations.
#[derive(Clone, Debug, PartialEq)]
pub struct FillingReport {
    pub slope: FillingSlope,
    pub excluded: bool,
    pub excluded_slopes: BTreeSet<Slope>,
    pub generators: Vec<GeneratorAnalysis>,
    pub total_bound: Option<u64>,
}

/// Analyses a filling slope: if it is an edge slope of any polygon the
/// report only says so; otherwise each generator gets its band data, the
/// explicit spanning classes, and the bound `count_classes(M)`.
pub fn analyze_filling<F: CoeffField>(
    relations: &[AnnihilatingRelation<F>],
    s: FillingSlope,
) -> Result<FillingReport, FillingError> {
    let excluded_set = excluded_slopes(relations);
    if excluded_set.contains(&s.slope()) {
        return Ok(FillingReport {
            slope: s,
            excluded: true,
            excluded_slopes: excluded_set,
            generators: Vec::new(),
            total_bound: None,
        });
    }
    let mut generators = Vec::with_capacity(relations.len());
    let mut total = 0u64;
    for rel in relations {
        if let NewtonPolygon::Point(_) = rel.polygon() {
            generators.push(GeneratorAnalysis {
                zero: true,
                band: None,
                classes: Vec::new(),
                bound: 0,
            });
            continue;
        }
        let (bp, unique) = band_pair(s.p(), s.q(), rel.polygon())?;
        debug_assert!(unique, "slope not excluded implies a unique maximum");
        let classes = enumerate_classes(&bp);
        let bound = count_classes(bp.m);
        debug_assert_eq!(bound, classes.len() as u64);
        total += bound;
        generators.push(GeneratorAnalysis { zero: false, band: Some(bp), classes, bound });
    }
    Ok(FillingReport {
        slope: s,
        excluded: false,
        excluded_slopes: excluded_set,
        generators,
        total_bound: Some(total),
    })
}

/// Band reduction followed by reduction along the filling direction, for
/// every generator component. The output is supported on the spanning
/// classes of the report and the certificate replays exactly.
pub fn reduce_full<F: CoeffField>(
    relations: &[AnnihilatingRelation<F>],
    s: FillingSlope,
    v: &ModuleVector<F>,
) -> Result<(ModuleVector<F>, ReductionCertificate<F>), FillingError> {
    let mut out = ModuleVector::zero();
    let mut cert = ReductionCertificate::empty();
    for (gen, x) in v.iter() {
        let rel = relations.get(*gen).ok_or(FillingError::UnknownGenerator {
            gen: *gen,
            count: relations.len(),
        })?;
        let (banded, mut c1) = band_reduce(rel, s, x)?;
        for step in &mut c1.steps {
            step.gen = *gen;
        }
        cert.extend(c1);
        let (normal, mut c2) = epsilon_reduce(s, &banded);
        for step in &mut c2.steps {
            step.gen = *gen;
        }
        cert.extend(c2);
        out.set_component(*gen, normal);
    }
    Ok((out, cert))
}

/// Replays a certificate through the symmetric-algebra product and
/// checks that the accumulated combination equals `input − output`
/// exactly.
pub fn verify_certificate<F: CoeffField>(
    relations: &[AnnihilatingRelation<F>],
    s: FillingSlope,
    input: &ModuleVector<F>,
    output: &ModuleVector<F>,
    cert: &ReductionCertificate<F>,
) -> Result<(), FillingError> {
    let mut acc = ModuleVector::zero();
    let operator = dehn_operator::<F>(s);
    for step in &cert.steps {
        let form = match &step.applied {
            AppliedRelation::Translated { mu, nu } => SymmetricElement::basis_at(*mu, *nu)
                .mul(&relations[step.gen].to_symmetric_element()),
            AppliedRelation::Dehn { base } => {
                operator.mul(&SymmetricElement::basis_at(base.p, base.q))
            }
        };
        let c = acc.component(step.gen).add(&form.scale(&step.scale));
        acc.set_component(step.gen, c);
    }
    let diff = input.sub(output);
    if diff == acc {
        Ok(())
    } else {
        let gen = diff
            .iter()
            .map(|(g, _)| *g)
            .chain(acc.iter().map(|(g, _)| *g))
            .find(|g| diff.component(*g) != acc.component(*g))
            .unwrap_or(0);
        Err(FillingError::CertificateMismatch { gen })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annihilator::validate_relation;
    use crate::coeff::RatFunc;

    type S = SymmetricElement<RatFunc>;

    fn loop_scalar() -> RatFunc {
        RatFunc::a_power(2).add(&RatFunc::a_power(-2))
    }

    fn seg_relation(c0: RatFunc) -> AnnihilatingRelation<RatFunc> {
        validate_relation(vec![((1, 0), RatFunc::one()), ((0, 0), c0)]).unwrap()
    }

    #[test]
    fn slope_canonicalization_and_parsing() {
        let s = FillingSlope::new(-2, 1).unwrap();
        assert_eq!((s.p(), s.q()), (2, -1));
        assert_eq!(s.to_string(), "-1/2");
        assert_eq!(FillingSlope::parse("inf").unwrap(), FillingSlope::new(0, 1).unwrap());
        assert_eq!(FillingSlope::parse("-1/2").unwrap(), FillingSlope::new(2, -1).unwrap());
        assert!(FillingSlope::new(2, 4).is_err());
        assert!(FillingSlope::parse("x").is_err());
    }

    #[test]
    fn dehn_relation_examples() {
        let s = FillingSlope::new(0, 1).unwrap();
        // based at the origin the two shifted terms merge
        let d = dehn_relation::<RatFunc>(s, 0, 0);
        let mut expect = S::basis_at(0, 1).scale(&RatFunc::from_int(2));
        expect = expect.add(&S::basis_at(0, 0).scale(&loop_scalar()));
        assert_eq!(d, expect);

        // generic base point
        let d = dehn_relation::<RatFunc>(s, 1, 1);
        let expect = S::basis_at(1, 2)
            .scale(&RatFunc::a_power(-1))
            .add(&S::basis_at(1, 0).scale(&RatFunc::a_power(1)))
            .add(&S::basis_at(1, 1).scale(&loop_scalar()));
        assert_eq!(d, expect);

        // on the diagonal the twists vanish
        let s2 = FillingSlope::new(3, 2).unwrap();
        let d = dehn_relation::<RatFunc>(s2, 3, 2);
        let expect = S::basis_at(6, 4)
            .add(&S::basis_at(0, 0))
            .add(&S::basis_at(3, 2).scale(&loop_scalar()));
        assert_eq!(d, expect);
    }

    #[test]
    fn dehn_relation_is_the_operator_product() {
        for (p, q) in [(0, 1), (1, 0), (2, -1), (3, 5)] {
            let s = FillingSlope::new(p, q).unwrap();
            for (a, b) in [(0, 0), (1, 1), (-2, 3), (4, -1)] {
                let direct = dehn_relation::<RatFunc>(s, a, b);
                let via_product = dehn_operator::<RatFunc>(s).mul(&S::basis_at(a, b));
                assert_eq!(direct, via_product, "({p},{q}) at ({a},{b})");
            }
        }
    }

    #[test]
    fn band_reduce_worked_example() {
        // relation with support ±(1,0) and (0,0), filling the meridian
        let c0 = RatFunc::a_power(3); // arbitrary nonzero constant term
        let rel = seg_relation(c0.clone());
        let s = FillingSlope::new(0, 1).unwrap();
        let input = S::basis_at(2, 5);
        let (out, cert) = band_reduce(&rel, s, &input).unwrap();
        let expect = S::basis_at(0, 5)
            .scale(&RatFunc::a_power(10).neg())
            .add(&S::basis_at(1, 5).scale(&RatFunc::a_power(5).mul(&c0).neg()));
        assert_eq!(out, expect);
        assert_eq!(cert.steps.len(), 1);
        assert!(matches!(
            cert.steps[0].applied,
            AppliedRelation::Translated { mu: 1, nu: 5 }
        ));
        verify_certificate(
            std::slice::from_ref(&rel),
            s,
            &ModuleVector::from_component(0, input),
            &ModuleVector::from_component(0, out),
            &cert,
        )
        .unwrap();
    }

    #[test]
    fn in_band_input_is_unchanged() {
        let rel = seg_relation(RatFunc::one());
        let s = FillingSlope::new(0, 1).unwrap();
        let input = S::basis_at(1, 7).add(&S::basis_at(0, -3));
        let (out, cert) = band_reduce(&rel, s, &input).unwrap();
        assert_eq!(out, input);
        assert!(cert.is_empty());
    }

    #[test]
    fn point_relation_kills_the_generator() {
        let rel = validate_relation(vec![((0, 0), RatFunc::from_int(2))]).unwrap();
        let s = FillingSlope::new(0, 1).unwrap();
        let input = S::basis_at(4, -7).scale(&RatFunc::a_power(1));
        let (out, cert) = band_reduce(&rel, s, &input).unwrap();
        assert!(out.is_zero());
        verify_certificate(
            std::slice::from_ref(&rel),
            s,
            &ModuleVector::from_component(0, input),
            &ModuleVector::zero(),
            &cert,
        )
        .unwrap();
    }

    #[test]
    fn excluded_slope_is_rejected() {
        let rel = seg_relation(RatFunc::one()); // segment of slope 0
        let s = FillingSlope::new(1, 0).unwrap();
        assert_eq!(
            band_reduce(&rel, s, &S::basis_at(3, 0)).unwrap_err(),
            FillingError::NotReducible { slope: Slope::new(0, 1) }
        );
    }

    #[test]
    fn epsilon_reduce_meridian_example() {
        let s = FillingSlope::new(0, 1).unwrap();
        let (out, cert) = epsilon_reduce(s, &S::basis_at(0, 3));
        let c = loop_scalar();
        let expect = S::basis_at(0, 0)
            .scale(&c)
            .add(&S::basis_at(0, 1).scale(&c.mul(&c).sub(&RatFunc::one())));
        assert_eq!(out, expect);
        assert_eq!(cert.steps.len(), 2);
        verify_certificate(
            &[],
            s,
            &ModuleVector::from_component(0, S::basis_at(0, 3)),
            &ModuleVector::from_component(0, out),
            &cert,
        )
        .unwrap();
    }

    #[test]
    fn epsilon_window_terms_are_unchanged() {
        let s = FillingSlope::new(0, 1).unwrap();
        // β ∈ {-1, 0, 1} on some representative stays put
        let x = S::basis_at(2, 1).add(&S::basis_at(0, 1)).add(&S::basis_at(5, -1));
        let (out, cert) = epsilon_reduce(s, &x);
        assert_eq!(out, x);
        assert!(cert.is_empty());
    }

    #[test]
    fn analyze_filling_examples() {
        // support ±(1,0) and (0,0): a segment with slope set {0}
        let rel = seg_relation(RatFunc::one());
        let s_inf = FillingSlope::new(0, 1).unwrap();
        let report = analyze_filling(std::slice::from_ref(&rel), s_inf).unwrap();
        assert!(!report.excluded);
        assert_eq!(report.total_bound, Some(5));
        let ga = &report.generators[0];
        assert_eq!(ga.bound, 5);
        assert_eq!(ga.band.unwrap().m, 1);
        let expect: Vec<SymmetricClass> = [
            ExponentPair::new(0, 0),
            ExponentPair::new(0, 1),
            ExponentPair::new(1, -1),
            ExponentPair::new(1, 0),
            ExponentPair::new(1, 1),
        ]
        .into_iter()
        .map(SymmetricClass::of)
        .collect();
        assert_eq!(ga.classes, expect);

        let s_zero = FillingSlope::new(1, 0).unwrap();
        let report = analyze_filling(std::slice::from_ref(&rel), s_zero).unwrap();
        assert!(report.excluded);
        assert_eq!(report.total_bound, None);
    }

    #[test]
    fn excluded_slopes_take_unions() {
        let square = validate_relation(vec![
            ((1, 0), RatFunc::one()),
            ((0, 1), RatFunc::from_int(-1)),
        ])
        .unwrap();
        let wide = validate_relation(vec![
            ((2, 0), RatFunc::one()),
            ((0, 1), RatFunc::from_int(-1)),
            ((0, 0), RatFunc::from_int(2)),
        ])
        .unwrap();
        let set = excluded_slopes(&[square, wide]);
        let expect: BTreeSet<Slope> = [
            Slope::new(1, 1),
            Slope::new(-1, 1),
            Slope::new(1, 2),
            Slope::new(-1, 2),
        ]
        .into_iter()
        .collect();
        assert_eq!(set, expect);

        let point = validate_relation(vec![((0, 0), RatFunc::one())]).unwrap();
        assert!(excluded_slopes(std::slice::from_ref(&point)).is_empty());
    }

    #[test]
    fn reduce_full_composes_and_certifies() {
        let rel = seg_relation(RatFunc::one());
        let s = FillingSlope::new(0, 1).unwrap();
        let input = ModuleVector::from_component(0, S::basis_at(2, 5));
        let (out, cert) = reduce_full(std::slice::from_ref(&rel), s, &input).unwrap();
        // support within |α| ≤ 1, β ∈ {0, 1} as classes
        let report = analyze_filling(std::slice::from_ref(&rel), s).unwrap();
        let allowed: BTreeSet<_> = report.generators[0].classes.iter().copied().collect();
        for (_, x) in out.iter() {
            for (class, _) in x.iter() {
                assert!(allowed.contains(class), "class {class} escaped the bands");
            }
        }
        verify_certificate(std::slice::from_ref(&rel), s, &input, &out, &cert).unwrap();

        // already-normal input passes through
        let normal = ModuleVector::from_component(0, S::basis_at(1, 1));
        let (out2, cert2) = reduce_full(std::slice::from_ref(&rel), s, &normal).unwrap();
        assert_eq!(out2, normal);
        assert!(cert2.is_empty());

        // zero input stays zero
        let (out3, cert3) = reduce_full(std::slice::from_ref(&rel), s, &ModuleVector::zero()).unwrap();
        assert!(out3.is_zero());
        assert!(cert3.is_empty());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let rel = seg_relation(RatFunc::one());
        let s = FillingSlope::new(0, 1).unwrap();
        let input = ModuleVector::from_component(0, S::basis_at(2, 5));
        let (out, mut cert) = reduce_full(std::slice::from_ref(&rel), s, &input).unwrap();
        cert.steps[0].scale = cert.steps[0].scale.mul(&RatFunc::from_int(3));
        assert!(matches!(
            verify_certificate(std::slice::from_ref(&rel), s, &input, &out, &cert),
            Err(FillingError::CertificateMismatch { .. })
        ));
    }
}
