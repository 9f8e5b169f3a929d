//! Document record types and conversions.
//!
//! Every file format is JSON with scalars as canonical strings in the
//! expression grammar. Record fields are declared alphabetically and the
//! CLI serializes through `serde_json::Value`, so emitted documents have
//! sorted keys and are byte-stable across runs.

use serde::{Deserialize, Serialize};

use crate::annihilator::{
    validate_relation, AnnihilatingRelation, AnnihilatorError, KnotPresentation,
};
use crate::coeff::{parse_poly_in_m, parse_scalar, CoeffError, CoeffField};
use crate::coeff::{fraction_string, PolyOverField};
use crate::qtorus::{ExponentPair, SymmetricClass, SymmetricElement, TorusElement};
use crate::skein_t2::{CurveMonomial, PeripheralPoly, SkeinElement, SkeinError};

/// Errors from document conversion.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum DocError {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error("record ({p}, {q}) is not a canonical class representative")]
    NonCanonical { p: i64, q: i64 },
    #[error("{0}")]
    Invalid(String),
}

/// One term of a torus or symmetric element document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub p: i64,
    pub q: i64,
}

/// One term of a multicurve element document: `n` parallel copies of the
/// primitive curve in direction `(p, q)`; the empty curve is `n = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeinTermRecord {
    pub coeff: String,
    pub n: u32,
    pub p: i64,
    pub q: i64,
}

/// A symmetric relation document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub terms: Vec<TermRecord>,
}

/// A module presentation document. `longitude_action[i][j]` is the
/// coefficient of generator `i` in the longitude image of generator `j`,
/// a polynomial in `A` and `m` (and `m2` in the localized case).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub coeff: String,
    pub generators: Vec<String>,
    pub longitude_action: Vec<Vec<String>>,
    pub target: String,
}

/// One coefficient of a peripheral polynomial document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeripheralRecord {
    pub a: String,
    pub l_degree: usize,
}

pub fn symmetric_element_to_records<F: CoeffField>(
    x: &SymmetricElement<F>,
) -> Vec<TermRecord> {
    x.iter()
        .map(|(class, c)| TermRecord {
            coeff: c.to_string(),
            p: class.rep().p,
            q: class.rep().q,
        })
        .collect()
}

pub fn records_to_symmetric_element<F: CoeffField>(
    records: &[TermRecord],
) -> Result<SymmetricElement<F>, DocError> {
    let mut out = SymmetricElement::zero();
    for r in records {
        let at = ExponentPair::new(r.p, r.q);
        if !SymmetricClass::is_canonical(at) {
            return Err(DocError::NonCanonical { p: r.p, q: r.q });
        }
        out.add_term(SymmetricClass::of(at), parse_scalar::<F>(&r.coeff)?);
    }
    Ok(out)
}

pub fn torus_element_to_records<F: CoeffField>(x: &TorusElement<F>) -> Vec<TermRecord> {
    x.iter()
        .map(|(at, c)| TermRecord { coeff: c.to_string(), p: at.p, q: at.q })
        .collect()
}

pub fn records_to_torus_element<F: CoeffField>(
    records: &[TermRecord],
) -> Result<TorusElement<F>, DocError> {
    let mut out = TorusElement::zero();
    for r in records {
        out.add_term(ExponentPair::new(r.p, r.q), parse_scalar::<F>(&r.coeff)?);
    }
    Ok(out)
}

pub fn skein_element_to_records<F: CoeffField>(x: &SkeinElement<F>) -> Vec<SkeinTermRecord> {
    x.iter()
        .map(|(m, c)| match m {
            CurveMonomial::Empty => SkeinTermRecord {
                coeff: c.to_string(),
                n: 0,
                p: 0,
                q: 0,
            },
            CurveMonomial::Curve { dir, copies } => SkeinTermRecord {
                coeff: c.to_string(),
                n: *copies,
                p: dir.rep().p,
                q: dir.rep().q,
            },
        })
        .collect()
}

pub fn records_to_skein_element<F: CoeffField>(
    records: &[SkeinTermRecord],
) -> Result<SkeinElement<F>, DocError> {
    let mut out = SkeinElement::zero();
    for r in records {
        let m = if r.n == 0 {
            CurveMonomial::Empty
        } else {
            CurveMonomial::new(r.p, r.q, r.n)?
        };
        out.add_term(m, parse_scalar::<F>(&r.coeff)?);
    }
    Ok(out)
}

pub fn relation_to_doc<F: CoeffField>(rel: &AnnihilatingRelation<F>) -> RelationDoc {
    RelationDoc {
        terms: rel
            .terms()
            .map(|(class, c)| TermRecord {
                coeff: c.to_string(),
                p: class.rep().p,
                q: class.rep().q,
            })
            .collect(),
    }
}

pub fn doc_to_relation<F: CoeffField>(
    doc: &RelationDoc,
) -> Result<AnnihilatingRelation<F>, AnnihilatorError> {
    let mut raw = Vec::with_capacity(doc.terms.len());
    for r in &doc.terms {
        raw.push(((r.p, r.q), parse_scalar::<F>(&r.coeff)?));
    }
    validate_relation(raw)
}

pub fn doc_to_presentation<F: CoeffField>(
    doc: &PresentationDoc,
) -> Result<KnotPresentation<F>, AnnihilatorError> {
    let mut longitude = Vec::with_capacity(doc.longitude_action.len());
    for row in &doc.longitude_action {
        let mut out_row = Vec::with_capacity(row.len());
        for entry in row {
            out_row.push(parse_poly_in_m::<F>(entry)?);
        }
        longitude.push(out_row);
    }
    KnotPresentation::new(doc.generators.clone(), longitude)
}

/// Renders a polynomial in `m` as a canonical grammar string, clearing
/// coefficient-level denominators into a trailing division when needed.
pub fn poly_in_m_to_string<F: CoeffField>(p: &PolyOverField<F>) -> String {
    fraction_string(p, &PolyOverField::one(), "m")
}

pub fn peripheral_to_records<F: CoeffField>(q: &PeripheralPoly<F>) -> Vec<PeripheralRecord> {
    q.iter()
        .map(|(i, a)| PeripheralRecord { a: poly_in_m_to_string(a), l_degree: *i })
        .collect()
}

pub fn records_to_peripheral<F: CoeffField>(
    records: &[PeripheralRecord],
) -> Result<PeripheralPoly<F>, DocError> {
    let mut coeffs: Vec<(usize, PolyOverField<F>)> = Vec::with_capacity(records.len());
    for r in records {
        coeffs.push((r.l_degree, parse_poly_in_m::<F>(&r.a)?));
    }
    Ok(PeripheralPoly::from_coeffs(coeffs))
}
