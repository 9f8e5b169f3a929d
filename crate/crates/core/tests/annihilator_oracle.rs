//! Oracle checks for the annihilator elimination: substituting the
//! longitude action into the computed peripheral polynomial must kill the
//! target vector, the dependence must be of minimal length, and the
//! translated relations must agree with left multiplication.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skeinfill_core::annihilator::{
    compute_annihilator, translate_relation, validate_relation, CancelFlag, KnotPresentation,
};
use skeinfill_core::coeff::{
    CoeffField, MeridianVar, PolyFrac, PolyOverField, RatFunc,
};
use skeinfill_core::qtorus::SymmetricElement;

type P = PolyOverField<RatFunc>;
type K = PolyFrac<RatFunc, MeridianVar>;

fn rand_entry(rng: &mut ChaCha8Rng) -> P {
    let terms = rng.gen_range(0..=2);
    P::from_coeffs((0..terms).map(|_| {
        let deg = rng.gen_range(0..=3usize);
        let c = match rng.gen_range(0..3) {
            0 => RatFunc::a_power(rng.gen_range(-2..=2)),
            1 => RatFunc::from_int(rng.gen_range(-3..=3)),
            _ => RatFunc::one(),
        };
        (deg, c)
    }))
}

fn rand_presentation(rng: &mut ChaCha8Rng, d: usize) -> KnotPresentation<RatFunc> {
    loop {
        let names = (0..d).map(|i| format!("f{i}")).collect::<Vec<_>>();
        let matrix: Vec<Vec<P>> =
            (0..d).map(|_| (0..d).map(|_| rand_entry(rng)).collect()).collect();
        if let Ok(p) = KnotPresentation::new(names, matrix) {
            return p;
        }
    }
}

/// Rank over the fraction field by plain Gaussian elimination with
/// division; independent of the fraction-free production route.
fn rank_over_fractions(rows: &[Vec<P>]) -> usize {
    let mut mat: Vec<Vec<K>> = rows
        .iter()
        .map(|r| r.iter().map(|e| K::from_poly(e.clone())).collect())
        .collect();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][c].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let inv = mat[rank][c].inv().unwrap();
        for j in 0..cols {
            mat[rank][j] = mat[rank][j].mul(&inv);
        }
        for r in 0..mat.len() {
            if r != rank && !mat[r][c].is_zero() {
                let f = mat[r][c].clone();
                for j in 0..cols {
                    let delta = f.mul(&mat[rank][j]);
                    mat[r][j] = mat[r][j].sub(&delta);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn random_presentations_are_annihilated_with_minimal_dependences() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for round in 0..10 {
        let d = rng.gen_range(1..=4);
        let pres = rand_presentation(&mut rng, d);
        let target = rng.gen_range(0..d);
        let (q, _rel) = compute_annihilator(&pres, target, &CancelFlag::new()).unwrap();
        let deg = q.l_degree().expect("nonzero annihilating polynomial");
        assert!(deg <= d);

        // oracle: Σ a_i(m) L^i v = 0 computed directly
        let mut v = vec![P::zero(); d];
        v[target] = P::one();
        let mut krylov = vec![v.clone()];
        let mut acc = vec![P::zero(); d];
        for i in 0..=deg {
            let a = q.coeff(i);
            if !a.is_zero() {
                for j in 0..d {
                    acc[j] = acc[j].add(&a.mul(&v[j]));
                }
            }
            v = pres.apply(&v);
            krylov.push(v.clone());
        }
        assert!(
            acc.iter().all(|e| e.is_zero()),
            "round {round}: peripheral polynomial does not annihilate"
        );

        // minimality: the first deg Krylov vectors are independent
        let rank = rank_over_fractions(&krylov[..deg]);
        assert_eq!(rank, deg, "round {round}: a shorter dependence exists");
    }
}

#[test]
fn top_coefficient_is_monic_and_coefficients_coprime() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..10 {
        let d = rng.gen_range(1..=3);
        let pres = rand_presentation(&mut rng, d);
        let (q, _) = compute_annihilator(&pres, 0, &CancelFlag::new()).unwrap();
        let deg = q.l_degree().unwrap();
        let top = q.coeff(deg);
        assert!(top.leading_coeff().is_one(), "top coefficient not monic");
        let mut content = P::zero();
        for (_, a) in q.iter() {
            content = content.gcd_monic(a);
        }
        assert!(content.is_one(), "coefficients share the content {content:?}");
    }
}

fn rand_relation(rng: &mut ChaCha8Rng) -> skeinfill_core::annihilator::AnnihilatingRelation<RatFunc> {
    loop {
        let terms = rng.gen_range(1..=4);
        let raw: Vec<((i64, i64), RatFunc)> = (0..terms)
            .map(|_| {
                let p = rng.gen_range(0..=4i64);
                let q = if p == 0 {
                    rng.gen_range(0..=4i64)
                } else {
                    rng.gen_range(-4..=4i64)
                };
                let c = match rng.gen_range(0..3) {
                    0 => RatFunc::a_power(rng.gen_range(-3..=3)),
                    1 => RatFunc::from_int(rng.gen_range(1..=4)),
                    _ => RatFunc::a_power(1).add(&RatFunc::one()),
                };
                ((p, q), c)
            })
            .collect();
        if let Ok(rel) = validate_relation(raw) {
            return rel;
        }
    }
}

#[test]
fn translated_relations_equal_left_multiplication() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..200 {
        let rel = rand_relation(&mut rng);
        let mu = rng.gen_range(-10..=10);
        let nu = rng.gen_range(-10..=10);
        let via_formula = translate_relation(&rel, mu, nu);
        let via_product = SymmetricElement::basis_at(mu, nu).mul(&rel.to_symmetric_element());
        assert_eq!(via_formula, via_product);
    }
}

#[test]
fn polygon_vertices_always_carry_nonzero_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..100 {
        let rel = rand_relation(&mut rng);
        for v in rel.polygon().vertices() {
            assert!(!rel.coeff_at(v).is_zero());
        }
    }
}
