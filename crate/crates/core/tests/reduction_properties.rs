//! Soundness, termination and support properties of the Dehn-filling
//! rewriting engine, plus the meridian-filling consistency check and
//! brute-force cross-validation of the class counts.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skeinfill_core::annihilator::{validate_relation, AnnihilatingRelation};
use skeinfill_core::coeff::{CoeffField, RatFunc};
use skeinfill_core::filling::{
    analyze_filling, epsilon_reduce, reduce_full, verify_certificate, AppliedRelation,
    FillingSlope, ModuleVector,
};
use skeinfill_core::lattice::{band_pair, count_classes, enumerate_classes, BandPair, Slope};
use skeinfill_core::qtorus::{ExponentPair, SymmetricClass, SymmetricElement};
use skeinfill_core::skein_t2::chebyshev;

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn rand_relation(rng: &mut ChaCha8Rng) -> AnnihilatingRelation<RatFunc> {
    loop {
        let terms = rng.gen_range(2..=4);
        let raw: Vec<((i64, i64), RatFunc)> = (0..terms)
            .map(|_| {
                let p = rng.gen_range(0..=3i64);
                let q = if p == 0 {
                    rng.gen_range(0..=3i64)
                } else {
                    rng.gen_range(-3..=3i64)
                };
                let c = match rng.gen_range(0..3) {
                    0 => RatFunc::a_power(rng.gen_range(-2..=2)),
                    1 => RatFunc::from_int(rng.gen_range(1..=3)),
                    _ => RatFunc::a_power(2).add(&RatFunc::one()),
                };
                ((p, q), c)
            })
            .collect();
        match validate_relation(raw) {
            Ok(rel) => return rel,
            Err(_) => continue,
        }
    }
}

fn rand_non_excluded_slope(
    rng: &mut ChaCha8Rng,
    rel: &AnnihilatingRelation<RatFunc>,
) -> FillingSlope {
    let excluded = skeinfill_core::filling::excluded_slopes(std::slice::from_ref(rel));
    loop {
        let p = rng.gen_range(0..=5i64);
        let q = if p == 0 {
            1
        } else {
            rng.gen_range(-5..=5i64)
        };
        if (p, q) == (0, 0) || gcd_i64(p, q) != 1 {
            continue;
        }
        let s = FillingSlope::new(p, q).unwrap();
        if !excluded.contains(&s.slope()) {
            return s;
        }
    }
}

#[test]
fn reduce_full_is_sound_bounded_and_supported_in_the_bands() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for round in 0..30 {
        let rel = rand_relation(&mut rng);
        let s = rand_non_excluded_slope(&mut rng, &rel);
        let alpha = rng.gen_range(-20..=20i64);
        let beta = rng.gen_range(-20..=20i64);
        let start = SymmetricElement::<RatFunc>::basis_at(alpha, beta);
        let input = ModuleVector::from_component(0, start);

        let relations = std::slice::from_ref(&rel);
        let (out, cert) = reduce_full(relations, s, &input).unwrap();

        // soundness: certificate replay reconstructs input - output
        verify_certificate(relations, s, &input, &out, &cert).unwrap();

        // support: inside the enumerated spanning classes
        let report = analyze_filling(relations, s).unwrap();
        assert!(!report.excluded);
        let allowed: BTreeSet<SymmetricClass> =
            report.generators[0].classes.iter().copied().collect();
        for (_, x) in out.iter() {
            for (class, _) in x.iter() {
                assert!(allowed.contains(class), "round {round}: {class} escaped");
            }
        }

        // termination bounds: levels strictly descend, so the number of
        // distinct λ-levels among band steps is at most the initial |λ|,
        // and likewise for ε-levels
        let (bp, _) = band_pair(s.p(), s.q(), rel.polygon()).unwrap();
        let start_lam = bp.lam_at(ExponentPair::new(alpha, beta)).abs();
        let mut band_levels: BTreeSet<i64> = BTreeSet::new();
        let mut eps_levels: BTreeSet<i64> = BTreeSet::new();
        for step in &cert.steps {
            match &step.applied {
                AppliedRelation::Translated { mu, nu } => {
                    band_levels.insert(bp.m + bp.lam_at(ExponentPair::new(*mu, *nu)));
                }
                AppliedRelation::Dehn { base } => {
                    eps_levels.insert(bp.eps_at(*base) + 1);
                }
            }
        }
        assert!(
            band_levels.len() as i64 <= start_lam.max(1),
            "round {round}: {} lambda levels from start {start_lam}",
            band_levels.len()
        );
        let start_eps = bp.eps_at(ExponentPair::new(alpha, beta));
        assert!(
            eps_levels.len() as i64 <= start_eps.max(1 - start_eps),
            "round {round}: {} epsilon levels from start {start_eps}",
            eps_levels.len()
        );
    }
}

#[test]
fn epsilon_steps_preserve_lambda() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for _ in 0..50 {
        let (p, q) = loop {
            let p = rng.gen_range(0..=4i64);
            let q = if p == 0 { 1 } else { rng.gen_range(-4..=4i64) };
            if (p, q) != (0, 0) && gcd_i64(p, q) == 1 {
                break (p, q);
            }
        };
        let s = FillingSlope::new(p, q).unwrap();
        let at = ExponentPair::new(rng.gen_range(-15..=15), rng.gen_range(-15..=15));
        let x = SymmetricElement::<RatFunc>::basis(SymmetricClass::of(at));
        let (out, _) = epsilon_reduce(s, &x);
        // λ = (q, -p) up to sign: |λ| must be constant across the output
        let lam = |e: ExponentPair| (q * e.p - p * e.q).abs();
        for (class, _) in out.iter() {
            assert_eq!(lam(class.rep()), lam(at));
        }
    }
}

#[test]
fn meridian_filling_matches_the_chebyshev_scalar() {
    // filling along (0,1): the meridian acts as -(A^2 + A^-2); the normal
    // form of the symmetric vector at (0, k) must reproduce T_k of that
    // scalar under e_{0,1} ↦ scalar, e_{0,0} ↦ 2 (unit + class symmetry)
    let s = FillingSlope::new(0, 1).unwrap();
    let scalar = RatFunc::a_power(2).add(&RatFunc::a_power(-2)).neg();
    for k in 0..=8i64 {
        let x = SymmetricElement::<RatFunc>::basis_at(0, k);
        let (normal, cert) = epsilon_reduce(s, &x);
        verify_certificate(
            &[],
            s,
            &ModuleVector::from_component(0, x),
            &ModuleVector::from_component(0, normal.clone()),
            &cert,
        )
        .unwrap();
        let mut via_normal = RatFunc::zero();
        for (class, c) in normal.iter() {
            let rep = class.rep();
            assert_eq!(rep.p, 0, "normal form stays on the meridian axis");
            match rep.q {
                0 => via_normal = via_normal.add(&c.mul(&RatFunc::from_int(2))),
                1 => via_normal = via_normal.add(&c.mul(&scalar)),
                other => panic!("unexpected class (0, {other}) in the normal form"),
            }
        }
        // T_k evaluated at the scalar
        let mut via_chebyshev = RatFunc::zero();
        let mut power = RatFunc::one();
        let coeffs = chebyshev(k as usize);
        for c in &coeffs {
            let c = RatFunc::from_rational(num::BigRational::from_integer(c.clone()));
            via_chebyshev = via_chebyshev.add(&c.mul(&power));
            power = power.mul(&scalar);
        }
        assert_eq!(via_normal, via_chebyshev, "k = {k}");
    }
}

#[test]
fn class_counts_match_brute_force_in_original_coordinates() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..20 {
        let (p, q) = loop {
            let p = rng.gen_range(0..=6i64);
            let q = if p == 0 {
                1
            } else {
                rng.gen_range(-6..=6i64)
            };
            if (p, q) != (0, 0) && gcd_i64(p, q) == 1 {
                break (p, q);
            }
        };
        let m = rng.gen_range(0..=12i64);
        let (lam, eps) = skeinfill_core::lattice::band_forms(p, q).unwrap();
        let bp = BandPair { lam, eps, m };
        let enumerated = enumerate_classes(&bp);
        assert_eq!(enumerated.len() as u64, count_classes(m));

        // brute force over a box certainly containing the intersection
        let bound_a = eps.1.abs() * m + lam.1.abs() + 1;
        let bound_b = eps.0.abs() * m + lam.0.abs() + 1;
        let mut classes: BTreeSet<SymmetricClass> = BTreeSet::new();
        for a in -bound_a..=bound_a {
            for b in -bound_b..=bound_b {
                let at = ExponentPair::new(a, b);
                let l = bp.lam_at(at);
                let e = bp.eps_at(at);
                if l.abs() <= m && (-1..=1).contains(&e) {
                    classes.insert(SymmetricClass::of(at));
                }
            }
        }
        let brute: Vec<SymmetricClass> = classes.into_iter().collect();
        assert_eq!(brute, enumerated, "direction ({p},{q}), M = {m}");
    }
}

#[test]
fn uniqueness_flag_matches_slope_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    for _ in 0..60 {
        let rel = rand_relation(&mut rng);
        let (p, q) = loop {
            let p = rng.gen_range(0..=4i64);
            let q = if p == 0 { 1 } else { rng.gen_range(-4..=4i64) };
            if (p, q) != (0, 0) && gcd_i64(p, q) == 1 {
                break (p, q);
            }
        };
        let (_, unique) = band_pair(p, q, rel.polygon()).unwrap();
        let in_slopes =
            skeinfill_core::lattice::slopes(rel.polygon()).contains(&Slope::new(q, p));
        assert_eq!(unique, !in_slopes);
    }
}
