//! Randomised algebraic laws of the exact engine.

use num_complex::Complex64;
use proptest::prelude::*;
use suq2::boson::{BElement, BMono};
use suq2::braided::{Braided, LegMap};
use suq2::lin::Lin;
use suq2::qtorus::{boca, TorusElement};
use suq2::scalar::rat;
use suq2::{Coeff, Element, ExactField, Field, Mono, NumericField, Scalar, Suq2, Time};

type Exact = Suq2<ExactField>;

fn alg(sigma: i8) -> Exact {
    Suq2::new(ExactField::new(sigma).unwrap())
}

fn term() -> impl Strategy<Value = (Mono, i64, i64, i64)> {
    (-2i32..=2, 0u32..=2, 0u32..=2, -3i64..=3, 0i64..=2, -2i64..=2)
        .prop_map(|(n, m, k, c, a, b)| (Mono::new(n, m, k), if c == 0 { 1 } else { c }, a, b))
}

fn recipe(max_terms: usize) -> impl Strategy<Value = Vec<(Mono, i64, i64, i64)>> {
    prop::collection::vec(term(), 1..=max_terms)
}

fn build<F: Field>(f: &F, r: &[(Mono, i64, i64, i64)]) -> Element<F::C> {
    Element::from_terms(r.iter().map(|&(m, c, a, b)| (m, f.rv(c, a, b))))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    let mono = (-4i64..=4, 0i32..=3, -3i32..=3).prop_map(|(c, a, b)| Scalar::monomial(rat(c, 1), a, b));
    (prop::collection::vec(mono.clone(), 1..4), prop::collection::vec(mono, 1..3)).prop_map(|(n, d)| {
        let num = n.into_iter().fold(Scalar::zero(), |acc, x| acc + x);
        let den = d.into_iter().fold(Scalar::one(), |acc, x| acc + x);
        num.div(&den).unwrap_or_else(|_| Scalar::one())
    })
}

fn q0s() -> [Complex64; 5] {
    [
        Complex64::new(0.3, 0.4),
        Complex64::new(0.5, 0.0),
        Complex64::new(-0.2, 0.6),
        Complex64::new(0.0, 0.7),
        Complex64::new(-0.45, -0.1),
    ]
}

/// `S(a^n g^m g*^k)` written out monomial by monomial.
fn antipode_closed_form(a: &Exact, x: Mono) -> Element<Scalar> {
    let (n, m, k) = (x.n as i64, x.m as i64, x.k as i64);
    let e = m * (m - 1) / 2 + k * (k - 1) / 2 - m * k;
    let sign = if (m + k) % 2 == 0 { 1 } else { -1 };
    let f = a.field();
    let c = f.zeta_pow(-e).times(&f.q_qb(n * k - k, n * m + m)).times(&Scalar::from_int(sign));
    Element::term(Mono::new(-x.n, x.m, x.k), c)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn scalar_conj_is_an_involutive_automorphism(x in scalar(), y in scalar()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &y).conj(), x.conj() * y.conj());
        prop_assert_eq!((&x + &y).conj(), x.conj() + y.conj());
    }

    #[test]
    fn scalar_division_round_trips(x in scalar(), y in scalar()) {
        if !y.is_zero() {
            prop_assert_eq!((&x * &y).div(&y).unwrap(), x);
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(x in scalar(), y in scalar()) {
        for q0 in q0s() {
            let (r, v) = suq2::scalar::principal_rv(q0).unwrap();
            let near_pole = |s: &Scalar| s.denominator().eval(r, v).norm() < 1e-6;
            if near_pole(&x) || near_pole(&y) {
                continue;
            }
            let (ex, ey) = (x.eval_at(q0), y.eval_at(q0));
            if let (Ok(ex), Ok(ey)) = (ex, ey) {
                let p = (&x * &y).eval_at(q0).unwrap();
                let s = (&x + &y).eval_at(q0).unwrap();
                prop_assert!((p - ex * ey).norm() <= 1e-9 * (1.0 + (ex * ey).norm()));
                prop_assert!((s - ex - ey).norm() <= 1e-9 * (1.0 + ex.norm() + ey.norm()));
            }
        }
    }

    #[test]
    fn multiplication_is_associative(x in recipe(2), y in recipe(2), z in recipe(2), s in prop::bool::ANY) {
        let a = alg(if s { 1 } else { -1 });
        let (x, y, z) = (build(a.field(), &x), build(a.field(), &y), build(a.field(), &z));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
    }

    #[test]
    fn star_is_an_antimultiplicative_involution(x in recipe(3), y in recipe(2)) {
        let a = alg(1);
        let (x, y) = (build(a.field(), &x), build(a.field(), &y));
        prop_assert_eq!(a.star(&a.star(&x)), x.clone());
        prop_assert_eq!(a.star(&a.mul(&x, &y)), a.mul(&a.star(&y), &a.star(&x)));
    }

    #[test]
    fn star_antipode_star_antipode_is_identity(x in recipe(3), s in prop::bool::ANY) {
        let a = alg(if s { 1 } else { -1 });
        let x = build(a.field(), &x);
        prop_assert_eq!(a.star(&a.antipode(&a.star(&a.antipode(&x)))), x);
    }

    #[test]
    fn antipode_matches_closed_form(n in -3i32..=3, m in 0u32..=3, k in 0u32..=3, s in prop::bool::ANY) {
        let a = alg(if s { 1 } else { -1 });
        let x = Mono::new(n, m, k);
        prop_assert_eq!(a.antipode_mono(x), antipode_closed_form(&a, x));
    }

    #[test]
    fn antipode_is_braided_antimultiplicative(x in term(), y in term()) {
        let a = alg(1);
        let (xm, ym) = (Element::mono(x.0), Element::mono(y.0));
        let lhs = a.antipode(&a.mul(&xm, &ym));
        let rhs = a.mul(&a.antipode(&ym), &a.antipode(&xm)).scale(&a.zeta_pow(-x.0.deg() * y.0.deg()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unitary_antipode_laws(x in recipe(2), y in recipe(2), s in prop::bool::ANY) {
        let a = alg(if s { 1 } else { -1 });
        let (x, y) = (build(a.field(), &x), build(a.field(), &y));
        prop_assert_eq!(a.unitary_antipode(&a.unitary_antipode(&x)), x.clone());
        prop_assert_eq!(
            a.unitary_antipode(&a.mul(&x, &y)),
            a.mul(&a.unitary_antipode(&y), &a.unitary_antipode(&x))
        );
        prop_assert_eq!(a.unitary_antipode(&a.star(&x)), a.star(&a.unitary_antipode(&x)));
    }

    #[test]
    fn scaling_and_modular_groups_commute(x in recipe(3), s in -3i64..=3, t in -3i64..=3) {
        let a = alg(1);
        let x = build(a.field(), &x);
        let (ts, tt) = (Time::imag_half(s), Time::imag_half(t));
        let lhs = a.tau(&a.sigma_h(&x, tt).unwrap(), ts).unwrap();
        let rhs = a.sigma_h(&a.tau(&x, ts).unwrap(), tt).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn maps_preserve_degree(x in term()) {
        let a = alg(-1);
        let d = x.0.deg();
        let e = Element::mono(x.0);
        for f in [LegMap::S, LegMap::R, LegMap::Theta, LegMap::Tau(Time::imag_half(1)), LegMap::Sigma(Time::imag_half(3))] {
            let y = a.apply_map(f, &e).unwrap();
            prop_assert_eq!(y.homogeneous_degree(), Some(d));
        }
    }

    #[test]
    fn comultiplication_respects_product_and_star(x in recipe(2), y in recipe(2)) {
        let a = alg(1);
        let (x, y) = (build(a.field(), &x), build(a.field(), &y));
        prop_assert_eq!(a.delta(&a.mul(&x, &y)), a.btp_mul(&a.delta(&x), &a.delta(&y)).unwrap());
        prop_assert_eq!(a.delta(&a.star(&x)), a.btp_star(&a.delta(&x)));
    }

    #[test]
    fn flip_commutes_with_antipode_pair(x in term(), y in term()) {
        let a = alg(1);
        let t = Braided::tensor(&[&Element::mono(x.0), &Element::mono(y.0)]);
        let lhs = a.map_legs(&a.flip(&t, false).unwrap(), &[LegMap::S, LegMap::S]).unwrap();
        let rhs = a.flip(&a.map_legs(&t, &[LegMap::S, LegMap::S]).unwrap(), false).unwrap();
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert_eq!(a.flip(&a.flip(&t, false).unwrap(), true).unwrap(), t);
    }

    #[test]
    fn haar_state_is_positive(x in recipe(3)) {
        for q0 in q0s() {
            let a = Suq2::new(NumericField::new(q0).unwrap());
            let x = build(a.field(), &x);
            let h = a.haar(&a.mul(&a.star(&x), &x));
            prop_assert!(h.im.abs() <= 1e-9 * (1.0 + h.re.abs()));
            prop_assert!(h.re > 0.0);
        }
    }

    #[test]
    fn bosonization_product_is_associative(l1 in -2i32..=2, l2 in -2i32..=2, l3 in -2i32..=2, x in term(), y in term(), z in term()) {
        let a = alg(1);
        let b = |t: &(Mono, i64, i64, i64), l: i32| -> BElement<Scalar> { Lin::basis(BMono::from_mono(t.0, l)) };
        let (x, y, z) = (b(&x, l1), b(&y, l2), b(&z, l3));
        prop_assert_eq!(a.b_mul(&a.b_mul(&x, &y), &z), a.b_mul(&x, &a.b_mul(&y, &z)));
        prop_assert_eq!(a.delta_b(&a.b_mul(&x, &y)), a.pair_mul(&a.delta_b(&x), &a.delta_b(&y)));
    }

    #[test]
    fn kappa_is_a_star_homomorphism(x in recipe(2), y in recipe(2)) {
        let a = alg(-1);
        let (x, y) = (build(a.field(), &x), build(a.field(), &y));
        prop_assert_eq!(a.kappa(&a.mul(&x, &y)), a.b_mul(&a.kappa(&x), &a.kappa(&y)));
        prop_assert_eq!(a.kappa(&a.star(&x)), a.b_star(&a.kappa(&x)));
    }

    #[test]
    fn torus_product_is_associative(seed in any::<u64>()) {
        use rand::SeedableRng;
        let rep = boca(5, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = suq2::qtorus::random_element(&mut rng, 3, 3);
        let y = suq2::qtorus::random_element(&mut rng, 3, 3);
        let z = suq2::qtorus::random_element(&mut rng, 3, 3);
        let zeta = rep.zeta();
        let l = x.mul(&y, zeta).mul(&z, zeta);
        let r = x.mul(&y.mul(&z, zeta), zeta);
        let diff = l.add(&r.scale(Complex64::new(-1.0, 0.0)));
        prop_assert!(diff.terms().all(|(_, c)| c.norm() < 1e-12));
        let adj = x.mul(&y, zeta).adjoint(zeta);
        let adj2 = y.adjoint(zeta).mul(&x.adjoint(zeta), zeta);
        let d2 = adj.add(&adj2.scale(Complex64::new(-1.0, 0.0)));
        prop_assert!(d2.terms().all(|(_, c)| c.norm() < 1e-12));
        let _ = TorusElement::zero();
    }
}
