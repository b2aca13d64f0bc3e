use num::{One, Zero};
use proptest::prelude::*;

use spin_rmatrix::exactalg::{
    parse_rational, residue_at, FactoredRat, Fraction, LinForm, MPoly, QMatrix, RatFun, Rational, Var,
};
use spin_rmatrix::moduli::{duality_involution, fixed_points};
use spin_rmatrix::rmatrix::{assemble_full, sample_triples, spin_specialize};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=5).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), small_rat()), 0..5).prop_map(|terms| {
        let mut p = MPoly::zero();
        for ((a, b, c), k) in terms {
            p.add_term([a, b, c], k);
        }
        p
    })
}

fn nonzero_poly() -> impl Strategy<Value = MPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn form() -> impl Strategy<Value = LinForm> {
    (-3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("nonzero form", |(z, p, e)| (*z, *p, *e) != (0, 0, 0))
        .prop_map(|(z, p, e)| LinForm::new(z, p, e))
}

fn factored() -> impl Strategy<Value = FactoredRat> {
    (nonzero_rat(), prop::collection::vec((form(), -2i32..=2), 0..4)).prop_map(|(c, fs)| {
        fs.into_iter().fold(FactoredRat::new(c), |f, (form, e)| f.with_factor(form, e))
    })
}

fn point() -> impl Strategy<Value = (Rational, Rational, Rational)> {
    (small_rat(), small_rat(), small_rat())
}

proptest! {
    #[test]
    fn poly_add_commutes(a in poly(), b in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn poly_mul_commutes(a in poly(), b in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn poly_mul_associates(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn poly_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn poly_additive_inverse(a in poly()) {
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &MPoly::zero(), a.clone());
        prop_assert_eq!(&a * &MPoly::one(), a);
    }

    #[test]
    fn eval_is_a_ring_map(a in poly(), b in poly(), (z, p, e) in point()) {
        prop_assert_eq!((&a * &b).eval(&z, &p, &e), a.eval(&z, &p, &e) * b.eval(&z, &p, &e));
        prop_assert_eq!((&a + &b).eval(&z, &p, &e), a.eval(&z, &p, &e) + b.eval(&z, &p, &e));
    }

    #[test]
    fn exact_division_recovers_factor(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn exact_division_rejects_remainder(a in poly(), b in nonzero_poly()) {
        prop_assume!(b.total_degree() > 0);
        let c = &(&a * &b) + &MPoly::one();
        prop_assert!(c.exact_div(&b).is_err());
    }

    #[test]
    fn factored_product_is_expanded_product(f in factored(), g in factored()) {
        let lhs = f.mul(&g).expand();
        let rhs = &f.expand() * &g.expand();
        prop_assert!(lhs.value_eq(&rhs));
    }

    #[test]
    fn factored_eval_multiplies(f in factored(), g in factored(), (z, p, e) in point()) {
        if let (Some(a), Some(b)) = (f.eval(&z, &p, &e), g.eval(&z, &p, &e)) {
            prop_assert_eq!(f.mul(&g).eval(&z, &p, &e), Some(a * b));
        }
    }

    #[test]
    fn fraction_sum_matches_ratfun_sum(f in factored(), g in factored()) {
        let (a, b) = (Fraction::from(&f), Fraction::from(&g));
        prop_assert!(a.add(&b).to_ratfun().value_eq(&(&f.expand() + &g.expand())));
        prop_assert!(a.sub(&a).to_ratfun().is_zero());
    }

    #[test]
    fn cancellation_preserves_value(f in factored(), g in factored()) {
        let p = Fraction::from(&f).mul(&Fraction::from(&g));
        prop_assert!(p.clone().cancel_linear_factors().value_eq(&p));
    }

    #[test]
    fn negate_z_is_an_involution(a in poly(), f in factored()) {
        prop_assert_eq!(a.negate_z().negate_z(), a);
        prop_assert!(Fraction::from(&f).negate_z().negate_z().value_eq(&Fraction::from(&f)));
    }

    #[test]
    fn spin_specialization_commutes_with_eval(f in factored(), ell in 1u32..5, z in small_rat(), p in nonzero_rat()) {
        let e = -p.clone() * Rational::from_integer(ell.into());
        let direct = f.eval(&z, &p, &e);
        match spin_specialize(&Fraction::from(&f), ell) {
            Ok(g) => {
                if let Some(v) = direct {
                    prop_assert_eq!(g.eval(&z, &p, &Rational::from_integer(123.into())).unwrap(), v);
                }
            }
            Err(_) => {
                let l = ell as i64;
                prop_assert!(f.denominator_factors().any(|(d, _)| d.z == 0 && d.phi == l * d.eps));
            }
        }
    }

    #[test]
    fn residue_without_pole_vanishes(num in poly(), dens in prop::collection::vec(form(), 0..3), n in -4i64..=4) {
        let target = LinForm::phi_z(n, 1);
        prop_assume!(dens.iter().all(|d| d.primitive().1 != target));
        let den = dens.iter().fold(MPoly::one(), |acc, d| &acc * &d.to_mpoly());
        let f = RatFun::new(num, den).unwrap();
        prop_assert!(residue_at(&f, n).unwrap().is_zero());
    }

    #[test]
    fn residue_at_simple_pole_is_limit(
        num in poly(),
        dens in prop::collection::vec(form(), 0..3),
        n in -4i64..=4,
        phi in nonzero_rat(),
        eps in small_rat(),
    ) {
        let target = LinForm::phi_z(n, 1);
        prop_assume!(dens.iter().all(|d| d.primitive().1 != target));
        let z0 = -Rational::from_integer(n.into()) * &phi;
        let rest = dens.iter().fold(MPoly::one(), |acc, d| &acc * &d.to_mpoly());
        let rest_at = rest.eval(&z0, &phi, &eps);
        prop_assume!(!rest_at.is_zero());
        let f = RatFun::new(num.clone(), &rest * &target.to_mpoly()).unwrap();
        let res = residue_at(&f, n).unwrap();
        let expect = num.eval(&z0, &phi, &eps) / rest_at;
        prop_assert_eq!(res.eval(&Rational::zero(), &phi, &eps).unwrap(), expect);
    }

    #[test]
    fn rationals_parse_back(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = Rational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&r.to_string()), Some(r));
    }

    #[test]
    fn duality_is_an_involution(k in 0u32..9, n in 1usize..4, ell in 1u32..4) {
        for p in fixed_points(k, n, ell) {
            let d = duality_involution(&p);
            prop_assert_eq!(d.k(), n as u32 * ell - k);
            prop_assert_eq!(duality_involution(&d), p);
        }
    }

    #[test]
    fn seeded_sampling_is_reproducible(seed in any::<u64>()) {
        let poles = vec![Rational::zero(), -Rational::one()];
        let a = sample_triples(&poles, 5, seed);
        prop_assert_eq!(&a, &sample_triples(&poles, 5, seed));
        for t in &a {
            for d in [&t[0] - &t[1], &t[0] - &t[2], &t[1] - &t[2]] {
                prop_assert!(!poles.contains(&d));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spin_one_is_unitary_pointwise(p in -50i64..=50, q in 1i64..=20) {
        let r = assemble_full(2).unwrap();
        let z = Rational::new(p.into(), q.into());
        prop_assume!(!r.poles().contains(&z) && !r.poles().contains(&-z.clone()));
        let prod = &r.eval_at(&z).unwrap() * &r.eval_at(&-z).unwrap();
        prop_assert_eq!(prod, QMatrix::identity(9));
    }
}

#[test]
fn var_names() {
    let names: Vec<&str> = Var::ALL.iter().map(|v| v.name()).collect();
    assert_eq!(names, ["z", "phi", "eps"]);
}
