mod common;

use common::{jacobiator, random_bivector, sign, Gen};
use ncpn_core::builtins::{cm_bracket_m, cm_pi, cm_quiver, gh_quiver};
use ncpn_core::forms::{self, tensor};
use ncpn_core::pn::bivector::{map_to_bivector, Bivector};
use ncpn_core::polyvec::{self, grade, schouten};
use ncpn_core::quiver::Quiver;
use ncpn_core::repr::induced::function_bracket;
use ncpn_core::syntax::{parse, print_lin};
use ncpn_core::word::{mul, unit};
use ncpn_core::Rational;
use proptest::prelude::*;

fn quivers() -> [Quiver; 2] {
    [cm_quiver(), gh_quiver()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn path_product_is_associative_with_unit(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let (a, b, c) = (g.path_poly(3), g.path_poly(3), g.path_poly(3));
            prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
            prop_assert_eq!(mul(&unit(&q), &a), a.clone());
            prop_assert_eq!(mul(&a, &unit(&q)), a);
        }
    }

    #[test]
    fn d_squares_to_zero(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let deg = (seed % 3) as usize;
            let u = g.form(deg, 4);
            prop_assert!(forms::d(&forms::d(&u)).is_zero());
            prop_assert!(forms::dr_d(&forms::dr_d(&u)).is_zero());
        }
    }

    #[test]
    fn d_is_a_graded_derivation(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let r = (seed % 3) as usize;
            let u = g.form(r, 3);
            let v = g.form(((seed >> 8) % 3) as usize, 3);
            let lhs = forms::d(&mul(&u, &v));
            let rhs = mul(&forms::d(&u), &v) + mul(&u, &forms::d(&v)).scale(&sign(r % 2 == 1));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tensor_model_agrees(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let tu = g.tensor((seed % 3) as usize);
            let tv = g.tensor(((seed >> 4) % 3) as usize);
            let (u, v) = (tensor::to_form(&tu), tensor::to_form(&tv));
            prop_assert_eq!(tensor::to_form(&tensor::product(&tu, &tv)), mul(&u, &v));
            prop_assert_eq!(tensor::to_form(&tensor::differential(&tu)), forms::d(&u));
        }
    }

    #[test]
    fn cartan_identities(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let th = g.derivation();
            let eta = g.derivation();
            let u = g.form((seed % 3) as usize, 2);
            let br = th.bracket(&eta);
            // L_θ = d i_θ + i_θ d, [L_θ, L_η] = L_[θ,η], [L_θ, i_η] = i_[θ,η], [L_θ, d] = 0
            prop_assert_eq!(forms::lie(&th, &u), forms::lie_direct(&th, &u));
            prop_assert_eq!(forms::lie_commutator(&th, &eta, &u), forms::lie(&br, &u));
            let li = forms::lie(&th, &forms::contract(&eta, &u)) - forms::contract(&eta, &forms::lie(&th, &u));
            prop_assert_eq!(li, forms::contract(&br, &u));
            prop_assert_eq!(forms::lie(&th, &forms::d(&u)), forms::d(&forms::lie(&th, &u)));
            // i_θ i_η + i_η i_θ = 0
            let ii = forms::contract(&th, &forms::contract(&eta, &u)) + forms::contract(&eta, &forms::contract(&th, &u));
            prop_assert!(ii.is_zero());
        }
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let u = g.form((seed % 3) as usize, 4);
            let n = forms::dr_normalize(&u);
            prop_assert_eq!(forms::dr_normalize(&n), n);
            let p = g.polyvector((seed % 3) as usize, 6);
            prop_assert_eq!(polyvec::normalize(&p), p);
        }
    }

    #[test]
    fn commutators_normalize_to_zero(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let u = g.form((seed % 2) as usize, 3);
            let v = g.form(((seed >> 3) % 2) as usize, 3);
            let (r, s) = (forms::degree(&u).unwrap_or(0), forms::degree(&v).unwrap_or(0));
            let graded = mul(&u, &v) - mul(&v, &u).scale(&sign(r * s % 2 == 1));
            prop_assert!(forms::dr_normalize(&graded).is_zero());
        }
    }

    #[test]
    fn pairing_routes_agree(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let al = g.one_form(3);
            let th = g.derivation();
            prop_assert_eq!(forms::pair(&forms::dr_normalize(&al), &th), forms::pair_by_contraction(&al, &th));
        }
    }

    #[test]
    fn parse_print_round_trip(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            for p in [g.form(1, 4), g.polyvector(2, 5), g.path_poly(4)] {
                let s = print_lin(&p, &q);
                prop_assert_eq!(parse(&s, &q).unwrap(), p, "{}", s);
            }
        }
    }

    #[test]
    fn schouten_grade_and_functions(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let (p, r) = ((seed % 3) as usize, ((seed >> 2) % 3) as usize);
            let l = g.polyvector(p, 5);
            let x = g.polyvector(r, 5);
            let s = schouten(&q, &l, &x);
            if !s.is_zero() {
                prop_assert_eq!(grade(&s), Some(p + r - 1));
            }
            let f = g.function(4);
            let h = g.function(4);
            prop_assert!(schouten(&q, &polyvec::normalize(&f), &polyvec::normalize(&h)).is_zero());
        }
    }

    #[test]
    fn bivector_presentation_round_trip(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let pi = random_bivector(&mut g);
            let back = Bivector::from_polyvector(&q, pi.necklace()).unwrap();
            prop_assert_eq!(back.necklace(), pi.necklace());
            let probes = ncpn_core::pn::family::Family::<Rational>::new(&q, 1).forms;
            let m = map_to_bivector(&q, |a| pi.map(&q, a), &probes).unwrap();
            prop_assert_eq!(m.necklace(), pi.necklace());
        }
    }

    #[test]
    fn bracket_routes_agree(seed in any::<u64>()) {
        let q = cm_quiver();
        let mut g = Gen::new(&q, seed);
        let m = (seed % 4) as usize;
        let f = g.function(5);
        let h = g.function(5);
        let pm = cm_pi(&q, m);
        prop_assert_eq!(cm_bracket_m(&q, m, &f, &h), function_bracket(&q, &pm, &f, &h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn schouten_graded_antisymmetry(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let (p, r) = ((seed % 3) as usize, ((seed >> 2) % 3) as usize);
            let l = g.polyvector(p, 6);
            let x = g.polyvector(r, 6);
            let lhs = schouten(&q, &l, &x);
            let rhs = schouten(&q, &x, &l).scale(&-sign((p + 1) * (r + 1) % 2 == 1));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn schouten_graded_jacobi(seed in any::<u64>()) {
        for q in quivers() {
            let mut g = Gen::new(&q, seed);
            let (p, r, s) = ((seed % 3) as usize, ((seed >> 2) % 3) as usize, ((seed >> 4) % 3) as usize);
            let l = g.polyvector(p, 4);
            let x = g.polyvector(r, 4);
            let z = g.polyvector(s, 4);
            prop_assert!(jacobiator(&q, (&l, p), (&x, r), (&z, s)).is_zero());
        }
    }
}
