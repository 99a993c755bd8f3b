use proptest::prelude::*;

use convring::action::GroupAction;
use convring::blowup::{BlowupAlgebra, Flavor};
use convring::fraction::Fraction;
use convring::groebner::{GbLimits, MonomialOrder};
use convring::heisenberg::{poisson_from_q, HeisenbergElement};
use convring::ideal::{Ideal, PolyRing};
use convring::kring::{abstract_vars, KElement, KRing, Presentation};
use convring::laurent::{var_list, VarList};
use convring::poisson::PoissonChart;
use convring::roots::{LatticeFlavor, RootDatum};
use convring::screen::screen_identity;
use convring::steinberg::{rank_one_ring, unit_comparison};
use convring::{Frac, GaussianRational as Q, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coeff() -> impl Strategy<Value = Q> {
    (-3i64..=3, -2i64..=2).prop_map(|(re, im)| Q::from_parts(re, 1, im, 1))
}

/// Up to `terms` terms with exponents in `lo..=hi` in each of `vars`.
fn poly(vars: &'static [&'static str], lo: i32, hi: i32, terms: usize) -> impl Strategy<Value = Poly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(lo..=hi, n), coeff()), 0..=terms)
        .prop_map(move |ts| Poly::from_terms(&var_list(vars), ts))
}

fn nonzero(p: impl Strategy<Value = Poly>) -> impl Strategy<Value = Poly> {
    p.prop_filter("nonzero", |p| !p.is_zero())
}

fn heis() -> impl Strategy<Value = HeisenbergElement> {
    prop::collection::vec(((-3i64..=3, -3i64..=3, -3i64..=3), -4i64..=4), 1..=5).prop_map(|ts| {
        HeisenbergElement::from_terms(1, ts.into_iter().map(|((k, l, m), c)| ((k, vec![l], vec![m]), Q::from(c))))
            .unwrap()
    })
}

fn heis_monomial() -> impl Strategy<Value = HeisenbergElement> {
    (-3i64..=3, -3i64..=3).prop_map(|(l, m)| HeisenbergElement::basis(0, vec![l], vec![m]))
}

fn lim() -> GbLimits {
    GbLimits::default()
}

fn yz() -> VarList {
    var_list(&["y", "z"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(f in poly(&["y", "z"], -2, 2, 4), g in poly(&["y", "z"], -2, 2, 4), h in poly(&["y", "z"], -2, 2, 4)) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn canonical_text_round_trips(f in poly(&["y", "z"], -3, 3, 5)) {
        prop_assert_eq!(Poly::parse_in(&f.to_string(), &yz()).unwrap(), f);
    }

    #[test]
    fn fraction_inverse(f in nonzero(poly(&["y", "z"], -2, 2, 3)), g in nonzero(poly(&["y", "z"], -2, 2, 3))) {
        let q = Fraction::new(f, g).unwrap();
        prop_assert_eq!(q.mul(&q.inverse().unwrap()), Frac::one(&yz()));
    }

    #[test]
    fn symbolic_identities_pass_the_numeric_screen(f in poly(&["y", "z"], -2, 2, 3), g in poly(&["y", "z"], -2, 2, 3), seed in any::<u64>()) {
        let lhs = Fraction::from_poly(&(&f + &g) * &(&f - &g));
        let rhs = Fraction::from_poly(&(&f * &f) - &(&g * &g));
        prop_assert_eq!(&lhs, &rhs);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(screen_identity(&lhs, &rhs, 20, &mut rng), None);
    }

    #[test]
    fn heisenberg_associativity_and_classical_commutativity(x in heis(), y in heis(), z in heis()) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert!(x.commutator(&y).unwrap().divisible_by_q_minus_one());
        prop_assert_eq!(x.mul(&y).unwrap().at_q_one(), y.mul(&x).unwrap().at_q_one());
    }

    #[test]
    fn q_limit_bracket_is_antisymmetric(u in heis_monomial(), v in heis_monomial()) {
        let a = poisson_from_q(&u, &v).unwrap();
        let b = poisson_from_q(&v, &u).unwrap();
        prop_assert!((&a + &b).is_zero());
    }

    #[test]
    fn unit_identity_on_random_characters(ks in prop::collection::vec((-6i32..=6, -6i32..=6), 0..=4)) {
        let chars: Vec<Poly> = ks.iter().map(|&(a, b)| Poly::monomial(&yz(), vec![a, b], Q::from(1))).collect();
        prop_assert!(unit_comparison(&yz(), &chars).unwrap().holds);
    }

    #[test]
    fn orbit_dimension_is_additive(l in prop::collection::vec(0i64..=5, 2), m in prop::collection::vec(0i64..=5, 2)) {
        for flavor in [LatticeFlavor::SimplyConnected, LatticeFlavor::Adjoint] {
            let d = RootDatum::from_cartan(vec![vec![2, -1], vec![-1, 2]], flavor).unwrap();
            if d.is_dominant_coweight(&l) && d.is_dominant_coweight(&m) {
                let sum: Vec<i64> = l.iter().zip(&m).map(|(a, b)| a + b).collect();
                let dl = d.orbit_dimension(&l).unwrap();
                prop_assert_eq!(d.orbit_dimension(&sum).unwrap(), dl + d.orbit_dimension(&m).unwrap());
                prop_assert_eq!(d.perversity(&l).unwrap().doubled, -dl);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_idempotent_and_sound(f in poly(&["a", "b", "c"], 0, 3, 4)) {
        let ring = PolyRing::polynomial(&["a", "b", "c"]);
        let rel = Poly::parse_in("a*b*c - b^2 - c^2 - 1", ring.vars()).unwrap();
        let gb = Ideal::new(ring, vec![rel.clone()]).unwrap().groebner(MonomialOrder::GrevLex, &lim()).unwrap();
        let f = f.with_vars(&abstract_vars()).unwrap();
        let nf = gb.normal_form(&f).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(gb.contains(&(&f - &nf)).unwrap());
        prop_assert!(gb.contains(&(&rel * &f)).unwrap());
    }

    #[test]
    fn reynolds_is_a_projector(f in poly(&["t", "z"], -2, 2, 4)) {
        let (ring, w): (PolyRing, GroupAction) = rank_one_ring();
        let f = f.with_vars(ring.vars()).unwrap();
        let r = w.reynolds(&f).unwrap();
        prop_assert_eq!(w.reynolds(&r).unwrap(), r.clone());
        prop_assert!(w.is_invariant(&r).unwrap());
    }

    #[test]
    fn membership_is_closed_under_ring_operations(f in poly(&["y", "z", "T"], 0, 2, 3), g in poly(&["y", "z", "T"], 0, 2, 3)) {
        let b = BlowupAlgebra::rank_one(Flavor::GROUP_GROUP, &lim()).unwrap();
        let v = b.ring().vars().clone();
        let ff = b.to_fraction(&f.with_vars(&v).unwrap()).unwrap();
        let gf = b.to_fraction(&g.with_vars(&v).unwrap()).unwrap();
        prop_assert!(b.membership(&ff).unwrap().member);
        for h in [ff.add(&gf), ff.mul(&gf)] {
            let m = b.membership(&h).unwrap();
            prop_assert!(m.member);
            prop_assert_eq!(b.to_fraction(&m.certificate.unwrap()).unwrap(), h);
        }
    }

    #[test]
    fn chart_bracket_is_a_biderivation(f in poly(&["y", "z"], -2, 2, 3), g in poly(&["y", "z"], -2, 2, 3), h in poly(&["y", "z"], -2, 2, 3)) {
        let b = BlowupAlgebra::rank_one(Flavor::GROUP_GROUP, &lim()).unwrap();
        let c = PoissonChart::for_blowup(&b, Q::from(1)).unwrap();
        let [f, g, h] = [f, g, h].map(Fraction::from_poly);
        let lhs = c.bracket(&f, &g.mul(&h)).unwrap();
        let rhs = c.bracket(&f, &g).unwrap().mul(&h).add(&g.mul(&c.bracket(&f, &h).unwrap()));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(c.bracket(&f, &g).unwrap().add(&c.bracket(&g, &f).unwrap()).is_zero());
    }

    #[test]
    fn kring_product_commutes_and_localization_round_trips(f in poly(&["a", "b", "c"], 0, 2, 3), g in poly(&["a", "b", "c"], 0, 2, 3)) {
        let rel = Poly::parse_in("a*b*c - b^2 - c^2 - 1", &abstract_vars()).unwrap();
        let k = KRing::new(&rel, &lim()).unwrap();
        let (fe, ge) = (KElement::Abstract(f.with_vars(&abstract_vars()).unwrap()), KElement::Abstract(g.with_vars(&abstract_vars()).unwrap()));
        prop_assert_eq!(k.multiply(&fe, &ge).unwrap(), k.multiply(&ge, &fe).unwrap());
        let loc = k.convert(&fe, Presentation::Localized).unwrap();
        let back = k.convert(&loc, Presentation::Abstract).unwrap();
        prop_assert_eq!(back, k.convert(&fe, Presentation::Abstract).unwrap());
    }
}

#[test]
fn weyl_and_involution_generators_are_involutions() {
    let (_, w) = rank_one_ring();
    for g in w.generators() {
        assert!(g.compose(g).unwrap().is_identity());
    }
    for name in convring::centralizer::ModelName::all() {
        for (_, s) in convring::centralizer::model(name).involutions {
            assert!(s.compose(&s).unwrap().is_identity(), "{}", name.name());
        }
    }
}

#[test]
fn generators_of_an_ideal_reduce_to_zero() {
    let ring = PolyRing::new(&["y", "z", "T"], &["y", "z"]).unwrap();
    let gens: Vec<Poly> = ["T*z^2 - T - y^2 + 1", "y*z - 1 + T"]
        .iter()
        .map(|s| Poly::parse_in(s, ring.vars()).unwrap())
        .collect();
    let i = Ideal::new(ring, gens.clone()).unwrap();
    for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
        let gb = i.groebner(order, &lim()).unwrap();
        for g in &gens {
            assert!(gb.normal_form(g).unwrap().is_zero());
        }
    }
}
