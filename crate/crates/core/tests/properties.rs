use proptest::prelude::*;

use gwa_core::polyring::{ideal_member, CoefPoly, IdealGens, RingSpec};
use gwa_core::random::Sampler;
use gwa_core::rea::{check_relations_with, rea_instance, rea_to_gwa, ReaAut};
use gwa_core::repr::{decompose, Decomposition};
use gwa_core::spectrum::{
    ideal_includes, r_elem, rn_identity_holds, stratum_ideal, validate_family, IdealKind, StratumDescriptor,
};
use gwa_core::verify::random_sum;
use gwa_core::wire::{
    decode_elem, decode_poly, decode_qrat, decode_stratum, encode_elem, encode_poly, encode_qrat, encode_stratum,
};
use gwa_core::QRat;

fn qrat() -> impl Strategy<Value = QRat> {
    (-9i64..=9, -3i64..=3, -9i64..=9, -3i64..=3).prop_map(|(a, i, b, j)| &QRat::monomial(a, i) + &QRat::monomial(b, j))
}

fn nonzero_qrat() -> impl Strategy<Value = QRat> {
    qrat().prop_filter("nonzero", |c| !c.is_zero())
}

fn poly(seed: u64) -> CoefPoly {
    Sampler::new(seed).poly(&RingSpec::utd())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in qrat(), b in qrat(), c in nonzero_qrat()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &c) / &c, a.clone());
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&c * &c.inv().unwrap(), QRat::one());
    }

    #[test]
    fn scalar_wire_round_trip(a in qrat(), b in nonzero_qrat()) {
        let c = &a / &b;
        prop_assert_eq!(decode_qrat(&encode_qrat(&c)).unwrap(), c.clone());
        prop_assert_eq!(QRat::parse(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn poly_ring_axioms(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (f, g, h) = (poly(s1), poly(s2), poly(s3));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn evaluation_is_multiplicative(s1 in any::<u64>(), s2 in any::<u64>(), p in prop::array::uniform3(-5i64..=5)) {
        let (f, g) = (poly(s1), poly(s2));
        let pt: Vec<QRat> = p.iter().map(|&v| QRat::from_int(v)).collect();
        let lhs = f.mul(&g).eval(&pt).unwrap();
        prop_assert_eq!(lhs, &f.eval(&pt).unwrap() * &g.eval(&pt).unwrap());
    }

    #[test]
    fn sigma_is_a_ring_automorphism(s1 in any::<u64>(), s2 in any::<u64>(), k in -3i64..=3) {
        let w = rea_instance();
        let (f, g) = (poly(s1), poly(s2));
        prop_assert_eq!(w.sigma_pow(&f.mul(&g), k).unwrap(), w.sigma_pow(&f, k).unwrap().mul(&w.sigma_pow(&g, k).unwrap()));
        prop_assert_eq!(w.sigma_pow(&w.sigma_pow(&f, k).unwrap(), -k).unwrap(), f);
    }

    #[test]
    fn poly_wire_round_trip(s in any::<u64>()) {
        let f = poly(s);
        prop_assert_eq!(decode_poly(&encode_poly(&f), &RingSpec::utd()).unwrap(), f);
    }

    #[test]
    fn membership_certificates_recombine(s1 in any::<u64>(), s2 in any::<u64>()) {
        let r = RingSpec::utd();
        let gens = vec![CoefPoly::parse(&r, "u*t - d").unwrap(), CoefPoly::parse(&r, "t^2 + q*u").unwrap()];
        let f = poly(s1).mul(&gens[0]).add(&poly(s2).mul(&gens[1]));
        let ideal = IdealGens::new(&r, gens.clone()).unwrap();
        let m = ideal_member(&f, &ideal).unwrap();
        prop_assert!(m.member);
        let cof = m.cofactors.unwrap();
        let sum = cof.iter().zip(ideal.generators()).fold(CoefPoly::zero(&r), |acc, (c, g)| acc.add(&c.mul(g)));
        prop_assert_eq!(sum, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gwa_ring_axioms(seed in any::<u64>()) {
        let w = rea_instance();
        let mut s = Sampler::new(seed);
        let (a, b, c) = (s.elem(&w, 3), s.elem(&w, 3), s.elem(&w, 3));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().mul(&c).unwrap(), a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn elem_wire_round_trip(seed in any::<u64>()) {
        let w = rea_instance();
        let a = Sampler::new(seed).elem(&w, 3);
        prop_assert_eq!(decode_elem(&encode_elem(&a), &w).unwrap(), a);
    }

    #[test]
    fn words_map_homomorphically(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.rea_word(), s.rea_word());
        prop_assert_eq!(rea_to_gwa(&a.product(&b)).unwrap(), rea_to_gwa(&a).unwrap().mul(&rea_to_gwa(&b).unwrap()).unwrap());
        prop_assert_eq!(rea_to_gwa(&a.sum(&b)).unwrap(), rea_to_gwa(&a).unwrap().add(&rea_to_gwa(&b).unwrap()).unwrap());
    }

    #[test]
    fn automorphisms_preserve_relations(alpha in nonzero_qrat(), gamma in nonzero_qrat()) {
        let phi = ReaAut::new(alpha, gamma).unwrap();
        let rep = check_relations_with(&rea_instance(), &|g| phi.generator_image(g)).unwrap();
        prop_assert!(rep.all_passed(), "{}", rep);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn direct_sums_decompose(seed in any::<u64>()) {
        let (m, parts) = random_sum(&mut Sampler::new(seed)).unwrap();
        let Decomposition::Semisimple(got) = decompose(&m).unwrap() else {
            return Err(TestCaseError::fail("not semisimple"));
        };
        let total: usize = got.iter().map(|(_, k)| k).sum();
        prop_assert_eq!(total, parts.len());
        for (w, _) in &parts {
            prop_assert!(got.iter().any(|(g, _)| g == w));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn t3_points_are_twosided(n in 1u32..=2, c in nonzero_qrat()) {
        let s = StratumDescriptor::T3 { n, c: Some(c) };
        prop_assert_eq!(decode_stratum(&encode_stratum(&s)).unwrap(), s.clone());
        let f = stratum_ideal(&s).unwrap();
        prop_assert!(validate_family(&f, IdealKind::Twosided).unwrap());
        let zero = stratum_ideal(&StratumDescriptor::T3 { n, c: None }).unwrap();
        prop_assert!(ideal_includes(&zero, &f).unwrap());
    }

    #[test]
    fn perturbed_rn_fails_identity(n in 1u32..=4, seed in any::<u64>()) {
        let r = RingSpec::utd();
        let noise = poly(seed);
        prop_assume!(!noise.is_zero());
        prop_assert!(!rn_identity_holds(n, &r_elem(&r, n as i64).add(&noise)).unwrap());
    }
}
