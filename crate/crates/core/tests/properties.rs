use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use hallq::coeff::{rat, CoeffRing, Laurent, LaurentPoly, SqrtQ};
use hallq::complex::{complex_classes_up_to, C2Category, ComplexClass};
use hallq::generic::{interpolate_counts, specialize, GenericStructureTable, QPoly, RepSide};
use hallq::gf::FiniteField;
use hallq::hall::{BridgelandHall, DHElement, HallElement, HallStructure, RingelHall};
use hallq::io::{parse_dh, parse_element, serialize_dh, serialize_element, ElementRecord, JobConfig};
use hallq::quiver::{classes_up_to, DynkinQuiver, RepCategory, RepIsoClass};

const CAP: u64 = 1 << 22;

fn a2() -> Arc<DynkinQuiver> {
    Arc::new(DynkinQuiver::a_linear(2))
}

fn rep_classes() -> &'static Vec<RepIsoClass> {
    static C: OnceLock<Vec<RepIsoClass>> = OnceLock::new();
    C.get_or_init(|| classes_up_to(&a2(), &[1, 1]))
}

fn complex_classes() -> &'static Vec<ComplexClass> {
    static C: OnceLock<Vec<ComplexClass>> = OnceLock::new();
    C.get_or_init(|| complex_classes_up_to(&a2(), &[1, 1], &[1, 1]))
}

fn generic_table() -> &'static GenericStructureTable<RepSide> {
    static T: OnceLock<GenericStructureTable<RepSide>> = OnceLock::new();
    T.get_or_init(|| GenericStructureTable::build(a2(), vec![2, 2], &[2, 3, 5, 7, 11], CAP).unwrap())
}

fn ringel(p: u32) -> RingelHall {
    RingelHall::new(RepCategory::new(a2(), FiniteField::prime(p).unwrap()), CAP)
}

fn rep_terms() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..rep_classes().len(), -3i64..=3), 1..3)
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..4).prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (e, rat(c)))))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ringel_product_is_associative(xs in rep_terms(), ys in rep_terms(), zs in rep_terms()) {
        let h = ringel(2);
        let r = *h.ring();
        let el = |t: &[(usize, i64)]| HallElement::from_terms(&r, t.iter().map(|&(i, c)| (rep_classes()[i].clone(), r.from_int(c))));
        let (x, y, z) = (el(&xs), el(&ys), el(&zs));
        let lhs = h.multiply(&h.multiply(&x, &y).unwrap(), &z).unwrap();
        let rhs = h.multiply(&x, &h.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_is_an_involution(i in 0..complex_classes().len(), p in prop::sample::select(vec![2u32, 3])) {
        let c2 = C2Category::new(RepCategory::new(a2(), FiniteField::prime(p).unwrap()));
        let c = &complex_classes()[i];
        let x = c2.realize(c).unwrap();
        prop_assert_eq!(&x.shift().shift(), &x);
        prop_assert_eq!(c2.classify(&x.shift()).unwrap(), c.shift());
        prop_assert_eq!(c2.classify(&x).unwrap(), c.clone());
    }

    #[test]
    fn laurent_records_round_trip(terms in prop::collection::vec((0..complex_classes().len(), laurent()), 0..5)) {
        let x: HallElement<ComplexClass, Laurent> =
            HallElement::from_terms(&Laurent, terms.into_iter().map(|(i, p)| (complex_classes()[i].clone(), p)));
        let text = serde_json::to_string(&serialize_element(&x)).unwrap();
        let rec: ElementRecord<Vec<hallq::io::records::LaurentTerm>> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(parse_element::<ComplexClass, _>(&Laurent, 2, &rec).unwrap(), x);
    }

    #[test]
    fn dh_records_round_trip(
        terms in prop::collection::vec(((-2i64..=2, -2i64..=2), 0..complex_classes().len(), rational(), rational()), 0..5)
    ) {
        let r = SqrtQ::new(3);
        let x: DHElement = HallElement::from_terms(
            &r,
            terms
                .into_iter()
                .map(|((a, b), i, u, w)| ((vec![a, b], complex_classes()[i].radical_part()), r.elem(u, w))),
        );
        let rec = serialize_dh(&x);
        let back = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
        prop_assert_eq!(parse_dh(&r, 2, &back).unwrap(), x);
    }

    /// The generic table, fitted at 2..11, predicts the numeric product at 13.
    #[test]
    fn specialization_predicts_unseen_prime(i in 0..rep_classes().len(), j in 0..rep_classes().len()) {
        let g = generic_table().algebra();
        let (m, n) = (&rep_classes()[i], &rep_classes()[j]);
        let generic = g.multiply(&g.u(m), &g.u(n)).unwrap();
        let h = ringel(13);
        let numeric = h.multiply(&h.u(m), &h.u(n)).unwrap();
        prop_assert_eq!(specialize(&generic, 13), numeric);
    }

    #[test]
    fn interpolation_recovers_integer_polynomials(cs in prop::collection::vec(-6i64..=6, 1..4)) {
        let p = QPoly::from_ints(&cs);
        let samples: Vec<(u64, BigInt)> =
            [2u64, 3, 5, 7, 11].iter().map(|&q| (q, p.eval(&rat(q as i64)).to_integer())).collect();
        prop_assert_eq!(interpolate_counts("t", &samples, 3).unwrap(), p);
    }

    #[test]
    fn bar_is_an_involutive_ring_map(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
    }

    #[test]
    fn job_config_round_trips_through_toml(
        primes in prop::sample::subsequence(vec![2u64, 3, 5, 7, 11, 13], 1..6),
        dim in prop::collection::vec(0i64..4, 2),
        cap in 1u64..1_000_000,
    ) {
        let mut c = JobConfig { quiver: "A2".into(), primes, cap, ..Default::default() };
        c.window.dim = Some(dim);
        let text = toml::to_string(&c).unwrap();
        let back = JobConfig::from_toml(&text).unwrap();
        back.validate().unwrap();
        prop_assert_eq!(back, c);
    }
}

#[test]
fn bridgeland_unit_laws() {
    let h = BridgelandHall::new(C2Category::new(RepCategory::new(a2(), FiniteField::prime(2).unwrap())), CAP);
    for c in complex_classes() {
        let x = h.u(c);
        assert_eq!(h.multiply(&h.unit(), &x).unwrap(), x);
        assert_eq!(h.multiply(&x, &h.unit()).unwrap(), x);
    }
}
