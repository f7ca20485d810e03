//! Property-based checks of invariants that hold on every ring.

use proptest::prelude::*;
use starlab_core::annihilator::{right_annihilator, AnnihilatorTables};
use starlab_core::classify::{Classifier, Property};
use starlab_core::dsl::{parse_literal, parse_ring_expr};
use starlab_core::par;
use starlab_core::projection::Analysis;
use starlab_core::ring::{build_ring, validate_star_ring};
use starlab_core::{Limits, Literal, RingDescriptor, StarRing};

fn literal() -> impl Strategy<Value = Literal> {
    let leaf = prop_oneof![
        (0u64..50).prop_map(Literal::Int),
        (1usize..3, prop::collection::vec(0u64..9, 9)).prop_map(|(n, d)| {
            Literal::Matrix((0..n).map(|r| d[r * n..(r + 1) * n].to_vec()).collect())
        }),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Literal::pair(a, b))
    })
}

fn descriptor() -> impl Strategy<Value = RingDescriptor> {
    let leaf = prop_oneof![
        (1u64..40).prop_map(RingDescriptor::cyclic),
        (1u64..4, 1u64..8).prop_map(|(n, m)| RingDescriptor::matrix(n, m)),
    ];
    leaf.prop_recursive(3, 8, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| RingDescriptor::product(a, b)),
            (inner, prop::collection::vec(literal(), 1..3)).prop_map(|(p, g)| RingDescriptor::subring(p, g)),
        ]
    })
}

/// Small rings with valid subring generators.
fn small_ring_text() -> impl Strategy<Value = String> {
    prop_oneof![
        (2u64..25).prop_map(|m| format!("Z({m})")),
        (2u64..4).prop_map(|m| format!("M(2, Z({m}))")),
        (2u64..7, 2u64..7).prop_map(|(a, b)| format!("prod(Z({a}), Z({b}))")),
        (2u64..5).prop_map(|m| format!("prod(Z({m}), M(2, Z(2)))")),
        (4u64..30, 1u64..30).prop_map(|(m, g)| format!("sub(Z({m}); {})", g % m)),
        Just("sub(M(2, Z(3)); [[1,0],[0,0]])".to_string()),
        Just("sub(M(2, Z(2)); [[1,1],[1,1]])".to_string()),
    ]
}

fn ring(text: &str) -> StarRing {
    build_ring(&parse_ring_expr(text).unwrap(), &Limits::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse_is_identity(d in descriptor()) {
        prop_assert_eq!(parse_ring_expr(&d.to_string()).unwrap(), d);
    }

    #[test]
    fn json_round_trip(d in descriptor()) {
        prop_assert_eq!(RingDescriptor::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn literal_round_trip(l in literal()) {
        prop_assert_eq!(parse_literal(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn built_rings_satisfy_star_ring_axioms(text in small_ring_text()) {
        let r = ring(&text);
        let rep = validate_star_ring(&r);
        prop_assert!(rep.verdict, "{}", rep);
    }

    #[test]
    fn lp_is_star_dual_of_rp(text in small_ring_text()) {
        let r = ring(&text);
        let an = Analysis::new(&r);
        for x in r.elements() {
            let dual = an.rp(r.star(x)).map(|e| r.star(e.elem));
            match (an.lp(x), dual) {
                (Ok(e), Ok(f)) => prop_assert_eq!(e.elem, f),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{} at {}: {:?} vs {:?}", text, x, a, b),
            }
        }
    }

    #[test]
    fn rp_satisfies_definition(text in small_ring_text()) {
        let r = ring(&text);
        let an = Analysis::new(&r);
        for x in r.elements() {
            if let Ok(e) = an.rp(x) {
                let e = e.elem;
                prop_assert!(r.is_projection(e));
                prop_assert_eq!(r.mul(x, e), x);
                for y in r.elements() {
                    if r.mul(x, y) == 0 {
                        prop_assert_eq!(r.mul(e, y), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn annihilator_of_set_is_meet_of_singletons(
        text in small_ring_text(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5),
    ) {
        let r = ring(&text);
        let s: Vec<usize> = picks.iter().map(|i| i.index(r.order())).collect();
        let tables = AnnihilatorTables::new(&r);
        let mut meet = tables.right().set_of(s[0]).clone();
        for &x in &s[1..] {
            meet.intersect_with(tables.right().set_of(x));
        }
        let direct = right_annihilator(&r, &s);
        prop_assert_eq!(direct.elements(), meet.ones().collect::<Vec<_>>());
    }

    #[test]
    fn projection_order_is_two_sided(text in small_ring_text()) {
        let r = ring(&text);
        let an = Analysis::new(&r);
        let poset = an.poset();
        for &e in poset.elems() {
            for &f in poset.elems() {
                prop_assert_eq!(poset.le(e, f), r.mul(e, f) == e);
                prop_assert_eq!(r.mul(e, f) == e, r.mul(f, e) == e);
            }
        }
    }

    #[test]
    fn rp_via_star_agrees_on_proper_rings(text in small_ring_text()) {
        let r = ring(&text);
        let c = Classifier::new(&r, Limits::default());
        if c.holds(Property::Proper).unwrap() {
            let an = c.analysis();
            for x in r.elements() {
                prop_assert_eq!(an.rp(x), an.rp_via_star(x));
            }
        }
    }

    #[test]
    fn backends_agree(n in 0usize..2000, k in 1usize..97) {
        let f = |i: usize| (i * 31 + 7) % k;
        prop_assert_eq!(par::seq::map(n, f), par::map(n, f));
        prop_assert_eq!(par::seq::find_first(n, |i| f(i) == 0), par::find_first(n, |i| f(i) == 0));
        prop_assert_eq!(par::seq::count(n, |i| f(i) < 3), par::count(n, |i| f(i) < 3));
    }
}

#[cfg(feature = "parallel")]
#[test]
fn reports_do_not_depend_on_thread_count() {
    let run = |jobs: usize, text: &str| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().unwrap();
        pool.install(|| {
            let r = ring(text);
            let c = Classifier::new(&r, Limits::default());
            Property::ALL
                .iter()
                .filter(|&&p| p != Property::RpNotCover)
                .map(|&p| c.report(p).unwrap().stable().to_json())
                .collect::<Vec<_>>()
        })
    };
    for text in ["M(2, Z(3))", "Z(12)", "sub(Z(9); 3)", "prod(Z(2), M(2, Z(2)))"] {
        assert_eq!(run(1, text), run(6, text), "{text}");
    }
}
