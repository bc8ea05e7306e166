use num_integer::Integer;
use plumbing_core::dsl::parse_graph;
use plumbing_core::families::*;
use plumbing_core::group::abelianization_order;
use plumbing_core::linalg::inertia;
use plumbing_core::moves::{claw_extend, dual_blow_up, equivalent_graphs, Equivalence, SearchBudget};
use plumbing_core::{is_isomorphic, rat, AugmentedGraph, Error, PlumbingGraph};

fn coprime(n: i64) -> impl Iterator<Item = i64> {
    (1..n).filter(move |l| n.gcd(l) == 1)
}

fn graph(text: &str) -> PlumbingGraph {
    parse_graph(text).unwrap().into_graph()
}

#[test]
fn dual_lengths() {
    for n in 2..=30 {
        for l in coprime(n) {
            let a = hj_expand(n, l).unwrap();
            let b = hj_expand(n, n - l).unwrap();
            let (k, k2) = (a.len() as i64, b.len() as i64);
            assert_eq!(k + k2, a.iter().sum::<i64>() - k + 1, "{n}/{l}");
        }
    }
}

#[test]
fn chain_orders() {
    for n in 2..=20 {
        for l in coprime(n) {
            let g = build_linear(n, l).unwrap();
            assert_eq!(abelianization_order(&g).unwrap(), Some(n.into()));
        }
    }
}

#[test]
fn builders_round_trip_through_recognition() {
    for n in 2..=12 {
        for l in coprime(n) {
            let tag = recognize_type(&build_linear(n, l).unwrap()).unwrap();
            let TypeTag::N2 { n: n2, lambda } = tag else { panic!("{tag:?}") };
            assert_eq!(n2, n);
            assert!(lambda == l || (lambda * l) % n == 1, "{n}/{l} → {lambda}");

            let p2 = TypeTag::P2 { n, lambda: l, form: Presentation::Dual };
            assert_eq!(recognize_type(&p2.graph().unwrap()), Some(p2));

            let k = hj_expand(n, l).unwrap().len();
            for v in 1..k.saturating_sub(1) {
                let p4 = TypeTag::P4 { n, lambda: l, v, form: Presentation::Dual };
                let g = p4.graph().unwrap();
                let back = recognize_type(&g).unwrap();
                assert_eq!(back.name(), "P4");
                assert!(is_isomorphic(&back.graph().unwrap(), &g));
            }
        }
    }
    for y in 2..=4 {
        for (n2, n3) in [(3, 3), (3, 4), (3, 5), (2, 5), (2, 7)] {
            for l2 in coprime(n2) {
                for l3 in coprime(n3) {
                    let p = StarParams::new(y, (n2, l2), (n3, l3)).unwrap();
                    let g = p.graph();
                    assert_eq!(recognize_type(&g), Some(TypeTag::N3(p)));
                    assert_eq!(recognize_type(&p.conjugate_graph()), Some(TypeTag::P3(p)));
                    for v in 0..g.len() {
                        for (form, h) in [
                            (Presentation::Dual, dual_blow_up(&g, &g.vertex(v).id).unwrap()),
                            (Presentation::Claw, claw_extend(&g, &g.vertex(v).id).unwrap()),
                        ] {
                            let Some(TypeTag::P5 { base, v: cv, form: f }) = recognize_type(&h) else {
                                panic!("{p:?} at {v}")
                            };
                            assert_eq!((base, f), (p, form));
                            assert!(cv <= v);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn star_examples() {
    let e6 = build_star(2, (2, 1), (3, 1), (3, 1)).unwrap();
    assert_eq!(e6.self_ints(), vec![-2, -2, -3, -3]);
    let e8 = build_star(2, (2, 1), (3, 2), (5, 4)).unwrap();
    assert_eq!(e8.self_ints(), vec![-2; 8]);
    assert_eq!(recognize_type(&e8), Some(TypeTag::N3(StarParams { y: 2, legs: [(2, 1), (3, 2), (5, 4)] })));
    assert!(StarParams::new(2, (3, 1), (7, 2)).is_err());
    assert!(StarParams::new(1, (3, 1), (3, 1)).is_err());
}

#[test]
fn negative_types_have_no_positive_direction() {
    for n in 2..=15 {
        for l in coprime(n) {
            let g = build_linear(n, l).unwrap();
            assert_eq!(inertia(&g.intersection_matrix()).n_plus, 0);
        }
    }
}

#[test]
fn dihedral_round_trips() {
    for n in 2..=20 {
        for l in coprime(n) {
            let leg: Vec<i64> = hj_expand(n, l).unwrap().iter().map(|d| -d).collect();
            for y in -3..=0 {
                let star = build_star(y, (2, 1), (2, 1), (n, l)).unwrap();
                let chain = dihedral_form_convert(&star).unwrap();
                assert_eq!(chain.vertex(0).self_int, -1);
                assert!(is_isomorphic(&dihedral_form_convert(&chain).unwrap(), &star), "{y} {leg:?}");
                if star.len() <= 6 {
                    let proof = equivalent_graphs(&star, &chain, SearchBudget::with_extra(1)).unwrap();
                    assert!(matches!(proof, Equivalence::Proof { .. }), "{y} {leg:?}");
                }
            }
            // y = 1 already is the chain presentation.
            let star = build_star(1, (2, 1), (2, 1), (n, l)).unwrap();
            assert_eq!(dihedral_form_convert(&star).unwrap(), star);
        }
    }
}

#[test]
fn dihedral_chain_presentation_matches_fraction() {
    // <1; 2,1; 2,1; q, n−q> has leg [c − 1, c₁, …] where [c, c₁, …] = n/(n − q).
    for n in 3..=20 {
        for q in coprime(n).filter(|&q| 2 * q > n) {
            let star = build_star(1, (2, 1), (2, 1), (q, n - q)).unwrap();
            let mut s: Vec<i64> = star.self_ints()[3..].iter().map(|x| -x).collect();
            s[0] += 1;
            assert_eq!(hj_eval(&s).unwrap(), (n, n - q));
        }
    }
    let not_dihedral = build_star(2, (2, 1), (3, 1), (3, 1)).unwrap();
    assert_eq!(dihedral_form_convert(&not_dihedral), Err(Error::NotInFamily));
}

#[test]
fn realizability_fixtures() {
    let tables = RealizabilityTables::builtin();
    let budget = TYPE_SEARCH_BUDGET;
    let p1 = PlumbingGraph::chain(&[0, 0]);
    assert_eq!(
        realizable(&p1, budget, &tables).unwrap(),
        RealizabilityVerdict::Yes(RealizabilityReason::Type(TypeTag::P1))
    );

    // (−3) − (−2, with −2 below) − (−2) − (1)
    let g = graph("v a g0 s-3; v c g0 s-2; v b g0 s-2; v m g0 s-2; v p g0 s1; e a c; e c b; e c m; e m p");
    assert!(matches!(realizable(&g, budget, &tables).unwrap(), RealizabilityVerdict::Yes(_)));

    let t = build_star(2, (2, 1), (3, 1), (3, 1)).unwrap();
    let central = claw_extend(&t, &t.vertex(0).id).unwrap();
    assert!(matches!(realizable(&central, budget, &tables).unwrap(), RealizabilityVerdict::No(_)));
    for end in [2, 3] {
        let h = claw_extend(&t, &t.vertex(end).id).unwrap();
        assert!(matches!(realizable(&h, budget, &tables).unwrap(), RealizabilityVerdict::Yes(_)));
    }
    let y3 = build_star(3, (2, 1), (3, 1), (3, 1)).unwrap();
    let h = claw_extend(&y3, &y3.vertex(0).id).unwrap();
    assert!(matches!(
        realizable(&h, budget, &tables).unwrap(),
        RealizabilityVerdict::Yes(RealizabilityReason::CentreNotTwo(_))
    ));

    let e8 = build_star(2, (2, 1), (3, 2), (5, 4)).unwrap();
    assert_eq!(realizable(&e8, budget, &tables), Err(Error::NegativeDefinite));
    assert_eq!(p5_realizable(&PlumbingGraph::chain(&[-2]), 0, &tables), Err(Error::NotN3));
    assert!(matches!(p5_realizable(&e8, 0, &tables).unwrap(), RealizabilityVerdict::No(_)));
}

#[test]
fn both_realizability_paths_agree_on_tables() {
    let tables = RealizabilityTables::builtin();
    for tg in &tables.graphs {
        for v in 0..tg.graph.len() {
            let direct = p5_realizable(&tg.graph, v, &tables).unwrap();
            let h = claw_extend(&tg.graph, &tg.graph.vertex(v).id).unwrap();
            let via_graph = realizable(&h, TYPE_SEARCH_BUDGET, &tables).unwrap();
            assert_eq!(
                matches!(direct, RealizabilityVerdict::Yes(_)),
                matches!(via_graph, RealizabilityVerdict::Yes(_)),
                "{} vertex {v}",
                tg.family
            );
            assert_eq!(matches!(direct, RealizabilityVerdict::Yes(_)), tg.marks[v] == Mark::Y);
        }
    }
}

#[test]
fn table_override_is_validated() {
    let bad = r#"{"version": 2, "centre": -2, "families": [], "dihedral": {"claw_ends": "Y", "centre": "X", "chain_when_first_at_least_3": "Y", "chain_when_first_is_2": "X", "all_leaves_two": "Y"}}"#;
    assert!(matches!(RealizabilityTables::from_json(bad), Err(Error::Tables(_))));
}

#[test]
fn compactifying_verdicts() {
    let tables = RealizabilityTables::builtin();
    let budget = TYPE_SEARCH_BUDGET;
    let e8 = build_star(2, (2, 1), (3, 2), (5, 4)).unwrap();
    let ag = AugmentedGraph::new(e8, (1..=8).map(rat).collect()).unwrap();
    assert_eq!(compactifying_verdict(&ag, budget, &tables).unwrap(), CompactifyingVerdict::FillingDivisor);

    // Two positive spheres: b⁺ = 2, so concave but never capping.
    let lens = AugmentedGraph::new(PlumbingGraph::chain(&[2, 1]), vec![rat(3), rat(2)]).unwrap();
    assert_eq!(compactifying_verdict(&lens, budget, &tables).unwrap(), CompactifyingVerdict::Neither);

    let t = build_star(2, (2, 1), (3, 1), (3, 1)).unwrap();
    let central = claw_extend(&t, &t.vertex(0).id).unwrap();
    let ag = AugmentedGraph::new(central.clone(), vec![rat(1); central.len()]).unwrap();
    assert_eq!(compactifying_verdict(&ag, budget, &tables).unwrap(), CompactifyingVerdict::Neither);

    let cap = build_star(1, (2, 1), (3, 1), (5, 1)).unwrap();
    let ag = AugmentedGraph::new(cap, vec![rat(10), rat(1), rat(1), rat(1)]).unwrap();
    assert!(plumbing_core::gs::positive_gs(&ag).is_some());
    assert_eq!(compactifying_verdict(&ag, budget, &tables).unwrap(), CompactifyingVerdict::CappingDivisor);

    let infinite = build_star(2, (3, 1), (3, 1), (3, 1)).unwrap();
    let ag = AugmentedGraph::new(infinite, vec![rat(1); 4]).unwrap();
    assert_eq!(compactifying_verdict(&ag, budget, &tables), Err(Error::InfinitePi1));
}

#[test]
fn conjugate_involution() {
    for n in 2..=15 {
        for l in coprime(n) {
            let t = TypeTag::N2 { n, lambda: l };
            assert_eq!(conjugate_of(&conjugate_of(&t).unwrap()).unwrap(), t);
        }
    }
    let e8 = StarParams::new(2, (3, 2), (5, 4)).unwrap();
    let p3 = conjugate_of(&TypeTag::N3(e8)).unwrap();
    assert!(is_isomorphic(&p3.graph().unwrap(), &build_star(1, (2, 1), (3, 1), (5, 1)).unwrap()));
    assert_eq!(
        conjugate_of(&TypeTag::P4 { n: 7, lambda: 3, v: 1, form: Presentation::Dual }),
        Err(Error::NoConjugateDefined)
    );
}
