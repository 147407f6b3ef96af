use pcmult::catalog;
use pcmult::pcgroup::*;
use proptest::prelude::*;

fn groups() -> Vec<PcGroup> {
    catalog::all()
        .into_iter()
        .map(|e| PcGroup::new(e.presentation(), DEFAULT_ELEMENT_BOUND).unwrap())
        .collect()
}

fn word(n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n, -7i64..=7), 0..10).prop_map(|ls| {
        let mut w = Word::new();
        for (g, e) in ls {
            w.push(g, e);
        }
        w
    })
}

fn group_and_words() -> impl Strategy<Value = (usize, Word, Word)> {
    let sizes: Vec<usize> = catalog::all()
        .iter()
        .map(|e| e.presentation().n())
        .collect();
    (0..sizes.len()).prop_flat_map(move |i| (Just(i), word(sizes[i]), word(sizes[i])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn collection_is_a_homomorphism((i, u, v) in group_and_words()) {
        let gs = groups();
        let p = gs[i].presentation();
        let cu = p.collect(&u);
        let cv = p.collect(&v);
        let mut uv = u.clone();
        uv.0.extend(v.0.iter().copied());
        prop_assert_eq!(p.collect(&uv), p.multiply(&cu, &cv));
        prop_assert_eq!(p.collect(&cu.to_word()), cu.clone());
        prop_assert!(p.multiply(&p.inverse(&cu), &cu).is_identity());
        prop_assert_eq!(p.commutator(&cu, &cu), p.identity());
    }

    #[test]
    fn quotient_by_normal_closure(i in 0usize..15, seed in 0usize..10_000) {
        let gs = groups();
        let g = &gs[i % gs.len()];
        let x = seed % g.order();
        let n = g.normal_closure(&[x]);
        let q = g.quotient_presentation(&n.members()).unwrap();
        let qp = q.presentation();
        prop_assert_eq!(qp.order() as usize * n.order(), g.order());
        prop_assert!(qp.is_consistent().is_empty());
        let a = (seed * 7 + 3) % g.order();
        let b = (seed * 13 + 5) % g.order();
        let lhs = q.project_index(g.mul(a, b));
        let rhs = qp.multiply(&q.project_index(a), &q.project_index(b));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(q.project(&q.lift(&q.project_index(a))), q.project_index(a));
    }
}

#[test]
fn class_sizes_partition_and_divide() {
    for g in groups() {
        let classes = g.conjugacy_classes();
        let total: usize = classes.iter().map(|c| c.size).sum();
        assert_eq!(total, g.order());
        assert!(classes.iter().all(|c| g.order() % c.size == 0));
        // representatives are least in their class
        for c in &classes {
            for z in 0..g.order() {
                assert!(g.conj(z, c.representative) >= c.representative);
            }
        }
    }
}

#[test]
fn centralizer_generators_generate_the_centralizer() {
    for g in groups() {
        for x in 0..g.order() {
            let gens = g.centralizer_generators(x);
            let closure = g.closure(&gens).members();
            let direct: Vec<usize> = (0..g.order())
                .filter(|&y| {
                    g.presentation()
                        .commutator(&g.element(x), &g.element(y))
                        .is_identity()
                })
                .collect();
            assert_eq!(closure, direct);
        }
        let gens = g.centralizer_generators(0);
        assert_eq!(g.closure(&gens).order(), g.order());
    }
}

#[test]
fn abelian_entries_have_singleton_classes() {
    for name in ["C2", "C3", "C5", "C12", "C2xC2", "C3xC3xC3", "C4xC2"] {
        let g = PcGroup::new(catalog::get(name).unwrap().presentation(), 5000).unwrap();
        assert_eq!(g.conjugacy_classes().len(), g.order());
        assert_eq!(g.derived_subgroup().order(), 1);
        assert_eq!(g.nilpotency_class(), Some(1));
    }
}

#[test]
fn quotient_examples() {
    let d4 = PcGroup::new(catalog::get("D4").unwrap().presentation(), 5000).unwrap();
    let q = d4.quotient_presentation(&d4.center().members()).unwrap();
    assert_eq!(q.presentation().order(), 4);
    assert_eq!(q.presentation().abelianization().to_string(), "[2,2]");
    let g = PcGroup::new(catalog::get("G243_28").unwrap().presentation(), 5000).unwrap();
    let q = g
        .quotient_presentation(&g.derived_subgroup().members())
        .unwrap();
    assert_eq!(q.presentation().abelianization().to_string(), "[3,3]");
    assert_eq!(q.presentation().order(), 9);
}
