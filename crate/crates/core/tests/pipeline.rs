use num_bigint::BigInt;
use pcmult::bogomolov::*;
use pcmult::catalog;
use pcmult::intlattice::InvariantList;
use pcmult::pcgroup::*;
use pcmult::wedgecover::*;

const PAIR_BOUND: u128 = 25_000_000;

fn group(name: &str) -> PcGroup {
    PcGroup::new(
        catalog::get(name).unwrap().presentation(),
        DEFAULT_ELEMENT_BOUND,
    )
    .unwrap()
}

#[test]
fn every_entry_reproduces_its_expected_invariants() {
    for e in catalog::all() {
        let g = PcGroup::new(e.presentation(), DEFAULT_ELEMENT_BOUND).unwrap();
        let x = ExtSquareData::new(&g).unwrap();
        let r = bogomolov_multiplier(&x, Method::Both, PAIR_BOUND).unwrap();
        let ex = &e.expected;
        assert_eq!(r.order as u128, ex.order.value, "{}", e.name);
        assert_eq!(r.abelianization, ex.abelianization.value, "{}", e.name);
        assert_eq!(r.derived_order, ex.derived_order.value, "{}", e.name);
        assert_eq!(r.multiplier, ex.multiplier.value, "{}", e.name);
        assert_eq!(r.bogomolov, ex.bogomolov.value, "{}", e.name);
        // order identities
        let d = BigInt::from(r.derived_order);
        assert_eq!(r.exterior_square_order, &d * r.multiplier.order());
        assert_eq!(r.curly_wedge_order, &d * r.bogomolov.order());
        assert_eq!(r.m0_order * &r.m0_index, r.multiplier.order());
        let table = x.wedge_table(DEFAULT_COVER_BOUND).unwrap();
        assert_eq!(
            BigInt::from(table.order()),
            r.exterior_square_order,
            "{}",
            e.name
        );
    }
}

#[test]
fn example_group_of_order_243() {
    let g = group("G243_28");
    let p = g.presentation();
    assert_eq!(p.n(), 5);
    assert_eq!(g.elements().len(), 243);
    assert_eq!(p.collect(&Word::gen(1, 3)).exponents(), &[0, 0, 0, 2, 0]);
    assert_eq!(p.abelianization(), InvariantList::from_u64(&[3, 3]));
    assert_eq!(g.derived_subgroup().order(), 27);

    let x = ExtSquareData::new(&g).unwrap();
    assert_eq!(x.cover().m(), 15);
    assert_eq!(x.multiplier(), &InvariantList::from_u64(&[9]));
    let r = bogomolov_multiplier(&x, Method::Classes, PAIR_BOUND).unwrap();
    assert_eq!(r.bogomolov, InvariantList::from_u64(&[3]));
    assert_eq!(r.exterior_square_order, BigInt::from(243));
    assert_eq!(r.curly_wedge_order, BigInt::from(81));

    // w = (g2 ∧ g3)(g4 ∧ g1) generates M(G) and has order 9
    let gen = |i| p.generator(i);
    assert!(p
        .multiply(
            &p.commutator(&gen(1), &gen(2)),
            &p.commutator(&gen(3), &gen(0))
        )
        .is_identity());
    let cover = x.cover();
    let w = cover.multiply(&x.wedge(&gen(1), &gen(2)), &x.wedge(&gen(3), &gen(0)));
    assert!(w.gpart.is_identity());
    assert!(x.saturated_lattice().contains(&w.tails));
    let mut acc = cover.identity();
    let mut order = 0;
    loop {
        acc = cover.multiply(&acc, &w);
        order += 1;
        if x.consistency_lattice().contains(&acc.tails) {
            break;
        }
    }
    assert_eq!(order, 9);
    // w^3 lies in M_0, w does not
    let m0 = m0_lattice_classes(&x).unwrap();
    assert!(!m0.contains(&w.tails));
    let w3: Vec<BigInt> = w.tails.iter().map(|t| t * 3).collect();
    assert!(m0.contains(&w3));

    // w is recovered as a wedge word
    let table = x.wedge_table(DEFAULT_COVER_BOUND).unwrap();
    let word = table.express(&x, &w.tails).unwrap();
    let back = evaluate_wedge_word(&x, &word);
    assert!(back.gpart.is_identity());
    assert!(x.congruent(&back.tails, &w.tails));
    assert!(table
        .express(&x, &vec![BigInt::from(0); 15])
        .unwrap()
        .is_empty());
}

#[test]
fn wedge_word_for_klein_four() {
    let g = group("C2xC2");
    let x = ExtSquareData::new(&g).unwrap();
    let basis = x.saturated_lattice().basis_rows();
    let generator = basis
        .iter()
        .find(|b| !x.consistency_lattice().contains(b))
        .unwrap();
    let table = x.wedge_table(DEFAULT_COVER_BOUND).unwrap();
    let word = table.express(&x, generator).unwrap();
    assert_eq!(word.len(), 1);
    let p = g.presentation();
    assert_eq!(
        (word[0].x.clone(), word[0].y.clone()),
        (p.generator(0), p.generator(1))
    );
}

#[test]
fn oracle_equals_class_method() {
    for e in catalog::all() {
        let g = PcGroup::new(e.presentation(), DEFAULT_ELEMENT_BOUND).unwrap();
        let x = ExtSquareData::new(&g).unwrap();
        let a = m0_lattice_classes(&x).unwrap();
        let b = m0_lattice_pairs(&x, PAIR_BOUND).unwrap();
        assert_eq!(a, b, "{}", e.name);
        assert!(a.contains_lattice(x.consistency_lattice()));
        assert!(x.saturated_lattice().contains_lattice(&a));
    }
}

#[test]
fn pair_bound_is_enforced() {
    let g = group("G243_28");
    let x = ExtSquareData::new(&g).unwrap();
    assert!(matches!(
        m0_lattice_pairs(&x, 1000),
        Err(pcmult::Error::BoundExceeded { .. })
    ));
}

#[test]
fn five_term_cases() {
    let cases: Vec<(&str, Box<dyn Fn(&PcGroup) -> Vec<usize>>)> = vec![
        ("D4", Box::new(|g: &PcGroup| g.center().members())),
        ("Q8", Box::new(|g: &PcGroup| g.center().members())),
        (
            "G243_28",
            Box::new(|g: &PcGroup| g.derived_subgroup().members()),
        ),
        ("S3", Box::new(|g: &PcGroup| g.derived_subgroup().members())),
        ("A4", Box::new(|g: &PcGroup| g.derived_subgroup().members())),
    ];
    for (name, n) in cases {
        let g = group(name);
        let r = five_term_check(&g, &n(&g), DEFAULT_ELEMENT_BOUND, DEFAULT_COVER_BOUND).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.checks);
        assert!(!r.partial, "{name}");
        assert!(r.checks.len() >= 8);
    }
    let g = group("D4");
    let r = five_term_check(&g, &g.center().members(), 5000, 200_000).unwrap();
    assert!(r.b0_quotient.is_trivial());
    assert_eq!(r.third_term_order, 1);
    let g = group("G243_28");
    let r = five_term_check(&g, &g.derived_subgroup().members(), 5000, 200_000).unwrap();
    assert!(r.b0_quotient.is_trivial());
    assert_eq!(r.third_term_order, 1);
    assert_eq!(r.abelianization_quotient, InvariantList::from_u64(&[3, 3]));
}

#[test]
fn five_term_degenerate_cases() {
    let g = group("D4");
    let all: Vec<usize> = (0..8).collect();
    let r = five_term_check(&g, &all, 5000, 200_000).unwrap();
    assert!(r.passed());
    let r = five_term_check(&g, &[0], 5000, 200_000).unwrap();
    assert!(r.passed());
    assert_eq!(r.third_term_order, 1);
    // tiny table bound forces the partial report
    let g = group("G243_28");
    let r = five_term_check(&g, &g.center().members(), 5000, 10).unwrap();
    assert!(r.partial);
    assert!(r.image_rho.is_none());
}

#[test]
fn class_two_and_blackburn_evens() {
    for name in ["Heis3", "Heis5", "C2xC2", "C3xC3xC3", "D4", "Q8"] {
        let g = group(name);
        let x = ExtSquareData::new(&g).unwrap();
        let c = class2_check(&g, &x).unwrap();
        assert!(c.passed, "{name}");
        let be = blackburn_evens_multiplier_order(&g).unwrap();
        assert_eq!(be, x.multiplier().order(), "{name}");
    }
    let heis = group("Heis3");
    let x = ExtSquareData::new(&heis).unwrap();
    assert_eq!(class2_check(&heis, &x).unwrap().ker_phi, 1);
    let v = group("C2xC2");
    let x = ExtSquareData::new(&v).unwrap();
    let c = class2_check(&v, &x).unwrap();
    assert_eq!((c.ker_phi, c.ker_psi), (2, 2));
    // hypotheses
    assert!(blackburn_evens_multiplier_order(&group("S3")).is_err());
    assert!(blackburn_evens_multiplier_order(&group("C4xC2")).is_err());
    let g = group("G243_28");
    let x = ExtSquareData::new(&g).unwrap();
    assert!(class2_check(&g, &x).is_err());
}

#[test]
fn frobenius_groups() {
    for name in ["S3", "A4"] {
        let g = group(name);
        let n = g.derived_subgroup().members();
        let r = frobenius_checks(&g, &n, PAIR_BOUND).unwrap();
        assert!(r.is_frobenius, "{name}");
        assert!(r.passed, "{name}");
        assert_eq!(r.pair_failures, 0);
        assert!(r.kernel_abelian);
        assert_eq!(r.bogomolov, Some(InvariantList::trivial()));
    }
    let g = group("S3");
    let r = frobenius_checks(&g, &g.derived_subgroup().members(), PAIR_BOUND).unwrap();
    assert_eq!(r.commuting_pairs, 18);
    let d4 = group("D4");
    let rot = d4.closure(&[d4.generator_indices()[1]]).members();
    let r = frobenius_checks(&d4, &rot, PAIR_BOUND).unwrap();
    assert!(!r.is_frobenius);
    assert!(r.reason.is_some());
}

#[test]
fn solvable_radical_divisibility_over_all_normal_subgroups() {
    for name in ["D4", "Q8", "A4", "S3", "Heis3", "SD16"] {
        let g = group(name);
        // normal closures of single elements give a spread of normal subgroups
        let mut seen = Vec::new();
        for x in 0..g.order() {
            let n = g.normal_closure(&[x]).members();
            if seen.contains(&n) {
                continue;
            }
            let r = five_term_check(&g, &n, 5000, 200_000).unwrap();
            assert!(r.passed(), "{name} {n:?}: {:?}", r.checks);
            seen.push(n);
        }
    }
}

#[test]
fn trivial_group_pipeline() {
    let p = PcPresentation::new("1", vec![], vec![], vec![]).unwrap();
    let g = PcGroup::new(p, 10).unwrap();
    let x = ExtSquareData::new(&g).unwrap();
    assert!(x.multiplier().is_trivial());
    let r = bogomolov_multiplier(&x, Method::Both, 100).unwrap();
    assert!(r.bogomolov.is_trivial());
}
