use num_rational::Ratio;

use qga_core::grouprep::{
    make_abelian, make_metacyclic, make_polycyclic, make_two_gen, PcPresentation,
};
use qga_core::oracle::{
    char_center, char_kernel, character_table, epsilon, galois_classes, idempotent_e,
    idempotent_eq, is_central_type, is_gvz, is_nested_gvz, verify_pci_theorem, CharTable,
    DEFAULT_BOUND,
};
use qga_core::{AbelianPType, FiniteGroupRep, GroupAlgebraElement, TwoGenParams};

fn corpus() -> Vec<FiniteGroupRep> {
    let two_gen = [
        (1, 1, 1, 1, 1),
        (1, 1, 1, 0, 1),
        (2, 1, 1, 1, 1),
        (2, 2, 1, 0, 1),
        (3, 1, 1, 0, 1),
    ];
    let mut out: Vec<FiniteGroupRep> = two_gen
        .iter()
        .map(|&(a, b, c, r, s)| {
            make_two_gen(&TwoGenParams::new(3, a, b, c, r, s).unwrap()).unwrap()
        })
        .collect();
    out.push(make_metacyclic(1, 3).unwrap());
    out.push(make_metacyclic(2, 3).unwrap());
    out.push(make_polycyclic(&PcPresentation::nenciu(1, 5).unwrap()).unwrap());
    out.push(make_abelian(&AbelianPType::new(3, [1, 2]).unwrap()).unwrap());
    out
}

fn class_idempotents<'g>(t: &CharTable<'g>) -> Vec<GroupAlgebraElement<'g, Ratio<i128>>> {
    galois_classes(t)
        .iter()
        .map(|c| idempotent_eq(t, c[0]).unwrap())
        .collect()
}

#[test]
fn rational_idempotents_are_complete_and_orthogonal() {
    for g in &corpus() {
        let t = character_table(g).unwrap();
        let es = class_idempotents(&t);
        let sum = es
            .iter()
            .fold(GroupAlgebraElement::zero(g), |s, e| s.add(e));
        assert_eq!(sum, GroupAlgebraElement::one(g), "{}", g.label());
        for (i, a) in es.iter().enumerate() {
            assert!(a.is_central());
            for b in &es[i + 1..] {
                assert!(a.mul(b).is_zero(), "{}", g.label());
            }
        }
    }
}

#[test]
fn eq_is_independent_of_the_class_representative() {
    let g = make_metacyclic(2, 3).unwrap();
    let t = character_table(&g).unwrap();
    for class in galois_classes(&t) {
        let first = idempotent_eq(&t, class[0]).unwrap();
        assert!(class
            .iter()
            .all(|&j| idempotent_eq(&t, j).unwrap() == first));
        let traced = class
            .iter()
            .map(|&j| idempotent_e(&t, j).unwrap())
            .reduce(|a, b| a.add(&b))
            .unwrap();
        assert_eq!(traced.to_rational().unwrap(), first);
    }
}

#[test]
fn pci_theorem_on_small_groups() {
    for g in &corpus() {
        let report = verify_pci_theorem(g, DEFAULT_BOUND).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{}: {failures:?}", g.label());
    }
}

#[test]
fn nonlinear_extraspecial_idempotent_is_epsilon() {
    let g = make_two_gen(&TwoGenParams::new(3, 1, 1, 1, 1, 1).unwrap()).unwrap();
    let t = character_table(&g).unwrap();
    let i = (0..t.len()).find(|&i| t.degree(i) == 3).unwrap();
    assert_eq!(char_center(&t, i).order(), 3);
    assert!(char_kernel(&t, i).is_trivial());
    assert_eq!(
        idempotent_eq(&t, i).unwrap(),
        epsilon(&char_center(&t, i), &char_kernel(&t, i)).unwrap()
    );
}

#[test]
fn predicates_and_galois_kernel_equivalence() {
    for g in &corpus() {
        let t = character_table(g).unwrap();
        assert!(
            is_gvz(&t).unwrap() && is_nested_gvz(&t).unwrap(),
            "{}",
            g.label()
        );
        assert!((0..t.len()).all(|i| is_central_type(&t, i).unwrap()));
        let classes = galois_classes(&t);
        let class_of = |i: usize| classes.iter().position(|c| c.contains(&i)).unwrap();
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                if t.degree(i) != t.degree(j) || t.degree(i) == 1 {
                    continue;
                }
                let conjugate = class_of(i) == class_of(j);
                assert_eq!(
                    conjugate,
                    char_kernel(&t, i) == char_kernel(&t, j),
                    "{} chi{i} chi{j}",
                    g.label()
                );
            }
        }
    }
    let w = make_polycyclic(&PcPresentation::wreath_cp_cp(3).unwrap()).unwrap();
    assert!(!is_gvz(&character_table(&w).unwrap()).unwrap());
}
