//! Oracle tests for finite bicategories: validation, the bigroupoid
//! decision, cell composition, strict homomorphisms, and the stock
//! generators. Expected counts are frozen from independent hand
//! computations.

use nervekit::*;
use std::collections::BTreeMap;

fn z2_delooping() -> FiniteBicategory {
    locally_discrete(&cyclic_group_category(2))
}

/// The 2-group of the crossed module Z/2 -> 1 (trivial boundary and action).
fn two_group_z2_to_1() -> FiniteBicategory {
    let h = cyclic_group_category(2);
    let g = cyclic_group_category(1);
    let t: BTreeMap<Id, Id> = [("g0", "g0"), ("g1", "g0")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let mut action = BTreeMap::new();
    for y in &h.morphisms {
        action.insert(("g0".to_string(), y.clone()), y.clone());
    }
    build_two_group(&h, &g, &t, &action).unwrap()
}

/// The 2-group of the crossed module id : Z/2 -> Z/2 with trivial action.
fn two_group_z2_id() -> FiniteBicategory {
    let h = cyclic_group_category(2);
    let g = cyclic_group_category(2);
    let t: BTreeMap<Id, Id> = h.morphisms.iter().map(|y| (y.clone(), y.clone())).collect();
    let mut action = BTreeMap::new();
    for x in &g.morphisms {
        for y in &h.morphisms {
            action.insert((x.clone(), y.clone()), y.clone());
        }
    }
    build_two_group(&h, &g, &t, &action).unwrap()
}

/// The 2-group of the parity map Z/4 -> Z/2 with trivial action.
fn two_group_z4_parity() -> FiniteBicategory {
    let h = cyclic_group_category(4);
    let g = cyclic_group_category(2);
    let t: BTreeMap<Id, Id> = (0..4)
        .map(|i| (format!("g{}", i), format!("g{}", i % 2)))
        .collect();
    let mut action = BTreeMap::new();
    for x in &g.morphisms {
        for y in &h.morphisms {
            action.insert((x.clone(), y.clone()), y.clone());
        }
    }
    build_two_group(&h, &g, &t, &action).unwrap()
}

#[test]
fn locally_discrete_groups_validate_and_are_bigroupoids() {
    for n in [2usize, 3, 6] {
        let b = locally_discrete(&cyclic_group_category(n));
        let report = validate_bicategory(&b);
        assert!(report.passed, "Z/{}: {:?}", n, report.failure);
        let big = is_bigroupoid(&b).unwrap();
        assert!(big.passed, "Z/{}: {:?}", n, big.failure);
    }
}

#[test]
fn multiplicative_monoid_delooping_is_not_a_bigroupoid() {
    // {0, 1} under multiplication: 0 has no inverse, so the 1-cell 0 is not
    // an equivalence
    let elems: Vec<Id> = vec!["0".into(), "1".into()];
    let m = one_object_category(&elems, "1", |a, b| {
        if a == "0" || b == "0" {
            "0".into()
        } else {
            "1".into()
        }
    });
    let b = locally_discrete(&m);
    assert!(validate_bicategory(&b).passed);
    let big = is_bigroupoid(&b).unwrap();
    assert!(!big.passed);
    let v = big.failure.unwrap();
    assert_eq!(v.axiom, "one-cell equivalence");
    assert_eq!(v.witness, "0");
}

#[test]
fn ordinal_bicategories_have_frozen_counts() {
    let i2 = build_ordinal(2);
    assert_eq!(i2.objects.len(), 3);
    assert_eq!(i2.one_cells.len(), 6);
    assert_eq!(i2.two_cells.len(), 6);
    assert!(validate_bicategory(&i2).passed);
    assert!(validate_bicategory(&build_ordinal(3)).passed);
    // the terminal bicategory
    let i0 = build_ordinal(0);
    assert_eq!(
        (i0.objects.len(), i0.one_cells.len(), i0.two_cells.len()),
        (1, 1, 1)
    );
    // no arrow back from 1 to 0
    let big = is_bigroupoid(&build_ordinal(1)).unwrap();
    assert!(!big.passed);
    assert_eq!(big.failure.unwrap().witness, "0->1");
}

#[test]
fn two_groups_validate_with_frozen_cell_counts() {
    let a = two_group_z2_to_1();
    assert_eq!(a.objects.len(), 1);
    assert_eq!(a.one_cells.len(), 1);
    assert_eq!(a.two_cells.len(), 2);
    let report = validate_bicategory(&a);
    assert!(report.passed, "{:?}", report.failure);
    assert!(is_bigroupoid(&a).unwrap().passed);

    let b = two_group_z2_id();
    assert_eq!(b.one_cells.len(), 2);
    assert_eq!(b.two_cells.len(), 4);
    let report = validate_bicategory(&b);
    assert!(report.passed, "{:?}", report.failure);
    assert!(is_bigroupoid(&b).unwrap().passed);

    let c = two_group_z4_parity();
    assert_eq!(c.one_cells.len(), 2);
    assert_eq!(c.two_cells.len(), 8);
    let report = validate_bicategory(&c);
    assert!(report.passed, "{:?}", report.failure);
    assert!(is_bigroupoid(&c).unwrap().passed);
}

#[test]
fn trivial_kernel_two_group_recovers_the_delooping() {
    // crossed module 1 -> G: only identity 2-cells remain
    let h = cyclic_group_category(1);
    let g = cyclic_group_category(3);
    let t: BTreeMap<Id, Id> = BTreeMap::from([("g0".to_string(), "g0".to_string())]);
    let action: BTreeMap<(Id, Id), Id> = g
        .morphisms
        .iter()
        .map(|x| ((x.clone(), "g0".to_string()), "g0".to_string()))
        .collect();
    let b = build_two_group(&h, &g, &t, &action).unwrap();
    let d = locally_discrete(&cyclic_group_category(3));
    assert_eq!(b.one_cells, d.one_cells);
    assert_eq!(b.two_cells.len(), d.two_cells.len());
    assert_eq!(b.hcomp1, d.hcomp1);
    assert!(validate_bicategory(&b).passed);
    assert!(is_bigroupoid(&b).unwrap().passed);
}

#[test]
fn crossed_module_axioms_are_enforced() {
    // boundary that is not a homomorphism: Z/2 -> Z/2 swapping the unit
    let h = cyclic_group_category(2);
    let g = cyclic_group_category(2);
    let t: BTreeMap<Id, Id> =
        BTreeMap::from([("g0".to_string(), "g1".to_string()), ("g1".to_string(), "g0".to_string())]);
    let mut action = BTreeMap::new();
    for x in &g.morphisms {
        for y in &h.morphisms {
            action.insert((x.clone(), y.clone()), y.clone());
        }
    }
    match build_two_group(&h, &g, &t, &action) {
        Err(EngineError::NotCrossedModule(msg)) => {
            assert!(msg.contains("homomorphism"), "{}", msg)
        }
        other => panic!("expected a crossed-module failure, got {:?}", other),
    }
}

#[test]
fn corrupted_associator_fails_the_pentagon() {
    let mut b = two_group_z2_to_1();
    // replace the associator component with the nonidentity endo 2-cell on
    // the same 1-cell; typing and invertibility still hold
    let key = ("g0".to_string(), "g0".to_string(), "g0".to_string());
    assert_eq!(b.assoc[&key], "g0|g0");
    b.assoc.insert(key, "g0|g1".to_string());
    let report = validate_bicategory(&b);
    assert!(!report.passed);
    assert_eq!(report.failure.unwrap().axiom, "pentagon");
}

#[test]
fn corrupted_unitor_fails_the_triangle() {
    let mut b = two_group_z2_to_1();
    assert_eq!(b.runitor["g0"], "g0|g0");
    b.runitor.insert("g0".to_string(), "g0|g1".to_string());
    let report = validate_bicategory(&b);
    assert!(!report.passed);
    assert_eq!(report.failure.unwrap().axiom, "triangle");
}

#[test]
fn corrupted_horizontal_composition_fails_interchange() {
    let mut b = two_group_z2_to_1();
    let key = ("g0|g1".to_string(), "g0|g1".to_string());
    assert_eq!(b.hcomp2[&key], "g0|g0");
    b.hcomp2.insert(key, "g0|g1".to_string());
    let report = validate_bicategory(&b);
    assert!(!report.passed);
    assert_eq!(report.failure.unwrap().axiom, "interchange");
}

#[test]
fn corrupted_associator_fails_naturality_when_boundaries_move() {
    // in the parity 2-group some 2-cells change the underlying 1-cell, so a
    // corrupted associator component is caught by a naturality square before
    // the pentagon is ever consulted
    let mut b = two_group_z4_parity();
    let key = ("g1".to_string(), "g1".to_string(), "g1".to_string());
    assert_eq!(b.assoc[&key], "g1|g0");
    // g2 lies in the kernel of the boundary, so the replacement is still a
    // correctly typed endo 2-cell
    b.assoc.insert(key, "g1|g2".to_string());
    let report = validate_bicategory(&b);
    assert!(!report.passed);
    assert_eq!(report.failure.unwrap().axiom, "associator naturality");
}

#[test]
fn corrupted_face_typing_is_reported_structurally() {
    let mut b = z2_delooping();
    b.s1.insert("g1".to_string(), "missing".to_string());
    let report = validate_bicategory(&b);
    assert!(!report.passed);
    assert_eq!(report.failure.unwrap().axiom, "two-cell boundary typing");
}

#[test]
fn span_bicategories_validate_with_frozen_counts() {
    let b = span_bicategory(3);
    assert_eq!(b.objects.len(), 3);
    // hand count: sum over ordered pairs (x, y) of sets of sizes 0..=2 of
    // the spans with injective legs: 1+1+1+1+2+3+1+3+9 = 22
    assert_eq!(b.one_cells.len(), 22);
    let report = validate_bicategory(&b);
    assert!(report.passed, "{:?}", report.failure);
    let small = span_bicategory(2);
    let report = validate_bicategory(&small);
    assert!(report.passed, "{:?}", report.failure);
}

#[test]
fn span_associators_are_generically_nonidentity() {
    let b = span_bicategory(3);
    let identities: std::collections::BTreeSet<&Id> = b.id2.values().collect();
    let nontrivial = b.assoc.values().filter(|a| !identities.contains(a)).count();
    assert!(nontrivial > 0, "all associators were identities");
    // a span with no backwards partner: not every 1-cell is an equivalence
    let big = is_bigroupoid(&b).unwrap();
    assert!(!big.passed);
}

#[test]
fn cell_composition_helpers_agree_with_the_tables() {
    let b = two_group_z2_to_1();
    // the nonidentity endo 2-cell is its own vertical inverse
    let phi = "g0|g1".to_string();
    let inv = b.inverse2(&phi).unwrap().clone();
    assert_eq!(
        compose_cells(&b, CellKind::Vertical, &[inv, phi.clone()]).unwrap(),
        "g0|g0"
    );
    // whiskering by the identity 1-cell fixes the cell in a strict 2-group
    assert_eq!(
        compose_cells(&b, CellKind::WhiskerLeft, &["g0".to_string(), phi.clone()]).unwrap(),
        phi
    );
    assert_eq!(
        compose_cells(&b, CellKind::WhiskerRight, &[phi.clone(), "g0".to_string()]).unwrap(),
        phi
    );
    // both evaluation orders of a 2x2 grid agree (interchange instance)
    let psi = "g0|g0".to_string();
    let row_first = b
        .vertical(
            &b.horizontal2(&psi, &phi).unwrap(),
            &b.horizontal2(&phi, &psi).unwrap(),
        )
        .unwrap();
    let column_first = b
        .horizontal2(
            &b.vertical(&psi, &phi).unwrap(),
            &b.vertical(&phi, &psi).unwrap(),
        )
        .unwrap();
    assert_eq!(row_first, column_first);
    // non-composable input errors
    assert!(matches!(
        compose_cells(&b, CellKind::Vertical, &[phi.clone()]),
        Err(EngineError::NotComposable(_))
    ));
}

#[test]
fn strict_homomorphisms_validate_and_compose() {
    let b = locally_discrete(&cyclic_group_category(3));
    let ident = StrictHomomorphism::identity(&b);
    assert!(validate_homomorphism(&ident).passed);
    // inversion is the other endomorphism of the delooping of Z/3
    let swap = |f: &Id| -> Id {
        match f.as_str() {
            "g1" => "g2".to_string(),
            "g2" => "g1".to_string(),
            other => other.to_string(),
        }
    };
    let inversion = StrictHomomorphism {
        source: b.clone(),
        target: b.clone(),
        f0: ident.f0.clone(),
        f1: b.one_cells.iter().map(|f| (f.clone(), swap(f))).collect(),
        f2: b.two_cells.iter().map(|f| (f.clone(), swap(f))).collect(),
    };
    let report = validate_homomorphism(&inversion);
    assert!(report.passed, "{:?}", report.failure);
    assert_ne!(inversion.f1, ident.f1);
    assert_eq!(inversion.then(&inversion).unwrap(), ident);
    // breaking composition is caught
    let mut broken = inversion.clone();
    broken.f1.insert("g1".to_string(), "g1".to_string());
    assert!(!validate_homomorphism(&broken).passed);
}
