//! Oracle tests for the simplicial core: validation, kernels, horns,
//! Kan statuses, classification, asphericity, and map enumeration.
//! Expected values are frozen from independent hand computations.

use nervekit::simplicial::enumerate_simplicial_maps;
use nervekit::*;
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

fn z2_nerve(cap: usize) -> SimplexTable {
    cyclic_group_category(2).nerve(cap).unwrap()
}

#[test]
fn interval_validates_and_is_weak_kan_exact() {
    let x = standard_simplex(1, 2);
    let report = validate_simplicial(&x);
    assert!(report.passed, "{:?}", report.failure);
    // hand count: monotone maps [m] -> [1] number m + 2
    assert_eq!(x.level(0).len(), 2);
    assert_eq!(x.level(1).len(), 3);
    assert_eq!(x.level(2).len(), 4);
    let c = classify(&x, 3).unwrap();
    assert_eq!(c.label, Classification::WeakKanExact);
    // the outer horn (x_1, x_2) = (0-0, 0-1) asks for an edge from 1 to 0
    match kan_status(&x, 2, 0).unwrap() {
        KanStatus::NotSatisfied { witness } => {
            assert_eq!(witness, vec!["0-0".to_string(), "0-1".to_string()]);
        }
        other => panic!("expected an unfillable outer horn, got {:?}", other),
    }
}

#[test]
fn point_is_a_zero_dimensional_hypergroupoid() {
    let x = standard_simplex(0, 2);
    assert!(validate_simplicial(&x).passed);
    let c = classify(&x, 3).unwrap();
    assert_eq!(c.label, Classification::Hypergroupoid(0));
    assert!(c.grid.values().all(|s| s.is_exact()));
}

#[test]
fn group_nerve_validates_with_frozen_level_counts() {
    let x = z2_nerve(3);
    let report = validate_simplicial(&x);
    assert!(report.passed, "{:?}", report.failure);
    // one object, 2^m chains of length m
    assert_eq!(x.level(0).len(), 1);
    assert_eq!(x.level(1).len(), 2);
    assert_eq!(x.level(2).len(), 4);
    assert_eq!(x.level(3).len(), 8);
}

#[test]
fn group_nerve_kernel_and_horn_counts() {
    let x = z2_nerve(2);
    // all faces of the two loops agree, so the kernel is the full cube
    let k2 = simplicial_kernel(&x, 2).unwrap();
    assert_eq!(k2.tuples.len(), 8);
    assert_eq!(k2.boundary.len(), 4);
    // the kernel one level above the cap uses only stored faces; the nerve
    // being determined in degree 2 makes it match the level-3 chain count
    let k3 = simplicial_kernel(&x, 3).unwrap();
    assert_eq!(k3.tuples.len(), 8);
    let h = horn_set(&x, 2, 1).unwrap();
    assert_eq!(h.tuples.len(), 4);
    assert_eq!(h.horn.len(), 4);
    // every horn tuple records the two outer slots only
    for t in &h.tuples {
        assert_eq!(t.len(), 2);
    }
}

#[test]
fn group_nerve_horn_statuses_and_classification() {
    let x = z2_nerve(3);
    assert_eq!(kan_status(&x, 2, 1).unwrap(), KanStatus::Exact);
    assert_eq!(kan_status(&x, 2, 0).unwrap(), KanStatus::Exact);
    // two loops over one vertex: surjective but not injective
    assert_eq!(kan_status(&x, 1, 0).unwrap(), KanStatus::Satisfied);
    let c = classify(&x, 3).unwrap();
    assert_eq!(c.label, Classification::Hypergroupoid(1));
    assert!(c.grid.values().all(|s| s.holds()));
}

/// Rebuild a table from its parts, optionally corrupting one face entry.
fn rebuild_with(
    x: &SimplexTable,
    policy: Policy,
    corrupt: Option<(usize, usize, &str, &str)>,
    drop_level2: Option<&str>,
) -> Result<SimplexTable> {
    let cap = x.dim_cap();
    let mut levels: Vec<Vec<Id>> = (0..=cap).map(|n| x.level(n).to_vec()).collect();
    let mut face: Vec<Vec<BTreeMap<Id, Id>>> = vec![Vec::new()];
    for n in 1..=cap {
        face.push((0..=n).map(|i| x.face_map(n, i).clone()).collect());
    }
    let mut degeneracy: Vec<Vec<BTreeMap<Id, Id>>> = Vec::new();
    for n in 0..cap {
        degeneracy.push((0..=n).map(|i| x.degeneracy_map(n, i).clone()).collect());
    }
    degeneracy.push(Vec::new());
    if let Some((n, i, key, val)) = corrupt {
        face[n][i].insert(key.to_string(), val.to_string());
    }
    if let Some(id) = drop_level2 {
        levels[2].retain(|a| a != id);
        for m in face[2].iter_mut() {
            m.remove(id);
        }
    }
    SimplexTable::new(cap, policy, levels, face, degeneracy)
}

#[test]
fn corrupted_face_table_fails_with_the_violated_identity_named() {
    let x = standard_simplex(2, 2);
    let bad = rebuild_with(&x, Policy::Truncated, Some((2, 0, "0-1-2", "0-1")), None).unwrap();
    let report = validate_simplicial(&bad);
    assert!(!report.passed);
    let v = report.failure.unwrap();
    assert!(v.axiom.starts_with("d_0 d_1"), "axiom was {}", v.axiom);
    assert!(v.witness.contains("0-1-2"), "witness was {}", v.witness);
}

#[test]
fn coskeletal_policy_detects_a_missing_filler() {
    // the group nerve is determined in degree 2 but not in degree 1: its
    // level 2 has 4 chains against 8 kernel tuples, so claiming the
    // degree-1 policy must fail with an unfilled tuple
    let x = z2_nerve(2);
    let bad = rebuild_with(&x, Policy::Coskeletal(1), None, None).unwrap();
    let report = validate_simplicial(&bad);
    assert!(!report.passed);
    let v = report.failure.unwrap();
    assert!(v.axiom.contains("coskeletal"), "axiom was {}", v.axiom);
    assert!(v.witness.contains("no filler"), "witness was {}", v.witness);
}

#[test]
fn asphericity_of_full_and_hollow_triangles() {
    let full = standard_simplex(2, 2);
    let (ok, _) = is_aspherical(&full, 2).unwrap();
    assert!(ok);
    let hollow = boundary_complex(2, 2);
    assert!(validate_simplicial(&hollow).passed);
    // only degenerate 2-simplices exist, so the hollow boundary tuple of the
    // three nondegenerate edges has no filler
    assert_eq!(hollow.level(1).len(), 6);
    assert_eq!(hollow.level(2).len(), 9);
    let (ok, witness) = is_aspherical(&hollow, 2).unwrap();
    assert!(!ok);
    assert!(witness.is_some());
}

#[test]
fn horn_filling_agrees_with_external_map_extension() {
    // the horn condition in dimension (2, 1) is equivalent to extendability
    // of maps from the horn complex along the inclusion into the simplex:
    // check both sides independently on the Z/2 nerve
    let target = z2_nerve(2);
    let horn = horn_complex(2, 1, 2);
    let simplex = standard_simplex(2, 2).with_policy(Policy::Truncated).unwrap();
    let horn_maps = enumerate_simplicial_maps(&horn, &target).unwrap();
    let simplex_maps = enumerate_simplicial_maps(&simplex, &target).unwrap();
    assert_eq!(horn_maps.len(), 4);
    assert_eq!(simplex_maps.len(), 4);
    // restriction of simplex maps to the horn's simplices is a bijection
    // onto the horn maps: external witness that the horn map is exact
    let mut restrictions: BTreeSet<Vec<BTreeMap<Id, Id>>> = BTreeSet::new();
    for f in &simplex_maps {
        let mut restricted = Vec::new();
        for n in 0..=2 {
            let comp: BTreeMap<Id, Id> = horn
                .level(n)
                .iter()
                .map(|a| (a.clone(), f.components[n][a].clone()))
                .collect();
            restricted.push(comp);
        }
        restrictions.insert(restricted);
    }
    let horn_components: BTreeSet<Vec<BTreeMap<Id, Id>>> =
        horn_maps.iter().map(|f| f.components.clone()).collect();
    assert_eq!(restrictions, horn_components);
    assert_eq!(kan_status(&target, 2, 1).unwrap(), KanStatus::Exact);
}

#[test]
fn enumerated_maps_all_validate() {
    let target = z2_nerve(2);
    let horn = horn_complex(2, 0, 2);
    for f in enumerate_simplicial_maps(&horn, &target).unwrap() {
        assert!(validate_simplicial_map(&f).passed);
    }
}

#[test]
fn evaluation_respects_composition_of_monotone_maps() {
    let x = z2_nerve(3);
    for n in 0..=3usize {
        for m in 0..=3usize {
            for f in MonotoneMap::enumerate(m, n) {
                for l in 0..=3usize {
                    for g in MonotoneMap::enumerate(l, m) {
                        let fg = f.compose(&g).unwrap();
                        for a in x.level(n) {
                            let via_f = x.apply_monotone(&f, a).unwrap();
                            let step = x.apply_monotone(&g, &via_f).unwrap();
                            let direct = x.apply_monotone(&fg, a).unwrap();
                            assert_eq!(step, direct, "f {:?} g {:?} at {}", f, g, a);
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Deleting slot k from any kernel tuple yields a horn tuple.
    #[test]
    fn kernel_projections_land_in_horns(order in 1usize..=3, n in 1usize..=3, k in 0usize..=3) {
        prop_assume!(k <= n);
        let x = cyclic_group_category(order).nerve(3).unwrap();
        let kernel = simplicial_kernel(&x, n).unwrap();
        let horns: BTreeSet<Vec<Id>> = horn_set(&x, n, k).unwrap().tuples.into_iter().collect();
        for t in kernel.tuples {
            let mut u = t.clone();
            u.remove(k);
            prop_assert!(horns.contains(&u));
        }
    }

    /// The boundary of every stored simplex is a kernel tuple.
    #[test]
    fn boundaries_are_kernel_tuples(order in 1usize..=3, n in 1usize..=3) {
        let x = cyclic_group_category(order).nerve(3).unwrap();
        let kernel = simplicial_kernel(&x, n).unwrap();
        let tuples: BTreeSet<Vec<Id>> = kernel.tuples.into_iter().collect();
        for t in kernel.boundary.values() {
            prop_assert!(tuples.contains(t));
        }
    }
}
