//! Acceptance suite: one test per top-level guarantee of the engine, each
//! printing a single pass/fail line. Every check is exact — all data is
//! discrete and witnesses are enumerated exhaustively.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use nervekit::*;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

fn criterion(n: usize, name: &str, f: impl FnOnce() + UnwindSafe) {
    match catch_unwind(f) {
        Ok(()) => println!("criterion {} ({}): pass", n, name),
        Err(e) => {
            println!("criterion {} ({}): fail", n, name);
            resume_unwind(e);
        }
    }
}

fn within(limit: Duration, started: Instant, what: &str) {
    let spent = started.elapsed();
    assert!(
        spent <= limit,
        "{} took {:?}, over the {:?} budget",
        what,
        spent,
        limit
    );
}

// ---------------------------------------------------------------------------
// stock generators
// ---------------------------------------------------------------------------

fn boolean_monoid() -> FiniteCategory {
    let elems: Vec<Id> = vec!["0".into(), "1".into()];
    one_object_category(&elems, "1", |a, b| {
        if a == "0" || b == "0" {
            "0".into()
        } else {
            "1".into()
        }
    })
}

fn idempotent_monoid() -> FiniteCategory {
    let elems: Vec<Id> = vec!["a".into(), "e".into()];
    one_object_category(&elems, "e", |x, y| {
        if x == "a" || y == "a" {
            "a".into()
        } else {
            "e".into()
        }
    })
}

fn min_monoid() -> FiniteCategory {
    let elems: Vec<Id> = vec!["m0".into(), "m1".into(), "m2".into()];
    one_object_category(&elems, "m2", |a, b| a.min(b).to_string())
}

/// Two objects with a parallel pair of arrows between them.
fn parallel_pair_category() -> FiniteCategory {
    let objects: Vec<Id> = vec!["a".into(), "b".into()];
    let morphisms: Vec<Id> = vec!["f".into(), "g".into(), "ia".into(), "ib".into()];
    let src: BTreeMap<Id, Id> = [("f", "a"), ("g", "a"), ("ia", "a"), ("ib", "b")]
        .map(|(m, o)| (m.to_string(), o.to_string()))
        .into();
    let tgt: BTreeMap<Id, Id> = [("f", "b"), ("g", "b"), ("ia", "a"), ("ib", "b")]
        .map(|(m, o)| (m.to_string(), o.to_string()))
        .into();
    let id: BTreeMap<Id, Id> = [("a", "ia"), ("b", "ib")]
        .map(|(o, m)| (o.to_string(), m.to_string()))
        .into();
    let comp: BTreeMap<(Id, Id), Id> = [
        (("ia", "ia"), "ia"),
        (("ib", "ib"), "ib"),
        (("f", "ia"), "f"),
        (("g", "ia"), "g"),
        (("ib", "f"), "f"),
        (("ib", "g"), "g"),
    ]
    .map(|((g, f), h)| ((g.to_string(), f.to_string()), h.to_string()))
    .into();
    FiniteCategory {
        objects,
        morphisms,
        src,
        tgt,
        id,
        comp,
    }
}

/// The cospan poset `x -> z <- y`.
fn cospan_category() -> FiniteCategory {
    let objects: Vec<Id> = vec!["x".into(), "y".into(), "z".into()];
    let morphisms: Vec<Id> = vec!["f".into(), "g".into(), "ix".into(), "iy".into(), "iz".into()];
    let src: BTreeMap<Id, Id> = [("f", "x"), ("g", "y"), ("ix", "x"), ("iy", "y"), ("iz", "z")]
        .map(|(m, o)| (m.to_string(), o.to_string()))
        .into();
    let tgt: BTreeMap<Id, Id> = [("f", "z"), ("g", "z"), ("ix", "x"), ("iy", "y"), ("iz", "z")]
        .map(|(m, o)| (m.to_string(), o.to_string()))
        .into();
    let id: BTreeMap<Id, Id> = [("x", "ix"), ("y", "iy"), ("z", "iz")]
        .map(|(o, m)| (o.to_string(), m.to_string()))
        .into();
    let comp: BTreeMap<(Id, Id), Id> = [
        (("ix", "ix"), "ix"),
        (("iy", "iy"), "iy"),
        (("iz", "iz"), "iz"),
        (("f", "ix"), "f"),
        (("g", "iy"), "g"),
        (("iz", "f"), "f"),
        (("iz", "g"), "g"),
    ]
    .map(|((g, f), h)| ((g.to_string(), f.to_string()), h.to_string()))
    .into();
    FiniteCategory {
        objects,
        morphisms,
        src,
        tgt,
        id,
        comp,
    }
}

/// The Klein four-group as a one-object groupoid.
fn klein_four_category() -> FiniteCategory {
    let elems: Vec<Id> = vec!["a".into(), "b".into(), "c".into(), "e".into()];
    one_object_category(&elems, "e", |x, y| {
        if x == "e" {
            y.to_string()
        } else if y == "e" {
            x.to_string()
        } else if x == y {
            "e".into()
        } else {
            // the product of two distinct non-unit elements is the third
            ["a", "b", "c"]
                .iter()
                .find(|z| **z != x && **z != y)
                .unwrap()
                .to_string()
        }
    })
}

/// The symmetric group on three letters; elements are named by the images
/// of 0, 1, 2.
fn symmetric_group_3_category() -> FiniteCategory {
    let elems: Vec<Id> = ["012", "021", "102", "120", "201", "210"]
        .iter()
        .map(|s| format!("s{}", s))
        .collect();
    let digits = |s: &str| -> Vec<usize> {
        s[1..].chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
    };
    one_object_category(&elems, "s012", move |a, b| {
        let pa = digits(a);
        let pb = digits(b);
        let composed: String = (0..3).map(|i| pa[pb[i]].to_string()).collect();
        format!("s{}", composed)
    })
}

fn two_group_z2_to_1() -> FiniteBicategory {
    let h = cyclic_group_category(2);
    let g = cyclic_group_category(1);
    let t: BTreeMap<Id, Id> = h
        .morphisms
        .iter()
        .map(|y| (y.clone(), "g0".to_string()))
        .collect();
    let action: BTreeMap<(Id, Id), Id> = h
        .morphisms
        .iter()
        .map(|y| (("g0".to_string(), y.clone()), y.clone()))
        .collect();
    build_two_group(&h, &g, &t, &action).unwrap()
}

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

fn stock_torsors() -> Vec<TorsorCandidate> {
    let pullback = {
        let trivial = build_trivial_torsor(&locally_discrete(&cyclic_group_category(2))).unwrap();
        let base: Vec<Id> = vec!["m0".into(), "m1".into()];
        let f: BTreeMap<Id, Id> = base.iter().map(|m| (m.clone(), "*".to_string())).collect();
        build_pullback_torsor(&trivial, &base, &f).unwrap()
    };
    vec![
        build_trivial_torsor(&locally_discrete(&cyclic_group_category(2))).unwrap(),
        build_trivial_torsor(&locally_discrete(&cyclic_group_category(3))).unwrap(),
        build_trivial_torsor(&two_group_z2_to_1()).unwrap(),
        pullback,
        quotient_action_candidate(),
    ]
}

// ---------------------------------------------------------------------------
// the criteria
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_category_nerve_characterization() {
    criterion(1, "category nerve characterization", || {
        let start = Instant::now();
        let non_groupoids: Vec<FiniteCategory> = vec![
            ordinal_category(1),
            ordinal_category(2),
            ordinal_category(3),
            ordinal_category(4),
            boolean_monoid(),
            idempotent_monoid(),
            min_monoid(),
            parallel_pair_category(),
            cospan_category(),
        ];
        let groupoids: Vec<FiniteCategory> =
            (2..=6).map(cyclic_group_category).collect();
        assert!(non_groupoids.len() + groupoids.len() >= 10);
        assert!(groupoids.len() >= 5);
        for c in &non_groupoids {
            assert!(validate_category(c).passed);
            assert!(!c.is_groupoid());
            let report = classify(&c.nerve(2).unwrap(), 4).unwrap();
            assert_eq!(
                report.label,
                Classification::WeakKanExact,
                "non-groupoid with objects {:?}",
                c.objects
            );
        }
        for c in &groupoids {
            assert!(c.is_groupoid());
            let report = classify(&c.nerve(2).unwrap(), 4).unwrap();
            assert_eq!(
                report.label,
                Classification::Hypergroupoid(1),
                "groupoid of order {}",
                c.morphisms.len()
            );
        }
        within(Duration::from_secs(10), start, "nerve characterization");
    });
}

#[test]
fn criterion_02_aspherical_implies_kan() {
    criterion(2, "aspherical complexes are Kan", || {
        let one: Vec<Id> = vec!["p".into()];
        let three: Vec<Id> = vec!["p".into(), "q".into(), "r".into()];
        // boundaries surject onto every simplicial kernel for these
        let aspherical: Vec<SimplexTable> = vec![
            constant_complex(&one, 3),
            coskeleton(&constant_complex(&one, 0), 0, 3).unwrap(),
            coskeleton(&constant_complex(&three, 0), 0, 3).unwrap(),
        ];
        // Kan without being aspherical: disconnectedness or group structure
        // breaks kernel surjectivity but never horn filling
        let kan_only: Vec<SimplexTable> = vec![
            constant_complex(&three, 3),
            cyclic_group_category(2).nerve(3).unwrap(),
            cyclic_group_category(3).nerve(3).unwrap(),
        ];
        for x in &aspherical {
            for n in 1..=3 {
                assert!(is_aspherical(x, n).unwrap().0, "level {}", n);
            }
        }
        for x in aspherical.iter().chain(&kan_only) {
            let report = classify(x, 4).unwrap();
            assert!(
                report.grid.values().all(|s| !matches!(s, KanStatus::NotSatisfied { .. })),
                "a stock complex missed a horn"
            );
        }
        // the interval is not aspherical and indeed has an unfillable outer horn
        let interval = standard_simplex(1, 2);
        assert_eq!(classify(&interval, 3).unwrap().label, Classification::WeakKanExact);
        assert!(matches!(
            kan_status(&interval, 2, 0).unwrap(),
            KanStatus::NotSatisfied { .. }
        ));
    });
}

#[test]
fn criterion_03_contraction_synthesis() {
    criterion(3, "contraction synthesis", || {
        let mut stocks: Vec<AugmentedSimplexTable> = Vec::new();
        // shifted nerves with their canonical contraction stripped
        for n in [2usize, 3] {
            let x = cyclic_group_category(n).nerve(3).unwrap();
            let a = decalage(&x).unwrap().dec;
            stocks.push(
                AugmentedSimplexTable::new(a.base.clone(), a.augmentation_set.clone(), a.aug.clone(), None)
                    .unwrap(),
            );
        }
        let shifted = decalage(&duskin_nerve(&locally_discrete(&cyclic_group_category(2)), 3).unwrap())
            .unwrap()
            .dec;
        stocks.push(
            AugmentedSimplexTable::new(
                shifted.base.clone(),
                shifted.augmentation_set.clone(),
                shifted.aug.clone(),
                None,
            )
            .unwrap(),
        );
        // constant complexes and fiberwise zero-coskeleta
        let pts: Vec<Id> = vec!["p".into(), "q".into()];
        let constant = augmented_constant(&pts, 3);
        stocks.push(
            AugmentedSimplexTable::new(
                constant.base.clone(),
                constant.augmentation_set.clone(),
                constant.aug.clone(),
                None,
            )
            .unwrap(),
        );
        let vertices: Vec<Id> = vec!["a".into(), "b".into(), "c".into()];
        let aug: BTreeMap<Id, Id> = [("a", "s"), ("b", "s"), ("c", "t")]
            .map(|(v, s)| (v.to_string(), s.to_string()))
            .into();
        let set: Vec<Id> = vec!["s".into(), "t".into()];
        stocks.push(augmented_cosk0(&vertices, &aug, &set, 2).unwrap());

        for a in &stocks {
            for n in 0..=a.base.dim_cap() {
                assert!(is_aspherical_augmented(a, n).unwrap().0, "level {}", n);
            }
            let built = build_contraction(a).unwrap();
            assert!(built.contraction.is_some());
            let report = validate_augmented(&built);
            assert!(report.passed, "{:?}", report.failure);
        }
    });
}

#[test]
fn criterion_04_coherence_suite() {
    criterion(4, "bicategory coherence suite", || {
        let start = Instant::now();
        // every group of order at most six
        let groups: Vec<FiniteCategory> = (1..=6)
            .map(cyclic_group_category)
            .chain([klein_four_category(), symmetric_group_3_category()])
            .collect();
        for g in &groups {
            let b = locally_discrete(g);
            let report = validate_bicategory(&b);
            assert!(report.passed, "group of order {}: {:?}", g.morphisms.len(), report.failure);
        }
        // crossed-module two-groups
        for b in [two_group_z2_to_1(), two_group_z2_id(), two_group_z4_parity()] {
            let report = validate_bicategory(&b);
            assert!(report.passed, "{:?}", report.failure);
        }
        // spans over small universes
        for n in 1..=3 {
            let report = validate_bicategory(&span_bicategory(n));
            assert!(report.passed, "universe {}: {:?}", n, report.failure);
        }
        // every transport bicategory built from a self-action
        for b in [
            locally_discrete(&cyclic_group_category(2)),
            locally_discrete(&cyclic_group_category(3)),
            two_group_z2_to_1(),
            two_group_z2_id(),
            build_ordinal(2),
        ] {
            let t = action_bicategory(&self_action(&b).unwrap()).unwrap();
            let report = validate_bicategory(&t);
            assert!(report.passed, "{:?}", report.failure);
        }
        // one corruption per axiom family, each caught under the right name
        let mut b = two_group_z2_to_1();
        b.assoc.insert(
            ("g0".into(), "g0".into(), "g0".into()),
            "g0|g1".to_string(),
        );
        assert_eq!(validate_bicategory(&b).failure.unwrap().axiom, "pentagon");

        let mut b = two_group_z2_to_1();
        b.runitor.insert("g0".to_string(), "g0|g1".to_string());
        assert_eq!(validate_bicategory(&b).failure.unwrap().axiom, "triangle");

        let mut b = two_group_z2_to_1();
        b.hcomp2
            .insert(("g0|g1".to_string(), "g0|g1".to_string()), "g0|g1".to_string());
        assert_eq!(validate_bicategory(&b).failure.unwrap().axiom, "interchange");

        let mut b = two_group_z4_parity();
        b.assoc.insert(
            ("g1".into(), "g1".into(), "g1".into()),
            "g1|g2".to_string(),
        );
        assert_eq!(
            validate_bicategory(&b).failure.unwrap().axiom,
            "associator naturality"
        );
        within(Duration::from_secs(30), start, "coherence suite");
    });
}

#[test]
fn criterion_05_bigroupoid_nerves_are_two_hypergroupoids() {
    criterion(5, "bigroupoid nerves are 2-hypergroupoids", || {
        let stock: Vec<FiniteBicategory> = vec![
            locally_discrete(&cyclic_group_category(2)),
            locally_discrete(&cyclic_group_category(3)),
            locally_discrete(&klein_four_category()),
            locally_discrete(&symmetric_group_3_category()),
            two_group_z2_to_1(),
            two_group_z2_id(),
            two_group_z4_parity(),
            action_bicategory(&self_action(&locally_discrete(&cyclic_group_category(2))).unwrap())
                .unwrap(),
        ];
        for b in &stock {
            assert!(is_bigroupoid(b).unwrap().passed);
            let nerve = duskin_nerve(b, 3).unwrap();
            let label = classify(&nerve, 4).unwrap().label;
            match label {
                Classification::Hypergroupoid(m) => assert!(
                    m <= 2,
                    "expected determination in degree at most 2, got {}",
                    m
                ),
                other => panic!("expected a hypergroupoid label, got {:?}", other),
            }
        }
    });
}

/// The levelwise dictionary from the nerve of the transport bicategory of a
/// group delooping onto the shift of the delooping nerve. Level n sends a
/// transport n-simplex to the (n+1)-simplex whose final vertex is the extra
/// one.
fn transport_to_shift_dictionary(b: &FiniteBicategory) -> (SimplicialMap, DecalageBundle) {
    let tangent = action_bicategory(&self_action(b).unwrap()).unwrap();
    let tangent_nerve = duskin_nerve(&tangent, 3).unwrap();
    let full = duskin_nerve(b, 4).unwrap();
    let bundle = decalage(&full).unwrap();

    // level 1: a transport edge (p, h, ψ) becomes the triangle with legs
    // h and p over the composite hypotenuse
    let edge_image = |c: &Id| -> Id {
        let cell = ActionOneCell::parse(c).unwrap();
        let q = b.s1[&cell.psi].clone();
        NerveSimplex2 {
            f01: cell.h.clone(),
            f12: cell.p.clone(),
            f02: q.clone(),
            beta: b.id2[&q].clone(),
        }
        .id()
    };
    // level 2: the three triangle faces transport across the dictionary and
    // the face at the extra vertex collapses to the underlying composite
    let face_image = |s2: &Id| -> Id {
        let s = NerveSimplex2::parse(s2).unwrap();
        let h01 = ActionOneCell::parse(&s.f01).unwrap().h;
        let h12 = ActionOneCell::parse(&s.f12).unwrap().h;
        let h02 = ActionOneCell::parse(&s.f02).unwrap().h;
        let base_face = NerveSimplex2 {
            f01: h01,
            f12: h12,
            f02: h02.clone(),
            beta: b.id2[&h02].clone(),
        };
        tuple_id(&[
            edge_image(&s.f12),
            edge_image(&s.f02),
            edge_image(&s.f01),
            base_face.id(),
        ])
    };
    let mut components: Vec<BTreeMap<Id, Id>> = vec![
        tangent_nerve
            .level(0)
            .iter()
            .map(|p| (p.clone(), p.clone()))
            .collect(),
        tangent_nerve
            .level(1)
            .iter()
            .map(|c| (c.clone(), edge_image(c)))
            .collect(),
        tangent_nerve
            .level(2)
            .iter()
            .map(|s| (s.clone(), face_image(s)))
            .collect(),
        BTreeMap::new(),
    ];
    // level 3: images of the four stored faces plus the derived face at the
    // extra vertex
    for a in tangent_nerve.level(3) {
        let faces: Vec<Id> = serde_json::from_str(a).unwrap();
        let images: Vec<Id> = faces.iter().map(|f| face_image(f)).collect();
        let last_face_parts: Vec<Id> = images
            .iter()
            .map(|x| {
                let parts: Vec<Id> = serde_json::from_str(x).unwrap();
                parts[3].clone()
            })
            .collect();
        let mut all = images.clone();
        all.push(tuple_id(&last_face_parts));
        components[3].insert(a.clone(), tuple_id(&all));
    }
    (
        SimplicialMap {
            source: tangent_nerve,
            target: bundle.d1.source.clone(),
            components,
        },
        bundle,
    )
}

#[test]
fn criterion_06_transport_nerve_is_the_shifted_nerve() {
    criterion(6, "transport nerve matches the shifted nerve", || {
        for order in [2usize, 3] {
            let b = locally_discrete(&cyclic_group_category(order));
            let (dict, bundle) = transport_to_shift_dictionary(&b);
            let report = validate_simplicial_map(&dict);
            assert!(report.passed, "order {}: {:?}", order, report.failure);
            // levelwise bijection
            for n in 0..=3 {
                let images: std::collections::BTreeSet<&Id> = dict.components[n].values().collect();
                assert_eq!(images.len(), dict.source.level(n).len(), "level {}", n);
                assert_eq!(images.len(), dict.target.level(n).len(), "level {}", n);
            }
            // the nerve of the projection is the last-face map under the
            // dictionary
            let proj = canonical_projection(&self_action(&b).unwrap()).unwrap();
            let proj_nerve = nerve_map(&proj, 3).unwrap();
            let composite = dict.then(&bundle.d1).unwrap();
            assert_eq!(proj_nerve.components, composite.components, "order {}", order);
        }
    });
}

#[test]
fn criterion_07_projection_nerves_are_exact_fibrations() {
    criterion(7, "projection nerves are exact fibrations", || {
        let stocks = stock_torsors();
        assert!(stocks.len() >= 4);
        for t in &stocks {
            let proj = canonical_projection(&t.action.action).unwrap();
            let map = nerve_map(&proj, 3).unwrap();
            for n in [2usize, 3] {
                let report = is_exact_fibration(&map, n).unwrap();
                assert!(report.passed, "dimension {}: {:?}", n, report.failure);
            }
        }
    });
}

#[test]
fn criterion_08_torsor_nerve_characterization() {
    criterion(8, "torsor nerve characterization", || {
        let start = Instant::now();
        for b in [
            locally_discrete(&cyclic_group_category(2)),
            locally_discrete(&cyclic_group_category(3)),
            two_group_z2_to_1(),
        ] {
            let t = build_trivial_torsor(&b).unwrap();
            assert!(check_torsor_axioms(&t).unwrap().passed);
            let report = verify_glenn_torsor(&t, 4).unwrap();
            assert!(report.passed, "{:?} {:?}", report.failure, report.notes);
        }
        // a pullback over a two-point base
        let trivial = build_trivial_torsor(&locally_discrete(&cyclic_group_category(2))).unwrap();
        let base: Vec<Id> = vec!["m0".into(), "m1".into()];
        let f: BTreeMap<Id, Id> = base.iter().map(|m| (m.clone(), "*".to_string())).collect();
        let pulled = build_pullback_torsor(&trivial, &base, &f).unwrap();
        assert!(check_torsor_axioms(&pulled).unwrap().passed);
        assert!(verify_glenn_torsor(&pulled, 4).unwrap().passed);

        // the non-principal quotient action fails both characterizations,
        // with matching witnesses: an unreachable fiber pair on the one side
        // and an unfillable boundary triangle on the other
        let bad = quotient_action_candidate();
        let axioms = check_torsor_axioms(&bad).unwrap();
        assert!(!axioms.passed);
        assert_eq!(
            axioms.failure.unwrap().axiom,
            "induced functor surjectivity on objects"
        );
        let nerve_report = verify_glenn_torsor(&bad, 3).unwrap();
        assert!(!nerve_report.passed);
        let determination = nerve_report
            .notes
            .iter()
            .find(|n| n.starts_with("level-2 determination: fail"))
            .expect("determination sub-check must fail");
        assert!(determination.contains("has 0 fillers"), "{}", determination);
        within(Duration::from_secs(60), start, "torsor nerve characterization");
    });
}

#[test]
fn criterion_09_cocycle_condition() {
    criterion(9, "cocycle condition on torsor nerves", || {
        for t in &stock_torsors() {
            let ab = action_bicategory(&t.action.action).unwrap();
            let nerve = duskin_nerve(&ab, 3).unwrap();
            let report = cocycle_check(&nerve, &ab).unwrap();
            assert!(report.passed, "{:?}", report.failure);
        }
    });
}

#[test]
fn criterion_10_nerve_functor_is_faithful() {
    criterion(10, "the nerve functor is injective and functorial", || {
        let z2 = locally_discrete(&cyclic_group_category(2));
        let z3 = locally_discrete(&cyclic_group_category(3));
        let z4 = locally_discrete(&cyclic_group_category(4));
        let tg = two_group_z2_to_1();
        let swap = |f: &Id| -> Id {
            match f.as_str() {
                "g1" => "g2".to_string(),
                "g2" => "g1".to_string(),
                other => other.to_string(),
            }
        };
        let inversion = StrictHomomorphism {
            source: z3.clone(),
            target: z3.clone(),
            f0: z3.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
            f1: z3.one_cells.iter().map(|f| (f.clone(), swap(f))).collect(),
            f2: z3.two_cells.iter().map(|f| (f.clone(), swap(f))).collect(),
        };
        let doubling = StrictHomomorphism {
            source: z2.clone(),
            target: z4.clone(),
            f0: z2.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
            f1: [("g0", "g0"), ("g1", "g2")]
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .into(),
            f2: [("g0", "g0"), ("g1", "g2")]
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .into(),
        };
        let stock: Vec<StrictHomomorphism> = vec![
            StrictHomomorphism::identity(&z2),
            StrictHomomorphism::identity(&z3),
            StrictHomomorphism::identity(&tg),
            inversion.clone(),
            doubling.clone(),
            canonical_projection(&self_action(&z2).unwrap()).unwrap(),
            canonical_projection(&self_action(&z3).unwrap()).unwrap(),
        ];
        for hm in &stock {
            assert!(validate_homomorphism(hm).passed);
            let map = nerve_map(hm, 3).unwrap();
            assert!(validate_simplicial_map(&map).passed);
            // an injective homomorphism induces a levelwise injective map
            let inj = |m: &BTreeMap<Id, Id>| {
                m.values().collect::<std::collections::BTreeSet<_>>().len() == m.len()
            };
            if inj(&hm.f0) && inj(&hm.f1) && inj(&hm.f2) {
                for (n, comp) in map.components.iter().enumerate() {
                    assert!(inj(comp), "level {}", n);
                }
            }
        }
        // distinct parallel homomorphisms induce distinct nerve maps
        let ident3 = StrictHomomorphism::identity(&z3);
        assert_ne!(
            nerve_map(&ident3, 3).unwrap().components,
            nerve_map(&inversion, 3).unwrap().components
        );
        // the nerve respects composition
        let double_inv = inversion.then(&inversion).unwrap();
        assert_eq!(
            nerve_map(&double_inv, 3).unwrap().components,
            nerve_map(&inversion, 3)
                .unwrap()
                .then(&nerve_map(&inversion, 3).unwrap())
                .unwrap()
                .components
        );
        let proj = canonical_projection(&self_action(&z3).unwrap()).unwrap();
        let projected_inversion = proj.then(&inversion).unwrap();
        assert_eq!(
            nerve_map(&projected_inversion, 3).unwrap().components,
            nerve_map(&proj, 3)
                .unwrap()
                .then(&nerve_map(&inversion, 3).unwrap())
                .unwrap()
                .components
        );
    });
}
