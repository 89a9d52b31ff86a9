//! Principal 2-bundles of bigroupoids over finite bases: exact fibrations of
//! simplicial maps, the principality axioms, the nerve-level
//! characterization (augmented, aspherical, determined by levels ≤ 1), and
//! the nonabelian 2-cocycle condition on nerve 3-simplices.

use crate::action::{
    action_bicategory, canonical_projection, self_action, tangent_projection, validate_fibered_action,
    BicatAction, FiberedAction,
};
use crate::bicategory::{is_bigroupoid, FiniteBicategory};
use crate::category::FiniteCategory;
use crate::nerve::{duskin_nerve, nerve_map, three_simplex_identity, NerveSimplex2};
use crate::report::{EngineError, Result, VerificationReport};
use crate::simplicial::{
    horn_set, simplicial_kernel, tuple_id, validate_augmented, AugmentedSimplexTable, Id,
    SimplexTable, SimplicialMap,
};
use std::collections::{BTreeMap, BTreeSet};

/// A fibered action of a bigroupoid on a groupoid, proposed as a principal
/// 2-bundle over its base set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsorCandidate {
    pub action: FiberedAction,
}

// ---------------------------------------------------------------------------
// exact fibrations
// ---------------------------------------------------------------------------

/// Whether a simplicial map is an exact fibration in dimension `n`: for
/// every horn index `0 ≤ k ≤ n`, the square formed by the map and the horn
/// projections is a pullback, checked element-wise as bijectivity of
/// `E_n → Λ^k_n(E) ×_{Λ^k_n(B)} B_n`.
pub fn is_exact_fibration(m: &SimplicialMap, n: usize) -> Result<VerificationReport> {
    let subject = "exact fibration";
    if n == 0 {
        return Err(EngineError::DimensionOutOfRange(
            "exact fibration dimension must be at least 1".into(),
        ));
    }
    if n > m.source.dim_cap() || n > m.target.dim_cap() {
        return Err(EngineError::TruncatedAboveCap {
            n,
            cap: m.source.dim_cap().min(m.target.dim_cap()),
        });
    }
    for k in 0..=n {
        let horns = horn_set(&m.source, n, k)?;
        // the fiber product Λ^k_n(E) ×_{Λ^k_n(B)} B_n
        let mut fiber: BTreeSet<(Vec<Id>, Id)> = BTreeSet::new();
        for t in &horns.tuples {
            for b in m.target.level(n) {
                let mut matches = true;
                let mut slot = 0;
                for i in 0..=n {
                    if i == k {
                        continue;
                    }
                    if &m.components[n - 1][&t[slot]] != m.target.d(n, i, b) {
                        matches = false;
                        break;
                    }
                    slot += 1;
                }
                if matches {
                    fiber.insert((t.clone(), b.clone()));
                }
            }
        }
        // the induced map on elements
        let mut image: BTreeSet<(Vec<Id>, Id)> = BTreeSet::new();
        for e in m.source.level(n) {
            let pair = (horns.horn[e].clone(), m.components[n][e].clone());
            if !image.insert(pair.clone()) {
                return Ok(VerificationReport::fail(
                    subject,
                    format!("pullback square (k = {})", k),
                    format!("two simplices over the fiber element {:?}", pair),
                ));
            }
        }
        if image != fiber {
            let witness = fiber
                .difference(&image)
                .next()
                .or_else(|| image.difference(&fiber).next())
                .unwrap();
            return Ok(VerificationReport::fail(
                subject,
                format!("pullback square (k = {})", k),
                format!("{:?}", witness),
            ));
        }
    }
    Ok(VerificationReport::pass(subject))
}

/// Whether a simplicial map is an exact fibration in every dimension from
/// `n` up to `bound`; the report records that higher dimensions rest on the
/// coskeletal policy of the tables.
pub fn is_simplicial_action(m: &SimplicialMap, n: usize, bound: usize) -> Result<VerificationReport> {
    let subject = "simplicial action";
    let m = m.materialize_to(bound)?;
    for dim in n..=bound {
        let r = is_exact_fibration(&m, dim)?;
        if !r.passed {
            let v = r.failure.unwrap();
            return Ok(VerificationReport::fail(
                subject,
                format!("dimension {}: {}", dim, v.axiom),
                v.witness,
            ));
        }
    }
    Ok(VerificationReport::pass(subject)
        .with_note(format!("dimensions above {} rest on the coskeletal policy", bound)))
}

// ---------------------------------------------------------------------------
// principality axioms
// ---------------------------------------------------------------------------

/// Check the principal-2-bundle axioms: both projections are surjective and
/// the induced functor `(p, f) ↦ (p, p ◁ f)` from the momentum fiber
/// product to the base fiber product is an equivalence, decided as fully
/// faithful plus surjective on objects.
pub fn check_torsor_axioms(t: &TorsorCandidate) -> Result<VerificationReport> {
    let subject = "principality";
    let a = &t.action.action;
    if !a.category.is_groupoid() {
        return Err(EngineError::NotGroupoid(
            "the acted-on category is not a groupoid".into(),
        ));
    }
    let bg = is_bigroupoid(&a.bicategory)?;
    if !bg.passed {
        return Err(EngineError::NotBigroupoid(format!(
            "{:?}",
            bg.failure.unwrap()
        )));
    }
    if t.action.base.is_empty() && !a.category.objects.is_empty() {
        return Err(EngineError::NotEpimorphism(
            "empty base under a nonempty total category".into(),
        ));
    }
    let fib = validate_fibered_action(&t.action);
    if !fib.passed {
        let v = fib.failure.unwrap();
        return Ok(VerificationReport::fail(subject, v.axiom, v.witness));
    }

    // surjectivity of the base projection
    let hit: BTreeSet<&Id> = t.action.pi0.values().collect();
    if let Some(x) = t.action.base.iter().find(|x| !hit.contains(x)) {
        return Ok(VerificationReport::fail(
            subject,
            "base projection epimorphism",
            x.clone(),
        ));
    }
    // surjectivity of the momentum
    let hit: BTreeSet<&Id> = a.momentum.values().collect();
    if let Some(x) = a.bicategory.objects.iter().find(|x| !hit.contains(x)) {
        return Ok(VerificationReport::fail(
            subject,
            "momentum epimorphism",
            x.clone(),
        ));
    }

    let p_cat = &a.category;
    // surjective on objects: every base-fiber pair (p, q) is (p, p ◁ f)
    for p in &p_cat.objects {
        for q in &p_cat.objects {
            if t.action.pi0[p] != t.action.pi0[q] {
                continue;
            }
            let found = a
                .act0
                .iter()
                .any(|((p2, _), r)| p2 == p && r == q);
            if !found {
                return Ok(VerificationReport::fail(
                    subject,
                    "induced functor surjectivity on objects",
                    format!("({}, {})", p, q),
                ));
            }
        }
    }

    // fully faithful: hom-set bijections between all object pairs of the
    // momentum fiber product
    let b = &a.bicategory;
    let mut cells_by_pair: BTreeMap<(&Id, &Id), Vec<&Id>> = BTreeMap::new();
    for phi in &b.two_cells {
        cells_by_pair
            .entry((&b.s1[phi], &b.t1[phi]))
            .or_default()
            .push(phi);
    }
    let empty: Vec<&Id> = Vec::new();
    for (p, f) in a.act0.keys() {
        for (q, g) in a.act0.keys() {
            let pf = &a.act0[&(p.clone(), f.clone())];
            let qg = &a.act0[&(q.clone(), g.clone())];
            let mut image: BTreeSet<(Id, Id)> = BTreeSet::new();
            let mut domain_size = 0usize;
            for m in &p_cat.morphisms {
                if p_cat.src(m) != p || p_cat.tgt(m) != q {
                    continue;
                }
                for phi in cells_by_pair.get(&(f, g)).unwrap_or(&empty) {
                    domain_size += 1;
                    let moved = a.act1[&(m.clone(), (*phi).clone())].clone();
                    image.insert((m.clone(), moved));
                }
            }
            if image.len() != domain_size {
                return Ok(VerificationReport::fail(
                    subject,
                    "induced functor fully faithful",
                    format!("hom(({}, {}), ({}, {})) is not embedded", p, f, q, g),
                ));
            }
            let mut target_size = 0usize;
            for m in &p_cat.morphisms {
                if p_cat.src(m) != p || p_cat.tgt(m) != q {
                    continue;
                }
                for n in &p_cat.morphisms {
                    if p_cat.src(n) == pf && p_cat.tgt(n) == qg {
                        target_size += 1;
                    }
                }
            }
            if image.len() != target_size {
                return Ok(VerificationReport::fail(
                    subject,
                    "induced functor fully faithful",
                    format!("hom(({}, {}), ({}, {})) is not full", p, f, q, g),
                ));
            }
        }
    }

    Ok(VerificationReport::pass(subject))
}

// ---------------------------------------------------------------------------
// the nerve-level characterization
// ---------------------------------------------------------------------------

/// Verify the nerve-level description of a principal 2-bundle: the nerve of
/// the action bicategory, augmented over the base, is aspherical up to
/// `bound`, the nerve of the projection is an exact fibration from
/// dimension 2 up, and the level-2 table is determined by its boundary
/// (taking faces is a bijection onto the level-2 simplicial kernel). All
/// three sub-checks are recorded in the notes; the report fails on the
/// first failing one.
pub fn verify_glenn_torsor(t: &TorsorCandidate, bound: usize) -> Result<VerificationReport> {
    let subject = "torsor nerve";
    let a = &t.action.action;
    let ab = action_bicategory(a)?;
    let nerve = duskin_nerve(&ab, bound.max(3))?;

    // augmentation over the base via the fiber projection
    let aug: BTreeMap<Id, Id> = t.action.pi0.clone();
    let augmented = AugmentedSimplexTable::new(
        nerve.clone(),
        t.action.base.clone(),
        aug,
        None,
    )?;
    let r = validate_augmented(&augmented);
    if !r.passed {
        let v = r.failure.unwrap();
        return Ok(VerificationReport::fail(subject, v.axiom, v.witness));
    }

    let mut notes: Vec<String> = Vec::new();
    let mut first_failure: Option<(String, String)> = None;

    // (a) the nerve of the projection is an exact fibration from dim 2 up
    let proj = canonical_projection(a)?;
    let proj_nerve = nerve_map(&proj, bound.max(3))?;
    let r = is_simplicial_action(&proj_nerve, 2, bound.max(3))?;
    if r.passed {
        notes.push("projection exact fibration: pass".into());
    } else {
        let v = r.failure.unwrap();
        notes.push(format!(
            "projection exact fibration: fail ({}: {})",
            v.axiom, v.witness
        ));
        first_failure.get_or_insert(("projection exact fibration".into(), v.witness));
    }

    // (b) asphericity of the augmented nerve at every level up to the bound
    let mut aspherical_note = "asphericity: pass".to_string();
    for n in 0..=bound.max(3) {
        let (ok, witness) = crate::simplicial::is_aspherical_augmented(&augmented, n)?;
        if !ok {
            let w = format!("{:?}", witness.unwrap());
            aspherical_note = format!("asphericity: fail at dimension {} ({})", n, w);
            first_failure.get_or_insert(("asphericity".into(), w));
            break;
        }
    }
    notes.push(aspherical_note);

    // (c) the boundary is a bijection from level 2 onto the level-2 kernel
    let kernel = simplicial_kernel(&nerve, 2)?;
    let mut fillers: BTreeMap<Vec<Id>, usize> = BTreeMap::new();
    for tuple in &kernel.tuples {
        fillers.insert(tuple.clone(), 0);
    }
    for boundary in kernel.boundary.values() {
        *fillers.get_mut(boundary).expect("boundaries land in the kernel") += 1;
    }
    match fillers.iter().find(|(_, c)| **c != 1) {
        None => notes.push("level-2 determination: pass".into()),
        Some((tuple, count)) => {
            let w = format!("boundary triple {:?} has {} fillers", tuple, count);
            notes.push(format!("level-2 determination: fail ({})", w));
            first_failure.get_or_insert(("level-2 determination".into(), w));
        }
    }

    let mut report = match first_failure {
        None => VerificationReport::pass(subject),
        Some((axiom, witness)) => VerificationReport::fail(subject, axiom, witness),
    };
    for n in notes {
        report = report.with_note(n);
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// stock constructions
// ---------------------------------------------------------------------------

/// The trivial principal 2-bundle of a bigroupoid over its own objects: the
/// self-action fibered by the target map.
pub fn build_trivial_torsor(b: &FiniteBicategory) -> Result<TorsorCandidate> {
    let bg = is_bigroupoid(b)?;
    if !bg.passed {
        return Err(EngineError::NotBigroupoid(format!(
            "{:?}",
            bg.failure.unwrap()
        )));
    }
    let action = self_action(b)?;
    Ok(TorsorCandidate {
        action: FiberedAction {
            pi0: tangent_projection(b)?,
            base: b.objects.clone(),
            action,
        },
    })
}

/// The pullback of a principal 2-bundle along a map `f` from a new base:
/// objects are pairs of a base point and a fiber object, with all action
/// data acting on the second component.
pub fn build_pullback_torsor(
    t: &TorsorCandidate,
    base: &[Id],
    f: &BTreeMap<Id, Id>,
) -> Result<TorsorCandidate> {
    for m in base {
        match f.get(m) {
            Some(x) if t.action.base.contains(x) => {}
            _ => {
                return Err(EngineError::MalformedData(format!(
                    "base map undefined or mistyped at {}",
                    m
                )))
            }
        }
    }
    let a = &t.action.action;
    let p_cat = &a.category;
    let pair = |m: &Id, p: &Id| tuple_id(&[m.clone(), p.clone()]);

    let mut objects = Vec::new();
    let mut fiber_of: BTreeMap<Id, (Id, Id)> = BTreeMap::new();
    for m in base {
        for p in &p_cat.objects {
            if &f[m] == &t.action.pi0[p] {
                let id = pair(m, p);
                objects.push(id.clone());
                fiber_of.insert(id, (m.clone(), p.clone()));
            }
        }
    }
    objects.sort();

    let mut morphisms = Vec::new();
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for m in base {
        for mor in &p_cat.morphisms {
            if &f[m] != &t.action.pi0[p_cat.src(mor)] {
                continue;
            }
            let id = pair(m, mor);
            src.insert(id.clone(), pair(m, p_cat.src(mor)));
            tgt.insert(id.clone(), pair(m, p_cat.tgt(mor)));
            morphisms.push(id);
        }
    }
    morphisms.sort();

    let mut id = BTreeMap::new();
    for obj in &objects {
        let (m, p) = &fiber_of[obj];
        id.insert(obj.clone(), pair(m, p_cat.identity(p)));
    }
    let mut comp = BTreeMap::new();
    for m in base {
        for (g, h) in p_cat.composable_pairs() {
            if &f[m] != &t.action.pi0[p_cat.src(h)] {
                continue;
            }
            comp.insert(
                (pair(m, g), pair(m, h)),
                pair(m, &p_cat.comp[&(g.clone(), h.clone())]),
            );
        }
    }
    let category = FiniteCategory {
        objects: objects.clone(),
        morphisms,
        src,
        tgt,
        id,
        comp,
    };

    let mut momentum = BTreeMap::new();
    let mut pi0 = BTreeMap::new();
    for obj in &objects {
        let (m, p) = &fiber_of[obj];
        momentum.insert(obj.clone(), a.momentum[p].clone());
        pi0.insert(obj.clone(), m.clone());
    }
    let mut act0 = BTreeMap::new();
    let mut kappa = BTreeMap::new();
    let mut iota = BTreeMap::new();
    for obj in &objects {
        let (m, p) = &fiber_of[obj];
        iota.insert(obj.clone(), pair(m, &a.iota[p]));
        for ((p2, g), q) in &a.act0 {
            if p2 != p {
                continue;
            }
            act0.insert((obj.clone(), g.clone()), pair(m, q));
        }
        for ((p2, g, h), k) in &a.kappa {
            if p2 != p {
                continue;
            }
            kappa.insert((obj.clone(), g.clone(), h.clone()), pair(m, k));
        }
    }
    let mut act1 = BTreeMap::new();
    for m in base {
        for ((mor, phi), n) in &a.act1 {
            if &f[m] != &t.action.pi0[p_cat.src(mor)] {
                continue;
            }
            act1.insert((pair(m, mor), phi.clone()), pair(m, n));
        }
    }

    Ok(TorsorCandidate {
        action: FiberedAction {
            action: BicatAction {
                category,
                bicategory: a.bicategory.clone(),
                momentum,
                act0,
                act1,
                kappa,
                iota,
            },
            base: base.to_vec(),
            pi0,
        },
    })
}

/// A non-principal stock instance: the delooping of the cyclic group of
/// order four acting on four points through the quotient of order two, over
/// a one-point base. Both the principality equivalence and the level-2
/// determination of its nerve fail.
pub fn quotient_action_candidate() -> TorsorCandidate {
    let b = crate::bicategory::locally_discrete(&crate::category::cyclic_group_category(4));
    let objects: Vec<Id> = (0..4).map(|i| format!("p{}", i)).collect();
    let morphisms: Vec<Id> = (0..4).map(|i| format!("id[p{}]", i)).collect();
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    let mut id = BTreeMap::new();
    let mut comp = BTreeMap::new();
    for i in 0..4 {
        src.insert(morphisms[i].clone(), objects[i].clone());
        tgt.insert(morphisms[i].clone(), objects[i].clone());
        id.insert(objects[i].clone(), morphisms[i].clone());
        comp.insert((morphisms[i].clone(), morphisms[i].clone()), morphisms[i].clone());
    }
    let category = FiniteCategory {
        objects: objects.clone(),
        morphisms: morphisms.clone(),
        src,
        tgt,
        id,
        comp,
    };
    let momentum: BTreeMap<Id, Id> = objects.iter().map(|p| (p.clone(), "*".to_string())).collect();
    let acted = |i: usize, j: usize| (i + 2 * (j % 2)) % 4;
    let mut act0 = BTreeMap::new();
    let mut act1 = BTreeMap::new();
    let mut kappa = BTreeMap::new();
    for i in 0..4 {
        for j in 0..4 {
            let g = format!("g{}", j);
            act0.insert((objects[i].clone(), g.clone()), objects[acted(i, j)].clone());
            act1.insert(
                (morphisms[i].clone(), g.clone()),
                morphisms[acted(i, j)].clone(),
            );
            for l in 0..4 {
                kappa.insert(
                    (objects[i].clone(), g.clone(), format!("g{}", l)),
                    morphisms[acted(acted(i, j), l)].clone(),
                );
            }
        }
    }
    let iota: BTreeMap<Id, Id> = objects
        .iter()
        .zip(&morphisms)
        .map(|(p, m)| (p.clone(), m.clone()))
        .collect();
    TorsorCandidate {
        action: FiberedAction {
            action: BicatAction {
                category,
                bicategory: b,
                momentum,
                act0,
                act1,
                kappa,
                iota,
            },
            base: vec!["x0".to_string()],
            pi0: objects.iter().map(|p| (p.clone(), "x0".to_string())).collect(),
        },
    }
}

// ---------------------------------------------------------------------------
// the cocycle condition
// ---------------------------------------------------------------------------

/// Re-verify the 3-simplex coherence identity on every stored 3-simplex of
/// a bicategory nerve: with filling cells `β`, each tetrahedron must
/// satisfy the nonabelian 2-cocycle condition relating its four faces
/// through the associator.
pub fn cocycle_check(x: &SimplexTable, b: &FiniteBicategory) -> Result<VerificationReport> {
    let subject = "cocycle condition";
    if x.dim_cap() < 3 {
        return Err(EngineError::DimensionOutOfRange(
            "cocycle check needs stored 3-simplices".into(),
        ));
    }
    for a in x.level(3) {
        let faces: Vec<Id> = serde_json::from_str(a)
            .map_err(|e| EngineError::Parse(format!("3-simplex id {:?}: {}", a, e)))?;
        if faces.len() != 4 {
            return Err(EngineError::Parse(format!(
                "3-simplex id {:?} has {} faces",
                a,
                faces.len()
            )));
        }
        let t123 = NerveSimplex2::parse(&faces[0])?;
        let t023 = NerveSimplex2::parse(&faces[1])?;
        let t013 = NerveSimplex2::parse(&faces[2])?;
        let t012 = NerveSimplex2::parse(&faces[3])?;
        if !three_simplex_identity(b, &t012, &t123, &t023, &t013)? {
            return Ok(VerificationReport::fail(subject, "2-cocycle identity", a.clone()));
        }
    }
    Ok(VerificationReport::pass(subject))
}
