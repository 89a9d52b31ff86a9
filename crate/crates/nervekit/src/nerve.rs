//! The nerve of a finite bicategory as an explicit simplex table, and the
//! simplicial maps induced by strict homomorphisms.
//!
//! Levels 0 and 1 are the objects and 1-cells. A 2-simplex is a quadruple
//! `(f01, f12, f02, β)` with `β : f12 ∘ f01 ⇒ f02`; its faces are
//! `(d0, d1, d2) = (f12, f02, f01)` and the degeneracies of an edge are its
//! unitors: `s0(f) = ρ_f`, `s1(f) = λ_f`. A 3-simplex is a
//! boundary-compatible quadruple of 2-simplices whose filling cells satisfy
//!
//! ```text
//! β023 · (f23 ∘ β012) · α_{f23,f12,f01}  =  β013 · (β123 ∘ f01)
//! ```
//!
//! Levels above 3 are simplicial kernels (the table is coskeletal in
//! degree 3).

use crate::bicategory::{validate_bicategory, validate_homomorphism, FiniteBicategory, StrictHomomorphism};
use crate::report::{EngineError, Result};
use crate::simplicial::{simplicial_kernel, tuple_id, Id, Policy, SimplexTable, SimplicialMap};
use std::collections::BTreeMap;

/// A decoded 2-simplex of a bicategory nerve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NerveSimplex2 {
    pub f01: Id,
    pub f12: Id,
    pub f02: Id,
    pub beta: Id,
}

impl NerveSimplex2 {
    pub fn id(&self) -> Id {
        tuple_id(&[
            self.f01.clone(),
            self.f12.clone(),
            self.f02.clone(),
            self.beta.clone(),
        ])
    }

    /// Parse a level-2 nerve id back into its constituents.
    pub fn parse(id: &str) -> Result<NerveSimplex2> {
        let parts: Vec<Id> = serde_json::from_str(id)
            .map_err(|e| EngineError::Parse(format!("2-simplex id {:?}: {}", id, e)))?;
        if parts.len() != 4 {
            return Err(EngineError::Parse(format!(
                "2-simplex id {:?} has {} parts",
                id,
                parts.len()
            )));
        }
        let mut it = parts.into_iter();
        Ok(NerveSimplex2 {
            f01: it.next().unwrap(),
            f12: it.next().unwrap(),
            f02: it.next().unwrap(),
            beta: it.next().unwrap(),
        })
    }
}

/// The degeneracies of an edge `f`, as 2-simplices built from the unitors.
fn edge_degeneracies(b: &FiniteBicategory, f: &Id) -> Result<(NerveSimplex2, NerveSimplex2)> {
    let ix = b.identity1(b.source0(f)?)?.clone();
    let iy = b.identity1(b.target0(f)?)?.clone();
    let s0 = NerveSimplex2 {
        f01: ix,
        f12: f.clone(),
        f02: f.clone(),
        beta: b.right_unitor(f)?.clone(),
    };
    let s1 = NerveSimplex2 {
        f01: f.clone(),
        f12: iy,
        f02: f.clone(),
        beta: b.left_unitor(f)?.clone(),
    };
    Ok((s0, s1))
}

/// Whether a boundary-compatible quadruple of filling cells satisfies the
/// 3-simplex coherence identity.
pub fn three_simplex_identity(
    b: &FiniteBicategory,
    t012: &NerveSimplex2,
    t123: &NerveSimplex2,
    t023: &NerveSimplex2,
    t013: &NerveSimplex2,
) -> Result<bool> {
    let f01 = &t012.f01;
    let f12 = &t012.f12;
    let f23 = &t123.f12;
    let alpha = b.associator(f23, f12, f01)?;
    let lhs = b.vertical(
        &t023.beta,
        &b.vertical(&b.whisker_left(f23, &t012.beta)?, &alpha)?,
    )?;
    let rhs = b.vertical(&t013.beta, &b.whisker_right(&t123.beta, f01)?)?;
    Ok(lhs == rhs)
}

/// Compute the nerve of a validated bicategory up to `cap ≥ 3`. Levels 0–3
/// are stored explicitly; higher levels are simplicial kernels under the
/// coskeletal-in-degree-3 policy.
pub fn duskin_nerve(b: &FiniteBicategory, cap: usize) -> Result<SimplexTable> {
    if cap < 3 {
        return Err(EngineError::DimensionOutOfRange(
            "bicategory nerve cap must be at least 3".into(),
        ));
    }
    let v = validate_bicategory(b);
    if !v.passed {
        return Err(EngineError::InvalidBicategory(format!(
            "{:?}",
            v.failure.unwrap()
        )));
    }

    // ---- level 2: filling cells over composable edge pairs ---------------
    let mut simplices2: Vec<NerveSimplex2> = Vec::new();
    let mut cells_by_source: BTreeMap<&Id, Vec<&Id>> = BTreeMap::new();
    for p in &b.two_cells {
        cells_by_source.entry(&b.s1[p]).or_default().push(p);
    }
    let empty: Vec<&Id> = Vec::new();
    for f01 in &b.one_cells {
        for f12 in &b.one_cells {
            if !b.composable1(f12, f01) {
                continue;
            }
            let composite = b.horizontal1(f12, f01)?;
            for beta in cells_by_source.get(&composite).unwrap_or(&empty) {
                simplices2.push(NerveSimplex2 {
                    f01: f01.clone(),
                    f12: f12.clone(),
                    f02: b.t1[*beta].clone(),
                    beta: (*beta).clone(),
                });
            }
        }
    }
    simplices2.sort();

    // ---- level 3: quadruples satisfying the coherence identity -----------
    let mut by_edge_pair: BTreeMap<(&Id, &Id), Vec<&NerveSimplex2>> = BTreeMap::new();
    for s in &simplices2 {
        by_edge_pair.entry((&s.f01, &s.f12)).or_default().push(s);
    }
    let none: Vec<&NerveSimplex2> = Vec::new();
    let mut quadruples: Vec<[NerveSimplex2; 4]> = Vec::new();
    for t012 in &simplices2 {
        for f23 in &b.one_cells {
            if !b.composable1(f23, &t012.f12) {
                continue;
            }
            for t123 in by_edge_pair.get(&(&t012.f12, f23)).unwrap_or(&none) {
                let f13 = &t123.f02;
                for t023 in by_edge_pair.get(&(&t012.f02, f23)).unwrap_or(&none) {
                    let f03 = &t023.f02;
                    for t013 in by_edge_pair.get(&(&t012.f01, f13)).unwrap_or(&none) {
                        if &t013.f02 != f03 {
                            continue;
                        }
                        if three_simplex_identity(b, t012, t123, t023, t013)? {
                            quadruples.push([
                                (*t123).clone(),
                                (*t023).clone(),
                                (*t013).clone(),
                                t012.clone(),
                            ]);
                        }
                    }
                }
            }
        }
    }

    // ---- assemble the table ----------------------------------------------
    let level2_ids: Vec<Id> = simplices2.iter().map(NerveSimplex2::id).collect();
    let mut level3_ids: Vec<Id> = quadruples
        .iter()
        .map(|q| tuple_id(&[q[0].id(), q[1].id(), q[2].id(), q[3].id()]))
        .collect();
    level3_ids.sort();
    level3_ids.dedup();
    let levels = vec![
        b.objects.clone(),
        b.one_cells.clone(),
        level2_ids,
        level3_ids,
    ];

    let mut face: Vec<Vec<BTreeMap<Id, Id>>> = vec![Vec::new()];
    face.push(vec![b.t0.clone(), b.s0.clone()]);
    let mut face2 = vec![BTreeMap::new(), BTreeMap::new(), BTreeMap::new()];
    for s in &simplices2 {
        let id = s.id();
        face2[0].insert(id.clone(), s.f12.clone());
        face2[1].insert(id.clone(), s.f02.clone());
        face2[2].insert(id, s.f01.clone());
    }
    face.push(face2);
    let mut face3 = vec![BTreeMap::new(), BTreeMap::new(), BTreeMap::new(), BTreeMap::new()];
    for q in &quadruples {
        let id = tuple_id(&[q[0].id(), q[1].id(), q[2].id(), q[3].id()]);
        for (i, part) in q.iter().enumerate() {
            face3[i].insert(id.clone(), part.id());
        }
    }
    face.push(face3);

    let mut degeneracy: Vec<Vec<BTreeMap<Id, Id>>> = Vec::new();
    degeneracy.push(vec![b.id1.clone()]);
    let mut deg1 = vec![BTreeMap::new(), BTreeMap::new()];
    for f in &b.one_cells {
        let (s0, s1) = edge_degeneracies(b, f)?;
        deg1[0].insert(f.clone(), s0.id());
        deg1[1].insert(f.clone(), s1.id());
    }
    degeneracy.push(deg1);
    let mut deg2 = vec![BTreeMap::new(), BTreeMap::new(), BTreeMap::new()];
    for s in &simplices2 {
        let id = s.id();
        let (s0_f01, s1_f01) = edge_degeneracies(b, &s.f01)?;
        let (s0_f02, _) = edge_degeneracies(b, &s.f02)?;
        let (s0_f12, s1_f12) = edge_degeneracies(b, &s.f12)?;
        let (_, s1_f02) = edge_degeneracies(b, &s.f02)?;
        deg2[0].insert(
            id.clone(),
            tuple_id(&[id.clone(), id.clone(), s0_f02.id(), s0_f01.id()]),
        );
        deg2[1].insert(
            id.clone(),
            tuple_id(&[s0_f12.id(), id.clone(), id.clone(), s1_f01.id()]),
        );
        deg2[2].insert(
            id.clone(),
            tuple_id(&[s1_f12.id(), s1_f02.id(), id.clone(), id.clone()]),
        );
    }
    degeneracy.push(deg2);
    degeneracy.push(Vec::new());

    let table = SimplexTable::new(3, Policy::Coskeletal(3), levels, face, degeneracy)?;
    table.materialize_to(cap)
}

/// The simplicial map induced on nerves by a strict homomorphism.
pub fn nerve_map(hm: &StrictHomomorphism, cap: usize) -> Result<SimplicialMap> {
    let v = validate_homomorphism(hm);
    if !v.passed {
        return Err(EngineError::NotAHomomorphism(format!(
            "{:?}",
            v.failure.unwrap()
        )));
    }
    let source = duskin_nerve(&hm.source, 3)?;
    let target = duskin_nerve(&hm.target, 3)?;
    let transport2 = |id: &Id| -> Result<Id> {
        let s = NerveSimplex2::parse(id)?;
        Ok(NerveSimplex2 {
            f01: hm.f1[&s.f01].clone(),
            f12: hm.f1[&s.f12].clone(),
            f02: hm.f1[&s.f02].clone(),
            beta: hm.f2[&s.beta].clone(),
        }
        .id())
    };
    let mut components: Vec<BTreeMap<Id, Id>> = vec![
        hm.f0.clone(),
        hm.f1.clone(),
        BTreeMap::new(),
        BTreeMap::new(),
    ];
    for a in source.level(2) {
        components[2].insert(a.clone(), transport2(a)?);
    }
    for a in source.level(3) {
        let parts: Vec<Id> = serde_json::from_str(a)
            .map_err(|e| EngineError::Parse(format!("3-simplex id {:?}: {}", a, e)))?;
        let image: Vec<Id> = parts
            .iter()
            .map(|p| transport2(p))
            .collect::<Result<_>>()?;
        components[3].insert(a.clone(), tuple_id(&image));
    }
    let map = SimplicialMap {
        source,
        target,
        components,
    };
    map.materialize_to(cap)
}

/// Whether the table is determined by its simplices in degrees `≤ m`: at
/// every stored level above `m`, taking boundaries is a bijection onto the
/// simplicial kernel.
pub fn is_coskeletal_in_degree(x: &SimplexTable, m: usize) -> Result<bool> {
    for n in (m + 1)..=x.dim_cap() {
        let kernel = simplicial_kernel(x, n)?;
        let images: std::collections::BTreeSet<&Vec<Id>> = kernel.boundary.values().collect();
        if images.len() != x.level(n).len() || images.len() != kernel.tuples.len() {
            return Ok(false);
        }
    }
    Ok(true)
}
