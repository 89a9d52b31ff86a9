//! Endofunctors on truncated simplicial sets: truncation, coskeleton,
//! skeleton, and the shift (décalage) construction, together with the
//! constructive splitting of augmented aspherical complexes.

use crate::monotone::{factorize_monotone, FactorizationWord, MonotoneMap};
use crate::report::{EngineError, Result};
use crate::simplicial::{
    constant_complex, tuple_id, AugmentedSimplexTable, Contraction, Id, Policy, SimplexTable,
    SimplicialMap,
};
use std::collections::BTreeMap;

/// Copy levels and tables up to `n`; the result is truncated.
pub fn truncate(x: &SimplexTable, n: usize) -> Result<SimplexTable> {
    if n > x.dim_cap() {
        return Err(EngineError::DimensionOutOfRange(format!(
            "truncation degree {} above cap {}",
            n,
            x.dim_cap()
        )));
    }
    let levels = (0..=n).map(|m| x.level(m).to_vec()).collect();
    let mut face = vec![Vec::new()];
    for m in 1..=n {
        face.push((0..=m).map(|i| x.face_map(m, i).clone()).collect());
    }
    let mut degeneracy = Vec::new();
    for m in 0..n {
        degeneracy.push((0..=m).map(|i| x.degeneracy_map(m, i).clone()).collect());
    }
    degeneracy.push(Vec::new());
    SimplexTable::new(n, Policy::Truncated, levels, face, degeneracy)
}

/// Keep levels up to `n`, then complete with iterated simplicial kernels up
/// to `new_cap` (projection faces, repeat-tuple degeneracies).
pub fn coskeleton(x: &SimplexTable, n: usize, new_cap: usize) -> Result<SimplexTable> {
    if n > x.dim_cap() || x.dim_cap() > new_cap {
        return Err(EngineError::DimensionOutOfRange(format!(
            "coskeleton needs degree <= cap <= new cap, got {} / {} / {}",
            n,
            x.dim_cap(),
            new_cap
        )));
    }
    let t = truncate(x, n)?.with_policy(Policy::Coskeletal(n))?;
    t.extend_by_kernels(new_cap)
}

/// The unit of the truncation/coskeleton adjunction: the canonical map from
/// `x` to the coskeleton of its own n-truncation, sending a simplex above
/// level n to its iterated boundary tuple.
pub fn coskeleton_unit(x: &SimplexTable, n: usize) -> Result<SimplicialMap> {
    let cap = x.dim_cap();
    let cosk = coskeleton(x, n, cap)?;
    let mut components: Vec<BTreeMap<Id, Id>> = Vec::new();
    for m in 0..=cap {
        let mut comp = BTreeMap::new();
        for a in x.level(m) {
            let img: Id = if m <= n {
                a.clone()
            } else {
                let parts: Vec<Id> = (0..=m)
                    .map(|i| components[m - 1][x.d(m, i, a)].clone())
                    .collect();
                tuple_id(&parts)
            };
            comp.insert(a.clone(), img);
        }
        components.push(comp);
    }
    Ok(SimplicialMap {
        source: x.clone(),
        target: cosk,
        components,
    })
}

/// The constant augmented complex `K(S, 0) -> S` with its identity-style
/// contraction.
pub fn augmented_constant(set: &[Id], cap: usize) -> AugmentedSimplexTable {
    let base = constant_complex(set, cap);
    let points = base.level(0).to_vec();
    let idmap: BTreeMap<Id, Id> = points.iter().map(|p| (p.clone(), p.clone())).collect();
    let contraction = Contraction {
        s0: idmap.clone(),
        extra: vec![idmap.clone(); cap],
    };
    AugmentedSimplexTable::new(base, points, idmap, Some(contraction))
        .expect("constant augmented complex is well formed")
}

/// The augmented 0-coskeleton of a map `aug : vertices -> set`: level m
/// holds the (m+1)-tuples of vertices lying in a common fiber, with
/// projection faces and repeat-tuple degeneracies.
pub fn augmented_cosk0(
    vertices: &[Id],
    aug: &BTreeMap<Id, Id>,
    set: &[Id],
    cap: usize,
) -> Result<AugmentedSimplexTable> {
    let mut verts = vertices.to_vec();
    verts.sort();
    verts.dedup();
    for v in &verts {
        if !aug.contains_key(v) {
            return Err(EngineError::MalformedTable(format!(
                "augmentation undefined on vertex {}",
                v
            )));
        }
    }
    // enumerate fiberwise tuples per level
    let mut tuples: Vec<Vec<Vec<Id>>> = vec![verts.iter().map(|v| vec![v.clone()]).collect()];
    for m in 1..=cap {
        let mut next = Vec::new();
        for t in &tuples[m - 1] {
            for v in &verts {
                if aug[v] == aug[&t[0]] {
                    let mut u = t.clone();
                    u.push(v.clone());
                    next.push(u);
                }
            }
        }
        tuples.push(next);
    }
    let enc = |m: usize, t: &[Id]| -> Id {
        if m == 0 {
            t[0].clone()
        } else {
            tuple_id(t)
        }
    };
    let mut levels: Vec<Vec<Id>> = Vec::new();
    for (m, ts) in tuples.iter().enumerate() {
        levels.push(ts.iter().map(|t| enc(m, t)).collect());
    }
    let mut face: Vec<Vec<BTreeMap<Id, Id>>> = vec![Vec::new()];
    for m in 1..=cap {
        let mut maps = vec![BTreeMap::new(); m + 1];
        for t in &tuples[m] {
            let me = enc(m, t);
            for (i, map) in maps.iter_mut().enumerate() {
                let mut u = t.clone();
                u.remove(i);
                map.insert(me.clone(), enc(m - 1, &u));
            }
        }
        face.push(maps);
    }
    let mut degeneracy: Vec<Vec<BTreeMap<Id, Id>>> = Vec::new();
    for m in 0..cap {
        let mut maps = vec![BTreeMap::new(); m + 1];
        for t in &tuples[m] {
            let me = enc(m, t);
            for (i, map) in maps.iter_mut().enumerate() {
                let mut u = t.clone();
                u.insert(i, t[i].clone());
                map.insert(me.clone(), enc(m + 1, &u));
            }
        }
        degeneracy.push(maps);
    }
    degeneracy.push(Vec::new());
    let policy = if cap >= 1 {
        Policy::Coskeletal(1)
    } else {
        Policy::Truncated
    };
    let base = SimplexTable::new(cap, policy, levels, face, degeneracy)?;
    let aug_map: BTreeMap<Id, Id> = verts.iter().map(|v| (v.clone(), aug[v].clone())).collect();
    AugmentedSimplexTable::new(base, set.to_vec(), aug_map, None)
}

// ---------------------------------------------------------------------------
// skeleton
// ---------------------------------------------------------------------------

/// Eilenberg–Zilber style presentation of a simplex: a nondegenerate base and
/// the monotone surjection it is pushed along.
#[derive(Debug, Clone)]
struct Presentation {
    base: Id,
    base_dim: usize,
    surj: MonotoneMap,
}

/// Decompose every simplex of levels `0..=n` into (nondegenerate base,
/// surjection).
fn decompose_levels(x: &SimplexTable, n: usize) -> Vec<BTreeMap<Id, Presentation>> {
    let mut decomp: Vec<BTreeMap<Id, Presentation>> = Vec::new();
    for m in 0..=n {
        let mut level: BTreeMap<Id, Presentation> = BTreeMap::new();
        for a in x.level(m) {
            let mut found = None;
            if m >= 1 {
                'outer: for i in 0..m {
                    for y in x.level(m - 1) {
                        if x.s(m - 1, i, y) == a {
                            found = Some((i, y.clone()));
                            break 'outer;
                        }
                    }
                }
            }
            let pres = match found {
                None => Presentation {
                    base: a.clone(),
                    base_dim: m,
                    surj: MonotoneMap::identity(m),
                },
                Some((i, y)) => {
                    let inner = &decomp[m - 1][&y];
                    let sigma_i = MonotoneMap::codegeneracy(m - 1, i).unwrap();
                    Presentation {
                        base: inner.base.clone(),
                        base_dim: inner.base_dim,
                        surj: inner.surj.compose(&sigma_i).unwrap(),
                    }
                }
            };
            level.insert(a.clone(), pres);
        }
        decomp.push(level);
    }
    decomp
}

fn word_of(surj: &MonotoneMap) -> Vec<usize> {
    factorize_monotone(surj).codegeneracies
}

/// Id of a formal degenerate simplex: its base paired with the normalized
/// degeneracy word.
fn formal_id(base: &str, surj: &MonotoneMap) -> Id {
    let word = word_of(surj)
        .iter()
        .map(|j| format!("s{}", j))
        .collect::<Vec<_>>()
        .join(".");
    tuple_id(&[base.to_string(), word])
}

/// Realize a presentation as a concrete id: an actual simplex of `x` when the
/// level fits below the copied range, a formal id above it.
fn realize(
    x: &SimplexTable,
    copied_top: usize,
    base: &str,
    base_dim: usize,
    surj: &MonotoneMap,
) -> Result<Id> {
    let level = surj.source_size;
    if level <= copied_top {
        // apply the degeneracy word inside x
        let mut cur = base.to_string();
        let mut d = base_dim;
        for &j in word_of(surj).iter() {
            cur = x.s(d, j, &cur).clone();
            d += 1;
        }
        Ok(cur)
    } else {
        Ok(formal_id(base, surj))
    }
}

/// Face of a formal element `(base, surj)` in the skeleton: factor
/// `surj ∘ ∂_i`, evaluate the coface part on the base inside `x`, re-decompose
/// and realize.
fn formal_face(
    x: &SimplexTable,
    decomp: &[BTreeMap<Id, Presentation>],
    copied_top: usize,
    base: &str,
    base_dim: usize,
    surj: &MonotoneMap,
    i: usize,
) -> Result<Id> {
    let m = surj.source_size;
    let coface = MonotoneMap::coface(m, i)?;
    let g = surj.compose(&coface)?;
    let w = factorize_monotone(&g);
    // apply the coface part to the base, largest index first
    let mut b = base.to_string();
    let mut d = base_dim;
    for &ci in w.cofaces.iter().rev() {
        b = x.d(d, ci, &b).clone();
        d -= 1;
    }
    let inner = &decomp[d][&b];
    // remaining codegeneracy part of g as a monotone surjection
    let codegen_part = FactorizationWord {
        source_size: m - 1,
        target_size: d,
        cofaces: Vec::new(),
        codegeneracies: w.codegeneracies.clone(),
    }
    .compose()?;
    let total = inner.surj.compose(&codegen_part)?;
    realize(x, copied_top, &inner.base, inner.base_dim, &total)
}

/// Copy levels up to `n` and fill every higher level (to `new_cap`) with
/// exactly the formal degeneracies of lower nondegenerate simplices, tables
/// computed through the canonical factorization of monotone maps.
pub fn skeleton(x: &SimplexTable, n: usize, new_cap: usize) -> Result<SimplexTable> {
    if n > x.dim_cap() || x.dim_cap() > new_cap {
        return Err(EngineError::DimensionOutOfRange(format!(
            "skeleton needs degree <= cap <= new cap, got {} / {} / {}",
            n,
            x.dim_cap(),
            new_cap
        )));
    }
    let decomp = decompose_levels(x, n);
    // nondegenerate bases by dimension
    let mut bases: Vec<Vec<Id>> = vec![Vec::new(); n + 1];
    for (m, level) in decomp.iter().enumerate() {
        for (a, p) in level {
            if p.base_dim == m && &p.base == a {
                bases[m].push(a.clone());
            }
        }
    }
    // elements per level: id plus presentation
    let mut elements: Vec<Vec<(Id, Presentation)>> = Vec::new();
    for m in 0..=new_cap {
        let mut level = Vec::new();
        if m <= n {
            for a in x.level(m) {
                level.push((a.clone(), decomp[m][a].clone()));
            }
        } else {
            for (d, bs) in bases.iter().enumerate() {
                for b in bs {
                    for surj in MonotoneMap::enumerate(m, d) {
                        let image: std::collections::BTreeSet<usize> =
                            surj.values.iter().copied().collect();
                        if image.len() == d + 1 {
                            level.push((
                                formal_id(b, &surj),
                                Presentation {
                                    base: b.clone(),
                                    base_dim: d,
                                    surj,
                                },
                            ));
                        }
                    }
                }
            }
        }
        level.sort_by(|a, b| a.0.cmp(&b.0));
        elements.push(level);
    }
    let levels: Vec<Vec<Id>> = elements
        .iter()
        .map(|lv| lv.iter().map(|(id, _)| id.clone()).collect())
        .collect();
    let mut face: Vec<Vec<BTreeMap<Id, Id>>> = vec![Vec::new()];
    for m in 1..=new_cap {
        let mut maps = vec![BTreeMap::new(); m + 1];
        for (id, p) in &elements[m] {
            for (i, map) in maps.iter_mut().enumerate() {
                let img = if m <= n {
                    x.d(m, i, id).clone()
                } else {
                    formal_face(x, &decomp, n, &p.base, p.base_dim, &p.surj, i)?
                };
                map.insert(id.clone(), img);
            }
        }
        face.push(maps);
    }
    let mut degeneracy: Vec<Vec<BTreeMap<Id, Id>>> = Vec::new();
    for m in 0..new_cap {
        let mut maps = vec![BTreeMap::new(); m + 1];
        for (id, p) in &elements[m] {
            for (i, map) in maps.iter_mut().enumerate() {
                let img = if m + 1 <= n {
                    x.s(m, i, id).clone()
                } else {
                    let sigma_i = MonotoneMap::codegeneracy(m, i)?;
                    let surj = p.surj.compose(&sigma_i)?;
                    realize(x, n, &p.base, p.base_dim, &surj)?
                };
                map.insert(id.clone(), img);
            }
        }
        degeneracy.push(maps);
    }
    degeneracy.push(Vec::new());
    SimplexTable::new(new_cap, Policy::Truncated, levels, face, degeneracy)
}

// ---------------------------------------------------------------------------
// décalage
// ---------------------------------------------------------------------------

/// The shift of a simplicial set with its augmentation, contraction, and the
/// four comparison maps of the shift diagram. All maps live at cap
/// `dim_cap - 1`; the original set appears through its truncation.
#[derive(Debug, Clone)]
pub struct DecalageBundle {
    /// `Dec(X)` augmented over `X_0`, split by the extremal degeneracies.
    pub dec: AugmentedSimplexTable,
    /// `S_0 : constant complex on X_0 -> Dec(X)`, levelwise iterated `s_0`.
    pub s0: SimplicialMap,
    /// `D_0 : Dec(X) -> constant complex on X_0`, levelwise iterated `d_0`.
    pub d0: SimplicialMap,
    /// `S_1 : truncated X -> Dec(X)`, levelwise last degeneracy. This is a
    /// levelwise section of `d1` (so `d1 ∘ s1 = id`) natural against every
    /// face and degeneracy except the final retained face; it is the
    /// splitting of the shift, not a simplicial map.
    pub s1: SimplicialMap,
    /// `D_1 : Dec(X) -> truncated X`, levelwise last face.
    pub d1: SimplicialMap,
}

/// Shift a simplicial set down by one: level n of the result is level n+1 of
/// the input with the last face and degeneracy removed. The removed
/// structure becomes the augmentation (iterated first faces), the
/// contraction (extremal degeneracies), and the four bundle maps.
pub fn decalage(x: &SimplexTable) -> Result<DecalageBundle> {
    let cap = x.dim_cap();
    if cap == 0 {
        return Err(EngineError::DimensionOutOfRange(
            "shift needs at least one stored level above the vertices".into(),
        ));
    }
    let dcap = cap - 1;
    let levels: Vec<Vec<Id>> = (0..=dcap).map(|m| x.level(m + 1).to_vec()).collect();
    let mut face: Vec<Vec<BTreeMap<Id, Id>>> = vec![Vec::new()];
    for m in 1..=dcap {
        face.push((0..=m).map(|i| x.face_map(m + 1, i).clone()).collect());
    }
    let mut degeneracy: Vec<Vec<BTreeMap<Id, Id>>> = Vec::new();
    for m in 0..dcap {
        degeneracy.push((0..=m).map(|i| x.degeneracy_map(m + 1, i).clone()).collect());
    }
    degeneracy.push(Vec::new());
    let base = SimplexTable::new(dcap, Policy::Truncated, levels, face, degeneracy)?;
    // augmentation to X_0 by the first face; contraction by the extremal
    // degeneracies
    let aug: BTreeMap<Id, Id> = x
        .level(1)
        .iter()
        .map(|a| (a.clone(), x.d(1, 0, a).clone()))
        .collect();
    let contraction = Contraction {
        s0: x
            .level(0)
            .iter()
            .map(|v| (v.clone(), x.s(0, 0, v).clone()))
            .collect(),
        extra: (0..dcap)
            .map(|m| x.degeneracy_map(m + 1, m + 1).clone())
            .collect(),
    };
    let dec = AugmentedSimplexTable::new(
        base.clone(),
        x.level(0).to_vec(),
        aug,
        Some(contraction),
    )?;
    let constant = constant_complex(x.level(0), dcap);
    let trunc = truncate(x, dcap)?;
    let mut s0_comps = Vec::new();
    let mut d0_comps = Vec::new();
    let mut s1_comps = Vec::new();
    let mut d1_comps = Vec::new();
    for m in 0..=dcap {
        let mut s0c = BTreeMap::new();
        for v in x.level(0) {
            let mut cur = v.clone();
            for lev in 0..=m {
                cur = x.s(lev, 0, &cur).clone();
            }
            s0c.insert(v.clone(), cur);
        }
        s0_comps.push(s0c);
        let mut d0c = BTreeMap::new();
        for a in x.level(m + 1) {
            let mut cur = a.clone();
            for lev in (1..=m + 1).rev() {
                cur = x.d(lev, 0, &cur).clone();
            }
            d0c.insert(a.clone(), cur);
        }
        d0_comps.push(d0c);
        s1_comps.push(
            x.level(m)
                .iter()
                .map(|a| (a.clone(), x.s(m, m, a).clone()))
                .collect(),
        );
        d1_comps.push(
            x.level(m + 1)
                .iter()
                .map(|a| (a.clone(), x.d(m + 1, m + 1, a).clone()))
                .collect(),
        );
    }
    Ok(DecalageBundle {
        s0: SimplicialMap {
            source: constant.clone(),
            target: base.clone(),
            components: s0_comps,
        },
        d0: SimplicialMap {
            source: base.clone(),
            target: constant,
            components: d0_comps,
        },
        s1: SimplicialMap {
            source: trunc.clone(),
            target: base.clone(),
            components: s1_comps,
        },
        d1: SimplicialMap {
            source: base,
            target: trunc,
            components: d1_comps,
        },
        dec,
    })
}

/// Functorial action of the shift on a simplicial map: component n is
/// component n+1 of the input.
pub fn decalage_map(f: &SimplicialMap) -> Result<SimplicialMap> {
    let src = decalage(&f.source)?;
    let tgt = decalage(&f.target)?;
    Ok(SimplicialMap {
        source: src.dec.base,
        target: tgt.dec.base,
        components: f.components[1..].to_vec(),
    })
}

/// Adjunction transpose: carry a simplicial map out of the underlying set of
/// a split augmented complex to a map into the shift, by composing with the
/// splitting (`θ(f)_n = f_{n+1} ∘ s_{n+1}`). The result lives one cap lower.
pub fn decalage_transpose(
    a: &AugmentedSimplexTable,
    f: &SimplicialMap,
) -> Result<SimplicialMap> {
    let c = a.contraction.as_ref().ok_or_else(|| {
        EngineError::MalformedData("transpose needs a split augmented source".into())
    })?;
    if f.source != a.base {
        return Err(EngineError::MalformedData(
            "transpose source must be the underlying complex of the augmented input".into(),
        ));
    }
    let bundle = decalage(&f.target)?;
    let cap = a.base.dim_cap();
    let trunc_src = truncate(&a.base, cap - 1)?;
    let mut components = Vec::new();
    for m in 0..cap {
        let mut comp = BTreeMap::new();
        for x in a.base.level(m) {
            let lifted = &c.extra[m][x];
            comp.insert(x.clone(), f.components[m + 1][lifted].clone());
        }
        components.push(comp);
    }
    Ok(SimplicialMap {
        source: trunc_src,
        target: bundle.dec.base,
        components,
    })
}

/// Inverse transpose: compose a map into the shift with the last-face
/// projection back to the underlying complex.
pub fn decalage_transpose_inverse(
    x: &SimplexTable,
    g: &SimplicialMap,
) -> Result<SimplicialMap> {
    let bundle = decalage(x)?;
    g.then(&bundle.d1)
}

// ---------------------------------------------------------------------------
// constructive splitting
// ---------------------------------------------------------------------------

/// Build a contraction for an augmented aspherical complex by induction:
/// a section of the augmentation at the bottom, then level by level a
/// section of the boundary map onto the kernel, forced on degenerate and
/// previously contracted simplices and otherwise choosing the
/// lexicographically least filler.
pub fn build_contraction(a: &AugmentedSimplexTable) -> Result<AugmentedSimplexTable> {
    let cap = a.base.dim_cap();
    for n in 0..=cap {
        let (ok, witness) = crate::simplicial::is_aspherical_augmented(a, n)?;
        if !ok {
            return Err(EngineError::NotAspherical {
                level: n,
                witness: tuple_id(&witness.unwrap_or_default()),
            });
        }
    }
    // bottom section: least preimage of each augmentation point
    let mut s0: BTreeMap<Id, Id> = BTreeMap::new();
    for t in &a.augmentation_set {
        let v = a
            .base
            .level(0)
            .iter()
            .find(|v| &a.aug[*v] == t)
            .expect("augmentation surjective by the asphericity check");
        s0.insert(t.clone(), v.clone());
    }
    let mut extra: Vec<BTreeMap<Id, Id>> = Vec::new();
    for n in 0..cap {
        // boundaries of level n+1 simplices, for section lookup
        let mut fillers: BTreeMap<Vec<Id>, Id> = BTreeMap::new();
        for y in a.base.level(n + 1).iter().rev() {
            fillers.insert(a.base.boundary(n + 1, y), y.clone());
        }
        let mut level: BTreeMap<Id, Id> = BTreeMap::new();
        for z in a.base.level(n) {
            // forced on degenerate simplices: s_{n+1} s_i = s_i s_n
            let mut forced: Option<Id> = None;
            if n >= 1 {
                'outer: for i in 0..n {
                    for y in a.base.level(n - 1) {
                        if a.base.s(n - 1, i, y) == z {
                            forced = Some(a.base.s(n, i, &extra[n - 1][y]).clone());
                            break 'outer;
                        }
                    }
                }
                // forced on the image of the previous contraction:
                // s_{n+1} s_n = s_n s_n
                if forced.is_none() && extra[n - 1].values().any(|v| v == z) {
                    forced = Some(a.base.s(n, n, z).clone());
                }
            } else if s0.values().any(|v| v == z) {
                // bottom interchange: s_1 s_0 = s_0 s_0
                forced = Some(a.base.s(0, 0, z).clone());
            }
            let img = match forced {
                Some(img) => img,
                None => {
                    // target boundary tuple of the contraction at z
                    let mut t: Vec<Id> = if n == 0 {
                        vec![s0[&a.aug[z]].clone()]
                    } else {
                        (0..=n).map(|i| extra[n - 1][a.base.d(n, i, z)].clone()).collect()
                    };
                    t.push(z.clone());
                    match fillers.get(&t) {
                        Some(y) => y.clone(),
                        None => {
                            return Err(EngineError::NotAspherical {
                                level: n + 1,
                                witness: tuple_id(&t),
                            })
                        }
                    }
                }
            };
            level.insert(z.clone(), img);
        }
        extra.push(level);
    }
    Ok(AugmentedSimplexTable {
        base: a.base.clone(),
        augmentation_set: a.augmentation_set.clone(),
        aug: a.aug.clone(),
        contraction: Some(Contraction { s0, extra }),
    })
}
