//! Right actions of a finite bicategory on a finite category: validation of
//! the action axioms, the action bicategory with its strict projection, the
//! self-action (tangent) construction, and equivariant functor /
//! transformation checkers.
//!
//! An action is a quintuple: a category `P`, a bicategory `B`, a momentum
//! map `Λ0 : P0 → B0`, action tables `p ◁ f` (objects) and `a ◁ φ`
//! (morphisms), and coherence isomorphisms
//! `κ_{p,f,g} : (p ◁ f) ◁ g → p ◁ (f ∘ g)` and
//! `ι_p : p ◁ i_{Λ0(p)} → p` in `P`. The pair `(p, f)` is defined when
//! `Λ0(p) = t0(f)` and lands over `s0(f)`.

use crate::bicategory::{validate_bicategory, FiniteBicategory, StrictHomomorphism};
use crate::category::{validate_category, FiniteCategory};
use crate::report::{EngineError, Result, VerificationReport, Violation};
use crate::simplicial::{tuple_id, Id};
use std::collections::{BTreeMap, BTreeSet};

/// A right action of a bicategory on a category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicatAction {
    pub category: FiniteCategory,
    pub bicategory: FiniteBicategory,
    /// Momentum `Λ0 : P0 → B0`.
    pub momentum: BTreeMap<Id, Id>,
    /// `act0[(p, f)] = p ◁ f` for pairs with `Λ0(p) = t0(f)`.
    pub act0: BTreeMap<(Id, Id), Id>,
    /// `act1[(a, φ)] = a ◁ φ` for morphism pairs over the same object pairs.
    pub act1: BTreeMap<(Id, Id), Id>,
    /// `kappa[(p, f, g)] : (p ◁ f) ◁ g → p ◁ (f ∘ g)`.
    pub kappa: BTreeMap<(Id, Id, Id), Id>,
    /// `iota[p] : p ◁ i_{Λ0(p)} → p`.
    pub iota: BTreeMap<Id, Id>,
}

impl BicatAction {
    pub fn act0(&self, p: &str, f: &str) -> Result<&Id> {
        self.act0
            .get(&(p.to_string(), f.to_string()))
            .ok_or_else(|| EngineError::NotComposable(format!("{} ◁ {}", p, f)))
    }

    pub fn act1(&self, a: &str, phi: &str) -> Result<&Id> {
        self.act1
            .get(&(a.to_string(), phi.to_string()))
            .ok_or_else(|| EngineError::NotComposable(format!("{} ◁ {}", a, phi)))
    }

    pub fn kappa(&self, p: &str, f: &str, g: &str) -> Result<&Id> {
        self.kappa
            .get(&(p.to_string(), f.to_string(), g.to_string()))
            .ok_or_else(|| EngineError::NotComposable(format!("κ[{},{},{}]", p, f, g)))
    }

    pub fn iota(&self, p: &str) -> Result<&Id> {
        self.iota
            .get(p)
            .ok_or_else(|| EngineError::MalformedTable(format!("ι[{}]", p)))
    }

    /// `p ◁ φ`: the action of a 2-cell on an object, via the identity of `p`.
    pub fn obj_whisker(&self, p: &str, phi: &str) -> Result<&Id> {
        self.act1(self.category.identity(p), phi)
    }

    /// `a ◁ f`: the action of a 1-cell on a morphism, via the identity
    /// 2-cell of `f`.
    pub fn mor_whisker(&self, a: &str, f: &str) -> Result<&Id> {
        self.act1(a, &self.bicategory.id2[f])
    }

    /// All `(p, f)` with `Λ0(p) = t0(f)`: the exact domain of `act0`.
    fn object_pairs(&self) -> Vec<(&Id, &Id)> {
        let mut out = Vec::new();
        for p in &self.category.objects {
            for f in &self.bicategory.one_cells {
                if self.momentum.get(p) == self.bicategory.t0.get(f) {
                    out.push((p, f));
                }
            }
        }
        out
    }

    /// All `(a, φ)` in the exact domain of `act1`.
    fn morphism_pairs(&self) -> Vec<(&Id, &Id)> {
        let mut out = Vec::new();
        for a in &self.category.morphisms {
            let src = self.category.src(a);
            for phi in &self.bicategory.two_cells {
                let f = &self.bicategory.s1[phi];
                if self.momentum.get(src) == self.bicategory.t0.get(f) {
                    out.push((a, phi));
                }
            }
        }
        out
    }

    /// All `(p, f, g)` with `Λ0(p) = t0(f)` and `s0(f) = t0(g)`: the exact
    /// domain of `kappa`.
    fn triple_domain(&self) -> Vec<(&Id, &Id, &Id)> {
        let mut out = Vec::new();
        for (p, f) in self.object_pairs() {
            for g in &self.bicategory.one_cells {
                if self.bicategory.s0.get(f) == self.bicategory.t0.get(g) {
                    out.push((p, f, g));
                }
            }
        }
        out
    }
}

/// An action together with a projection of `P` to a base set whose fibers
/// the action preserves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberedAction {
    pub action: BicatAction,
    /// Sorted base elements.
    pub base: Vec<Id>,
    /// `pi0 : P0 → base`.
    pub pi0: BTreeMap<Id, Id>,
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

fn action_violation(a: &BicatAction) -> Option<Violation> {
    let p_cat = &a.category;
    let b = &a.bicategory;

    // underlying structures
    let r = validate_category(p_cat);
    if !r.passed {
        let v = r.failure.unwrap();
        return Some(Violation {
            axiom: "underlying category".into(),
            witness: format!("{}: {}", v.axiom, v.witness),
        });
    }
    let r = validate_bicategory(b);
    if !r.passed {
        let v = r.failure.unwrap();
        return Some(Violation {
            axiom: "underlying bicategory".into(),
            witness: format!("{}: {}", v.axiom, v.witness),
        });
    }

    // momentum totality/typing
    for p in &p_cat.objects {
        match a.momentum.get(p) {
            None => {
                return Some(Violation {
                    axiom: "momentum totality".into(),
                    witness: p.clone(),
                })
            }
            Some(x) if !b.objects.contains(x) => {
                return Some(Violation {
                    axiom: "momentum typing".into(),
                    witness: format!("{} ↦ {}", p, x),
                })
            }
            _ => {}
        }
    }
    // momentum constancy along morphisms
    for m in &p_cat.morphisms {
        if a.momentum[p_cat.src(m)] != a.momentum[p_cat.tgt(m)] {
            return Some(Violation {
                axiom: "momentum constancy".into(),
                witness: m.clone(),
            });
        }
    }

    // object action totality/domain/typing
    let obj_pairs = a.object_pairs();
    let obj_domain: BTreeSet<(Id, Id)> = obj_pairs
        .iter()
        .map(|(p, f)| ((*p).clone(), (*f).clone()))
        .collect();
    if a.act0.keys().cloned().collect::<BTreeSet<_>>() != obj_domain {
        let diff = a
            .act0
            .keys()
            .find(|k| !obj_domain.contains(*k))
            .cloned()
            .or_else(|| obj_domain.iter().find(|k| !a.act0.contains_key(*k)).cloned());
        return Some(Violation {
            axiom: "object action totality/domain".into(),
            witness: format!("{:?}", diff.unwrap()),
        });
    }
    for ((p, f), q) in &a.act0 {
        if !p_cat.objects.contains(q) {
            return Some(Violation {
                axiom: "object action typing".into(),
                witness: format!("{} ◁ {} = {}", p, f, q),
            });
        }
        if a.momentum[q] != b.s0[f] {
            return Some(Violation {
                axiom: "object action equivariance".into(),
                witness: format!("{} ◁ {}", p, f),
            });
        }
    }

    // morphism action totality/domain/typing
    let mor_pairs = a.morphism_pairs();
    let mor_domain: BTreeSet<(Id, Id)> = mor_pairs
        .iter()
        .map(|(m, phi)| ((*m).clone(), (*phi).clone()))
        .collect();
    if a.act1.keys().cloned().collect::<BTreeSet<_>>() != mor_domain {
        let diff = a
            .act1
            .keys()
            .find(|k| !mor_domain.contains(*k))
            .cloned()
            .or_else(|| mor_domain.iter().find(|k| !a.act1.contains_key(*k)).cloned());
        return Some(Violation {
            axiom: "morphism action totality/domain".into(),
            witness: format!("{:?}", diff.unwrap()),
        });
    }
    for ((m, phi), n) in &a.act1 {
        if !p_cat.morphisms.contains(n) {
            return Some(Violation {
                axiom: "morphism action typing".into(),
                witness: format!("{} ◁ {} = {}", m, phi, n),
            });
        }
        let want_src = &a.act0[&(p_cat.src(m).clone(), b.s1[phi].clone())];
        let want_tgt = &a.act0[&(p_cat.tgt(m).clone(), b.t1[phi].clone())];
        if p_cat.src(n) != want_src || p_cat.tgt(n) != want_tgt {
            return Some(Violation {
                axiom: "morphism action typing".into(),
                witness: format!("{} ◁ {}", m, phi),
            });
        }
    }

    // action functoriality: identities and interchange
    for (p, f) in &obj_pairs {
        let lhs = &a.act1[&(p_cat.identity(p).clone(), b.id2[*f].clone())];
        let rhs = p_cat.identity(&a.act0[&((*p).clone(), (*f).clone())]);
        if lhs != rhs {
            return Some(Violation {
                axiom: "action identity preservation".into(),
                witness: format!("({}, {})", p, f),
            });
        }
    }
    for (m2, m1) in p_cat.composable_pairs() {
        for (psi, phi) in b.vcomp.keys() {
            let key1 = (m1.clone(), phi.clone());
            if !a.act1.contains_key(&key1) {
                continue;
            }
            let key2 = (m2.clone(), psi.clone());
            let lower = &a.act1[&key1];
            let upper = &a.act1[&key2];
            let lhs = p_cat.comp[&(upper.clone(), lower.clone())].clone();
            let rhs = &a.act1[&(
                p_cat.comp[&(m2.clone(), m1.clone())].clone(),
                b.vcomp[&(psi.clone(), phi.clone())].clone(),
            )];
            if &lhs != rhs {
                return Some(Violation {
                    axiom: "action interchange".into(),
                    witness: format!("({} ◁ {}) · ({} ◁ {})", m2, psi, m1, phi),
                });
            }
        }
    }

    // associativity cells: totality, typing, invertibility
    let triples = a.triple_domain();
    let triple_domain: BTreeSet<(Id, Id, Id)> = triples
        .iter()
        .map(|(p, f, g)| ((*p).clone(), (*f).clone(), (*g).clone()))
        .collect();
    if a.kappa.keys().cloned().collect::<BTreeSet<_>>() != triple_domain {
        let diff = a
            .kappa
            .keys()
            .find(|k| !triple_domain.contains(*k))
            .cloned()
            .or_else(|| {
                triple_domain
                    .iter()
                    .find(|k| !a.kappa.contains_key(*k))
                    .cloned()
            });
        return Some(Violation {
            axiom: "associativity cell totality/domain".into(),
            witness: format!("{:?}", diff.unwrap()),
        });
    }
    for ((p, f, g), k) in &a.kappa {
        let pf = &a.act0[&(p.clone(), f.clone())];
        let src = &a.act0[&(pf.clone(), g.clone())];
        let fg = &b.hcomp1[&(f.clone(), g.clone())];
        let tgt = &a.act0[&(p.clone(), fg.clone())];
        if p_cat.src(k) != src || p_cat.tgt(k) != tgt {
            return Some(Violation {
                axiom: "associativity cell typing".into(),
                witness: format!("κ[{},{},{}]", p, f, g),
            });
        }
        if p_cat.inverse(k).is_none() {
            return Some(Violation {
                axiom: "associativity cell invertibility".into(),
                witness: format!("κ[{},{},{}]", p, f, g),
            });
        }
    }

    // associativity cell naturality in all three slots
    for m in &p_cat.morphisms {
        for phi in &b.two_cells {
            let key1 = (m.clone(), phi.clone());
            if !a.act1.contains_key(&key1) {
                continue;
            }
            for psi in &b.two_cells {
                if b.s0[&b.s1[phi]] != b.t0[&b.s1[psi]] {
                    continue;
                }
                let p = p_cat.src(m);
                let q = p_cat.tgt(m);
                let (f, fp) = (&b.s1[phi], &b.t1[phi]);
                let (g, gp) = (&b.s1[psi], &b.t1[psi]);
                let inner = &a.act1[&key1];
                let moved = &a.act1[&(inner.clone(), psi.clone())];
                let lhs = &p_cat.comp[&(
                    a.kappa[&(q.clone(), fp.clone(), gp.clone())].clone(),
                    moved.clone(),
                )];
                let hphi = &b.hcomp2[&(phi.clone(), psi.clone())];
                let rhs = &p_cat.comp[&(
                    a.act1[&(m.clone(), hphi.clone())].clone(),
                    a.kappa[&(p.clone(), f.clone(), g.clone())].clone(),
                )];
                if lhs != rhs {
                    return Some(Violation {
                        axiom: "associativity cell naturality".into(),
                        witness: format!("({}, {}, {})", m, phi, psi),
                    });
                }
            }
        }
    }

    // unit cells: totality, typing, invertibility
    for p in &p_cat.objects {
        let Some(i) = a.iota.get(p) else {
            return Some(Violation {
                axiom: "unit cell totality".into(),
                witness: p.clone(),
            });
        };
        let unit = &b.id1[&a.momentum[p]];
        let src = &a.act0[&(p.clone(), unit.clone())];
        if p_cat.src(i) != src || p_cat.tgt(i) != p {
            return Some(Violation {
                axiom: "unit cell typing".into(),
                witness: format!("ι[{}]", p),
            });
        }
        if p_cat.inverse(i).is_none() {
            return Some(Violation {
                axiom: "unit cell invertibility".into(),
                witness: format!("ι[{}]", p),
            });
        }
    }
    if a.iota.len() != p_cat.objects.len() {
        let extra = a.iota.keys().find(|k| !p_cat.objects.contains(*k)).unwrap();
        return Some(Violation {
            axiom: "unit cell totality".into(),
            witness: extra.clone(),
        });
    }

    // unit cell naturality
    for m in &p_cat.morphisms {
        let p = p_cat.src(m);
        let q = p_cat.tgt(m);
        let unit2 = &b.id2[&b.id1[&a.momentum[p]]];
        let moved = &a.act1[&(m.clone(), unit2.clone())];
        let lhs = &p_cat.comp[&(a.iota[q].clone(), moved.clone())];
        let rhs = &p_cat.comp[&(m.clone(), a.iota[p].clone())];
        if lhs != rhs {
            return Some(Violation {
                axiom: "unit cell naturality".into(),
                witness: m.clone(),
            });
        }
    }

    // pentagon-shaped coherence
    for (p, f, g) in &triples {
        for h in &b.one_cells {
            if b.s0.get(*g) != b.t0.get(h) {
                continue;
            }
            let pf = &a.act0[&((*p).clone(), (*f).clone())];
            let fg = &b.hcomp1[&((*f).clone(), (*g).clone())];
            let gh = &b.hcomp1[&((*g).clone(), h.clone())];
            let lhs = &p_cat.comp[&(
                a.kappa[&((*p).clone(), (*f).clone(), gh.clone())].clone(),
                a.kappa[&(pf.clone(), (*g).clone(), h.clone())].clone(),
            )];
            let alpha = &b.assoc[&((*f).clone(), (*g).clone(), h.clone())];
            let step1 = &a.act1[&(
                a.kappa[&((*p).clone(), (*f).clone(), (*g).clone())].clone(),
                b.id2[h].clone(),
            )];
            let step2 = &p_cat.comp[&(
                a.kappa[&((*p).clone(), fg.clone(), h.clone())].clone(),
                step1.clone(),
            )];
            let rhs = &p_cat.comp[&(
                a.act1[&(p_cat.identity(p).clone(), alpha.clone())].clone(),
                step2.clone(),
            )];
            if lhs != rhs {
                return Some(Violation {
                    axiom: "action pentagon".into(),
                    witness: format!("({}, {}, {}, {})", p, f, g, h),
                });
            }
        }
    }

    // unit triangles
    for (p, f) in &obj_pairs {
        let x = &a.momentum[*p];
        let unit_x = &b.id1[x];
        let lam = &b.lunitor[*f];
        let lhs = &p_cat.comp[&(
            a.act1[&(p_cat.identity(p).clone(), lam.clone())].clone(),
            a.kappa[&((*p).clone(), unit_x.clone(), (*f).clone())].clone(),
        )];
        let rhs = &a.act1[&(a.iota[*p].clone(), b.id2[*f].clone())];
        if lhs != rhs {
            return Some(Violation {
                axiom: "action unit triangle (left)".into(),
                witness: format!("({}, {})", p, f),
            });
        }
        let y = &b.s0[*f];
        let unit_y = &b.id1[y];
        let rho = &b.runitor[*f];
        let lhs = &p_cat.comp[&(
            a.act1[&(p_cat.identity(p).clone(), rho.clone())].clone(),
            a.kappa[&((*p).clone(), (*f).clone(), unit_y.clone())].clone(),
        )];
        let pf = &a.act0[&((*p).clone(), (*f).clone())];
        let rhs = &a.iota[pf];
        if lhs != rhs {
            return Some(Violation {
                axiom: "action unit triangle (right)".into(),
                witness: format!("({}, {})", p, f),
            });
        }
    }

    None
}

/// Check every axiom of a bicategory action; the report names the first
/// failing axiom with a witness.
pub fn validate_action(a: &BicatAction) -> VerificationReport {
    match action_violation(a) {
        None => VerificationReport::pass("action"),
        Some(v) => VerificationReport::fail("action", v.axiom, v.witness),
    }
}

/// Validate an action fibered over a base set: the underlying action plus
/// the fiber-preservation conditions of the base projection.
pub fn validate_fibered_action(fa: &FiberedAction) -> VerificationReport {
    if let Some(v) = action_violation(&fa.action) {
        return VerificationReport::fail("fibered action", v.axiom, v.witness);
    }
    let p_cat = &fa.action.category;
    for p in &p_cat.objects {
        match fa.pi0.get(p) {
            None => {
                return VerificationReport::fail(
                    "fibered action",
                    "base projection totality",
                    p.clone(),
                )
            }
            Some(x) if !fa.base.contains(x) => {
                return VerificationReport::fail(
                    "fibered action",
                    "base projection typing",
                    format!("{} ↦ {}", p, x),
                )
            }
            _ => {}
        }
    }
    for m in &p_cat.morphisms {
        if fa.pi0[p_cat.src(m)] != fa.pi0[p_cat.tgt(m)] {
            return VerificationReport::fail(
                "fibered action",
                "base projection fiber preservation",
                m.clone(),
            );
        }
    }
    for ((p, f), q) in &fa.action.act0 {
        if fa.pi0[p] != fa.pi0[q] {
            return VerificationReport::fail(
                "fibered action",
                "base projection action invariance",
                format!("{} ◁ {}", p, f),
            );
        }
    }
    VerificationReport::pass("fibered action")
}

// ---------------------------------------------------------------------------
// the action bicategory and its projection
// ---------------------------------------------------------------------------

/// A decoded 1-cell of an action bicategory: the triple `(p, h, ψ)`
/// representing `(ψ, h) : q → p` with `ψ : q → p ◁ h`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ActionOneCell {
    pub p: Id,
    pub h: Id,
    pub psi: Id,
}

impl ActionOneCell {
    pub fn id(&self) -> Id {
        tuple_id(&[self.p.clone(), self.h.clone(), self.psi.clone()])
    }

    pub fn parse(id: &str) -> Result<ActionOneCell> {
        let parts: Vec<Id> = serde_json::from_str(id)
            .map_err(|e| EngineError::Parse(format!("action 1-cell id {:?}: {}", id, e)))?;
        if parts.len() != 3 {
            return Err(EngineError::Parse(format!(
                "action 1-cell id {:?} has {} parts",
                id,
                parts.len()
            )));
        }
        let mut it = parts.into_iter();
        Ok(ActionOneCell {
            p: it.next().unwrap(),
            h: it.next().unwrap(),
            psi: it.next().unwrap(),
        })
    }
}

/// A decoded 2-cell of an action bicategory: a source 1-cell together with
/// the underlying 2-cell `γ : h ⇒ l`; the target 1-cell is determined by
/// `ξ = (p ◁ γ) ∘ ψ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ActionTwoCell {
    pub source: Id,
    pub gamma: Id,
}

impl ActionTwoCell {
    pub fn id(&self) -> Id {
        tuple_id(&[self.source.clone(), self.gamma.clone()])
    }

    pub fn parse(id: &str) -> Result<ActionTwoCell> {
        let parts: Vec<Id> = serde_json::from_str(id)
            .map_err(|e| EngineError::Parse(format!("action 2-cell id {:?}: {}", id, e)))?;
        if parts.len() != 2 {
            return Err(EngineError::Parse(format!(
                "action 2-cell id {:?} has {} parts",
                id,
                parts.len()
            )));
        }
        let mut it = parts.into_iter();
        Ok(ActionTwoCell {
            source: it.next().unwrap(),
            gamma: it.next().unwrap(),
        })
    }
}

/// Build the action bicategory: objects are the objects of `P`, 1-cells
/// `q → p` are pairs `(ψ, h)` with `h : Λ0(q) → Λ0(p)` and `ψ : q → p ◁ h`,
/// and 2-cells `(ψ, h) ⇒ (ξ, l)` are 2-cells `γ : h ⇒ l` with
/// `(p ◁ γ) ∘ ψ = ξ`. Composition of 1-cells is
/// `(ψ, h) ∘ (φ, g) = (κ_{p,h,g} ∘ (ψ ◁ g) ∘ φ, h ∘ g)`; vertical and
/// horizontal 2-cell composition, associators, and unitors are inherited
/// from the underlying bicategory.
pub fn action_bicategory(a: &BicatAction) -> Result<FiniteBicategory> {
    let v = validate_action(a);
    if !v.passed {
        return Err(EngineError::InvalidAction(format!("{:?}", v.failure.unwrap())));
    }
    let p_cat = &a.category;
    let b = &a.bicategory;

    // 1-cells: (p, h, ψ) with t0(h) = Λ0(p) and tgt(ψ) = p ◁ h.
    let mut cells: Vec<ActionOneCell> = Vec::new();
    for p in &p_cat.objects {
        for h in &b.one_cells {
            let key = (p.clone(), h.clone());
            let Some(ph) = a.act0.get(&key) else { continue };
            for psi in &p_cat.morphisms {
                if p_cat.tgt(psi) == ph {
                    cells.push(ActionOneCell {
                        p: p.clone(),
                        h: h.clone(),
                        psi: psi.clone(),
                    });
                }
            }
        }
    }
    cells.sort();
    let mut s0 = BTreeMap::new();
    let mut t0 = BTreeMap::new();
    for c in &cells {
        s0.insert(c.id(), p_cat.src(&c.psi).clone());
        t0.insert(c.id(), c.p.clone());
    }

    // identity 1-cell of p: (ι_p⁻¹, i_{Λ0(p)}).
    let mut id1 = BTreeMap::new();
    for p in &p_cat.objects {
        let unit = b.id1[&a.momentum[p]].clone();
        let inv = p_cat
            .inverse(&a.iota[p])
            .expect("unit cells are invertible after validation")
            .clone();
        id1.insert(
            p.clone(),
            ActionOneCell {
                p: p.clone(),
                h: unit,
                psi: inv,
            }
            .id(),
        );
    }

    // 2-cells: (source 1-cell, γ) for every γ out of the underlying 1-cell.
    let mut twos: Vec<ActionTwoCell> = Vec::new();
    let mut s1 = BTreeMap::new();
    let mut t1 = BTreeMap::new();
    let mut target_cell: BTreeMap<Id, ActionOneCell> = BTreeMap::new();
    for c in &cells {
        for gamma in &b.two_cells {
            if &b.s1[gamma] != &c.h {
                continue;
            }
            let two = ActionTwoCell {
                source: c.id(),
                gamma: gamma.clone(),
            };
            let moved = a.act1[&(p_cat.identity(&c.p).clone(), gamma.clone())].clone();
            let xi = p_cat.comp[&(moved, c.psi.clone())].clone();
            let tgt = ActionOneCell {
                p: c.p.clone(),
                h: b.t1[gamma].clone(),
                psi: xi,
            };
            s1.insert(two.id(), c.id());
            t1.insert(two.id(), tgt.id());
            target_cell.insert(two.id(), tgt);
            twos.push(two);
        }
    }
    twos.sort();

    let mut id2 = BTreeMap::new();
    for c in &cells {
        id2.insert(
            c.id(),
            ActionTwoCell {
                source: c.id(),
                gamma: b.id2[&c.h].clone(),
            }
            .id(),
        );
    }

    // vertical composition: inherited from the underlying bicategory.
    let mut vcomp = BTreeMap::new();
    for upper in &twos {
        for lower in &twos {
            if s1[&upper.id()] != t1[&lower.id()] {
                continue;
            }
            let composite = ActionTwoCell {
                source: lower.source.clone(),
                gamma: b.vcomp[&(upper.gamma.clone(), lower.gamma.clone())].clone(),
            };
            vcomp.insert((upper.id(), lower.id()), composite.id());
        }
    }

    // horizontal composition of 1-cells per the displayed composite.
    let compose1 = |outer: &ActionOneCell, inner: &ActionOneCell| -> ActionOneCell {
        let whisk = a.act1[&(outer.psi.clone(), b.id2[&inner.h].clone())].clone();
        let step = p_cat.comp[&(whisk, inner.psi.clone())].clone();
        let kappa = a.kappa[&(outer.p.clone(), outer.h.clone(), inner.h.clone())].clone();
        ActionOneCell {
            p: outer.p.clone(),
            h: b.hcomp1[&(outer.h.clone(), inner.h.clone())].clone(),
            psi: p_cat.comp[&(kappa, step)].clone(),
        }
    };
    let mut hcomp1 = BTreeMap::new();
    for outer in &cells {
        for inner in &cells {
            if s0[&outer.id()] != t0[&inner.id()] {
                continue;
            }
            hcomp1.insert((outer.id(), inner.id()), compose1(outer, inner).id());
        }
    }

    // horizontal composition of 2-cells: inherited from the underlying one.
    let mut hcomp2 = BTreeMap::new();
    for u in &twos {
        for v in &twos {
            let cu = ActionOneCell::parse(&u.source)?;
            let cv = ActionOneCell::parse(&v.source)?;
            if s0[&cu.id()] != t0[&cv.id()] {
                continue;
            }
            let composite = ActionTwoCell {
                source: hcomp1[&(cu.id(), cv.id())].clone(),
                gamma: b.hcomp2[&(u.gamma.clone(), v.gamma.clone())].clone(),
            };
            hcomp2.insert((u.id(), v.id()), composite.id());
        }
    }

    // associators and unitors: transported from the underlying bicategory.
    let mut assoc = BTreeMap::new();
    for c3 in &cells {
        for c2 in &cells {
            if s0[&c3.id()] != t0[&c2.id()] {
                continue;
            }
            let c32 = compose1(c3, c2);
            for c1 in &cells {
                if s0[&c2.id()] != t0[&c1.id()] {
                    continue;
                }
                let source = compose1(&c32, c1);
                let alpha = ActionTwoCell {
                    source: source.id(),
                    gamma: b.assoc[&(c3.h.clone(), c2.h.clone(), c1.h.clone())].clone(),
                };
                assoc.insert((c3.id(), c2.id(), c1.id()), alpha.id());
            }
        }
    }
    let mut lunitor = BTreeMap::new();
    let mut runitor = BTreeMap::new();
    for c in &cells {
        let idp = ActionOneCell::parse(&id1[&t0[&c.id()]])?;
        let idq = ActionOneCell::parse(&id1[&s0[&c.id()]])?;
        lunitor.insert(
            c.id(),
            ActionTwoCell {
                source: compose1(&idp, c).id(),
                gamma: b.lunitor[&c.h].clone(),
            }
            .id(),
        );
        runitor.insert(
            c.id(),
            ActionTwoCell {
                source: compose1(c, &idq).id(),
                gamma: b.runitor[&c.h].clone(),
            }
            .id(),
        );
    }

    Ok(FiniteBicategory {
        objects: p_cat.objects.clone(),
        one_cells: cells.iter().map(ActionOneCell::id).collect(),
        two_cells: twos.iter().map(ActionTwoCell::id).collect(),
        s0,
        t0,
        id1,
        s1,
        t1,
        id2,
        vcomp,
        hcomp1,
        hcomp2,
        assoc,
        lunitor,
        runitor,
    })
}

/// The strict homomorphism from the action bicategory to the acting
/// bicategory: objects go to their momentum, a 1-cell `(ψ, h)` to `h`, and
/// a 2-cell to its underlying `γ`.
pub fn canonical_projection(a: &BicatAction) -> Result<StrictHomomorphism> {
    let source = action_bicategory(a)?;
    let mut f1 = BTreeMap::new();
    for c in &source.one_cells {
        f1.insert(c.clone(), ActionOneCell::parse(c)?.h);
    }
    let mut f2 = BTreeMap::new();
    for t in &source.two_cells {
        f2.insert(t.clone(), ActionTwoCell::parse(t)?.gamma);
    }
    Ok(StrictHomomorphism {
        source,
        target: a.bicategory.clone(),
        f0: a.momentum.clone(),
        f1,
        f2,
    })
}

// ---------------------------------------------------------------------------
// the self-action (tangent construction)
// ---------------------------------------------------------------------------

/// The right action of a bicategory on its own category of 1-cells: objects
/// of `P` are 1-cells, morphisms are 2-cells composed vertically, momentum
/// is the 1-cell source, the action is horizontal composition, and the
/// coherence cells are the associators and right unitors.
pub fn self_action(b: &FiniteBicategory) -> Result<BicatAction> {
    let v = validate_bicategory(b);
    if !v.passed {
        return Err(EngineError::InvalidBicategory(format!(
            "{:?}",
            v.failure.unwrap()
        )));
    }
    let category = FiniteCategory {
        objects: b.one_cells.clone(),
        morphisms: b.two_cells.clone(),
        src: b.s1.clone(),
        tgt: b.t1.clone(),
        id: b.id2.clone(),
        comp: b.vcomp.clone(),
    };
    let momentum: BTreeMap<Id, Id> = b
        .one_cells
        .iter()
        .map(|f| (f.clone(), b.s0[f].clone()))
        .collect();
    Ok(BicatAction {
        category,
        momentum,
        act0: b.hcomp1.clone(),
        act1: b.hcomp2.clone(),
        kappa: b.assoc.clone(),
        iota: b.runitor.clone(),
        bicategory: b.clone(),
    })
}

/// The tangent bundle projection: each object of the tangent (self-action)
/// bicategory — a 1-cell of `b` — goes to its target object.
pub fn tangent_projection(b: &FiniteBicategory) -> Result<BTreeMap<Id, Id>> {
    let v = validate_bicategory(b);
    if !v.passed {
        return Err(EngineError::InvalidBicategory(format!(
            "{:?}",
            v.failure.unwrap()
        )));
    }
    Ok(b.one_cells
        .iter()
        .map(|f| (f.clone(), b.t0[f].clone()))
        .collect())
}

// ---------------------------------------------------------------------------
// equivariant functors and transformations
// ---------------------------------------------------------------------------

/// A functor between the underlying categories of two actions of the same
/// bicategory, together with structure cells
/// `theta[(p, f)] : F(p) ◁ f → F(p ◁ f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantFunctor {
    pub source: BicatAction,
    pub target: BicatAction,
    pub f_obj: BTreeMap<Id, Id>,
    pub f_mor: BTreeMap<Id, Id>,
    pub theta: BTreeMap<(Id, Id), Id>,
}

impl EquivariantFunctor {
    /// The identity functor with identity structure cells.
    pub fn identity(a: &BicatAction) -> EquivariantFunctor {
        let f_obj = a
            .category
            .objects
            .iter()
            .map(|p| (p.clone(), p.clone()))
            .collect();
        let f_mor = a
            .category
            .morphisms
            .iter()
            .map(|m| (m.clone(), m.clone()))
            .collect();
        let theta = a
            .act0
            .iter()
            .map(|(k, q)| (k.clone(), a.category.identity(q).clone()))
            .collect();
        EquivariantFunctor {
            source: a.clone(),
            target: a.clone(),
            f_obj,
            f_mor,
            theta,
        }
    }

    /// The composite functor with pasted structure cells:
    /// `G(θ_{p,f}) ∘ ζ_{F(p),f}`.
    pub fn then(&self, g: &EquivariantFunctor) -> Result<EquivariantFunctor> {
        if self.target != g.source {
            return Err(EngineError::NotComposable(
                "equivariant functors with mismatched middle action".into(),
            ));
        }
        let f_obj: BTreeMap<Id, Id> = self
            .f_obj
            .iter()
            .map(|(p, q)| (p.clone(), g.f_obj[q].clone()))
            .collect();
        let f_mor: BTreeMap<Id, Id> = self
            .f_mor
            .iter()
            .map(|(m, n)| (m.clone(), g.f_mor[n].clone()))
            .collect();
        let mut theta = BTreeMap::new();
        for ((p, f), th) in &self.theta {
            let zeta = &g.theta[&(self.f_obj[p].clone(), f.clone())];
            let pasted = g.target.category.comp[&(g.f_mor[th].clone(), zeta.clone())].clone();
            theta.insert((p.clone(), f.clone()), pasted);
        }
        Ok(EquivariantFunctor {
            source: self.source.clone(),
            target: g.target.clone(),
            f_obj,
            f_mor,
            theta,
        })
    }
}

/// A natural transformation between two equivariant functors with the same
/// source and target actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantTransformation {
    pub from: EquivariantFunctor,
    pub to: EquivariantFunctor,
    pub tau: BTreeMap<Id, Id>,
}

/// Check the equivariant-functor axioms: a genuine functor of categories,
/// momentum compatibility, structure-cell typing and naturality, and
/// compatibility with the associativity and unit cells of both actions.
pub fn check_equivariant_functor(ef: &EquivariantFunctor) -> Result<VerificationReport> {
    for a in [&ef.source, &ef.target] {
        let v = validate_action(a);
        if !v.passed {
            return Err(EngineError::InvalidAction(format!("{:?}", v.failure.unwrap())));
        }
    }
    if ef.source.bicategory != ef.target.bicategory {
        return Err(EngineError::MalformedData(
            "source and target actions are over different bicategories".into(),
        ));
    }
    let subject = "equivariant functor";
    let p = &ef.source.category;
    let q = &ef.target.category;
    let b = &ef.source.bicategory;

    // underlying functor
    for x in &p.objects {
        match ef.f_obj.get(x) {
            Some(y) if q.objects.contains(y) => {}
            _ => {
                return Ok(VerificationReport::fail(
                    subject,
                    "object component totality/typing",
                    x.clone(),
                ))
            }
        }
    }
    for m in &p.morphisms {
        let Some(n) = ef.f_mor.get(m) else {
            return Ok(VerificationReport::fail(
                subject,
                "morphism component totality",
                m.clone(),
            ));
        };
        if !q.morphisms.contains(n)
            || q.src(n) != &ef.f_obj[p.src(m)]
            || q.tgt(n) != &ef.f_obj[p.tgt(m)]
        {
            return Ok(VerificationReport::fail(
                subject,
                "morphism component typing",
                m.clone(),
            ));
        }
    }
    for x in &p.objects {
        if &ef.f_mor[p.identity(x)] != q.identity(&ef.f_obj[x]) {
            return Ok(VerificationReport::fail(
                subject,
                "preserves identities",
                x.clone(),
            ));
        }
    }
    for (g, f) in p.composable_pairs() {
        let lhs = &ef.f_mor[&p.comp[&(g.clone(), f.clone())]];
        let rhs = &q.comp[&(ef.f_mor[g].clone(), ef.f_mor[f].clone())];
        if lhs != rhs {
            return Ok(VerificationReport::fail(
                subject,
                "preserves composition",
                format!("({}, {})", g, f),
            ));
        }
    }

    // momentum compatibility
    for x in &p.objects {
        if ef.source.momentum[x] != ef.target.momentum[&ef.f_obj[x]] {
            return Ok(VerificationReport::fail(
                subject,
                "momentum compatibility",
                x.clone(),
            ));
        }
    }

    // structure cells: totality/domain, typing, invertibility
    let domain: BTreeSet<(Id, Id)> = ef.source.act0.keys().cloned().collect();
    if ef.theta.keys().cloned().collect::<BTreeSet<_>>() != domain {
        return Ok(VerificationReport::fail(
            subject,
            "structure cell totality/domain",
            "key set differs from the action domain".to_string(),
        ));
    }
    for ((x, f), th) in &ef.theta {
        let src = &ef.target.act0[&(ef.f_obj[x].clone(), f.clone())];
        let tgt = &ef.f_obj[&ef.source.act0[&(x.clone(), f.clone())]];
        if !q.morphisms.contains(th) || q.src(th) != src || q.tgt(th) != tgt {
            return Ok(VerificationReport::fail(
                subject,
                "structure cell typing",
                format!("θ[{}, {}]", x, f),
            ));
        }
        if q.inverse(th).is_none() {
            return Ok(VerificationReport::fail(
                subject,
                "structure cell invertibility",
                format!("θ[{}, {}]", x, f),
            ));
        }
    }

    // structure cell naturality
    for ((m, phi), n) in &ef.source.act1 {
        let (x, y) = (p.src(m), p.tgt(m));
        let (f, g) = (&b.s1[phi], &b.t1[phi]);
        let moved = &ef.target.act1[&(ef.f_mor[m].clone(), phi.clone())];
        let lhs = &q.comp[&(ef.theta[&(y.clone(), g.clone())].clone(), moved.clone())];
        let rhs = &q.comp[&(
            ef.f_mor[n].clone(),
            ef.theta[&(x.clone(), f.clone())].clone(),
        )];
        if lhs != rhs {
            return Ok(VerificationReport::fail(
                subject,
                "structure cell naturality",
                format!("({}, {})", m, phi),
            ));
        }
    }

    // compatibility with the associativity cells
    for ((x, f, g), k) in &ef.source.kappa {
        let xf = &ef.source.act0[&(x.clone(), f.clone())];
        let fg = &b.hcomp1[&(f.clone(), g.clone())];
        let whisk = &ef.target.act1[&(
            ef.theta[&(x.clone(), f.clone())].clone(),
            b.id2[g].clone(),
        )];
        let step = &q.comp[&(ef.theta[&(xf.clone(), g.clone())].clone(), whisk.clone())];
        let lhs = &q.comp[&(ef.f_mor[k].clone(), step.clone())];
        let kprime = &ef.target.kappa[&(ef.f_obj[x].clone(), f.clone(), g.clone())];
        let rhs = &q.comp[&(ef.theta[&(x.clone(), fg.clone())].clone(), kprime.clone())];
        if lhs != rhs {
            return Ok(VerificationReport::fail(
                subject,
                "associativity compatibility",
                format!("({}, {}, {})", x, f, g),
            ));
        }
    }

    // compatibility with the unit cells
    for x in &p.objects {
        let unit = &b.id1[&ef.source.momentum[x]];
        let lhs = &q.comp[&(
            ef.f_mor[&ef.source.iota[x]].clone(),
            ef.theta[&(x.clone(), unit.clone())].clone(),
        )];
        let rhs = &ef.target.iota[&ef.f_obj[x]];
        if lhs != rhs {
            return Ok(VerificationReport::fail(
                subject,
                "unit compatibility",
                x.clone(),
            ));
        }
    }

    Ok(VerificationReport::pass(subject))
}

/// Check the equivariant-transformation axioms: componentwise naturality in
/// the underlying categories and the square relating the structure cells of
/// the two functors.
pub fn check_equivariant_transformation(
    et: &EquivariantTransformation,
) -> Result<VerificationReport> {
    for ef in [&et.from, &et.to] {
        let r = check_equivariant_functor(ef)?;
        if !r.passed {
            return Err(EngineError::MalformedData(format!(
                "constituent functor fails: {:?}",
                r.failure.unwrap()
            )));
        }
    }
    if et.from.source != et.to.source || et.from.target != et.to.target {
        return Err(EngineError::MalformedData(
            "transformation between functors with different endpoints".into(),
        ));
    }
    let subject = "equivariant transformation";
    let p = &et.from.source.category;
    let q = &et.from.target.category;

    for x in &p.objects {
        let Some(t) = et.tau.get(x) else {
            return Ok(VerificationReport::fail(
                subject,
                "component totality",
                x.clone(),
            ));
        };
        if !q.morphisms.contains(t)
            || q.src(t) != &et.from.f_obj[x]
            || q.tgt(t) != &et.to.f_obj[x]
        {
            return Ok(VerificationReport::fail(
                subject,
                "component typing",
                x.clone(),
            ));
        }
    }
    for m in &p.morphisms {
        let (x, y) = (p.src(m), p.tgt(m));
        let lhs = &q.comp[&(et.tau[y].clone(), et.from.f_mor[m].clone())];
        let rhs = &q.comp[&(et.to.f_mor[m].clone(), et.tau[x].clone())];
        if lhs != rhs {
            return Ok(VerificationReport::fail(subject, "naturality", m.clone()));
        }
    }
    for (x, f) in et.from.source.act0.keys() {
        let b = &et.from.source.bicategory;
        let moved = &et.from.target.act1[&(et.tau[x].clone(), b.id2[f].clone())];
        let lhs = &q.comp[&(et.to.theta[&(x.clone(), f.clone())].clone(), moved.clone())];
        let xf = &et.from.source.act0[&(x.clone(), f.clone())];
        let rhs = &q.comp[&(
            et.tau[xf].clone(),
            et.from.theta[&(x.clone(), f.clone())].clone(),
        )];
        if lhs != rhs {
            return Ok(VerificationReport::fail(
                subject,
                "equivariance square",
                format!("({}, {})", x, f),
            ));
        }
    }
    Ok(VerificationReport::pass(subject))
}
