//! Finite bicategories as dense structure tables, with exhaustive validation
//! of the coherence axioms, a decision procedure for the bigroupoid property,
//! strict homomorphisms, and stock generators: locally discrete bicategories
//! of finite categories, ordinals, 2-groups built from crossed modules, and a
//! bicategory of spans of canonical finite sets with chosen pullbacks.
//!
//! Orientation conventions used across the crate:
//! - `vcomp[(ψ, φ)] = ψ · φ` (φ applied first), defined iff `s1(ψ) = t1(φ)`;
//! - `hcomp1[(g, f)] = g ∘ f` (f traversed first), defined iff `s0(g) = t0(f)`;
//! - `hcomp2[(ψ, φ)] = ψ ∘ φ` with the same orientation;
//! - `assoc[(h, g, f)] : (h ∘ g) ∘ f ⇒ h ∘ (g ∘ f)`;
//! - `lunitor[f] : i_{t0(f)} ∘ f ⇒ f` and `runitor[f] : f ∘ i_{s0(f)} ⇒ f`.

use crate::category::FiniteCategory;
use crate::report::{EngineError, Result, VerificationReport, Violation};
use crate::simplicial::Id;
use std::collections::{BTreeMap, BTreeSet};

/// A finite bicategory: object, 1-cell and 2-cell tables together with dense
/// composition, associator and unitor tables on their declared domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBicategory {
    /// Sorted object ids.
    pub objects: Vec<Id>,
    /// Sorted 1-cell ids.
    pub one_cells: Vec<Id>,
    /// Sorted 2-cell ids.
    pub two_cells: Vec<Id>,
    /// Source object of each 1-cell.
    pub s0: BTreeMap<Id, Id>,
    /// Target object of each 1-cell.
    pub t0: BTreeMap<Id, Id>,
    /// Identity 1-cell of each object.
    pub id1: BTreeMap<Id, Id>,
    /// Source 1-cell of each 2-cell.
    pub s1: BTreeMap<Id, Id>,
    /// Target 1-cell of each 2-cell.
    pub t1: BTreeMap<Id, Id>,
    /// Identity 2-cell of each 1-cell.
    pub id2: BTreeMap<Id, Id>,
    /// `vcomp[(ψ, φ)] = ψ · φ` for every pair with `s1(ψ) = t1(φ)`.
    pub vcomp: BTreeMap<(Id, Id), Id>,
    /// `hcomp1[(g, f)] = g ∘ f` for every pair with `s0(g) = t0(f)`.
    pub hcomp1: BTreeMap<(Id, Id), Id>,
    /// `hcomp2[(ψ, φ)] = ψ ∘ φ` for every horizontally composable pair.
    pub hcomp2: BTreeMap<(Id, Id), Id>,
    /// `assoc[(h, g, f)] : (h ∘ g) ∘ f ⇒ h ∘ (g ∘ f)` per composable triple.
    pub assoc: BTreeMap<(Id, Id, Id), Id>,
    /// `lunitor[f] : i_{t0(f)} ∘ f ⇒ f`.
    pub lunitor: BTreeMap<Id, Id>,
    /// `runitor[f] : f ∘ i_{s0(f)} ⇒ f`.
    pub runitor: BTreeMap<Id, Id>,
}

fn missing(table: &str, key: impl std::fmt::Display) -> EngineError {
    EngineError::MalformedTable(format!("{} has no entry for {}", table, key))
}

impl FiniteBicategory {
    pub fn source0(&self, f: &str) -> Result<&Id> {
        self.s0.get(f).ok_or_else(|| missing("s0", f))
    }

    pub fn target0(&self, f: &str) -> Result<&Id> {
        self.t0.get(f).ok_or_else(|| missing("t0", f))
    }

    pub fn identity1(&self, x: &str) -> Result<&Id> {
        self.id1.get(x).ok_or_else(|| missing("id1", x))
    }

    pub fn source1(&self, phi: &str) -> Result<&Id> {
        self.s1.get(phi).ok_or_else(|| missing("s1", phi))
    }

    pub fn target1(&self, phi: &str) -> Result<&Id> {
        self.t1.get(phi).ok_or_else(|| missing("t1", phi))
    }

    pub fn identity2(&self, f: &str) -> Result<&Id> {
        self.id2.get(f).ok_or_else(|| missing("id2", f))
    }

    pub fn left_unitor(&self, f: &str) -> Result<&Id> {
        self.lunitor.get(f).ok_or_else(|| missing("lunitor", f))
    }

    pub fn right_unitor(&self, f: &str) -> Result<&Id> {
        self.runitor.get(f).ok_or_else(|| missing("runitor", f))
    }

    /// `ψ · φ` (φ first); errors when the pair is not vertically composable.
    pub fn vertical(&self, psi: &str, phi: &str) -> Result<Id> {
        self.vcomp
            .get(&(psi.to_string(), phi.to_string()))
            .cloned()
            .ok_or_else(|| EngineError::NotComposable(format!("vertical: {} after {}", psi, phi)))
    }

    /// `g ∘ f` (f first); errors when `s0(g) ≠ t0(f)`.
    pub fn horizontal1(&self, g: &str, f: &str) -> Result<Id> {
        self.hcomp1
            .get(&(g.to_string(), f.to_string()))
            .cloned()
            .ok_or_else(|| EngineError::NotComposable(format!("horizontal: {} after {}", g, f)))
    }

    /// `ψ ∘ φ` (φ first); errors when the underlying 1-cells do not compose.
    pub fn horizontal2(&self, psi: &str, phi: &str) -> Result<Id> {
        self.hcomp2
            .get(&(psi.to_string(), phi.to_string()))
            .cloned()
            .ok_or_else(|| EngineError::NotComposable(format!("horizontal: {} after {}", psi, phi)))
    }

    /// `α_{h,g,f} : (h ∘ g) ∘ f ⇒ h ∘ (g ∘ f)`.
    pub fn associator(&self, h: &str, g: &str, f: &str) -> Result<Id> {
        self.assoc
            .get(&(h.to_string(), g.to_string(), f.to_string()))
            .cloned()
            .ok_or_else(|| {
                EngineError::NotComposable(format!("associator: ({}, {}, {})", h, g, f))
            })
    }

    /// `g ∘ φ`: horizontal composition with the identity 2-cell of `g`.
    pub fn whisker_left(&self, g: &str, phi: &str) -> Result<Id> {
        let idg = self.identity2(g)?.clone();
        self.horizontal2(&idg, phi)
    }

    /// `φ ∘ f`: horizontal composition with the identity 2-cell of `f`.
    pub fn whisker_right(&self, phi: &str, f: &str) -> Result<Id> {
        let idf = self.identity2(f)?.clone();
        self.horizontal2(phi, &idf)
    }

    /// Two-sided vertical inverse of a 2-cell, if one exists.
    pub fn inverse2(&self, phi: &str) -> Option<&Id> {
        let s = self.s1.get(phi)?;
        let t = self.t1.get(phi)?;
        self.two_cells.iter().find(|q| {
            self.s1.get(*q) == Some(t)
                && self.t1.get(*q) == Some(s)
                && self.vcomp.get(&((*q).clone(), phi.to_string())) == self.id2.get(s)
                && self.vcomp.get(&(phi.to_string(), (*q).clone())) == self.id2.get(t)
        })
    }

    /// Whether `g ∘ f` is declared composable (`s0(g) = t0(f)`).
    pub fn composable1(&self, g: &str, f: &str) -> bool {
        match (self.s0.get(g), self.t0.get(f)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// 1-cells with the given source object, in sorted order.
    fn outgoing(&self) -> BTreeMap<&Id, Vec<&Id>> {
        let mut out: BTreeMap<&Id, Vec<&Id>> = BTreeMap::new();
        for f in &self.one_cells {
            if let Some(x) = self.s0.get(f) {
                out.entry(x).or_default().push(f);
            }
        }
        out
    }
}

/// Which of the four cell-level composites to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    /// `cells = [ψ, φ]` with `s1(ψ) = t1(φ)`: the composite `ψ · φ`.
    Vertical,
    /// `cells = [ψ, φ]` horizontally composable: the composite `ψ ∘ φ`.
    Horizontal,
    /// `cells = [g, φ]` with `g` a 1-cell: the whisker `g ∘ φ`.
    WhiskerLeft,
    /// `cells = [φ, f]` with `f` a 1-cell: the whisker `φ ∘ f`.
    WhiskerRight,
}

/// Evaluate a vertical, horizontal, or whiskered composite by table lookup.
pub fn compose_cells(b: &FiniteBicategory, kind: CellKind, cells: &[Id]) -> Result<Id> {
    if cells.len() != 2 {
        return Err(EngineError::NotComposable(format!(
            "expected exactly two cells, got {}",
            cells.len()
        )));
    }
    match kind {
        CellKind::Vertical => b.vertical(&cells[0], &cells[1]),
        CellKind::Horizontal => b.horizontal2(&cells[0], &cells[1]),
        CellKind::WhiskerLeft => b.whisker_left(&cells[0], &cells[1]),
        CellKind::WhiskerRight => b.whisker_right(&cells[0], &cells[1]),
    }
}

fn viol(axiom: &str, witness: impl Into<String>) -> Violation {
    Violation {
        axiom: axiom.into(),
        witness: witness.into(),
    }
}

/// Check every bicategory axiom exhaustively over the finite tables; the
/// first violated identity (in a fixed deterministic order) is reported with
/// its lexicographically least witness.
pub fn validate_bicategory(b: &FiniteBicategory) -> VerificationReport {
    let subject = "bicategory axioms";
    match bicategory_violation(b) {
        None => VerificationReport::pass(subject),
        Some(v) => VerificationReport::fail(subject, v.axiom, v.witness),
    }
}

fn bicategory_violation(b: &FiniteBicategory) -> Option<Violation> {
    let objects: BTreeSet<&Id> = b.objects.iter().collect();
    let ones: BTreeSet<&Id> = b.one_cells.iter().collect();
    let twos: BTreeSet<&Id> = b.two_cells.iter().collect();

    // ---- structural typing and totality -------------------------------
    for f in &b.one_cells {
        for (name, table) in [("s0", &b.s0), ("t0", &b.t0)] {
            match table.get(f) {
                None => return Some(viol("one-cell endpoint totality", format!("{}({})", name, f))),
                Some(x) if !objects.contains(x) => {
                    return Some(viol(
                        "one-cell endpoint typing",
                        format!("{}({}) = {} is not an object", name, f, x),
                    ))
                }
                _ => {}
            }
        }
    }
    for x in &b.objects {
        match b.id1.get(x) {
            None => return Some(viol("identity 1-cell totality", x.clone())),
            Some(i) => {
                if !ones.contains(i) || b.s0.get(i) != Some(x) || b.t0.get(i) != Some(x) {
                    return Some(viol("identity 1-cell typing", format!("id1({}) = {}", x, i)));
                }
            }
        }
    }
    for p in &b.two_cells {
        for (name, table) in [("s1", &b.s1), ("t1", &b.t1)] {
            match table.get(p) {
                None => return Some(viol("two-cell boundary totality", format!("{}({})", name, p))),
                Some(f) if !ones.contains(f) => {
                    return Some(viol(
                        "two-cell boundary typing",
                        format!("{}({}) = {} is not a 1-cell", name, p, f),
                    ))
                }
                _ => {}
            }
        }
        let s = &b.s1[p];
        let t = &b.t1[p];
        if b.s0.get(s) != b.s0.get(t) || b.t0.get(s) != b.t0.get(t) {
            return Some(viol("globularity", p.clone()));
        }
    }
    for f in &b.one_cells {
        match b.id2.get(f) {
            None => return Some(viol("identity 2-cell totality", f.clone())),
            Some(i) => {
                if !twos.contains(i) || b.s1.get(i) != Some(f) || b.t1.get(i) != Some(f) {
                    return Some(viol("identity 2-cell typing", format!("id2({}) = {}", f, i)));
                }
            }
        }
    }

    // ---- vertical composition: exact domain, typing, category axioms ---
    for p2 in &b.two_cells {
        for p1 in &b.two_cells {
            let key = (p2.clone(), p1.clone());
            let composable = b.s1[p2] == b.t1[p1];
            match (composable, b.vcomp.get(&key)) {
                (true, None) => {
                    return Some(viol(
                        "vertical composition totality",
                        format!("({}, {})", p2, p1),
                    ))
                }
                (false, Some(_)) => {
                    return Some(viol(
                        "vertical composition domain",
                        format!("({}, {})", p2, p1),
                    ))
                }
                (true, Some(v)) => {
                    if !twos.contains(v) || b.s1[v] != b.s1[p1] || b.t1[v] != b.t1[p2] {
                        return Some(viol(
                            "vertical composite typing",
                            format!("({}, {}) = {}", p2, p1, v),
                        ));
                    }
                }
                (false, None) => {}
            }
        }
    }
    for p in &b.two_cells {
        let lid = b.vcomp.get(&(b.id2[&b.t1[p]].clone(), p.clone()));
        let rid = b.vcomp.get(&(p.clone(), b.id2[&b.s1[p]].clone()));
        if lid != Some(p) || rid != Some(p) {
            return Some(viol("vertical unit laws", p.clone()));
        }
    }
    for ((p3, p2), v32) in &b.vcomp {
        for p1 in &b.two_cells {
            if b.s1[p2] != b.t1[p1] {
                continue;
            }
            let left = &b.vcomp[&(v32.clone(), p1.clone())];
            let right = &b.vcomp[&(p3.clone(), b.vcomp[&(p2.clone(), p1.clone())].clone())];
            if left != right {
                return Some(viol(
                    "vertical associativity",
                    format!("({}, {}, {})", p3, p2, p1),
                ));
            }
        }
    }

    // ---- horizontal composition of 1-cells -----------------------------
    for g in &b.one_cells {
        for f in &b.one_cells {
            let key = (g.clone(), f.clone());
            let composable = b.s0[g] == b.t0[f];
            match (composable, b.hcomp1.get(&key)) {
                (true, None) => {
                    return Some(viol(
                        "horizontal composition totality",
                        format!("({}, {})", g, f),
                    ))
                }
                (false, Some(_)) => {
                    return Some(viol(
                        "horizontal composition domain",
                        format!("({}, {})", g, f),
                    ))
                }
                (true, Some(v)) => {
                    if !ones.contains(v) || b.s0[v] != b.s0[f] || b.t0[v] != b.t0[g] {
                        return Some(viol(
                            "horizontal composite typing",
                            format!("({}, {}) = {}", g, f, v),
                        ));
                    }
                }
                (false, None) => {}
            }
        }
    }

    // ---- horizontal composition of 2-cells -----------------------------
    for p2 in &b.two_cells {
        for p1 in &b.two_cells {
            let key = (p2.clone(), p1.clone());
            let composable = b.s0[&b.s1[p2]] == b.t0[&b.s1[p1]];
            match (composable, b.hcomp2.get(&key)) {
                (true, None) => {
                    return Some(viol(
                        "horizontal 2-cell composition totality",
                        format!("({}, {})", p2, p1),
                    ))
                }
                (false, Some(_)) => {
                    return Some(viol(
                        "horizontal 2-cell composition domain",
                        format!("({}, {})", p2, p1),
                    ))
                }
                (true, Some(v)) => {
                    let want_s = &b.hcomp1[&(b.s1[p2].clone(), b.s1[p1].clone())];
                    let want_t = &b.hcomp1[&(b.t1[p2].clone(), b.t1[p1].clone())];
                    if !twos.contains(v) || &b.s1[v] != want_s || &b.t1[v] != want_t {
                        return Some(viol(
                            "horizontal 2-cell composite typing",
                            format!("({}, {}) = {}", p2, p1, v),
                        ));
                    }
                }
                (false, None) => {}
            }
        }
    }

    // ---- functoriality of horizontal composition on identities ---------
    for ((g, f), gf) in &b.hcomp1 {
        let composite = &b.hcomp2[&(b.id2[g].clone(), b.id2[f].clone())];
        if composite != &b.id2[gf] {
            return Some(viol(
                "horizontal identity functoriality",
                format!("({}, {})", g, f),
            ));
        }
    }

    // ---- Godement interchange ------------------------------------------
    for (psi2, psi1) in b.vcomp.keys() {
        for (phi2, phi1) in b.vcomp.keys() {
            if b.s0[&b.s1[psi1]] != b.t0[&b.s1[phi1]] {
                continue;
            }
            let left = &b.vcomp[&(
                b.hcomp2[&(psi2.clone(), phi2.clone())].clone(),
                b.hcomp2[&(psi1.clone(), phi1.clone())].clone(),
            )];
            let right = &b.hcomp2[&(
                b.vcomp[&(psi2.clone(), psi1.clone())].clone(),
                b.vcomp[&(phi2.clone(), phi1.clone())].clone(),
            )];
            if left != right {
                return Some(viol(
                    "interchange",
                    format!("({}, {}, {}, {})", psi2, psi1, phi2, phi1),
                ));
            }
        }
    }

    // ---- unitor and associator typing, totality, invertibility ---------
    let out = b.outgoing();
    let empty: Vec<&Id> = Vec::new();
    for f in &b.one_cells {
        let lf = match b.lunitor.get(f) {
            None => return Some(viol("left unitor totality", f.clone())),
            Some(l) => l,
        };
        let want = &b.hcomp1[&(b.id1[&b.t0[f]].clone(), f.clone())];
        if !twos.contains(lf) || &b.s1[lf] != want || &b.t1[lf] != f {
            return Some(viol("left unitor typing", format!("lunitor({}) = {}", f, lf)));
        }
        if b.inverse2(lf).is_none() {
            return Some(viol("left unitor invertibility", f.clone()));
        }
        let rf = match b.runitor.get(f) {
            None => return Some(viol("right unitor totality", f.clone())),
            Some(r) => r,
        };
        let want = &b.hcomp1[&(f.clone(), b.id1[&b.s0[f]].clone())];
        if !twos.contains(rf) || &b.s1[rf] != want || &b.t1[rf] != f {
            return Some(viol(
                "right unitor typing",
                format!("runitor({}) = {}", f, rf),
            ));
        }
        if b.inverse2(rf).is_none() {
            return Some(viol("right unitor invertibility", f.clone()));
        }
    }
    for ((h, g, f), a) in &b.assoc {
        if !(ones.contains(h) && ones.contains(g) && ones.contains(f))
            || b.s0[h] != b.t0[g]
            || b.s0[g] != b.t0[f]
        {
            return Some(viol("associator domain", format!("({}, {}, {})", h, g, f)));
        }
        let hg = &b.hcomp1[&(h.clone(), g.clone())];
        let gf = &b.hcomp1[&(g.clone(), f.clone())];
        let want_s = &b.hcomp1[&(hg.clone(), f.clone())];
        let want_t = &b.hcomp1[&(h.clone(), gf.clone())];
        if !twos.contains(a) || &b.s1[a] != want_s || &b.t1[a] != want_t {
            return Some(viol(
                "associator typing",
                format!("({}, {}, {}) = {}", h, g, f, a),
            ));
        }
        if b.inverse2(a).is_none() {
            return Some(viol(
                "associator invertibility",
                format!("({}, {}, {})", h, g, f),
            ));
        }
    }
    for f in &b.one_cells {
        for g in out.get(&b.t0[f]).unwrap_or(&empty) {
            for h in out.get(&b.t0[*g]).unwrap_or(&empty) {
                if !b.assoc.contains_key(&((*h).clone(), (*g).clone(), f.clone())) {
                    return Some(viol(
                        "associator totality",
                        format!("({}, {}, {})", h, g, f),
                    ));
                }
            }
        }
    }

    // ---- naturality -----------------------------------------------------
    for p3 in &b.two_cells {
        for p2 in &b.two_cells {
            if b.s0[&b.s1[p3]] != b.t0[&b.s1[p2]] {
                continue;
            }
            for p1 in &b.two_cells {
                if b.s0[&b.s1[p2]] != b.t0[&b.s1[p1]] {
                    continue;
                }
                let before = &b.assoc[&(b.s1[p3].clone(), b.s1[p2].clone(), b.s1[p1].clone())];
                let after = &b.assoc[&(b.t1[p3].clone(), b.t1[p2].clone(), b.t1[p1].clone())];
                let grid_left = &b.hcomp2[&(
                    b.hcomp2[&(p3.clone(), p2.clone())].clone(),
                    p1.clone(),
                )];
                let grid_right = &b.hcomp2[&(
                    p3.clone(),
                    b.hcomp2[&(p2.clone(), p1.clone())].clone(),
                )];
                let lhs = &b.vcomp[&(after.clone(), grid_left.clone())];
                let rhs = &b.vcomp[&(grid_right.clone(), before.clone())];
                if lhs != rhs {
                    return Some(viol(
                        "associator naturality",
                        format!("({}, {}, {})", p3, p2, p1),
                    ));
                }
            }
        }
    }
    for p in &b.two_cells {
        let f = &b.s1[p];
        let f2 = &b.t1[p];
        let iy = b.id2[&b.id1[&b.t0[f]]].clone();
        let lhs = &b.vcomp[&(
            b.lunitor[f2].clone(),
            b.hcomp2[&(iy, p.clone())].clone(),
        )];
        let rhs = &b.vcomp[&(p.clone(), b.lunitor[f].clone())];
        if lhs != rhs {
            return Some(viol("left unitor naturality", p.clone()));
        }
        let ix = b.id2[&b.id1[&b.s0[f]]].clone();
        let lhs = &b.vcomp[&(
            b.runitor[f2].clone(),
            b.hcomp2[&(p.clone(), ix)].clone(),
        )];
        let rhs = &b.vcomp[&(p.clone(), b.runitor[f].clone())];
        if lhs != rhs {
            return Some(viol("right unitor naturality", p.clone()));
        }
    }

    // ---- pentagon --------------------------------------------------------
    for f in &b.one_cells {
        for g in out.get(&b.t0[f]).unwrap_or(&empty) {
            let gf = &b.hcomp1[&((*g).clone(), f.clone())];
            for h in out.get(&b.t0[*g]).unwrap_or(&empty) {
                let hg = &b.hcomp1[&((*h).clone(), (*g).clone())];
                for k in out.get(&b.t0[*h]).unwrap_or(&empty) {
                    let kh = &b.hcomp1[&((*k).clone(), (*h).clone())];
                    let inner = &b.assoc[&((*h).clone(), (*g).clone(), f.clone())];
                    let left_whisker =
                        &b.hcomp2[&(b.id2[*k].clone(), inner.clone())];
                    let middle = &b.assoc[&((*k).clone(), hg.clone(), f.clone())];
                    let right_whisker = &b.hcomp2[&(
                        b.assoc[&((*k).clone(), (*h).clone(), (*g).clone())].clone(),
                        b.id2[f].clone(),
                    )];
                    let lhs = &b.vcomp[&(
                        left_whisker.clone(),
                        b.vcomp[&(middle.clone(), right_whisker.clone())].clone(),
                    )];
                    let rhs = &b.vcomp[&(
                        b.assoc[&((*k).clone(), (*h).clone(), gf.clone())].clone(),
                        b.assoc[&(kh.clone(), (*g).clone(), f.clone())].clone(),
                    )];
                    if lhs != rhs {
                        return Some(viol(
                            "pentagon",
                            format!("({}, {}, {}, {})", k, h, g, f),
                        ));
                    }
                }
            }
        }
    }

    // ---- triangle ---------------------------------------------------------
    for ((g, f), _) in &b.hcomp1 {
        let iy = &b.id1[&b.t0[f]];
        let lhs = &b.vcomp[&(
            b.hcomp2[&(b.id2[g].clone(), b.lunitor[f].clone())].clone(),
            b.assoc[&(g.clone(), iy.clone(), f.clone())].clone(),
        )];
        let rhs = &b.hcomp2[&(b.runitor[g].clone(), b.id2[f].clone())];
        if lhs != rhs {
            return Some(viol("triangle", format!("({}, {})", g, f)));
        }
    }

    None
}

/// Decide the bigroupoid property: every 2-cell is vertically invertible and
/// every 1-cell is an equivalence, both established by exhaustive search.
/// Errors when the bicategory axioms themselves fail.
pub fn is_bigroupoid(b: &FiniteBicategory) -> Result<VerificationReport> {
    let v = validate_bicategory(b);
    if !v.passed {
        return Err(EngineError::InvalidBicategory(format!(
            "{:?}",
            v.failure.unwrap()
        )));
    }
    let subject = "bigroupoid";
    for p in &b.two_cells {
        if b.inverse2(p).is_none() {
            return Ok(VerificationReport::fail(
                subject,
                "two-cell vertical invertibility",
                p.clone(),
            ));
        }
    }
    // invertible 2-cell from the composite g∘f (or f∘g) down to an identity
    let equiv_witness = |gf: &Id, unit: &Id| -> bool {
        b.two_cells.iter().any(|e| {
            &b.s1[e] == gf && &b.t1[e] == unit && b.inverse2(e).is_some()
        })
    };
    for f in &b.one_cells {
        let x = &b.s0[f];
        let y = &b.t0[f];
        let found = b.one_cells.iter().any(|g| {
            b.s0[g] == *y
                && b.t0[g] == *x
                && equiv_witness(&b.hcomp1[&(g.clone(), f.clone())], &b.id1[x])
                && equiv_witness(&b.hcomp1[&(f.clone(), g.clone())], &b.id1[y])
        });
        if !found {
            return Ok(VerificationReport::fail(
                subject,
                "one-cell equivalence",
                f.clone(),
            ));
        }
    }
    Ok(VerificationReport::pass(subject))
}

/// A homomorphism of bicategories that preserves every piece of structure on
/// the nose: sources, targets, identities, both compositions, associators,
/// and unitors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictHomomorphism {
    pub source: FiniteBicategory,
    pub target: FiniteBicategory,
    /// Object map.
    pub f0: BTreeMap<Id, Id>,
    /// 1-cell map.
    pub f1: BTreeMap<Id, Id>,
    /// 2-cell map.
    pub f2: BTreeMap<Id, Id>,
}

impl StrictHomomorphism {
    pub fn identity(b: &FiniteBicategory) -> Self {
        StrictHomomorphism {
            source: b.clone(),
            target: b.clone(),
            f0: b.objects.iter().map(|x| (x.clone(), x.clone())).collect(),
            f1: b.one_cells.iter().map(|f| (f.clone(), f.clone())).collect(),
            f2: b.two_cells.iter().map(|p| (p.clone(), p.clone())).collect(),
        }
    }

    /// `g` after `self`; errors when the middle bicategories differ.
    pub fn then(&self, g: &StrictHomomorphism) -> Result<StrictHomomorphism> {
        if self.target != g.source {
            return Err(EngineError::NotComposable(
                "homomorphism targets do not match".into(),
            ));
        }
        let chase = |m1: &BTreeMap<Id, Id>, m2: &BTreeMap<Id, Id>| -> Result<BTreeMap<Id, Id>> {
            m1.iter()
                .map(|(k, v)| {
                    m2.get(v)
                        .map(|w| (k.clone(), w.clone()))
                        .ok_or_else(|| missing("homomorphism component", v))
                })
                .collect()
        };
        Ok(StrictHomomorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            f0: chase(&self.f0, &g.f0)?,
            f1: chase(&self.f1, &g.f1)?,
            f2: chase(&self.f2, &g.f2)?,
        })
    }
}

/// Check that a homomorphism preserves all structure exactly.
pub fn validate_homomorphism(hm: &StrictHomomorphism) -> VerificationReport {
    let subject = "strict homomorphism";
    match homomorphism_violation(hm) {
        None => VerificationReport::pass(subject),
        Some(v) => VerificationReport::fail(subject, v.axiom, v.witness),
    }
}

fn homomorphism_violation(hm: &StrictHomomorphism) -> Option<Violation> {
    let a = &hm.source;
    let b = &hm.target;
    for (name, cells, map, pool) in [
        ("object", &a.objects, &hm.f0, &b.objects),
        ("1-cell", &a.one_cells, &hm.f1, &b.one_cells),
        ("2-cell", &a.two_cells, &hm.f2, &b.two_cells),
    ] {
        for c in cells {
            match map.get(c) {
                None => return Some(viol("component totality", format!("{} {}", name, c))),
                Some(v) if pool.binary_search(v).is_err() => {
                    return Some(viol(
                        "component typing",
                        format!("{} {} maps to undeclared {}", name, c, v),
                    ))
                }
                _ => {}
            }
        }
    }
    for f in &a.one_cells {
        if hm.f0.get(&a.s0[f]) != b.s0.get(&hm.f1[f]) || hm.f0.get(&a.t0[f]) != b.t0.get(&hm.f1[f])
        {
            return Some(viol("preserves 1-cell endpoints", f.clone()));
        }
    }
    for x in &a.objects {
        if hm.f1.get(&a.id1[x]) != b.id1.get(&hm.f0[x]) {
            return Some(viol("preserves identity 1-cells", x.clone()));
        }
    }
    for p in &a.two_cells {
        if hm.f1.get(&a.s1[p]) != b.s1.get(&hm.f2[p]) || hm.f1.get(&a.t1[p]) != b.t1.get(&hm.f2[p])
        {
            return Some(viol("preserves 2-cell boundaries", p.clone()));
        }
    }
    for f in &a.one_cells {
        if hm.f2.get(&a.id2[f]) != b.id2.get(&hm.f1[f]) {
            return Some(viol("preserves identity 2-cells", f.clone()));
        }
    }
    for ((p2, p1), v) in &a.vcomp {
        if b.vcomp.get(&(hm.f2[p2].clone(), hm.f2[p1].clone())) != hm.f2.get(v) {
            return Some(viol(
                "preserves vertical composition",
                format!("({}, {})", p2, p1),
            ));
        }
    }
    for ((g, f), v) in &a.hcomp1 {
        if b.hcomp1.get(&(hm.f1[g].clone(), hm.f1[f].clone())) != hm.f1.get(v) {
            return Some(viol(
                "preserves horizontal composition",
                format!("({}, {})", g, f),
            ));
        }
    }
    for ((p2, p1), v) in &a.hcomp2 {
        if b.hcomp2.get(&(hm.f2[p2].clone(), hm.f2[p1].clone())) != hm.f2.get(v) {
            return Some(viol(
                "preserves horizontal 2-cell composition",
                format!("({}, {})", p2, p1),
            ));
        }
    }
    for ((h, g, f), v) in &a.assoc {
        if b.assoc
            .get(&(hm.f1[h].clone(), hm.f1[g].clone(), hm.f1[f].clone()))
            != hm.f2.get(v)
        {
            return Some(viol(
                "preserves associators",
                format!("({}, {}, {})", h, g, f),
            ));
        }
    }
    for (f, v) in &a.lunitor {
        if b.lunitor.get(&hm.f1[f]) != hm.f2.get(v) {
            return Some(viol("preserves left unitors", f.clone()));
        }
    }
    for (f, v) in &a.runitor {
        if b.runitor.get(&hm.f1[f]) != hm.f2.get(v) {
            return Some(viol("preserves right unitors", f.clone()));
        }
    }
    None
}

/// View a finite category as a bicategory with only identity 2-cells. The
/// 2-cell ids coincide with the 1-cell ids they sit on; all coherence cells
/// are identities.
pub fn locally_discrete(c: &FiniteCategory) -> FiniteBicategory {
    let one_cells = c.morphisms.clone();
    let ident = |v: &Vec<Id>| -> BTreeMap<Id, Id> {
        v.iter().map(|f| (f.clone(), f.clone())).collect()
    };
    let mut hcomp1 = BTreeMap::new();
    for g in &one_cells {
        for f in &one_cells {
            if c.src(g) == c.tgt(f) {
                hcomp1.insert((g.clone(), f.clone()), c.comp[&(g.clone(), f.clone())].clone());
            }
        }
    }
    let hcomp2 = hcomp1.clone();
    let vcomp: BTreeMap<(Id, Id), Id> = one_cells
        .iter()
        .map(|f| ((f.clone(), f.clone()), f.clone()))
        .collect();
    let mut assoc = BTreeMap::new();
    for ((g, f), gf) in &hcomp1 {
        for h in &one_cells {
            if c.src(h) == c.tgt(g) {
                assoc.insert(
                    (h.clone(), g.clone(), f.clone()),
                    hcomp1[&(h.clone(), gf.clone())].clone(),
                );
            }
        }
    }
    FiniteBicategory {
        objects: c.objects.clone(),
        s0: c.src.clone(),
        t0: c.tgt.clone(),
        id1: c.id.clone(),
        s1: ident(&one_cells),
        t1: ident(&one_cells),
        id2: ident(&one_cells),
        vcomp,
        hcomp1,
        hcomp2,
        assoc,
        lunitor: ident(&one_cells),
        runitor: ident(&one_cells),
        two_cells: one_cells.clone(),
        one_cells,
    }
}

/// The locally discrete bicategory of the linear order `0 < 1 < … < n`:
/// objects `0..=n`, one 1-cell `i->j` per pair `i ≤ j`, identity 2-cells.
pub fn build_ordinal(n: usize) -> FiniteBicategory {
    locally_discrete(&crate::category::ordinal_category(n))
}

/// Build the one-object 2-group of a crossed module `t : H → G` with a left
/// G-action on H. Inputs are one-object groupoids (`h`, `g`), the boundary
/// table `t`, and the action table `action[(x, y)] = x · y` for `x` in G and
/// `y` in H. The crossed-module axioms are checked before construction.
///
/// 2-cells are pairs `x|y` for `x` in G, `y` in H, with `s1 = x` and
/// `t1 = t(y)·x`; all coherence cells are identities.
pub fn build_two_group(
    h: &FiniteCategory,
    g: &FiniteCategory,
    t: &BTreeMap<Id, Id>,
    action: &BTreeMap<(Id, Id), Id>,
) -> Result<FiniteBicategory> {
    for (name, cat) in [("H", h), ("G", g)] {
        if cat.objects.len() != 1 {
            return Err(EngineError::NotCrossedModule(format!(
                "{} must have exactly one object",
                name
            )));
        }
        if !crate::category::validate_category(cat).passed || !cat.is_groupoid() {
            return Err(EngineError::NotCrossedModule(format!(
                "{} is not a finite group",
                name
            )));
        }
    }
    let he: Id = h.identity(&h.objects[0]).clone();
    let ge: Id = g.identity(&g.objects[0]).clone();
    let hmul = |a: &str, b: &str| -> Id { h.comp[&(a.to_string(), b.to_string())].clone() };
    let gmul = |a: &str, b: &str| -> Id { g.comp[&(a.to_string(), b.to_string())].clone() };
    let hinv = |a: &str| -> Id { h.inverse(a).unwrap().clone() };
    let ginv = |a: &str| -> Id { g.inverse(a).unwrap().clone() };
    let bd = |y: &str| -> Result<&Id> {
        t.get(y)
            .ok_or_else(|| EngineError::NotCrossedModule(format!("t undefined on {}", y)))
    };
    let act = |x: &str, y: &str| -> Result<&Id> {
        action
            .get(&(x.to_string(), y.to_string()))
            .ok_or_else(|| EngineError::NotCrossedModule(format!("action undefined on ({}, {})", x, y)))
    };
    // t is a group homomorphism
    for y2 in &h.morphisms {
        for y1 in &h.morphisms {
            if *bd(&hmul(y2, y1))? != gmul(bd(y2)?, bd(y1)?) {
                return Err(EngineError::NotCrossedModule(format!(
                    "t is not a homomorphism at ({}, {})",
                    y2, y1
                )));
            }
        }
    }
    // the action is by group automorphisms
    for y in &h.morphisms {
        if act(&ge, y)? != y {
            return Err(EngineError::NotCrossedModule(format!(
                "unit acts nontrivially on {}",
                y
            )));
        }
        for x2 in &g.morphisms {
            for x1 in &g.morphisms {
                if act(&gmul(x2, x1), y)? != act(x2, act(x1, y)?)? {
                    return Err(EngineError::NotCrossedModule(format!(
                        "action is not multiplicative at ({}, {}, {})",
                        x2, x1, y
                    )));
                }
            }
        }
    }
    for x in &g.morphisms {
        for y2 in &h.morphisms {
            for y1 in &h.morphisms {
                if *act(x, &hmul(y2, y1))? != hmul(act(x, y2)?, act(x, y1)?) {
                    return Err(EngineError::NotCrossedModule(format!(
                        "action is not by homomorphisms at ({}, {}, {})",
                        x, y2, y1
                    )));
                }
            }
        }
    }
    // equivariance of t and the Peiffer identity
    for x in &g.morphisms {
        for y in &h.morphisms {
            if *bd(act(x, y)?)? != gmul(&gmul(x, bd(y)?), &ginv(x)) {
                return Err(EngineError::NotCrossedModule(format!(
                    "t is not equivariant at ({}, {})",
                    x, y
                )));
            }
        }
    }
    for y in &h.morphisms {
        for y1 in &h.morphisms {
            if *act(bd(y)?, y1)? != hmul(&hmul(y, y1), &hinv(y)) {
                return Err(EngineError::NotCrossedModule(format!(
                    "Peiffer identity fails at ({}, {})",
                    y, y1
                )));
            }
        }
    }

    let obj = g.objects[0].clone();
    let one_cells = g.morphisms.clone();
    let cell = |x: &str, y: &str| -> Id { format!("{}|{}", x, y) };
    let mut two_cells = Vec::new();
    let mut s1 = BTreeMap::new();
    let mut t1 = BTreeMap::new();
    for x in &one_cells {
        for y in &h.morphisms {
            let p = cell(x, y);
            s1.insert(p.clone(), x.clone());
            t1.insert(p.clone(), gmul(bd(y)?, x));
            two_cells.push(p);
        }
    }
    two_cells.sort();
    let id2: BTreeMap<Id, Id> = one_cells.iter().map(|x| (x.clone(), cell(x, &he))).collect();
    let mut vcomp = BTreeMap::new();
    for x1 in &one_cells {
        for y1 in &h.morphisms {
            let mid = gmul(bd(y1)?, x1);
            for y2 in &h.morphisms {
                vcomp.insert(
                    (cell(&mid, y2), cell(x1, y1)),
                    cell(x1, &hmul(y2, y1)),
                );
            }
        }
    }
    let mut hcomp1 = BTreeMap::new();
    for x2 in &one_cells {
        for x1 in &one_cells {
            hcomp1.insert((x2.clone(), x1.clone()), gmul(x2, x1));
        }
    }
    let mut hcomp2 = BTreeMap::new();
    for x2 in &one_cells {
        for y2 in &h.morphisms {
            for x1 in &one_cells {
                for y1 in &h.morphisms {
                    hcomp2.insert(
                        (cell(x2, y2), cell(x1, y1)),
                        cell(&gmul(x2, x1), &hmul(y2, act(x2, y1)?)),
                    );
                }
            }
        }
    }
    let mut assoc = BTreeMap::new();
    for x3 in &one_cells {
        for x2 in &one_cells {
            for x1 in &one_cells {
                assoc.insert(
                    (x3.clone(), x2.clone(), x1.clone()),
                    id2[&gmul(&gmul(x3, x2), x1)].clone(),
                );
            }
        }
    }
    let unitors: BTreeMap<Id, Id> = one_cells.iter().map(|x| (x.clone(), id2[x].clone())).collect();
    Ok(FiniteBicategory {
        objects: vec![obj.clone()],
        s0: one_cells.iter().map(|f| (f.clone(), obj.clone())).collect(),
        t0: one_cells.iter().map(|f| (f.clone(), obj.clone())).collect(),
        id1: BTreeMap::from([(obj.clone(), ge.clone())]),
        s1,
        t1,
        id2,
        vcomp,
        hcomp1,
        hcomp2,
        assoc,
        lunitor: unitors.clone(),
        runitor: unitors,
        one_cells,
        two_cells,
    })
}

// ---------------------------------------------------------------------------
// Spans of canonical finite sets
// ---------------------------------------------------------------------------

/// A span between canonical finite sets, with injective legs listed as value
/// vectors indexed by the apex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Span {
    x: usize,
    y: usize,
    l: Vec<usize>,
    r: Vec<usize>,
}

impl Span {
    fn id(&self) -> Id {
        let join = |v: &[usize]| {
            v.iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(".")
        };
        format!("{}|{}|{}|{}", self.x, self.y, join(&self.l), join(&self.r))
    }

    fn unit(x: usize) -> Span {
        Span {
            x,
            y: x,
            l: (0..x).collect(),
            r: (0..x).collect(),
        }
    }

    /// The chosen composite `g ∘ f` (`f` first): matched pairs of apex
    /// elements enumerated in descending lexicographic order. The descending
    /// enumeration keeps every composite a genuine pullback while making the
    /// choice non-associative, so associators are generically nonidentity.
    fn compose(g: &Span, f: &Span) -> Span {
        debug_assert_eq!(g.x, f.y);
        let mut pairs = Vec::new();
        for (s, rv) in f.r.iter().enumerate() {
            for (t, lv) in g.l.iter().enumerate() {
                if rv == lv {
                    pairs.push((s, t));
                }
            }
        }
        pairs.sort();
        pairs.reverse();
        Span {
            x: f.x,
            y: g.y,
            l: pairs.iter().map(|(s, _)| f.l[*s]).collect(),
            r: pairs.iter().map(|(_, t)| g.r[*t]).collect(),
        }
    }

    /// The unique leg-compatible injection into `other`, if any.
    fn cell_to(&self, other: &Span) -> Option<Vec<usize>> {
        if self.x != other.x || self.y != other.y {
            return None;
        }
        let mut map = Vec::with_capacity(self.l.len());
        for i in 0..self.l.len() {
            let j = other.l.iter().position(|v| *v == self.l[i])?;
            if other.r[j] != self.r[i] {
                return None;
            }
            map.push(j);
        }
        Some(map)
    }
}

fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in injections(k - 1, n) {
        for v in 0..n {
            if !rest.contains(&v) {
                let mut next = rest.clone();
                next.push(v);
                out.push(next);
            }
        }
    }
    out.sort();
    out
}

/// The bicategory of spans of canonical finite sets: objects are the sets
/// `{0, …, k-1}` for `k < universe_size`, 1-cells are spans with injective
/// legs, 2-cells are leg-compatible injections between apexes, and
/// horizontal composition uses the chosen pullback of [`Span::compose`].
/// All hom-pairs carry at most one 2-cell, so the weak coherence axioms hold
/// while the associator is generically a nonidentity 2-cell.
pub fn span_bicategory(universe_size: usize) -> FiniteBicategory {
    let objects: Vec<Id> = (0..universe_size).map(|k| k.to_string()).collect();
    let mut spans = Vec::new();
    for x in 0..universe_size {
        for y in 0..universe_size {
            for k in 0..=x.min(y) {
                for l in injections(k, x) {
                    for r in injections(k, y) {
                        spans.push(Span {
                            x,
                            y,
                            l: l.clone(),
                            r,
                        });
                    }
                }
            }
        }
    }
    let mut one_cells: Vec<Id> = spans.iter().map(Span::id).collect();
    one_cells.sort();
    let by_id: BTreeMap<Id, &Span> = spans.iter().map(|s| (s.id(), s)).collect();

    let mut two_cells = Vec::new();
    let mut s1 = BTreeMap::new();
    let mut t1 = BTreeMap::new();
    let mut cell_of: BTreeMap<(Id, Id), Id> = BTreeMap::new();
    for a in &spans {
        for b in &spans {
            if a.cell_to(b).is_some() {
                let p = format!("{}>{}", a.id(), b.id());
                s1.insert(p.clone(), a.id());
                t1.insert(p.clone(), b.id());
                cell_of.insert((a.id(), b.id()), p.clone());
                two_cells.push(p);
            }
        }
    }
    two_cells.sort();
    let id2: BTreeMap<Id, Id> = one_cells
        .iter()
        .map(|f| (f.clone(), cell_of[&(f.clone(), f.clone())].clone()))
        .collect();

    let mut vcomp = BTreeMap::new();
    for p2 in &two_cells {
        for p1 in &two_cells {
            if s1[p2] == t1[p1] {
                vcomp.insert(
                    (p2.clone(), p1.clone()),
                    cell_of[&(s1[p1].clone(), t1[p2].clone())].clone(),
                );
            }
        }
    }

    let mut hcomp1 = BTreeMap::new();
    for g in &spans {
        for f in &spans {
            if g.x == f.y {
                hcomp1.insert((g.id(), f.id()), Span::compose(g, f).id());
            }
        }
    }

    let mut hcomp2 = BTreeMap::new();
    for p2 in &two_cells {
        for p1 in &two_cells {
            let (g, f) = (&s1[p2], &s1[p1]);
            if by_id[g].x != by_id[f].y {
                continue;
            }
            let src = &hcomp1[&(g.clone(), f.clone())];
            let tgt = &hcomp1[&(t1[p2].clone(), t1[p1].clone())];
            hcomp2.insert(
                (p2.clone(), p1.clone()),
                cell_of[&(src.clone(), tgt.clone())].clone(),
            );
        }
    }

    let mut assoc = BTreeMap::new();
    for h in &spans {
        for g in &spans {
            if h.x != g.y {
                continue;
            }
            let hg = Span::compose(h, g);
            for f in &spans {
                if g.x != f.y {
                    continue;
                }
                let left = Span::compose(&hg, f).id();
                let right = Span::compose(h, &Span::compose(g, f)).id();
                assoc.insert(
                    (h.id(), g.id(), f.id()),
                    cell_of[&(left, right)].clone(),
                );
            }
        }
    }

    let mut lunitor = BTreeMap::new();
    let mut runitor = BTreeMap::new();
    for f in &spans {
        let lu = Span::compose(&Span::unit(f.y), f).id();
        let ru = Span::compose(f, &Span::unit(f.x)).id();
        lunitor.insert(f.id(), cell_of[&(lu, f.id())].clone());
        runitor.insert(f.id(), cell_of[&(ru, f.id())].clone());
    }

    FiniteBicategory {
        objects,
        s0: spans.iter().map(|s| (s.id(), s.x.to_string())).collect(),
        t0: spans.iter().map(|s| (s.id(), s.y.to_string())).collect(),
        id1: (0..universe_size)
            .map(|k| (k.to_string(), Span::unit(k).id()))
            .collect(),
        s1,
        t1,
        id2,
        vcomp,
        hcomp1,
        hcomp2,
        assoc,
        lunitor,
        runitor,
        one_cells,
        two_cells,
    }
}
