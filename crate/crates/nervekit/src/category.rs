//! Finite categories with dense composition tables, their classical nerves,
//! and small stock generators (cyclic groups, ordinals) used throughout the
//! test corpus.

use crate::report::{EngineError, Result, VerificationReport};
use crate::simplicial::{tuple_id, Id, Policy, SimplexTable};
use std::collections::BTreeMap;

/// A finite category: object and morphism tables with a dense composition
/// table on composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    /// Sorted object ids.
    pub objects: Vec<Id>,
    /// Sorted morphism ids.
    pub morphisms: Vec<Id>,
    pub src: BTreeMap<Id, Id>,
    pub tgt: BTreeMap<Id, Id>,
    /// Identity morphism of each object.
    pub id: BTreeMap<Id, Id>,
    /// `comp[(g, f)] = g ∘ f` for every pair with `src(g) = tgt(f)`.
    pub comp: BTreeMap<(Id, Id), Id>,
}

impl FiniteCategory {
    pub fn src(&self, f: &str) -> &Id {
        &self.src[f]
    }

    pub fn tgt(&self, f: &str) -> &Id {
        &self.tgt[f]
    }

    pub fn identity(&self, x: &str) -> &Id {
        &self.id[x]
    }

    /// `g ∘ f`; errors when the pair is not composable.
    pub fn compose(&self, g: &str, f: &str) -> Result<&Id> {
        self.comp
            .get(&(g.to_string(), f.to_string()))
            .ok_or_else(|| EngineError::NotComposable(format!("{} after {}", g, f)))
    }

    /// All (g, f) pairs with `src(g) = tgt(f)`.
    pub fn composable_pairs(&self) -> Vec<(&Id, &Id)> {
        let mut out = Vec::new();
        for g in &self.morphisms {
            for f in &self.morphisms {
                if self.src(g) == self.tgt(f) {
                    out.push((g, f));
                }
            }
        }
        out
    }

    /// Two-sided inverse of a morphism, if one exists.
    pub fn inverse(&self, f: &str) -> Option<&Id> {
        self.morphisms.iter().find(|g| {
            self.src(g) == self.tgt(f)
                && self.tgt(g) == self.src(f)
                && self.comp.get(&((*g).clone(), f.to_string())) == Some(self.identity(self.src(f)))
                && self.comp.get(&(f.to_string(), (*g).clone())) == Some(self.identity(self.tgt(f)))
        })
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphisms.iter().all(|f| self.inverse(f).is_some())
    }

    /// The classical nerve: level m holds composable chains of m morphisms,
    /// with `d_0` dropping the first arrow, `d_m` the last, inner faces
    /// composing adjacent arrows, and degeneracies inserting identities.
    /// Nerves of categories are determined by dimensions up to 2, so levels
    /// above the cap follow the coskeletal-in-degree-2 policy.
    pub fn nerve(&self, cap: usize) -> Result<SimplexTable> {
        if cap < 2 {
            return Err(EngineError::DimensionOutOfRange(
                "nerve cap must be at least 2".into(),
            ));
        }
        // chains[m] lists composable chains (f_1, …, f_m) as morphism-id vectors
        let mut chains: Vec<Vec<Vec<Id>>> = vec![vec![Vec::new()]];
        for m in 1..=cap {
            let mut next = Vec::new();
            for chain in &chains[m - 1] {
                for f in &self.morphisms {
                    let ok = match chain.last() {
                        None => true,
                        Some(prev) => self.src(f) == self.tgt(prev),
                    };
                    if ok {
                        let mut c = chain.clone();
                        c.push(f.clone());
                        next.push(c);
                    }
                }
            }
            chains.push(next);
        }
        // vertices are the objects themselves; higher levels use tuple ids
        let mut levels: Vec<Vec<Id>> = vec![self.objects.clone()];
        for m in 1..=cap {
            levels.push(chains[m].iter().map(|c| tuple_id(c)).collect());
        }
        let mut face: Vec<Vec<BTreeMap<Id, Id>>> = vec![Vec::new()];
        for m in 1..=cap {
            let mut maps = vec![BTreeMap::new(); m + 1];
            for chain in &chains[m] {
                let me = tuple_id(chain);
                for (i, map) in maps.iter_mut().enumerate() {
                    let img: Id = if m == 1 {
                        // d_0 = target, d_1 = source
                        if i == 0 {
                            self.tgt(&chain[0]).clone()
                        } else {
                            self.src(&chain[0]).clone()
                        }
                    } else if i == 0 {
                        tuple_id(&chain[1..])
                    } else if i == m {
                        tuple_id(&chain[..m - 1])
                    } else {
                        let mut c: Vec<Id> = chain[..i - 1].to_vec();
                        c.push(self.compose(&chain[i], &chain[i - 1])?.clone());
                        c.extend_from_slice(&chain[i + 1..]);
                        tuple_id(&c)
                    };
                    map.insert(me.clone(), img);
                }
            }
            face.push(maps);
        }
        let mut degeneracy: Vec<Vec<BTreeMap<Id, Id>>> = Vec::new();
        for m in 0..cap {
            let mut maps = vec![BTreeMap::new(); m + 1];
            if m == 0 {
                for x in &self.objects {
                    maps[0].insert(x.clone(), tuple_id(std::slice::from_ref(self.identity(x))));
                }
            } else {
                for chain in &chains[m] {
                    let me = tuple_id(chain);
                    for (i, map) in maps.iter_mut().enumerate() {
                        // s_i repeats vertex i: insert an identity before f_{i+1}
                        let v = if i == 0 {
                            self.src(&chain[0])
                        } else {
                            self.tgt(&chain[i - 1])
                        };
                        let mut c: Vec<Id> = chain[..i].to_vec();
                        c.push(self.identity(v).clone());
                        c.extend_from_slice(&chain[i..]);
                        map.insert(me.clone(), tuple_id(&c));
                    }
                }
            }
            degeneracy.push(maps);
        }
        degeneracy.push(Vec::new());
        SimplexTable::new(cap, Policy::Coskeletal(2), levels, face, degeneracy)
    }
}

/// Check the category axioms: totality, typing, units, associativity.
pub fn validate_category(c: &FiniteCategory) -> VerificationReport {
    let subject = "category axioms";
    for f in &c.morphisms {
        for (name, m) in [("src", &c.src), ("tgt", &c.tgt)] {
            match m.get(f) {
                None => {
                    return VerificationReport::fail(
                        subject,
                        format!("{} totality", name),
                        f.clone(),
                    )
                }
                Some(x) => {
                    if c.objects.binary_search(x).is_err() {
                        return VerificationReport::fail(
                            subject,
                            format!("{} lands in objects", name),
                            format!("{} of {} is undeclared {}", name, f, x),
                        );
                    }
                }
            }
        }
    }
    for x in &c.objects {
        match c.id.get(x) {
            None => {
                return VerificationReport::fail(subject, "identity totality", x.clone())
            }
            Some(i) => {
                if c.morphisms.binary_search(i).is_err()
                    || c.src(i) != x
                    || c.tgt(i) != x
                {
                    return VerificationReport::fail(
                        subject,
                        "identity typing",
                        format!("id of {} is {}", x, i),
                    );
                }
            }
        }
    }
    for g in &c.morphisms {
        for f in &c.morphisms {
            let key = (g.clone(), f.clone());
            let composable = c.src(g) == c.tgt(f);
            match (composable, c.comp.get(&key)) {
                (true, None) => {
                    return VerificationReport::fail(
                        subject,
                        "composition totality",
                        format!("{} after {}", g, f),
                    )
                }
                (false, Some(_)) => {
                    return VerificationReport::fail(
                        subject,
                        "composition only on composable pairs",
                        format!("{} after {}", g, f),
                    )
                }
                (true, Some(h)) => {
                    if c.morphisms.binary_search(h).is_err()
                        || c.src(h) != c.src(f)
                        || c.tgt(h) != c.tgt(g)
                    {
                        return VerificationReport::fail(
                            subject,
                            "composite typing",
                            format!("{} after {} gives {}", g, f, h),
                        );
                    }
                }
                (false, None) => {}
            }
        }
    }
    for f in &c.morphisms {
        let lid = c.comp.get(&(c.identity(c.tgt(f)).clone(), f.clone()));
        let rid = c.comp.get(&(f.clone(), c.identity(c.src(f)).clone()));
        if lid != Some(f) || rid != Some(f) {
            return VerificationReport::fail(subject, "unit laws", f.clone());
        }
    }
    for h in &c.morphisms {
        for g in &c.morphisms {
            if c.src(h) != c.tgt(g) {
                continue;
            }
            for f in &c.morphisms {
                if c.src(g) != c.tgt(f) {
                    continue;
                }
                let hg = c.comp[&(h.clone(), g.clone())].clone();
                let gf = c.comp[&(g.clone(), f.clone())].clone();
                if c.comp[&(hg, f.clone())] != c.comp[&(h.clone(), gf)] {
                    return VerificationReport::fail(
                        subject,
                        "associativity",
                        format!("({}, {}, {})", h, g, f),
                    );
                }
            }
        }
    }
    VerificationReport::pass(subject)
}

/// Build a one-object category from an explicit finite monoid: element ids
/// plus a multiplication table (`mul[(a, b)] = a·b` with `e` the unit).
pub fn one_object_category(
    elements: &[Id],
    unit: &str,
    mul: impl Fn(&str, &str) -> Id,
) -> FiniteCategory {
    let mut morphisms: Vec<Id> = elements.to_vec();
    morphisms.sort();
    let obj: Id = "*".into();
    let src = morphisms.iter().map(|f| (f.clone(), obj.clone())).collect();
    let tgt = morphisms.iter().map(|f| (f.clone(), obj.clone())).collect();
    let id = BTreeMap::from([(obj.clone(), unit.to_string())]);
    let mut comp = BTreeMap::new();
    for g in &morphisms {
        for f in &morphisms {
            comp.insert((g.clone(), f.clone()), mul(g, f));
        }
    }
    FiniteCategory {
        objects: vec![obj],
        morphisms,
        src,
        tgt,
        id,
        comp,
    }
}

/// The cyclic group Z/n as a one-object groupoid with morphisms
/// `g0, …, g(n-1)` (`g0` the unit).
pub fn cyclic_group_category(n: usize) -> FiniteCategory {
    assert!(n > 0, "cyclic group order must be positive");
    let elements: Vec<Id> = (0..n).map(|i| format!("g{}", i)).collect();
    let value = |s: &str| -> usize { s[1..].parse().unwrap() };
    one_object_category(&elements, "g0", |a, b| {
        format!("g{}", (value(a) + value(b)) % n)
    })
}

/// The poset category `0 < 1 < … < n` with a unique morphism `i->j`
/// whenever `i <= j`.
pub fn ordinal_category(n: usize) -> FiniteCategory {
    let objects: Vec<Id> = (0..=n).map(|i| i.to_string()).collect();
    let mut morphisms = Vec::new();
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for i in 0..=n {
        for j in i..=n {
            let f = format!("{}->{}", i, j);
            src.insert(f.clone(), i.to_string());
            tgt.insert(f.clone(), j.to_string());
            morphisms.push(f);
        }
    }
    morphisms.sort();
    let id = (0..=n)
        .map(|i| (i.to_string(), format!("{}->{}", i, i)))
        .collect();
    let mut comp = BTreeMap::new();
    for i in 0..=n {
        for j in i..=n {
            for k in j..=n {
                comp.insert(
                    (format!("{}->{}", j, k), format!("{}->{}", i, j)),
                    format!("{}->{}", i, k),
                );
            }
        }
    }
    let mut objects_sorted = objects;
    objects_sorted.sort();
    FiniteCategory {
        objects: objects_sorted,
        morphisms,
        src,
        tgt,
        id,
        comp,
    }
}
