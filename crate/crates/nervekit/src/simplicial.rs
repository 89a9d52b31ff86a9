//! Finite truncated simplicial sets with explicit face/degeneracy tables:
//! validation of the simplicial identities, simplicial kernels, horns,
//! Kan/hypergroupoid classification, asphericity, and simplicial maps.

use crate::monotone::{factorize_monotone, MonotoneMap};
use crate::report::{EngineError, Result, VerificationReport};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Opaque simplex identifier; equality is id equality.
pub type Id = String;

/// Completion policy for dimensions above the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    /// Nothing exists above the cap.
    Truncated,
    /// Levels above `m` (including those between `m` and the cap) are
    /// iterated simplicial kernels; levels above the cap are materialized
    /// on demand.
    Coskeletal(usize),
}

/// A finite simplicial set truncated at `dim_cap`, with total face and
/// degeneracy tables and a completion policy. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexTable {
    dim_cap: usize,
    policy: Policy,
    /// `levels[n]` is the sorted list of n-simplex ids, `0 <= n <= dim_cap`.
    levels: Vec<Vec<Id>>,
    /// `face[n][i]` maps `levels[n]` to `levels[n-1]`, for `1 <= n <= dim_cap`.
    /// `face[0]` is empty.
    face: Vec<Vec<BTreeMap<Id, Id>>>,
    /// `degeneracy[n][i]` maps `levels[n]` to `levels[n+1]`, for `n < dim_cap`.
    /// `degeneracy[dim_cap]` is empty.
    degeneracy: Vec<Vec<BTreeMap<Id, Id>>>,
}

/// Canonical id of a tuple of ids: its JSON-array rendering. Used for
/// kernel-level simplices so the universal property is checkable
/// syntactically.
pub fn tuple_id(parts: &[Id]) -> Id {
    serde_json::to_string(parts).expect("string arrays always serialize")
}

fn fmt_tuple(parts: &[Id]) -> String {
    tuple_id(parts)
}

impl SimplexTable {
    /// Build a table, checking shape and totality (every declared map is
    /// total on its level and lands in the adjacent declared level).
    /// The simplicial identities themselves are checked by
    /// [`validate_simplicial`].
    pub fn new(
        dim_cap: usize,
        policy: Policy,
        levels: Vec<Vec<Id>>,
        face: Vec<Vec<BTreeMap<Id, Id>>>,
        degeneracy: Vec<Vec<BTreeMap<Id, Id>>>,
    ) -> Result<Self> {
        if levels.len() != dim_cap + 1 {
            return Err(EngineError::MalformedTable(format!(
                "expected {} levels, got {}",
                dim_cap + 1,
                levels.len()
            )));
        }
        if let Policy::Coskeletal(m) = policy {
            if m > dim_cap {
                return Err(EngineError::MalformedTable(format!(
                    "coskeletal degree {} exceeds dim_cap {}",
                    m, dim_cap
                )));
            }
        }
        let mut levels = levels;
        for lv in levels.iter_mut() {
            lv.sort();
            let before = lv.len();
            lv.dedup();
            if lv.len() != before {
                return Err(EngineError::MalformedTable(
                    "duplicate simplex id within a level".into(),
                ));
            }
        }
        if face.len() != dim_cap + 1 || degeneracy.len() != dim_cap + 1 {
            return Err(EngineError::MalformedTable(
                "face/degeneracy tables must have one entry per level".into(),
            ));
        }
        let table = SimplexTable {
            dim_cap,
            policy,
            levels,
            face,
            degeneracy,
        };
        table.check_shape()?;
        Ok(table)
    }

    fn check_shape(&self) -> Result<()> {
        if !self.face[0].is_empty() {
            return Err(EngineError::MalformedTable(
                "level 0 must not carry face maps".into(),
            ));
        }
        for n in 1..=self.dim_cap {
            if self.face[n].len() != n + 1 {
                return Err(EngineError::MalformedTable(format!(
                    "level {} needs {} face maps, got {}",
                    n,
                    n + 1,
                    self.face[n].len()
                )));
            }
            for (i, m) in self.face[n].iter().enumerate() {
                self.check_total(m, n, n - 1, &format!("face[{}][{}]", n, i))?;
            }
        }
        if !self.degeneracy[self.dim_cap].is_empty() {
            return Err(EngineError::MalformedTable(format!(
                "level {} (the cap) must not carry degeneracy maps",
                self.dim_cap
            )));
        }
        for n in 0..self.dim_cap {
            if self.degeneracy[n].len() != n + 1 {
                return Err(EngineError::MalformedTable(format!(
                    "level {} needs {} degeneracy maps, got {}",
                    n,
                    n + 1,
                    self.degeneracy[n].len()
                )));
            }
            for (i, m) in self.degeneracy[n].iter().enumerate() {
                self.check_total(m, n, n + 1, &format!("degeneracy[{}][{}]", n, i))?;
            }
        }
        Ok(())
    }

    fn check_total(
        &self,
        map: &BTreeMap<Id, Id>,
        from: usize,
        to: usize,
        name: &str,
    ) -> Result<()> {
        for x in &self.levels[from] {
            match map.get(x) {
                None => {
                    return Err(EngineError::MalformedTable(format!(
                        "{} is undefined on {:?}",
                        name, x
                    )))
                }
                Some(y) => {
                    if self.levels[to].binary_search(y).is_err() {
                        return Err(EngineError::MalformedTable(format!(
                            "{} sends {:?} to undeclared id {:?}",
                            name, x, y
                        )));
                    }
                }
            }
        }
        for x in map.keys() {
            if self.levels[from].binary_search(x).is_err() {
                return Err(EngineError::MalformedTable(format!(
                    "{} is defined on undeclared id {:?}",
                    name, x
                )));
            }
        }
        Ok(())
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    /// Sorted ids at level `n` (`n <= dim_cap`).
    pub fn level(&self, n: usize) -> &[Id] {
        &self.levels[n]
    }

    /// Level contents, treating levels above the cap as empty.
    pub fn level_or_empty(&self, n: usize) -> &[Id] {
        if n <= self.dim_cap {
            &self.levels[n]
        } else {
            &[]
        }
    }

    pub fn has_simplex(&self, n: usize, id: &str) -> bool {
        n <= self.dim_cap && self.levels[n].binary_search_by(|x| x.as_str().cmp(id)).is_ok()
    }

    /// The i-th face of an n-simplex. Panics on out-of-range input; tables
    /// are total by construction.
    pub fn d(&self, n: usize, i: usize, x: &str) -> &Id {
        &self.face[n][i][x]
    }

    /// The i-th degeneracy of an n-simplex.
    pub fn s(&self, n: usize, i: usize, x: &str) -> &Id {
        &self.degeneracy[n][i][x]
    }

    pub fn face_map(&self, n: usize, i: usize) -> &BTreeMap<Id, Id> {
        &self.face[n][i]
    }

    pub fn degeneracy_map(&self, n: usize, i: usize) -> &BTreeMap<Id, Id> {
        &self.degeneracy[n][i]
    }

    /// Boundary tuple `(d_0(x), …, d_n(x))` of an n-simplex, `n >= 1`.
    pub fn boundary(&self, n: usize, x: &str) -> Vec<Id> {
        (0..=n).map(|i| self.d(n, i, x).clone()).collect()
    }

    /// With a fresh policy; all tables shared verbatim.
    pub fn with_policy(mut self, policy: Policy) -> Result<Self> {
        if let Policy::Coskeletal(m) = policy {
            if m > self.dim_cap {
                return Err(EngineError::MalformedTable(format!(
                    "coskeletal degree {} exceeds dim_cap {}",
                    m, self.dim_cap
                )));
            }
        }
        self.policy = policy;
        Ok(self)
    }

    /// Enumerate tuples `(x_0, …, x_n)` of (n-1)-simplices satisfying
    /// `d_i(x_j) = d_{j-1}(x_i)` for `i < j` (slot `skip`, if given, omitted
    /// from both the tuple and the relation set). Output is sorted
    /// lexicographically.
    pub(crate) fn compatible_tuples(&self, n: usize, skip: Option<usize>) -> Result<Vec<Vec<Id>>> {
        if n == 0 || n > self.dim_cap + 1 {
            return Err(EngineError::DimensionOutOfRange(format!(
                "kernel/horn dimension {} for a table with cap {}",
                n, self.dim_cap
            )));
        }
        if let Some(k) = skip {
            if k > n {
                return Err(EngineError::HornIndexOutOfRange { n, k });
            }
        }
        let slots: Vec<usize> = (0..=n).filter(|&j| Some(j) != skip).collect();
        let elems = &self.levels[n - 1];
        if n == 1 {
            // no relations bind the slots
            let mut out = Vec::new();
            if slots.len() == 1 {
                for x in elems {
                    out.push(vec![x.clone()]);
                }
            } else {
                for x in elems {
                    for y in elems {
                        out.push(vec![x.clone(), y.clone()]);
                    }
                }
            }
            return Ok(out);
        }
        // bucket level n-1 elements by each face value for pruning
        let mut bucket: BTreeMap<(usize, &str), Vec<&Id>> = BTreeMap::new();
        for x in elems {
            for i in 0..n {
                bucket
                    .entry((i, self.d(n - 1, i, x).as_str()))
                    .or_default()
                    .push(x);
            }
        }
        let mut out = Vec::new();
        let mut chosen: Vec<&Id> = Vec::with_capacity(slots.len());
        self.extend_tuples(n, &slots, elems, &bucket, &mut chosen, &mut out);
        Ok(out)
    }

    fn extend_tuples<'a>(
        &'a self,
        n: usize,
        slots: &[usize],
        elems: &'a [Id],
        bucket: &BTreeMap<(usize, &str), Vec<&'a Id>>,
        chosen: &mut Vec<&'a Id>,
        out: &mut Vec<Vec<Id>>,
    ) {
        let pos = chosen.len();
        if pos == slots.len() {
            out.push(chosen.iter().map(|x| (*x).clone()).collect());
            return;
        }
        let j = slots[pos];
        // constraints from already chosen slots i < j: d_i(x_j) = d_{j-1}(x_i)
        let mut required: Vec<(usize, &Id)> = Vec::new();
        for (p, &i) in slots[..pos].iter().enumerate() {
            debug_assert!(i < j);
            required.push((i, self.d(n - 1, j - 1, chosen[p])));
        }
        if required.is_empty() {
            for x in elems {
                chosen.push(x);
                self.extend_tuples(n, slots, elems, bucket, chosen, out);
                chosen.pop();
            }
            return;
        }
        let (i0, v0) = required[0];
        let candidates = match bucket.get(&(i0, v0.as_str())) {
            Some(list) => list.as_slice(),
            None => &[],
        };
        for &x in candidates {
            if required
                .iter()
                .skip(1)
                .all(|(i, v)| self.d(n - 1, *i, x) == *v)
            {
                chosen.push(x);
                self.extend_tuples(n, slots, elems, bucket, chosen, out);
                chosen.pop();
            }
        }
    }

    /// Extend the table with iterated simplicial kernels up to `new_cap`.
    /// Fresh levels get canonical tuple-string ids, projection faces, and
    /// repeat-tuple degeneracies. Policy and lower levels are preserved.
    pub fn extend_by_kernels(&self, new_cap: usize) -> Result<SimplexTable> {
        let mut cur = self.clone();
        while cur.dim_cap < new_cap {
            let n = cur.dim_cap + 1;
            let tuples = cur.compatible_tuples(n, None)?;
            let mut ids: Vec<Id> = Vec::with_capacity(tuples.len());
            let mut faces: Vec<BTreeMap<Id, Id>> = vec![BTreeMap::new(); n + 1];
            for t in &tuples {
                let id = tuple_id(t);
                for (i, part) in t.iter().enumerate() {
                    faces[i].insert(id.clone(), part.clone());
                }
                ids.push(id);
            }
            ids.sort();
            // degeneracies level n-1 -> n, derived from the simplicial
            // identities: the j-th face of s_i(x) is s_{i-1}(d_j x) for j < i,
            // x for j = i, i+1, and s_i(d_{j-1} x) for j > i+1.
            let mut degs: Vec<BTreeMap<Id, Id>> = vec![BTreeMap::new(); n];
            for i in 0..n {
                for x in cur.level(n - 1) {
                    let mut t: Vec<Id> = Vec::with_capacity(n + 1);
                    for j in 0..=n {
                        if j == i || j == i + 1 {
                            t.push(x.clone());
                        } else if j < i {
                            let dj = cur.d(n - 1, j, x).clone();
                            t.push(cur.s(n - 2, i - 1, &dj).clone());
                        } else {
                            let dj = cur.d(n - 1, j - 1, x).clone();
                            t.push(cur.s(n - 2, i, &dj).clone());
                        }
                    }
                    let id = tuple_id(&t);
                    if ids.binary_search(&id).is_err() {
                        return Err(EngineError::MalformedTable(format!(
                            "degenerate tuple {} escapes the simplicial kernel at level {}",
                            id, n
                        )));
                    }
                    degs[i].insert(x.clone(), id);
                }
            }
            let mut levels = cur.levels;
            levels.push(ids);
            let mut face = cur.face;
            face.push(faces);
            let mut degeneracy = cur.degeneracy;
            degeneracy[n - 1] = degs;
            degeneracy.push(Vec::new());
            cur = SimplexTable {
                dim_cap: n,
                policy: cur.policy,
                levels,
                face,
                degeneracy,
            };
        }
        Ok(cur)
    }

    /// Materialize levels up to `cap` according to the completion policy.
    /// Below or at the stored cap this is a clone.
    pub fn materialize_to(&self, cap: usize) -> Result<SimplexTable> {
        if cap <= self.dim_cap {
            return Ok(self.clone());
        }
        match self.policy {
            Policy::Truncated => Err(EngineError::TruncatedAboveCap {
                n: cap,
                cap: self.dim_cap,
            }),
            Policy::Coskeletal(_) => self.extend_by_kernels(cap),
        }
    }

    /// Evaluate the simplicial set on an arbitrary monotone map
    /// `f : [m] -> [n]` via the canonical coface/codegeneracy factorization,
    /// carrying an n-simplex to an m-simplex.
    pub fn apply_monotone(&self, f: &MonotoneMap, x: &Id) -> Result<Id> {
        let word = factorize_monotone(f);
        let mut level = f.target_size;
        if level > self.dim_cap || !self.has_simplex(level, x) {
            return Err(EngineError::DimensionOutOfRange(format!(
                "no simplex {:?} at level {}",
                x, level
            )));
        }
        let mut cur = x.clone();
        // faces are applied largest index first (outermost coface first)
        for &i in word.cofaces.iter().rev() {
            cur = self.d(level, i, &cur).clone();
            level -= 1;
        }
        // then degeneracies smallest index first
        for &j in word.codegeneracies.iter() {
            if level >= self.dim_cap {
                return Err(EngineError::DimensionOutOfRange(format!(
                    "degeneracy above the cap {} while evaluating",
                    self.dim_cap
                )));
            }
            cur = self.s(level, j, &cur).clone();
            level += 1;
        }
        debug_assert_eq!(level, f.source_size);
        Ok(cur)
    }
}

/// Whether a horn condition fails, holds, or holds exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum KanStatus {
    /// The horn map is not surjective; carries the least unfillable horn.
    NotSatisfied { witness: Vec<Id> },
    /// Surjective but not bijective.
    Satisfied,
    /// Bijective.
    Exact,
}

impl KanStatus {
    pub fn holds(&self) -> bool {
        !matches!(self, KanStatus::NotSatisfied { .. })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, KanStatus::Exact)
    }
}

/// The strongest structural label `classify` can derive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// Kan with exact horn maps in every dimension above `n`.
    Hypergroupoid(usize),
    Kan,
    /// All inner horn maps exact (but not Kan).
    WeakKanExact,
    None,
}

/// Per-(n, k) horn statuses up to a bound, plus the derived label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub bound: usize,
    pub label: Classification,
    /// Status for every `1 <= n <= bound`, `0 <= k <= n`.
    pub grid: BTreeMap<(usize, usize), KanStatus>,
    /// Dimensions above the bound are claimed only by policy, not checked.
    pub notes: Vec<String>,
}

/// The n-th simplicial kernel: all tuples of (n-1)-simplices that could
/// bound an n-simplex, together with the boundary map on n-simplices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelSet {
    pub n: usize,
    /// Sorted tuples `(x_0, …, x_n)` with `d_i(x_j) = d_{j-1}(x_i)` for `i < j`.
    pub tuples: Vec<Vec<Id>>,
    /// `boundary[x] = (d_0(x), …, d_n(x))` for each n-simplex `x` (present
    /// only when level `n` is stored).
    pub boundary: BTreeMap<Id, Vec<Id>>,
}

/// The k-horn set in dimension n, with the horn map on n-simplices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HornSet {
    pub n: usize,
    pub k: usize,
    /// Sorted tuples `(x_i)_{i != k}` satisfying the kernel relations away
    /// from slot k.
    pub tuples: Vec<Vec<Id>>,
    /// `horn[x]` = boundary of `x` with the k-th face omitted.
    pub horn: BTreeMap<Id, Vec<Id>>,
}

/// Check the five simplicial identity families and the coskeletal policy
/// invariant on every defined composite.
pub fn validate_simplicial(x: &SimplexTable) -> VerificationReport {
    let subject = "simplicial identities";
    let cap = x.dim_cap();
    // d_i d_j = d_{j-1} d_i for i < j
    for n in 2..=cap {
        for a in x.level(n) {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = x.d(n - 1, i, x.d(n, j, a));
                    let rhs = x.d(n - 1, j - 1, x.d(n, i, a));
                    if lhs != rhs {
                        return VerificationReport::fail(
                            subject,
                            format!("d_{} d_{} = d_{} d_{}", i, j, j - 1, i),
                            format!("at {}-simplex {}: {} != {}", n, a, lhs, rhs),
                        );
                    }
                }
            }
        }
    }
    // s_i s_j = s_{j+1} s_i for i <= j
    for n in 0..cap.saturating_sub(1) {
        for a in x.level(n) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = x.s(n + 1, i, x.s(n, j, a));
                    let rhs = x.s(n + 1, j + 1, x.s(n, i, a));
                    if lhs != rhs {
                        return VerificationReport::fail(
                            subject,
                            format!("s_{} s_{} = s_{} s_{}", i, j, j + 1, i),
                            format!("at {}-simplex {}: {} != {}", n, a, lhs, rhs),
                        );
                    }
                }
            }
        }
    }
    for n in 0..cap {
        for a in x.level(n) {
            for j in 0..=n {
                let sj = x.s(n, j, a);
                for i in 0..=(n + 1) {
                    let lhs = x.d(n + 1, i, sj);
                    if i < j {
                        // d_i s_j = s_{j-1} d_i
                        let rhs = x.s(n - 1, j - 1, x.d(n, i, a));
                        if lhs != rhs {
                            return VerificationReport::fail(
                                subject,
                                format!("d_{} s_{} = s_{} d_{}", i, j, j - 1, i),
                                format!("at {}-simplex {}: {} != {}", n, a, lhs, rhs),
                            );
                        }
                    } else if i == j || i == j + 1 {
                        // d_i s_j = id
                        if lhs != a {
                            return VerificationReport::fail(
                                subject,
                                format!("d_{} s_{} = id", i, j),
                                format!("at {}-simplex {}: got {}", n, a, lhs),
                            );
                        }
                    } else {
                        // d_i s_j = s_j d_{i-1}
                        let rhs = x.s(n - 1, j, x.d(n, i - 1, a));
                        if lhs != rhs {
                            return VerificationReport::fail(
                                subject,
                                format!("d_{} s_{} = s_{} d_{}", i, j, j, i - 1),
                                format!("at {}-simplex {}: {} != {}", n, a, lhs, rhs),
                            );
                        }
                    }
                }
            }
        }
    }
    if let Policy::Coskeletal(m) = x.policy() {
        for n in (m + 1)..=cap {
            match boundary_bijectivity_failure(x, n) {
                Ok(None) => {}
                Ok(Some(w)) => {
                    return VerificationReport::fail(
                        subject,
                        format!("coskeletal policy: boundary at level {} must be bijective", n),
                        w,
                    )
                }
                Err(e) => {
                    return VerificationReport::fail(
                        subject,
                        format!("coskeletal policy at level {}", n),
                        e.to_string(),
                    )
                }
            }
        }
    }
    VerificationReport::pass(subject)
}

/// `Ok(None)` when the boundary map at level n is a bijection onto the
/// kernel; otherwise a description of the failure.
fn boundary_bijectivity_failure(x: &SimplexTable, n: usize) -> Result<Option<String>> {
    let tuples = x.compatible_tuples(n, None)?;
    let keys: BTreeSet<Vec<Id>> = tuples.into_iter().collect();
    let mut seen: BTreeMap<Vec<Id>, &Id> = BTreeMap::new();
    for a in x.level(n) {
        let b = x.boundary(n, a);
        if !keys.contains(&b) {
            return Ok(Some(format!(
                "boundary of {} is not a kernel tuple: {}",
                a,
                fmt_tuple(&b)
            )));
        }
        if let Some(prev) = seen.insert(b.clone(), a) {
            return Ok(Some(format!(
                "simplices {} and {} share the boundary {}",
                prev,
                a,
                fmt_tuple(&b)
            )));
        }
    }
    if seen.len() != keys.len() {
        let missing = keys.iter().find(|t| !seen.contains_key(*t)).unwrap();
        return Ok(Some(format!(
            "kernel tuple {} has no filler",
            fmt_tuple(missing)
        )));
    }
    Ok(None)
}

/// The n-th simplicial kernel with its boundary map. Legal for
/// `1 <= n <= dim_cap + 1` (the top case uses only level-`dim_cap` faces).
pub fn simplicial_kernel(x: &SimplexTable, n: usize) -> Result<KernelSet> {
    let tuples = x.compatible_tuples(n, None)?;
    let mut boundary = BTreeMap::new();
    if n <= x.dim_cap() {
        for a in x.level(n) {
            boundary.insert(a.clone(), x.boundary(n, a));
        }
    }
    Ok(KernelSet { n, tuples, boundary })
}

/// The k-horn set in dimension n with the horn map `p_n^k` on n-simplices.
pub fn horn_set(x: &SimplexTable, n: usize, k: usize) -> Result<HornSet> {
    if n == 0 || n > x.dim_cap() + 1 {
        return Err(EngineError::DimensionOutOfRange(format!(
            "horn dimension {} for a table with cap {}",
            n,
            x.dim_cap()
        )));
    }
    if k > n {
        return Err(EngineError::HornIndexOutOfRange { n, k });
    }
    let tuples = x.compatible_tuples(n, Some(k))?;
    let mut horn = BTreeMap::new();
    if n <= x.dim_cap() {
        for a in x.level(n) {
            let mut t = x.boundary(n, a);
            t.remove(k);
            horn.insert(a.clone(), t);
        }
    }
    Ok(HornSet { n, k, tuples, horn })
}

/// Decide whether the k-horn map in dimension n is surjective (Kan) or
/// bijective (exact). Levels above the cap are materialized via the policy.
pub fn kan_status(x: &SimplexTable, n: usize, k: usize) -> Result<KanStatus> {
    if n == 0 {
        return Err(EngineError::DimensionOutOfRange(
            "horn dimension must be at least 1".into(),
        ));
    }
    if k > n {
        return Err(EngineError::HornIndexOutOfRange { n, k });
    }
    if n > x.dim_cap() {
        let ext = x.materialize_to(n)?;
        return kan_status(&ext, n, k);
    }
    let horns = horn_set(x, n, k)?;
    let mut hit: BTreeMap<&[Id], usize> = BTreeMap::new();
    for t in horns.horn.values() {
        *hit.entry(t.as_slice()).or_insert(0) += 1;
    }
    for t in &horns.tuples {
        if !hit.contains_key(t.as_slice()) {
            return Ok(KanStatus::NotSatisfied { witness: t.clone() });
        }
    }
    let exact =
        x.level(n).len() == horns.tuples.len() && hit.values().all(|&c| c == 1);
    Ok(if exact {
        KanStatus::Exact
    } else {
        KanStatus::Satisfied
    })
}

/// Compute the full horn-status grid up to `bound` and derive the strongest
/// label: hypergroupoid in minimal dimension, else Kan, else exact inner
/// horns, else none.
pub fn classify(x: &SimplexTable, bound: usize) -> Result<ClassifyReport> {
    if bound < x.dim_cap() {
        return Err(EngineError::DimensionOutOfRange(format!(
            "classification bound {} below the table cap {}",
            bound,
            x.dim_cap()
        )));
    }
    let ext = x.materialize_to(bound)?;
    let mut grid = BTreeMap::new();
    for n in 1..=bound {
        for k in 0..=n {
            grid.insert((n, k), kan_status(&ext, n, k)?);
        }
    }
    let kan = grid.values().all(|s| s.holds());
    let inner_exact = grid
        .iter()
        .filter(|((n, k), _)| *k > 0 && *k < *n)
        .all(|(_, s)| s.is_exact());
    let label = if kan {
        // minimal n such that every dimension above n is exact everywhere
        let max_nonexact = grid
            .iter()
            .filter(|(_, s)| !s.is_exact())
            .map(|((n, _), _)| *n)
            .max();
        match max_nonexact {
            Some(m) if m == bound => Classification::Kan,
            Some(m) => Classification::Hypergroupoid(m),
            None => Classification::Hypergroupoid(0),
        }
    } else if inner_exact {
        Classification::WeakKanExact
    } else {
        Classification::None
    };
    let mut notes = Vec::new();
    if let Policy::Coskeletal(m) = x.policy() {
        notes.push(format!(
            "dimensions above {} follow from the coskeletal({}) policy and are not enumerated",
            bound, m
        ));
    }
    Ok(ClassifyReport {
        bound,
        label,
        grid,
        notes,
    })
}

/// Is the boundary map onto the n-th kernel surjective? Returns the least
/// unbounded kernel tuple as witness otherwise. Above the cap, a truncated
/// table counts as having no simplices; a coskeletal one is aspherical by
/// construction.
pub fn is_aspherical(x: &SimplexTable, n: usize) -> Result<(bool, Option<Vec<Id>>)> {
    let tuples = x.compatible_tuples(n, None)?;
    let image: BTreeSet<Vec<Id>> = if n <= x.dim_cap() {
        x.level(n).iter().map(|a| x.boundary(n, a)).collect()
    } else {
        match x.policy() {
            Policy::Coskeletal(_) => return Ok((true, None)),
            Policy::Truncated => BTreeSet::new(),
        }
    };
    for t in &tuples {
        if !image.contains(t) {
            return Ok((false, Some(t.clone())));
        }
    }
    Ok((true, None))
}

/// A levelwise map of simplicial sets between tables of equal cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: SimplexTable,
    pub target: SimplexTable,
    /// `components[n]` maps source level n to target level n.
    pub components: Vec<BTreeMap<Id, Id>>,
}

impl SimplicialMap {
    pub fn identity(x: &SimplexTable) -> Self {
        let components = (0..=x.dim_cap())
            .map(|n| {
                x.level(n)
                    .iter()
                    .map(|a| (a.clone(), a.clone()))
                    .collect()
            })
            .collect();
        SimplicialMap {
            source: x.clone(),
            target: x.clone(),
            components,
        }
    }

    pub fn apply(&self, n: usize, x: &str) -> Result<&Id> {
        self.components
            .get(n)
            .and_then(|m| m.get(x))
            .ok_or_else(|| {
                EngineError::MalformedData(format!("map undefined on level-{} id {:?}", n, x))
            })
    }

    /// Composite `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != other.source {
            return Err(EngineError::MalformedData(
                "composition of simplicial maps with mismatched middle table".into(),
            ));
        }
        let mut components = Vec::new();
        for n in 0..=self.source.dim_cap() {
            let mut m = BTreeMap::new();
            for (a, b) in &self.components[n] {
                m.insert(a.clone(), other.apply(n, b)?.clone());
            }
            components.push(m);
        }
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: other.target.clone(),
            components,
        })
    }

    /// Extend a map along kernel materialization of both its ends: the image
    /// of a kernel tuple is the tuple of images.
    pub fn materialize_to(&self, cap: usize) -> Result<SimplicialMap> {
        let source = self.source.materialize_to(cap)?;
        let target = self.target.materialize_to(cap)?;
        let mut components = self.components.clone();
        for n in (self.source.dim_cap() + 1)..=cap {
            let mut m = BTreeMap::new();
            for a in source.level(n) {
                let parts: Vec<Id> = serde_json::from_str(a).map_err(|e| {
                    EngineError::MalformedData(format!("kernel-level id {:?}: {}", a, e))
                })?;
                let mut image_parts = Vec::with_capacity(parts.len());
                for p in &parts {
                    image_parts.push(
                        components[n - 1]
                            .get(p)
                            .ok_or_else(|| {
                                EngineError::MalformedData(format!(
                                    "map undefined on level-{} id {:?}",
                                    n - 1,
                                    p
                                ))
                            })?
                            .clone(),
                    );
                }
                let img = tuple_id(&image_parts);
                if !target.has_simplex(n, &img) {
                    return Err(EngineError::MalformedData(format!(
                        "image tuple {} missing from the target kernel at level {}",
                        img, n
                    )));
                }
                m.insert(a.clone(), img);
            }
            components.push(m);
        }
        Ok(SimplicialMap {
            source,
            target,
            components,
        })
    }
}

/// Check that a levelwise map commutes with every face and degeneracy.
pub fn validate_simplicial_map(f: &SimplicialMap) -> VerificationReport {
    let subject = "simplicial map";
    if f.source.dim_cap() != f.target.dim_cap() {
        return VerificationReport::fail(
            subject,
            "equal dimension caps",
            format!(
                "source cap {} vs target cap {}",
                f.source.dim_cap(),
                f.target.dim_cap()
            ),
        );
    }
    let cap = f.source.dim_cap();
    if f.components.len() != cap + 1 {
        return VerificationReport::fail(
            subject,
            "one component per level",
            format!("expected {}, got {}", cap + 1, f.components.len()),
        );
    }
    for n in 0..=cap {
        for a in f.source.level(n) {
            match f.components[n].get(a) {
                None => {
                    return VerificationReport::fail(
                        subject,
                        "component totality",
                        format!("undefined on level-{} id {}", n, a),
                    )
                }
                Some(b) => {
                    if !f.target.has_simplex(n, b) {
                        return VerificationReport::fail(
                            subject,
                            "component lands in target level",
                            format!("level-{} id {} maps to undeclared {}", n, a, b),
                        );
                    }
                }
            }
        }
    }
    for n in 1..=cap {
        for a in f.source.level(n) {
            let fa = &f.components[n][a];
            for i in 0..=n {
                let lhs = &f.components[n - 1][f.source.d(n, i, a)];
                let rhs = f.target.d(n, i, fa);
                if lhs != rhs {
                    return VerificationReport::fail(
                        subject,
                        format!("naturality against d_{}", i),
                        format!("at {}-simplex {}: {} != {}", n, a, lhs, rhs),
                    );
                }
            }
        }
    }
    for n in 0..cap {
        for a in f.source.level(n) {
            let fa = &f.components[n][a];
            for i in 0..=n {
                let lhs = &f.components[n + 1][f.source.s(n, i, a)];
                let rhs = f.target.s(n, i, fa);
                if lhs != rhs {
                    return VerificationReport::fail(
                        subject,
                        format!("naturality against s_{}", i),
                        format!("at {}-simplex {}: {} != {}", n, a, lhs, rhs),
                    );
                }
            }
        }
    }
    VerificationReport::pass(subject)
}

/// Extra degeneracies witnessing contractibility of an augmented table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    /// Section `s_0 : X_{-1} -> X_0` of the augmentation.
    pub s0: BTreeMap<Id, Id>,
    /// `extra[n] : X_n -> X_{n+1}` is the contraction `s_{n+1}` at level n,
    /// for `0 <= n < dim_cap`.
    pub extra: Vec<BTreeMap<Id, Id>>,
}

/// A simplicial set augmented over a finite set, optionally split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedSimplexTable {
    pub base: SimplexTable,
    /// Sorted ids of the augmentation set `X_{-1}`.
    pub augmentation_set: Vec<Id>,
    /// Total map level 0 -> `X_{-1}`.
    pub aug: BTreeMap<Id, Id>,
    pub contraction: Option<Contraction>,
}

impl AugmentedSimplexTable {
    pub fn new(
        base: SimplexTable,
        mut augmentation_set: Vec<Id>,
        aug: BTreeMap<Id, Id>,
        contraction: Option<Contraction>,
    ) -> Result<Self> {
        augmentation_set.sort();
        augmentation_set.dedup();
        for x in base.level(0) {
            match aug.get(x) {
                None => {
                    return Err(EngineError::MalformedTable(format!(
                        "augmentation undefined on vertex {}",
                        x
                    )))
                }
                Some(t) => {
                    if augmentation_set.binary_search(t).is_err() {
                        return Err(EngineError::MalformedTable(format!(
                            "augmentation sends {} to undeclared {}",
                            x, t
                        )));
                    }
                }
            }
        }
        Ok(AugmentedSimplexTable {
            base,
            augmentation_set,
            aug,
            contraction,
        })
    }

    /// The fibered kernel `X_0 ×_{X_{-1}} X_0` replacing the plain product
    /// in dimension 1.
    pub fn fibered_kernel_1(&self) -> Vec<Vec<Id>> {
        let mut out = Vec::new();
        for x in self.base.level(0) {
            for y in self.base.level(0) {
                if self.aug[x] == self.aug[y] {
                    out.push(vec![x.clone(), y.clone()]);
                }
            }
        }
        out
    }
}

/// Asphericity for augmented tables: dimension 0 asks the augmentation to be
/// surjective, dimension 1 uses the fibered kernel, higher dimensions agree
/// with the plain table.
pub fn is_aspherical_augmented(
    a: &AugmentedSimplexTable,
    n: usize,
) -> Result<(bool, Option<Vec<Id>>)> {
    match n {
        0 => {
            let image: BTreeSet<&Id> = a.aug.values().collect();
            for t in &a.augmentation_set {
                if !image.contains(t) {
                    return Ok((false, Some(vec![t.clone()])));
                }
            }
            Ok((true, None))
        }
        1 => {
            let image: BTreeSet<Vec<Id>> = if a.base.dim_cap() >= 1 {
                a.base
                    .level(1)
                    .iter()
                    .map(|x| a.base.boundary(1, x))
                    .collect()
            } else {
                BTreeSet::new()
            };
            for t in a.fibered_kernel_1() {
                if !image.contains(&t) {
                    return Ok((false, Some(t)));
                }
            }
            Ok((true, None))
        }
        _ => is_aspherical(&a.base, n),
    }
}

/// Validate the augmentation identities and, when a contraction is present,
/// every degeneracy-style identity it must satisfy.
pub fn validate_augmented(a: &AugmentedSimplexTable) -> VerificationReport {
    let subject = "augmented simplicial set";
    let base_report = validate_simplicial(&a.base);
    if !base_report.passed {
        return base_report;
    }
    let cap = a.base.dim_cap();
    if cap >= 1 {
        for x in a.base.level(1) {
            let l = &a.aug[a.base.d(1, 0, x)];
            let r = &a.aug[a.base.d(1, 1, x)];
            if l != r {
                return VerificationReport::fail(
                    subject,
                    "aug d_0 = aug d_1",
                    format!("at edge {}: {} != {}", x, l, r),
                );
            }
        }
    }
    let c = match &a.contraction {
        None => return VerificationReport::pass(subject),
        Some(c) => c,
    };
    if c.extra.len() != cap {
        return VerificationReport::fail(
            subject,
            "contraction shape",
            format!("expected {} extra degeneracy maps, got {}", cap, c.extra.len()),
        );
    }
    // aug ∘ s_0 = id on X_{-1}
    for t in &a.augmentation_set {
        match c.s0.get(t) {
            None => {
                return VerificationReport::fail(
                    subject,
                    "contraction s_0 totality",
                    format!("undefined on {}", t),
                )
            }
            Some(x) => {
                if &a.aug[x] != t {
                    return VerificationReport::fail(
                        subject,
                        "aug s_0 = id",
                        format!("at {}: lands on {} over {}", t, x, a.aug[x]),
                    );
                }
            }
        }
    }
    let extra = |n: usize, x: &Id| -> Option<&Id> { c.extra.get(n).and_then(|m| m.get(x)) };
    // bottom level: d_1 s_1 = id and d_0 s_1 = s_0 ∘ aug
    if cap >= 1 {
        for x in a.base.level(0) {
            let sx = match extra(0, x) {
                None => {
                    return VerificationReport::fail(
                        subject,
                        "contraction totality",
                        format!("s_1 undefined on vertex {}", x),
                    )
                }
                Some(v) => v,
            };
            if a.base.d(1, 1, sx) != x {
                return VerificationReport::fail(
                    subject,
                    "d_1 s_1 = id",
                    format!("at vertex {}", x),
                );
            }
            if a.base.d(1, 0, sx) != &c.s0[&a.aug[x]] {
                return VerificationReport::fail(
                    subject,
                    "d_0 s_1 = s_0 aug",
                    format!("at vertex {}", x),
                );
            }
        }
        // s_0 s_0 = s_1 s_0 on X_{-1}
        for t in &a.augmentation_set {
            let bottom = &c.s0[t];
            let lhs = a.base.s(0, 0, bottom);
            let rhs = extra(0, bottom);
            if rhs != Some(lhs) {
                return VerificationReport::fail(
                    subject,
                    "s_0 s_0 = s_1 s_0",
                    format!("at {}", t),
                );
            }
        }
    }
    for n in 1..cap {
        for x in a.base.level(n) {
            let sx = match extra(n, x) {
                None => {
                    return VerificationReport::fail(
                        subject,
                        "contraction totality",
                        format!("s_{} undefined on level-{} id {}", n + 1, n, x),
                    )
                }
                Some(v) => v,
            };
            // d_{n+1} s_{n+1} = id
            if a.base.d(n + 1, n + 1, sx) != x {
                return VerificationReport::fail(
                    subject,
                    format!("d_{} s_{} = id", n + 1, n + 1),
                    format!("at {}", x),
                );
            }
            // d_i s_{n+1} = s_n d_i for i <= n
            for i in 0..=n {
                let lhs = a.base.d(n + 1, i, sx);
                let rhs = extra(n - 1, a.base.d(n, i, x));
                if rhs != Some(lhs) {
                    return VerificationReport::fail(
                        subject,
                        format!("d_{} s_{} = s_{} d_{}", i, n + 1, n, i),
                        format!("at {}", x),
                    );
                }
            }
        }
        // degeneracy interchange with the contraction one level down
        for x in a.base.level(n - 1) {
            let cx = extra(n - 1, x).expect("checked above");
            for i in 0..n {
                let lhs = a.base.s(n, i, cx);
                let rhs = extra(n, a.base.s(n - 1, i, x));
                if rhs != Some(lhs) {
                    return VerificationReport::fail(
                        subject,
                        format!("s_{} s_{} = s_{} s_{}", i, n, n + 1, i),
                        format!("at {}", x),
                    );
                }
            }
            let lhs = a.base.s(n, n, cx);
            let rhs = extra(n, cx);
            if rhs != Some(lhs) {
                return VerificationReport::fail(
                    subject,
                    format!("s_{} s_{} = s_{} s_{}", n, n, n + 1, n),
                    format!("at {}", x),
                );
            }
        }
    }
    VerificationReport::pass(subject)
}

/// Enumerate every simplicial map from `source` to `target` (equal caps) by
/// exhaustive search: images of nondegenerate simplices are chosen level by
/// level under face constraints, images of degenerate simplices are forced.
/// Intended for desk-scale sources (horn complexes, small truncations).
pub fn enumerate_simplicial_maps(
    source: &SimplexTable,
    target: &SimplexTable,
) -> Result<Vec<SimplicialMap>> {
    if source.dim_cap() != target.dim_cap() {
        return Err(EngineError::MalformedData(
            "map enumeration needs equal dimension caps".into(),
        ));
    }
    let cap = source.dim_cap();
    // for each simplex of the source, record one degeneracy presentation
    // (level, i, base) if it has one
    let mut degen_presentation: Vec<BTreeMap<Id, (usize, Id)>> = vec![BTreeMap::new(); cap + 1];
    for n in 0..cap {
        for y in source.level(n) {
            for i in 0..=n {
                let x = source.s(n, i, y).clone();
                degen_presentation[n + 1].entry(x).or_insert((i, y.clone()));
            }
        }
    }
    let mut results: Vec<SimplicialMap> = Vec::new();
    let mut components: Vec<BTreeMap<Id, Id>> = vec![BTreeMap::new(); cap + 1];
    fn search(
        source: &SimplexTable,
        target: &SimplexTable,
        degen: &[BTreeMap<Id, (usize, Id)>],
        components: &mut Vec<BTreeMap<Id, Id>>,
        n: usize,
        pos: usize,
        results: &mut Vec<SimplicialMap>,
    ) {
        let cap = source.dim_cap();
        if pos == source.level(n).len() {
            if n == cap {
                results.push(SimplicialMap {
                    source: source.clone(),
                    target: target.clone(),
                    components: components.clone(),
                });
            } else {
                search(source, target, degen, components, n + 1, 0, results);
            }
            return;
        }
        let x = &source.level(n)[pos];
        let face_ok = |components: &Vec<BTreeMap<Id, Id>>, y: &Id| -> bool {
            if n == 0 {
                return true;
            }
            (0..=n).all(|i| components[n - 1][source.d(n, i, x)] == *target.d(n, i, y))
        };
        if let Some((i, base)) = degen[n].get(x) {
            // forced image
            let y = target.s(n - 1, *i, &components[n - 1][base]).clone();
            if face_ok(components, &y) {
                components[n].insert(x.clone(), y.clone());
                search(source, target, degen, components, n, pos + 1, results);
                components[n].remove(x);
            }
            return;
        }
        for y in target.level(n) {
            if face_ok(components, y) {
                components[n].insert(x.clone(), y.clone());
                search(source, target, degen, components, n, pos + 1, results);
                components[n].remove(x);
            }
        }
    }
    search(
        source,
        target,
        &degen_presentation,
        &mut components,
        0,
        0,
        &mut results,
    );
    // the search constrains faces and one degeneracy presentation per
    // simplex; discard the rare candidate violating another presentation
    results.retain(|f| validate_simplicial_map(f).passed);
    Ok(results)
}

/// The constant complex `K(S, 0)`: the set `S` at every level with identity
/// faces and degeneracies. Its level-1 boundary is the diagonal of `S x S`,
/// so it is 1-coskeletal (but not 0-coskeletal once `S` has two points).
pub fn constant_complex(points: &[Id], cap: usize) -> SimplexTable {
    let mut pts: Vec<Id> = points.to_vec();
    pts.sort();
    pts.dedup();
    let idmap: BTreeMap<Id, Id> = pts.iter().map(|p| (p.clone(), p.clone())).collect();
    let levels = vec![pts.clone(); cap + 1];
    let mut face = vec![Vec::new()];
    for n in 1..=cap {
        face.push(vec![idmap.clone(); n + 1]);
    }
    let mut degeneracy = Vec::new();
    for n in 0..cap {
        degeneracy.push(vec![idmap.clone(); n + 1]);
    }
    degeneracy.push(Vec::new());
    let policy = if cap >= 1 {
        Policy::Coskeletal(1)
    } else {
        Policy::Truncated
    };
    SimplexTable::new(cap, policy, levels, face, degeneracy)
        .expect("constant complex is well formed")
}

fn monotone_id(f: &MonotoneMap) -> Id {
    f.values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("-")
}

/// A simplicial subset of the standard n-simplex cut out by a predicate on
/// monotone maps `[m] -> [n]` (the predicate must be closed under
/// precomposition, which holds for all the stock subcomplexes).
fn representable_subcomplex(
    n: usize,
    cap: usize,
    keep: impl Fn(&MonotoneMap) -> bool,
) -> SimplexTable {
    let mut by_level: Vec<Vec<MonotoneMap>> = Vec::new();
    for m in 0..=cap {
        by_level.push(
            MonotoneMap::enumerate(m, n)
                .into_iter()
                .filter(|f| keep(f))
                .collect(),
        );
    }
    let levels: Vec<Vec<Id>> = by_level
        .iter()
        .map(|fs| fs.iter().map(monotone_id).collect())
        .collect();
    let mut face = vec![Vec::new()];
    for m in 1..=cap {
        let mut maps = Vec::new();
        for i in 0..=m {
            let coface = MonotoneMap::coface(m, i).unwrap();
            let mut tbl = BTreeMap::new();
            for f in &by_level[m] {
                let g = f.compose(&coface).unwrap();
                tbl.insert(monotone_id(f), monotone_id(&g));
            }
            maps.push(tbl);
        }
        face.push(maps);
    }
    let mut degeneracy = Vec::new();
    for m in 0..cap {
        let mut maps = Vec::new();
        for i in 0..=m {
            let codeg = MonotoneMap::codegeneracy(m, i).unwrap();
            let mut tbl = BTreeMap::new();
            for f in &by_level[m] {
                let g = f.compose(&codeg).unwrap();
                tbl.insert(monotone_id(f), monotone_id(&g));
            }
            maps.push(tbl);
        }
        degeneracy.push(maps);
    }
    degeneracy.push(Vec::new());
    SimplexTable::new(cap, Policy::Truncated, levels, face, degeneracy)
        .expect("representable subcomplexes are well formed")
}

/// The standard n-simplex truncated at `cap`: level m holds all monotone
/// maps `[m] -> [n]`. As the nerve of a linear order it is 1-coskeletal,
/// so classification above the cap can materialize it by kernels.
pub fn standard_simplex(n: usize, cap: usize) -> SimplexTable {
    let t = representable_subcomplex(n, cap, |_| true);
    if cap >= 1 {
        t.with_policy(Policy::Coskeletal(1))
            .expect("degree 1 below cap")
    } else {
        t
    }
}

/// The boundary of the standard n-simplex: maps whose image is proper.
pub fn boundary_complex(n: usize, cap: usize) -> SimplexTable {
    representable_subcomplex(n, cap, |f| {
        let image: BTreeSet<usize> = f.values.iter().copied().collect();
        image.len() < n + 1
    })
}

/// The k-horn of the standard n-simplex: maps missing some vertex other
/// than k.
pub fn horn_complex(n: usize, k: usize, cap: usize) -> SimplexTable {
    representable_subcomplex(n, cap, move |f| {
        let image: BTreeSet<usize> = f.values.iter().copied().collect();
        (0..=n).any(|v| v != k && !image.contains(&v))
    })
}
