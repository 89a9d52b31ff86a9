//! Canonical JSON artifact formats and their conversions to and from the
//! engine types. Serialization is deterministic: all maps are ordered, all
//! id arrays are stored sorted, and there is no floating point anywhere, so
//! saving a loaded artifact reproduces it byte for byte.

use nervekit::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A tuple-keyed table: keys are the canonical JSON-array renderings of the
/// id tuples (the same strings `tuple_id` produces), so maps stay ordered
/// and diff cleanly.
pub type TupleTable = BTreeMap<String, Id>;

fn parse_tuple(key: &str, arity: usize, table: &str) -> Result<Vec<Id>> {
    let parts: Vec<Id> = serde_json::from_str(key)
        .map_err(|e| EngineError::Parse(format!("{} key {:?}: {}", table, key, e)))?;
    if parts.len() != arity {
        return Err(EngineError::Parse(format!(
            "{} key {:?} has {} parts, expected {}",
            table,
            key,
            parts.len(),
            arity
        )));
    }
    Ok(parts)
}

fn to_pair_table(m: &TupleTable, table: &str) -> Result<BTreeMap<(Id, Id), Id>> {
    let mut out = BTreeMap::new();
    for (k, v) in m {
        let p = parse_tuple(k, 2, table)?;
        out.insert((p[0].clone(), p[1].clone()), v.clone());
    }
    Ok(out)
}

fn to_triple_table(m: &TupleTable, table: &str) -> Result<BTreeMap<(Id, Id, Id), Id>> {
    let mut out = BTreeMap::new();
    for (k, v) in m {
        let p = parse_tuple(k, 3, table)?;
        out.insert((p[0].clone(), p[1].clone(), p[2].clone()), v.clone());
    }
    Ok(out)
}

fn from_pair_table(m: &BTreeMap<(Id, Id), Id>) -> TupleTable {
    m.iter()
        .map(|((a, b), v)| (tuple_id(&[a.clone(), b.clone()]), v.clone()))
        .collect()
}

fn from_triple_table(m: &BTreeMap<(Id, Id, Id), Id>) -> TupleTable {
    m.iter()
        .map(|((a, b, c), v)| (tuple_id(&[a.clone(), b.clone(), c.clone()]), v.clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// simplicial sets
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum PolicyFile {
    Truncated,
    Coskeletal(usize),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractionFile {
    pub s0: BTreeMap<Id, Id>,
    pub extra: Vec<BTreeMap<Id, Id>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AugmentationFile {
    pub set: Vec<Id>,
    pub map: BTreeMap<Id, Id>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contraction: Option<ContractionFile>,
}

/// A truncated simplicial set: `levels[n]` lists the n-simplices,
/// `face[n-1]` maps each n-simplex to its `n + 1` faces in index order
/// (levels `1..=dim_cap`), and `degeneracy[n]` maps each n-simplex to its
/// `n + 1` degeneracies (levels `0..dim_cap`).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialFile {
    pub dim_cap: usize,
    pub policy: PolicyFile,
    pub levels: Vec<Vec<Id>>,
    pub face: Vec<BTreeMap<Id, Vec<Id>>>,
    pub degeneracy: Vec<BTreeMap<Id, Vec<Id>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub augmentation: Option<AugmentationFile>,
}

impl SimplicialFile {
    pub fn to_table(&self) -> Result<SimplexTable> {
        let cap = self.dim_cap;
        if self.face.len() != cap || self.degeneracy.len() != cap {
            return Err(EngineError::Parse(format!(
                "expected {} face and degeneracy blocks for cap {}, found {} and {}",
                cap,
                cap,
                self.face.len(),
                self.degeneracy.len()
            )));
        }
        let mut face: Vec<Vec<BTreeMap<Id, Id>>> = vec![Vec::new()];
        for n in 1..=cap {
            let mut maps = vec![BTreeMap::new(); n + 1];
            for (id, faces) in &self.face[n - 1] {
                if faces.len() != n + 1 {
                    return Err(EngineError::Parse(format!(
                        "simplex {:?} at level {} lists {} faces, expected {}",
                        id,
                        n,
                        faces.len(),
                        n + 1
                    )));
                }
                for (i, f) in faces.iter().enumerate() {
                    maps[i].insert(id.clone(), f.clone());
                }
            }
            face.push(maps);
        }
        let mut degeneracy: Vec<Vec<BTreeMap<Id, Id>>> = Vec::new();
        for n in 0..cap {
            let mut maps = vec![BTreeMap::new(); n + 1];
            for (id, degs) in &self.degeneracy[n] {
                if degs.len() != n + 1 {
                    return Err(EngineError::Parse(format!(
                        "simplex {:?} at level {} lists {} degeneracies, expected {}",
                        id,
                        n,
                        degs.len(),
                        n + 1
                    )));
                }
                for (i, s) in degs.iter().enumerate() {
                    maps[i].insert(id.clone(), s.clone());
                }
            }
            degeneracy.push(maps);
        }
        degeneracy.push(Vec::new());
        let policy = match self.policy {
            PolicyFile::Truncated => Policy::Truncated,
            PolicyFile::Coskeletal(m) => Policy::Coskeletal(m),
        };
        SimplexTable::new(cap, policy, self.levels.clone(), face, degeneracy)
    }

    pub fn to_augmented(&self) -> Result<Option<AugmentedSimplexTable>> {
        let Some(aug) = &self.augmentation else {
            return Ok(None);
        };
        let base = self.to_table()?;
        let contraction = aug.contraction.as_ref().map(|c| Contraction {
            s0: c.s0.clone(),
            extra: c.extra.clone(),
        });
        Ok(Some(AugmentedSimplexTable::new(
            base,
            aug.set.clone(),
            aug.map.clone(),
            contraction,
        )?))
    }

    pub fn from_table(x: &SimplexTable) -> SimplicialFile {
        let cap = x.dim_cap();
        let levels: Vec<Vec<Id>> = (0..=cap).map(|n| x.level(n).to_vec()).collect();
        let face = (1..=cap)
            .map(|n| {
                x.level(n)
                    .iter()
                    .map(|id| {
                        (
                            id.clone(),
                            (0..=n).map(|i| x.d(n, i, id).clone()).collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        let degeneracy = (0..cap)
            .map(|n| {
                x.level(n)
                    .iter()
                    .map(|id| {
                        (
                            id.clone(),
                            (0..=n).map(|i| x.s(n, i, id).clone()).collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        SimplicialFile {
            dim_cap: cap,
            policy: match x.policy() {
                Policy::Truncated => PolicyFile::Truncated,
                Policy::Coskeletal(m) => PolicyFile::Coskeletal(m),
            },
            levels,
            face,
            degeneracy,
            augmentation: None,
        }
    }

    pub fn from_augmented(a: &AugmentedSimplexTable) -> SimplicialFile {
        let mut file = SimplicialFile::from_table(&a.base);
        file.augmentation = Some(AugmentationFile {
            set: a.augmentation_set.clone(),
            map: a.aug.clone(),
            contraction: a.contraction.as_ref().map(|c| ContractionFile {
                s0: c.s0.clone(),
                extra: c.extra.clone(),
            }),
        });
        file
    }
}

// ---------------------------------------------------------------------------
// categories and bicategories
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellFile {
    pub id: Id,
    pub src: Id,
    pub tgt: Id,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<Id>,
    pub morphisms: Vec<CellFile>,
    pub id: BTreeMap<Id, Id>,
    pub comp: TupleTable,
}

impl CategoryFile {
    pub fn to_category(&self) -> Result<FiniteCategory> {
        Ok(FiniteCategory {
            objects: self.objects.clone(),
            morphisms: self.morphisms.iter().map(|c| c.id.clone()).collect(),
            src: self
                .morphisms
                .iter()
                .map(|c| (c.id.clone(), c.src.clone()))
                .collect(),
            tgt: self
                .morphisms
                .iter()
                .map(|c| (c.id.clone(), c.tgt.clone()))
                .collect(),
            id: self.id.clone(),
            comp: to_pair_table(&self.comp, "comp")?,
        })
    }

    pub fn from_category(c: &FiniteCategory) -> CategoryFile {
        CategoryFile {
            objects: c.objects.clone(),
            morphisms: c
                .morphisms
                .iter()
                .map(|m| CellFile {
                    id: m.clone(),
                    src: c.src(m).clone(),
                    tgt: c.tgt(m).clone(),
                })
                .collect(),
            id: c.id.clone(),
            comp: from_pair_table(&c.comp),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicategoryFile {
    pub objects: Vec<Id>,
    pub one_cells: Vec<CellFile>,
    pub two_cells: Vec<CellFile>,
    pub id1: BTreeMap<Id, Id>,
    pub id2: BTreeMap<Id, Id>,
    pub vcomp: TupleTable,
    pub hcomp1: TupleTable,
    pub hcomp2: TupleTable,
    pub assoc: TupleTable,
    pub lunitor: BTreeMap<Id, Id>,
    pub runitor: BTreeMap<Id, Id>,
}

impl BicategoryFile {
    pub fn to_bicategory(&self) -> Result<FiniteBicategory> {
        Ok(FiniteBicategory {
            objects: self.objects.clone(),
            one_cells: self.one_cells.iter().map(|c| c.id.clone()).collect(),
            two_cells: self.two_cells.iter().map(|c| c.id.clone()).collect(),
            s0: self
                .one_cells
                .iter()
                .map(|c| (c.id.clone(), c.src.clone()))
                .collect(),
            t0: self
                .one_cells
                .iter()
                .map(|c| (c.id.clone(), c.tgt.clone()))
                .collect(),
            s1: self
                .two_cells
                .iter()
                .map(|c| (c.id.clone(), c.src.clone()))
                .collect(),
            t1: self
                .two_cells
                .iter()
                .map(|c| (c.id.clone(), c.tgt.clone()))
                .collect(),
            id1: self.id1.clone(),
            id2: self.id2.clone(),
            vcomp: to_pair_table(&self.vcomp, "vcomp")?,
            hcomp1: to_pair_table(&self.hcomp1, "hcomp1")?,
            hcomp2: to_pair_table(&self.hcomp2, "hcomp2")?,
            assoc: to_triple_table(&self.assoc, "assoc")?,
            lunitor: self.lunitor.clone(),
            runitor: self.runitor.clone(),
        })
    }

    pub fn from_bicategory(b: &FiniteBicategory) -> BicategoryFile {
        let cells = |ids: &Vec<Id>, s: &BTreeMap<Id, Id>, t: &BTreeMap<Id, Id>| {
            ids.iter()
                .map(|c| CellFile {
                    id: c.clone(),
                    src: s[c].clone(),
                    tgt: t[c].clone(),
                })
                .collect()
        };
        BicategoryFile {
            objects: b.objects.clone(),
            one_cells: cells(&b.one_cells, &b.s0, &b.t0),
            two_cells: cells(&b.two_cells, &b.s1, &b.t1),
            id1: b.id1.clone(),
            id2: b.id2.clone(),
            vcomp: from_pair_table(&b.vcomp),
            hcomp1: from_pair_table(&b.hcomp1),
            hcomp2: from_pair_table(&b.hcomp2),
            assoc: from_triple_table(&b.assoc),
            lunitor: b.lunitor.clone(),
            runitor: b.runitor.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// actions and torsor candidates
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibrationFile {
    pub base_set: Vec<Id>,
    pub pi0: BTreeMap<Id, Id>,
}

/// An equivariant-functor block: an endofunctor of the ambient action with
/// its structure cells, for the `equivariant` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivariantFile {
    pub f_obj: BTreeMap<Id, Id>,
    pub f_mor: BTreeMap<Id, Id>,
    pub theta: TupleTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<BTreeMap<Id, Id>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub category: CategoryFile,
    pub bicategory: BicategoryFile,
    pub momentum: BTreeMap<Id, Id>,
    pub act0: TupleTable,
    pub act1: TupleTable,
    pub kappa: TupleTable,
    pub iota: BTreeMap<Id, Id>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fibration: Option<FibrationFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivariant: Option<EquivariantFile>,
}

impl ActionFile {
    pub fn to_action(&self) -> Result<BicatAction> {
        Ok(BicatAction {
            category: self.category.to_category()?,
            bicategory: self.bicategory.to_bicategory()?,
            momentum: self.momentum.clone(),
            act0: to_pair_table(&self.act0, "act0")?,
            act1: to_pair_table(&self.act1, "act1")?,
            kappa: to_triple_table(&self.kappa, "kappa")?,
            iota: self.iota.clone(),
        })
    }

    pub fn to_fibered(&self) -> Result<Option<FiberedAction>> {
        let Some(f) = &self.fibration else {
            return Ok(None);
        };
        Ok(Some(FiberedAction {
            action: self.to_action()?,
            base: f.base_set.clone(),
            pi0: f.pi0.clone(),
        }))
    }

    pub fn from_action(a: &BicatAction) -> ActionFile {
        ActionFile {
            category: CategoryFile::from_category(&a.category),
            bicategory: BicategoryFile::from_bicategory(&a.bicategory),
            momentum: a.momentum.clone(),
            act0: from_pair_table(&a.act0),
            act1: from_pair_table(&a.act1),
            kappa: from_triple_table(&a.kappa),
            iota: a.iota.clone(),
            fibration: None,
            equivariant: None,
        }
    }

}

/// A torsor candidate refers to its action data by relative path.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsorFile {
    pub action: String,
    pub base_set: Vec<Id>,
    pub pi0: BTreeMap<Id, Id>,
}

impl TorsorFile {
    /// Resolve the action reference relative to the torsor file's location.
    pub fn to_candidate(&self, own_path: &std::path::Path) -> Result<TorsorCandidate> {
        let dir = own_path.parent().unwrap_or(std::path::Path::new("."));
        let action_path = dir.join(&self.action);
        let text = std::fs::read_to_string(&action_path).map_err(|e| {
            EngineError::Parse(format!("action file {:?}: {}", action_path, e))
        })?;
        let file: ActionFile = serde_json::from_str(&text)
            .map_err(|e| EngineError::Parse(format!("action file {:?}: {}", action_path, e)))?;
        Ok(TorsorCandidate {
            action: FiberedAction {
                action: file.to_action()?,
                base: self.base_set.clone(),
                pi0: self.pi0.clone(),
            },
        })
    }

    pub fn from_candidate(t: &TorsorCandidate, action_ref: &str) -> TorsorFile {
        TorsorFile {
            action: action_ref.to_string(),
            base_set: t.action.base.clone(),
            pi0: t.action.pi0.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// simplicial maps
// ---------------------------------------------------------------------------

/// A simplicial map with its source and target inlined; `components[n]`
/// sends level-n ids of the source to level-n ids of the target.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub source: SimplicialFile,
    pub target: SimplicialFile,
    pub components: Vec<BTreeMap<Id, Id>>,
}

impl MapFile {
    pub fn to_map(&self) -> Result<SimplicialMap> {
        Ok(SimplicialMap {
            source: self.source.to_table()?,
            target: self.target.to_table()?,
            components: self.components.clone(),
        })
    }

    pub fn from_map(f: &SimplicialMap) -> MapFile {
        MapFile {
            source: SimplicialFile::from_table(&f.source),
            target: SimplicialFile::from_table(&f.target),
            components: f.components.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// loading and saving
// ---------------------------------------------------------------------------

/// Any artifact the driver understands, detected by schema.
pub enum Artifact {
    Simplicial(SimplicialFile),
    Bicategory(BicategoryFile),
    Action(ActionFile),
    Torsor(TorsorFile),
    Map(MapFile),
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Simplicial(_) => "simplicial",
            Artifact::Bicategory(_) => "bicategory",
            Artifact::Action(_) => "action",
            Artifact::Torsor(_) => "torsor",
            Artifact::Map(_) => "map",
        }
    }
}

pub fn detect(text: &str) -> Result<Artifact> {
    if let Ok(f) = serde_json::from_str::<SimplicialFile>(text) {
        return Ok(Artifact::Simplicial(f));
    }
    if let Ok(f) = serde_json::from_str::<BicategoryFile>(text) {
        return Ok(Artifact::Bicategory(f));
    }
    if let Ok(f) = serde_json::from_str::<ActionFile>(text) {
        return Ok(Artifact::Action(f));
    }
    if let Ok(f) = serde_json::from_str::<TorsorFile>(text) {
        return Ok(Artifact::Torsor(f));
    }
    if let Ok(f) = serde_json::from_str::<MapFile>(text) {
        return Ok(Artifact::Map(f));
    }
    Err(EngineError::Parse(
        "file matches no artifact schema (simplicial, bicategory, action, torsor, map)".into(),
    ))
}

pub fn load(path: &std::path::Path) -> Result<Artifact> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| EngineError::Parse(format!("{:?}: {}", path, e)))?;
    detect(&text).map_err(|e| EngineError::Parse(format!("{:?}: {}", path, e)))
}

/// Canonical serialization: two-space pretty JSON with ordered keys and a
/// trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("artifacts always serialize");
    out.push('\n');
    out
}

pub fn save<T: Serialize>(path: &std::path::Path, value: &T) -> Result<()> {
    std::fs::write(path, to_canonical(value))
        .map_err(|e| EngineError::Parse(format!("{:?}: {}", path, e)))
}
