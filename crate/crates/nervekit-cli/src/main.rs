//! Command-line driver for the nervekit verification engine.
//!
//! Every operation of the library is exposed as a reproducible batch
//! command over JSON artifacts. Exit codes: 0 = all checked properties
//! hold, 1 = a property is violated (the report carries a witness),
//! 2 = malformed input or usage error.

mod format;

use clap::{Parser, Subcommand, ValueEnum};
use format::*;
use nervekit::*;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nervekit",
    version,
    about = "Verify finite higher-categorical structures: truncated simplicial sets, \
             bicategories, their nerves, actions, and principal 2-bundles."
)]
struct Cli {
    /// Emit machine-readable JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an artifact against the axioms of its kind.
    Validate { file: PathBuf },
    /// Classify a simplicial set by horn-filling strength up to a bound.
    Classify {
        file: PathBuf,
        /// Largest dimension to check (default: NERVEKIT_BOUND or 4).
        #[arg(long)]
        bound: Option<usize>,
        /// Fail (exit 1) unless the label is at least this strong.
        #[arg(long, value_enum)]
        require: Option<Require>,
    },
    /// Enumerate the simplicial kernel of a simplicial set in a dimension.
    Kernel {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Enumerate a horn set and report the horn-filling status.
    Horn {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        index: usize,
    },
    /// Compute a coskeleton of a simplicial set.
    Cosk {
        file: PathBuf,
        /// Coskeleton degree.
        #[arg(long)]
        degree: usize,
        /// Dimension cap of the output.
        #[arg(long)]
        cap: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Compute a skeleton of a simplicial set.
    Sk {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        cap: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Compute the shifted (décalage) complex, augmented over the vertices.
    Dec {
        file: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build the contraction of an augmented aspherical complex and verify it.
    Contraction { file: PathBuf },
    /// Compute the nerve of a bicategory.
    Nerve {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        cap: usize,
        /// Also writes a `.decode.json` sidecar spelling out the tuples.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build the action bicategory of an action.
    ActionBicat {
        file: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check the canonical projection of an action and its nerve map.
    Projection {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        cap: usize,
    },
    /// Check the equivariant block of an action file.
    Equivariant { file: PathBuf },
    /// Check the exact-fibration property of a map, or of an action's
    /// canonical projection nerve.
    ExactFib {
        file: PathBuf,
        /// Single dimension to check; omit to check 2 through the bound.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Check the principality axioms of a torsor candidate.
    TorsorCheck { file: PathBuf },
    /// Run the nerve-level torsor characterization (exact fibration,
    /// asphericity, level-2 determination).
    GlennCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Check the 2-cocycle identity on every 3-simplex of a nerve.
    Cocycle {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        cap: usize,
    },
    /// Generate a stock artifact.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Require {
    Kan,
    Hypergroupoid,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Nerve of the cyclic group of the given order.
    NerveOfGroup {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        cap: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// A 2-group built from a preset crossed module.
    TwoGroup {
        #[arg(long, value_enum)]
        preset: TwoGroupPreset,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// The locally discrete bicategory on the ordinal category [n].
    Ordinal {
        #[arg(long)]
        n: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// The bicategory of spans over a finite universe.
    Span {
        #[arg(long)]
        universe: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// The trivial torsor of the cyclic group of the given order over a
    /// point. Writes the torsor file to OUT and the action data next to it.
    TrivialTorsor {
        #[arg(long)]
        order: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// The pullback of the trivial cyclic-group torsor along a two-point
    /// base. Writes the torsor file to OUT and the action data next to it.
    PullbackTorsor {
        #[arg(long)]
        order: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// The shifted complex of a cyclic-group nerve, with its contraction.
    DecalageOfNerve {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        cap: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// The nerve of the canonical projection of a trivial cyclic-group
    /// torsor, as a standalone map artifact.
    ProjectionMap {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        cap: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// The standard simplex of the given dimension.
    Simplex {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TwoGroupPreset {
    /// Z/2 over the trivial group.
    #[value(name = "z2-to-1")]
    Z2To1,
    /// Z/2 over itself along the identity.
    Z2Id,
    /// Z/4 over Z/2 along the parity map.
    Z4Parity,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

/// Print a verification report and translate it into an exit code.
fn finish(report: &VerificationReport, json: bool) -> ExitCode {
    if json {
        print!("{}", to_canonical(report));
    } else {
        println!(
            "{}: {}",
            report.subject,
            if report.passed { "pass" } else { "fail" }
        );
        for note in &report.notes {
            println!("  note: {}", note);
        }
        if let Some(v) = &report.failure {
            println!("  violated: {}", v.axiom);
            println!("  witness: {}", v.witness);
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Write a serializable value to a file, or print it to standard output.
fn emit<T: serde::Serialize>(value: &T, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => save(path, value),
        None => {
            print!("{}", to_canonical(value));
            Ok(())
        }
    }
}

fn load_simplicial(path: &Path) -> Result<SimplicialFile> {
    match load(path)? {
        Artifact::Simplicial(f) => Ok(f),
        a => Err(EngineError::Parse(format!(
            "{:?} is a {} artifact, expected simplicial",
            path,
            a.kind()
        ))),
    }
}

fn load_action(path: &Path) -> Result<ActionFile> {
    match load(path)? {
        Artifact::Action(f) => Ok(f),
        a => Err(EngineError::Parse(format!(
            "{:?} is a {} artifact, expected action",
            path,
            a.kind()
        ))),
    }
}

/// Torsor candidate from either a torsor file or an action file with a
/// fibration block.
fn load_candidate(path: &Path) -> Result<TorsorCandidate> {
    match load(path)? {
        Artifact::Torsor(f) => f.to_candidate(path),
        Artifact::Action(f) => match f.to_fibered()? {
            Some(fa) => Ok(TorsorCandidate { action: fa }),
            None => Err(EngineError::Parse(format!(
                "{:?} carries no fibration block",
                path
            ))),
        },
        a => Err(EngineError::Parse(format!(
            "{:?} is a {} artifact, expected torsor or fibered action",
            path,
            a.kind()
        ))),
    }
}

fn default_bound(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            std::env::var("NERVEKIT_BOUND")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(4)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let json = cli.json;
    match &cli.command {
        Command::Validate { file } => {
            let report = validate_artifact(file)?;
            Ok(finish(&report, json))
        }
        Command::Classify {
            file,
            bound,
            require,
        } => {
            let x = load_simplicial(file)?.to_table()?;
            let report = classify(&x, default_bound(*bound))?;
            run_classify(&report, *require, json)
        }
        Command::Kernel { file, dim } => {
            let x = load_simplicial(file)?.to_table()?;
            let kernel = simplicial_kernel(&x, *dim)?;
            if json {
                print!("{}", to_canonical(&kernel));
            } else {
                println!("kernel at dimension {}: {} tuples", dim, kernel.tuples.len());
                for t in &kernel.tuples {
                    println!("  {}", tuple_id(t));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Horn { file, dim, index } => {
            let x = load_simplicial(file)?.to_table()?;
            let horn = horn_set(&x, *dim, *index)?;
            let status = kan_status(&x, *dim, *index)?;
            if json {
                let value = serde_json::json!({ "horn": horn, "status": status });
                print!("{}", to_canonical(&value));
            } else {
                println!(
                    "horn (n = {}, k = {}): {} tuples, status {:?}",
                    dim,
                    index,
                    horn.tuples.len(),
                    status
                );
            }
            Ok(if status.holds() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Cosk {
            file,
            degree,
            cap,
            out,
        } => {
            let x = load_simplicial(file)?.to_table()?;
            let y = coskeleton(&x, *degree, *cap)?;
            emit(&SimplicialFile::from_table(&y), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sk {
            file,
            degree,
            cap,
            out,
        } => {
            let x = load_simplicial(file)?.to_table()?;
            let y = skeleton(&x, *degree, *cap)?;
            emit(&SimplicialFile::from_table(&y), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Dec { file, out } => {
            let x = load_simplicial(file)?.to_table()?;
            let bundle = decalage(&x)?;
            emit(&SimplicialFile::from_augmented(&bundle.dec), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Contraction { file } => {
            let f = load_simplicial(file)?;
            let Some(a) = f.to_augmented()? else {
                return Err(EngineError::Parse(format!(
                    "{:?} carries no augmentation block",
                    file
                )));
            };
            let contracted = build_contraction(&a)?;
            let report = validate_augmented(&contracted);
            Ok(finish(&report, json))
        }
        Command::Nerve { file, cap, out } => {
            let b = match load(file)? {
                Artifact::Bicategory(f) => f.to_bicategory()?,
                Artifact::Action(f) => action_bicategory(&f.to_action()?)?,
                a => {
                    return Err(EngineError::Parse(format!(
                        "{:?} is a {} artifact, expected bicategory or action",
                        file,
                        a.kind()
                    )))
                }
            };
            let nerve = duskin_nerve(&b, *cap)?;
            emit(&SimplicialFile::from_table(&nerve), out)?;
            if let Some(path) = out {
                let sidecar = path.with_extension("decode.json");
                save(&sidecar, &decode_nerve(&nerve)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ActionBicat { file, out } => {
            let a = load_action(file)?.to_action()?;
            let b = action_bicategory(&a)?;
            emit(&BicategoryFile::from_bicategory(&b), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Projection { file, cap } => {
            let a = load_action(file)?.to_action()?;
            let proj = canonical_projection(&a)?;
            let mut report = validate_homomorphism(&proj);
            report.subject = "canonical projection".into();
            if report.passed {
                let map = nerve_map(&proj, *cap)?;
                let mr = validate_simplicial_map(&map);
                report.notes.push(format!(
                    "nerve map up to dimension {}: {}",
                    cap,
                    if mr.passed { "pass" } else { "fail" }
                ));
                if !mr.passed {
                    report.passed = false;
                    report.failure = mr.failure;
                }
            }
            Ok(finish(&report, json))
        }
        Command::Equivariant { file } => {
            let f = load_action(file)?;
            let Some(eq) = f.equivariant.clone() else {
                return Err(EngineError::Parse(format!(
                    "{:?} carries no equivariant block",
                    file
                )));
            };
            let a = f.to_action()?;
            let functor = EquivariantFunctor {
                source: a.clone(),
                target: a,
                f_obj: eq.f_obj,
                f_mor: eq.f_mor,
                theta: {
                    let mut m = BTreeMap::new();
                    for (k, v) in &eq.theta {
                        let parts: Vec<Id> = serde_json::from_str(k).map_err(|e| {
                            EngineError::Parse(format!("theta key {:?}: {}", k, e))
                        })?;
                        if parts.len() != 2 {
                            return Err(EngineError::Parse(format!(
                                "theta key {:?} is not a pair",
                                k
                            )));
                        }
                        m.insert((parts[0].clone(), parts[1].clone()), v.clone());
                    }
                    m
                },
            };
            let report = match eq.tau {
                None => check_equivariant_functor(&functor)?,
                Some(tau) => check_equivariant_transformation(&EquivariantTransformation {
                    from: functor.clone(),
                    to: functor,
                    tau,
                })?,
            };
            Ok(finish(&report, json))
        }
        Command::ExactFib { file, dim, bound } => {
            let map = match load(file)? {
                Artifact::Map(f) => f.to_map()?,
                Artifact::Action(_) | Artifact::Torsor(_) => {
                    let a = match load(file)? {
                        Artifact::Action(f) => f.to_action()?,
                        Artifact::Torsor(f) => f.to_candidate(file)?.action.action,
                        _ => unreachable!(),
                    };
                    nerve_map(&canonical_projection(&a)?, (*bound).max(3))?
                }
                a => {
                    return Err(EngineError::Parse(format!(
                        "{:?} is a {} artifact, expected map, action, or torsor",
                        file,
                        a.kind()
                    )))
                }
            };
            let report = match dim {
                Some(n) => is_exact_fibration(&map, *n)?,
                None => is_simplicial_action(&map, 2, *bound)?,
            };
            Ok(finish(&report, json))
        }
        Command::TorsorCheck { file } => {
            let t = load_candidate(file)?;
            let report = check_torsor_axioms(&t)?;
            Ok(finish(&report, json))
        }
        Command::GlennCheck { file, bound } => {
            let t = load_candidate(file)?;
            let report = verify_glenn_torsor(&t, *bound)?;
            Ok(finish(&report, json))
        }
        Command::Cocycle { file, cap } => {
            let b = match load(file)? {
                Artifact::Bicategory(f) => f.to_bicategory()?,
                Artifact::Action(f) => action_bicategory(&f.to_action()?)?,
                Artifact::Torsor(f) => {
                    action_bicategory(&f.to_candidate(file)?.action.action)?
                }
                a => {
                    return Err(EngineError::Parse(format!(
                        "{:?} is a {} artifact, expected bicategory, action, or torsor",
                        file,
                        a.kind()
                    )))
                }
            };
            let nerve = duskin_nerve(&b, (*cap).max(3))?;
            let report = cocycle_check(&nerve, &b)?;
            Ok(finish(&report, json))
        }
        Command::Gen(g) => run_gen(g),
    }
}

fn validate_artifact(file: &Path) -> Result<VerificationReport> {
    Ok(match load(file)? {
        Artifact::Simplicial(f) => match f.to_augmented()? {
            Some(a) => validate_augmented(&a),
            None => validate_simplicial(&f.to_table()?),
        },
        Artifact::Bicategory(f) => validate_bicategory(&f.to_bicategory()?),
        Artifact::Action(f) => match f.to_fibered()? {
            Some(fa) => validate_fibered_action(&fa),
            None => validate_action(&f.to_action()?),
        },
        Artifact::Torsor(f) => validate_fibered_action(&f.to_candidate(file)?.action),
        Artifact::Map(f) => validate_simplicial_map(&f.to_map()?),
    })
}

fn run_classify(
    report: &ClassifyReport,
    require: Option<Require>,
    json: bool,
) -> Result<ExitCode> {
    let witness = report
        .grid
        .iter()
        .find_map(|((n, k), status)| match status {
            KanStatus::NotSatisfied { witness } => Some((*n, *k, witness.clone())),
            _ => None,
        });
    let label = match &report.label {
        Classification::Hypergroupoid(m) => {
            format!("{}-dimensional Kan hypergroupoid", m)
        }
        Classification::Kan => "Kan complex".into(),
        Classification::WeakKanExact => {
            let (n, k, _) = witness.as_ref().expect("non-Kan label has a witness");
            format!("weak Kan, exact inner horns; not Kan (witness n={},k={})", n, k)
        }
        Classification::None => match &witness {
            Some((n, k, _)) => format!("not weak Kan (witness n={},k={})", n, k),
            None => "not weak Kan".into(),
        },
    };
    let met = match require {
        None => true,
        Some(Require::Kan) => matches!(
            report.label,
            Classification::Kan | Classification::Hypergroupoid(_)
        ),
        Some(Require::Hypergroupoid) => {
            matches!(report.label, Classification::Hypergroupoid(_))
        }
    };
    if json {
        let grid: BTreeMap<String, &KanStatus> = report
            .grid
            .iter()
            .map(|((n, k), v)| (format!("{},{}", n, k), v))
            .collect();
        let value = serde_json::json!({
            "bound": report.bound,
            "label": label,
            "required_label_met": met,
            "grid": grid,
            "notes": report.notes,
        });
        print!("{}", to_canonical(&value));
    } else {
        println!("{}", label);
        if let Some((n, k, w)) = &witness {
            println!("  unfillable horn at n={}, k={}: {}", n, k, tuple_id(w));
        }
        for note in &report.notes {
            println!("  note: {}", note);
        }
    }
    Ok(if met { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Human-readable decoding of the tuple-encoded levels of a bicategory
/// nerve: each 2-simplex id maps to its labeled parts, each 3-simplex id to
/// its face quadruple.
fn decode_nerve(nerve: &SimplexTable) -> Result<serde_json::Value> {
    let mut two = BTreeMap::new();
    for id in nerve.level_or_empty(2) {
        let s = NerveSimplex2::parse(id)?;
        two.insert(
            id.clone(),
            serde_json::json!({
                "f01": s.f01, "f12": s.f12, "f02": s.f02, "beta": s.beta,
            }),
        );
    }
    let mut three = BTreeMap::new();
    for id in nerve.level_or_empty(3) {
        three.insert(id.clone(), nerve.boundary(3, id));
    }
    Ok(serde_json::json!({ "level2": two, "level3": three }))
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

fn two_group_preset(preset: TwoGroupPreset) -> Result<FiniteBicategory> {
    let (h, g, parity): (FiniteCategory, FiniteCategory, bool) = match preset {
        TwoGroupPreset::Z2To1 => (cyclic_group_category(2), cyclic_group_category(1), false),
        TwoGroupPreset::Z2Id => (cyclic_group_category(2), cyclic_group_category(2), false),
        TwoGroupPreset::Z4Parity => (cyclic_group_category(4), cyclic_group_category(2), true),
    };
    let t: BTreeMap<Id, Id> = h
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, y)| {
            let image = if parity {
                format!("g{}", i % 2)
            } else if g.morphisms.len() == 1 {
                "g0".to_string()
            } else {
                y.clone()
            };
            (y.clone(), image)
        })
        .collect();
    let mut action = BTreeMap::new();
    for x in &g.morphisms {
        for y in &h.morphisms {
            action.insert((x.clone(), y.clone()), y.clone());
        }
    }
    build_two_group(&h, &g, &t, &action)
}

/// Write a torsor candidate as a torsor file plus an action file beside it.
fn write_torsor(t: &TorsorCandidate, out: &Path) -> Result<()> {
    let stem = out
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| EngineError::Parse(format!("{:?}: no file stem", out)))?;
    let action_name = format!("{}.action.json", stem);
    let action_path = out
        .parent()
        .unwrap_or(Path::new("."))
        .join(&action_name);
    save(&action_path, &ActionFile::from_action(&t.action.action))?;
    save(out, &TorsorFile::from_candidate(t, &action_name))?;
    println!("wrote {} and {}", out.display(), action_path.display());
    Ok(())
}

fn run_gen(g: &GenCommand) -> Result<ExitCode> {
    match g {
        GenCommand::NerveOfGroup { order, cap, out } => {
            let nerve = cyclic_group_category(*order).nerve(*cap)?;
            emit(&SimplicialFile::from_table(&nerve), out)?;
        }
        GenCommand::TwoGroup { preset, out } => {
            let b = two_group_preset(*preset)?;
            emit(&BicategoryFile::from_bicategory(&b), out)?;
        }
        GenCommand::Ordinal { n, out } => {
            emit(&BicategoryFile::from_bicategory(&build_ordinal(*n)), out)?;
        }
        GenCommand::Span { universe, out } => {
            emit(
                &BicategoryFile::from_bicategory(&span_bicategory(*universe)),
                out,
            )?;
        }
        GenCommand::TrivialTorsor { order, out } => {
            let b = locally_discrete(&cyclic_group_category(*order));
            let t = build_trivial_torsor(&b)?;
            write_torsor(&t, out)?;
        }
        GenCommand::PullbackTorsor { order, out } => {
            let b = locally_discrete(&cyclic_group_category(*order));
            let trivial = build_trivial_torsor(&b)?;
            let base: Vec<Id> = vec!["m0".into(), "m1".into()];
            let f: BTreeMap<Id, Id> =
                base.iter().map(|m| (m.clone(), "*".to_string())).collect();
            let t = build_pullback_torsor(&trivial, &base, &f)?;
            write_torsor(&t, out)?;
        }
        GenCommand::DecalageOfNerve { order, cap, out } => {
            let nerve = cyclic_group_category(*order).nerve(*cap)?;
            let bundle = decalage(&nerve)?;
            emit(&SimplicialFile::from_augmented(&bundle.dec), out)?;
        }
        GenCommand::ProjectionMap { order, cap, out } => {
            let b = locally_discrete(&cyclic_group_category(*order));
            let t = build_trivial_torsor(&b)?;
            let proj = canonical_projection(&t.action.action)?;
            let map = nerve_map(&proj, (*cap).max(3))?;
            emit(&MapFile::from_map(&map), out)?;
        }
        GenCommand::Simplex { dim, cap, out } => {
            let cap = cap.unwrap_or(dim + 1);
            emit(
                &SimplicialFile::from_table(&standard_simplex(*dim, cap)),
                out,
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
