//! End-to-end tests of the command-line driver: exit-code contract,
//! canonical serialization, determinism, and closed-loop generator checks.

use std::path::Path;
use std::process::{Command, Output};

// the test only exercises a slice of the shared format module
#[allow(dead_code)]
#[path = "../src/format.rs"]
mod format;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_nervekit")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("driver runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        stdout(out),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn repo_example(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../examples")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn shipped_group_nerve_classifies_as_a_one_dimensional_hypergroupoid() {
    let out = run(&["classify", &repo_example("nerve_z2.json"), "--bound", "4"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("1-dimensional Kan hypergroupoid"));
}

#[test]
fn shipped_interval_is_weak_kan_and_fails_only_under_require_kan() {
    let delta1 = repo_example("delta1.json");
    let out = run(&["classify", &delta1]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("weak Kan, exact inner horns; not Kan (witness n=2,k=0)"));

    let out = run(&["classify", &delta1, "--require", "kan"]);
    assert_exit(&out, 1);
}

#[test]
fn shipped_trivial_torsor_passes_all_three_nerve_checks() {
    let out = run(&["glenn-check", &repo_example("trivial_torsor_z2.json")]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    for note in [
        "projection exact fibration: pass",
        "asphericity: pass",
        "level-2 determination: pass",
    ] {
        assert!(text.contains(note), "missing {:?} in {}", note, text);
    }
}

#[test]
fn unknown_subcommands_and_unreadable_files_exit_two() {
    assert_exit(&run(&["no-such-command"]), 2);
    assert_exit(&run(&["classify", "/no/such/file.json"]), 2);

    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"definitely\": \"not an artifact\"}").unwrap();
    assert_exit(&run(&["validate", junk.to_str().unwrap()]), 2);
}

#[test]
fn dangling_face_ids_are_rejected_by_name() {
    let text = std::fs::read_to_string(repo_example("nerve_z2.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["face"][0]["[\"g0\"]"][0] = serde_json::json!("bogus");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_exit(&out, 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn every_generator_output_passes_validation() {
    let dir = tempfile::tempdir().unwrap();
    let gens: &[&[&str]] = &[
        &["gen", "nerve-of-group", "--order", "3", "--cap", "3"],
        &["gen", "two-group", "--preset", "z2-to-1"],
        &["gen", "two-group", "--preset", "z2-id"],
        &["gen", "two-group", "--preset", "z4-parity"],
        &["gen", "ordinal", "--n", "2"],
        &["gen", "span", "--universe", "2"],
        &["gen", "trivial-torsor", "--order", "3"],
        &["gen", "pullback-torsor", "--order", "2"],
        &["gen", "decalage-of-nerve", "--order", "2"],
        &["gen", "projection-map", "--order", "2"],
        &["gen", "simplex", "--dim", "2"],
    ];
    for (i, gen) in gens.iter().enumerate() {
        let path = dir.path().join(format!("artifact_{}.json", i));
        let mut args: Vec<&str> = gen.to_vec();
        args.push("--out");
        args.push(path.to_str().unwrap());
        assert_exit(&run(&args), 0);
        let out = run(&["validate", path.to_str().unwrap()]);
        assert_exit(&out, 0);
    }
}

#[test]
fn generators_and_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        assert_exit(
            &run(&[
                "gen",
                "nerve-of-group",
                "--order",
                "4",
                "--out",
                path.to_str().unwrap(),
            ]),
            0,
        );
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let first = run(&["classify", a.to_str().unwrap(), "--json"]);
    let second = run(&["classify", a.to_str().unwrap(), "--json"]);
    assert_exit(&first, 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn loading_then_saving_reproduces_every_artifact_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let torsor = dir.path().join("t.json");
    assert_exit(
        &run(&[
            "gen",
            "trivial-torsor",
            "--order",
            "2",
            "--out",
            torsor.to_str().unwrap(),
        ]),
        0,
    );
    let map = dir.path().join("m.json");
    assert_exit(
        &run(&[
            "gen",
            "projection-map",
            "--order",
            "2",
            "--out",
            map.to_str().unwrap(),
        ]),
        0,
    );
    let paths = [
        repo_example("nerve_z2.json"),
        repo_example("delta1.json"),
        repo_example("trivial_torsor_z2.json"),
        repo_example("trivial_torsor_z2.action.json"),
        torsor.to_str().unwrap().to_string(),
        dir.path().join("t.action.json").to_str().unwrap().to_string(),
        map.to_str().unwrap().to_string(),
    ];
    for path in paths {
        let text = std::fs::read_to_string(&path).unwrap();
        let rewritten = match format::detect(&text).unwrap() {
            format::Artifact::Simplicial(f) => format::to_canonical(&f),
            format::Artifact::Bicategory(f) => format::to_canonical(&f),
            format::Artifact::Action(f) => format::to_canonical(&f),
            format::Artifact::Torsor(f) => format::to_canonical(&f),
            format::Artifact::Map(f) => format::to_canonical(&f),
        };
        assert_eq!(text, rewritten, "round trip differs for {}", path);
    }
}

#[test]
fn json_reports_are_machine_readable() {
    let out = run(&[
        "glenn-check",
        &repo_example("trivial_torsor_z2.json"),
        "--json",
    ]);
    assert_exit(&out, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], serde_json::Value::Bool(true));
    assert!(report["notes"].as_array().unwrap().len() >= 3);

    let out = run(&["classify", &repo_example("delta1.json"), "--json"]);
    assert_exit(&out, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["label"].as_str().unwrap().contains("weak Kan"));
    assert!(report["grid"]["2,0"]["NotSatisfied"].is_object());
}

#[test]
fn bound_environment_variable_sets_the_default() {
    let out = Command::new(bin())
        .args(["classify", &repo_example("nerve_z2.json"), "--json"])
        .env("NERVEKIT_BOUND", "3")
        .output()
        .unwrap();
    assert_exit(&out, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["bound"], serde_json::json!(3));
}

#[test]
fn exact_fibration_checks_run_on_standalone_map_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("m.json");
    assert_exit(
        &run(&[
            "gen",
            "projection-map",
            "--order",
            "3",
            "--out",
            map.to_str().unwrap(),
        ]),
        0,
    );
    for dim in ["2", "3"] {
        assert_exit(&run(&["exact-fib", map.to_str().unwrap(), "--dim", dim]), 0);
    }
    assert_exit(&run(&["exact-fib", map.to_str().unwrap(), "--bound", "3"]), 0);
}

#[test]
fn pipeline_commands_compose_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let tg = dir.path().join("tg.json");
    let nerve = dir.path().join("nerve.json");
    let dec = dir.path().join("dec.json");
    assert_exit(
        &run(&[
            "gen",
            "two-group",
            "--preset",
            "z2-to-1",
            "--out",
            tg.to_str().unwrap(),
        ]),
        0,
    );
    assert_exit(
        &run(&[
            "nerve",
            tg.to_str().unwrap(),
            "--out",
            nerve.to_str().unwrap(),
        ]),
        0,
    );
    // the nerve of a 2-group is a 2-dimensional hypergroupoid
    let out = run(&["classify", nerve.to_str().unwrap(), "--require", "hypergroupoid"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("2-dimensional Kan hypergroupoid"));
    // the tuple-decoding sidecar is written next to the nerve
    let sidecar = dir.path().join("nerve.decode.json");
    let decoded: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(sidecar).unwrap()).unwrap();
    assert!(decoded["level2"].is_object() && decoded["level3"].is_object());
    // the shift of the nerve is augmented and contractible
    assert_exit(
        &run(&["dec", nerve.to_str().unwrap(), "--out", dec.to_str().unwrap()]),
        0,
    );
    assert_exit(&run(&["contraction", dec.to_str().unwrap()]), 0);
    assert_exit(&run(&["cocycle", tg.to_str().unwrap()]), 0);
}

#[test]
fn identity_equivariant_block_passes_and_a_twisted_one_fails() {
    let dir = tempfile::tempdir().unwrap();
    let torsor = dir.path().join("t.json");
    assert_exit(
        &run(&[
            "gen",
            "trivial-torsor",
            "--order",
            "2",
            "--out",
            torsor.to_str().unwrap(),
        ]),
        0,
    );
    let action_path = dir.path().join("t.action.json");
    let text = std::fs::read_to_string(&action_path).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();

    // identity endofunctor: object and morphism maps are identities and
    // every structure cell is the identity morphism on p ◁ f
    let objects: Vec<String> = doc["category"]["objects"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let morphisms: Vec<String> = doc["category"]["morphisms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["id"].as_str().unwrap().to_string())
        .collect();
    let idmap = |ids: &[String]| -> serde_json::Value {
        ids.iter()
            .map(|x| (x.clone(), serde_json::json!(x)))
            .collect::<serde_json::Map<String, serde_json::Value>>()
            .into()
    };
    let ids = doc["category"]["id"].clone();
    let act0 = doc["act0"].as_object().unwrap().clone();
    let theta: serde_json::Map<String, serde_json::Value> = act0
        .iter()
        .map(|(k, target)| (k.clone(), ids[target.as_str().unwrap()].clone()))
        .collect();
    doc["equivariant"] = serde_json::json!({
        "f_obj": idmap(&objects),
        "f_mor": idmap(&morphisms),
        "theta": theta,
    });
    let with_block = dir.path().join("equivariant.json");
    std::fs::write(&with_block, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    assert_exit(&run(&["equivariant", with_block.to_str().unwrap()]), 0);

    // swapping the object map without touching the structure cells breaks
    // the momentum compatibility or naturality axioms
    let swapped: serde_json::Map<String, serde_json::Value> = objects
        .iter()
        .zip(objects.iter().rev())
        .map(|(a, b)| (a.clone(), serde_json::json!(b)))
        .collect();
    doc["equivariant"]["f_obj"] = swapped.into();
    let twisted = dir.path().join("twisted.json");
    std::fs::write(&twisted, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let out = run(&["equivariant", twisted.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
