use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_boso-kit"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn boso(args: &[&str]) -> Output {
    exe().args(args).output().expect("spawn boso-kit")
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/run-report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn reports_match_schema() {
    let v = validator();
    let jobs: Vec<Vec<String>> = vec![
        vec!["examples".into(), "quantum-line".into(), "--n".into(), "3".into(), "--N".into(), "6".into()],
        vec!["examples".into(), "taft".into(), "--n".into(), "3".into(), "--N".into(), "4".into()],
        vec!["examples".into(), "qls".into(), "--orders".into(), "2,3".into(), "--N".into(), "3".into()],
        vec!["examples".into(), "cartan-check".into()],
        vec!["examples".into(), "jordan".into(), "--p".into(), "3".into()],
        vec!["examples".into(), "quantum-line-smash".into(), "--n".into(), "2".into(), "--N".into(), "4".into()],
        vec!["verify-seq".into(), "qls-bad".into()],
        vec!["verify-seq".into(), "broken-equivariance".into()],
        vec!["smash".into(), "qline-seq".into(), "laurent-seq".into(), "n=3".into()],
        vec!["smash".into(), "qline-seq".into(), "laurent-seq".into(), "n=3".into(), "--q-order".into(), "6".into()],
        vec!["verify-ttp".into(), "perturbed-flip".into()],
        vec!["verify-ttp".into(), "qline-laurent".into()],
        vec!["ext".into(), config("quantum-line.toml").display().to_string()],
        vec!["verify-seq".into(), config("qline-seq.toml").display().to_string()],
        vec!["smash".into(), config("qline-laurent-smash.toml").display().to_string()],
        vec!["verify-ttp".into(), config("laurent-ttp.toml").display().to_string()],
    ];
    for job in &jobs {
        let out = exe().args(job).output().unwrap();
        assert!(matches!(out.status.code(), Some(0 | 1)), "{job:?}: {}", String::from_utf8_lossy(&out.stderr));
        let report = json(&out);
        let errors: Vec<String> = v.iter_errors(&report).map(|e| format!("{} at {}", e, e.instance_path())).collect();
        assert!(errors.is_empty(), "{job:?}: {errors:?}");
        assert_eq!(report["passed"], out.status.code() == Some(0));
    }
}

#[test]
fn schema_rejects_failure_without_witness() {
    let out = boso(&["verify-seq", "qls-bad"]);
    let mut report = json(&out);
    let entries = report["body"]["report"]["entries"].as_array_mut().unwrap();
    let failed = entries.iter_mut().find(|e| e["status"] == "failed").unwrap();
    failed.as_object_mut().unwrap().remove("witness");
    assert!(!validator().is_valid(&report));
}

#[test]
fn exit_codes() {
    assert_eq!(boso(&["verify-seq", "qline-seq", "n=3"]).status.code(), Some(0));
    assert_eq!(boso(&["verify-seq", "qline-seq-corrupted"]).status.code(), Some(1));
    assert_eq!(boso(&["verify-ttp", "perturbed-flip"]).status.code(), Some(1));
    assert_eq!(boso(&["verify-seq", "no-such-sequence"]).status.code(), Some(2));
    assert_eq!(boso(&["examples", "taft", "--output", "xml"]).status.code(), Some(2));
    assert_eq!(boso(&["smash", "qline-seq"]).status.code(), Some(2));
}

#[test]
fn inhomogeneous_relation_is_an_input_error() {
    let out = boso(&["ext", config("inhomogeneous.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not homogeneous"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn toml_syntax_errors_report_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    std::fs::write(&path, "field = \"Q\"\n[algebra.A\ngenerators = [\"X:1\"]\n").unwrap();
    let out = boso(&["ext", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn output_block_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("dims.csv");
    let path = dir.path().join("job.toml");
    let text = format!(
        "field = \"Q\"\n\n[bounds]\nN = 4\n\n[algebra.A]\ngenerators = [\"X:1\"]\nrelations = [\"X^2\"]\n\n[ext]\nalgebra = \"A\"\n\n[output]\nformat = \"csv\"\npath = {:?}\n",
        target.display().to_string()
    );
    std::fs::write(&path, text).unwrap();
    let out = boso(&["ext", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), "degree,dim\n0,1\n1,1\n2,1\n3,1\n4,1\n");
}

#[test]
fn csv_and_tex_outputs() {
    let out = boso(&["ext", config("quantum-line.toml").to_str().unwrap(), "--output", "csv", "--N", "3"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "degree,dim,invariant_dim\n0,1,1\n1,1,0\n2,1,1\n3,1,0\n");
    let out = boso(&["examples", "taft", "--n", "2", "--N", "3", "--output", "tex"]);
    let tex = String::from_utf8_lossy(&out.stdout);
    assert!(tex.starts_with("\\begin{tabular}{l|cccc}"), "{tex}");
    assert!(tex.contains("$\\dim \\mathrm{Ext}^n$ & 1 & 0 & 1 & 0 \\\\"), "{tex}");
    let out = boso(&["verify-ttp", "perturbed-flip", "--output", "csv"]);
    let csv = String::from_utf8_lossy(&out.stdout);
    assert!(csv.starts_with("report,label,status,detail\n"));
    assert!(csv.contains("validation,associativity,failed,"));
}

#[test]
fn shipped_configs_run() {
    for (cmd, file, code) in [
        ("ext", "quantum-line.toml", 0),
        ("ext", "sweedler.toml", 0),
        ("verify-seq", "qline-seq.toml", 0),
        ("verify-seq", "qline-laurent-smash.toml", 0),
        ("smash", "qline-laurent-smash.toml", 0),
        ("verify-ttp", "perturbed-flip.toml", 1),
        ("verify-ttp", "laurent-ttp.toml", 0),
    ] {
        let out = boso(&[cmd, config(file).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(code), "{cmd} {file}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn inputs_are_echoed() {
    let r = json(&boso(&["examples", "quantum-line", "--n", "2", "--N", "3", "--max-ideg", "8"]));
    assert_eq!(r["command"], "examples");
    assert_eq!(r["inputs"]["n"], "2");
    assert_eq!(r["inputs"]["N"], "3");
    assert_eq!(r["inputs"]["max_ideg"], "8");
    assert_eq!(r["engine"]["name"], "boso");
    assert_eq!(r["seed"], 0x7a75);
}
