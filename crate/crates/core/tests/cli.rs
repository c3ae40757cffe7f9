use std::process::{Command, Output};

fn sttilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sttilt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn alg_show_reports() {
    let o = sttilt(&["alg", "show", "D4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dim 18"));
    assert!(text.contains("Cartan matrix"));
    let o = sttilt(&["alg", "show", "A_1"]);
    assert!(stdout(&o).contains("dim 1\n"));
    let o = sttilt(&["alg", "show", "S(2,11)_p2"]);
    assert!(stdout(&o).contains("blocks: 3"));
}

#[test]
fn unknown_algebra_is_a_usage_error() {
    let o = sttilt(&["alg", "show", "Nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown algebra"));
    assert_eq!(sttilt(&["stt", "D3", "--budget", "0"]).status.code(), Some(2));
    assert_eq!(sttilt(&["stt", "D3", "--char", "4"]).status.code(), Some(2));
    assert_eq!(sttilt(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn build_failure_exit_code() {
    let dir = std::env::temp_dir().join(format!("sttilt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("loop.json");
    std::fs::write(
        &file,
        r#"{"name":"loop","cap":3,"vertices":["1"],"arrows":[{"name":"x","from":"1","to":"1"}],"relations":[]}"#,
    )
    .unwrap();
    let o = sttilt(&["alg", "show", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn stt_summary_and_exit_codes() {
    let o = sttilt(&["stt", "D3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("nodes=28 status=complete"));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 28);

    let o = sttilt(&["stt", "Example26", "--format", "text"]);
    assert!(stdout(&o).contains("nodes=6 status=complete strata=[1,2,3]"));

    let o = sttilt(&["stt", "L5", "--budget", "500"]);
    assert_eq!(o.status.code(), Some(10));
    assert!(stderr(&o).contains("nodes=500 status=budget-exceeded"));
}

#[test]
fn stt_output_is_deterministic_across_job_counts() {
    let one = sttilt(&["stt", "H4", "--jobs", "1"]);
    let four = sttilt(&["stt", "H4", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
    let one = sttilt(&["stt", "D3", "--format", "dot", "--jobs", "1"]);
    let four = sttilt(&["stt", "D3", "--format", "dot", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert!(stdout(&one).starts_with("digraph"));
    assert!(stdout(&one).contains("rank=same"));
}

#[test]
fn stt_writes_to_file() {
    let dir = std::env::temp_dir().join(format!("sttilt-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.json");
    let o = sttilt(&["stt", "Example26", "--out", path.to_str().unwrap(), "--strata"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("nodes=6"));
    assert!(stdout(&o).contains("a_2 = 3"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "complete");
    assert_eq!(v["algebra"], "Example26");
}

#[test]
fn screen_reports_the_witness() {
    let o = sttilt(&["screen", "quiver", "s2_10_p2.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("INFINITE via Q1"));
    let o = sttilt(&["screen", "quiver", "D3"]);
    assert!(stdout(&o).contains("no quiver-shape obstruction"));
}

#[test]
fn schur_subcommands() {
    let o = sttilt(&["schur", "classify", "--p", "3", "--n", "3", "--r", "7"]);
    assert!(stdout(&o).starts_with("tame → τ-tilting finite"));
    let o = sttilt(&["schur", "pcore", "--p", "2", "--partition", "6,5"]);
    assert_eq!(stdout(&o), "2,1\n");
    let o = sttilt(&["schur", "character", "--p", "2", "--r", "11", "--k", "5"]);
    assert!(stdout(&o).contains("chi(10,1) + chi(8,3) + chi(6,5)"));
    let o = sttilt(&["schur", "quiver", "--p", "2", "--r", "10", "--dot"]);
    assert!(stdout(&o).contains("\"6,4\" -- \"10\"") || stdout(&o).contains("\"10\" -- \"6,4\""));
    let o = sttilt(&["schur", "table", "--p", "2", "--nmax", "3", "--rmax", "8"]);
    let text = stdout(&o);
    assert!(text.contains("W+") && text.contains("W?"));
    assert_eq!(sttilt(&["schur", "classify", "--p", "4", "--n", "2", "--r", "3"]).status.code(), Some(2));
}
