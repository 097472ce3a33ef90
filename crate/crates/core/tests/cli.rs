use std::fs;
use std::path::{Path, PathBuf};

use multicontract::cli::{run, EXIT_BOUND, EXIT_INPUT, EXIT_NO, EXIT_YES};
use tempfile::TempDir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("multicontract").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn generated(dir: &Path, name: &str, kind: &[&str]) -> String {
    let mut args = vec!["gen"];
    args.extend_from_slice(kind);
    let o = cli(&args);
    assert_eq!(o.code, EXIT_YES, "{}", o.stderr);
    write(dir, name, &o.stdout).display().to_string()
}

#[test]
fn gen_and_convert_round_trip() {
    let dir = TempDir::new().unwrap();
    let house = generated(dir.path(), "house.mg", &["house"]);
    let o = cli(&["convert", &house, "--to", "json"]);
    assert_eq!(o.code, EXIT_YES);
    let json = write(dir.path(), "house.json", &o.stdout)
        .display()
        .to_string();
    let back = cli(&["convert", &json, "--to", "mg"]);
    assert_eq!(back.stdout, fs::read_to_string(&house).unwrap());
    let dot = cli(&["convert", &house, "--to", "dot"]);
    assert!(dot.stdout.starts_with("graph"));
}

#[test]
fn contract_reports_yes_no_and_writes_model() {
    let dir = TempDir::new().unwrap();
    let house = generated(dir.path(), "house.mg", &["house"]);
    let t2 = generated(dir.path(), "t2.mg", &["theta", "2"]);
    let t3 = generated(dir.path(), "t3.mg", &["theta", "3"]);
    let t5 = generated(dir.path(), "t5.mg", &["theta", "5"]);
    let model = dir.path().join("model.json");
    let o = cli(&[
        "contract",
        &t2,
        &house,
        "--model-out",
        model.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_YES);
    assert!(fs::read_to_string(&model).unwrap().contains("branch_sets"));
    assert_eq!(cli(&["contract", &t3, &t5]).code, EXIT_NO);
    assert_eq!(cli(&["oracle", &t2, &house]).code, EXIT_YES);
    assert_eq!(cli(&["oracle", &t5, &house]).code, EXIT_NO);
}

#[test]
fn contract_respects_the_host_bound() {
    let dir = TempDir::new().unwrap();
    let k4 = generated(dir.path(), "k4.mg", &["complete", "4"]);
    let big = generated(dir.path(), "big.mg", &["path", "12"]);
    let o = cli(&["contract", &k4, &big, "--max-host", "9"]);
    assert_eq!(o.code, EXIT_BOUND);
    assert!(!o.stderr.is_empty());
}

#[test]
fn rooted_and_labeled_contraction() {
    let dir = TempDir::new().unwrap();
    let poset = write(dir.path(), "p.poset", "elem a\nelem b\nle a b\n");
    let host = write(
        dir.path(),
        "g.mg",
        "n=3\ne 0 1 1\ne 1 2 1\nroot 0\nroot 2\nlabel 1 b\n",
    );
    let edge = write(
        dir.path(),
        "h.mg",
        "n=2\ne 0 1 1\nroot 0\nroot 1\nlabel 1 a\n",
    );
    let (host, edge, poset) = (
        host.to_str().unwrap(),
        edge.to_str().unwrap(),
        poset.to_str().unwrap(),
    );
    assert_eq!(
        cli(&["contract", edge, host, "--roots", "--labels", poset]).code,
        EXIT_YES
    );
    let too_high = write(
        dir.path(),
        "hb.mg",
        "n=2\ne 0 1 1\nroot 0\nroot 1\nlabel 0 b\nlabel 1 b\n",
    );
    let o = cli(&[
        "contract",
        too_high.to_str().unwrap(),
        host,
        "--roots",
        "--labels",
        poset,
    ]);
    assert_eq!(o.code, EXIT_NO);
}

#[test]
fn bonds_classify_and_decompose() {
    let dir = TempDir::new().unwrap();
    let house = generated(dir.path(), "house.mg", &["house"]);
    let o = cli(&["classify", &house]);
    assert_eq!(o.stdout.trim(), "p=1 k=3");
    let o = cli(&["--json", "bonds", &house]);
    assert_eq!(o.code, EXIT_YES);
    serde_json::from_str::<serde_json::Value>(&o.stdout).unwrap();
    let o = cli(&["decompose", &house]);
    assert_eq!(o.code, EXIT_YES);
    assert!(o.stdout.contains("bag 0: 0 1 2 3"));
    assert!(o.stdout.contains("bag 1: 0 3 4"));
    assert_eq!(o.stdout.matches("cycle").count(), 2);
    let d = write(dir.path(), "house.td", &o.stdout)
        .display()
        .to_string();
    assert_eq!(cli(&["decompose", &house, "--check", &d]).code, EXIT_YES);
    let bad = write(
        dir.path(),
        "bad.td",
        "bag 0: 0 1 2\nbag 1: 0 3 4\ntree 0 1\n",
    );
    assert_eq!(
        cli(&["decompose", &house, "--check", bad.to_str().unwrap()]).code,
        EXIT_NO
    );
    let path = generated(dir.path(), "path.mg", &["path", "3"]);
    assert_eq!(cli(&["decompose", &path]).code, EXIT_NO);
}

#[test]
fn closure_and_attach() {
    let dir = TempDir::new().unwrap();
    let c4 = generated(dir.path(), "c4.mg", &["cycle", "4"]);
    let o = cli(&["closure", &c4, "--strict"]);
    assert_eq!(o.code, EXIT_YES);
    // C_3, θ_2 and K_1.
    assert_eq!(o.stdout.split("\n---\n").count(), 3);
    let host = generated(dir.path(), "k2.mg", &["path", "2"]);
    let piece = write(
        dir.path(),
        "piece.mg",
        "n=3\ne 0 2 1\ne 2 1 1\nroot 0\nroot 1\n",
    );
    let o = cli(&["attach", &host, piece.to_str().unwrap(), "--at", "0,1"]);
    assert_eq!(o.code, EXIT_YES);
    let tri = write(dir.path(), "tri.mg", &o.stdout);
    let c3 = generated(dir.path(), "c3.mg", &["cycle", "3"]);
    assert_eq!(
        cli(&["contract", &c3, tri.to_str().unwrap()]).code,
        EXIT_YES
    );
    assert_eq!(
        cli(&["contract", tri.to_str().unwrap(), &c3]).code,
        EXIT_YES
    );
}

#[test]
fn goodpair_is_one_based() {
    let dir = TempDir::new().unwrap();
    let seq = dir.path().join("seq");
    fs::create_dir(&seq).unwrap();
    generated(&seq, "1.mg", &["theta", "3"]);
    generated(&seq, "2.mg", &["theta", "2"]);
    generated(&seq, "3.mg", &["cycle", "3"]);
    let o = cli(&["goodpair", seq.to_str().unwrap()]);
    assert_eq!((o.code, o.stdout.trim()), (EXIT_YES, "2 3"));
    fs::remove_file(seq.join("3.mg")).unwrap();
    let o = cli(&["goodpair", seq.to_str().unwrap()]);
    assert_eq!((o.code, o.stdout.trim()), (EXIT_NO, "none"));
}

#[test]
fn antichain_commands() {
    let dir = TempDir::new().unwrap();
    generated(dir.path(), "house.mg", &["house"]);
    let fixture = write(
        dir.path(),
        "a.txt",
        "theta exclude 1,2,3\ncoclique exclude 1\nextra house.mg\n",
    );
    let f = fixture.to_str().unwrap();
    assert_eq!(cli(&["antichain", f]).code, EXIT_YES);
    assert_eq!(cli(&["canonical", f]).code, EXIT_YES);
    assert_eq!(cli(&["fundamental", f]).code, EXIT_YES);
    let o = cli(&["downset", f]);
    assert_eq!(o.code, EXIT_YES);
    assert!(!o.stdout.is_empty());
    let theta_only = write(
        dir.path(),
        "t.txt",
        "theta exclude none\ncoclique exclude all\n",
    );
    assert_eq!(
        cli(&["canonical", theta_only.to_str().unwrap()]).code,
        EXIT_NO
    );
    let clash = write(
        dir.path(),
        "c.txt",
        "theta exclude none\ncoclique exclude none\n",
    );
    assert_eq!(cli(&["antichain", clash.to_str().unwrap()]).code, EXIT_NO);
}

#[test]
fn probe_and_props() {
    let o = cli(&[
        "probe", "--p", "1", "--k", "2", "--len", "20", "--trials", "3", "--seed", "4",
    ]);
    assert_eq!(o.code, EXIT_YES, "{}{}", o.stdout, o.stderr);
    let o = cli(&["props", "--suite", "lemma3-cycle", "--trials", "5"]);
    assert_eq!(o.code, EXIT_YES, "{}{}", o.stdout, o.stderr);
    let again = cli(&["props", "--suite", "lemma3-cycle", "--trials", "5"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn input_errors_exit_with_code_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.mg", "n=2\ne 0 0 1\n");
    let o = cli(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("bad.mg"));
    assert_eq!(cli(&["classify", "/nonexistent/g.mg"]).code, EXIT_INPUT);
    assert_eq!(cli(&["props", "--suite", "no-such-suite"]).code, EXIT_INPUT);
    assert_eq!(cli(&["gen", "theta"]).code, EXIT_INPUT);
}
