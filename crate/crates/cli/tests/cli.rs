use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn linkacq(dir: &Path, args: &[&str]) -> Output {
    linkacq_with_stdin(dir, args, "")
}

fn linkacq_with_stdin(dir: &Path, args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_linkacq"))
        .args(args)
        .current_dir(dir)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let o = linkacq(dir.path(), &["init", "."]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    dir
}

#[test]
fn parse_prints_the_diagram() {
    let ws = workspace();
    let o = linkacq(ws.path(), &["parse", "The condor eats the meat."]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        concat!(
            "           +---Os---+\n",
            "+-Ds+--Ss--+    +-Ds+\n",
            "|   |      |    |   |\n",
            "the condor eats the meat\n",
        )
    );
}

#[test]
fn parse_records_and_verify() {
    let ws = workspace();
    let o = linkacq(
        ws.path(),
        &[
            "parse",
            "--records",
            "--verify",
            "the",
            "condor",
            "eats",
            "meat",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("link:0:1:Ds\nlink:1:2:Ss\nlink:2:3:Os\n"));
    assert_eq!(stderr(&o), "");
}

#[test]
fn invalid_sentences_exit_1_with_line_numbers() {
    let ws = workspace();
    let o = linkacq(ws.path(), &["parse", "eats the"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o), "line 1: no valid linkage\n");

    let o = linkacq_with_stdin(
        ws.path(),
        &["parse"],
        "the condor eats meat\n# comment\nthe grub eats\n",
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("the condor eats meat\n"));
    assert_eq!(
        stderr(&o),
        "line 3: word 1 (`grub`) is not in the lexicon\n"
    );
}

#[test]
fn usage_errors_exit_2() {
    let ws = workspace();
    assert_eq!(
        linkacq(ws.path(), &["parse", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(linkacq(ws.path(), &["frobnicate"]).status.code(), Some(2));
    let o = linkacq(ws.path(), &["-w", "missing.conf", "parse", "the meat"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing.conf"));
    let o = linkacq(
        ws.path(),
        &["acquire", "--max-unknowns", "99", "the snipe eats meat"],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lexicon_errors_report_the_file_line() {
    let ws = workspace();
    fs::write(
        ws.path().join("lexicon.lex"),
        "the: (( ) (D))\neats: ((Ss) (O)\n",
    )
    .unwrap();
    let o = linkacq(ws.path(), &["parse", "the meat"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(
        err.contains("lexicon.lex") && err.contains("line 2"),
        "{err}"
    );
}

#[test]
fn acquire_prints_and_traces() {
    let ws = workspace();
    let o = linkacq(ws.path(), &["acquire", "--trace", "the snipe eats meat"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("snipe: ((D) (Ss))\n"), "{out}");
    assert!(out.contains("eliminate:3:meat:((Ds) (Ss)):"));
    assert!(out.ends_with("hypothesize:1:snipe:((D) (Ss)):inventory\n"));

    let o = linkacq(
        ws.path(),
        &["acquire", "--no-filter", "the snipe eats meat"],
    );
    assert_eq!(stdout(&o), "snipe: ((D) (Ss)) | ((D) (Os,Ss))\n");

    let o = linkacq(ws.path(), &["acquire", "eats snipe eats"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn acquire_write_is_idempotent() {
    let ws = workspace();
    let lexicon = ws.path().join("lexicon.lex");
    let o = linkacq(ws.path(), &["acquire", "--write", "the snipe eats meat"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "snipe: ((D) (Ss))\n");
    let first = fs::read(&lexicon).unwrap();
    assert!(String::from_utf8_lossy(&first).contains("snipe: ((D) (Ss))\n"));

    let o = linkacq(ws.path(), &["acquire", "--write", "the snipe eats meat"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(&lexicon).unwrap(), first);

    let o = linkacq(ws.path(), &["parse", "the snipe eats meat"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn train_then_classify() {
    let ws = workspace();
    let o = linkacq(ws.path(), &["train", "corpus.txt"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o)
        .contains("eats: ((Ss_animal) (O_food));support=2 | ((Ss_car) (O_gasoline));support=1\n"));
    assert!(ws.path().join("tagged.lex").exists());

    let o = linkacq(ws.path(), &["classify", "the snipe eats meat"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "snipe -> animal\n  via eats ((Ss_animal) (O_food)) because meat <= food\n"
    );
    let o = linkacq(ws.path(), &["classify", "the snipe eats gasoline"]);
    assert!(stdout(&o).starts_with("snipe -> car\n"));
}

#[test]
fn classify_without_training_has_no_evidence() {
    let ws = workspace();
    let o = linkacq(ws.path(), &["classify", "the snipe eats meat"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no known word linked to `snipe` has tagged usages"));
    let o = linkacq(ws.path(), &["classify", "the snipe eats the grub"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn train_refuses_unknown_words() {
    let ws = workspace();
    fs::write(
        ws.path().join("bad.txt"),
        "the condor eats meat\nthe snipe eats meat\n",
    )
    .unwrap();
    let o = linkacq(ws.path(), &["train", "bad.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.txt: line 2: unknown word `snipe`"));
    assert!(!ws.path().join("tagged.lex").exists());
}
