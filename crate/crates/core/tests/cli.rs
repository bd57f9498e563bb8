mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use snacs::corpus::{serialize_corpus, Annotation};
use tempfile::TempDir;

const MINI: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/mini.conllu");

fn snacs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snacs"))
        .args(args)
        .env_remove("SNACS_WORDNET")
        .env_remove("SNACS_ROGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_splits(dir: &Path) -> [PathBuf; 3] {
    let (train, dev, test) = common::splits(11);
    let paths = ["train", "dev", "test"].map(|n| dir.join(format!("{n}.conllu")));
    for (p, s) in paths.iter().zip([train, dev, test]) {
        fs::write(p, serialize_corpus(&s)).unwrap();
    }
    paths
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(snacs(&["validate", MINI]).status.code(), Some(0));

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.conllu");
    fs::write(&bad, fs::read_to_string(MINI).unwrap().replace("p.Duration|p.Duration", "p.Duration|p.Dur")).unwrap();
    let o = snacs(&["validate", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Dur"));

    let o = snacs(&["validate", s(&dir.path().join("missing.conllu"))]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(snacs(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn stats_of_empty_file_are_zero() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.conllu");
    fs::write(&empty, "").unwrap();
    let o = snacs(&["stats", s(&empty)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Annotated targets: 0\n"));
    assert!(text.lines().all(|l| l.ends_with(": 0")));
    assert!(stdout(&snacs(&["stats", MINI])).contains("Possessive pronoun: 1\n"));
}

#[test]
fn coarsen_labels_and_corpus() {
    let o = snacs(&["coarsen", "--depth", "1", "StartTime", "Possessor"]);
    assert_eq!(stdout(&o), "StartTime\tCircumstance\nPossessor\tConfiguration\n");
    assert_eq!(snacs(&["coarsen", "--depth", "5", "Locus"]).status.code(), Some(2));
    assert_eq!(snacs(&["coarsen", "--depth", "2", "Nowhere"]).status.code(), Some(1));

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.conllu");
    assert!(snacs(&["coarsen", "--depth", "1", "--corpus", MINI, "-o", s(&out)]).status.success());
    let c = snacs::corpus::read_corpus_file(&out).unwrap();
    let labels: Vec<String> = c
        .iter()
        .flat_map(|x| x.expressions.iter())
        .filter_map(|e| match &e.annotation {
            Some(Annotation::Construal(c)) => Some(c.role.clone()),
            _ => None,
        })
        .collect();
    assert!(labels.iter().all(|l| ["Circumstance", "Participant", "Configuration"].contains(&l.as_str())));
}

#[test]
fn train_predict_evaluate_round_trip() {
    let dir = TempDir::new().unwrap();
    let [train, dev, test] = write_splits(dir.path());
    let model = dir.path().join("m.bin");
    let o = snacs(&["train", "--train", s(&train), "--dev", s(&dev), "--model", s(&model), "--classifier", "svm", "--c", "0.1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let pred = dir.path().join("pred.tsv");
    assert!(snacs(&["predict", "--model", s(&model), s(&test), "-o", s(&pred)]).status.success());
    let out = dir.path().join("eval");
    let o = snacs(&["evaluate", "--gold", s(&test), "--pred", s(&pred), "--gold-id", "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("Gold targets"));
    for f in ["report.txt", "report.kv", "report.json", "confusion_role.tsv", "confusion_function.tsv"] {
        assert!(out.join(f).exists(), "{f}");
    }

    let auto = dir.path().join("auto.tsv");
    assert!(snacs(&["predict", "--model", s(&model), s(&test), "--auto-id", "--mode", "recall", "-o", s(&auto)]).status.success());
    let o = snacs(&["evaluate", "--gold", s(&test), "--pred", s(&auto), "--depth", "2"]);
    assert!(stdout(&o).contains("Identified targets"));
}

#[test]
fn resource_mismatch_is_reported() {
    let wn = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/wordnet");
    let dir = TempDir::new().unwrap();
    let [train, _, test] = write_splits(dir.path());
    let model = dir.path().join("m.bin");
    let o = snacs(&["train", "--train", s(&train), "--model", s(&model), "--c", "1", "--wordnet", wn]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // the model remembers where its resources were
    let pred = dir.path().join("p.tsv");
    assert!(snacs(&["predict", "--model", s(&model), s(&test), "-o", s(&pred)]).status.success());
    let moved = dir.path().join("gone");
    let o = snacs(&["predict", "--model", s(&model), s(&test), "-o", s(&pred), "--wordnet", s(&moved)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pipeline_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let [train, dev, test] = write_splits(dir.path());
    let run = |out: &str| {
        let out = dir.path().join(out);
        let o = snacs(&["pipeline", "--train", s(&train), "--dev", s(&dev), "--test", s(&test), "--out", s(&out), "--seed", "3"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        (stdout(&o), fs::read(out.join("report.json")).unwrap(), fs::read(out.join("model.bin")).unwrap())
    };
    assert_eq!(run("a"), run("b"));

    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "classifier = \"mfs\"\ndepth = 1\n").unwrap();
    let o = snacs(&["pipeline", "--train", s(&train), "--dev", s(&dev), "--test", s(&test), "--config", s(&cfg)]);
    let text = stdout(&o);
    assert!(text.starts_with("System: mfs"));
    assert!(text.contains("depth-1") && !text.contains("exact"));
    // flags win over the file
    let o = snacs(&["pipeline", "--train", s(&train), "--dev", s(&dev), "--test", s(&test), "--config", s(&cfg), "--classifier", "svm"]);
    assert!(stdout(&o).starts_with("System: svm"));
}

#[test]
fn identify_and_lexicons() {
    let dir = TempDir::new().unwrap();
    let [train, _, test] = write_splits(dir.path());
    let lex = dir.path().join("lex.txt");
    assert!(snacs(&["lexicons", s(&train), "-o", s(&lex)]).status.success());
    let o = snacs(&["identify", s(&test), "--lexicons", s(&lex), "--out", s(&dir.path().join("id"))]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("P "));
    assert!(dir.path().join("id/targets.tsv").exists());
}

#[test]
fn agree_over_three_annotators() {
    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(MINI).unwrap();
    let a = dir.path().join("a.conllu");
    let b = dir.path().join("b.conllu");
    let c = dir.path().join("c.conllu");
    fs::write(&a, &text).unwrap();
    fs::write(&b, text.replace("p.Locus|p.Locus", "p.Goal|p.Goal")).unwrap();
    fs::write(&c, &text).unwrap();
    let out = dir.path().join("agree");
    let o = snacs(&["agree", s(&a), s(&b), s(&c), "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = stdout(&o);
    assert!(t.contains("Items: 6 (2 excluded"), "{t}");
    assert!(out.join("pairwise_role_depth4.tsv").exists());
    assert!(out.join("confusions_function_depth1.tsv").exists());
}

#[test]
fn import_streusle_json() {
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("s.json");
    fs::write(
        &json,
        r##"[{"sent_id": "x-001-0001", "toks": [
            {"#": 1, "word": "at", "lemma": "at", "upos": "ADP", "xpos": "IN", "head": 2, "deprel": "case"},
            {"#": 2, "word": "home", "lemma": "home", "upos": "NOUN", "xpos": "NN", "head": 0, "deprel": "root"}],
          "swes": {"1": {"lexcat": "P", "ss": "p.Locus", "ss2": "p.Locus", "toknums": [1]}}, "smwes": {}}]"##,
    )
    .unwrap();
    let out = dir.path().join("s.conllu");
    assert!(snacs(&["import", s(&json), "-o", s(&out)]).status.success());
    assert_eq!(snacs(&["validate", s(&out)]).status.code(), Some(0));
}
