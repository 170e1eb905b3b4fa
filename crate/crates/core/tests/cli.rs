mod common;

use common::{canonicalize, corpus, run_cli};
use sympwitt::document::{parse_document, print_matrix};
use sympwitt::matrix::Matrix;
use sympwitt::rings::{Ideal, Ring};
use sympwitt::witt::AltRep;

#[test]
fn corpus_round_trips_through_the_binary() {
    let docs = corpus();
    assert_eq!(docs.len(), 30);
    for doc in &docs {
        let once = canonicalize(doc);
        let twice = canonicalize(&once);
        assert_eq!(once, twice, "canonical form drifted for:\n{doc}");
    }
}

#[test]
fn suite_runs_are_byte_identical_for_a_fixed_seed() {
    let (a, code_a) = run_cli(&["suite", "esd", "--seed", "11", "--trials", "20"], "");
    let (b, code_b) = run_cli(&["suite", "esd", "--seed", "11", "--trials", "20"], "");
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(a, b);

    let (a, code_a) = run_cli(&["--format", "json", "suite", "all", "--seed", "3", "--trials", "4"], "");
    let (b, code_b) = run_cli(&["--format", "json", "suite", "all", "--seed", "3", "--trials", "4"], "");
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(a, b);
    assert!(!a.contains("elapsed"), "suite reports must not carry timing");
}

#[test]
fn exit_codes_follow_the_contract() {
    let chi = "ring Z; matrix A = [[0,1],[-1,0]];";
    let (_, code) = run_cli(&["pfaffian", "A"], chi);
    assert_eq!(code, 0);

    let (_, code) = run_cli(&["predicate", "A", "identity"], chi);
    assert_eq!(code, 1, "failed predicate is a verification failure");

    let (_, code) = run_cli(&["det", "B"], "ring Z; matrix B = [[1,2],[3]];");
    assert_eq!(code, 2, "ragged matrix is a parse error");

    let (_, code) = run_cli(&["det", "missing"], "ring Z;");
    assert_eq!(code, 2, "unknown binding is a usage error");

    let (out, code) = run_cli(&["--format", "json", "suite", "nonesuch"], "");
    assert_eq!(code, 1);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["error"]["code"], "Unsupported");
}

#[test]
fn reports_are_single_json_objects() {
    let doc = "ring Z; matrix A = [[0,1],[-1,0]]; word w = sp 4 : gen(1, 2, 3);";
    for args in [
        vec!["--format", "json", "pfaffian", "A"],
        vec!["--format", "json", "det", "A"],
        vec!["--format", "json", "eval", "w"],
        vec!["--format", "json", "predicate", "A", "alternating"],
    ] {
        let (out, code) = run_cli(&args, doc);
        assert_eq!(code, 0, "{args:?}");
        let report: serde_json::Value = serde_json::from_str(&out).expect("one json object");
        assert_eq!(report["ok"], true);
        assert!(report["elapsed_ms"].is_number(), "command reports carry timing");
    }
}

#[test]
fn whitehead_homotopy_and_completion_commands_verify() {
    let doc = "ring Z;\nideal I = <6>;\nmatrix G = [[1, 1], [1, 2]];\nrow v = [3, 5, 0] witness [2, -1, 0];\nrow r = [7, 6, 12] witness [1, -1, 0] mod I;\nword w = sp 4 : gen(1, 2, 3) gen(3, 1, 2);";
    for args in [
        vec!["whitehead", "G"],
        vec!["homotopy", "w"],
        vec!["reduce-principal", "r"],
        vec!["complete", "v", "--budget", "300"],
        vec!["complete", "r", "--budget", "5000"],
        vec!["hyperbolic", "G"],
    ] {
        let (out, code) = run_cli(&args, doc);
        assert_eq!(code, 0, "{args:?} failed:\n{out}");
        assert!(!out.contains("FAIL"), "{args:?}:\n{out}");
    }
}

#[test]
fn lift_commands_verify_through_the_binary() {
    let doc = "ring Zmod 8; ideal I = <4>; row v = [5, 4, 4] witness [5, 1, 1] mod I;";
    let (out, code) = run_cli(&["lift-row", "v", "--vaserstein", "[4, 0, 0]"], doc);
    assert_eq!(code, 0, "{out}");

    let (out, code) = run_cli(&["lift-row", "v"], doc);
    assert_eq!(code, 1, "witness search must refuse over a non-domain:\n{out}");

    let doc = "ring Z; ideal I = <6>; row r = [7, 6, 12] witness [1, -1, 0] mod I;";
    let (out, code) = run_cli(&["lift-row", "r"], doc);
    assert_eq!(code, 0, "solver handles the Euclidean case:\n{out}");

    let doc = "ring Z; ideal I = <6>; matrix M = [[1, 6, 0, -72], [0, 1, 0, -12], [12, 0, 1, 0], [0, 0, 0, 1]];";
    let (out, code) = run_cli(&["lift-matrix", "M", "--ideal", "I", "--group", "sp"], doc);
    assert_eq!(code, 0, "{out}");
    let (out, code) = run_cli(&["project", "E"], "ring excision Z <6>; matrix E = [[(1|6), (0|0)], [(0|6), (1|0)]];");
    assert_eq!(code, 0);
    assert!(out.contains("[[7, 0], [6, 1]]"), "{out}");
}

#[test]
fn equivalence_and_block_extraction_through_the_binary() {
    let m8 = Ring::integers_mod(8).unwrap();
    let i4 = Ideal::principal(m8.from_i64(4)).unwrap();
    let theta1 = AltRep::standard(&m8, 2, Some(i4.clone())).unwrap();
    let beta0 = parse_document("ring Zmod 8; word b = sp 4 : gen(1, 2, 4) gen(3, 4, 4);")
        .unwrap()
        .get("b")
        .cloned()
        .map(|v| match v {
            sympwitt::document::Value::Word(w) => w.eval().unwrap(),
            _ => unreachable!(),
        })
        .unwrap();
    let theta2 = AltRep::new(theta1.matrix().congruence(&beta0).unwrap(), Some(i4)).unwrap();
    let delta = Matrix::identity(&m8, 2).perp(&beta0).unwrap();

    let doc = format!(
        "ring Zmod 8;\nideal I = <4>;\nmatrix D = {};\nmatrix T1 = {};\nmatrix T2 = {};",
        print_matrix(&delta),
        print_matrix(theta1.matrix()),
        print_matrix(theta2.matrix())
    );
    let (out, code) = run_cli(&["extract-block", "D", "T1", "T2", "--ideal", "I"], &doc);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("pass"), "{out}");

    let doc = "ring Z; matrix C1 = [[0, 1], [-1, 0]]; cert c = pad 0 sp 4 : ;";
    let (out, code) = run_cli(&["check-equiv", "C1", "C1", "c"], doc);
    assert_eq!(code, 0, "{out}");
    let (out, code) = run_cli(&["search-equiv", "C1", "C1"], doc);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn patch_round_trips_through_the_binary() {
    let doc = "ring Z;\nideal I = <6>;\nring loc Z 2;\nmatrix A1 = [[1, 6, 0, -72], [0, 1, 0, -12], [12, 0, 1, 0], [0, 0, 0, 1]];\nring loc Z 3;\nmatrix A2 = [[1, 6, 0, -72], [0, 1, 0, -12], [12, 0, 1, 0], [0, 0, 0, 1]];";
    let (out, code) = run_cli(&["patch", "A1", "A2", "--s", "2", "--t", "3", "--ideal", "I"], doc);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[[1, 6, 0, -72]"), "{out}");
}

#[test]
fn symbol_and_formal_word_commands() {
    let doc = "ring Zmod 8; elem u = 5; elem s = 3; word w = sp 6 : gen(1, 2, 4) gen(1, 2, 4);";
    for args in [
        vec!["symbol", "curly", "u", "s"],
        vec!["symbol", "square", "u", "s"],
        vec!["symbol", "sw", "u"],
        vec!["symbol", "sh", "u"],
        vec!["kernel-check", "w"],
        vec!["phi", "w"],
    ] {
        let (out, code) = run_cli(&args, doc);
        assert_eq!(code, 0, "{args:?}:\n{out}");
    }
}
