use std::io::Write as _;
use std::process::{Command, Stdio};

/// Run the compiled binary with the given arguments, feeding `input` to
/// standard input. Returns captured stdout and the exit code.
pub fn run_cli(args: &[&str], input: &str) -> (String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sympwitt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().expect("binary exits");
    (String::from_utf8(out.stdout).expect("utf8 stdout"), out.status.code().unwrap_or(-1))
}

/// Parse a document through the binary and return its canonical rendering.
pub fn canonicalize(doc: &str) -> String {
    let (out, code) = run_cli(&["--format", "json", "parse"], doc);
    assert_eq!(code, 0, "parse failed on:\n{doc}\noutput: {out}");
    let report: serde_json::Value = serde_json::from_str(&out).expect("one json object");
    report["result"].as_str().expect("result string").to_string()
}

/// Thirty documents covering the whole grammar: every ring descriptor,
/// every binding form, canonical and non-canonical spellings.
pub fn corpus() -> Vec<String> {
    let docs: Vec<&str> = vec![
        "ring Z; matrix A = [[0,1],[-1,0]];",
        "ring Zmod 8; ideal I = <4>;",
        "ring Z;\nideal I = <6>;\nrow v = [7, 6, 12] witness [1, -1, 0] mod I;",
        "ring Z; word w = sp 4 : gen(1, 2, 3) gen(3, 1, 2);",
        "ring Z; word w = lin 3 : gen(1, 2, 5) gen(2, 3, -1) gen(3, 1, 0);",
        "ring Q; elem h = 1/2; matrix A = [[1/1, 0/1], [3/4, 1/1]];",
        "ring poly Zmod 5 X; elem f = [1, 0, 3]; matrix M = [[[1], [0, 1]], [[0], [1]]];",
        "ring loc Z 2; elem g = frac(3, 2); elem h = 5;",
        "ring excision Z <6>; elem p = (2|6); matrix E = [[(1|6), (0|0)], [(0|6), (1|0)]];",
        "ring Zmod 9; word w = sp 6 : conj(gen(1, 2, 3); 2, 3, 6) gen(5, 6, 3);",
        "ring Z; cert c = pad 0 sp 4 : ;",
        "ring Z; cert c = pad 1 lin 6 : gen(1, 2, -2) gen(2, 1, 4);",
        "ring Z; elem a = 3; ring Q; elem b = 2/3; ring Z; elem c = -7;",
        "ring Zmod 2; matrix A = [[0, 1], [1, 0]];",
        "ring Z; word w = sp 4 : conj(conj(gen(1, 2, 1); 1, 3, 2); 2, 4, -1);",
        "ring Zmod 8; ideal I = <4>; matrix B = [[0, 5], [3, 0]];",
        "ring Z; row u = [3, 5, 0, 2] witness [2, -1, 0, 0];",
        "ring poly Z T; elem f = [0, 1]; ideal J = <[2], [0, 1]>;",
        "ring loc poly Zmod 5 T [2, 1]; elem g = frac([1, 1], 1);",
        "ring excision Zmod 8 <4>; elem q = (5|4);",
        "ring Zmod 7; word w = sp 6 : gen(1, 2, -3) gen(4, 5, 6) gen(2, 1, 1);",
        "ring Zmod 8; ideal I = <4>; row v = [5, 4, 4] witness [5, 1, 1] mod I;",
        "ring Z; matrix S = [[1]];",
        "ring Z; matrix C = [[0,1,0,0,0,0],[-1,0,0,0,0,0],[0,0,0,1,0,0],[0,0,-1,0,0,0],[0,0,0,0,0,1],[0,0,0,0,-1,0]];",
        "ring Z; word e = sp 4 : ;",
        "ring Q; elem x = -3/4;",
        "ring Z; ideal I = <4, 6>; ideal J = <10>;",
        "ring poly Zmod 5 X; word w = lin 4 : gen(1, 4, [2, 3]) gen(4, 2, [1]);",
        "ring Zmod 8;\nideal I = <4>;\nelem u = 5;\nmatrix A = [[0, 1], [-1, 0]];\nrow v = [5, 4, 4] witness [5, 1, 1] mod I;\nword w = sp 6 : gen(1, 2, 4) gen(1, 2, 4);\ncert c = pad 0 sp 4 : ;",
        "ring Z; matrix M = [[1, 6, 0, -72], [0, 1, 0, -12], [12, 0, 1, 0], [0, 0, 0, 1]]; ideal I = <6>;",
    ];
    docs.into_iter().map(String::from).collect()
}
