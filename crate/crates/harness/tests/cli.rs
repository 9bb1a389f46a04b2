use std::path::Path;
use std::process::{Command, Output};

fn sps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sps")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const PRODUCT: &str = r#"{"kind":"sps","factors":[{"monomials":[{"coeff":"-1","exp":"0"},{"coeff":"1","exp":"2"}]},{"monomials":[{"coeff":"-4","exp":"0"},{"coeff":"1","exp":"2"}]}],"products":[[0,1]]}"#;

#[test]
fn roots_of_a_small_product() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "e.json", PRODUCT);
    let out = sps(&["roots", "--input", &input]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["real_roots"], 4);
    assert_eq!(v["integer_roots"], 4);
    assert_eq!(v["certs"][0]["value"], "5");
}

#[test]
fn pit_methods_agree_on_nonzero_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "e.json", PRODUCT);
    for method in ["exact", "random", "hitting"] {
        let out = sps(&["pit", "--input", &input, "--method", method, "--seed", "3"]);
        assert!(out.status.success(), "{method}");
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["verdict"], "nonzero", "{method}");
    }
    // {1, 2} are roots, so a two-point linear set is fooled
    let out = sps(&["pit", "--input", &input, "--method", "hitting", "--prefix", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "zero");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(sps(&["--help"]).status.code(), Some(0));
    assert_eq!(sps(&["hunt", "--k", "3..1"]).status.code(), Some(1));
    assert_eq!(sps(&["frobnicate"]).status.code(), Some(1));
    let bad = write(dir.path(), "bad.json", &PRODUCT.replacen("\"-1\"", "\"00\"", 1));
    let out = sps(&["roots", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("factors[0].monomials[0].coeff"));
    let missing = dir.path().join("none.json");
    assert_eq!(sps(&["roots", "--input", missing.to_str().unwrap()]).status.code(), Some(2));
    let big = write(
        dir.path(),
        "big.json",
        r#"{"kind":"sps","factors":[{"monomials":[{"coeff":"1","exp":"0"},{"coeff":"1","exp":"100000"}]}],"products":[[0]]}"#,
    );
    assert_eq!(sps(&["roots", "--input", &big, "--sturm-cap", "50"]).status.code(), Some(3));
}

#[test]
fn hunt_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("h.csv");
    let out = sps(&["hunt", "--k", "1..2", "--m", "1..2", "--t", "1..3", "--samples", "12", "--seed", "9", "--out", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 13);
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("h.json")).unwrap()).unwrap();
    assert_eq!(summary["violations"], 0);
    assert_eq!(summary["instances"], 12);
}

#[test]
fn demos() {
    let out = sps(&["demo", "--name", "chebyshev", "--n", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["real_roots"], 32);
    let out = sps(&["demo", "--name", "pochhammer", "--n", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["integer_roots"], 8);
}

#[test]
fn depth4_file_pipes_through_pit() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.json",
        r#"{"kind":"depth4","x_arity":2,"z_arity":1,"terms":[[[[{"x":1}],[{"z":1}]],[[{"x":2}],[{"const":"-3"}]]]]}"#,
    );
    let out = sps(&["pit", "--input", &f]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "nonzero");
}
