use std::process::{Command, Output};

use serde_json::Value;

const DEGREE_TWELVE: &str = "x^12+2x^11+12x^10+36x^9+100x^8+240x^7+544x^6+992x^5+1328x^4+2080x^3+1728x^2+1600x+1125899906842816";
const DEGREE_TWELVE_LIST: &str = r#"["1125899906842816","1600","1728","2080","1328","992","544","240","100","36","12","2","1"]"#;

fn omlocal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omlocal"))
        .args(args)
        .env_remove("OMLOCAL_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(&omlocal(args))).unwrap()
}

fn leaves(forest: &Value) -> Vec<Value> {
    forest["trees"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|t| t["leaves"].as_array().unwrap().clone())
        .collect()
}

#[test]
fn quadratic_eisenstein() {
    let forest = json(&["factor", "-p", "2", "-f", "x^2+2"]);
    let leaves = leaves(&forest);
    assert_eq!(leaves.len(), 1);
    assert_eq!(leaves[0]["invariants"]["e"], "2");
    assert_eq!(leaves[0]["invariants"]["f"], "1");
    assert_eq!(leaves[0]["leaf"]["lambda"], "inf");
}

#[test]
fn degree_twelve_forest() {
    let forest = json(&["factor", "-p", "2", "-f", DEGREE_TWELVE]);
    assert_eq!(forest["schema_version"], "1");
    assert_eq!(forest["index"], "47");
    let leaves = leaves(&forest);
    let depths: Vec<&str> = leaves.iter().map(|l| l["depth"].as_str().unwrap()).collect();
    assert_eq!(depths, ["2", "3"]);
    assert_eq!(leaves[0]["leaf"]["lambda"], "82/1");
    assert_eq!(leaves[1]["leaf"]["lambda"], "318/1");
    assert_eq!(leaves[0]["quality"], "44/1");
    assert_eq!(leaves[1]["quality"], "47/1");
    assert_eq!(leaves[1]["invariants"]["delta0"], "29/4");
    assert_eq!(leaves[1]["invariants"]["cap"], "47/8");
    assert_eq!(leaves[1]["invariants"]["ind"], "20");
    assert_eq!(forest["pairwise"][0]["ioc"], "2");
    assert_eq!(forest["pairwise"][0]["res_val"], "24");
}

#[test]
fn field_order_is_fixed() {
    let text = stdout(&omlocal(&["factor", "-p", "2", "-f", "x^2+2"]));
    let keys = ["\"schema_version\"", "\"p\"", "\"f\"", "\"trees\"", "\"index\"", "\"pairwise\""];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn irreducible_residue_gives_depth_zero() {
    let forest = json(&["factor", "-p", "2", "-f", "x^2+x+1"]);
    let leaves = leaves(&forest);
    assert_eq!(leaves.len(), 1);
    assert_eq!(leaves[0]["depth"], "0");
    assert_eq!(leaves[0]["invariants"]["f"], "2");
}

#[test]
fn output_is_deterministic_and_input_form_independent() {
    let a = stdout(&omlocal(&["factor", "-p", "2", "-f", DEGREE_TWELVE]));
    let b = stdout(&omlocal(&["factor", "-p", "2", "-f", DEGREE_TWELVE]));
    let c = stdout(&omlocal(&["factor", "-p", "2", "-f", DEGREE_TWELVE_LIST]));
    let d = stdout(&omlocal(&["--seed", "12345", "factor", "-p", "2", "-f", DEGREE_TWELVE]));
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a, d);
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_omlocal"))
        .args(["factor", "-p", "3", "-f", "x^4+3x+9"])
        .env("OMLOCAL_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), stdout(&omlocal(&["factor", "-p", "3", "-f", "x^4+3x+9"])));
}

#[test]
fn lifting_to_precision() {
    let forest = json(&["factor", "-p", "2", "-f", DEGREE_TWELVE, "--precision", "83", "--jobs", "2"]);
    for leaf in leaves(&forest) {
        let bound = leaf["precision_bound"].as_str().unwrap();
        let (n, d) = bound.split_once('/').unwrap();
        let (n, d): (i64, i64) = (n.parse().unwrap(), d.parse().unwrap());
        assert!(n >= 83 * d, "{}", bound);
    }
    let serial = stdout(&omlocal(&["factor", "-p", "2", "-f", DEGREE_TWELVE, "--precision", "83"]));
    let parallel = stdout(&omlocal(&["factor", "-p", "2", "-f", DEGREE_TWELVE, "--precision", "83", "--jobs", "4"]));
    assert_eq!(serial, parallel);
}

#[test]
fn lifting_to_slope() {
    let forest = json(&["factor", "-p", "2", "-f", DEGREE_TWELVE, "--quality", "100"]);
    let leaves = leaves(&forest);
    assert_eq!(leaves[0]["leaf"]["lambda"], "164/1");
    assert_eq!(leaves[0]["quality"], "85/1");
    assert_eq!(leaves[1]["leaf"]["lambda"], "318/1");
}

#[test]
fn values() {
    let value = |leaf: &str, g: &str| stdout(&omlocal(&["value", "-p", "2", "-f", DEGREE_TWELVE, "--leaf", leaf, "-g", g]));
    assert_eq!(value("0", DEGREE_TWELVE), "inf\n");
    assert_eq!(value("1", "2"), "1\n");
    assert_eq!(value("1", "x"), "1/2\n");
    assert_eq!(value("0", r#"["16","128","96","96","24","16","8","0","1"]"#), "6\n");
    let wrapped = json(&["--json", "value", "-p", "2", "-f", "x^2+2", "--leaf", "0", "-g", "x"]);
    assert_eq!(wrapped["value"], "1/2");
}

#[test]
fn index_subcommand() {
    assert_eq!(stdout(&omlocal(&["index", "-p", "2", "-f", DEGREE_TWELVE])), "47\n");
    let wrapped = json(&["index", "-p", "2", "-f", DEGREE_TWELVE, "--json"]);
    assert_eq!(wrapped["accumulated_index"], "47");
}

#[test]
fn invariants_table() {
    let table = json(&["invariants", "-p", "2", "-f", DEGREE_TWELVE]);
    let rows: Vec<[&str; 5]> = table
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let i = &r["invariants"];
            [&i["e"], &i["f"], &i["delta0"], &i["cap"], &i["ind"]].map(|v| v.as_str().unwrap())
        })
        .collect();
    assert_eq!(rows, [["2", "2", "3/1", "2/1", "3"], ["8", "1", "29/4", "47/8", "20"]]);
}

#[test]
fn basis_for_depth_zero_leaf() {
    let out = json(&["basis", "-p", "2", "-f", "x^3+x+1"]);
    let basis = out[0]["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 3);
    assert!(basis.iter().all(|b| b["d"] == "0"));
}

#[test]
fn basis_exponents_of_degree_twelve() {
    let out = json(&["basis", "-p", "2", "-f", DEGREE_TWELVE, "--leaf", "0"]);
    let d: Vec<&str> = out[0]["basis"].as_array().unwrap().iter().map(|b| b["d"].as_str().unwrap()).collect();
    assert_eq!(d, ["0", "0", "1", "2"]);
}

#[test]
fn construct_round_trip() {
    let out = json(&["construct", "-p", "2", "--psi0", "y", "--levels", "2,1,1"]);
    assert_eq!(out["representative"], serde_json::json!(["2", "0", "1"]));
    assert_eq!(out["verified"], true);
    let deeper = json(&["construct", "-p", "3", "--psi0", "y+1", "--levels", "1,2,1;2,1,1"]);
    assert_eq!(deeper["verified"], true);
    assert_eq!(deeper["representative"].as_array().unwrap().len(), 5);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| omlocal(args).status.code().unwrap();
    assert_eq!(code(&["factor", "-p", "2", "-f", "x^2+2x+1"]), 3);
    assert_eq!(code(&["factor", "-p", "2", "-f", "x^2+"]), 2);
    assert_eq!(code(&["factor", "-p", "4", "-f", "x^2+2"]), 2);
    assert_eq!(code(&["factor", "-p", "2", "-f", "2x^2+2"]), 2);
    assert_eq!(code(&["factor", "-p", "2", "-f", r#"["1", 2]"#]), 2);
    assert_eq!(code(&["value", "-p", "2", "-f", "x^2+2", "--leaf", "5", "-g", "x"]), 2);
    assert_eq!(code(&["construct", "-p", "2", "--levels", "1,1,1"]), 2);
    assert_eq!(code(&["construct", "-p", "2", "--levels", "2,1"]), 2);
    assert_eq!(code(&["factor", "-p", "2"]), 2);
    let out = omlocal(&["factor", "-p", "2", "-f", "x^2+2x+1"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not square-free"));
}
