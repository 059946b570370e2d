use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

use quasi_nichols::ydmod::{fixtures, YDModule};

fn qnichols(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qnichols"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = qnichols(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, v: &impl serde::Serialize) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cocycles_on_z4_are_abelian() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &json!({"factors": [4]}));
    let rows = ok_json(&["cocycles", s(&g), "--enumerate", "--abelian"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["abelian"] == json!(true)));
}

#[test]
fn cocycles_on_z2_cubed() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &json!({"factors": [2, 2, 2]}));
    let rows = ok_json(&["cocycles", s(&g), "--abelian", "--verify"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 128);
    for r in rows {
        assert_eq!(r["verified"], json!(true));
        let c123 = r["cocycle"]["c3"][0][3].as_u64().unwrap();
        assert_eq!(r["abelian"], json!(c123 == 0));
    }
}

#[test]
fn cocycles_on_z2_verify() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &json!({"factors": [2]}));
    let rows = ok_json(&["cocycles", s(&g), "--verify"]);
    assert_eq!(rows.as_array().unwrap().len(), 2);
    let table = qnichols(&["cocycles", s(&g), "--verify", "--format", "table"]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().skip(1).all(|l| l.ends_with("true")));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(qnichols(&["group", s(&bad)]).status.code(), Some(2));
    let zero = write(&dir, "z.json", &json!({"factors": [0]}));
    assert_eq!(qnichols(&["group", s(&zero)]).status.code(), Some(2));
    let g = write(&dir, "g.json", &json!({"factors": [2, 2, 2]}));
    let out = qnichols(&["cocycles", s(&g), "--limit", "10"]);
    assert_eq!(out.status.code(), Some(3));

    let v = fixtures::prop71_module(&fixtures::Prop71Constants::normalized()).unwrap();
    let m = write(&dir, "m.json", &v);
    let out = qnichols(&["oracle", s(&m), "--max-degree", "4", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn group_reports_hat() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &json!({"factors": [2, 3]}));
    let out = ok_json(&["group", s(&g), "--elements"]);
    assert_eq!(out["order"], json!(6));
    assert_eq!(out["exponent"], json!(6));
    assert_eq!(out["hat"]["factors"], json!([4, 9]));
    assert_eq!(out["elements"].as_array().unwrap().len(), 6);
}

#[test]
fn classify_examples() {
    let dir = TempDir::new().unwrap();
    let v = fixtures::prop71_module(&fixtures::Prop71Constants::normalized()).unwrap();
    let m = write(&dir, "p71.json", &v);
    let out = ok_json(&["classify", s(&m)]);
    assert_eq!(out["standard_basis"], json!(false));
    assert_eq!(out["verdict"], json!("infinite"));
    assert_eq!(out["status"], json!(0));

    let r1 = YDModule::from_bicharacter(&fixtures::rank_one_minus_one()).unwrap();
    let m = write(&dir, "r1.json", &r1);
    let out = ok_json(&["classify", s(&m)]);
    assert_eq!(out["verdict"], json!("finite"));
    assert_eq!(out["dim_B"], json!("2"));

    let z5 = YDModule::from_bicharacter(&fixtures::a2_zeta5()).unwrap();
    let m = write(&dir, "z5.json", &z5);
    let out = ok_json(&["classify", s(&m), "--dot"]);
    assert_eq!(out["verdict"], json!("finite"));
    assert_eq!(out["dim_B"], json!("125"));
    assert_eq!(out["dim_bosonization"], json!("3125"));
    assert!(out["dot"].as_str().unwrap().starts_with("graph dynkin {"));
}

#[test]
fn classify_flags_inconclusive() {
    let dir = TempDir::new().unwrap();
    let v = YDModule::from_bicharacter(&fixtures::a3_minus_one()).unwrap();
    let m = write(&dir, "a3.json", &v);
    let out = qnichols(&["classify", s(&m), "--max-objects", "1", "--max-roots", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let out: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(out["verdict"], json!("inconclusive"));
    assert_eq!(out["status"], json!(1));
}

#[test]
fn oracle_rank_one() {
    let dir = TempDir::new().unwrap();
    let v = YDModule::from_bicharacter(&fixtures::rank_one_minus_one()).unwrap();
    let m = write(&dir, "r1.json", &v);
    let out = ok_json(&["oracle", s(&m), "--max-degree", "3"]);
    assert_eq!(out["hilbert"], json!([1, 1, 0, 0]));
    assert_eq!(out["degrees"][2]["kernel_dim"], json!(1));
}

#[test]
fn oracle_agrees_with_classify_on_a2() {
    let dir = TempDir::new().unwrap();
    let v = YDModule::from_bicharacter(&fixtures::a2_minus_one()).unwrap();
    let m = write(&dir, "a2.json", &v);
    let oracle = ok_json(&["oracle", s(&m), "--max-degree", "4"]);
    let classify = ok_json(&["classify", s(&m)]);
    assert_eq!(classify["dim_B"], json!("8"));
    let roots: Vec<Vec<u64>> = serde_json::from_value(classify["positive_roots"].clone()).unwrap();
    let heights: Vec<u64> = serde_json::from_value(classify["heights"].clone()).unwrap();
    let predicted = quasi_nichols::dynkin::hilbert_prediction(&roots, &heights, 4);
    assert_eq!(oracle["hilbert"], json!(predicted));
}

#[test]
fn oracle_relations_on_prop71() {
    let dir = TempDir::new().unwrap();
    let v = fixtures::prop71_module(&fixtures::Prop71Constants::normalized()).unwrap();
    let m = write(&dir, "p71.json", &v);
    let ad = |x: usize, y: usize| json!({"ad": [{"word": [x]}, {"word": [y]}]});
    let rels = json!([
        {"name": "ad_Y1(Z2)", "expr": ad(2, 5)},
        {"name": "ad_Y1(Z1)", "expr": ad(2, 4)},
        {"name": "ad_X1(Y1)-ad_X1(Y2)", "expr": {"sum": [
            {"expr": ad(0, 2)},
            {"coeff": -1, "expr": ad(0, 3)}
        ]}},
    ]);
    let r = write(&dir, "rels.json", &rels);
    let out = ok_json(&["oracle", s(&m), "--max-degree", "2", "--relations", s(&r)]);
    let got: Vec<bool> = out["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["in_ideal"].as_bool().unwrap())
        .collect();
    assert_eq!(got, [true, false, true]);
}

#[test]
fn module_pipeline_round_trips() {
    let dir = TempDir::new().unwrap();
    let phi = fixtures::prop71_associator([2, 2, 2], 1).unwrap();
    let a = write(&dir, "phi.json", &phi);
    let mut parts = Vec::new();
    for (k, ctx) in [[1, 2, 3], [2, 3, 1]].iter().enumerate() {
        let spec = write(&dir, &format!("spec{k}.json"), &json!({"context": ctx}));
        let out = qnichols(&["module", "simple", "--associator", s(&a), "--spec", s(&spec)]);
        assert!(out.status.success());
        let p = dir.path().join(format!("s{k}.json"));
        std::fs::write(&p, &out.stdout).unwrap();
        parts.push(p);
    }
    let sum = qnichols(&["module", "sum", s(&parts[0]), s(&parts[1])]);
    assert!(sum.status.success());
    let sum_path = dir.path().join("sum.json");
    std::fs::write(&sum_path, &sum.stdout).unwrap();
    let v: YDModule = serde_json::from_slice(&sum.stdout).unwrap();
    assert_eq!(v.dim(), 4);

    let hat = qnichols(&["change-base", "--module", s(&sum_path), "--hat"]);
    assert!(hat.status.success());
    let lifted: YDModule = serde_json::from_slice(&hat.stdout).unwrap();
    assert_eq!(lifted.group().factors(), &[4, 4, 4]);

    let j = qnichols(&["twist", "solve-j", s(&a), "--hat"]);
    assert_eq!(j.status.code(), Some(2), "nonabelian cocycle is not a coboundary on the hat group");
}

#[test]
fn twist_pipeline_on_abelian_cocycle() {
    let dir = TempDir::new().unwrap();
    let g = quasi_nichols::groups::FinAbGroup::cyclic(2);
    let phi = quasi_nichols::cocycles::Associator::from(
        quasi_nichols::cocycles::Cocycle3::from_params(&g, &[1]).unwrap(),
    );
    let v = YDModule::one_dim(&g, &phi, g.generator(0), &[quasi_nichols::scalars::Phase::zeta(4, 1)]).unwrap();
    let a = write(&dir, "phi.json", &phi);
    let m = write(&dir, "v.json", &v);
    let lifted = qnichols(&["change-base", "--module", s(&m), "--hat"]);
    assert!(lifted.status.success());
    let lm = dir.path().join("lifted.json");
    std::fs::write(&lm, &lifted.stdout).unwrap();

    let j = qnichols(&["twist", "solve-j", s(&a), "--hat"]);
    assert!(j.status.success(), "{}", String::from_utf8_lossy(&j.stderr));
    let jp = dir.path().join("j.json");
    std::fs::write(&jp, &j.stdout).unwrap();

    let before = ok_json(&["oracle", s(&lm), "--max-degree", "3"]);
    let twisted = qnichols(&["twist", "apply", "--module", s(&lm), "--cochain", s(&jp)]);
    assert!(twisted.status.success(), "{}", String::from_utf8_lossy(&twisted.stderr));
    let tp = dir.path().join("t.json");
    std::fs::write(&tp, &twisted.stdout).unwrap();
    let after = ok_json(&["oracle", s(&tp), "--max-degree", "3"]);
    assert_eq!(before["hilbert"], after["hilbert"]);
}

#[test]
fn diagram_and_determinism() {
    let dir = TempDir::new().unwrap();
    let v = fixtures::prop76_module().unwrap();
    let m = write(&dir, "p76.json", &v);
    let a = qnichols(&["diagram", s(&m)]);
    let b = qnichols(&["diagram", s(&m)]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let dot = String::from_utf8(a.stdout).unwrap();
    assert_eq!(dot.matches(" -- ").count(), 4);

    let c1 = qnichols(&["classify", s(&m), "--dot"]);
    let c2 = qnichols(&["classify", s(&m), "--dot"]);
    assert_eq!(c1.stdout, c2.stdout);

    let p71 = fixtures::prop71_module(&fixtures::Prop71Constants::normalized()).unwrap();
    let m = write(&dir, "p71.json", &p71);
    assert_eq!(qnichols(&["diagram", s(&m)]).status.code(), Some(2));
}
