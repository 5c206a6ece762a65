use std::process::{Command, Output};

use serde_json::Value;

fn hyperjac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperjac"))
        .args(args)
        .env_remove("HYPERJAC_PRIME")
        .env_remove("HYPERJAC_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn hodge(v: &Value) -> Vec<u64> {
    v["hodge"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e[2].as_u64().unwrap())
        .collect()
}

#[test]
fn hodge_numbers_of_fermat_forms() {
    let o = hyperjac(&["hodge-numbers", "--d", "3", "--N", "5", "--fermat"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(hodge(&v), [1, 101, 101, 1]);
    assert_eq!(v["sigma"], 15);
    assert_eq!(v["smooth"], true);
    assert_eq!(v["prime"], 65521);

    let o = hyperjac(&["hodge-numbers", "--d", "2", "--N", "3", "--fermat"]);
    assert_eq!(hodge(&json(&o)), [0, 6, 0]);
}

#[test]
fn explicit_forms_and_files() {
    let o = hyperjac(&["hodge-numbers", "--d", "2", "--N", "4", "--f", "x0^4 + x1^4 + x2^4 + x3^4 + x0*x1*x2*x3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(hodge(&json(&o)), [1, 19, 1]);

    let dir = std::env::temp_dir().join(format!("hyperjac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cubic.txt");
    std::fs::write(&path, "x0^3 + x1^3 + x2^3\n").unwrap();
    let o = hyperjac(&["hodge-numbers", "--d", "1", "--N", "3", "--f-file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(hodge(&json(&o)), [1, 1]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_errors_and_singular_forms_exit_differently() {
    let o = hyperjac(&["hodge-numbers", "--d", "1", "--N", "3", "--f", "x0^3 + * x1"]);
    assert_eq!(code(&o), 2);
    let o = hyperjac(&["hodge-numbers", "--d", "1", "--N", "3", "--f", "x0^3 + x7^3"]);
    assert_eq!(code(&o), 2);
    let o = hyperjac(&["hodge-numbers", "--d", "1", "--N", "3", "--f", "x0^3 + x1^3"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["smooth"], false);
    let o = hyperjac(&["hodge-numbers", "--d", "1", "--N", "4", "--f", "x0^3 + x1^3 + x2^3"]);
    assert_eq!(code(&o), 2);
    let o = hyperjac(&["hodge-numbers", "--d", "1", "--N", "3"]);
    assert_eq!(code(&o), 2);
    let o = hyperjac(&["hodge-numbers", "--d", "1", "--N", "3", "--fermat", "--prime", "3"]);
    assert_eq!(code(&o), 2);
    let o = hyperjac(&["hodge-numbers", "--d", "1", "--N", "3", "--fermat", "--prime", "100"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn hilbert_function_formats() {
    let o = hyperjac(&["hilbert", "--d", "1", "--N", "3", "--fermat", "--output", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "k,dim\n0,1\n1,3\n2,3\n3,1\n4,0\n");
    let o = hyperjac(&["hilbert", "--d", "1", "--N", "3", "--fermat", "--max-degree", "6"]);
    assert_eq!(json(&o)["hilbert"].as_array().unwrap().len(), 7);
}

#[test]
fn green_scan_on_plane_cubics() {
    let o = hyperjac(&["green-scan", "--n", "3", "--N", "3", "--codim", "0..2", "--amax", "6", "--smax", "2"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# prime=65521 seed=0"));
    assert_eq!(
        lines.next(),
        Some("n,N,codim,trial,a,s,rank_in,kernel_out,defect,bound_holds,exact")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3 * 3 * 7 * 3);
    assert!(rows.iter().all(|r| r[9] == "false" || r[10] == "true"));
}

#[test]
fn full_system_column() {
    let o = hyperjac(&["green-scan", "--n", "3", "--N", "2", "--codim", "0", "--amax", "4", "--output", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    for c in v["cells"].as_array().unwrap() {
        let a = c["a"].as_i64().unwrap();
        let s = c["s"].as_i64().unwrap();
        if a >= s {
            assert_eq!(c["outcome"]["exact"], true, "{c}");
        }
    }
}

#[test]
fn oversize_grid_is_refused() {
    let o = hyperjac(&["green-scan", "--n", "3", "--N", "3", "--budget", "100"]);
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_hyperjac"))
        .args(["green-scan", "--n", "3", "--N", "3"])
        .env("HYPERJAC_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = hyperjac(&["green-scan", "--n", "3", "--N", "3", "--budget", "100", "--skip-oversize"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("skipped"));
}

#[test]
fn koszul_cells() {
    let o = hyperjac(&["koszul-check", "--n", "3", "--N", "2", "--a", "1", "--s", "1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["report"]["exact"], true);
    assert_eq!(v["report"]["shape_in"], serde_json::json!([60, 45]));

    let o = hyperjac(&["koszul-check", "--n", "3", "--N", "2", "--a", "-1", "--s", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["report"]["rank_in"], 0);

    let o = hyperjac(&[
        "koszul-check", "--module", "jacobian", "--d", "3", "--N", "5", "--p", "2", "--s", "0",
        "--codim", "1", "--fermat",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["report"]["a"], 5);
    assert_eq!(v["report"]["exact"], true);
    assert_eq!(v["green_range"], true);

    let o = hyperjac(&["koszul-check", "--module", "jacobian", "--d", "1", "--N", "3", "--s", "0"]);
    assert_eq!(code(&o), 2);
}

fn table_rows(o: &Output) -> Vec<Vec<String>> {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect()
}

#[test]
fn sweep_presets() {
    let o = hyperjac(&["sweep", "--d", "3", "--abelian"]);
    assert_eq!(code(&o), 0);
    let rows = table_rows(&o);
    assert_eq!(rows[0][7], "pass");
    let pass: Vec<&str> = rows[1..].iter().map(|r| r[7].as_str()).collect();
    assert_eq!(pass, ["false", "true", "true"]);

    let o = hyperjac(&["sweep", "--d", "3", "--genus", "2", "--find-threshold", "--output", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["N_min"], 10);

    let o = hyperjac(&["sweep", "--d", "3", "--N", "5", "--r", "1", "--C", "1", "--output", "csv"]);
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "d,N,r,C,gamma,ineq1_slack,ineq2_slack,pass,degree_hypothesis\n3,5,1,1,0,-3,-2,false,true\n"
    );

    let o = hyperjac(&["sweep", "--d", "3", "--N", "9", "--genus", "2", "--output", "json"]);
    assert_eq!(json(&o)[0]["input"]["C"], 3);

    assert_eq!(code(&hyperjac(&["sweep", "--d", "3", "--N", "5", "--r", "4", "--C", "1"])), 2);
    assert_eq!(code(&hyperjac(&["sweep", "--d", "3", "--N", "5", "--r", "1"])), 2);
    assert_eq!(code(&hyperjac(&["sweep", "--d", "3", "--abelian", "--r", "1"])), 2);
}

#[test]
fn yukawa_chain_runs() {
    let o = hyperjac(&["yukawa-chain", "--d", "2", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["all_ok"], true);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["steps"].as_array().unwrap().len(), 6);
    assert_eq!(v["steps"][0]["step"], "colon_codim");

    let o = hyperjac(&["yukawa-chain", "--d", "2", "--k-equals-jacobian"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    let last = v["steps"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["step"], "socle_image_nonzero");
    assert_eq!(last["got"], false);

    assert_eq!(code(&hyperjac(&["yukawa-chain", "--d", "5"])), 3);
    assert_eq!(code(&hyperjac(&["yukawa-chain", "--d", "0"])), 2);
}

#[test]
fn bpf_checks() {
    let o = hyperjac(&["bpf-check", "--n", "3", "--N", "2", "--forms", "x0^2; x1^2; x2^2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["degree"], 4);

    // common zero at (0:0:1)
    let o = hyperjac(&["bpf-check", "--n", "3", "--N", "2", "--forms", "x0^2; x0*x1; x1^2"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["status"], "unknown");

    let o = hyperjac(&["bpf-check", "--n", "3", "--N", "3", "--codim", "2"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn same_seed_same_bytes() {
    let runs: [&[&str]; 4] = [
        &["hodge-numbers", "--d", "2", "--N", "4", "--random-smooth", "--seed", "11"],
        &["green-scan", "--n", "3", "--N", "2", "--seed", "5", "--output", "json"],
        &["yukawa-chain", "--d", "2", "--seed", "3"],
        &["bpf-check", "--n", "4", "--N", "2", "--codim", "3", "--seed", "9"],
    ];
    for args in runs {
        let a = hyperjac(args);
        let b = hyperjac(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = hyperjac(&["hodge-numbers", "--d", "2", "--N", "4", "--random-smooth", "--seed", "11"]);
    let b = hyperjac(&["hodge-numbers", "--d", "2", "--N", "4", "--random-smooth", "--seed", "12"]);
    assert_ne!(json(&a)["f"], json(&b)["f"]);
}

#[test]
fn environment_overrides_the_prime() {
    let o = Command::new(env!("CARGO_BIN_EXE_hyperjac"))
        .args(["hodge-numbers", "--d", "1", "--N", "3", "--fermat"])
        .env("HYPERJAC_PRIME", "32003")
        .output()
        .unwrap();
    assert_eq!(json(&o)["prime"], 32003);
}

#[test]
fn cross_check_agrees() {
    for args in [
        &["hodge-numbers", "--d", "2", "--N", "4", "--random-smooth", "--cross-check"][..],
        &["yukawa-chain", "--d", "2", "--seed", "7", "--cross-check"],
        &["green-scan", "--n", "3", "--N", "2", "--cross-check"],
    ] {
        let o = hyperjac(args);
        assert_eq!(code(&o), 0, "{args:?}");
        assert!(String::from_utf8(o.stderr).unwrap().contains("agree"));
    }
    let o = hyperjac(&["sweep", "--d", "3", "--abelian", "--cross-check", "--second-prime", "65521"]);
    assert_eq!(code(&o), 2);
}

fn schema(name: &str) -> Value {
    let path = format!("{}/../../docs/schemas/v1/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Top-level keys only; the full schemas are checked with an external validator.
fn keys_match(out: &Value, schema: &Value) -> bool {
    let Some(obj) = out.as_object() else {
        return false;
    };
    let mut want: Vec<&str> = schema["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|k| k.as_str().unwrap())
        .collect();
    let mut got: Vec<&str> = obj.keys().map(String::as_str).collect();
    want.sort_unstable();
    got.sort_unstable();
    want == got
}

#[test]
fn outputs_carry_schema_keys() {
    let cases: [(&str, &[&str]); 4] = [
        ("hodge-numbers", &["hodge-numbers", "--d", "1", "--N", "3", "--fermat"]),
        ("hilbert", &["hilbert", "--d", "1", "--N", "3", "--fermat"]),
        ("yukawa-chain", &["yukawa-chain", "--seed", "1"]),
        ("bpf-check", &["bpf-check", "--n", "2", "--N", "2"]),
    ];
    for (name, args) in cases {
        let out = json(&hyperjac(args));
        assert!(keys_match(&out, &schema(name)), "{name}: {out}");
    }
    let scan = json(&hyperjac(&["green-scan", "--n", "2", "--N", "2", "--output", "json"]));
    assert!(keys_match(&scan, &schema("green-scan")));
    let cell = &scan["cells"][0];
    assert!(keys_match(cell, &schema("green-scan")["$defs"]["cell"]));
    let k = json(&hyperjac(&["koszul-check", "--n", "2", "--N", "2", "--a", "1"]));
    assert!(keys_match(&k, &schema("koszul-check")["oneOf"][0]));
}
