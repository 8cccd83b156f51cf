use fermat_core::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (String::new(), String::new());
    let mut argv = vec!["fermat-selfint"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, out, err)
}

#[test]
fn analyze_json_reports_split_line() {
    let (code, out, _) = call(&["analyze", "--d", "5", "--g", "x + y"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let k = &v["k_candidates"][0];
    assert_eq!(k["k"], 5);
    assert_eq!(k["C2"], -3);
    assert_eq!(k["certified"], true);
}

#[test]
fn text_format() {
    let (code, out, _) = call(&["analyze", "--d", "5", "--g", "y - 2*x", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("C^2 = 5"), "{out}");
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        &["analyze", "--d", "5", "--g", "x + "][..],
        &["analyze", "--d", "5", "--g", "x^2 + y"],
        &["analyze", "--d", "5", "--g", "0"],
        &["analyze", "--d", "1", "--g", "x + y"],
        &["analyze", "--d", "5", "--g", "x + y", "--k", "2"],
        &["analyze", "--d", "5", "--g", "x + y", "--precision", "64", "--max-precision", "8"],
        &["analyze", "--d", "5", "--g", "x + y", "--mu-policy", "bogus"],
        &["analyze", "--d", "3", "--g", "x^3 + y^3 + z^3"],
        &["analyze", "--d", "5", "--g", "x^2 - y^2"],
        &["batch", "--corpus", "/nonexistent/corpus.txt"],
        &["frobnicate"],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn k_override_and_mu_policy_file() {
    let dir = std::env::temp_dir().join(format!("fermat-selfint-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let policy = dir.join("mu.txt");
    std::fs::write(&policy, "# class mu\n0 0\n").unwrap();
    let policy_arg = format!("file:{}", policy.display());
    let (code, out, err) = call(&["analyze", "--d", "5", "--g", "x^2 - y*z", "--k", "5", "--mu-policy", &policy_arg]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["k_candidates"][0]["k"], 5);
}

#[test]
fn batch_keeps_corpus_order() {
    let (code, out, err) = call(&["batch"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let lines: Vec<u64> = v.as_array().unwrap().iter().map(|x| x["line"].as_u64().unwrap()).collect();
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
    assert_eq!(lines.len(), 7);
}

#[test]
fn stats_table() {
    let (code, out, _) = call(&["stats", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("1/9"), "{out}");
}

#[test]
fn verify_detects_a_corrupted_oracle() {
    let (code, out, _) = call(&["verify"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("linear-dichotomy d=5: ok"));
    assert!(out.contains("linear-dichotomy d=7: ok"));
    let (code, out, _) = call(&["verify", "--corrupt-oracle"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}
