use std::process::Command;

use mf::record::OutputRecord;

fn mf(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mf"))
        .args(args)
        .env_remove("MF_CACHE")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn list(r: &OutputRecord, key: &str) -> Vec<String> {
    r.get(key).and_then(|f| f.as_list()).expect("list output").to_vec()
}

#[test]
fn search_examples() {
    let (code, out, _) = mf(&["search", "--giuga", "--hi", "10000"]);
    assert_eq!(code, 0);
    assert_eq!(list(&OutputRecord::from_table(&out).unwrap(), "hits"), ["30", "858", "1722"]);

    let (_, out, _) = mf(&["search", "--ppp", "--hi", "100000", "--jobs", "3"]);
    let r = OutputRecord::from_table(&out).unwrap();
    assert_eq!(list(&r, "hits"), ["2", "6", "42", "1806", "47058"]);
    assert_eq!(list(&r, "twin-prime neighbours"), ["6", "42", "47058"]);

    let (code, out, _) = mf(&["search", "--ppp", "--hi", "1"]);
    assert_eq!(code, 0);
    assert!(list(&OutputRecord::from_table(&out).unwrap(), "hits").is_empty());
}

#[test]
fn json_round_trips_for_every_command() {
    let commands: &[&[&str]] = &[
        &["valuation", "--m", "53", "--n", "2", "--p", "3"],
        &["powersum", "--m", "9", "--n", "2", "--p", "3"],
        &["powersum", "--m", "100", "--n", "50", "--modulus", "1000003"],
        &["egyptian", "--n", "47058", "--rule", "giuga-down"],
        &["search", "--plus-one", "--hi", "5000"],
        &["bernoulli", "--k", "24"],
        &["em-check", "--m", "1000"],
        &["em-sieve", "--hi", "500", "--profile", "62208"],
    ];
    for args in commands {
        let mut with_json = vec!["--json"];
        with_json.extend_from_slice(args);
        let (code, json, err) = mf(&with_json);
        assert_eq!(code, 0, "{args:?}: {err}");
        let from_json = OutputRecord::from_json(&json).unwrap();
        assert_eq!(OutputRecord::from_json(&from_json.to_json()).unwrap(), from_json);

        let (_, table, _) = mf(args);
        let mut from_table = OutputRecord::from_table(&table).unwrap();
        from_table.elapsed_ms = from_json.elapsed_ms;
        assert_eq!(from_table, from_json, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(mf(&["valuation", "--m", "53", "--n", "2", "--p", "3"]).0, 0);
    assert_eq!(mf(&["valuation", "--m", "8", "--n", "2", "--p", "5"]).0, 1);
    assert_eq!(mf(&["valuation", "--m", "9", "--n", "2", "--p", "4"]).0, 1);
    // The unproven odd-n branch with m ≡ (p-1)/2 fails here.
    assert_eq!(mf(&["valuation", "--m", "4", "--n", "3", "--p", "3"]).0, 2);
    assert_eq!(mf(&["verify", "--suite", "nosuch"]).0, 1);
    assert_eq!(mf(&["bernoulli"]).0, 1);
    assert_eq!(mf(&["egyptian", "--n", "abc"]).0, 1);
}

#[test]
fn verify_suites_quick() {
    for suite in ["bernoulli", "egyptian", "em-sieve"] {
        let (code, out, err) = mf(&["verify", "--suite", suite, "--quick"]);
        assert_eq!(code, 0, "{suite}: {out}{err}");
    }
    let (code, out, _) = mf(&["verify", "--suite", "power-sums", "--quick"]);
    let r = OutputRecord::from_table(&out).unwrap();
    let props = list(&r, "properties");
    let failing: Vec<&String> = props.iter().filter(|p| p.starts_with("FAIL")).collect();
    // Only the unproven branch fails.
    assert_eq!(failing.len(), 1, "{props:?}");
    assert!(failing[0].contains("odd n"));
    assert_eq!(code, 2);
}

#[test]
fn bernoulli_cache_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bern.tsv");
    let p = path.to_str().unwrap();

    let (code, out, _) = mf(&["bernoulli", "--k", "12", "--cache", p]);
    assert_eq!(code, 0);
    let r = OutputRecord::from_table(&out).unwrap();
    assert_eq!((r.scalar("numerator"), r.scalar("denominator")), (Some("-691"), Some("2730")));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("12\t-691\t2730\n"));

    // Extended on demand, read back through the environment variable.
    let out = Command::new(env!("CARGO_BIN_EXE_mf"))
        .args(["bernoulli", "--k", "24"])
        .env("MF_CACHE", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&path).unwrap().contains("24\t-236364091\t2730\n"));

    // A corrupt cache is reported, not silently replaced.
    std::fs::write(&path, "0\t1\t1\n1\t-1\t2\n2\t1\t5\n").unwrap();
    let (code, _, err) = mf(&["bernoulli", "--k", "4", "--cache", p]);
    assert_eq!(code, 1);
    assert!(err.contains("cache"));
}
