use std::path::Path;
use std::process::Command;

fn jackpart(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_jackpart"))
        .args(args)
        .env_remove(jackpart::cli::OUT_DIR_ENV)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn body(stdout: &str) -> Vec<&str> {
    stdout.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn header_block() {
    let (code, out, _) = jackpart(&["enumerate", "--n", "4", "--d", "2", "--seed", "9"]);
    assert_eq!(code, 0);
    let head: Vec<&str> = out.lines().take(5).collect();
    assert_eq!(head[0], format!("# jackpart {}", env!("CARGO_PKG_VERSION")));
    assert_eq!(head[1], "# command: enumerate");
    assert!(head[2].starts_with("# config: {"));
    assert_eq!(head[3], "# seed: 9");
    assert_eq!(head[4], "# generator: ChaCha20");
}

#[test]
fn enumerate_example() {
    let (_, out, _) = jackpart(&["enumerate", "--n", "4", "--d", "2"]);
    assert_eq!(
        body(&out),
        vec!["index,partition,length", "0,(4),1", "1,\"(3,1)\",2", "2,\"(2,2)\",2"]
    );
}

#[test]
fn law_example() {
    let (code, out, _) = jackpart(&["law", "--n", "2", "--d", "2", "--alpha", "1/2", "--marginal", "1"]);
    assert_eq!(code, 0);
    let rows = body(&out);
    assert_eq!(rows[1], "0,0.0000000000000000e0,1/3");
    assert_eq!(rows[2], "1,7.0710678118654757e-1,2/3");
}

#[test]
fn converge_example() {
    let (code, out, _) = jackpart(&[
        "converge", "--d", "2", "--alpha", "1", "--ladder", "25,100,400", "--marginal", "1", "--deterministic",
    ]);
    assert_eq!(code, 0);
    let rows = body(&out);
    assert_eq!(rows[0], "n,d,alpha,marginal,ks,runtime_ms");
    let ks: Vec<f64> = rows[1..]
        .iter()
        .map(|r| r.split(',').nth(4).unwrap().parse().unwrap())
        .collect();
    assert_eq!(ks.len(), 3);
    assert!(ks[0] > ks[1] && ks[1] > ks[2]);
}

#[test]
fn validation_errors_exit_two() {
    assert_eq!(jackpart(&["nonsense"]).0, 2);
    assert_eq!(jackpart(&["law", "--n", "2", "--bogus"]).0, 2);
    assert_eq!(jackpart(&["law", "--n", "2", "--d", "2", "--alpha", "1", "--beta", "2"]).0, 2);
    assert_eq!(jackpart(&["law", "--n", "2", "--d", "2"]).0, 2);
    assert_eq!(jackpart(&["law", "--n", "2", "--d", "2", "--alpha", "0"]).0, 2);
    assert_eq!(jackpart(&["sample", "--d", "2", "--beta", "-1"]).0, 2);
    let (code, _, err) = jackpart(&["enumerate", "--n", "100000", "--d", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("size guard"), "{err}");
    assert_eq!(jackpart(&["--help"]).0, 0);
}

#[test]
fn json_output_parses() {
    let (code, out, _) = jackpart(&["zconst", "--d", "2", "--beta", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["header"]["generator"], "ChaCha20");
    assert_eq!(v["header"]["config"]["d"], 2);
    let z = v["rows"][0]["z"].as_f64().unwrap();
    assert!((z / (std::f64::consts::PI / 8.0).sqrt() - 1.0).abs() < 1e-14);
}

#[test]
fn out_dir_override_and_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &Path, threads: &str| {
        let status = Command::new(env!("CARGO_BIN_EXE_jackpart"))
            .args(["sample", "--d", "3", "--beta", "2", "--count", "50", "--seed", "4"])
            .args(["--out", "ignored/draws.csv", "--threads", threads])
            .env(jackpart::cli::OUT_DIR_ENV, sub)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(sub.join("draws.csv")).unwrap()
    };
    let a = run(&dir.path().join("a"), "1");
    let b = run(&dir.path().join("b"), "1");
    assert_eq!(a, b);
}

#[test]
fn sample_jack_partitions() {
    let (code, out, _) = jackpart(&["sample", "--n", "5", "--d", "2", "--alpha", "2", "--count", "4"]);
    assert_eq!(code, 0);
    let rows = body(&out);
    assert_eq!(rows.len(), 5);
    for r in &rows[1..] {
        let parts: usize = r
            .split_once(',')
            .unwrap()
            .1
            .trim_matches(|c| c == '"' || c == '(' || c == ')')
            .split(',')
            .map(|p| p.parse::<usize>().unwrap())
            .sum();
        assert_eq!(parts, 5);
    }
}

#[test]
fn rsk_check_passes() {
    let (code, out, _) = jackpart(&["rsk-check", "--n", "5"]);
    assert_eq!(code, 0);
    assert!(body(&out)[1..].iter().all(|r| r.ends_with(",0")));
}
