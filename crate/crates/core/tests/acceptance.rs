//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use jackpart::asymptotics::{
    ln_z_relation, phi, phi_envelope_sup_exact, regev_ratio, regev_sum, sum_limit_ratio_with,
    z_constant, z_prime_quadrature, Phi,
};
use jackpart::samplers::{sample_traceless_gbe, RngSeed};
use jackpart::stats::{convergence_experiment, gbe0_marginal_cdf, ContinuousCdf, ExperimentOptions};
use jackpart::tableaux::{
    f_hook, fpf_count_with_bounds, ratio_lemma_check, rsk_suite, tableaux_side, InvolutionCounting,
};
use jackpart::weights::{c_pair_direct, c_pair_gamma, jack_probability, SumMode, SumOptions};
use jackpart::{enumerate_partitions, hook_product, Alpha, Weight};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Self { ok, detail: detail.into() }
    }
}

fn exact_alpha(s: &str) -> Alpha {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    Alpha::exact(p.parse().unwrap(), q.parse().unwrap()).unwrap()
}

fn rational(w: &Weight) -> BigRational {
    w.as_exact().expect("exact").clone()
}

fn big(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    for a in ["1/3", "1/2", "1", "3/2", "2", "3"] {
        let alpha = exact_alpha(a);
        for n in 0..=10 {
            let total: BigRational = enumerate_partitions(n, n.max(1))
                .map(|l| rational(&jack_probability(&l, &alpha)))
                .sum();
            if !total.is_one() {
                bad.push(format!("alpha={a} n={n}: {total}"));
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("6 alphas x n<=10, mismatches {bad:?}"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0f64;
    let mut cases = 0u64;
    for &a in &[0.5, 1.0, 2.0, 2.7] {
        let alpha = Alpha::float(a).unwrap();
        for n in 0..=30 {
            for d in 1..=6 {
                for l in enumerate_partitions(n, d) {
                    let x = c_pair_direct(&l, &alpha);
                    let y = c_pair_gamma(&l, &alpha, d).unwrap();
                    worst = worst
                        .max(x.c.to_log().log_distance(y.c.to_log()))
                        .max(x.c_prime.to_log().log_distance(y.c_prime.to_log()));
                    cases += 1;
                }
            }
        }
    }
    Outcome::new(worst < 1e-9, format!("{cases} cases, max rel {worst:.2e} (tol 1e-9)"))
}

fn criterion_3() -> Outcome {
    let two = exact_alpha("2");
    let half = exact_alpha("1/2");
    let mut fails = 0;
    let mut cases = 0;
    for n in 0..=12 {
        let scale = BigRational::new(BigInt::one(), BigInt::from(4u32).pow(n as u32));
        for l in enumerate_partitions(n, n.max(1)) {
            cases += 1;
            if rational(&c_pair_direct(&l, &two).product()) != big(&hook_product(&l.doubled_rows())) {
                fails += 1;
            }
            let h = big(&hook_product(&l.doubled_columns())) * &scale;
            if rational(&c_pair_direct(&l, &half).product()) != h {
                fails += 1;
            }
        }
    }
    Outcome::new(fails == 0, format!("{cases} partitions, {fails} mismatches"))
}

fn criterion_4() -> Outcome {
    let lines = rsk_suite(7, 8);
    let failures: u64 = lines.iter().map(|l| l.failures).sum();
    let cases: u64 = lines.iter().map(|l| l.cases).sum();
    Outcome::new(failures == 0, format!("{cases} checks over S_N (N<=7) and involutions (N<=8), {failures} failures"))
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for n in 1..=5 {
        for a in 0..=2 * n + 1 {
            for b in 0..=n + 1 {
                cases += 1;
                let brute = fpf_count_with_bounds(n, a, b);
                let t = tableaux_side(n, a, b);
                if !t.agree() || t.doubled_rows != brute || t.even_columns.as_ref() != Some(&brute) {
                    bad.push(format!("counting n={n} a={a} b={b}"));
                }
            }
        }
        for alpha in ["1/2", "2"] {
            let al = exact_alpha(alpha);
            for d in 1..=3 {
                for h in 0..=n {
                    cases += 1;
                    let (cdf, ratio) = ratio_lemma_check(n, d, h, &al, InvolutionCounting::BruteForce).unwrap();
                    if cdf != ratio {
                        bad.push(format!("ratio n={n} alpha={alpha} d={d} h={h}"));
                    }
                }
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("{cases} cases, mismatches {bad:?}"))
}

fn criterion_6() -> Outcome {
    let opts = ExperimentOptions::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for a in ["1/2", "1", "2"] {
        let rows = convergence_experiment(2, &exact_alpha(a), 1, &[25, 100, 400], &opts).unwrap();
        let ks: Vec<f64> = rows.iter().map(|r| r.ks).collect();
        let dec = ks[0] > ks[1] && ks[1] > ks[2];
        let last = ks[2] < 0.06;
        ok &= dec && last;
        parts.push(format!(
            "d=2 alpha={a} KS={:.4}/{:.4}/{:.4} decreasing={dec} KS(400)<0.06={last}",
            ks[0], ks[1], ks[2]
        ));
    }
    let mc = ExperimentOptions { monte_carlo_target: true, ..opts };
    let ks3 = convergence_experiment(3, &exact_alpha("1"), 1, &[300], &mc).unwrap()[0].ks;
    ok &= ks3 < 0.08;
    parts.push(format!("d=3 alpha=1 KS(300)={ks3:.4} (<0.08: {})", ks3 < 0.08));
    Outcome::new(ok, parts.join("; "))
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for &beta in &[1.0, 2.0, 4.0] {
        let r: Vec<f64> = [250, 1000, 2000].iter().map(|&n| regev_ratio(n, 2, beta).unwrap()).collect();
        let gap: Vec<f64> = r.iter().map(|x| (x - 1.0).abs()).collect();
        let good = gap[2] < 0.05 && gap[0] > gap[1] && gap[1] > gap[2];
        ok &= good;
        parts.push(format!("beta={beta} ratio={:.5}/{:.5}/{:.5}", r[0], r[1], r[2]));
    }
    let anchor = regev_sum(3, 2, 2.0).to_f64();
    let exact: BigUint = enumerate_partitions(3, 2).map(|l| f_hook(&l).pow(2)).sum();
    let anchored = exact == BigUint::from(5u32) && (anchor - 5.0).abs() < 1e-12;
    ok &= anchored;
    parts.push(format!("anchor sum={exact}"));
    Outcome::new(ok, parts.join("; "))
}

fn criterion_8() -> Outcome {
    let opts = SumOptions { mode: SumMode::Sequential, ..SumOptions::default() };
    let mut ok = true;
    let mut parts = Vec::new();
    for &a in &[0.5, 1.0, 2.0] {
        let r = sum_limit_ratio_with(1600, 2, a, opts).unwrap();
        ok &= (r - 1.0).abs() < 0.05;
        parts.push(format!("d=2 alpha={a} ratio(1600)={r:.5}"));
    }
    for &a in &[0.5, 1.0, 2.0] {
        let r = sum_limit_ratio_with(10_000, 1, a, opts).unwrap();
        ok &= (r - 1.0).abs() < 1e-3;
        parts.push(format!("d=1 alpha={a} ratio(1e4)={r:.6}"));
    }
    Outcome::new(ok, parts.join("; "))
}

fn criterion_9() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut worst_mass = 0f64;
    for &theta in &[0.5, 1.0, 2.0] {
        for &(n, d) in &[(100, 1), (1000, 1), (10_000, 2), (20_000, 2), (30_000, 3)] {
            let m = Phi::new(n, d, theta).unwrap().total_mass();
            worst_mass = worst_mass.max((m - 1.0).abs());
        }
    }
    ok &= worst_mass < 1e-10;
    parts.push(format!("max |mass-1|={worst_mass:.1e}"));

    let mut worst_gauss = 0f64;
    for &theta in &[0.5, 1.0, 2.0] {
        for y in -2..=2 {
            let y = y as f64;
            let g = (-y * y / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
            worst_gauss = worst_gauss.max((phi(20_000, 2, theta, y).unwrap() - g).abs());
        }
    }
    ok &= worst_gauss < 0.01;
    parts.push(format!("max Gaussian gap at n/d=1e4 {worst_gauss:.4}"));

    for &theta in &[0.5, 1.0, 2.0] {
        let s: Vec<f64> = [100, 1000, 10_000]
            .iter()
            .map(|&c| phi_envelope_sup_exact(c, 1, theta, -10.0, 10.0).unwrap())
            .collect();
        let good = s.iter().all(|v| v.is_finite()) && s[0] >= s[1] && s[1] >= s[2];
        ok &= good;
        parts.push(format!("theta={theta} sup={:.4}/{:.4}/{:.4}", s[0], s[1], s[2]));
    }
    Outcome::new(ok, parts.join("; "))
}

fn criterion_10() -> Outcome {
    const SAMPLES: usize = 100_000;
    let mut ok = true;
    let mut parts = Vec::new();
    let mut all_traceless = true;
    for (k, &beta) in [1.0, 2.0, 4.0].iter().enumerate() {
        let mut rng = RngSeed::new(10).substream(k as u64);
        let mut top = Vec::with_capacity(SAMPLES);
        for _ in 0..SAMPLES {
            let s = sample_traceless_gbe(2, beta, &mut rng).unwrap();
            all_traceless &= s.is_traceless();
            top.push(s.values()[0]);
        }
        let ks = sample_ks(top, &gbe0_marginal_cdf(2, beta, 1).unwrap());
        ok &= ks < 0.01;
        parts.push(format!("beta={beta} KS={ks:.4}"));
    }
    for d in 3..=6 {
        let mut rng = RngSeed::new(10).substream(d as u64 + 10);
        for _ in 0..10_000 {
            all_traceless &= sample_traceless_gbe(d, 2.0, &mut rng).unwrap().is_traceless();
        }
    }
    ok &= all_traceless;
    parts.push(format!("traceless={all_traceless}"));
    let mut worst = 0f64;
    for d in 2..=3 {
        for &beta in &[1.0, 2.0, 4.0] {
            let z = z_constant(d, beta).unwrap().value;
            let zp = z_prime_quadrature(d, beta).unwrap();
            worst = worst.max(((z / zp).ln() - ln_z_relation(d, beta)).abs());
        }
    }
    ok &= worst < 1e-8;
    parts.push(format!("Z/Z' relation err {worst:.1e}"));
    Outcome::new(ok, parts.join("; "))
}

/// Two-sided KS distance between the empirical CDF of `xs` and `exact`.
fn sample_ks(mut xs: Vec<f64>, exact: &ContinuousCdf) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter().enumerate().fold(0f64, |m, (k, &x)| {
        let f = exact.eval(x);
        m.max((f - k as f64 / n).abs()).max(((k + 1) as f64 / n - f).abs())
    })
}

const REPORT: &[&[&str]] = &[
    &["enumerate", "--n", "12", "--d", "3"],
    &["weights", "--n", "8", "--d", "3", "--alpha", "3/2"],
    &["law", "--n", "40", "--d", "3", "--alpha", "1/2", "--marginal", "2"],
    &["converge", "--d", "2", "--alpha", "1/2", "--ladder", "25,100,400"],
    &["converge", "--d", "2", "--alpha", "1", "--ladder", "25,100,400"],
    &["converge", "--d", "2", "--alpha", "2", "--ladder", "25,100,400"],
    &["converge", "--d", "3", "--alpha", "1", "--n", "300", "--mc"],
    &["regev", "--d", "2", "--beta", "2", "--ladder", "250,1000,2000"],
    &["regev", "--d", "2", "--alpha", "1/2", "--ladder", "250,1000,2000"],
    &["sumlimit", "--d", "2", "--alpha", "1", "--ladder", "100,400,1600"],
    &["phi", "--n", "10000", "--d", "1", "--theta", "0.5"],
    &["zconst", "--d", "4", "--beta", "2"],
    &["sample", "--d", "3", "--beta", "2", "--count", "1000"],
    &["sample", "--n", "30", "--d", "3", "--alpha", "2", "--count", "1000"],
    &["rsk-check", "--n", "7"],
];

fn write_report(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    for (k, args) in REPORT.iter().enumerate() {
        let name = format!("{k:02}-{}.csv", args[0]);
        let path = dir.join(&name);
        let mut argv = vec!["jackpart".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        argv.extend(["--seed", "0", "--deterministic", "--threads", "2", "--out"].map(String::from));
        argv.push(path.to_string_lossy().into_owned());
        let code = jackpart::cli::run(argv);
        assert_eq!(code, 0, "{args:?}");
        files.push((name, std::fs::read(&path).unwrap()));
    }
    files
}

fn criterion_11() -> Outcome {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let first = write_report(a.path());
    let second = write_report(b.path());
    let differing: Vec<&str> = first
        .iter()
        .zip(&second)
        .filter(|(x, y)| x != y)
        .map(|(x, _)| x.0.as_str())
        .collect();
    let bytes: usize = first.iter().map(|f| f.1.len()).sum();
    Outcome::new(
        differing.is_empty(),
        format!("{} files, {bytes} bytes, differing {differing:?}", first.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 11] = [
        ("exact normalization", criterion_1, Some(10)),
        ("direct vs gamma weights", criterion_2, Some(60)),
        ("doubled hook identities", criterion_3, None),
        ("RSK suite", criterion_4, Some(30)),
        ("involution counts and ratio identity", criterion_5, None),
        ("convergence to the traceless ensemble", criterion_6, Some(300)),
        ("Regev asymptotics", criterion_7, Some(120)),
        ("restricted sum limit", criterion_8, None),
        ("phi density", criterion_9, None),
        ("traceless sampler and normalizers", criterion_10, None),
        ("determinism", criterion_11, None),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|s| took <= Duration::from_secs(s));
        let ok = out.ok && in_time;
        if !ok {
            failed += 1;
        }
        let budget = limit.map(|s| format!(" (limit {s}s)")).unwrap_or_default();
        println!(
            "{} {:>2} {name}: {} [{:.2}s{budget}]",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            out.detail,
            took.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
