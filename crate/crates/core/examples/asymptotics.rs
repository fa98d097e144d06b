//! Finite-n ratios against their large-n limits.

use jackpart::asymptotics::{jack_regev_ratio, regev_ratio, sum_limit_ratio};

fn main() {
    println!("sum over P_n(2) of 1/(c c'), normalized");
    for alpha in [0.5, 1.0, 2.0] {
        let r: Vec<String> = [100, 400, 1600]
            .iter()
            .map(|&n| format!("{:.5}", sum_limit_ratio(n, 2, alpha).unwrap()))
            .collect();
        println!("  alpha = {alpha}: {}", r.join("  "));
    }

    println!("sum of (f^l)^beta over two-row shapes, normalized");
    for beta in [1.0, 2.0, 4.0] {
        let r: Vec<String> = [250, 1000, 2000]
            .iter()
            .map(|&n| format!("{:.5}", regev_ratio(n, 2, beta).unwrap()))
            .collect();
        println!("  beta = {beta}: {}", r.join("  "));
    }

    println!("jack analogue, d = 3");
    for alpha in [0.5, 1.0, 2.0] {
        let r: Vec<String> = [60, 120, 240]
            .iter()
            .map(|&n| format!("{:.5}", jack_regev_ratio(n, 3, alpha).unwrap()))
            .collect();
        println!("  alpha = {alpha}: {}", r.join("  "));
    }
}
