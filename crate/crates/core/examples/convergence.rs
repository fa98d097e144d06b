//! KS distance between the scaled first row under the restricted Jack
//! measure and its traceless-ensemble limit.
//!
//!     cargo run --release --example convergence -- 2 1/2 25,100,400

use jackpart::stats::{convergence_experiment, exact_scaled_marginal, ExperimentOptions};
use jackpart::Alpha;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(2, |s| s.parse().unwrap());
    let alpha: Alpha = args.get(1).map_or("1", String::as_str).parse().unwrap();
    let ladder: Vec<usize> = args
        .get(2)
        .map_or("25,100,400", String::as_str)
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();

    let rows = convergence_experiment(d, &alpha, 1, &ladder, &ExperimentOptions::default()).unwrap();
    for r in &rows {
        println!("n = {:>5}  KS = {:.4}", r.n, r.ks);
    }

    let n = ladder[0];
    let law = exact_scaled_marginal(n, d, &alpha.to_float(), 1).unwrap();
    println!("\nlaw of the scaled first row at n = {n} (mean {:.4})", law.mean());
    for (x, p) in law.points().iter().zip(law.masses()) {
        println!("  {x:>8.4}  {p:.6}");
    }
}
