//! Draws from the traceless Gaussian beta ensemble, checked against the
//! two-point closed form.
//!
//!     cargo run --release --example traceless_sampler -- 4 2.0

use jackpart::samplers::{sample_traceless_gbe, RngSeed};
use jackpart::stats::{dkw_half_width, gbe0_marginal_cdf, ContinuousCdf};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(3, |s| s.parse().unwrap());
    let beta: f64 = args.get(1).map_or(2.0, |s| s.parse().unwrap());

    let mut rng = RngSeed::new(7).rng();
    for _ in 0..5 {
        let s = sample_traceless_gbe(d, beta, &mut rng).unwrap();
        println!("{:?}  trace {:+.1e}", s.values(), s.trace());
    }

    let samples = 100_000;
    let top: Vec<f64> = (0..samples)
        .map(|_| sample_traceless_gbe(2, beta, &mut rng).unwrap().values()[0])
        .collect();
    let emp = ContinuousCdf::empirical(top);
    let exact = gbe0_marginal_cdf(2, beta, 1).unwrap();
    println!("\nd = 2, beta = {beta}: empirical vs closed form for the top value");
    for x in [0.0, 0.25, 0.5, 0.75, 1.0, 1.5] {
        println!("  F({x:.2}) = {:.4}  exact {:.4}", emp.eval(x), exact.eval(x));
    }
    println!("  95% band +/- {:.4}", dkw_half_width(samples, 0.05));
}
