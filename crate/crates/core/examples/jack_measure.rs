//! Exact Jack probabilities, restricted to at most `d` rows.
//!
//!     cargo run --example jack_measure -- 6 2 1/2

use jackpart::weights::{c_pair_direct, jack_probability, RestrictedLaw, SumOptions};
use jackpart::Alpha;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(5, |s| s.parse().unwrap());
    let d: usize = args.get(1).map_or(2, |s| s.parse().unwrap());
    let alpha: Alpha = args.get(2).map_or("2", String::as_str).parse().unwrap();

    let law = RestrictedLaw::build(n, d, &alpha, SumOptions::default());
    println!("alpha = {alpha}, C_(n,d) = {}", law.constant.render());
    for (l, w) in law.iter() {
        let pair = c_pair_direct(l, &alpha);
        println!(
            "{:>14}  c = {:>10}  c' = {:>10}  P = {:>12}  restricted = {}",
            l.to_string(),
            pair.c.render(),
            pair.c_prime.render(),
            jack_probability(l, &alpha).render(),
            w.render()
        );
    }
}
