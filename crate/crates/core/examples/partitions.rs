//! Enumerate bounded-length partitions and their conjugates.
//!
//!     cargo run --example partitions -- 8 3

use jackpart::{count_partitions, enumerate_partitions, hook_product};
use jackpart::tableaux::f_hook;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer"));
    let n = args.next().unwrap_or(6);
    let d = args.next().unwrap_or(3);

    println!("{} partitions of {n} with at most {d} parts", count_partitions(n, d));
    for l in enumerate_partitions(n, d) {
        println!("{:>16}  conj {:>16}  H = {:>8}  f = {}", l.to_string(), l.conjugate().to_string(), hook_product(&l), f_hook(&l));
    }
}
