//! The lattice density phi and the ensemble normalizers Z_d, Z'_d.

use jackpart::asymptotics::{phi_envelope_sup_exact, z_constant, z_prime_constant, Phi};

fn main() {
    for theta in [0.5, 1.0, 2.0] {
        let p = Phi::new(10_000, 1, theta).unwrap();
        let ys = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let vals: Vec<String> = ys.iter().map(|&y| format!("{:.4}", p.eval(y))).collect();
        println!(
            "theta = {theta}: mass {:.12}  phi {}  sup phi e^|y| {:.4}",
            p.total_mass(),
            vals.join(" "),
            phi_envelope_sup_exact(10_000, 1, theta, -10.0, 10.0).unwrap()
        );
    }
    println!();
    for d in 1..=5 {
        for beta in [1.0, 2.0, 4.0] {
            let z = z_constant(d, beta).unwrap();
            let zp = z_prime_constant(d, beta).unwrap();
            println!(
                "d = {d} beta = {beta}: Z = {:.6} +/- {:.1e} ({:?})  Z' = {:.6}",
                z.value, z.std_error, z.method, zp.value
            );
        }
    }
}
