//! Row insertion on a permutation and on a fixed-point-free involution.

use jackpart::samplers::{sample_fpf_involution, RngSeed};
use jackpart::tableaux::{
    longest_decreasing, longest_increasing, odd_columns, rsk, rsk_inverse, PermutationWord,
};

fn show(name: &str, s: &PermutationWord) {
    let (p, q) = rsk(s);
    println!("{name}: {:?}", s.as_slice());
    println!("  P = {:?}", p.rows());
    println!("  Q = {:?}", q.rows());
    println!(
        "  shape {}  L^in {}  L^de {}  odd columns {}  fixed points {}",
        p.shape(),
        longest_increasing(s),
        longest_decreasing(s),
        odd_columns(&p.shape()),
        s.fixed_points()
    );
    assert_eq!(&rsk_inverse(&p, &q).unwrap(), s);
}

fn main() {
    let s = PermutationWord::new(vec![4, 1, 7, 3, 6, 2, 5]).unwrap();
    show("permutation", &s);
    show("inverse", &s.inverse());

    let mut rng = RngSeed::new(3).rng();
    show("involution", &sample_fpf_involution(10, &mut rng).unwrap());
}
