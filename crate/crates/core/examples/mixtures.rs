//! Mixtures of simplex points.
//!
//! A mixture draws one point for the whole sequence and then samples i.i.d.
//! codes from it, so positions are exchangeable but correlated.
//!
//!     cargo run --example mixtures

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relex::prelude::*;

fn main() -> relex::Result<()> {
    let w = Weight::ratio;
    let phi = MixingMeasure::finite(vec![
        (w(1, 3), make_paintbox(w(0, 1), vec![w(1, 1)])?),
        (w(2, 3), make_paintbox(w(1, 1), vec![])?),
    ])?;
    let d = exact_distribution_phi(&phi, 3)?;
    println!("law of the partition of [3]:");
    for (class, p) in d.classes() {
        println!("  {class}  {p}");
    }
    println!("max TV over permutations: {}", relex::inference::max_tv_over_permutations(&d)?.max_tv);

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..3 {
        println!("draw: {}", sample_epsilon_phi(&phi, 6, &mut rng));
    }

    // a continuous mixing measure: the atom weight is uniform on (0, 1)
    let beta = MixingMeasure::generator(|rng| {
        let p: f64 = rng.gen_range(0.01..0.99);
        make_paintbox(Weight::Float(1.0 - p), vec![Weight::Float(p)]).expect("valid weights")
    });
    for _ in 0..3 {
        let x = sample_epsilon_phi(&beta, 20, &mut rng);
        let hits = x.items().iter().filter(|s| s.domain().contains(&1)).count();
        println!("generator draw: element 1 appears {hits} times out of 20");
    }
    Ok(())
}
