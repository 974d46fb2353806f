//! Plug-in estimation of the simplex point from one long sequence.
//!
//!     cargo run --release --example estimation

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relex::prelude::*;

fn main() -> relex::Result<()> {
    let w = Weight::ratio;
    let f = SimplexPoint::new(
        Signature::pairs(),
        [
            (Structure::pair(1, 2), w(3, 10)),
            (Structure::pair(1, 0), w(1, 4)),
            (Structure::pair(0, 2), w(3, 20)),
            (Structure::pair(3, 0), w(1, 10)),
            (Structure::pair(0, -1), w(1, 5)),
        ],
    )?;
    // codes that differ only in blip order are indistinguishable in data
    let target = f.merge_blip_classes();
    println!("true f = {target}");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [100, 1_000, 10_000, 100_000] {
        let x = sample_epsilon_f(&f, n, &mut rng);
        let fhat = estimate_f(&x, 2)?;
        println!("N = {n:>6}: distance {:.4}", simplex_distance(&fhat, &target)?);
        if n == 100_000 {
            for code in fhat.codes_in_enumeration_order() {
                println!("  {:<16} {:.4} (true {})", code.encode(), fhat.weight(code).to_f64(), target.weight(code));
            }
            for j in fhat.atoms() {
                let id = x.witness()[&j];
                println!("  atom {j}: empirical propensity {:.4}, true {}", empirical_propensity(&x, id)?.to_f64(), propensity(&f, j));
            }
        }
    }
    Ok(())
}
