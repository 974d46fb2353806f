//! Exact and Monte Carlo exchangeability checks.
//!
//! An i.i.d. code law gives zero total variation under every permutation of
//! positions. A law whose code depends on the position does not.
//!
//!     cargo run --example exchangeability

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relex::inference::{max_tv_over_permutations, PositionalLaw};
use relex::prelude::*;

fn main() -> relex::Result<()> {
    let w = Weight::ratio;
    let f = SimplexPoint::new(
        Signature::pairs(),
        [
            (make_pair_code(Node::Atom(1), Node::Atom(2))?, w(1, 3)),
            (make_pair_code(Node::Atom(2), Node::Blip(0))?, w(1, 3)),
            (make_pair_code(Node::Blip(0), Node::Blip(1))?, w(1, 3)),
        ],
    )?;
    for n in 1..=4 {
        let r = test_exchangeability_exact(&f, n)?;
        println!("n={n}: {} permutations, max TV {}", r.per_sigma.len(), r.max_tv);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mc = test_exchangeability_mc(&f, 6, &Permutation::reversal(6), 20_000, &mut rng)?;
    println!("Monte Carlo, n=6 reversed: {}", mc.to_json());

    // positions 1 and 2 see a recurring atom, position 3 a blip
    let atom = SimplexPoint::degenerate(Signature::singletons(), Structure::singleton(1))?;
    let blip = SimplexPoint::degenerate(Signature::singletons(), Structure::singleton(0))?;
    let positional = PositionalLaw::new(vec![atom.clone(), atom, blip])?;
    let r = max_tv_over_permutations(&positional.exact_distribution(3)?)?;
    println!("positional law, n=3: max TV {}", r.max_tv);
    for (sigma, tv) in &r.per_sigma {
        println!("  sigma {:?}: {tv}", sigma.images().iter().map(|i| i + 1).collect::<Vec<_>>());
    }
    let mc = test_exchangeability_mc(&positional, 3, &Permutation::reversal(3), 5000, &mut rng)?;
    println!("Monte Carlo p-value: {:.3e}", mc.p);
    Ok(())
}
