//! Browsing sessions as paths: one ordered tuple per session.
//!
//!     cargo run --example paths

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relex::prelude::*;

fn main() -> relex::Result<()> {
    let w = Weight::ratio;
    let (a, b) = (Node::Atom, Node::Blip);
    // home -> search -> page, home -> page, and sessions that wander off
    let f = SimplexPoint::new(
        Signature::identity(3),
        [
            (make_path_code(&[a(1), a(2), b(0)])?, w(2, 5)),
            (make_path_code(&[a(1), b(0)])?, w(3, 10)),
            (make_path_code(&[a(1), a(2), a(1)])?, w(1, 10)),
            (make_path_code(&[b(0), b(1), b(2)])?, w(1, 5)),
        ],
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let x = sample_epsilon_f(&f, 8, &mut rng);
    for s in x.items() {
        let steps: Vec<String> = s.tuples().map(|(_, t)| format!("{t:?}")).collect();
        println!("{}", steps.join(" "));
    }

    // relabeling pages does not change the class
    let y = x.to_sequence().relabel(|p| Some(100 + 3 * p))?;
    println!("equivalent after relabeling: {}", are_equivalent(&x.to_sequence(), &y)?);

    let r = test_exchangeability_exact(&f, 4)?;
    println!("max TV over the 24 permutations of [4]: {}", r.max_tv);
    Ok(())
}
