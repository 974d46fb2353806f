//! Co-authorship: every paper is the set of its authors.
//!
//! A set of size k is stored in slot k as all k! orderings, so relabeling
//! cannot tell members apart.
//!
//!     cargo run --example coauthor_sets

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relex::prelude::*;

fn main() -> relex::Result<()> {
    let w = Weight::ratio;
    let (a, b) = (Node::Atom, Node::Blip);
    // a prolific pair, a prolific author with students, and one-off teams
    let f = SimplexPoint::new(
        Signature::identity(3),
        [
            (make_set_code(&[a(1), a(2)])?, w(3, 10)),
            (make_set_code(&[a(1), b(0), b(1)])?, w(3, 10)),
            (make_set_code(&[a(2), a(3), b(0)])?, w(1, 5)),
            (make_set_code(&[b(0), b(1)])?, w(1, 5)),
        ],
    )?;
    println!("f = {f}");

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = sample_epsilon_f(&f, 10, &mut rng);
    for (i, s) in x.items().iter().enumerate() {
        let authors: Vec<i64> = s.domain().into_iter().collect();
        println!("paper {:>2}: authors {authors:?}", i + 1);
    }

    let big = sample_epsilon_f(&f, 5000, &mut rng);
    let fhat = estimate_f(&big, 2)?;
    println!("estimate from 5000 papers:");
    for code in fhat.codes_in_enumeration_order() {
        println!("  {:<60} {:.4}", code.encode(), fhat.weight(code).to_f64());
    }
    println!("distance to f: {:.4}", simplex_distance(&fhat, &f.merge_blip_classes())?);
    Ok(())
}
