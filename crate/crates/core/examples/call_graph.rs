//! Edge-exchangeable interaction data, e.g. phone calls.
//!
//! Reads an edge list, canonicalizes it, estimates the simplex point and
//! draws a synthetic call log of the same length from the estimate.
//!
//!     cargo run --example call_graph [-- path/to/edges.txt]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relex::io::read_edge_list_from;
use relex::prelude::*;

const CALLS: &str = include_str!("data/calls.txt");

fn main() -> relex::Result<()> {
    let x = match std::env::args().nth(1) {
        Some(path) => relex::io::read_edge_list(path, true)?,
        None => read_edge_list_from(CALLS.as_bytes(), true)?,
    };
    let c = canonical_form(&x);
    println!("{} calls among {} people", c.len(), c.element_count());
    println!("first four, canonical: {}", c.restrict(4.min(c.len()))?);

    let fhat = estimate_f(&c, 2)?;
    println!("estimated f:");
    for code in fhat.codes_in_enumeration_order() {
        println!("  {:<20} {}", code.encode(), fhat.weight(code));
    }
    for j in fhat.atoms() {
        println!("  propensity of caller rank {j}: {}", propensity(&fhat, j));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let synthetic = sample_epsilon_f(&fhat, c.len(), &mut rng);
    println!("synthetic log: {synthetic}");

    // fictitious callers: one code, both ends recurring
    let f = SimplexPoint::new(
        Signature::pairs(),
        [
            (make_pair_code(Node::Atom(1), Node::Atom(2))?, Weight::ratio(1, 2)),
            (make_pair_code(Node::Atom(1), Node::Blip(0))?, Weight::ratio(1, 4)),
            (make_pair_code(Node::Blip(0), Node::Blip(1))?, Weight::ratio(1, 4)),
        ],
    )?;
    println!("hub-and-spoke draw: {}", sample_epsilon_f(&f, 8, &mut rng));
    Ok(())
}
