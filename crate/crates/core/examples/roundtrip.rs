//! Step-by-step label / star / dagger round trip.
//!
//! Uniform labels are attached to every element, recurring labels become
//! ranked atoms, one-off labels become blips, and dagger plus
//! canonicalization recovers the original class.
//!
//!     cargo run --example roundtrip

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relex::prelude::*;

fn main() -> relex::Result<()> {
    let x = RelSequence::new(
        Signature::pairs(),
        [(7, 9), (2, 7), (8, 4), (7, 2)].iter().map(|&(a, b)| Structure::pair(a, b)).collect(),
    )?;
    let c = canonical_form(&x);
    println!("input      {:?}", x.items().iter().map(|s| s.encode()).collect::<Vec<_>>());
    println!("canonical  {c}");

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let labeled = attach_uniform_labels(&c, &mut rng);
    for (i, l) in labeled.iter().enumerate() {
        println!("labels {}  {:?}", i + 1, l.slots());
    }

    let ordering = atom_order(&labeled, 2);
    for (r, (u, p)) in ordering.atoms().iter().zip(ordering.propensities()).enumerate() {
        println!("atom {}: label {u:.4}, propensity {p}", r + 1);
    }

    let codes: Vec<Structure> = labeled.iter().map(|l| star(l, &ordering)).collect();
    println!("codes      {:?}", codes.iter().map(|s| s.encode()).collect::<Vec<_>>());
    let y = dagger(c.sig(), &codes)?;
    println!("dagger     {:?}", y.items().iter().map(|s| s.encode()).collect::<Vec<_>>());
    println!("recovered  {}", canonical_form(&y));
    println!("round trip: {}", roundtrip_check(&c, &mut rng));
    Ok(())
}
