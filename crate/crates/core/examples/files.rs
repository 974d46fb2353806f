//! Sequence and model files as used by the `relex` binary.
//!
//!     cargo run --example files

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relex::io::{point_to_json, read_sequence_from, write_sequence_to};
use relex::prelude::*;

fn main() -> relex::Result<()> {
    let f = make_paintbox(Weight::ratio(1, 5), vec![Weight::ratio(1, 2), Weight::ratio(3, 10)])?;
    println!("model file:\n{}", serde_json::to_string_pretty(&point_to_json(&f)).unwrap());

    let x = sample_epsilon_f(&f, 5, &mut ChaCha8Rng::seed_from_u64(9));
    let mut buf = Vec::new();
    write_sequence_to(&x.to_sequence(), &mut buf)?;
    let text = String::from_utf8(buf).unwrap();
    println!("sequence file:\n{text}");

    let back = read_sequence_from(text.as_bytes())?;
    assert_eq!(canonical_form(&back), x);

    match read_sequence_from("{\"format\":1,\"sig\":[1],\"n\":1}\n{\"i\":1,\"rels\":[[[1,2]]]}\n".as_bytes()) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
