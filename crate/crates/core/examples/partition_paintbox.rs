//! Exchangeable random partitions from a paintbox.
//!
//! Each position draws atom `j` with probability `f_j` or a blip with the
//! remaining mass; positions sharing an atom share a block.
//!
//!     cargo run --example partition_paintbox

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relex::prelude::*;

fn blocks(x: &CanonicalSequence) -> Vec<Vec<usize>> {
    let mut by: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, s) in x.items().iter().enumerate() {
        for a in s.domain() {
            by.entry(a).or_default().push(i + 1);
        }
    }
    by.into_values().collect()
}

fn main() -> relex::Result<()> {
    let w = Weight::ratio;
    let f = make_paintbox(w(0, 1), vec![w(1, 2), w(3, 10), w(1, 5)])?;
    println!("f = {f}");

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = sample_epsilon_f(&f, 12, &mut rng);
    println!("draw on [12]: {x}");
    println!("blocks: {:?}", blocks(&x));

    // the law of the partition of [2] is exact
    let d = exact_distribution(&f, 2)?;
    for (class, p) in d.classes() {
        println!("  {class}  {p}");
    }
    let same = d.mass_where(|c| c.items()[0] == c.items()[1]);
    println!("P(1 and 2 share a block) = {same}");

    // with dust every blip is a singleton block
    let dusty = make_paintbox(w(1, 2), vec![w(1, 2)])?;
    let y = sample_epsilon_f(&dusty, 12, &mut rng);
    println!("with dust: {:?}", blocks(&y));
    Ok(())
}
