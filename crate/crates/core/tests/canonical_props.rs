use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relex::prelude::*;

fn sig123() -> Signature {
    Signature::new(vec![1, 2, 3]).unwrap()
}

prop_compose! {
    fn structure()(
        s1 in prop::collection::vec(-4i64..8, 0..3),
        s2 in prop::collection::vec((-4i64..8, -4i64..8), 0..4),
        s3 in prop::collection::vec((-4i64..8, -4i64..8, -4i64..8), 0..2),
    ) -> Structure {
        Structure::from_slots([
            s1.into_iter().map(|a| vec![a]).collect::<Vec<_>>(),
            s2.into_iter().map(|(a, b)| vec![a, b]).collect(),
            s3.into_iter().map(|(a, b, c)| vec![a, b, c]).collect(),
        ])
    }
}

prop_compose! {
    fn pair_sequence(max_len: usize)(
        v in prop::collection::vec((1i64..7, 1i64..7), 0..max_len),
    ) -> RelSequence {
        RelSequence::new(
            Signature::pairs(),
            v.into_iter().map(|(a, b)| Structure::pair(a, b)).collect(),
        )
        .unwrap()
    }
}

prop_compose! {
    fn mixed_sequence()(items in prop::collection::vec(structure(), 0..8)) -> RelSequence {
        RelSequence::new(sig123(), items).unwrap()
    }
}

// injective map of `dom` into a wide range, drawn from `seed`
fn injection(dom: &BTreeSet<i64>, seed: u64) -> HashMap<i64, i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets = BTreeSet::new();
    while targets.len() < dom.len() {
        targets.insert(rng.gen_range(-10_000i64..10_000));
    }
    let mut targets: Vec<i64> = targets.into_iter().collect();
    targets.shuffle(&mut rng);
    dom.iter().copied().zip(targets).collect()
}

fn seq_domain(x: &RelSequence) -> BTreeSet<i64> {
    x.items().iter().flat_map(|s| s.domain()).collect()
}

type Triple = ((i64, i64), (i64, i64), (i64, i64));

proptest! {
    #[test]
    fn relabel_then_inverse_is_identity(a in structure(), seed in any::<u64>()) {
        prop_assume!(a.validate(&sig123()).is_ok());
        let rho = injection(&a.domain(), seed);
        let inv: HashMap<i64, i64> = rho.iter().map(|(&k, &v)| (v, k)).collect();
        let back = a.relabel_with(&rho).unwrap().relabel_with(&inv).unwrap();
        prop_assert_eq!(back.encode(), a.encode());
        prop_assert_eq!(back, a);
    }

    #[test]
    fn relabel_maps_domain(a in structure(), seed in any::<u64>()) {
        let rho = injection(&a.domain(), seed);
        let image: BTreeSet<i64> = a.domain().iter().map(|x| rho[x]).collect();
        prop_assert_eq!(a.relabel_with(&rho).unwrap().domain(), image);
    }

    #[test]
    fn decode_inverts_encode(a in structure()) {
        prop_assert_eq!(Structure::decode(&a.encode()).unwrap(), a);
    }

    #[test]
    fn canonical_form_is_relabel_invariant(x in mixed_sequence(), seed in any::<u64>()) {
        let rho = injection(&seq_domain(&x), seed);
        let y = x.relabel(|a| rho.get(&a).copied()).unwrap();
        prop_assert_eq!(canonical_form(&y), canonical_form(&x));
        prop_assert!(are_equivalent(&x, &y).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent(x in mixed_sequence()) {
        let c = canonical_form(&x);
        let cc = canonical_form(&c.to_sequence());
        prop_assert_eq!(cc.encode(), c.encode());
    }

    #[test]
    fn witness_carries_input_onto_canonical(x in mixed_sequence()) {
        let c = canonical_form(&x);
        let w = c.witness();
        let mapped = x.relabel(|a| w.get(&a).copied()).unwrap();
        prop_assert_eq!(mapped.items(), c.items());
    }

    #[test]
    fn canonical_ids_appear_in_order(x in pair_sequence(10)) {
        let c = canonical_form(&x);
        let mut next = 1;
        for s in c.items() {
            for a in s.ids_in_order() {
                prop_assert!(a <= next);
                if a == next {
                    next += 1;
                }
            }
        }
    }

    #[test]
    fn restriction_is_projective(x in mixed_sequence(), k in 0usize..8, m in 0usize..8) {
        let c = canonical_form(&x);
        let (m, k) = (m.min(k).min(c.len()), k.max(m).min(c.len()));
        prop_assert_eq!(c.restrict(k).unwrap().restrict(m).unwrap(), c.restrict(m).unwrap());
    }

    #[test]
    fn distance_is_an_ultrametric(
        v in prop::collection::vec(((1i64..4, 1i64..4), (1i64..4, 1i64..4), (1i64..4, 1i64..4)), 0..5),
        depth in 0usize..5,
    ) {
        // small id range so the three sequences often share prefixes
        let build = |pick: &dyn Fn(&Triple) -> (i64, i64)| {
            let items = v.iter().map(|t| { let (a, b) = pick(t); Structure::pair(a, b) }).collect();
            canonical_form(&RelSequence::new(Signature::pairs(), items).unwrap())
        };
        let (x, y, z) = (build(&|t| t.0), build(&|t| t.1), build(&|t| t.2));
        let depth = depth.min(v.len());
        let d = |a: &CanonicalSequence, b: &CanonicalSequence| a.distance_at_depth(b, depth).unwrap();
        prop_assert!(d(&x, &z) <= d(&x, &y).max(d(&y, &z)));
        prop_assert_eq!(d(&x, &y), d(&y, &x));
    }

    #[test]
    fn permuting_by_inverse_restores(x in pair_sequence(6), seed in any::<u64>()) {
        let c = canonical_form(&x);
        let mut images: Vec<usize> = (0..c.len()).collect();
        images.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let sigma = Permutation::from_zero_based(images).unwrap();
        let back = c.permute(&sigma).unwrap().permute(&sigma.inverse()).unwrap();
        prop_assert_eq!(back, c);
    }
}

#[test]
fn encode_is_injective_on_small_structures() {
    // every structure with at most three tuples on {1,2,3} under (1,2,3)
    let mut tuples: Vec<(usize, Vec<i64>)> = Vec::new();
    for k in 1..=3usize {
        for t in std::iter::repeat_n(1..=3i64, k).multi_cartesian_product() {
            tuples.push((k, t));
        }
    }
    let mut seen: HashMap<String, Structure> = HashMap::new();
    for size in 0..=3 {
        for pick in tuples.iter().combinations(size) {
            let mut slots = vec![Vec::new(); 3];
            for (k, t) in pick {
                slots[k - 1].push(t.clone());
            }
            let s = Structure::from_slots(slots);
            s.validate(&sig123()).unwrap();
            let text = s.encode();
            assert_eq!(Structure::decode(&text).unwrap(), s);
            if let Some(prev) = seen.insert(text.clone(), s.clone()) {
                panic!("{prev:?} and {s:?} both encode as {text}");
            }
        }
    }
    // 39 tuples: 1 + 39 + C(39,2) + C(39,3)
    assert_eq!(seen.len(), 1 + 39 + 741 + 9139);
}

// exhaustive search over bijections between the two domains
fn brute_equivalent(x: &RelSequence, y: &RelSequence) -> bool {
    let dx: Vec<i64> = seq_domain(x).into_iter().collect();
    let dy: Vec<i64> = seq_domain(y).into_iter().collect();
    if dx.len() != dy.len() || x.len() != y.len() {
        return false;
    }
    dx.iter().copied().permutations(dx.len()).any(|p| {
        let rho: HashMap<i64, i64> = dy.iter().copied().zip(p).collect();
        y.items().iter().map(|s| s.relabel_with(&rho).unwrap()).eq(x.items().iter().cloned())
    })
}

proptest! {
    #[test]
    fn are_equivalent_matches_bijection_search(x in pair_sequence(4), y in pair_sequence(4)) {
        prop_assume!(x.len() == y.len());
        prop_assert_eq!(are_equivalent(&x, &y).unwrap(), brute_equivalent(&x, &y));
    }

    #[test]
    fn relabeled_copies_pass_bijection_search(x in pair_sequence(4), seed in any::<u64>()) {
        let rho = injection(&seq_domain(&x), seed);
        let y = x.relabel(|a| rho.get(&a).copied()).unwrap();
        prop_assert!(brute_equivalent(&x, &y));
        prop_assert!(are_equivalent(&x, &y).unwrap());
    }
}

#[test]
fn call_sequence_canonical_form() {
    let x = RelSequence::new(
        Signature::pairs(),
        [(7, 9), (2, 7), (8, 4), (7, 2)].iter().map(|&(a, b)| Structure::pair(a, b)).collect(),
    )
    .unwrap();
    assert_eq!(canonical_form(&x).encode(), "[{1:[(1,2)]},{1:[(3,1)]},{1:[(4,5)]},{1:[(1,3)]}]");
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(Signature::new(vec![2, 0, 1]).is_err());
    let bad = Structure::in_slot(1, [vec![1, 2, 3]]);
    assert!(RelSequence::new(Signature::pairs(), vec![bad]).is_err());
    let s = Structure::pair(1, 2);
    assert!(matches!(s.relabel(|a| (a == 1).then_some(5)), Err(Error::UndefinedElement(2))));
    assert!(matches!(s.relabel(|_| Some(5)), Err(Error::NonInjective(..))));
    let c = canonical_form(&RelSequence::new(Signature::pairs(), vec![s]).unwrap());
    assert!(c.restrict(2).is_err());
    assert!(Permutation::from_one_based(&[1, 1]).is_err());
}
