use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relex::io::{
    model_from_json, model_to_json, point_from_json, point_to_json, read_edge_list_from,
    read_sequence_from, write_sequence_to, Model,
};
use relex::prelude::*;

prop_compose! {
    fn sequence()(
        v in prop::collection::vec(prop::collection::vec((-5i64..9, -5i64..9), 1..3), 0..10),
    ) -> RelSequence {
        RelSequence::new(
            Signature::pairs(),
            v.into_iter().map(|t| Structure::in_slot(1, t.into_iter().map(|(a, b)| vec![a, b]))).collect(),
        )
        .unwrap()
    }
}

fn to_bytes(x: &RelSequence) -> Vec<u8> {
    let mut out = Vec::new();
    write_sequence_to(x, &mut out).unwrap();
    out
}

proptest! {
    #[test]
    fn sequence_files_round_trip(x in sequence()) {
        let bytes = to_bytes(&x);
        let back = read_sequence_from(bytes.as_slice()).unwrap();
        prop_assert_eq!(back.items(), x.items());
        prop_assert_eq!(to_bytes(&back), bytes);
    }

    #[test]
    fn canonical_files_are_stable(x in sequence()) {
        let c = canonical_form(&x).to_sequence();
        let bytes = to_bytes(&c);
        let back = canonical_form(&read_sequence_from(bytes.as_slice()).unwrap());
        prop_assert_eq!(to_bytes(&back.to_sequence()), bytes);
    }

    #[test]
    fn point_json_round_trips(seed in any::<u64>(), n in 1usize..30) {
        let f = make_paintbox(Weight::ratio(1, 7), vec![Weight::ratio(4, 7), Weight::ratio(2, 7)]).unwrap();
        let x = sample_epsilon_f(&f, n, &mut ChaCha8Rng::seed_from_u64(seed));
        let fhat = estimate_f(&x, 2).unwrap();
        let back = point_from_json(&point_to_json(&fhat)).unwrap();
        prop_assert_eq!(back.support(), fhat.support());
        prop_assert_eq!(point_to_json(&back).to_string(), point_to_json(&fhat).to_string());
    }
}

#[test]
fn malformed_sequence_files_name_the_line() {
    let cases = [
        ("", 1),
        ("{\"format\":2,\"sig\":[2],\"n\":0}\n", 1),
        ("{\"format\":1,\"sig\":[2],\"n\":1}\n{\"i\":2,\"rels\":[[[1,2]]]}\n", 2),
        ("{\"format\":1,\"sig\":[2],\"n\":1}\n{\"i\":1,\"rels\":[[[1]]]}\n", 2),
        ("{\"format\":1,\"sig\":[2],\"n\":2}\n{\"i\":1,\"rels\":[[[1,2]]]}\n", 2),
        ("{\"format\":1,\"sig\":[2],\"n\":1}\nnot json\n", 2),
    ];
    for (text, line) in cases {
        match read_sequence_from(text.as_bytes()) {
            Err(Error::Line { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn edge_lists() {
    let x = read_edge_list_from("7 9\n\n# comment\n2 7\n".as_bytes(), true).unwrap();
    assert_eq!(x.items(), &[Structure::pair(7, 9), Structure::pair(2, 7)]);
    let u = read_edge_list_from("1 2\n".as_bytes(), false).unwrap();
    assert_eq!(u.items()[0].tuple_count(), 2);
    for bad in ["3 3\n", "1\n", "1 x\n", "0 2\n", "1 2 3\n"] {
        assert!(read_edge_list_from(bad.as_bytes(), true).is_err(), "{bad:?}");
    }
}

#[test]
fn mixture_json_round_trips() {
    let w = Weight::ratio;
    let phi = MixingMeasure::finite(vec![
        (w(1, 4), make_paintbox(w(0, 1), vec![w(1, 1)]).unwrap()),
        (w(3, 4), make_paintbox(w(1, 2), vec![w(1, 2)]).unwrap()),
    ])
    .unwrap();
    let m = Model::Mixture(phi);
    let v = model_to_json(&m).unwrap();
    let back = model_from_json(&v).unwrap();
    assert_eq!(model_to_json(&back).unwrap(), v);
}

#[test]
fn float_weights_are_accepted() {
    let v = serde_json::json!({"sig": [1], "support": [
        {"code": "{1:[(1)]}", "weight": 0.25},
        {"code": "{1:[(0)]}", "weight": 0.75},
    ]});
    let f = point_from_json(&v).unwrap();
    assert!(!f.is_exact());
    let r = test_exchangeability_exact(&f, 3).unwrap();
    assert!(r.max_tv.to_f64() < 1e-12);
}
