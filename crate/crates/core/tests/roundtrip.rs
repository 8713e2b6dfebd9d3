use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use xkg_core::amr::{parse_penman, serialize_penman};
use xkg_core::rdf::{diff, merge, parse_turtle, serialize_turtle};
use xkg_testkit::amr::random_amr;
use xkg_testkit::rdf::{isomorphic, random_graph};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn turtle_round_trip_is_isomorphic(seed in any::<u64>()) {
        let graph = random_graph(&mut StdRng::seed_from_u64(seed), 25);
        let text = serialize_turtle(&graph);
        let back = parse_turtle(&text).unwrap();
        prop_assert!(isomorphic(&graph, &back), "{}", text);
        if graph.iter().all(|t| !t.subject.is_blank() && !t.object.is_blank()) {
            prop_assert_eq!(serialize_turtle(&back), text);
        }
    }

    #[test]
    fn penman_round_trip_is_exact(seed in any::<u64>(), n in 1usize..15) {
        let amr = random_amr(&mut StdRng::seed_from_u64(seed), n);
        let text = serialize_penman(&amr);
        let back = parse_penman(&text).unwrap();
        prop_assert_eq!(back.root(), amr.root());
        prop_assert_eq!(back.node_set(), amr.node_set(), "{}", text);
        prop_assert_eq!(back.edge_set(), amr.edge_set(), "{}", text);
    }

    #[test]
    fn merge_and_diff_agree(a in any::<u64>(), b in any::<u64>()) {
        let ga = random_graph(&mut StdRng::seed_from_u64(a), 15);
        let gb = random_graph(&mut StdRng::seed_from_u64(b), 15);
        let Ok(merged) = merge([&ga, &gb]) else { return Ok(()) };
        let added = diff(&merged, &ga);
        prop_assert!(added.iter().all(|t| gb.contains(t)));
        prop_assert_eq!(merged.len(), ga.len() + added.len());
    }
}

#[test]
fn isomorphism_checker_rejects_relabelled_structure() {
    let a = parse_turtle("<http://e/s> <http://e/p> _:x . _:x <http://e/q> _:y .").unwrap();
    let b = parse_turtle("<http://e/s> <http://e/p> _:m . _:n <http://e/q> _:m .").unwrap();
    let c = parse_turtle("<http://e/s> <http://e/p> _:k . _:k <http://e/q> _:j .").unwrap();
    assert!(!isomorphic(&a, &b));
    assert!(isomorphic(&a, &c));
}
