mod common;

use std::collections::BTreeSet;

use common::{athlete_base, fixture, read, turtle};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use xkg_core::enrichment::{run_heuristic, Enricher, Heuristic, HeuristicSpec, MockBackend, PromptTemplates};
use xkg_core::rdf::{Iri, RdfGraph, Term, Triple};
use xkg_core::validation::{
    check_anchoring, check_consistency, floating_components, has_errors, infer_precedence, lint,
    new_datatype_properties, profile, Code, GraphProfile, MiniOntology,
};
use xkg_testkit::graphs::{components, random_dag, reachability};

fn enrich_with_fixture_mock(h: Heuristic) -> RdfGraph {
    let mock = MockBackend::from_dir(&fixture("mock")).unwrap();
    let templates = PromptTemplates::builtin();
    let enricher = Enricher { backend: &mock, templates: &templates, settings: Default::default() };
    run_heuristic(&athlete_base(), &HeuristicSpec::new(h), &enricher).xkg
}

fn ex(i: usize) -> Term {
    Term::Iri(Iri::new(format!("http://example.org/n{i}")).unwrap())
}

fn edge(a: usize, b: usize) -> Triple {
    Triple::new(ex(a), Iri::new("http://example.org/rel").unwrap(), ex(b)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// Nodes 0..10 are in the base; an addition component floats iff none of its
    /// nodes is a base node.
    #[test]
    fn floating_components_match_bfs(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let base = RdfGraph::from_triples(Default::default(), (0..9).map(|i| edge(i, i + 1)));
        let pairs: Vec<(usize, usize)> = (0..rng.random_range(1..25))
            .map(|_| (rng.random_range(0..40), rng.random_range(0..40)))
            .collect();
        let added: BTreeSet<Triple> = pairs.iter().map(|&(a, b)| edge(a, b)).filter(|t| !base.contains(t)).collect();
        let kept: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(a, b)| !base.contains(&edge(a, b))).collect();
        let expected = components(&kept).into_iter().filter(|c| c.iter().all(|&n| n >= 10)).count();
        prop_assert_eq!(floating_components(&base, &added).len(), expected);
        let floats = check_anchoring(&base, &added).iter().filter(|d| d.code == Code::AnchorFloat).count();
        prop_assert_eq!(floats, expected);
    }

    #[test]
    fn precedence_closure_matches_reachability(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.random_range(1..=50);
        let p = rng.random_range(0.0..0.2);
        let edges = random_dag(&mut rng, n, p);
        let pred = Iri::new(xkg_core::vocab::DUL_PRECEDES).unwrap();
        let graph = RdfGraph::from_triples(
            Default::default(),
            edges.iter().map(|&(a, b)| Triple::new(ex(a), pred.clone(), ex(b)).unwrap()),
        );
        let result = infer_precedence(&graph);
        let expected: BTreeSet<(Iri, Iri)> = reachability(n, &edges)
            .into_iter()
            .map(|(a, b)| (ex(a).as_iri().unwrap().clone(), ex(b).as_iri().unwrap().clone()))
            .collect();
        prop_assert_eq!(&result.closure, &expected);
        prop_assert!(result.diagnostics.is_empty());
    }

    #[test]
    fn any_pbrs_predicate_is_misuse(local in "[a-z]{1,8}-0[1-9](\\.[a-z]{1,6})?") {
        let graph = turtle(&format!("fred:a_1 pbrs:{local} fred:b_1 ."));
        prop_assert!(lint(&graph).iter().any(|d| d.code == Code::PrefixMisuse));
    }
}

#[test]
fn impact_enrichment_is_anchored() {
    let base = athlete_base();
    let xkg = enrich_with_fixture_mock(Heuristic::FactualImpact);
    let added: BTreeSet<Triple> = xkg.iter().filter(|t| !base.contains(t)).cloned().collect();
    assert_eq!(added.len(), 4);
    assert!(floating_components(&base, &added).is_empty());
}

#[test]
fn two_fresh_nodes_float_once() {
    let base = athlete_base();
    let added = turtle("@prefix impact: <https://w3id.org/xkg/impact/> . impact:Joy impact:leadsTo impact:Smile .");
    let diagnostics = check_anchoring(&base, added.triples());
    assert_eq!(diagnostics.iter().filter(|d| d.code == Code::AnchorFloat).count(), 1);
}

#[test]
fn metonymic_clash_chain() {
    let xkg = enrich_with_fixture_mock(Heuristic::MetonymicCoercion);
    let diagnostics = check_consistency(&xkg, &MiniOntology::builtin());
    let clash = diagnostics.iter().find(|d| d.code == Code::DisjointClash).expect("clash reported");
    assert!(clash.message.contains("athlete_1 → Athlete → Person → Agent → Object"), "{}", clash.message);
    assert!(clash.message.contains("athlete_1 → cheer-01 → Activity → Action → Event"), "{}", clash.message);
    assert!(lint(&xkg).iter().any(|d| d.code == Code::PrefixMisuse));
}

#[test]
fn clean_graphs_have_no_errors() {
    let onto = MiniOntology::builtin();
    for h in [Heuristic::FactualImpact, Heuristic::EventSequences, Heuristic::ImageSchemas] {
        let xkg = enrich_with_fixture_mock(h);
        let mut diagnostics = lint(&xkg);
        diagnostics.extend(check_consistency(&xkg, &onto));
        diagnostics.extend(infer_precedence(&xkg).diagnostics);
        assert!(!has_errors(&diagnostics), "{h}: {diagnostics:?}");
    }
}

#[test]
fn celebration_follows_every_earlier_event() {
    let xkg = enrich_with_fixture_mock(Heuristic::EventSequences);
    let precedence = infer_precedence(&xkg);
    let fred = |l: &str| Iri::new(format!("{}{l}", xkg_core::vocab::FRED)).unwrap();
    for earlier in ["wear_1", "race_1", "compete_1", "win_1"] {
        assert!(precedence.closure.contains(&(fred(earlier), fred("celebrate_1"))), "{earlier}");
    }
    let inferred: BTreeSet<_> = precedence.inferred().cloned().collect();
    assert!(inferred.contains(&(fred("wear_1"), fred("celebrate_1"))));
    assert!(!inferred.contains(&(fred("win_1"), fred("celebrate_1"))));
}

#[test]
fn precedence_cycle_is_reported() {
    let graph = turtle("fred:a_1 dul:precedes fred:b_1 . fred:b_1 d0:precedes fred:a_1 .");
    let result = infer_precedence(&graph);
    assert_eq!(result.diagnostics.len(), 1);
    assert_eq!(result.diagnostics[0].code, Code::CycleDetected);
}

const DIFF_COLUMNS: [(&str, [usize; 6]); 11] = [
    ("Presuppositions", [32, 0, 0, 3, 0, 11]),
    ("ConversationalImplicatures", [36, 6, 0, 0, 14, 0]),
    ("FactualImpact", [13, 5, 0, 0, 3, 0]),
    ("ImageSchemas", [63, 11, 0, 0, 1, 0]),
    ("MetonymicCoercion", [26, 0, 5, 5, 7, 0]),
    ("MoralValueCoercion", [12, 0, 2, 1, 3, 0]),
    ("SymbolicCoercion", [15, 7, 0, 0, 1, 0]),
    ("EventSequences", [15, 0, 0, 0, 1, 0]),
    ("CausalRelations", [16, 1, 0, 0, 1, 0]),
    ("ImpliedFutureEvents", [14, 0, 1, 1, 2, 0]),
    ("PotentialNonEvents", [23, 0, 5, 4, 5, 0]),
];

fn calibration_xkg(base: &RdfGraph, name: &str) -> RdfGraph {
    let diff = turtle(&read(&format!("calibration/{name}.ttl")));
    let mut xkg = base.clone();
    xkg.extend(diff.iter().cloned());
    xkg
}

#[test]
fn calibration_base_profile() {
    let base = turtle(&read("calibration/base-graph.ttl"));
    let p = profile(&base, None);
    let expected = GraphProfile {
        axioms: 293,
        wordnet: 33,
        pb_roles: 23,
        pb_frames: 20,
        vn_roles: 1,
        d0: 4,
        dul: 10,
        new_op: 0,
        new_dp: 0,
    };
    assert_eq!(p, expected);
}

#[test]
fn calibration_heuristic_profiles() {
    let base = turtle(&read("calibration/base-graph.ttl"));
    for (name, [axioms, wordnet, pb_roles, pb_frames, op, dp]) in DIFF_COLUMNS {
        let p = profile(&calibration_xkg(&base, name), Some(&base));
        assert_eq!(
            [p.axioms, p.wordnet, p.pb_roles, p.pb_frames, p.new_op, p.new_dp],
            [axioms, wordnet, pb_roles, pb_frames, op, dp],
            "{name}"
        );
    }
}

#[test]
fn presupposition_datatype_properties_are_all_true() {
    let base = turtle(&read("calibration/base-graph.ttl"));
    let xkg = calibration_xkg(&base, "Presuppositions");
    let dps = new_datatype_properties(&xkg, &base);
    assert_eq!(dps.len(), 11);
    let truth = Term::Literal(xkg_core::rdf::Literal::boolean(true));
    assert!(dps.values().all(|objects| objects.len() == 1 && objects.contains(&truth)));
}
