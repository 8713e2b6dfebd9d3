use rand::seq::IndexedRandom;
use rand::Rng;
use xkg_core::amr::{AmrEdge, AmrGraph, AmrNode, AmrTarget, Constant};

const CONCEPTS: [&str; 8] = ["celebrate-01", "athlete", "win-01", "track", "name", "country", "wear-01", "and"];
const ROLES: [&str; 7] = [":ARG0", ":ARG1", ":ARG2", ":mod", ":location", ":time", ":op1"];

fn constant(rng: &mut impl Rng) -> Constant {
    match rng.random_range(0..4) {
        0 => Constant::String(["Saint", "Lucia", "say \"hi\"", "a b"].choose(rng).unwrap().to_string()),
        1 => Constant::Number(["1", "-3", "2.5", "1000"].choose(rng).unwrap().to_string()),
        2 => Constant::Symbol("-".into()),
        _ => Constant::Symbol("imperative".into()),
    }
}

/// A connected AMR graph: a random tree over `n` nodes plus some re-entrant
/// edges and constants. Roles are never inverse, so the graph is already
/// normalized.
pub fn random_amr(rng: &mut impl Rng, n: usize) -> AmrGraph {
    let n = n.max(1);
    let nodes: Vec<AmrNode> = (0..n)
        .map(|i| AmrNode { variable: format!("v{i}"), concept: CONCEPTS.choose(rng).unwrap().to_string() })
        .collect();
    let mut edges: Vec<AmrEdge> = Vec::new();
    let push = |edges: &mut Vec<AmrEdge>, edge: AmrEdge| {
        if !edges.iter().any(|e| e.source == edge.source && e.role == edge.role) {
            edges.push(edge);
        }
    };
    for i in 1..n {
        let source = format!("v{}", rng.random_range(0..i));
        let free: Vec<&str> =
            ROLES.iter().copied().filter(|r| !edges.iter().any(|e| e.source == source && e.role == *r)).collect();
        let role = free.choose(rng).map_or_else(|| format!(":snt{i}"), |r| r.to_string());
        edges.push(AmrEdge { source, role, target: AmrTarget::Node(format!("v{i}")) });
    }
    for _ in 0..rng.random_range(0..=n / 2) {
        let (s, t) = (rng.random_range(0..n), rng.random_range(0..n));
        if s != t {
            let role = ROLES.choose(rng).unwrap().to_string();
            push(&mut edges, AmrEdge { source: format!("v{s}"), role, target: AmrTarget::Node(format!("v{t}")) });
        }
    }
    for _ in 0..rng.random_range(0..=n) {
        let s = rng.random_range(0..n);
        let role = [":polarity", ":quant", ":op2", ":value"].choose(rng).unwrap().to_string();
        push(&mut edges, AmrEdge { source: format!("v{s}"), role, target: AmrTarget::Constant(constant(rng)) });
    }
    AmrGraph::new("v0", nodes, edges).expect("generated graphs are connected")
}
