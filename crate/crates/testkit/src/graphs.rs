use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::Rng;

/// Edges `i → j` with `i < j`, each present with probability `p`.
pub fn random_dag(rng: &mut impl Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// All pairs `(a, b)` with a non-empty path from `a` to `b`, by Warshall's
/// algorithm on a boolean matrix.
#[allow(clippy::needless_range_loop)]
pub fn reachability(n: usize, edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| reach[i][j]).collect()
}

/// Connected components of an undirected edge list by breadth-first search.
/// Each component is the sorted list of its nodes.
pub fn components<T: Ord + Clone + std::hash::Hash>(edges: &[(T, T)]) -> Vec<Vec<T>> {
    let mut adjacency: HashMap<&T, Vec<&T>> = HashMap::new();
    for (a, b) in edges {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    let mut seen: BTreeSet<&T> = BTreeSet::new();
    let mut keys: Vec<&T> = adjacency.keys().copied().collect();
    keys.sort();
    let mut out = Vec::new();
    for start in keys {
        if !seen.insert(start) {
            continue;
        }
        let mut component = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            for &next in &adjacency[node] {
                if seen.insert(next) {
                    component.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        component.sort();
        out.push(component);
    }
    out
}
