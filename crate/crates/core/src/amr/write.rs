use std::collections::HashMap;

use super::{invert_role, AmrGraph, AmrTarget};

const INDENT: &str = "    ";

/// Writes the graph in PENMAN notation. Variables are declared along a depth-first
/// spanning tree and referenced bare elsewhere. Every edge is written at its source,
/// except tree edges that reach a node from its target, which are written inverted
/// (`:X-of`) at the target.
pub fn serialize_penman(graph: &AmrGraph) -> String {
    let (_, discovered_by) = graph.spanning_tree();
    let mut writer = Writer { graph, discovered_by, out: String::new() };
    writer.node(graph.root(), 0);
    writer.out
}

struct Writer<'g> {
    graph: &'g AmrGraph,
    discovered_by: HashMap<&'g str, usize>,
    out: String,
}

impl<'g> Writer<'g> {
    fn is_discovery(&self, var: &str, edge: usize) -> bool {
        self.discovered_by.get(var) == Some(&edge)
    }

    fn node(&mut self, var: &'g str, depth: usize) {
        let graph = self.graph;
        self.out.push('(');
        self.out.push_str(var);
        self.out.push_str(" / ");
        self.out.push_str(graph.concept(var).unwrap_or_default());
        for (i, edge) in graph.edges().iter().enumerate() {
            let (role, target, nested) = if edge.source == var {
                if self.is_discovery(var, i) {
                    // written inverted from the node that discovered `var`
                    continue;
                }
                let nested = edge.target.as_node().filter(|t| self.is_discovery(t, i));
                (edge.role.clone(), &edge.target, nested)
            } else if edge.target.as_node() == Some(var) && self.is_discovery(&edge.source, i) {
                (invert_role(&edge.role), &edge.target, Some(edge.source.as_str()))
            } else {
                continue;
            };
            self.out.push('\n');
            for _ in 0..=depth {
                self.out.push_str(INDENT);
            }
            self.out.push_str(&role);
            self.out.push(' ');
            match (nested, target) {
                (Some(child), _) => self.node(child, depth + 1),
                (None, AmrTarget::Node(v)) => self.out.push_str(v),
                (None, AmrTarget::Constant(c)) => self.out.push_str(&c.to_string()),
            }
        }
        self.out.push(')');
    }
}
