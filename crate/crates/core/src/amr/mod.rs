//! Abstract Meaning Representation graphs and their PENMAN notation.

mod parse;
mod write;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

pub use parse::{parse_penman, parse_penman_documents, parse_penman_with, Parsed, PenmanOptions};
pub use write::serialize_penman;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmrError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable {0:?} declared twice")]
    DuplicateVariable(String),
    #[error("variable {0:?} is referenced but never declared")]
    DanglingVariable(String),
    #[error("invalid AMR graph: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AmrNode {
    pub variable: String,
    pub concept: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    String(String),
    Number(String),
    Symbol(String),
}

impl Constant {
    pub fn text(&self) -> &str {
        match self {
            Constant::String(s) | Constant::Number(s) | Constant::Symbol(s) => s,
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::String(s) => write!(f, "\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
            Constant::Number(s) | Constant::Symbol(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AmrTarget {
    Node(String),
    Constant(Constant),
}

impl AmrTarget {
    pub fn as_node(&self) -> Option<&str> {
        match self {
            AmrTarget::Node(v) => Some(v),
            AmrTarget::Constant(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AmrEdge {
    pub source: String,
    /// Role including the leading colon, e.g. `:ARG0`.
    pub role: String,
    pub target: AmrTarget,
}

/// Roles that end in `-of` without being inverses.
const NON_INVERTED_OF_ROLES: [&str; 3] = [":consist-of", ":prep-out-of", ":prep-on-behalf-of"];

pub fn is_inverse_role(role: &str) -> bool {
    role.ends_with("-of") && !NON_INVERTED_OF_ROLES.contains(&role)
}

/// `:ARG0-of` ↔ `:ARG0`.
pub fn invert_role(role: &str) -> String {
    if is_inverse_role(role) {
        role[..role.len() - 3].to_string()
    } else {
        format!("{role}-of")
    }
}

/// A rooted AMR graph. Nodes and edges keep their document order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmrGraph {
    root: String,
    nodes: Vec<AmrNode>,
    edges: Vec<AmrEdge>,
}

impl AmrGraph {
    /// Validates and builds a graph. Duplicate edges are collapsed.
    pub fn new(root: impl Into<String>, nodes: Vec<AmrNode>, edges: Vec<AmrEdge>) -> Result<Self, AmrError> {
        let root = root.into();
        let mut seen = HashSet::new();
        for node in &nodes {
            if node.concept.is_empty() {
                return Err(AmrError::Invalid(format!("node {} has an empty concept", node.variable)));
            }
            if !seen.insert(node.variable.as_str()) {
                return Err(AmrError::DuplicateVariable(node.variable.clone()));
            }
        }
        if !seen.contains(root.as_str()) {
            return Err(AmrError::DanglingVariable(root));
        }
        let mut unique = HashSet::new();
        let mut kept = Vec::with_capacity(edges.len());
        for edge in edges {
            if !edge.role.starts_with(':') || edge.role.len() < 2 {
                return Err(AmrError::Invalid(format!("role {:?} must start with `:`", edge.role)));
            }
            if !seen.contains(edge.source.as_str()) {
                return Err(AmrError::DanglingVariable(edge.source.clone()));
            }
            if let AmrTarget::Node(v) = &edge.target {
                if !seen.contains(v.as_str()) {
                    return Err(AmrError::DanglingVariable(v.clone()));
                }
            }
            if unique.insert(edge.clone()) {
                kept.push(edge);
            }
        }
        let graph = AmrGraph { root, nodes, edges: kept };
        let reached: HashSet<&str> = graph.traversal_order().into_iter().collect();
        if let Some(lost) = graph.nodes.iter().find(|n| !reached.contains(n.variable.as_str())) {
            return Err(AmrError::Invalid(format!("node {} is not connected to the root", lost.variable)));
        }
        Ok(graph)
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn nodes(&self) -> &[AmrNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[AmrEdge] {
        &self.edges
    }

    pub fn node(&self, variable: &str) -> Option<&AmrNode> {
        self.nodes.iter().find(|n| n.variable == variable)
    }

    pub fn concept(&self, variable: &str) -> Option<&str> {
        self.node(variable).map(|n| n.concept.as_str())
    }

    pub fn outgoing<'a>(&'a self, variable: &'a str) -> impl Iterator<Item = &'a AmrEdge> + 'a {
        self.edges.iter().filter(move |e| e.source == variable)
    }

    /// Rewrites every `:X-of` edge between two nodes into `:X` with the direction
    /// swapped. Applying it twice is the same as applying it once.
    pub fn normalize_inverses(&self) -> AmrGraph {
        let mut unique = HashSet::new();
        let edges = self
            .edges
            .iter()
            .map(|e| match (&e.target, is_inverse_role(&e.role)) {
                (AmrTarget::Node(target), true) => AmrEdge {
                    source: target.clone(),
                    role: invert_role(&e.role),
                    target: AmrTarget::Node(e.source.clone()),
                },
                _ => e.clone(),
            })
            .filter(|e| unique.insert(e.clone()))
            .collect();
        AmrGraph { root: self.root.clone(), nodes: self.nodes.clone(), edges }
    }

    /// Depth-first order from the root, following edges in either direction in
    /// edge order. This is the order in which PENMAN output declares variables.
    pub fn traversal_order(&self) -> Vec<&str> {
        self.spanning_tree().0
    }

    /// Depth-first spanning tree: variables in discovery order, and for every
    /// non-root variable the index of the edge that discovered it.
    pub(crate) fn spanning_tree(&self) -> (Vec<&str>, HashMap<&str, usize>) {
        let mut order = vec![self.root.as_str()];
        let mut discovered_by = HashMap::new();
        let mut visited: HashSet<&str> = HashSet::from([self.root.as_str()]);
        let mut stack: Vec<(&str, usize)> = vec![(self.root.as_str(), 0)];
        while let Some((var, next_edge)) = stack.pop() {
            let found = self.edges[next_edge..].iter().enumerate().find_map(|(offset, edge)| {
                let other = if edge.source == var {
                    edge.target.as_node()?
                } else if edge.target.as_node() == Some(var) {
                    edge.source.as_str()
                } else {
                    return None;
                };
                (!visited.contains(other)).then_some((next_edge + offset, other))
            });
            if let Some((index, other)) = found {
                stack.push((var, index + 1));
                visited.insert(other);
                order.push(other);
                discovered_by.insert(other, index);
                stack.push((other, 0));
            }
        }
        (order, discovered_by)
    }

    /// Edge set for order-insensitive comparison.
    pub fn edge_set(&self) -> BTreeSet<&AmrEdge> {
        self.edges.iter().collect()
    }

    pub fn node_set(&self) -> BTreeSet<&AmrNode> {
        self.nodes.iter().collect()
    }
}

/// `celebrate-01` style PropBank frame concept.
pub fn is_frame_concept(concept: &str) -> bool {
    frame_lemma(concept).is_some()
}

/// Lemma of a frame concept (`celebrate-01` → `celebrate`).
pub fn frame_lemma(concept: &str) -> Option<&str> {
    let (lemma, sense) = concept.rsplit_once('-')?;
    let valid_sense = sense.len() == 2 && sense.chars().all(|c| c.is_ascii_digit());
    let valid_lemma = !lemma.is_empty() && lemma.chars().next().is_some_and(|c| c.is_alphabetic());
    (valid_sense && valid_lemma).then_some(lemma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_concepts() {
        assert!(is_frame_concept("celebrate-01"));
        assert!(is_frame_concept("have-org-role-91"));
        assert!(!is_frame_concept("athlete"));
        assert!(!is_frame_concept("win-1"));
        assert_eq!(frame_lemma("have-org-role-91"), Some("have-org-role"));
    }

    #[test]
    fn role_inversion() {
        assert_eq!(invert_role(":ARG0-of"), ":ARG0");
        assert_eq!(invert_role(":ARG0"), ":ARG0-of");
        assert!(!is_inverse_role(":consist-of"));
    }

    #[test]
    fn validation_errors() {
        let node = |v: &str, c: &str| AmrNode { variable: v.into(), concept: c.into() };
        assert_eq!(
            AmrGraph::new("a", vec![node("a", "x"), node("a", "y")], vec![]).unwrap_err(),
            AmrError::DuplicateVariable("a".into())
        );
        let edge = AmrEdge { source: "a".into(), role: ":ARG0".into(), target: AmrTarget::Node("z".into()) };
        assert_eq!(
            AmrGraph::new("a", vec![node("a", "x")], vec![edge]).unwrap_err(),
            AmrError::DanglingVariable("z".into())
        );
        assert!(matches!(
            AmrGraph::new("a", vec![node("a", "x"), node("b", "y")], vec![]).unwrap_err(),
            AmrError::Invalid(_)
        ));
    }
}
