use std::collections::HashSet;

use super::{AmrEdge, AmrError, AmrGraph, AmrNode, AmrTarget, Constant};

#[derive(Debug, Clone, Copy)]
pub struct PenmanOptions {
    /// Rewrite `:X-of` edges into `:X` with swapped direction.
    pub normalize_inverses: bool,
}

impl Default for PenmanOptions {
    fn default() -> Self {
        PenmanOptions { normalize_inverses: true }
    }
}

/// A parsed graph plus non-fatal notes (stripped alignments).
#[derive(Debug, Clone)]
pub struct Parsed {
    pub graph: AmrGraph,
    pub warnings: Vec<String>,
}

pub fn parse_penman(text: &str) -> Result<AmrGraph, AmrError> {
    let parsed = parse_penman_with(text, PenmanOptions::default())?;
    for warning in &parsed.warnings {
        log::warn!("{warning}");
    }
    Ok(parsed.graph)
}

/// Parses a file holding several graphs separated by `#` comment blocks or blank
/// lines.
pub fn parse_penman_documents(text: &str) -> Result<Vec<AmrGraph>, AmrError> {
    let tokens = tokenize(text)?;
    let mut graphs = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (i, token) in tokens.iter().enumerate() {
        match token.kind {
            Kind::LParen => depth += 1,
            Kind::RParen => {
                depth -= 1;
                if depth == 0 {
                    let (graph, warnings) = build(&tokens[start..=i], PenmanOptions::default())?;
                    for w in warnings {
                        log::warn!("{w}");
                    }
                    graphs.push(graph);
                    start = i + 1;
                }
            }
            _ => {}
        }
    }
    if start != tokens.len() {
        return Err(AmrError::Syntax { position: tokens[start].position, message: "unterminated graph".into() });
    }
    Ok(graphs)
}

pub fn parse_penman_with(text: &str, options: PenmanOptions) -> Result<Parsed, AmrError> {
    let tokens = tokenize(text)?;
    let (graph, warnings) = build(&tokens, options)?;
    Ok(Parsed { graph, warnings })
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    LParen,
    RParen,
    Slash,
    Role(String),
    Str(String),
    Sym(String),
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    position: usize,
    alignment: Option<String>,
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '"' | '/')
}

fn tokenize(text: &str) -> Result<Vec<Token>, AmrError> {
    let mut tokens = Vec::new();
    let mut iter = text.char_indices().peekable();
    while let Some(&(pos, c)) = iter.peek() {
        if c.is_whitespace() {
            iter.next();
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = iter.peek() {
                if c == '\n' {
                    break;
                }
                iter.next();
            }
            continue;
        }
        let kind = match c {
            '(' => {
                iter.next();
                Kind::LParen
            }
            ')' => {
                iter.next();
                Kind::RParen
            }
            '/' => {
                iter.next();
                Kind::Slash
            }
            '"' => {
                iter.next();
                let mut value = String::new();
                loop {
                    match iter.next() {
                        Some((_, '"')) => break,
                        Some((_, '\\')) => match iter.next() {
                            Some((_, e)) => value.push(e),
                            None => {
                                return Err(AmrError::Syntax { position: pos, message: "unterminated string".into() })
                            }
                        },
                        Some((_, ch)) => value.push(ch),
                        None => return Err(AmrError::Syntax { position: pos, message: "unterminated string".into() }),
                    }
                }
                Kind::Str(value)
            }
            _ => {
                let mut word = String::new();
                while let Some(&(_, ch)) = iter.peek() {
                    if is_delimiter(ch) {
                        break;
                    }
                    word.push(ch);
                    iter.next();
                }
                if word.starts_with(':') {
                    Kind::Role(word)
                } else {
                    Kind::Sym(word)
                }
            }
        };
        // Alignment markers (`~e.3`) may trail any atom; a string's marker is its own word.
        let mut alignment = None;
        let kind = match kind {
            Kind::Role(w) | Kind::Sym(w) if w.contains('~') => {
                let (head, tail) = w.split_once('~').unwrap();
                alignment = Some(tail.to_string());
                if head.starts_with(':') {
                    Kind::Role(head.to_string())
                } else {
                    Kind::Sym(head.to_string())
                }
            }
            other => other,
        };
        if let Kind::Sym(w) = &kind {
            if w.is_empty() {
                if let Some(prev) = tokens.last_mut().filter(|t: &&mut Token| matches!(t.kind, Kind::Str(_))) {
                    prev.alignment = alignment;
                    continue;
                }
                return Err(AmrError::Syntax { position: pos, message: "empty atom".into() });
            }
        }
        if matches!(kind, Kind::Role(ref r) if r.len() < 2) {
            return Err(AmrError::Syntax { position: pos, message: "empty role".into() });
        }
        tokens.push(Token { kind, position: pos, alignment });
    }
    Ok(tokens)
}

enum PendingTarget {
    Node(String),
    Str(String),
    Sym(String),
}

struct Builder<'t> {
    tokens: &'t [Token],
    pos: usize,
    nodes: Vec<AmrNode>,
    declared: HashSet<String>,
    edges: Vec<(String, String, PendingTarget)>,
    warnings: Vec<String>,
}

impl<'t> Builder<'t> {
    fn position(&self) -> usize {
        self.tokens.get(self.pos).or(self.tokens.last()).map(|t| t.position).unwrap_or(0)
    }

    fn syntax(&self, message: impl Into<String>) -> AmrError {
        AmrError::Syntax { position: self.position(), message: message.into() }
    }

    fn next(&mut self) -> Option<&'t Token> {
        let token = self.tokens.get(self.pos)?;
        self.pos += 1;
        if let Some(a) = &token.alignment {
            self.warnings.push(format!("stripped alignment ~{a} at offset {}", token.position));
        }
        Some(token)
    }

    fn peek(&self) -> Option<&'t Kind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    /// Parses `( var / concept role target ... )` and returns the variable.
    fn node(&mut self) -> Result<String, AmrError> {
        match self.next().map(|t| &t.kind) {
            Some(Kind::LParen) => {}
            _ => return Err(self.syntax("expected `(`")),
        }
        let variable = match self.next().map(|t| &t.kind) {
            Some(Kind::Sym(v)) => v.clone(),
            _ => return Err(self.syntax("expected variable")),
        };
        match self.next().map(|t| &t.kind) {
            Some(Kind::Slash) => {}
            _ => return Err(self.syntax(format!("expected `/` after variable {variable}"))),
        }
        let concept = match self.next().map(|t| &t.kind) {
            Some(Kind::Sym(c)) | Some(Kind::Str(c)) => c.clone(),
            _ => return Err(self.syntax(format!("expected concept for {variable}"))),
        };
        if !self.declared.insert(variable.clone()) {
            return Err(AmrError::DuplicateVariable(variable));
        }
        self.nodes.push(AmrNode { variable: variable.clone(), concept });
        loop {
            match self.peek() {
                Some(Kind::RParen) => {
                    self.next();
                    return Ok(variable);
                }
                Some(Kind::Role(_)) => {
                    let Some(Kind::Role(role)) = self.next().map(|t| &t.kind) else { unreachable!() };
                    let role = role.clone();
                    let target = match self.peek() {
                        Some(Kind::LParen) => PendingTarget::Node(self.node()?),
                        Some(Kind::Str(_)) => {
                            let Some(Kind::Str(s)) = self.next().map(|t| &t.kind) else { unreachable!() };
                            PendingTarget::Str(s.clone())
                        }
                        Some(Kind::Sym(_)) => {
                            let Some(Kind::Sym(s)) = self.next().map(|t| &t.kind) else { unreachable!() };
                            PendingTarget::Sym(s.clone())
                        }
                        _ => return Err(self.syntax(format!("missing target for role {role}"))),
                    };
                    self.edges.push((variable.clone(), role, target));
                }
                Some(_) => return Err(self.syntax("expected role or `)`")),
                None => return Err(self.syntax("unexpected end of input")),
            }
        }
    }
}

/// Bare symbols shaped like AMR variables (`a`, `c2`, `x10`).
fn looks_like_variable(symbol: &str) -> bool {
    let mut chars = symbol.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase()) && chars.all(|c| c.is_ascii_digit())
}

fn build(tokens: &[Token], options: PenmanOptions) -> Result<(AmrGraph, Vec<String>), AmrError> {
    let mut builder = Builder {
        tokens,
        pos: 0,
        nodes: Vec::new(),
        declared: HashSet::new(),
        edges: Vec::new(),
        warnings: Vec::new(),
    };
    if tokens.is_empty() {
        return Err(AmrError::Syntax { position: 0, message: "empty input".into() });
    }
    let root = builder.node()?;
    if builder.pos != tokens.len() {
        return Err(builder.syntax("trailing content after graph"));
    }
    let mut edges = Vec::with_capacity(builder.edges.len());
    for (source, role, pending) in std::mem::take(&mut builder.edges) {
        let target = match pending {
            PendingTarget::Node(v) => AmrTarget::Node(v),
            PendingTarget::Str(s) => AmrTarget::Constant(Constant::String(s)),
            PendingTarget::Sym(s) if builder.declared.contains(&s) => AmrTarget::Node(s),
            PendingTarget::Sym(s) if looks_like_variable(&s) => return Err(AmrError::DanglingVariable(s)),
            PendingTarget::Sym(s) if s.parse::<f64>().is_ok() => AmrTarget::Constant(Constant::Number(s)),
            PendingTarget::Sym(s) => AmrTarget::Constant(Constant::Symbol(s)),
        };
        edges.push(AmrEdge { source, role, target });
    }
    let mut graph = AmrGraph::new(root, builder.nodes, edges)?;
    if options.normalize_inverses {
        graph = graph.normalize_inverses();
    }
    Ok((graph, builder.warnings))
}
