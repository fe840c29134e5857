//! The `.pbpop` system format and tile files.
//!
//! ```text
//! === rho ===
//! L  { x:0 -P:0-> y:0 }
//! L' { x:0 -P:0-> y:0  x:0 -XY:0-> <-YX:0- y:0  c:0 }
//! K  { x:0 y:0 }
//! K' { ... }
//! R  { x.y:0 }
//! ```
//!
//! Morphisms between the five graphs are not written down: each element
//! maps to the element of the target graph with the same id, or else to the
//! unique one whose dot-separated id contains all of its components.

use std::collections::HashMap;
use std::fmt;

use crate::graph::{id_atoms, Graph, GraphBuilder, GraphError, Morphism};
use crate::pbpo::{PbpoRule, RuleError, Violation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("{pos}: vertex `{id}` is used with labels `{first}` and `{second}`")]
    LabelMismatch { pos: Pos, id: String, first: String, second: String },
    #[error("{pos}: edge id `{0}` is used twice", pos = .1)]
    DuplicateEdge(String, Pos),
    #[error("rule `{rule}`: {morphism} has no image for {kind} `{element}`")]
    NoImage { rule: String, morphism: &'static str, kind: &'static str, element: String },
    #[error("rule `{rule}`: {morphism} is ambiguous for {kind} `{element}` (candidates: {})", candidates.join(", "))]
    Ambiguous {
        rule: String,
        morphism: &'static str,
        kind: &'static str,
        element: String,
        candidates: Vec<String>,
    },
    #[error("rule `{rule}`: {morphism} is not a homomorphism: {source}")]
    NotHomomorphism { rule: String, morphism: &'static str, source: GraphError },
    #[error("rule `{rule}`: {source}")]
    Rule { rule: String, source: RuleError },
    #[error("rule `{rule}` is invalid: {}", violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid { rule: String, violations: Vec<Violation> },
    #[error("rule `{0}` is defined twice")]
    DuplicateRule(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Prime,
    LBrace,
    RBrace,
    Dash,
    Head,
    Tail,
    Header(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Prime => write!(f, "`'`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Dash => write!(f, "`-`"),
            Tok::Head => write!(f, "`->`"),
            Tok::Tail => write!(f, "`<-`"),
            Tok::Header(s) => write!(f, "rule header `{s}`"),
        }
    }
}

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos: Pos { line, col }, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut at_line_start = true;
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            at_line_start = true;
            bump!();
            continue;
        }
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            bump!();
            bump!();
            loop {
                if i >= chars.len() {
                    return Err(syntax(pos.line, pos.col, "unterminated comment"));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    bump!();
                    bump!();
                    break;
                }
                bump!();
            }
            continue;
        }
        if c == '=' && at_line_start {
            // === name ===
            let start = i;
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            let raw: String = chars[start..i].iter().collect();
            let inner = raw.trim().trim_start_matches('=').trim_end_matches('=').trim();
            if !raw.trim().starts_with("===") || !raw.trim().ends_with("===") || inner.is_empty() {
                return Err(syntax(pos.line, pos.col, "malformed rule header, expected `=== name ===`"));
            }
            if !inner.chars().all(is_ident) {
                return Err(syntax(pos.line, pos.col, format!("invalid rule name `{inner}`")));
            }
            out.push((Tok::Header(inner.to_string()), pos));
            continue;
        }
        at_line_start = false;
        let tok = match c {
            ':' => Tok::Colon,
            '\'' => Tok::Prime,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '-' if chars.get(i + 1) == Some(&'>') => {
                bump!();
                Tok::Head
            }
            '-' => Tok::Dash,
            '<' if chars.get(i + 1) == Some(&'-') => {
                bump!();
                Tok::Tail
            }
            c if is_ident(c) => {
                let start = i;
                while i < chars.len() && is_ident(chars[i]) {
                    bump!();
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                continue;
            }
            other => return Err(syntax(line, col, format!("unexpected character `{other}`"))),
        };
        bump!();
        out.push((tok, pos));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        let lines = text.split('\n').count();
        let last = text.rsplit('\n').next().map_or(0, |l| l.chars().count());
        Ok(Parser { toks: tokenize(text)?, at: 0, end: Pos { line: lines, col: last + 1 } })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end.clone(), |(_, p)| p.clone())
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos(), message: message.into() }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.err(format!("expected {wanted}, found {t}")),
            None => self.err(format!("expected {wanted}, found end of input")),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, wanted: &str) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    /// `id:label`
    fn element(&mut self, what: &str) -> Result<(String, String, Pos), ParseError> {
        let pos = self.pos();
        let id = self.ident(&format!("{what} id"))?;
        self.expect(Tok::Colon, "`:` before the label")?;
        let label = self.ident("label")?;
        Ok((id, label, pos))
    }

    /// Graph items up to (not including) `}` or the end of input.
    fn graph_items(&mut self) -> Result<Graph, ParseError> {
        let mut g = GraphBuilder::new();
        let mut labels: HashMap<String, String> = HashMap::new();
        let mut edge_ids = std::collections::HashSet::new();
        let mut vertex = |g: &mut GraphBuilder, (id, label, pos): (String, String, Pos)| {
            if let Some(prev) = labels.get(&id) {
                if *prev != label {
                    return Err(ParseError::LabelMismatch { pos, id, first: prev.clone(), second: label });
                }
                return Ok(g.vertex_index(&id).expect("known vertex"));
            }
            labels.insert(id.clone(), label.clone());
            Ok(g.add_vertex(id, label).expect("fresh vertex"))
        };
        while matches!(self.peek(), Some(Tok::Ident(_))) {
            let mut left = vertex(&mut g, self.element("vertex")?)?;
            // zero or more groups of arrows, each followed by a vertex
            loop {
                let mut arrows = Vec::new();
                loop {
                    match self.peek() {
                        Some(Tok::Dash) => {
                            self.at += 1;
                            let e = self.element("edge")?;
                            self.expect(Tok::Head, "`->`")?;
                            arrows.push((e, true));
                        }
                        Some(Tok::Tail) => {
                            self.at += 1;
                            let e = self.element("edge")?;
                            self.expect(Tok::Dash, "`-` closing a reverse edge")?;
                            arrows.push((e, false));
                        }
                        _ => break,
                    }
                }
                if arrows.is_empty() {
                    break;
                }
                let right = vertex(&mut g, self.element("vertex")?)?;
                for ((id, label, pos), forward) in arrows {
                    if !edge_ids.insert(id.clone()) {
                        return Err(ParseError::DuplicateEdge(id, pos));
                    }
                    let (s, t) = if forward { (left, right) } else { (right, left) };
                    g.add_edge(id, s, t, label).expect("checked above");
                }
                left = right;
            }
        }
        Ok(g.build())
    }

    fn braced_graph(&mut self) -> Result<Graph, ParseError> {
        self.expect(Tok::LBrace, "`{`")?;
        let g = self.graph_items()?;
        self.expect(Tok::RBrace, "`}` or a graph item")?;
        Ok(g)
    }
}

/// Parses a single graph, with or without surrounding braces.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut p = Parser::new(text)?;
    let g = if p.peek() == Some(&Tok::LBrace) { p.braced_graph()? } else { p.graph_items()? };
    if p.peek().is_some() {
        return Err(p.unexpected("a graph item or end of input"));
    }
    Ok(g)
}

/// The five graphs of a rule, as written.
#[derive(Debug, Clone)]
pub struct RuleGraphs {
    pub name: String,
    pub l: Graph,
    pub l_prime: Graph,
    pub k: Graph,
    pub k_prime: Graph,
    pub r: Graph,
}

const SECTIONS: [(&str, bool); 5] = [("L", false), ("L", true), ("K", false), ("K", true), ("R", false)];

/// Parses the rule blocks of a system file without building morphisms.
pub fn parse_rule_graphs(text: &str) -> Result<Vec<RuleGraphs>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out: Vec<RuleGraphs> = Vec::new();
    while p.peek().is_some() {
        let name = match p.peek() {
            Some(Tok::Header(n)) => n.clone(),
            _ => return Err(p.unexpected("a rule header `=== name ===`")),
        };
        if out.iter().any(|r| r.name == name) {
            return Err(ParseError::DuplicateRule(name));
        }
        p.at += 1;
        let mut graphs = Vec::with_capacity(5);
        for (letter, primed) in SECTIONS {
            let section = if primed { format!("{letter}'") } else { letter.to_string() };
            let found = p.ident(&format!("section {section}"));
            if found.as_deref() != Ok(letter) {
                p.at = p.at.saturating_sub(usize::from(found.is_ok()));
                return Err(p.unexpected(&format!("section {section}")));
            }
            if primed {
                p.expect(Tok::Prime, &format!("section {section}"))?;
            } else if p.peek() == Some(&Tok::Prime) {
                return Err(p.err(format!("expected section {section}, found {letter}'")));
            }
            graphs.push(p.braced_graph()?);
        }
        let mut it = graphs.into_iter();
        let mut next = || it.next().expect("five sections");
        out.push(RuleGraphs { name, l: next(), l_prime: next(), k: next(), k_prime: next(), r: next() });
    }
    Ok(out)
}

/// Parses a system file into validated, completed rules.
pub fn parse_system(text: &str) -> Result<Vec<PbpoRule>, ParseError> {
    parse_rule_graphs(text)?.iter().map(build_rule).collect()
}

/// Builds the rule from its five graphs by inferring the morphisms.
pub fn build_rule(g: &RuleGraphs) -> Result<PbpoRule, ParseError> {
    let name = &g.name;
    let l = infer_morphism(name, "l", &g.k, &g.l)?;
    let r = infer_morphism(name, "r", &g.k, &g.r)?;
    let t_l = infer_morphism(name, "tL", &g.l, &g.l_prime)?;
    let t_k = infer_morphism(name, "tK", &g.k, &g.k_prime)?;
    let l_prime = infer_morphism(name, "l'", &g.k_prime, &g.l_prime)?;
    let rule = PbpoRule::new(name.clone(), l, r, t_l, t_k, l_prime)
        .map_err(|source| ParseError::Rule { rule: name.clone(), source })?;
    let violations = rule.validate();
    if !violations.is_empty() {
        return Err(ParseError::Invalid { rule: name.clone(), violations });
    }
    Ok(rule)
}

/// Ids of `b` that `a_id` may map to: the identical id if present,
/// otherwise every id containing all of its components.
fn candidates<'b>(a_id: &str, b_ids: impl Iterator<Item = (usize, &'b str)> + Clone) -> Vec<usize> {
    if let Some((j, _)) = b_ids.clone().find(|&(_, id)| id == a_id) {
        return vec![j];
    }
    let atoms = id_atoms(a_id);
    b_ids.filter(|&(_, id)| atoms.is_subset(&id_atoms(id))).map(|(j, _)| j).collect()
}

/// Reconstructs the morphism `a → b` from element ids.
pub fn infer_morphism(
    rule: &str,
    morphism: &'static str,
    a: &Graph,
    b: &Graph,
) -> Result<Morphism, ParseError> {
    let no_image = |kind, element: &str| ParseError::NoImage {
        rule: rule.to_string(),
        morphism,
        kind,
        element: element.to_string(),
    };
    let ambiguous = |kind, element: &str, cands: Vec<String>| ParseError::Ambiguous {
        rule: rule.to_string(),
        morphism,
        kind,
        element: element.to_string(),
        candidates: cands,
    };

    let mut vmap = Vec::with_capacity(a.vertex_count());
    for v in a.vertices() {
        let cands = candidates(&v.id, b.vertices().iter().enumerate().map(|(j, w)| (j, w.id.as_str())));
        match cands.as_slice() {
            [] => return Err(no_image("vertex", &v.id)),
            [j] => vmap.push(*j),
            _ => {
                return Err(ambiguous(
                    "vertex",
                    &v.id,
                    cands.iter().map(|&j| b.vertices()[j].id.clone()).collect(),
                ))
            }
        }
    }

    let mut emap = Vec::with_capacity(a.edge_count());
    for e in a.edges() {
        // endpoints are already fixed, which often disambiguates
        let fits = |j: usize| {
            let f = &b.edges()[j];
            f.src == vmap[e.src] && f.tgt == vmap[e.tgt] && f.label == e.label
        };
        let all = candidates(&e.id, b.edges().iter().enumerate().map(|(j, f)| (j, f.id.as_str())));
        let cands: Vec<usize> = all.iter().copied().filter(|&j| fits(j)).collect();
        match cands.as_slice() {
            [j] => emap.push(*j),
            [] if all.is_empty() => return Err(no_image("edge", &e.id)),
            [] => {
                // an id match exists but its endpoints are wrong: report it
                // as a homomorphism failure below
                emap.push(all[0]);
            }
            _ => {
                return Err(ambiguous(
                    "edge",
                    &e.id,
                    cands.iter().map(|&j| b.edges()[j].id.clone()).collect(),
                ))
            }
        }
    }
    Morphism::new(a.clone(), b.clone(), vmap, emap).map_err(|source| ParseError::NotHomomorphism {
        rule: rule.to_string(),
        morphism,
        source,
    })
}
