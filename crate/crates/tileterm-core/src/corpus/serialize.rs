use std::collections::HashSet;
use std::fmt::Write;

use crate::graph::{fresh_id, Graph};
use crate::pbpo::PbpoRule;

fn sanitize(id: &str) -> String {
    let s: String = id
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '.' { c } else { '_' })
        .collect();
    let s = s.trim_matches('.').to_string();
    if s.is_empty() { "_".to_string() } else { s }
}

/// Ids made writable and unique. Pullback ids such as `(x,c)` contain
/// characters the format does not allow.
fn writable_ids<'a>(ids: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut taken = HashSet::new();
    ids.map(|id| fresh_id(&sanitize(id), &mut taken)).collect()
}

/// The graph body without braces: one edge per line, then the vertices
/// without incident edges on a final line.
fn items(g: &Graph) -> Vec<String> {
    let vids = writable_ids(g.vertices().iter().map(|v| v.id.as_str()));
    let eids = writable_ids(g.edges().iter().map(|e| e.id.as_str()));
    let vertex = |i: usize| format!("{}:{}", vids[i], g.vertices()[i].label);
    let mut lines: Vec<String> = g
        .edges()
        .iter()
        .zip(&eids)
        .map(|(e, id)| format!("{} -{}:{}-> {}", vertex(e.src), id, e.label, vertex(e.tgt)))
        .collect();
    let deg = g.degrees();
    let isolated: Vec<String> = (0..g.vertex_count()).filter(|&i| deg[i] == 0).map(vertex).collect();
    if !isolated.is_empty() {
        lines.push(isolated.join(" "));
    }
    lines
}

/// `{ ... }`, on one line when short.
pub fn serialize_graph(g: &Graph) -> String {
    let lines = items(g);
    match lines.len() {
        0 => "{ }".to_string(),
        1 => format!("{{ {} }}", lines[0]),
        _ => {
            let mut s = format!("{{ {}", lines[0]);
            for l in &lines[1..] {
                write!(s, "\n\t{l}").unwrap();
            }
            s.push_str(" }");
            s
        }
    }
}

/// The body of a tile file.
pub fn serialize_tile(g: &Graph) -> String {
    let lines = items(g);
    let mut s = lines.join("\n");
    s.push('\n');
    s
}

/// A system file. Parsing it back yields the same rules up to isomorphism
/// provided the ids of the rule graphs follow the naming convention.
pub fn serialize_system(rules: &[PbpoRule]) -> String {
    let mut s = String::new();
    for (i, rule) in rules.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        writeln!(s, "=== {} ===", sanitize(rule.name())).unwrap();
        for (head, g) in [
            ("L ", rule.lhs()),
            ("L'", rule.lhs_type()),
            ("K ", rule.interface()),
            ("K'", rule.interface_type()),
            ("R ", rule.rhs()),
        ] {
            writeln!(s, "{head} {}", serialize_graph(g)).unwrap();
        }
    }
    s
}
