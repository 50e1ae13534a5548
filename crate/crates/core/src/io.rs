//! Plain-text graph format.
//!
//! ```text
//! # comment
//! type: pag
//! nodes: V1 V2 X Y      # optional; fixes node order, declares isolated nodes
//! V1 o-> X
//! X -> Y
//! Y <-o V2
//! ```
//!
//! Edge operators are `->`, `<-`, `<->`, `o-o`, `o->` and `<-o`. Reversed
//! operators are normalized when parsed. Node names match
//! `[A-Za-z_][A-Za-z0-9_]*`. Nodes are numbered by first appearance.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, GraphClass, Mark, MixedGraph};

const OPERATORS: [(&str, Mark, Mark); 6] = [
    ("<->", Mark::Arrow, Mark::Arrow),
    ("<-o", Mark::Arrow, Mark::Circle),
    ("o-o", Mark::Circle, Mark::Circle),
    ("o->", Mark::Circle, Mark::Arrow),
    ("->", Mark::Tail, Mark::Arrow),
    ("<-", Mark::Arrow, Mark::Tail),
];

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, expected: &str) -> Error {
        Error::Parse {
            line: self.line,
            col: self.text[..self.pos].chars().count() + 1,
            expected: expected.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let mut len = 0;
        for (i, c) in rest.char_indices() {
            let ok = c == '_' || c.is_ascii_alphabetic() || (i > 0 && c.is_ascii_digit());
            if !ok {
                break;
            }
            len = i + c.len_utf8();
        }
        if len == 0 {
            return Err(self.err("node name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn literal(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn operator(&mut self) -> Result<(Mark, Mark)> {
        self.skip_ws();
        for (tok, ml, mr) in OPERATORS {
            if self.literal(tok) {
                return Ok((ml, mr));
            }
        }
        Err(self.err("edge operator (->, <-, <->, o-o, o->, <-o)"))
    }
}

/// Parses the text format into a validated graph.
pub fn parse_graph(text: &str) -> Result<MixedGraph> {
    let mut class = None;
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut intern = |name: &str, names: &mut Vec<String>| -> usize {
        *index.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            names.len() - 1
        })
    };

    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor { line: i + 1, text: line, pos: 0 };
        if cur.at_end() {
            continue;
        }
        if class.is_none() {
            let kw = cur.ident().map_err(|_| cur.err("`type:` header"))?;
            if kw != "type" || !cur.literal(":") {
                return Err(Cursor { line: i + 1, text: line, pos: 0 }.err("`type:` header"));
            }
            let start = {
                cur.skip_ws();
                cur.pos
            };
            class = Some(match cur.ident() {
                Ok("dag") => GraphClass::Dag,
                Ok("cpdag") => GraphClass::Cpdag,
                Ok("mag") => GraphClass::Mag,
                Ok("pag") => GraphClass::Pag,
                _ => {
                    cur.pos = start;
                    return Err(cur.err("one of dag, cpdag, mag, pag"));
                }
            });
            if !cur.at_end() {
                return Err(cur.err("end of line"));
            }
            continue;
        }
        let first = cur.ident()?;
        if first == "nodes" && cur.literal(":") {
            while !cur.at_end() {
                let name = cur.ident()?;
                intern(name, &mut names);
            }
            continue;
        }
        let (ml, mr) = cur.operator()?;
        let second = cur.ident()?;
        if !cur.at_end() {
            return Err(cur.err("end of line"));
        }
        let u = intern(first, &mut names);
        let v = intern(second, &mut names);
        edges.push(Edge::new(u, v, ml, mr));
    }
    let class = class.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        col: 1,
        expected: "`type:` header".to_string(),
    })?;
    MixedGraph::build(names, edges, class)
}

/// Writes `g` in the text format. `parse_graph` of the output reproduces `g`
/// exactly, node order included.
pub fn serialize_graph(g: &MixedGraph) -> String {
    let mut out = format!("type: {}\n", g.class().as_str());
    if g.n() > 0 {
        let _ = writeln!(out, "nodes: {}", g.names().join(" "));
    }
    for e in g.edges() {
        let _ = writeln!(out, "{}", edge_string(g, e));
    }
    out
}

/// One edge in the text format, written left to right where possible.
pub fn edge_string(g: &MixedGraph, e: &Edge) -> String {
    use Mark::*;
    let (a, b) = (g.name(e.a), g.name(e.b));
    match (e.mark_a, e.mark_b) {
        (Tail, Arrow) => format!("{a} -> {b}"),
        (Arrow, Tail) => format!("{b} -> {a}"),
        (Arrow, Arrow) => format!("{a} <-> {b}"),
        (Circle, Circle) => format!("{a} o-o {b}"),
        (Circle, Arrow) => format!("{a} o-> {b}"),
        (Arrow, Circle) => format!("{b} o-> {a}"),
        (Tail, Tail) => format!("{a} -- {b}"),
        (Tail, Circle) => format!("{a} --o {b}"),
        (Circle, Tail) => format!("{b} --o {a}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ViolationKind;
    use crate::fixtures;

    #[test]
    fn round_trip_all_fixtures() {
        for (name, text) in fixtures::ALL {
            let g = parse_graph(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            let again = parse_graph(&serialize_graph(&g)).unwrap();
            assert_eq!(g, again, "{name}");
        }
    }

    #[test]
    fn reversed_operators_normalize() {
        let a = parse_graph("type: pag\nX -> Y\nZ o-> Y\n").unwrap();
        let b = parse_graph("type: pag\nnodes: X Y Z\nY <- X\nY <-o Z\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn whitespace_and_comments() {
        let g = parse_graph("  # header next\n type :dag # ok\nA->B\n\tB  ->C   # tail\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn isolated_nodes_survive() {
        let g = parse_graph("type: dag\nnodes: A B C\nA -> C\n").unwrap();
        assert_eq!(g.names(), &["A", "B", "C"]);
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_graph("type: dag\nA -> A\n"), Err(Error::SelfLoop("A".into())));
        assert!(matches!(
            parse_graph("type: dag\nX o-o Y\n"),
            Err(Error::ClassViolation { kind: ViolationKind::MarkNotAllowed, .. })
        ));
        assert!(matches!(
            parse_graph("type: mag\nX -> Y\nY <-> X\n"),
            Err(Error::DuplicateEdge(..))
        ));
        match parse_graph("type: dag\nA => B\n") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
        match parse_graph("type: dag\nA -> 1B\n") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 6)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_graph("A -> B\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("type: ug\n"), Err(Error::Parse { col: 7, .. })));
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
    }
}
