//! Line-oriented text formats. Vertices are 1-indexed in files.
//!
//! Instance files:
//!
//! ```text
//! c <comment>
//! p recolor <n> <k> <ell>
//! c role <v> <tag>
//! e <u> <v>
//! l <v> <c1> <c2> ...
//! a <v> <color>
//! b <v> <color>
//! ```
//!
//! The `p` line must be the first non-comment line. Every vertex needs one
//! `a` and one `b` line; `l` lines are optional (a vertex without one may use
//! every color of `1..=k`). Sequence files hold one `s <v> <color>` line per
//! step. Source graphs for the generators use `p edge <n> <m>` plus `e`
//! lines.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graph::{
    check_coloring, Color, ColorLists, ColorSet, Coloring, Graph, Instance, RecolorSequence,
    RecolorStep, Vertex, Violation,
};

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Line<'a> {
    number: usize,
    text: &'a str,
    tokens: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn new(number: usize, text: &'a str) -> Self {
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push((s + 1, &text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            tokens.push((s + 1, &text[s..]));
        }
        Line {
            number,
            text,
            tokens,
        }
    }

    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn end_column(&self) -> usize {
        self.text.trim_end().len() + 1
    }

    fn number_at<T: std::str::FromStr>(&self, idx: usize, what: &str) -> Result<T, ParseError> {
        let (col, tok) = *self
            .tokens
            .get(idx)
            .ok_or_else(|| self.err(self.end_column(), format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| self.err(col, format!("expected {what}, found `{tok}`")))
    }

    fn column(&self, idx: usize) -> usize {
        self.tokens.get(idx).map_or(self.end_column(), |t| t.0)
    }

    fn expect_len(&self, len: usize) -> Result<(), ParseError> {
        if self.tokens.len() > len {
            return Err(self.err(self.tokens[len].0, "unexpected trailing token"));
        }
        Ok(())
    }

    fn vertex_at(&self, idx: usize, n: usize) -> Result<Vertex, ParseError> {
        let v: usize = self.number_at(idx, "vertex")?;
        if v == 0 || v > n {
            return Err(self.err(self.column(idx), format!("vertex {v} outside 1..={n}")));
        }
        Ok(v - 1)
    }

    fn color_at(&self, idx: usize, k: u32) -> Result<Color, ParseError> {
        let c: Color = self.number_at(idx, "color")?;
        if c == 0 || c > k {
            return Err(self.err(self.column(idx), format!("color {c} outside 1..={k}")));
        }
        Ok(c)
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, t)| Line::new(i + 1, t))
        .filter(|l| !l.tokens.is_empty())
}

fn is_comment(line: &Line<'_>) -> bool {
    line.tokens[0].1 == "c"
}

struct Header {
    line: usize,
    n: usize,
    k: u32,
    ell: usize,
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<Header> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut edge_lines: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    let mut alpha: Vec<Option<(Color, usize)>> = Vec::new();
    let mut beta: Vec<Option<(Color, usize)>> = Vec::new();
    let mut lists: Vec<Option<ColorSet>> = Vec::new();
    let mut list_lines: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut roles: BTreeMap<Vertex, String> = BTreeMap::new();
    let mut pending_roles: Vec<(usize, usize, usize, String)> = Vec::new();

    for line in lines(text) {
        let kind = line.tokens[0].1;
        if kind == "c" {
            if line.tokens.get(1).map(|t| t.1) == Some("role") {
                let v: usize = line.number_at(2, "vertex")?;
                let (_, tag) = *line
                    .tokens
                    .get(3)
                    .ok_or_else(|| line.err(line.end_column(), "missing role tag"))?;
                line.expect_len(4)?;
                pending_roles.push((line.number, line.column(2), v, tag.to_string()));
            }
            continue;
        }
        let Some(h) = &header else {
            if kind != "p" {
                return Err(line.err(1, format!("expected `p recolor` line before `{kind}`")));
            }
            if line.tokens.get(1).map(|t| t.1) != Some("recolor") {
                return Err(line.err(line.column(1), "expected `p recolor <n> <k> <ell>`"));
            }
            let n: usize = line.number_at(2, "vertex count")?;
            let k: u32 = line.number_at(3, "color count")?;
            let ell: usize = line.number_at(4, "budget")?;
            line.expect_len(5)?;
            if k == 0 || k > crate::MAX_COLORS {
                return Err(line.err(
                    line.column(3),
                    format!("color count must be in 1..={}", crate::MAX_COLORS),
                ));
            }
            header = Some(Header {
                line: line.number,
                n,
                k,
                ell,
            });
            alpha = vec![None; n];
            beta = vec![None; n];
            lists = vec![None; n];
            continue;
        };
        let (n, k) = (h.n, h.k);
        match kind {
            "p" => return Err(line.err(1, format!("second `p` line (first on line {})", h.line))),
            "e" => {
                let u = line.vertex_at(1, n)?;
                let v = line.vertex_at(2, n)?;
                line.expect_len(3)?;
                if u == v {
                    return Err(line.err(line.column(2), "self-loop"));
                }
                let key = (u.min(v), u.max(v));
                if let Some(prev) = edge_lines.insert(key, line.number) {
                    return Err(line.err(
                        1,
                        format!("duplicate edge {}-{} (first on line {prev})", u + 1, v + 1),
                    ));
                }
                edges.push(key);
            }
            "a" | "b" => {
                let v = line.vertex_at(1, n)?;
                let c = line.color_at(2, k)?;
                line.expect_len(3)?;
                let slot = if kind == "a" {
                    &mut alpha[v]
                } else {
                    &mut beta[v]
                };
                if let Some((_, prev)) = slot {
                    return Err(line.err(
                        1,
                        format!(
                            "second `{kind}` line for vertex {} (first on line {prev})",
                            v + 1
                        ),
                    ));
                }
                *slot = Some((c, line.number));
            }
            "l" => {
                let v = line.vertex_at(1, n)?;
                if line.tokens.len() < 3 {
                    return Err(line.err(line.end_column(), "empty color list"));
                }
                let mut set = ColorSet::EMPTY;
                for idx in 2..line.tokens.len() {
                    let c = line.color_at(idx, k)?;
                    if set.contains(c) {
                        return Err(line.err(line.column(idx), format!("color {c} repeated")));
                    }
                    set.insert(c);
                }
                if let Some(prev) = list_lines.insert(v, line.number) {
                    return Err(line.err(
                        1,
                        format!(
                            "second `l` line for vertex {} (first on line {prev})",
                            v + 1
                        ),
                    ));
                }
                lists[v] = Some(set);
            }
            other => return Err(line.err(1, format!("unknown line type `{other}`"))),
        }
    }

    let last_line = text.lines().count().max(1);
    let h = header.ok_or_else(|| ParseError {
        line: last_line,
        column: 1,
        message: "missing `p recolor` line".into(),
    })?;
    for (line, column, v, tag) in pending_roles {
        if v == 0 || v > h.n {
            return Err(ParseError {
                line,
                column,
                message: format!("role for vertex {v} outside 1..={}", h.n),
            });
        }
        roles.insert(v - 1, tag);
    }
    let complete = |which: &str,
                    cs: &[Option<(Color, usize)>]|
     -> Result<(Vec<Color>, Vec<usize>), ParseError> {
        let mut colors = Vec::with_capacity(cs.len());
        let mut at = Vec::with_capacity(cs.len());
        for (v, c) in cs.iter().enumerate() {
            let (c, l) = c.ok_or_else(|| ParseError {
                line: last_line,
                column: 1,
                message: format!("vertex {} has no `{which}` line", v + 1),
            })?;
            colors.push(c);
            at.push(l);
        }
        Ok((colors, at))
    };
    let (alpha, alpha_at) = complete("a", &alpha)?;
    let (beta, beta_at) = complete("b", &beta)?;
    let graph = Graph::new(h.n, edges).expect("edges validated while parsing");
    let explicit = if lists.iter().any(Option::is_some) {
        let full = ColorSet::full(h.k);
        Some(
            ColorLists::new(h.k, lists.iter().map(|l| l.unwrap_or(full)).collect())
                .expect("lists validated"),
        )
    } else {
        None
    };
    let effective = explicit
        .clone()
        .unwrap_or_else(|| ColorLists::full(h.n, h.k).expect("k validated"));
    for (which, gamma, at) in [("alpha", &alpha, &alpha_at), ("beta", &beta, &beta_at)] {
        if let Some(&bad) = check_coloring(&graph, &effective, gamma)
            .expect("lengths match")
            .first()
        {
            let line = match bad {
                Violation::Conflict { u, v, .. } => edge_lines[&(u, v)],
                Violation::NotInList { vertex, .. } | Violation::OutOfRange { vertex, .. } => {
                    at[vertex]
                }
            };
            return Err(ParseError {
                line,
                column: 1,
                message: format!("{which} is not a proper coloring: {bad}"),
            });
        }
    }
    let inst = Instance::new(
        graph,
        h.k,
        explicit,
        h.ell,
        Coloring::new(alpha),
        Coloring::new(beta),
    )
    .expect("validated above")
    .with_roles(roles);
    Ok(inst)
}

/// Serializes an instance. Explicit lists are written for every vertex.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let g = inst.graph();
    writeln!(out, "p recolor {} {} {}", g.n(), inst.k(), inst.ell()).unwrap();
    for (v, tag) in inst.roles() {
        writeln!(out, "c role {} {}", v + 1, tag).unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    if let Some(lists) = inst.explicit_lists() {
        for v in 0..g.n() {
            write!(out, "l {}", v + 1).unwrap();
            for c in lists.get(v) {
                write!(out, " {c}").unwrap();
            }
            out.push('\n');
        }
    }
    for (tag, gamma) in [("a", inst.alpha()), ("b", inst.beta())] {
        for (v, c) in gamma.iter().enumerate() {
            writeln!(out, "{tag} {} {c}", v + 1).unwrap();
        }
    }
    out
}

/// Parses a sequence file. Vertex and color ranges are not checked here;
/// verification against an instance does that.
pub fn parse_sequence(text: &str) -> Result<RecolorSequence, ParseError> {
    let mut seq = RecolorSequence::new();
    for line in lines(text) {
        if is_comment(&line) {
            continue;
        }
        if line.tokens[0].1 != "s" {
            return Err(line.err(1, format!("unknown line type `{}`", line.tokens[0].1)));
        }
        let v: usize = line.number_at(1, "vertex")?;
        if v == 0 {
            return Err(line.err(line.column(1), "vertices are numbered from 1"));
        }
        let c: Color = line.number_at(2, "color")?;
        if c == 0 {
            return Err(line.err(line.column(2), "colors are numbered from 1"));
        }
        line.expect_len(3)?;
        seq.push(RecolorStep::new(v - 1, c));
    }
    Ok(seq)
}

pub fn write_sequence(seq: &RecolorSequence) -> String {
    let mut out = String::new();
    for s in seq {
        writeln!(out, "s {} {}", s.vertex + 1, s.color).unwrap();
    }
    out
}

/// Parses a `p edge <n> <m>` graph file.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for line in lines(text) {
        if is_comment(&line) {
            continue;
        }
        match (line.tokens[0].1, n) {
            ("p", None) => {
                if line.tokens.get(1).map(|t| t.1) != Some("edge") {
                    return Err(line.err(line.column(1), "expected `p edge <n> <m>`"));
                }
                let nv: usize = line.number_at(2, "vertex count")?;
                let m: usize = line.number_at(3, "edge count")?;
                line.expect_len(4)?;
                n = Some((nv, m, line.number));
            }
            ("p", Some(_)) => return Err(line.err(1, "second `p` line")),
            (_, None) => return Err(line.err(1, "expected `p edge` line first")),
            ("e", Some((nv, _, _))) => {
                let u = line.vertex_at(1, nv)?;
                let v = line.vertex_at(2, nv)?;
                line.expect_len(3)?;
                if u == v {
                    return Err(line.err(line.column(2), "self-loop"));
                }
                if let Some(prev) = seen.insert((u.min(v), u.max(v)), line.number) {
                    return Err(line.err(1, format!("duplicate edge (first on line {prev})")));
                }
                edges.push((u, v));
            }
            (other, Some(_)) => return Err(line.err(1, format!("unknown line type `{other}`"))),
        }
    }
    let (nv, m, at) = n.ok_or_else(|| ParseError {
        line: 1,
        column: 1,
        message: "missing `p edge` line".into(),
    })?;
    if edges.len() != m {
        return Err(ParseError {
            line: at,
            column: 1,
            message: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Ok(Graph::new(nv, edges).expect("validated while parsing"))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Renders a coloring as comma-separated colors.
pub struct CommaList<'a>(pub &'a [Color]);

impl fmt::Display for CommaList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_instance() {
        let inst = parse_instance("p recolor 1 2 1\na 1 1\nb 1 2\n").unwrap();
        assert_eq!(inst.graph().n(), 1);
        assert_eq!(inst.k(), 2);
        assert_eq!(inst.ell(), 1);
        assert_eq!(inst.alpha().as_slice(), &[1]);
        assert_eq!(inst.beta().as_slice(), &[2]);
        assert!(inst.explicit_lists().is_none());
    }

    #[test]
    fn conflict_names_the_edge() {
        let text = "c test\np recolor 2 2 0\ne 1 2\na 1 1\na 2 1\nb 1 1\nb 2 2\n";
        let err = parse_instance(text).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("edge 1-2"), "{}", err.message);
    }

    #[test]
    fn diagnostics_carry_positions() {
        let err = parse_instance("p recolor 2 2 0\ne 1 x\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
        let err = parse_instance("e 1 2\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
        let err = parse_instance("p recolor 2 2 0\ne 1 2\ne 2 1\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("duplicate"));
        let err = parse_instance("p recolor 1 4 0\nl 1 3 4\na 1 1\nb 1 3\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_instance("p recolor 1 2 0\na 1 1\n").unwrap_err();
        assert!(err.message.contains("no `b` line"));
        let err = parse_instance("p recolor 1 2 0\na 1 3\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
    }

    #[test]
    fn lists_and_roles_round_trip() {
        let text =
            "p recolor 2 4 3\nc role 1 left\ne 1 2\nl 1 1 2\nl 2 3 4\na 1 1\na 2 3\nb 1 2\nb 2 4\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.roles()[&0], "left");
        assert_eq!(write_instance(&inst), text);
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn partial_lists_default_to_full() {
        let inst = parse_instance("p recolor 2 3 0\nl 2 1\na 1 3\na 2 1\nb 1 3\nb 2 1\n").unwrap();
        let lists = inst.explicit_lists().unwrap();
        assert_eq!(lists.get(0), ColorSet::full(3));
        assert_eq!(lists.get(1), ColorSet::singleton(1));
    }

    #[test]
    fn sequence_format() {
        let text = "c witness\ns 2 3\n\ns 1 1\n";
        let seq = parse_sequence(text).unwrap();
        assert_eq!(
            seq.steps(),
            &[RecolorStep::new(1, 3), RecolorStep::new(0, 1)]
        );
        assert_eq!(write_sequence(&seq), "s 2 3\ns 1 1\n");
        assert!(parse_sequence("s 0 1\n").is_err());
        assert!(parse_sequence("x 1 1\n").is_err());
    }

    #[test]
    fn graph_format() {
        let g = parse_graph("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        assert!(parse_graph("p edge 3 2\ne 1 2\n").is_err());
    }
}
