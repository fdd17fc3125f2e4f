//! The `.qp` text format, DOT export.
//!
//! ```text
//! vertices: 1 2 3 4
//! arrows:
//!   a: 1 -> 2
//!   rho: 4 -> 1 @1
//! potential:
//!   1 a b rho
//! cut: rho
//! ```
//!
//! A section header starts at column 1 and may carry its first body line
//! inline; body lines are indented. Algebra documents have a `relations`
//! section (`name: a b - c d`) instead of `potential`. `#` starts a comment.

use crate::coeff;
use crate::cut::{cut_from_grading, grading_from_cut, Cut};
use crate::error::{Error, Result};
use crate::poly::PathPoly;
use crate::potential::{GradedQp, Potential};
use crate::presentation::{AlgebraPresentation, Relation};
use crate::quiver::{Arrow, Name, Path, Quiver};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// A QP together with its cut, when it has one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QpDocument {
    pub qp: GradedQp,
    pub cut: Option<Cut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Qp(QpDocument),
    Algebra(AlgebraPresentation),
}

impl Document {
    pub fn into_qp(self) -> Option<QpDocument> {
        match self {
            Document::Qp(d) => Some(d),
            Document::Algebra(_) => None,
        }
    }

    pub fn into_algebra(self) -> Option<AlgebraPresentation> {
        match self {
            Document::Algebra(p) => Some(p),
            Document::Qp(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Vertices,
    Arrows,
    Potential,
    Cut,
    Relations,
}

const SECTIONS: [(&str, Section); 5] = [
    ("vertices", Section::Vertices),
    ("arrows", Section::Arrows),
    ("potential", Section::Potential),
    ("cut", Section::Cut),
    ("relations", Section::Relations),
];

/// A token with its 1-based line and column.
#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokens(s: &str, line: usize, offset: usize) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        let sep = ch.is_whitespace() || ch == ',';
        match (start, sep) {
            (None, false) => start = Some(i),
            (Some(b), true) => {
                out.push(Tok {
                    text: &s[b..i],
                    line,
                    col: offset + s[..b].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

struct Body<'a> {
    text: &'a str,
    line: usize,
    /// Column of the first character of `text`, 0-based.
    offset: usize,
}

fn strip_comment(s: &str) -> &str {
    s.find('#').map_or(s, |i| &s[..i])
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut bodies: Vec<(Section, Vec<Body<'_>>)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = strip_comment(raw);
        if content.trim().is_empty() {
            continue;
        }
        let indented = content.starts_with(char::is_whitespace);
        if indented {
            let Some((_, body)) = bodies.last_mut() else {
                return Err(err(line, 1, "indented line outside a section"));
            };
            let trimmed = content.trim_start();
            body.push(Body {
                text: trimmed,
                line,
                offset: content[..content.len() - trimmed.len()].chars().count(),
            });
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(err(
                line,
                1,
                format!("expected a section header, found `{}`", content.trim()),
            ));
        };
        let name = content[..colon].trim();
        let Some(&(_, section)) = SECTIONS.iter().find(|(s, _)| *s == name) else {
            return Err(err(line, 1, format!("unknown section `{name}`")));
        };
        if bodies.iter().any(|(s, _)| *s == section) {
            return Err(err(line, 1, format!("duplicate section `{name}`")));
        }
        let rest = &content[colon + 1..];
        let trimmed = rest.trim_start();
        let mut body = Vec::new();
        if !trimmed.trim().is_empty() {
            body.push(Body {
                text: trimmed,
                line,
                offset: content[..colon + 1].chars().count() + rest.len() - trimmed.len(),
            });
        }
        bodies.push((section, body));
    }
    let get = |s: Section| bodies.iter().find(|(x, _)| *x == s).map(|(_, b)| b.as_slice());

    let mut vertices: Vec<Name> = Vec::new();
    for b in get(Section::Vertices).unwrap_or(&[]) {
        for t in tokens(b.text, b.line, b.offset) {
            if vertices.iter().any(|v| **v == *t.text) {
                return Err(err(t.line, t.col, format!("duplicate vertex `{}`", t.text)));
            }
            vertices.push(t.text.into());
        }
    }
    let mut arrows = Vec::new();
    let mut explicit_degree = BTreeSet::new();
    for b in get(Section::Arrows).unwrap_or(&[]) {
        let (arrow, explicit) = parse_arrow(b, &vertices)?;
        if arrows.iter().any(|a: &Arrow| a.name == arrow.name) {
            return Err(err(b.line, b.offset + 1, format!("duplicate arrow `{}`", arrow.name)));
        }
        if explicit {
            explicit_degree.insert(arrow.name.clone());
        }
        arrows.push(arrow);
    }
    let quiver = Quiver::new(vertices, arrows)?;

    let potential = get(Section::Potential);
    let relations = get(Section::Relations);
    let cut = get(Section::Cut);
    if potential.is_some() && relations.is_some() {
        let line = relations.and_then(|b| b.first()).map_or(1, |b| b.line);
        return Err(err(line, 1, "a document has either a potential or relations"));
    }
    if let Some(rel) = relations {
        if cut.is_some() {
            return Err(err(1, 1, "algebra documents have no cut"));
        }
        let mut out = Vec::new();
        for b in rel {
            let Some(colon) = b.text.find(':') else {
                return Err(err(b.line, b.offset + 1, "expected `name: relation`"));
            };
            let name = b.text[..colon].trim();
            let expr = &b.text[colon + 1..];
            let value = parse_sum(&quiver, expr, b.line, b.offset + colon + 1)?;
            if value.endpoints().is_none() {
                return Err(err(b.line, b.offset + 1, format!("relation `{name}` is not basic")));
            }
            out.push(Relation::new(name, value));
        }
        return Ok(Document::Algebra(AlgebraPresentation::new(quiver, out)?));
    }
    if potential.is_none() && cut.is_none() {
        return Ok(Document::Algebra(AlgebraPresentation::path_algebra(quiver)));
    }
    let mut w = PathPoly::zero();
    for b in potential.unwrap_or(&[]) {
        let term = parse_sum(&quiver, b.text, b.line, b.offset)?;
        for (p, _) in term.terms() {
            if !p.is_cycle() || p.len() < 2 {
                return Err(err(
                    b.line,
                    b.offset + 1,
                    format!("`{p}` is not a cycle of length at least 2"),
                ));
            }
        }
        w = &w + &term;
    }
    let qp = GradedQp::new(quiver, Potential::canonicalize(&w)?)?;
    let Some(cut_body) = cut else {
        return Ok(Document::Qp(QpDocument { qp, cut: None }));
    };
    let mut names = Vec::new();
    for b in cut_body {
        for t in tokens(b.text, b.line, b.offset) {
            if qp.quiver.arrow(t.text).is_none() {
                return Err(err(t.line, t.col, format!("unknown cut arrow `{}`", t.text)));
            }
            names.push(t.text);
        }
    }
    let cut = Cut::new(names);
    for name in &explicit_degree {
        let expected = i64::from(cut.contains(name));
        if qp.quiver.degree(name) != expected {
            return Err(Error::InvalidCut(format!(
                "arrow `{name}` has degree {} but the cut requires {expected}",
                qp.quiver.degree(name)
            )));
        }
    }
    let qp = grading_from_cut(&qp, &cut)?;
    Ok(Document::Qp(QpDocument { qp, cut: Some(cut) }))
}

fn parse_arrow(b: &Body<'_>, vertices: &[Name]) -> Result<(Arrow, bool)> {
    let toks = tokens(b.text, b.line, b.offset);
    let fail = |t: Option<&Tok<'_>>, m: &str| {
        let col = t.map_or(b.offset + 1, |t| t.col);
        err(b.line, col, m.to_string())
    };
    let (name, mut rest) = match toks.first() {
        Some(t) if t.text.ends_with(':') && t.text.len() > 1 => (&t.text[..t.text.len() - 1], &toks[1..]),
        Some(t) if toks.get(1).is_some_and(|c| c.text == ":") => (t.text, &toks[2..]),
        first => return Err(fail(first, "expected `name: source -> target`")),
    };
    if coeff::parse(name).is_some() {
        return Err(fail(toks.first(), "arrow names must not be numbers"));
    }
    let [s, arrow, t, tail @ ..] = rest else {
        return Err(fail(rest.first(), "expected `source -> target`"));
    };
    if arrow.text != "->" {
        return Err(fail(Some(arrow), "expected `->`"));
    }
    for v in [s, t] {
        if !vertices.iter().any(|x| **x == *v.text) {
            return Err(fail(Some(v), &format!("unknown vertex `{}`", v.text)));
        }
    }
    let mut a = Arrow::new(name, s.text, t.text);
    rest = tail;
    let mut explicit = false;
    if let Some(d) = rest.first() {
        let deg = d
            .text
            .strip_prefix('@')
            .and_then(|x| x.parse::<i64>().ok())
            .ok_or_else(|| fail(Some(d), "expected `@degree`"))?;
        a.degree = deg;
        explicit = true;
        if let Some(extra) = rest.get(1) {
            return Err(fail(Some(extra), "unexpected token"));
        }
    }
    Ok((a, explicit))
}

/// Parses `c1 p1 + c2 p2 - p3 ...` where each `p` is a sequence of arrow
/// names and coefficients are optional rationals.
pub fn parse_poly(quiver: &Quiver, text: &str) -> Result<PathPoly> {
    parse_sum(quiver, text, 1, 0)
}

fn parse_sum(quiver: &Quiver, text: &str, line: usize, offset: usize) -> Result<PathPoly> {
    // A sign glued to a path, as in `-a b`, is its own token.
    let toks: Vec<Tok<'_>> = tokens(text, line, offset)
        .into_iter()
        .flat_map(|t| {
            let glued = t.text.len() > 1 && t.text.starts_with(['+', '-']) && coeff::parse(t.text).is_none();
            if glued {
                let (sign, rest) = t.text.split_at(1);
                vec![
                    Tok { text: sign, ..t },
                    Tok {
                        text: rest,
                        col: t.col + 1,
                        ..t
                    },
                ]
            } else {
                vec![t]
            }
        })
        .collect();
    let mut out = PathPoly::zero();
    let mut i = 0;
    if toks.is_empty() {
        return Err(err(line, offset + 1, "empty expression"));
    }
    while i < toks.len() {
        let mut c = coeff::one();
        if toks[i].text == "+" || toks[i].text == "-" {
            if toks[i].text == "-" {
                c = -c;
            }
            i += 1;
        } else if i > 0 {
            return Err(err(toks[i].line, toks[i].col, "expected `+` or `-`"));
        }
        if let Some(x) = toks.get(i).and_then(|t| coeff::parse(t.text)) {
            c *= x;
            i += 1;
        }
        let mut arrows = Vec::new();
        let first = toks.get(i).map(|t| t.col).unwrap_or(offset + text.chars().count() + 1);
        while i < toks.len() && toks[i].text != "+" && toks[i].text != "-" {
            let t = &toks[i];
            let a = quiver
                .arrow(t.text)
                .ok_or_else(|| err(t.line, t.col, format!("undeclared arrow `{}`", t.text)))?;
            if let Some(prev) = arrows.last() {
                let prev: &crate::quiver::ArrowRef = prev;
                if prev.target() != &a.source {
                    return Err(err(
                        t.line,
                        t.col,
                        format!(
                            "`{}` ends at {} but `{}` starts at {}",
                            prev.name(),
                            prev.target(),
                            a.name,
                            a.source
                        ),
                    ));
                }
            }
            arrows.push(a.to_ref());
            i += 1;
        }
        if arrows.is_empty() {
            return Err(err(line, first, "expected a path"));
        }
        let path = Path::from_arrows(arrows).map_err(|e| err(line, first, e.to_string()))?;
        out.add_term(c, path);
    }
    Ok(out)
}

fn emit_header(out: &mut String, q: &Quiver) {
    let vs: Vec<&str> = q.vertices().iter().map(|v| &**v).collect();
    let _ = writeln!(out, "vertices: {}", vs.join(" "));
    out.push_str("arrows:\n");
    for a in q.arrows() {
        let _ = write!(out, "  {}: {} -> {}", a.name, a.source, a.target);
        if a.degree != 0 {
            let _ = write!(out, " @{}", a.degree);
        }
        out.push('\n');
    }
}

pub fn emit_qp(g: &GradedQp, cut: Option<&Cut>) -> String {
    let mut out = String::new();
    emit_header(&mut out, &g.quiver);
    out.push_str("potential:\n");
    for (p, c) in g.potential.terms() {
        let _ = writeln!(out, "  {c} {p}");
    }
    if let Some(c) = cut {
        let names: Vec<&str> = c.arrows().map(|n| &**n).collect();
        if names.is_empty() {
            out.push_str("cut:\n");
        } else {
            let _ = writeln!(out, "cut: {}", names.join(" "));
        }
    }
    out
}

pub fn emit_algebra(p: &AlgebraPresentation) -> String {
    let mut out = String::new();
    emit_header(&mut out, &p.quiver);
    out.push_str("relations:\n");
    for r in &p.relations {
        let _ = writeln!(out, "  {}: {}", r.name, r.value);
    }
    out
}

pub fn emit_document(d: &Document) -> String {
    match d {
        Document::Qp(q) => emit_qp(&q.qp, q.cut.as_ref()),
        Document::Algebra(p) => emit_algebra(p),
    }
}

/// The cut implied by a QP document: the given one, else the degree-1
/// arrows when the degrees form a cut.
pub fn effective_cut(d: &QpDocument) -> Option<Cut> {
    d.cut.clone().or_else(|| cut_from_grading(&d.qp).ok())
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz description; degree-1 and cut arrows are dashed.
pub fn emit_dot(q: &Quiver, cut: Option<&Cut>) -> String {
    let mut out = String::from("digraph qp {\n");
    for v in q.vertices() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for a in q.arrows() {
        let dashed = a.degree == 1 || cut.is_some_and(|c| c.contains(&a.name));
        let _ = write!(
            out,
            "  {} -> {} [label={}",
            quote(&a.source),
            quote(&a.target),
            quote(&a.name)
        );
        if dashed {
            out.push_str(", style=dashed");
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_minus_glued_to_a_path() {
        let q = Quiver::from_triples(&["1", "2", "4"], &[("a", "1", "2"), ("b", "2", "4"), ("e", "1", "4")]).unwrap();
        let x = parse_poly(&q, "-a b + e").unwrap();
        assert_eq!(x, parse_poly(&q, "- a b + e").unwrap());
        assert_eq!(parse_poly(&q, &x.to_string()).unwrap(), x);
        assert_eq!(parse_poly(&q, "-2 a b").unwrap().to_string(), "-2 a b");
    }

    const EXAMPLE: &str = "vertices: 1 2 3 4
arrows:
  a: 1 -> 2
  b: 2 -> 4
  c: 1 -> 3
  d: 3 -> 4
  rho: 4 -> 1 @1
potential:
  1 rho a b
cut: rho
";

    #[test]
    fn parses_example() {
        let d = parse_document(EXAMPLE).unwrap().into_qp().unwrap();
        assert_eq!(d.qp.potential.as_poly().to_string(), "a b rho");
        assert_eq!(d.cut, Some(Cut::new(["rho"])));
        assert_eq!(d.qp.quiver.degree("rho"), 1);
    }

    #[test]
    fn round_trip() {
        let d = parse_document(EXAMPLE).unwrap();
        let text = emit_document(&d);
        assert_eq!(parse_document(&text).unwrap(), d);
        assert_eq!(emit_document(&parse_document(&text).unwrap()), text);
    }

    #[test]
    fn errors_have_positions() {
        let bad = EXAMPLE.replace("1 rho a b", "1 a c");
        match parse_document(&bad) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (9, 7)),
            other => panic!("{other:?}"),
        }
        match parse_document("vertices: 1\nedges:\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_document(&EXAMPLE.replace("rho a b", "rho a zz")),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn empty_potential_and_relations() {
        let d = parse_document("vertices: 1 2\narrows:\n  a: 1 -> 2\npotential:\n").unwrap();
        assert!(d.into_qp().unwrap().qp.potential.is_zero());
        let p = parse_document("vertices: 1 2 3\narrows:\n  a: 1 -> 2\n  b: 2 -> 3\nrelations:\n  r: 2 a b\n")
            .unwrap()
            .into_algebra()
            .unwrap();
        assert_eq!(p.relations[0].value.to_string(), "2 a b");
        let text = emit_algebra(&p);
        assert_eq!(parse_document(&text).unwrap().into_algebra().unwrap(), p);
    }

    #[test]
    fn dot_marks_cut() {
        let d = parse_document(EXAMPLE).unwrap().into_qp().unwrap();
        let dot = emit_dot(&d.qp.quiver, d.cut.as_ref());
        assert_eq!(dot.matches("->").count(), 5);
        assert_eq!(dot.matches("dashed").count(), 1);
        assert!(dot.contains("\"4\" -> \"1\" [label=\"rho\", style=dashed]"));
    }
}
