//! Quivers and paths.
//!
//! Paths compose left to right: `a b` means first `a`, then `b`, so it is
//! defined when the target of `a` is the source of `b`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub type Name = Arc<str>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: Name,
    pub source: Name,
    pub target: Name,
    #[serde(default)]
    pub degree: i64,
}

impl Arrow {
    pub fn new(name: &str, source: &str, target: &str) -> Self {
        Arrow {
            name: name.into(),
            source: source.into(),
            target: target.into(),
            degree: 0,
        }
    }

    pub fn with_degree(mut self, degree: i64) -> Self {
        self.degree = degree;
        self
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }

    pub fn to_ref(&self) -> ArrowRef {
        ArrowRef(Arc::new(ArrowSig {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
        }))
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ArrowSig {
    pub name: Name,
    pub source: Name,
    pub target: Name,
}

/// Degree-free handle on an arrow, as it occurs inside paths.
#[derive(Clone, Debug)]
pub struct ArrowRef(Arc<ArrowSig>);

impl ArrowRef {
    pub fn new(name: &str, source: &str, target: &str) -> Self {
        Arrow::new(name, source, target).to_ref()
    }

    pub fn name(&self) -> &Name {
        &self.0.name
    }

    pub fn source(&self) -> &Name {
        &self.0.source
    }

    pub fn target(&self) -> &Name {
        &self.0.target
    }
}

impl PartialEq for ArrowRef {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for ArrowRef {}

impl Hash for ArrowRef {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Ord for ArrowRef {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name()
            .cmp(other.name())
            .then_with(|| self.source().cmp(other.source()))
            .then_with(|| self.target().cmp(other.target()))
    }
}

impl PartialOrd for ArrowRef {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A path: a start vertex and a composable arrow sequence. The empty
/// sequence is the idempotent at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    start: Name,
    arrows: Vec<ArrowRef>,
}

impl Path {
    pub fn trivial(vertex: &str) -> Self {
        Path {
            start: vertex.into(),
            arrows: Vec::new(),
        }
    }

    pub fn arrow(a: ArrowRef) -> Self {
        Path {
            start: a.source().clone(),
            arrows: vec![a],
        }
    }

    /// Builds a path from arrows, checking composability.
    pub fn from_arrows(arrows: Vec<ArrowRef>) -> Result<Self> {
        let first = arrows
            .first()
            .ok_or_else(|| Error::Composition("empty arrow list has no start vertex".into()))?;
        for w in arrows.windows(2) {
            if w[0].target() != w[1].source() {
                return Err(Error::Composition(format!(
                    "`{}` ends at {} but `{}` starts at {}",
                    w[0].name(),
                    w[0].target(),
                    w[1].name(),
                    w[1].source()
                )));
            }
        }
        Ok(Path {
            start: first.source().clone(),
            arrows,
        })
    }

    pub fn start(&self) -> &Name {
        &self.start
    }

    pub fn end(&self) -> &Name {
        self.arrows.last().map_or(&self.start, |a| a.target())
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[ArrowRef] {
        &self.arrows
    }

    pub fn is_cycle(&self) -> bool {
        !self.arrows.is_empty() && self.start() == self.end()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.arrows.iter().any(|a| &**a.name() == name)
    }

    pub fn count(&self, name: &str) -> usize {
        self.arrows.iter().filter(|a| &**a.name() == name).count()
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Path) -> Result<Path> {
        if self.end() != other.start() {
            return Err(Error::Composition(format!(
                "path `{self}` ends at {} but `{other}` starts at {}",
                self.end(),
                other.start()
            )));
        }
        Ok(self.concat_unchecked(other))
    }

    pub(crate) fn concat_unchecked(&self, other: &Path) -> Path {
        if self.arrows.is_empty() {
            return other.clone();
        }
        let mut arrows = Vec::with_capacity(self.len() + other.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Path {
            start: self.start.clone(),
            arrows,
        }
    }

    /// Subpath of arrows `[from, to)`; empty ranges give the idempotent at
    /// the vertex reached after `from` arrows.
    pub fn slice(&self, from: usize, to: usize) -> Path {
        let start = if from == 0 {
            self.start.clone()
        } else {
            self.arrows[from - 1].target().clone()
        };
        Path {
            start,
            arrows: self.arrows[from..to].to_vec(),
        }
    }

    /// Rotation of a cycle starting at arrow index `i`.
    pub fn rotate(&self, i: usize) -> Path {
        debug_assert!(self.is_cycle());
        let mut arrows = self.arrows[i..].to_vec();
        arrows.extend_from_slice(&self.arrows[..i]);
        Path {
            start: arrows[0].source().clone(),
            arrows,
        }
    }

    pub fn reversed(&self, reverse_arrow: impl Fn(&ArrowRef) -> ArrowRef) -> Path {
        Path {
            start: self.end().clone(),
            arrows: self.arrows.iter().rev().map(reverse_arrow).collect(),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.arrows.iter().map(|a| &**a.name())
    }

    /// Total degree under a degree function on arrow names.
    pub fn degree(&self, deg: impl Fn(&str) -> i64) -> i64 {
        self.names().map(deg).sum()
    }
}

impl Ord for Path {
    /// Length first, then arrow names lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.names().cmp(other.names()))
            .then_with(|| self.start.cmp(&other.start))
            .then_with(|| self.arrows.cmp(&other.arrows))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            return write!(f, "e_{}", self.start);
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(a.name())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(from = "QuiverRepr", into = "QuiverRepr")]
pub struct Quiver {
    vertices: Vec<Name>,
    arrows: Vec<Arrow>,
    index: HashMap<Name, usize>,
}

#[derive(Serialize, Deserialize)]
struct QuiverRepr {
    vertices: Vec<Name>,
    arrows: Vec<Arrow>,
}

impl From<QuiverRepr> for Quiver {
    fn from(r: QuiverRepr) -> Self {
        Quiver::unchecked(r.vertices, r.arrows)
    }
}

impl From<Quiver> for QuiverRepr {
    fn from(q: Quiver) -> Self {
        QuiverRepr {
            vertices: q.vertices,
            arrows: q.arrows,
        }
    }
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

/// Outcome of [`Quiver::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QuiverReport {
    pub duplicate_vertices: Vec<String>,
    pub duplicate_arrows: Vec<String>,
    pub dangling: Vec<String>,
    pub connected: bool,
}

impl QuiverReport {
    pub fn is_valid(&self) -> bool {
        self.duplicate_vertices.is_empty() && self.duplicate_arrows.is_empty() && self.dangling.is_empty()
    }

    pub fn warnings(&self) -> Vec<String> {
        if self.connected {
            vec![]
        } else {
            vec!["quiver is not connected".to_string()]
        }
    }
}

impl Quiver {
    /// Builds a quiver, rejecting duplicate names and dangling endpoints.
    pub fn new(vertices: Vec<Name>, arrows: Vec<Arrow>) -> Result<Self> {
        let q = Quiver::unchecked(vertices, arrows);
        let report = q.validate();
        if !report.is_valid() {
            let mut problems = Vec::new();
            problems.extend(
                report
                    .duplicate_vertices
                    .iter()
                    .map(|v| format!("duplicate vertex `{v}`")),
            );
            problems.extend(report.duplicate_arrows.iter().map(|a| format!("duplicate arrow `{a}`")));
            problems.extend(report.dangling.iter().cloned());
            return Err(Error::InvalidQuiver(problems.join("; ")));
        }
        Ok(q)
    }

    pub fn unchecked(vertices: Vec<Name>, arrows: Vec<Arrow>) -> Self {
        let index = arrows.iter().enumerate().map(|(i, a)| (a.name.clone(), i)).collect();
        Quiver {
            vertices,
            arrows,
            index,
        }
    }

    /// Convenience constructor for literals: `("a", "1", "2")` triples.
    pub fn from_triples(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        Quiver::new(
            vertices.iter().map(|v| Name::from(*v)).collect(),
            arrows.iter().map(|(n, s, t)| Arrow::new(n, s, t)).collect(),
        )
    }

    pub fn vertices(&self) -> &[Name] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.iter().any(|x| &**x == v)
    }

    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.vertices.iter().position(|x| &**x == v)
    }

    pub fn arrow(&self, name: &str) -> Option<&Arrow> {
        self.index.get(name).map(|&i| &self.arrows[i])
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn get(&self, name: &str) -> Result<&Arrow> {
        self.arrow(name).ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn degree(&self, name: &str) -> i64 {
        self.arrow(name).map_or(0, |a| a.degree)
    }

    pub fn arrows_into<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Arrow> + 'a {
        self.arrows.iter().filter(move |a| &*a.target == v)
    }

    pub fn arrows_out_of<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Arrow> + 'a {
        self.arrows.iter().filter(move |a| &*a.source == v)
    }

    pub fn has_loop_at(&self, v: &str) -> bool {
        self.arrows.iter().any(|a| a.is_loop() && &*a.source == v)
    }

    pub fn is_source(&self, v: &str) -> bool {
        self.arrows_into(v).next().is_none()
    }

    pub fn is_sink(&self, v: &str) -> bool {
        self.arrows_out_of(v).next().is_none()
    }

    /// Path made of the named arrows.
    pub fn path(&self, names: &[&str]) -> Result<Path> {
        let refs = names
            .iter()
            .map(|n| self.get(n).map(Arrow::to_ref))
            .collect::<Result<Vec<_>>>()?;
        Path::from_arrows(refs)
    }

    /// Same vertices and arrows, with arrows filtered.
    pub fn retain_arrows(&self, keep: impl Fn(&Arrow) -> bool) -> Quiver {
        Quiver::unchecked(
            self.vertices.clone(),
            self.arrows.iter().filter(|a| keep(a)).cloned().collect(),
        )
    }

    pub fn with_degrees(&self, deg: impl Fn(&Arrow) -> i64) -> Quiver {
        Quiver::unchecked(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| Arrow {
                    degree: deg(a),
                    ..a.clone()
                })
                .collect(),
        )
    }

    /// Quiver with every arrow reversed; names are kept.
    pub fn opposite(&self) -> Quiver {
        Quiver::unchecked(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target.clone(),
                    target: a.source.clone(),
                    degree: a.degree,
                })
                .collect(),
        )
    }

    pub fn validate(&self) -> QuiverReport {
        let mut report = QuiverReport::default();
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                report.duplicate_vertices.push(v.to_string());
            }
        }
        let mut names = BTreeSet::new();
        for a in &self.arrows {
            if !names.insert(a.name.clone()) {
                report.duplicate_arrows.push(a.name.to_string());
            }
            for (role, v) in [("source", &a.source), ("target", &a.target)] {
                if !seen.contains(v) {
                    report
                        .dangling
                        .push(format!("arrow `{}` has undeclared {role} `{v}`", a.name));
                }
            }
        }
        report.connected = self.is_connected();
        report
    }

    /// Connectivity of the underlying undirected graph (arrows with
    /// undeclared endpoints ignored).
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in &self.arrows {
            if let (Some(s), Some(t)) = (self.vertex_index(&a.source), self.vertex_index(&a.target)) {
                let (rs, rt) = (find(&mut parent, s), find(&mut parent, t));
                parent[rs] = rt;
            }
        }
        let root = find(&mut parent, 0);
        (1..n).all(|i| find(&mut parent, i) == root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Quiver {
        Quiver::from_triples(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap()
    }

    #[test]
    fn trivial_path_is_identity() {
        let q = example();
        let a = q.path(&["a"]).unwrap();
        assert_eq!(Path::trivial("1").compose(&a).unwrap(), a);
        assert_eq!(a.compose(&Path::trivial("2")).unwrap(), a);
    }

    #[test]
    fn composes_left_to_right() {
        let q = example();
        let ab = q.path(&["a"]).unwrap().compose(&q.path(&["b"]).unwrap()).unwrap();
        assert_eq!(ab.to_string(), "a b");
        assert_eq!(&**ab.start(), "1");
        assert_eq!(&**ab.end(), "4");
    }

    #[test]
    fn rejects_mismatched_endpoints() {
        let q = example();
        let err = q.path(&["a"]).unwrap().compose(&q.path(&["c"]).unwrap());
        assert!(matches!(err, Err(Error::Composition(_))));
    }

    #[test]
    fn validates_example_quiver() {
        let r = example().validate();
        assert!(r.is_valid());
        assert!(r.connected);
    }

    #[test]
    fn dangling_arrow_is_invalid() {
        let q = Quiver::unchecked(vec!["1".into()], vec![Arrow::new("a", "1", "9")]);
        let r = q.validate();
        assert!(!r.is_valid());
        assert_eq!(r.dangling.len(), 1);
        assert!(Quiver::new(vec!["1".into()], vec![Arrow::new("a", "1", "9")]).is_err());
    }

    #[test]
    fn two_components_warn() {
        let q = Quiver::from_triples(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "3", "4")]).unwrap();
        let r = q.validate();
        assert!(r.is_valid());
        assert!(!r.connected);
        assert_eq!(r.warnings(), vec!["quiver is not connected".to_string()]);
    }

    #[test]
    fn path_order_is_length_then_names() {
        let q = example();
        let a = q.path(&["a"]).unwrap();
        let d = q.path(&["d"]).unwrap();
        let ab = q.path(&["a", "b"]).unwrap();
        assert!(a < d);
        assert!(d < ab);
        assert!(Path::trivial("4") < a);
    }
}
