//! Independent reference computations used as test oracles. Nothing here
//! calls into the algorithms under test.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub type Q = BigRational;

/// Per (start, end): the spanning paths and the ideal rows over them.
type Blocks = HashMap<(String, String), (Vec<Vec<usize>>, Vec<Vec<Q>>)>;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// A quiver as plain triples.
#[derive(Clone, Debug)]
pub struct Triples {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
}

impl Triples {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Self {
        Triples {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
                .collect(),
        }
    }

    fn idx(&self, name: &str) -> usize {
        self.arrows.iter().position(|a| a.0 == name).expect("arrow")
    }

    /// Paths as (start vertex, arrow indices), length at most `n`.
    pub fn paths(&self, n: usize) -> Vec<(String, Vec<usize>)> {
        let mut out = Vec::new();
        for v in &self.vertices {
            let mut stack = vec![(v.clone(), Vec::<usize>::new())];
            while let Some((end, p)) = stack.pop() {
                out.push((v.clone(), p.clone()));
                if p.len() == n {
                    continue;
                }
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.1 == end {
                        let mut p2 = p.clone();
                        p2.push(i);
                        stack.push((a.2.clone(), p2));
                    }
                }
            }
        }
        out
    }

    fn end_of(&self, start: &str, p: &[usize]) -> String {
        p.last().map_or(start.to_string(), |&i| self.arrows[i].2.clone())
    }
}

/// A relation as terms `(coefficient, arrow names)`.
pub type Rel<'a> = Vec<(i64, Vec<&'a str>)>;

fn rank(rows: Vec<Vec<Q>>) -> usize {
    let mut m = rows;
    let mut r = 0;
    let cols = m.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let v = &m[r][k] * &f;
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rows `p r q` (dense, over the paths of one endpoint block) for the
/// relations, with the option to leave out the bare `r` of one relation.
fn ideal_rows(
    t: &Triples,
    rels: &[Rel<'_>],
    n: usize,
    skip_bare: Option<usize>,
    only: Option<&BTreeSet<usize>>,
) -> Blocks {
    let paths = t.paths(n);
    let mut blocks: HashMap<(String, String), Vec<Vec<usize>>> = HashMap::new();
    for (s, p) in &paths {
        blocks.entry((s.clone(), t.end_of(s, p))).or_default().push(p.clone());
    }
    let mut out: Blocks = blocks.into_iter().map(|(k, ps)| (k, (ps, Vec::new()))).collect();
    for (ri, r) in rels.iter().enumerate() {
        if only.is_some_and(|o| !o.contains(&ri)) {
            continue;
        }
        let terms: Vec<(Q, Vec<usize>)> = r
            .iter()
            .map(|(c, names)| (q(*c), names.iter().map(|a| t.idx(a)).collect()))
            .collect();
        let u = t.arrows[terms[0].1[0]].1.clone();
        let v = t.arrows[*terms[0].1.last().unwrap()].2.clone();
        let minlen = terms.iter().map(|x| x.1.len()).min().unwrap();
        for (s, p) in &paths {
            if t.end_of(s, p) != u || p.len() + minlen > n {
                continue;
            }
            for (s2, q2) in &paths {
                if *s2 != v || p.len() + q2.len() + minlen > n {
                    continue;
                }
                if skip_bare == Some(ri) && p.is_empty() && q2.is_empty() {
                    continue;
                }
                let key = (s.clone(), t.end_of(s2, q2));
                let (ps, rows) = out.get_mut(&key).unwrap();
                let mut row = vec![Q::zero(); ps.len()];
                for (c, m) in &terms {
                    let mut full = p.clone();
                    full.extend(m);
                    full.extend(q2);
                    if let Some(i) = ps.iter().position(|x| *x == full) {
                        row[i] += c;
                    }
                }
                rows.push(row);
            }
        }
    }
    out
}

/// `dim KQ / (I + J^{n+1})`.
pub fn dimension(t: &Triples, rels: &[Rel<'_>], n: usize) -> usize {
    ideal_rows(t, rels, n, None, None)
        .into_values()
        .map(|(ps, rows)| ps.len() - if rows.is_empty() { 0 } else { rank(rows) })
        .sum()
}

/// Whether `rels[k]` lies in the span of the other relations plus the
/// products `p r q` with `p` or `q` nontrivial, at the bound; relations
/// outside `active` are ignored.
pub fn redundant(t: &Triples, rels: &[Rel<'_>], k: usize, active: &BTreeSet<usize>, n: usize) -> bool {
    let rows = ideal_rows(t, rels, n, Some(k), Some(active));
    // The bare relation is the only row of its own block with p = q = e.
    let u = t.arrows[t.idx(rels[k][0].1[0])].1.clone();
    let v = t.arrows[t.idx(rels[k][0].1.last().unwrap())].2.clone();
    let key = (u, v);
    let (ps, span) = &rows[&key];
    let mut bare = vec![Q::zero(); ps.len()];
    for (c, names) in &rels[k] {
        let p: Vec<usize> = names.iter().map(|a| t.idx(a)).collect();
        if let Some(i) = ps.iter().position(|x| *x == p) {
            bare[i] += q(*c);
        }
    }
    let base = if span.is_empty() { 0 } else { rank(span.clone()) };
    let mut with = span.clone();
    with.push(bare);
    rank(with) == base
}

/// The set of redundant relations found from the last one backwards.
pub fn redundant_greedy(t: &Triples, rels: &[Rel<'_>], n: usize) -> Vec<usize> {
    let mut active: BTreeSet<usize> = (0..rels.len()).collect();
    let mut out = Vec::new();
    for k in (0..rels.len()).rev() {
        if redundant(t, rels, k, &active, n) {
            active.remove(&k);
            out.push(k);
        }
    }
    out.reverse();
    out
}

/// Reflection of a quiver at a source: every arrow `a: k -> v` becomes
/// `a*: v -> k`.
pub fn reflect(t: &Triples, k: &str) -> BTreeSet<(String, String, String)> {
    t.arrows
        .iter()
        .map(|(a, s, e)| {
            if s == k {
                (format!("{a}*"), e.clone(), s.clone())
            } else {
                (a.clone(), s.clone(), e.clone())
            }
        })
        .collect()
}

/// Arrow renaming determined by endpoints, for quivers without parallel
/// arrows.
pub fn rename_by_endpoints(
    from: &[(String, String, String)],
    to: &[(String, String, String)],
) -> Option<BTreeMap<String, String>> {
    if from.len() != to.len() {
        return None;
    }
    let mut map = BTreeMap::new();
    for (a, s, t) in from {
        let hits: Vec<_> = to.iter().filter(|(_, s2, t2)| s2 == s && t2 == t).collect();
        if hits.len() != 1 {
            return None;
        }
        map.insert(a.clone(), hits[0].0.clone());
    }
    Some(map)
}

/// Whether two potentials, given as `(coefficient, cycle)` lists over the
/// same arrows, agree after rescaling arrows by signs. Cycles are compared
/// as multisets of arrows, which is enough for cycles through distinct
/// arrows.
pub fn equal_up_to_signs(w1: &[(i64, Vec<String>)], w2: &[(i64, Vec<String>)], arrows: &[String]) -> bool {
    let key = |c: &Vec<String>| {
        let mut c = c.clone();
        c.sort();
        c
    };
    let m1: BTreeMap<Vec<String>, i64> = w1.iter().map(|(c, p)| (key(p), *c)).collect();
    let m2: BTreeMap<Vec<String>, i64> = w2.iter().map(|(c, p)| (key(p), *c)).collect();
    if m1.keys().collect::<Vec<_>>() != m2.keys().collect::<Vec<_>>() {
        return false;
    }
    // Solve sum_{a in cycle} x_a = [c1 != c2] over GF(2).
    let mut rows: Vec<(Vec<bool>, bool)> = Vec::new();
    for (cycle, c1) in &m1 {
        let c2 = m2[cycle];
        if c1.abs() != c2.abs() {
            return false;
        }
        let lhs = arrows
            .iter()
            .map(|a| cycle.iter().filter(|x| *x == a).count() % 2 == 1)
            .collect();
        rows.push((lhs, (*c1 < 0) != (c2 < 0)));
    }
    let n = arrows.len();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[c]) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i].0[c] {
                let (pivot, rhs) = rows[r].clone();
                for k in 0..n {
                    rows[i].0[k] ^= pivot[k];
                }
                rows[i].1 ^= rhs;
            }
        }
        r += 1;
    }
    rows.iter().all(|(lhs, rhs)| lhs.iter().any(|&x| x) || !rhs)
}
