//! Premutation of (graded) quivers with potential and reduction to a
//! reduced part plus a trivial part.

use crate::coeff::{self, Coeff};
use crate::error::{Error, Result};
use crate::poly::PathPoly;
use crate::potential::{GradedQp, Potential};
use crate::quiver::{Arrow, ArrowRef, Name, Path, Quiver};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

/// Sweep cap for the reduction loop of a single 2-cycle.
pub const DEFAULT_MAX_SWEEPS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Ungraded,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MutationStep {
    pub vertex: Name,
    pub side: Side,
}

impl MutationStep {
    pub fn left(v: &str) -> Self {
        MutationStep {
            vertex: v.into(),
            side: Side::Left,
        }
    }

    pub fn right(v: &str) -> Self {
        MutationStep {
            vertex: v.into(),
            side: Side::Right,
        }
    }

    pub fn ungraded(v: &str) -> Self {
        MutationStep {
            vertex: v.into(),
            side: Side::Ungraded,
        }
    }

    /// Parses a comma separated list such as `1L,2L,3R`.
    pub fn parse_list(s: &str) -> Result<Vec<MutationStep>> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(MutationStep::from_str)
            .collect()
    }
}

impl FromStr for MutationStep {
    type Err = Error;

    /// `<vertex>L`, `<vertex>R` or `<vertex>U`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 1,
            column: 1,
            message: format!("bad mutation step `{s}`; expected e.g. `1L`, `4R`, `2U`"),
        };
        let mut chars = s.chars();
        let side = match chars.next_back().ok_or_else(bad)? {
            'L' | 'l' => Side::Left,
            'R' | 'r' => Side::Right,
            'U' | 'u' => Side::Ungraded,
            _ => return Err(bad()),
        };
        let vertex = chars.as_str();
        if vertex.is_empty() {
            return Err(bad());
        }
        Ok(MutationStep {
            vertex: vertex.into(),
            side,
        })
    }
}

impl fmt::Display for MutationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Left => 'L',
            Side::Right => 'R',
            Side::Ungraded => 'U',
        };
        write!(f, "{}{}", self.vertex, s)
    }
}

pub fn star(name: &str) -> String {
    format!("{name}*")
}

pub fn composite(b: &str, a: &str) -> String {
    format!("[{b}{a}]")
}

/// Ungraded premutation. Arrow degrees of surviving arrows are kept and new
/// arrows get degree 0.
pub fn premutate(qp: &GradedQp, k: &str) -> Result<GradedQp> {
    premutate_inner(qp, k, None)
}

/// Graded left or right premutation; the result is homogeneous of the
/// input's degree.
pub fn graded_premutate(g: &GradedQp, k: &str, side: Side) -> Result<GradedQp> {
    match side {
        Side::Ungraded => {
            let flat = GradedQp {
                quiver: g.quiver.with_degrees(|_| 0),
                ..g.clone()
            };
            premutate_inner(&flat, k, None)
        }
        _ => {
            let l = g.grading_degree()?;
            let out = premutate_inner(g, k, Some((side, l)))?;
            Ok(GradedQp {
                declared_degree: Some(l),
                ..out
            })
        }
    }
}

fn premutate_inner(qp: &GradedQp, k: &str, grading: Option<(Side, i64)>) -> Result<GradedQp> {
    let q = &qp.quiver;
    if !q.has_vertex(k) {
        return Err(Error::UnknownVertex(k.to_string()));
    }
    if q.has_loop_at(k) {
        return Err(Error::LoopAtVertex(k.to_string()));
    }
    let l = grading.map(|(_, l)| l).unwrap_or(0);
    let right = matches!(grading, Some((Side::Right, _)));
    let graded = grading.is_some();

    let outgoing: Vec<&Arrow> = q.arrows_out_of(k).collect();
    let incoming: Vec<&Arrow> = q.arrows_into(k).collect();

    let mut arrows = Vec::with_capacity(q.arrows().len() + outgoing.len() * incoming.len());
    for a in q.arrows() {
        if &*a.source == k {
            let d = if !graded {
                0
            } else if right {
                -a.degree + l
            } else {
                -a.degree
            };
            arrows.push(Arrow::new(&star(&a.name), &a.target, k).with_degree(d));
        } else if &*a.target == k {
            let d = if !graded {
                0
            } else if right {
                -a.degree
            } else {
                -a.degree + l
            };
            arrows.push(Arrow::new(&star(&a.name), k, &a.source).with_degree(d));
        } else {
            arrows.push(a.clone());
        }
    }
    let mut composites: HashMap<(Name, Name), ArrowRef> = HashMap::new();
    for b in &incoming {
        for a in &outgoing {
            let d = if graded { a.degree + b.degree } else { 0 };
            let arrow = Arrow::new(&composite(&b.name, &a.name), &b.source, &a.target).with_degree(d);
            composites.insert((b.name.clone(), a.name.clone()), arrow.to_ref());
            arrows.push(arrow);
        }
    }
    let mut seen = BTreeSet::new();
    for a in &arrows {
        if !seen.insert(a.name.clone()) {
            return Err(Error::NameCollision(a.name.to_string()));
        }
    }
    let new_quiver = Quiver::new(q.vertices().to_vec(), arrows)?;
    let new_ref = |name: &str| new_quiver.get(name).map(Arrow::to_ref);

    let mut w = PathPoly::zero();
    for (p, c) in qp.potential.terms() {
        w.add_term(c.clone(), bracket_cycle(p, k, &composites));
    }
    for b in &incoming {
        for a in &outgoing {
            let path = Path::from_arrows(vec![
                composites[&(b.name.clone(), a.name.clone())].clone(),
                new_ref(&star(&a.name))?,
                new_ref(&star(&b.name))?,
            ])?;
            w.add_term(coeff::one(), path);
        }
    }
    GradedQp::new(new_quiver, Potential::canonicalize(&w)?)
}

/// Replaces every passage `b a` through `k` by the composite arrow `[ba]`.
fn bracket_cycle(p: &Path, k: &str, composites: &HashMap<(Name, Name), ArrowRef>) -> Path {
    if !p.arrows().iter().any(|a| &**a.target() == k) {
        return p.clone();
    }
    // A cycle that visits k also visits another vertex, since k has no loop.
    let start = p.arrows().iter().position(|a| &**a.source() != k).unwrap_or(0);
    let rotated = p.rotate(start);
    let arrows = rotated.arrows();
    let mut out = Vec::with_capacity(arrows.len());
    let mut i = 0;
    while i < arrows.len() {
        if &**arrows[i].target() == k && i + 1 < arrows.len() {
            let key = (arrows[i].name().clone(), arrows[i + 1].name().clone());
            out.push(composites[&key].clone());
            i += 2;
        } else {
            out.push(arrows[i].clone());
            i += 1;
        }
    }
    Path::from_arrows(out).expect("bracketing preserves composability")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitResult {
    pub reduced: GradedQp,
    pub trivial: GradedQp,
    pub removed_arrows: BTreeSet<Name>,
    /// Whether any substitution dropped terms above the bound.
    pub truncated: bool,
}

/// Cyclic derivative with each cycle weighted by `1/m`, where `m` counts
/// the occurrences of `x` in it, so that `x · result` is cyclically
/// equivalent to the part of `w` containing `x`.
fn weighted_derivative(w: &Potential, x: &str) -> PathPoly {
    let mut out = PathPoly::zero();
    for (p, c) in w.terms() {
        let m = p.count(x);
        if m == 0 {
            continue;
        }
        let weight = c / coeff::int(m as i64);
        for (i, name) in p.names().enumerate() {
            if name == x {
                let r = p.rotate(i);
                out.add_term(weight.clone(), r.slice(1, r.len()));
            }
        }
    }
    out
}

fn substitute_one(w: &Potential, name: &Name, value: PathPoly, bound: usize) -> Result<(Potential, bool)> {
    let mut asg = BTreeMap::new();
    asg.insert(name.clone(), value);
    let out = w.as_poly().substitute(&asg, bound)?;
    Ok((Potential::canonicalize(&out.value)?, out.truncated))
}

/// Splits off the trivial part: repeatedly takes the first 2-cycle term
/// `λ x y` and applies the substitutions `y ↦ y - λ⁻¹(∂_x W - λy)` and
/// `x ↦ x - λ⁻¹(∂_y W - λx)` until `x` and `y` occur nowhere else.
pub fn split(g: &GradedQp, bound: usize) -> Result<SplitResult> {
    split_with_cap(g, bound, DEFAULT_MAX_SWEEPS)
}

pub fn split_with_cap(g: &GradedQp, bound: usize, max_sweeps: usize) -> Result<SplitResult> {
    let mut w = g.potential.clone();
    let mut truncated = false;
    let mut removed = BTreeSet::new();
    let mut trivial = PathPoly::zero();

    loop {
        let next = w
            .quadratic_terms()
            .find(|(p, _)| p.names().all(|n| !removed.contains(n)))
            .map(|(p, _)| p.clone());
        let Some(pair) = next else { break };
        let x = pair.arrows()[0].clone();
        let y = pair.arrows()[1].clone();
        if x == y {
            return Err(Error::FieldExtension(format!(
                "2-cycle `{pair}` pairs arrow `{}` with itself",
                x.name()
            )));
        }
        let mut sweeps = 0;
        loop {
            let lambda = w.as_poly().coefficient(&pair);
            if lambda.is_zero() {
                return Err(Error::FieldExtension(format!(
                    "2-cycle `{pair}` vanished during reduction"
                )));
            }
            let inv = coeff::one() / &lambda;
            let mut changed = false;

            let rx = &weighted_derivative(&w, x.name()) - &PathPoly::arrow(y.clone()).scale(&lambda);
            if !rx.is_zero() {
                let image = &PathPoly::arrow(y.clone()) - &rx.scale(&inv);
                let (nw, t) = substitute_one(&w, y.name(), image, bound)?;
                w = nw;
                truncated |= t;
                changed = true;
            }
            let lambda = w.as_poly().coefficient(&pair);
            let inv = coeff::one() / &lambda;
            let ry = &weighted_derivative(&w, y.name()) - &PathPoly::arrow(x.clone()).scale(&lambda);
            if !ry.is_zero() {
                let image = &PathPoly::arrow(x.clone()) - &ry.scale(&inv);
                let (nw, t) = substitute_one(&w, x.name(), image, bound)?;
                w = nw;
                truncated |= t;
                changed = true;
            }
            if !changed {
                break;
            }
            sweeps += 1;
            if sweeps > max_sweeps {
                return Err(Error::NonTermination(max_sweeps));
            }
        }
        let lambda: Coeff = w.as_poly().coefficient(&pair);
        trivial.add_term(lambda, pair.clone());
        w = Potential::canonicalize(&w.as_poly().filter(|p| p != &pair))?;
        removed.insert(x.name().clone());
        removed.insert(y.name().clone());
    }

    let reduced_quiver = g.quiver.retain_arrows(|a| !removed.contains(&a.name));
    let trivial_quiver = g.quiver.retain_arrows(|a| removed.contains(&a.name));
    let reduced = GradedQp::new(reduced_quiver, w)?;
    let trivial = GradedQp::new(trivial_quiver, Potential::canonicalize(&trivial)?)?;
    Ok(SplitResult {
        reduced: GradedQp {
            declared_degree: g.declared_degree,
            ..reduced
        },
        trivial,
        removed_arrows: removed,
        truncated,
    })
}

/// Premutation and reduction in one step.
#[derive(Clone, Debug, Serialize)]
pub struct MutationOutcome {
    pub premutation: GradedQp,
    pub split: SplitResult,
}

pub fn mutate_detailed(g: &GradedQp, step: &MutationStep, bound: usize) -> Result<MutationOutcome> {
    let premutation = graded_premutate(g, &step.vertex, step.side)?;
    let split = split(&premutation, bound)?;
    Ok(MutationOutcome { premutation, split })
}

/// Reduced part of the (graded) premutation.
pub fn mutate(g: &GradedQp, step: &MutationStep, bound: usize) -> Result<GradedQp> {
    Ok(mutate_detailed(g, step, bound)?.split.reduced)
}

/// Renames arrows everywhere in the QP.
pub fn rename_arrows(g: &GradedQp, f: impl Fn(&str) -> String) -> Result<GradedQp> {
    let arrows: Vec<Arrow> = g
        .quiver
        .arrows()
        .iter()
        .map(|a| Arrow {
            name: f(&a.name).into(),
            ..a.clone()
        })
        .collect();
    let quiver = Quiver::new(g.quiver.vertices().to_vec(), arrows)?;
    let w = g.potential.as_poly().map_terms(|p| {
        let refs: Vec<ArrowRef> = p
            .names()
            .map(|n| quiver.arrow(&f(n)).expect("renamed arrow").to_ref())
            .collect();
        Some(Path::from_arrows(refs).expect("renaming keeps endpoints"))
    });
    Ok(GradedQp {
        quiver,
        potential: Potential::canonicalize(&w)?,
        declared_degree: g.declared_degree,
    })
}

/// Drops the decoration gained by reversing an arrow twice.
pub fn strip_double_stars(name: &str) -> String {
    let mut s = name.to_string();
    while s.contains("**") {
        s = s.replace("**", "");
    }
    s
}

pub fn canonical_renaming(g: &GradedQp) -> Result<GradedQp> {
    rename_arrows(g, strip_double_stars)
}
