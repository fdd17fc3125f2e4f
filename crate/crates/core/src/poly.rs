//! Linear combinations of paths with exact rational coefficients.
//!
//! The complete path algebra is approximated by polynomials together with an
//! explicit length bound; operations that can produce longer terms take the
//! bound and report whether anything was discarded.

use crate::coeff::{self, Coeff};
use crate::error::{Error, Result};
use crate::quiver::{ArrowRef, Name, Path};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const DEFAULT_BOUND: usize = 12;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathPoly {
    terms: BTreeMap<Path, Coeff>,
}

/// A value computed under a length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounded<T> {
    pub value: T,
    pub truncated: bool,
}

impl PathPoly {
    pub fn zero() -> Self {
        PathPoly::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::monomial(coeff::one(), p)
    }

    pub fn monomial(c: Coeff, p: Path) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        PathPoly { terms }
    }

    pub fn arrow(a: ArrowRef) -> Self {
        Self::from_path(Path::arrow(a))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Coeff, Path)>) -> Self {
        let mut out = PathPoly::zero();
        for (c, p) in terms {
            out.add_term(c, p);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order (length, then arrow names).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Path, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> Coeff {
        self.terms.get(p).cloned().unwrap_or_else(coeff::zero)
    }

    pub fn add_term(&mut self, c: Coeff, p: Path) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> PathPoly {
        if c.is_zero() {
            return PathPoly::zero();
        }
        PathPoly {
            terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect(),
        }
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.terms.keys().map(Path::len).min().unwrap_or(0)
    }

    /// Product with terms longer than `bound` dropped.
    pub fn mul_bounded(&self, other: &PathPoly, bound: usize) -> Bounded<PathPoly> {
        let mut out = PathPoly::zero();
        let mut truncated = false;
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                if p.end() != q.start() {
                    continue;
                }
                if p.len() + q.len() > bound {
                    truncated = true;
                    continue;
                }
                out.add_term(c * d, p.concat_unchecked(q));
            }
        }
        Bounded { value: out, truncated }
    }

    pub fn truncate(&self, bound: usize) -> Bounded<PathPoly> {
        let truncated = self.max_len() > bound;
        Bounded {
            value: PathPoly {
                terms: self
                    .terms
                    .iter()
                    .filter(|(p, _)| p.len() <= bound)
                    .map(|(p, c)| (p.clone(), c.clone()))
                    .collect(),
            },
            truncated,
        }
    }

    /// Common start and end of every term, if there is one.
    pub fn endpoints(&self) -> Option<(Name, Name)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.start().clone(), first.end().clone());
        it.all(|p| *p.start() == ends.0 && *p.end() == ends.1).then_some(ends)
    }

    /// All terms share one start and one end vertex. Zero counts as basic.
    pub fn is_basic(&self) -> bool {
        self.is_zero() || self.endpoints().is_some()
    }

    pub fn map_terms(&self, f: impl Fn(&Path) -> Option<Path>) -> PathPoly {
        PathPoly::from_terms(self.terms.iter().filter_map(|(p, c)| f(p).map(|q| (c.clone(), q))))
    }

    pub fn filter(&self, keep: impl Fn(&Path) -> bool) -> PathPoly {
        PathPoly {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Leading term of the canonical order (the largest path).
    pub fn leading(&self) -> Option<(&Path, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> PathPoly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&(coeff::one() / c)),
            _ => self.clone(),
        }
    }

    /// Substitutes arrows simultaneously. Unassigned arrows map to
    /// themselves; terms longer than `bound` are dropped.
    pub fn substitute(&self, assignment: &BTreeMap<Name, PathPoly>, bound: usize) -> Result<Bounded<PathPoly>> {
        for (name, value) in assignment {
            if value.is_zero() {
                continue;
            }
            let Some((s, t)) = value.endpoints() else {
                return Err(Error::Substitution(format!("image of `{name}` is not basic")));
            };
            for p in self.terms.keys() {
                if let Some(a) = p.arrows().iter().find(|a| a.name() == name) {
                    if *a.source() != s || *a.target() != t {
                        return Err(Error::Substitution(format!(
                            "`{name}` runs {} -> {} but its image runs {s} -> {t}",
                            a.source(),
                            a.target()
                        )));
                    }
                }
            }
        }
        let mut out = PathPoly::zero();
        let mut truncated = false;
        for (p, c) in &self.terms {
            let mut acc = PathPoly::from_path(Path::trivial(p.start()));
            for a in p.arrows() {
                let image = match assignment.get(a.name()) {
                    Some(v) => v.clone(),
                    None => PathPoly::arrow(a.clone()),
                };
                let step = acc.mul_bounded(&image, bound);
                truncated |= step.truncated;
                acc = step.value;
                if acc.is_zero() {
                    break;
                }
            }
            for (q, d) in acc.terms {
                out.add_term(c * d, q);
            }
        }
        Ok(Bounded { value: out, truncated })
    }
}

impl Add for &PathPoly {
    type Output = PathPoly;
    fn add(self, rhs: &PathPoly) -> PathPoly {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(c.clone(), p.clone());
        }
        out
    }
}

impl Sub for &PathPoly {
    type Output = PathPoly;
    fn sub(self, rhs: &PathPoly) -> PathPoly {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(-c.clone(), p.clone());
        }
        out
    }
}

impl Neg for &PathPoly {
    type Output = PathPoly;
    fn neg(self) -> PathPoly {
        self.scale(&-coeff::one())
    }
}

/// Unbounded product; non-composable pairs contribute zero.
impl Mul for &PathPoly {
    type Output = PathPoly;
    fn mul(self, rhs: &PathPoly) -> PathPoly {
        self.mul_bounded(rhs, usize::MAX).value
    }
}

impl fmt::Display for PathPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs} ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Serialized form: `[{"coeff": "1/2", "start": "1", "arrows": ["a", "b"]}]`.
#[derive(Serialize, Deserialize)]
pub struct TermRepr {
    #[serde(with = "crate::coeff::serde_str")]
    pub coeff: Coeff,
    pub start: Name,
    pub arrows: Vec<Name>,
}

impl PathPoly {
    pub fn to_repr(&self) -> Vec<TermRepr> {
        self.terms
            .iter()
            .map(|(p, c)| TermRepr {
                coeff: c.clone(),
                start: p.start().clone(),
                arrows: p.names().map(Name::from).collect(),
            })
            .collect()
    }
}

impl Serialize for PathPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}
