//! Quivers with relations.

use crate::error::{Error, Result};
use crate::mutation::strip_double_stars;
use crate::poly::PathPoly;
use crate::quiver::{Arrow, ArrowRef, Name, Path, Quiver};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: Name,
    pub value: PathPoly,
}

impl Relation {
    pub fn new(name: &str, value: PathPoly) -> Self {
        Relation {
            name: name.into(),
            value,
        }
    }
}

/// The algebra `KQ / <relations>`, completed along path length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl AlgebraPresentation {
    /// Checks every relation is basic, lies in the square of the radical and
    /// uses arrows of the quiver. Zero relations are dropped.
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        let mut kept = Vec::with_capacity(relations.len());
        for r in relations {
            if r.value.is_zero() {
                continue;
            }
            if !r.value.is_basic() || r.value.min_len() < 2 {
                return Err(Error::NonBasicRelation(r.name.to_string()));
            }
            for (p, _) in r.value.terms() {
                for a in p.arrows() {
                    let arrow = quiver.get(a.name())?;
                    if arrow.source != *a.source() || arrow.target != *a.target() {
                        return Err(Error::NonBasicRelation(r.name.to_string()));
                    }
                }
            }
            kept.push(r);
        }
        Ok(AlgebraPresentation {
            quiver,
            relations: kept,
        })
    }

    pub fn path_algebra(quiver: Quiver) -> Self {
        AlgebraPresentation {
            quiver,
            relations: Vec::new(),
        }
    }

    pub fn relation_values(&self) -> Vec<PathPoly> {
        self.relations.iter().map(|r| r.value.clone()).collect()
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| &*r.name == name)
    }

    /// Reversed arrows and reversed relation paths; names are kept.
    pub fn opposite(&self) -> AlgebraPresentation {
        let quiver = self.quiver.opposite();
        let rev = |a: &ArrowRef| ArrowRef::new(a.name(), a.target(), a.source());
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                name: r.name.clone(),
                value: r.value.map_terms(|p| Some(p.reversed(rev))),
            })
            .collect();
        AlgebraPresentation { quiver, relations }
    }

    /// Arrow names cleaned of double stars, relations made monic and sorted;
    /// used to compare presentations produced along different routes.
    pub fn canonical(&self) -> AlgebraPresentation {
        let mut arrows: Vec<Arrow> = self
            .quiver
            .arrows()
            .iter()
            .map(|a| Arrow {
                name: strip_double_stars(&a.name).into(),
                degree: 0,
                ..a.clone()
            })
            .collect();
        arrows.sort_by(|a, b| a.name.cmp(&b.name));
        let quiver = Quiver::unchecked(self.quiver.vertices().to_vec(), arrows);
        let rename = |a: &ArrowRef| ArrowRef::new(&strip_double_stars(a.name()), a.source(), a.target());
        let mut relations: Vec<Relation> = self
            .relations
            .iter()
            .map(|r| Relation {
                name: strip_double_stars(&r.name).into(),
                value: r
                    .value
                    .map_terms(|p| {
                        if p.is_empty() {
                            return Some(p.clone());
                        }
                        Path::from_arrows(p.arrows().iter().map(rename).collect()).ok()
                    })
                    .monic(),
            })
            .collect();
        relations.sort_by(|a, b| a.value.cmp(&b.value).then_with(|| a.name.cmp(&b.name)));
        AlgebraPresentation { quiver, relations }
    }

    /// Same quiver and the same relations up to scalars and the order of
    /// the list, ignoring names of relations.
    pub fn same_as(&self, other: &AlgebraPresentation) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.quiver == b.quiver && a.relation_values() == b.relation_values()
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .quiver
            .arrows()
            .iter()
            .map(|a| format!("{}:{}->{}", a.name, a.source, a.target))
            .collect();
        let rels: Vec<String> = self.relations.iter().map(|r| r.value.to_string()).collect();
        write!(f, "{{{}}} <{}>", arrows.join(", "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Quiver {
        Quiver::from_triples(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap()
    }

    #[test]
    fn rejects_non_basic_and_short_relations() {
        let q = q();
        let ab = PathPoly::from_path(q.path(&["a", "b"]).unwrap());
        let c = PathPoly::from_path(q.path(&["c"]).unwrap());
        let a = PathPoly::from_path(q.path(&["a"]).unwrap());
        assert!(AlgebraPresentation::new(q.clone(), vec![Relation::new("r", &ab + &c)]).is_err());
        assert!(AlgebraPresentation::new(q.clone(), vec![Relation::new("r", a)]).is_err());
        let ok =
            AlgebraPresentation::new(q, vec![Relation::new("r", ab), Relation::new("z", PathPoly::zero())]).unwrap();
        assert_eq!(ok.relations.len(), 1);
    }

    #[test]
    fn opposite_reverses_relations() {
        let q = q();
        let ab = PathPoly::from_path(q.path(&["a", "b"]).unwrap());
        let p = AlgebraPresentation::new(q, vec![Relation::new("r", ab)]).unwrap();
        let op = p.opposite();
        assert_eq!(op.relations[0].value.to_string(), "b a");
        assert_eq!(op.opposite(), p);
    }
}
