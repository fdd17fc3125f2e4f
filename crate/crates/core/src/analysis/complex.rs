//! The complex `⊕_r P_{s(r)} -> ⊕_b P_{s(b)} -> J P_i -> 0` attached to a
//! vertex, and minimality of relations read off from it.

use super::algebra::FiniteAlgebra;
use crate::coeff::Coeff;
use crate::error::Result;
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::poly::PathPoly;
use crate::potential::{partial_derivative, DerivativeSide};
use crate::quiver::{Name, Path};
use serde::Serialize;

/// The two maps of the complex at vertex `i`, as one matrix per vertex `j`
/// of the quiver (acting on the `j`-components).
#[derive(Clone, Debug)]
pub struct SimplePresentation {
    pub vertex: Name,
    /// Relations ending at `i` with their sources.
    pub left: Vec<(Name, Name)>,
    /// Arrows ending at `i` with their sources.
    pub middle: Vec<(Name, Name)>,
    pub left_maps: Vec<Matrix>,
    pub right_maps: Vec<Matrix>,
    /// `dim (J P_i)_j`.
    pub radical_dims: Vec<usize>,
}

impl SimplePresentation {
    /// The right map is onto `J P_i` and its kernel is the image of the left
    /// map, at every vertex.
    pub fn is_exact(&self) -> bool {
        self.left_maps
            .iter()
            .zip(&self.right_maps)
            .zip(&self.radical_dims)
            .all(|((l, r), &rad)| {
                let rank_r = r.rank();
                rank_r == rad && l.rank() == r.cols() - rank_r
            })
    }
}

fn columns_of(alg: &FiniteAlgebra, j: &str, source: &str, targets: &[(Name, PathPoly)]) -> Vec<Vec<Coeff>> {
    let nf = alg.basis();
    let bound = nf.bound();
    nf.basis(j, source)
        .into_iter()
        .map(|x| {
            let x = PathPoly::from_path(x);
            let mut col = Vec::new();
            for (t, y) in targets {
                let prod = if y.is_zero() {
                    PathPoly::zero()
                } else {
                    x.mul_bounded(y, bound).value
                };
                col.extend(nf.coords_of(j, t, &prod));
            }
            col
        })
        .collect()
}

impl FiniteAlgebra {
    pub fn simple_presentation(&self, i: &str) -> Result<SimplePresentation> {
        let p = self.presentation();
        let q = &p.quiver;
        let nf = self.basis();
        let vertex = q
            .vertices()
            .iter()
            .find(|v| &***v == i)
            .cloned()
            .ok_or_else(|| crate::error::Error::UnknownVertex(i.to_string()))?;
        let incoming: Vec<_> = q.arrows_into(i).collect();
        let middle: Vec<(Name, Name)> = incoming.iter().map(|a| (a.name.clone(), a.source.clone())).collect();
        let rels: Vec<_> = p
            .relations
            .iter()
            .filter(|r| r.value.endpoints().is_some_and(|(_, t)| *t == *i))
            .collect();
        let left: Vec<(Name, Name)> = rels
            .iter()
            .map(|r| (r.name.clone(), r.value.endpoints().expect("basic").0))
            .collect();
        let mut left_maps = Vec::new();
        let mut right_maps = Vec::new();
        let mut radical_dims = Vec::new();
        for j in q.vertices() {
            let middle_dim: usize = middle.iter().map(|(_, s)| nf.dimension_between(j, s)).sum();
            let mut right_cols = Vec::new();
            for a in &incoming {
                let b = PathPoly::from_path(Path::arrow(a.to_ref()));
                right_cols.extend(columns_of(self, j, &a.source, &[(vertex.clone(), b)]));
            }
            let pi = nf.dimension_between(j, i);
            right_maps.push(Matrix::from_columns(pi, &right_cols));
            radical_dims.push(pi - usize::from(**j == *i));
            let mut left_cols = Vec::new();
            for (r, (_, s)) in rels.iter().zip(&left) {
                let targets: Vec<(Name, PathPoly)> = incoming
                    .iter()
                    .map(|a| {
                        let d = partial_derivative(DerivativeSide::Right, &r.value, &a.name)
                            .expect("relations have no trivial terms");
                        (a.source.clone(), d)
                    })
                    .collect();
                left_cols.extend(columns_of(self, j, s, &targets));
            }
            left_maps.push(Matrix::from_columns(middle_dim, &left_cols));
        }
        Ok(SimplePresentation {
            vertex,
            left,
            middle,
            left_maps,
            right_maps,
            radical_dims,
        })
    }

    /// Exactness of every vertex complex, plus the relations that are
    /// redundant. Redundant relations are found from the last one backwards,
    /// each dropped before the next is tested, so of two equal relations
    /// the later one is named.
    pub fn relations_minimal(&self) -> Result<MinimalityReport> {
        let q = &self.presentation().quiver;
        let mut non_exact = Vec::new();
        let mut redundant = Vec::new();
        for i in q.vertices() {
            let sp = self.simple_presentation(i)?;
            if !sp.is_exact() {
                non_exact.push(i.clone());
            }
            redundant.extend(self.redundant_at(&sp));
        }
        let order: Vec<&Name> = self.presentation().relations.iter().map(|r| &r.name).collect();
        redundant.sort_by_key(|n| order.iter().position(|m| *m == n));
        Ok(MinimalityReport {
            minimal: non_exact.is_empty() && redundant.is_empty(),
            non_exact_vertices: non_exact,
            redundant,
        })
    }

    /// Relation `r` is redundant when its image generator lies in the span
    /// of the other generators' images plus the radical of the image.
    fn redundant_at(&self, sp: &SimplePresentation) -> Vec<Name> {
        let q = &self.presentation().quiver;
        let nf = self.basis();
        // Column ranges of each relation inside the left map at each vertex.
        let ranges: Vec<Vec<std::ops::Range<usize>>> = q
            .vertices()
            .iter()
            .map(|j| {
                let mut start = 0;
                sp.left
                    .iter()
                    .map(|(_, s)| {
                        let n = nf.dimension_between(j, s);
                        start += n;
                        start - n..start
                    })
                    .collect()
            })
            .collect();
        let vidx = |v: &str| q.vertex_index(v).expect("vertex");
        // Arrow action on the middle term restricted to the image.
        let middle_module = crate::analysis::FDModule::direct_sum(
            q,
            &sp.middle
                .iter()
                .map(|(_, s)| self.projective(s).expect("vertex").clone())
                .collect::<Vec<_>>(),
        );
        let mut active: Vec<bool> = vec![true; sp.left.len()];
        let mut out = Vec::new();
        for k in (0..sp.left.len()).rev() {
            let u = vidx(&sp.left[k].1);
            let generator = sp.left_maps[u].column(ranges[u][k].start);
            let mut span = Echelon::new();
            for (m, range) in ranges[u].iter().enumerate() {
                if m != k && active[m] {
                    for c in range.clone() {
                        span.insert(sparse(&sp.left_maps[u].column(c)));
                    }
                }
            }
            for a in q.arrows_out_of(&sp.left[k].1) {
                let t = vidx(&a.target);
                let act = middle_module.action(&a.name).expect("arrow");
                for c in 0..sp.left_maps[t].cols() {
                    span.insert(sparse(&act.apply(&sp.left_maps[t].column(c))));
                }
            }
            if span.contains(sparse(&generator)) {
                active[k] = false;
                out.push(sp.left[k].0.clone());
            }
        }
        out
    }
}

fn sparse(v: &[Coeff]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub minimal: bool,
    pub non_exact_vertices: Vec<Name>,
    pub redundant: Vec<Name>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{AlgebraPresentation, Relation};
    use crate::quiver::Quiver;

    fn square() -> Quiver {
        Quiver::from_triples(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap()
    }

    fn path(q: &Quiver, p: &[&str]) -> PathPoly {
        PathPoly::from_path(q.path(p).unwrap())
    }

    #[test]
    fn complex_terms_at_sink() {
        let q = square();
        let p = AlgebraPresentation::new(q.clone(), vec![Relation::new("rho", path(&q, &["a", "b"]))]).unwrap();
        let alg = FiniteAlgebra::new(&p, 12).unwrap();
        let sp = alg.simple_presentation("4").unwrap();
        assert_eq!(sp.left.len(), 1);
        assert_eq!(&*sp.left[0].1, "1");
        let sources: Vec<&str> = sp.middle.iter().map(|(_, s)| &**s).collect();
        assert_eq!(sources, vec!["2", "3"]);
        assert!(sp.is_exact());
        let at1 = alg.simple_presentation("1").unwrap();
        assert!(at1.middle.is_empty() && at1.left.is_empty());
        assert!(alg.relations_minimal().unwrap().minimal);
    }

    #[test]
    fn duplicate_relation_is_named() {
        let q = square();
        let ab = path(&q, &["a", "b"]);
        let p = AlgebraPresentation::new(q, vec![Relation::new("r1", ab.clone()), Relation::new("r2", ab)]).unwrap();
        let report = FiniteAlgebra::new(&p, 12).unwrap().relations_minimal().unwrap();
        assert!(!report.minimal);
        assert_eq!(report.redundant, vec![Name::from("r2")]);
    }

    #[test]
    fn relation_in_radical_of_others_is_redundant() {
        let q = Quiver::from_triples(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")],
        )
        .unwrap();
        let p = AlgebraPresentation::new(
            q.clone(),
            vec![
                Relation::new("r1", path(&q, &["a", "b"])),
                Relation::new("r2", path(&q, &["a", "b", "c"])),
            ],
        )
        .unwrap();
        let report = FiniteAlgebra::new(&p, 12).unwrap().relations_minimal().unwrap();
        assert_eq!(report.redundant, vec![Name::from("r2")]);
    }
}
