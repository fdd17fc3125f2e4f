//! Minimal projective resolutions, global and injective dimensions.

use super::basis::NormalFormBasis;
use super::module::FDModule;
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::presentation::AlgebraPresentation;
use crate::quiver::Name;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

pub const DEFAULT_CAP: usize = 4;

/// A homological dimension, or the statement that it exceeds a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dimension {
    Finite(usize),
    Exceeds(usize),
}

impl Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::Finite(n) => Some(n),
            Dimension::Exceeds(_) => None,
        }
    }

    /// Whether the dimension is known to be at most `n`.
    pub fn at_most(self, n: usize) -> bool {
        matches!(self, Dimension::Finite(d) if d <= n)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Exceeds(c) => write!(f, ">{c}"),
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dimension::Finite(n) => s.serialize_u64(*n as u64),
            Dimension::Exceeds(_) => s.serialize_str(&self.to_string()),
        }
    }
}

/// A minimal projective resolution `... -> P_1 -> P_0 -> M`, possibly cut
/// off at the cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution {
    /// Multiplicity of each indecomposable projective in `P_n`.
    pub terms: Vec<BTreeMap<Name, usize>>,
    /// Dimension vectors of the syzygies `Ω^1 M, Ω^2 M, ...`.
    pub syzygies: Vec<BTreeMap<Name, usize>>,
    pub complete: bool,
    pub cap: usize,
}

impl Resolution {
    pub fn projective_dimension(&self) -> Dimension {
        if self.complete {
            Dimension::Finite(self.terms.len().saturating_sub(1))
        } else {
            Dimension::Exceeds(self.cap)
        }
    }

    pub fn multiplicity(&self, n: usize, vertex: &str) -> usize {
        self.terms.get(n).and_then(|t| t.get(vertex)).copied().unwrap_or(0)
    }
}

/// A presentation together with its normal-form basis and projectives,
/// known to be finite-dimensional at the bound.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    presentation: AlgebraPresentation,
    basis: NormalFormBasis,
    projectives: Vec<FDModule>,
}

impl FiniteAlgebra {
    pub fn new(presentation: &AlgebraPresentation, bound: usize) -> Result<Self> {
        let basis = NormalFormBasis::compute(&presentation.quiver, &presentation.relation_values(), bound);
        if !basis.is_stabilized() {
            return Err(Error::NotFiniteDimensional(bound));
        }
        let q = &presentation.quiver;
        let projectives = q
            .vertices()
            .iter()
            .map(|v| FDModule::projective(q, &basis, v))
            .collect();
        Ok(FiniteAlgebra {
            presentation: presentation.clone(),
            basis,
            projectives,
        })
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn basis(&self) -> &NormalFormBasis {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    pub fn projective(&self, vertex: &str) -> Result<&FDModule> {
        let i = self
            .presentation
            .quiver
            .vertex_index(vertex)
            .ok_or_else(|| Error::UnknownVertex(vertex.to_string()))?;
        Ok(&self.projectives[i])
    }

    pub fn simple(&self, vertex: &str) -> Result<FDModule> {
        if !self.presentation.quiver.has_vertex(vertex) {
            return Err(Error::UnknownVertex(vertex.to_string()));
        }
        Ok(FDModule::simple(&self.presentation.quiver, vertex))
    }

    /// Projective cover `P -> M` returned as the summand vertices of `P`,
    /// `P` itself and the kernel.
    pub fn projective_cover(&self, m: &FDModule) -> (Vec<Name>, FDModule, FDModule) {
        let q = &self.presentation.quiver;
        let mut generators: Vec<(Name, Vec<Coeff>)> = Vec::new();
        for v in q.vertices() {
            for g in m.top_at(v) {
                generators.push((v.clone(), g));
            }
        }
        let parts: Vec<FDModule> = generators
            .iter()
            .map(|(v, _)| self.projective(v).expect("vertex").clone())
            .collect();
        let cover = FDModule::direct_sum(q, &parts);
        let kernels: Vec<Vec<Vec<Coeff>>> = q
            .vertices()
            .iter()
            .map(|s| {
                let mut columns = Vec::new();
                for (j, g) in &generators {
                    for x in self.basis.basis(s, j) {
                        columns.push(m.path_action(&x).apply(g));
                    }
                }
                Matrix::from_columns(m.dim(s), &columns).kernel()
            })
            .collect();
        let kernel = cover.submodule(&kernels);
        (generators.into_iter().map(|(v, _)| v).collect(), cover, kernel)
    }

    pub fn resolution(&self, m: &FDModule, cap: usize) -> Resolution {
        let mut terms = Vec::new();
        let mut syzygies = Vec::new();
        let mut current = m.clone();
        let mut complete = true;
        while !current.is_zero() {
            if terms.len() > cap {
                complete = false;
                break;
            }
            let (gens, _, kernel) = self.projective_cover(&current);
            let mut term: BTreeMap<Name, usize> = BTreeMap::new();
            for g in gens {
                *term.entry(g).or_default() += 1;
            }
            terms.push(term);
            syzygies.push(kernel.dimension_vector());
            current = kernel;
        }
        Resolution {
            terms,
            syzygies,
            complete,
            cap,
        }
    }

    pub fn simple_resolution(&self, vertex: &str, cap: usize) -> Result<Resolution> {
        Ok(self.resolution(&self.simple(vertex)?, cap))
    }

    /// Largest projective dimension of a simple module.
    pub fn global_dimension(&self, cap: usize) -> Dimension {
        let mut best = Dimension::Finite(0);
        for v in self.presentation.quiver.vertices() {
            let d = self.resolution(&FDModule::simple(&self.presentation.quiver, v), cap);
            best = best.max(d.projective_dimension());
        }
        best
    }

    pub fn opposite(&self) -> Result<FiniteAlgebra> {
        FiniteAlgebra::new(&self.presentation.opposite(), self.basis.bound())
    }

    /// `id P_k`, the projective dimension of `D(P_k)` over the opposite
    /// algebra.
    pub fn injective_dimension_of_projective(&self, k: &str, cap: usize) -> Result<Dimension> {
        let dual = self.projective(k)?.dual();
        let op = self.opposite()?;
        Ok(op.resolution(&dual, cap).projective_dimension())
    }

    /// `id P_k` read off the minimal resolutions of the simples, valid only
    /// when `P_k` is simple: then `Ext^n(S_i, P_k)` is the multiplicity of
    /// `P_k` in the `n`-th term. `None` when `P_k` is not simple.
    pub fn injective_dimension_from_simples(&self, k: &str, cap: usize) -> Result<Option<Dimension>> {
        if self.projective(k)?.total_dim() != 1 {
            return Ok(None);
        }
        let mut best = 0;
        for v in self.presentation.quiver.vertices() {
            let r = self.simple_resolution(v, cap + 1)?;
            for n in 0..r.terms.len() {
                if r.multiplicity(n, k) > 0 {
                    best = best.max(n);
                }
            }
        }
        Ok(Some(if best > cap {
            Dimension::Exceeds(cap)
        } else {
            Dimension::Finite(best)
        }))
    }

    pub fn is_projective_injective(&self, k: &str) -> Result<bool> {
        Ok(self.injective_dimension_of_projective(k, 0)? == Dimension::Finite(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PathPoly;
    use crate::presentation::Relation;
    use crate::quiver::Quiver;

    fn square(rel: &[&str]) -> AlgebraPresentation {
        let q = Quiver::from_triples(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let r = PathPoly::from_path(q.path(rel).unwrap());
        AlgebraPresentation::new(q, vec![Relation::new("rho", r)]).unwrap()
    }

    #[test]
    fn resolution_of_simple_at_sink() {
        let a = FiniteAlgebra::new(&square(&["a", "b"]), 12).unwrap();
        let r = a.simple_resolution("4", 4).unwrap();
        assert!(r.complete);
        assert_eq!(r.terms.len(), 3);
        assert_eq!(r.multiplicity(1, "2"), 1);
        assert_eq!(r.multiplicity(1, "3"), 1);
        assert_eq!(r.multiplicity(2, "1"), 1);
        assert_eq!(a.global_dimension(4), Dimension::Finite(2));
    }

    #[test]
    fn injective_dimension_routes_agree() {
        let a = FiniteAlgebra::new(&square(&["a", "b"]), 12).unwrap();
        let direct = a.injective_dimension_of_projective("1", 4).unwrap();
        let simples = a.injective_dimension_from_simples("1", 4).unwrap();
        assert_eq!(Some(direct), simples);
        assert!(direct.at_most(2));
        assert!(!a.is_projective_injective("1").unwrap());
    }

    #[test]
    fn dimension_display() {
        assert_eq!(Dimension::Exceeds(4).to_string(), ">4");
        assert_eq!(serde_json::to_string(&Dimension::Finite(2)).unwrap(), "2");
    }
}
