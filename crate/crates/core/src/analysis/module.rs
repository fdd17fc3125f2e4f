//! Finite-dimensional left modules given by arrow-action matrices.

use super::basis::NormalFormBasis;
use crate::coeff::{self, Coeff};
use crate::linalg::Matrix;
use crate::poly::PathPoly;
use crate::quiver::{Name, Path, Quiver};
use std::collections::BTreeMap;

/// A left module `M = ⊕ e_i M`. An arrow `a: s -> t` acts as a linear map
/// `M_t -> M_s`, stored as a matrix of shape `(dim M_s, dim M_t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDModule {
    quiver: Quiver,
    dims: Vec<usize>,
    actions: Vec<Matrix>,
}

impl FDModule {
    /// Actions are given in the order of the quiver's arrows.
    pub fn new(quiver: &Quiver, dims: Vec<usize>, actions: Vec<Matrix>) -> Self {
        assert_eq!(dims.len(), quiver.vertices().len());
        assert_eq!(actions.len(), quiver.arrows().len());
        let m = FDModule {
            quiver: quiver.clone(),
            dims,
            actions,
        };
        for (a, mat) in m.quiver.arrows().iter().zip(&m.actions) {
            assert_eq!((mat.rows(), mat.cols()), (m.dim(&a.source), m.dim(&a.target)));
        }
        m
    }

    pub fn zero(quiver: &Quiver) -> Self {
        let dims = vec![0; quiver.vertices().len()];
        let actions = quiver.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        FDModule {
            quiver: quiver.clone(),
            dims,
            actions,
        }
    }

    pub fn simple(quiver: &Quiver, vertex: &str) -> Self {
        let dims = quiver.vertices().iter().map(|v| usize::from(&**v == vertex)).collect();
        let mut m = FDModule {
            quiver: quiver.clone(),
            dims,
            actions: Vec::new(),
        };
        m.actions = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(m.dim(&a.source), m.dim(&a.target)))
            .collect();
        m
    }

    /// `P_i = A e_i`, with `(P_i)_j` spanned by normal-form paths `j -> i`.
    pub fn projective(quiver: &Quiver, nf: &NormalFormBasis, vertex: &str) -> Self {
        let dims = quiver
            .vertices()
            .iter()
            .map(|j| nf.dimension_between(j, vertex))
            .collect();
        let actions = quiver
            .arrows()
            .iter()
            .map(|a| {
                let arrow = Path::arrow(a.to_ref());
                let columns: Vec<Vec<Coeff>> = nf
                    .basis(&a.target, vertex)
                    .iter()
                    .map(|x| {
                        let ax = arrow.compose(x).expect("composable");
                        nf.coords(&ax)
                    })
                    .collect();
                Matrix::from_columns(nf.dimension_between(&a.source, vertex), &columns)
            })
            .collect();
        FDModule {
            quiver: quiver.clone(),
            dims,
            actions,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self, vertex: &str) -> usize {
        self.quiver.vertex_index(vertex).map(|i| self.dims[i]).unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimension_vector(&self) -> BTreeMap<Name, usize> {
        self.quiver
            .vertices()
            .iter()
            .cloned()
            .zip(self.dims.iter().copied())
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, arrow: &str) -> Option<&Matrix> {
        self.quiver.arrow_index(arrow).map(|i| &self.actions[i])
    }

    /// Action of a path `M_end -> M_start`: the product of its arrow
    /// matrices in path order.
    pub fn path_action(&self, p: &Path) -> Matrix {
        let mut out = Matrix::identity(self.dim(p.start()));
        for a in p.arrows() {
            let m = self.action(a.name()).expect("arrow of the quiver");
            out = out.mul(m);
        }
        out
    }

    pub fn poly_action(&self, x: &PathPoly) -> Option<Matrix> {
        let (s, t) = x.endpoints()?;
        let mut out = Matrix::zeros(self.dim(&s), self.dim(&t));
        for (p, c) in x.terms() {
            out = out.add(&self.path_action(p).scale(c));
        }
        Some(out)
    }

    /// Whether every relation acts as zero.
    pub fn satisfies(&self, relations: &[PathPoly]) -> bool {
        relations
            .iter()
            .all(|r| self.poly_action(r).is_none_or(|m| m.is_zero()))
    }

    /// The vector-space dual, a left module over the opposite quiver: each
    /// action matrix is transposed.
    pub fn dual(&self) -> FDModule {
        FDModule {
            quiver: self.quiver.opposite(),
            dims: self.dims.clone(),
            actions: self.actions.iter().map(Matrix::transpose).collect(),
        }
    }

    /// `rad M_i`: the span of the images of arrows starting at `i`.
    pub fn radical_at(&self, vertex: &str) -> Vec<Vec<Coeff>> {
        self.quiver
            .arrows_out_of(vertex)
            .flat_map(|a| self.action(&a.name).expect("arrow").columns())
            .collect()
    }

    /// Vectors of `M_i` completing a basis of `rad M_i`: a minimal
    /// generating set at `i`.
    pub fn top_at(&self, vertex: &str) -> Vec<Vec<Coeff>> {
        let n = self.dim(vertex);
        let mut vectors = self.radical_at(vertex);
        let rad = vectors.len();
        for k in 0..n {
            let mut e = vec![coeff::zero(); n];
            e[k] = coeff::one();
            vectors.push(e);
        }
        crate::linalg::independent_subset(n, &vectors)
            .into_iter()
            .filter(|&i| i >= rad)
            .map(|i| vectors[i].clone())
            .collect()
    }

    /// Multiplicity of each simple in the top.
    pub fn top_vector(&self) -> BTreeMap<Name, usize> {
        self.quiver
            .vertices()
            .iter()
            .map(|v| (v.clone(), self.top_at(v).len()))
            .collect()
    }

    /// The submodule spanned vertex-wise by the given bases, which must be
    /// closed under the action.
    pub fn submodule(&self, bases: &[Vec<Vec<Coeff>>]) -> FDModule {
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let basis_matrix = |i: usize| Matrix::from_columns(self.dims[i], &bases[i]);
        let actions = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.actions)
            .map(|(a, m)| {
                let s = self.quiver.vertex_index(&a.source).expect("vertex");
                let t = self.quiver.vertex_index(&a.target).expect("vertex");
                let target_basis = basis_matrix(s);
                let columns: Vec<Vec<Coeff>> = bases[t]
                    .iter()
                    .map(|v| {
                        target_basis
                            .solve(&m.apply(v))
                            .expect("subspaces closed under the action")
                    })
                    .collect();
                Matrix::from_columns(dims[s], &columns)
            })
            .collect();
        FDModule {
            quiver: self.quiver.clone(),
            dims,
            actions,
        }
    }

    /// Direct sum with summands in the given order.
    pub fn direct_sum(quiver: &Quiver, parts: &[FDModule]) -> FDModule {
        let n = quiver.vertices().len();
        let dims: Vec<usize> = (0..n).map(|i| parts.iter().map(|p| p.dims[i]).sum()).collect();
        let actions = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let s = quiver.vertex_index(&a.source).expect("vertex");
                let t = quiver.vertex_index(&a.target).expect("vertex");
                let mut m = Matrix::zeros(dims[s], dims[t]);
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    let block = &p.actions[k];
                    for r in 0..block.rows() {
                        for c in 0..block.cols() {
                            m[(r0 + r, c0 + c)] = block[(r, c)].clone();
                        }
                    }
                    r0 += p.dims[s];
                    c0 += p.dims[t];
                }
                m
            })
            .collect();
        FDModule {
            quiver: quiver.clone(),
            dims,
            actions,
        }
    }
}
