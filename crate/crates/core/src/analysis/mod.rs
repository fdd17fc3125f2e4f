//! Finite-dimensional algebras given by quivers with relations.

pub mod algebra;
pub mod basis;
pub mod complex;
pub mod module;

pub use algebra::{Dimension, FiniteAlgebra, Resolution, DEFAULT_CAP};
pub use basis::NormalFormBasis;
pub use complex::{MinimalityReport, SimplePresentation};
pub use module::FDModule;
