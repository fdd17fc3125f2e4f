//! Graded quivers with potential: mutation, reduction, truncated Jacobian
//! algebras and APR tilting presentations.

pub mod analysis;
pub mod coeff;
pub mod cut;
pub mod error;
pub mod examples;
pub mod format;
pub mod linalg;
pub mod mutation;
pub mod poly;
pub mod potential;
pub mod presentation;
pub mod quiver;
pub mod session;
pub mod tilting;

pub use analysis::{Dimension, FDModule, FiniteAlgebra, MinimalityReport, NormalFormBasis, Resolution, DEFAULT_CAP};
pub use coeff::Coeff;
pub use cut::{
    classify_vertex, cut_from_grading, grading_from_cut, qp_from_algebra, truncated_jacobian, validate_cut, Cut,
    CutReport, VertexClass,
};
pub use error::{Error, Result};
pub use format::{emit_algebra, emit_document, emit_dot, emit_qp, parse_document, Document, QpDocument};
pub use mutation::{
    canonical_renaming, graded_premutate, mutate, mutate_detailed, premutate, split, MutationOutcome, MutationStep,
    Side, SplitResult,
};
pub use poly::{Bounded, PathPoly, DEFAULT_BOUND};
pub use potential::{partial_derivative, DerivativeSide, GradedQp, Potential};
pub use presentation::{AlgebraPresentation, Relation};
pub use quiver::{Arrow, ArrowRef, Name, Path, Quiver, QuiverReport};
pub use session::{ExportFormat, Session, SessionOptions, SessionState, StateView};
pub use tilting::{
    apr_tilt, check_algebraic_cut, complete_3_preprojective, jacobian_dimension, mutation_chain, AlgebraicCutReport,
    ChainOptions, CutQp, MutationTrace, TiltOptions,
};
