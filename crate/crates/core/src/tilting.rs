//! APR tilting through left mutation, mutation chains along strict vertices
//! and the algebraic-cut check.

use crate::analysis::{Dimension, FiniteAlgebra, NormalFormBasis, DEFAULT_CAP};
use crate::cut::{
    classify_vertex, cut_from_grading, grading_from_cut, qp_from_algebra, truncated_jacobian, validate_cut, Cut,
    VertexClass,
};
use crate::error::{Error, Result};
use crate::mutation::{mutate, MutationStep, Side};
use crate::poly::{PathPoly, DEFAULT_BOUND};
use crate::potential::{GradedQp, Potential};
use crate::presentation::{AlgebraPresentation, Relation};
use crate::quiver::Quiver;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TiltOptions {
    pub bound: usize,
    pub cap: usize,
    pub skip_hypothesis_check: bool,
}

impl Default for TiltOptions {
    fn default() -> Self {
        TiltOptions {
            bound: DEFAULT_BOUND,
            cap: DEFAULT_CAP,
            skip_hypothesis_check: false,
        }
    }
}

fn monic_relations(p: AlgebraPresentation) -> AlgebraPresentation {
    let relations = p
        .relations
        .into_iter()
        .map(|r| Relation {
            value: r.value.monic(),
            ..r
        })
        .collect();
    AlgebraPresentation { relations, ..p }
}

/// The endomorphism algebra of the APR tilting module at the source `k`,
/// computed as the truncated Jacobian algebra of the left mutation of
/// `(Q_Λ, W_Λ, C_Λ)` at `k`.
pub fn apr_tilt(p: &AlgebraPresentation, k: &str, opts: TiltOptions) -> Result<AlgebraPresentation> {
    let q = &p.quiver;
    if !q.has_vertex(k) {
        return Err(Error::UnknownVertex(k.to_string()));
    }
    if !q.is_source(k) {
        return Err(Error::NotSource(k.to_string()));
    }
    let alg = FiniteAlgebra::new(p, opts.bound)?;
    if alg.is_projective_injective(k)? {
        return Err(Error::NotApr(k.to_string()));
    }
    if !opts.skip_hypothesis_check {
        let id = alg.injective_dimension_of_projective(k, opts.cap)?;
        if !id.at_most(2) {
            return Err(Error::HypothesisViolation {
                vertex: k.to_string(),
                id: id.to_string(),
            });
        }
    }
    let (g, _) = qp_from_algebra(p)?;
    let mutated = mutate(&g, &MutationStep::left(k), opts.bound)?;
    let cut = cut_from_grading(&mutated)?;
    Ok(monic_relations(truncated_jacobian(&mutated, &cut)?))
}

/// A graded QP with the cut read off from its degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutQp {
    pub qp: GradedQp,
    pub cut: Cut,
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationTrace {
    pub start: CutQp,
    pub start_presentation: AlgebraPresentation,
    pub steps: Vec<MutationStep>,
    pub states: Vec<CutQp>,
    /// Truncated Jacobian algebra of each state.
    pub presentations: Vec<AlgebraPresentation>,
}

impl MutationTrace {
    pub fn last(&self) -> &CutQp {
        self.states.last().unwrap_or(&self.start)
    }

    pub fn last_presentation(&self) -> &AlgebraPresentation {
        self.presentations.last().unwrap_or(&self.start_presentation)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainOptions {
    pub bound: usize,
    /// Apply steps at vertices that are not strict sources (left) or strict
    /// sinks (right) instead of failing.
    pub allow_nonstrict: bool,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            bound: DEFAULT_BOUND,
            allow_nonstrict: false,
        }
    }
}

/// Whether `step` may be applied: left steps need a strict source, right
/// steps a strict sink; ungraded steps never qualify.
pub fn step_legality(state: &CutQp, step: &MutationStep) -> Result<(bool, VertexClass)> {
    let class = classify_vertex(&state.qp, &state.cut, &step.vertex)?;
    let ok = matches!(
        (step.side, class),
        (Side::Left, VertexClass::StrictSource) | (Side::Right, VertexClass::StrictSink)
    );
    Ok((ok, class))
}

pub fn apply_step(state: &CutQp, step: &MutationStep, bound: usize) -> Result<CutQp> {
    let qp = mutate(&state.qp, step, bound)?;
    let cut = cut_from_grading(&qp)?;
    Ok(CutQp { qp, cut })
}

pub fn mutation_chain(g: &GradedQp, c: &Cut, steps: &[MutationStep], opts: ChainOptions) -> Result<MutationTrace> {
    let start = CutQp {
        qp: grading_from_cut(g, c)?,
        cut: c.clone(),
    };
    let start_presentation = truncated_jacobian(&start.qp, &start.cut)?;
    let mut states: Vec<CutQp> = Vec::new();
    let mut presentations = Vec::new();
    for (index, step) in steps.iter().enumerate() {
        let current = states.last().unwrap_or(&start);
        let (ok, class) = step_legality(current, step)?;
        if !ok && !opts.allow_nonstrict {
            return Err(Error::IllegalStep {
                index,
                step: step.to_string(),
                classification: class.to_string(),
            });
        }
        let next = apply_step(current, step, opts.bound)?;
        presentations.push(truncated_jacobian(&next.qp, &next.cut)?);
        states.push(next);
    }
    Ok(MutationTrace {
        start,
        start_presentation,
        steps: steps.to_vec(),
        states,
        presentations,
    })
}

/// `(Q_Λ, W_Λ)`, presenting the complete 3-preprojective algebra of an
/// algebra of global dimension at most 2.
pub fn complete_3_preprojective(p: &AlgebraPresentation, bound: usize, cap: usize) -> Result<(Quiver, Potential)> {
    let gldim = FiniteAlgebra::new(p, bound)?.global_dimension(cap);
    if !gldim.at_most(2) {
        return Err(Error::GlobalDimension(gldim.to_string()));
    }
    let (g, _) = qp_from_algebra(p)?;
    Ok((g.quiver, g.potential))
}

/// Dimension of `KQ / <∂_a W>` at the bound, with the stabilization flag.
pub fn jacobian_dimension(q: &Quiver, w: &Potential, bound: usize) -> (usize, bool) {
    let relations: Vec<PathPoly> = q
        .arrows()
        .iter()
        .map(|a| w.cyclic_derivative(&a.name))
        .filter(|d| !d.is_zero())
        .collect();
    let nf = NormalFormBasis::compute(q, &relations, bound);
    (nf.dimension(), nf.is_stabilized())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraicCutReport {
    pub cut_valid: bool,
    pub finite_dimensional: bool,
    pub dimension: Option<usize>,
    pub global_dimension: Option<Dimension>,
    pub relations_minimal: Option<bool>,
    pub reduced: bool,
    /// Finite dimensional, global dimension at most 2 and minimal relations.
    pub algebraic: bool,
    /// Algebraic and the potential has no 2-cycles.
    pub in_w1: bool,
}

pub fn check_algebraic_cut(g: &GradedQp, c: &Cut, bound: usize, cap: usize) -> AlgebraicCutReport {
    let reduced = g.potential.is_reduced();
    let mut report = AlgebraicCutReport {
        cut_valid: validate_cut(g, c).valid,
        finite_dimensional: false,
        dimension: None,
        global_dimension: None,
        relations_minimal: None,
        reduced,
        algebraic: false,
        in_w1: false,
    };
    if !report.cut_valid {
        return report;
    }
    let Ok(p) = truncated_jacobian(g, c) else {
        return report;
    };
    let Ok(alg) = FiniteAlgebra::new(&p, bound) else {
        return report;
    };
    report.finite_dimensional = true;
    report.dimension = Some(alg.dimension());
    let gldim = alg.global_dimension(cap);
    report.global_dimension = Some(gldim);
    let minimal = alg.relations_minimal().map(|r| r.minimal).unwrap_or(false);
    report.relations_minimal = Some(minimal);
    report.algebraic = gldim.at_most(2) && minimal;
    report.in_w1 = report.algebraic && reduced;
    report
}
