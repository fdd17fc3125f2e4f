//! Interactive mutation sessions with undo.

use crate::analysis::DEFAULT_CAP;
use crate::cut::{
    classify_vertex, cut_from_grading, qp_from_algebra, truncated_jacobian, validate_cut, Cut, VertexClass,
};
use crate::error::{Error, Result};
use crate::format::{emit_dot, emit_qp, Document};
use crate::mutation::{mutate, MutationStep, Side};
use crate::poly::DEFAULT_BOUND;
use crate::potential::GradedQp;
use crate::presentation::Relation;
use crate::quiver::{Name, Quiver};
use crate::tilting::{check_algebraic_cut, AlgebraicCutReport, CutQp};
use serde::Serialize;
use std::collections::BTreeMap;
use std::str::FromStr;

/// A QP and its cut; the cut is lost after a step at a non-strict vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SessionState {
    pub qp: GradedQp,
    pub cut: Option<Cut>,
}

impl SessionState {
    pub fn from_document(doc: Document) -> Result<SessionState> {
        match doc {
            Document::Qp(d) => {
                let cut = d.cut.clone().or_else(|| cut_from_grading(&d.qp).ok());
                Ok(SessionState { qp: d.qp, cut })
            }
            Document::Algebra(p) => {
                let (qp, cut) = qp_from_algebra(&p)?;
                Ok(SessionState { qp, cut: Some(cut) })
            }
        }
    }

    pub fn classify(&self, k: &str) -> Result<Option<VertexClass>> {
        match &self.cut {
            Some(c) => classify_vertex(&self.qp, c, k).map(Some),
            None => {
                if self.qp.quiver.has_vertex(k) {
                    Ok(None)
                } else {
                    Err(Error::UnknownVertex(k.to_string()))
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SessionOptions {
    pub bound: usize,
    pub cap: usize,
}

impl Default for SessionOptions {
    fn default() -> Self {
        SessionOptions {
            bound: DEFAULT_BOUND,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Qp,
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "qp" => Ok(ExportFormat::Qp),
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(format!("unknown export format `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    current: SessionState,
    history: Vec<(MutationStep, SessionState)>,
    options: SessionOptions,
}

/// What the service reports about a state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateView {
    pub quiver: Quiver,
    pub potential: String,
    pub cut: Option<Cut>,
    pub cut_valid: bool,
    pub classification: BTreeMap<Name, Option<VertexClass>>,
    pub relations: Option<Vec<Relation>>,
    pub report: Option<AlgebraicCutReport>,
    pub history: Vec<String>,
}

impl Session {
    pub fn new(doc: Document, options: SessionOptions) -> Result<Session> {
        Ok(Session {
            current: SessionState::from_document(doc)?,
            history: Vec::new(),
            options,
        })
    }

    pub fn current(&self) -> &SessionState {
        &self.current
    }

    pub fn history(&self) -> impl Iterator<Item = &MutationStep> {
        self.history.iter().map(|(s, _)| s)
    }

    pub fn history_len(&self) -> usize {
        self.history.len()
    }

    /// Applies a left step at a strict source or a right step at a strict
    /// sink. With `allow_nonstrict` any other step is applied as an ungraded
    /// mutation, and the state loses its cut.
    pub fn apply_step(&mut self, step: &MutationStep, allow_nonstrict: bool) -> Result<&SessionState> {
        let class = self.current.classify(&step.vertex)?;
        let legal = matches!(
            (step.side, class),
            (Side::Left, Some(VertexClass::StrictSource)) | (Side::Right, Some(VertexClass::StrictSink))
        );
        let next = if legal {
            let qp = mutate(&self.current.qp, step, self.options.bound)?;
            let cut = cut_from_grading(&qp)?;
            SessionState { qp, cut: Some(cut) }
        } else if allow_nonstrict {
            let ungraded = MutationStep::ungraded(&step.vertex);
            let qp = mutate(&self.current.qp, &ungraded, self.options.bound)?;
            SessionState { qp, cut: None }
        } else {
            return Err(Error::IllegalStep {
                index: self.history.len(),
                step: step.to_string(),
                classification: class.map_or("without a cut".to_string(), |c| c.to_string()),
            });
        };
        let prior = std::mem::replace(&mut self.current, next);
        self.history.push((step.clone(), prior));
        Ok(&self.current)
    }

    /// Restores the state before the last step; `None` with no history.
    pub fn undo(&mut self) -> Option<&SessionState> {
        let (_, prior) = self.history.pop()?;
        self.current = prior;
        Some(&self.current)
    }

    pub fn view(&self) -> StateView {
        let s = &self.current;
        let classification =
            s.qp.quiver
                .vertices()
                .iter()
                .map(|v| (v.clone(), s.classify(v).ok().flatten()))
                .collect();
        let (cut_valid, relations, report) = match &s.cut {
            Some(c) => (
                validate_cut(&s.qp, c).valid,
                truncated_jacobian(&s.qp, c).ok().map(|p| p.relations),
                Some(check_algebraic_cut(&s.qp, c, self.options.bound, self.options.cap)),
            ),
            None => (false, None, None),
        };
        StateView {
            quiver: s.qp.quiver.clone(),
            potential: s.qp.potential.as_poly().to_string(),
            cut: s.cut.clone(),
            cut_valid,
            classification,
            relations,
            report,
            history: self.history().map(ToString::to_string).collect(),
        }
    }

    pub fn export(&self, format: ExportFormat) -> String {
        let s = &self.current;
        match format {
            ExportFormat::Qp => emit_qp(&s.qp, s.cut.as_ref()),
            ExportFormat::Dot => emit_dot(&s.qp.quiver, s.cut.as_ref()),
            ExportFormat::Json => serde_json::to_string_pretty(s).expect("state serializes"),
        }
    }

    pub fn as_cut_qp(&self) -> Option<CutQp> {
        let s = &self.current;
        s.cut.clone().map(|cut| CutQp { qp: s.qp.clone(), cut })
    }
}
