//! Cuts, truncated Jacobian algebras and the QP of an algebra.

use crate::error::{Error, Result};
use crate::poly::PathPoly;
use crate::potential::{GradedQp, Potential};
use crate::presentation::{AlgebraPresentation, Relation};
use crate::quiver::{Arrow, Name, Path, Quiver};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A set of arrows meeting every cycle of the potential exactly once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cut {
    arrows: BTreeSet<Name>,
}

impl Cut {
    pub fn new<I, S>(arrows: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Cut {
            arrows: arrows.into_iter().map(|s| Name::from(s.as_ref())).collect(),
        }
    }

    pub fn empty() -> Self {
        Cut::default()
    }

    pub fn contains(&self, arrow: &str) -> bool {
        self.arrows.contains(arrow)
    }

    pub fn arrows(&self) -> impl Iterator<Item = &Name> {
        self.arrows.iter()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.arrows.iter().map(|n| &**n).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermCount {
    pub term: String,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutReport {
    pub valid: bool,
    pub unknown_arrows: Vec<Name>,
    pub terms: Vec<TermCount>,
}

impl CutReport {
    pub fn offending(&self) -> impl Iterator<Item = &TermCount> {
        self.terms.iter().filter(|t| t.count != 1)
    }
}

pub fn validate_cut(g: &GradedQp, c: &Cut) -> CutReport {
    let unknown_arrows: Vec<Name> = c.arrows().filter(|a| g.quiver.arrow(a).is_none()).cloned().collect();
    let terms: Vec<TermCount> = g
        .potential
        .terms()
        .map(|(p, _)| TermCount {
            term: p.to_string(),
            count: p.names().filter(|n| c.contains(n)).count(),
        })
        .collect();
    CutReport {
        valid: unknown_arrows.is_empty() && terms.iter().all(|t| t.count == 1),
        unknown_arrows,
        terms,
    }
}

fn require_valid(g: &GradedQp, c: &Cut) -> Result<()> {
    let report = validate_cut(g, c);
    if report.valid {
        return Ok(());
    }
    if let Some(a) = report.unknown_arrows.first() {
        return Err(Error::InvalidCut(format!("`{a}` is not an arrow of the quiver")));
    }
    let bad: Vec<String> = report
        .offending()
        .map(|t| format!("`{}` meets the cut {} times", t.term, t.count))
        .collect();
    Err(Error::InvalidCut(bad.join(", ")))
}

/// Degree 1 on the cut, 0 elsewhere.
pub fn grading_from_cut(g: &GradedQp, c: &Cut) -> Result<GradedQp> {
    require_valid(g, c)?;
    let quiver = g.quiver.with_degrees(|a| i64::from(c.contains(&a.name)));
    let potential = reattach(&quiver, g.potential.as_poly())?;
    Ok(GradedQp {
        quiver,
        potential,
        declared_degree: Some(1),
    })
}

/// Rebuilds a potential on a quiver with the same arrows.
fn reattach(quiver: &Quiver, w: &PathPoly) -> Result<Potential> {
    let w = w.map_terms(|p| {
        let refs = p
            .names()
            .map(|n| quiver.arrow(n).map(Arrow::to_ref))
            .collect::<Option<Vec<_>>>()?;
        Path::from_arrows(refs).ok()
    });
    Potential::canonicalize(&w)
}

/// The arrows of degree 1, provided all degrees are 0 or 1 and the
/// potential is homogeneous of degree 1.
pub fn cut_from_grading(g: &GradedQp) -> Result<Cut> {
    for a in g.quiver.arrows() {
        if a.degree != 0 && a.degree != 1 {
            return Err(Error::NoCut {
                arrow: a.name.to_string(),
                degree: a.degree,
            });
        }
    }
    match g.homogeneity_degree() {
        Ok(1) | Err(Error::ZeroPotential) => {}
        Ok(l) => {
            return Err(Error::InvalidCut(format!(
                "potential has degree {l}, a cut needs degree 1"
            )))
        }
        Err(e) => return Err(e),
    }
    Ok(Cut::new(
        g.quiver.arrows().iter().filter(|a| a.degree == 1).map(|a| &*a.name),
    ))
}

/// `KQ_C / <∂_c W : c in C>`. Each relation is named after its cut arrow,
/// without a leading `rho_`; zero derivatives are dropped.
pub fn truncated_jacobian(g: &GradedQp, c: &Cut) -> Result<AlgebraPresentation> {
    require_valid(g, c)?;
    let quiver = g.quiver.retain_arrows(|a| !c.contains(&a.name)).with_degrees(|_| 0);
    let mut relations = Vec::new();
    for a in g.quiver.arrows().iter().filter(|a| c.contains(&a.name)) {
        let d = g.potential.cyclic_derivative(&a.name);
        let d = d.map_terms(|p| {
            let refs = p
                .names()
                .map(|n| quiver.arrow(n).map(Arrow::to_ref))
                .collect::<Option<Vec<_>>>()?;
            Path::from_arrows(refs).ok()
        });
        let name = a.name.strip_prefix("rho_").unwrap_or(&a.name);
        relations.push(Relation::new(name, d));
    }
    AlgebraPresentation::new(quiver, relations)
}

/// Name of the arrow attached to a relation.
pub fn relation_arrow_name(relation: &str) -> String {
    if relation.starts_with("rho") {
        relation.to_string()
    } else {
        format!("rho_{relation}")
    }
}

/// `(Q_Λ, W_Λ, C_Λ)`: one degree-1 arrow `ρ_r: e(r) -> s(r)` per relation,
/// `W_Λ = Σ ρ_r r` and the cut of all `ρ_r`.
pub fn qp_from_algebra(p: &AlgebraPresentation) -> Result<(GradedQp, Cut)> {
    let mut arrows: Vec<Arrow> = p.quiver.arrows().iter().map(|a| a.clone().with_degree(0)).collect();
    let mut w = PathPoly::zero();
    let mut cut = Vec::new();
    for r in &p.relations {
        let (s, t) = r
            .value
            .endpoints()
            .ok_or_else(|| Error::NonBasicRelation(r.name.to_string()))?;
        let name = relation_arrow_name(&r.name);
        if arrows.iter().any(|a| *a.name == *name) {
            return Err(Error::NameCollision(name));
        }
        let rho = Arrow::new(&name, &t, &s).with_degree(1);
        let rho_path = PathPoly::arrow(rho.to_ref());
        w = &w + &rho_path.mul_bounded(&r.value, usize::MAX).value;
        arrows.push(rho);
        cut.push(name);
    }
    let quiver = Quiver::new(p.quiver.vertices().to_vec(), arrows)?;
    let g = GradedQp {
        quiver,
        potential: Potential::canonicalize(&w)?,
        declared_degree: Some(1),
    };
    Ok((g, Cut::new(cut)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexClass {
    StrictSource,
    StrictSink,
    Neither,
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexClass::StrictSource => "strict_source",
            VertexClass::StrictSink => "strict_sink",
            VertexClass::Neither => "neither",
        })
    }
}

/// Strict source: every arrow ending at `k` is cut and none starting there.
/// Strict sink: the reverse.
pub fn classify_vertex(g: &GradedQp, c: &Cut, k: &str) -> Result<VertexClass> {
    if !g.quiver.has_vertex(k) {
        return Err(Error::UnknownVertex(k.to_string()));
    }
    let into_cut = |want: bool| g.quiver.arrows_into(k).all(|a| c.contains(&a.name) == want);
    let out_cut = |want: bool| g.quiver.arrows_out_of(k).all(|a| c.contains(&a.name) == want);
    if into_cut(true) && out_cut(false) {
        return Ok(VertexClass::StrictSource);
    }
    let sink = into_cut(false) && out_cut(true);
    Ok(if sink {
        VertexClass::StrictSink
    } else {
        VertexClass::Neither
    })
}
