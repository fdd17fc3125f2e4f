//! Potentials up to cyclic equivalence, and derivatives.

use crate::error::{Error, Result};
use crate::poly::PathPoly;
use crate::quiver::{Path, Quiver};
use serde::Serialize;
use std::fmt;

/// A linear combination of cycles of length at least 2, each stored as its
/// lexicographically minimal rotation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Potential(PathPoly);

/// Lexicographically least rotation of a cycle; the first one wins on ties.
pub fn minimal_rotation(p: &Path) -> Path {
    let n = p.len();
    let names: Vec<&str> = p.names().collect();
    let mut best = 0;
    for i in 1..n {
        let cand = (0..n).map(|k| names[(i + k) % n]);
        let cur = (0..n).map(|k| names[(best + k) % n]);
        if cand.lt(cur) {
            best = i;
        }
    }
    if best == 0 {
        p.clone()
    } else {
        p.rotate(best)
    }
}

impl Potential {
    pub fn zero() -> Self {
        Potential(PathPoly::zero())
    }

    /// Rotates every cycle to canonical form and merges equal classes.
    pub fn canonicalize(w: &PathPoly) -> Result<Potential> {
        let mut out = PathPoly::zero();
        for (p, c) in w.terms() {
            if !p.is_cycle() {
                return Err(Error::Potential(format!("term `{p}` is not a cycle")));
            }
            if p.len() < 2 {
                return Err(Error::Potential(format!("term `{p}` has length < 2")));
            }
            out.add_term(c.clone(), minimal_rotation(p));
        }
        Ok(Potential(out))
    }

    pub fn as_poly(&self) -> &PathPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Path, &crate::coeff::Coeff)> {
        self.0.terms()
    }

    /// Cyclic derivative with respect to the arrow `a`: for each occurrence
    /// of `a` in a cycle, the rest of the cycle read from just after it.
    pub fn cyclic_derivative(&self, a: &str) -> PathPoly {
        let mut out = PathPoly::zero();
        for (p, c) in self.0.terms() {
            for (i, x) in p.names().enumerate() {
                if x == a {
                    let rotated = p.rotate(i);
                    out.add_term(c.clone(), rotated.slice(1, rotated.len()));
                }
            }
        }
        out
    }

    /// Like [`Potential::cyclic_derivative`] but checks `a` is an arrow of `q`.
    pub fn derivative_in(&self, q: &Quiver, a: &str) -> Result<PathPoly> {
        q.get(a)?;
        Ok(self.cyclic_derivative(a))
    }

    /// Terms of length exactly 2.
    pub fn quadratic_terms(&self) -> impl Iterator<Item = (&Path, &crate::coeff::Coeff)> {
        self.0.terms().filter(|(p, _)| p.len() == 2)
    }

    pub fn is_reduced(&self) -> bool {
        self.quadratic_terms().next().is_none()
    }

    pub fn max_len(&self) -> usize {
        self.0.max_len()
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivativeSide {
    Left,
    Right,
}

/// Right derivative strips a final `a`, left derivative strips an initial `a`.
pub fn partial_derivative(side: DerivativeSide, x: &PathPoly, a: &str) -> Result<PathPoly> {
    let mut out = PathPoly::zero();
    for (p, c) in x.terms() {
        if p.is_empty() {
            return Err(Error::Potential(format!(
                "derivative of trivial path `{p}` is undefined"
            )));
        }
        let n = p.len();
        let hit = match side {
            DerivativeSide::Right => (&**p.arrows()[n - 1].name() == a).then(|| p.slice(0, n - 1)),
            DerivativeSide::Left => (&**p.arrows()[0].name() == a).then(|| p.slice(1, n)),
        };
        if let Some(rest) = hit {
            out.add_term(c.clone(), rest);
        }
    }
    Ok(out)
}

/// A quiver with arrow degrees and a potential on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedQp {
    pub quiver: Quiver,
    pub potential: Potential,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared_degree: Option<i64>,
}

impl GradedQp {
    /// Checks that every arrow in the potential belongs to the quiver.
    pub fn new(quiver: Quiver, potential: Potential) -> Result<GradedQp> {
        for (p, _) in potential.terms() {
            for a in p.arrows() {
                let arrow = quiver.get(a.name())?;
                if arrow.source != *a.source() || arrow.target != *a.target() {
                    return Err(Error::Potential(format!(
                        "arrow `{}` in potential does not match the quiver",
                        a.name()
                    )));
                }
            }
        }
        Ok(GradedQp {
            quiver,
            potential,
            declared_degree: None,
        })
    }

    pub fn declare_degree(mut self, l: i64) -> Result<GradedQp> {
        if !self.potential.is_zero() {
            let actual = self.homogeneity_degree()?;
            if actual != l {
                return Err(Error::Inhomogeneous(format!(
                    "declared degree {l}, potential has degree {actual}"
                )));
            }
        }
        self.declared_degree = Some(l);
        Ok(self)
    }

    pub fn term_degree(&self, p: &Path) -> i64 {
        p.degree(|n| self.quiver.degree(n))
    }

    /// The common degree of all potential terms.
    pub fn homogeneity_degree(&self) -> Result<i64> {
        let mut terms = self.potential.terms();
        let Some((first, _)) = terms.next() else {
            return Err(Error::ZeroPotential);
        };
        let l = self.term_degree(first);
        let offending: Vec<String> = self
            .potential
            .terms()
            .filter(|(p, _)| self.term_degree(p) != l)
            .map(|(p, _)| format!("`{p}` has degree {}", self.term_degree(p)))
            .collect();
        if offending.is_empty() {
            Ok(l)
        } else {
            Err(Error::Inhomogeneous(format!(
                "first term `{first}` has degree {l}; {}",
                offending.join(", ")
            )))
        }
    }

    /// Degree used by graded mutation: declared, else computed, else 1 for
    /// a zero potential.
    pub fn grading_degree(&self) -> Result<i64> {
        if let Some(l) = self.declared_degree {
            return Ok(l);
        }
        match self.homogeneity_degree() {
            Err(Error::ZeroPotential) => Ok(1),
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;
    use crate::quiver::Arrow;

    fn q32() -> Quiver {
        Quiver::new(
            ["1", "2", "3", "4"].map(Into::into).to_vec(),
            vec![
                Arrow::new("a", "1", "2"),
                Arrow::new("b", "2", "4"),
                Arrow::new("c", "1", "3"),
                Arrow::new("d", "3", "4"),
                Arrow::new("rho", "4", "1").with_degree(1),
            ],
        )
        .unwrap()
    }

    fn poly(q: &Quiver, names: &[&str]) -> PathPoly {
        PathPoly::from_path(q.path(names).unwrap())
    }

    #[test]
    fn rotation_is_canonical() {
        let q = q32();
        let w = Potential::canonicalize(&poly(&q, &["rho", "a", "b"])).unwrap();
        assert_eq!(w.to_string(), "a b rho");
        let w2 = Potential::canonicalize(&poly(&q, &["b", "rho", "a"])).unwrap();
        assert_eq!(w, w2);
    }

    #[test]
    fn cyclically_equivalent_terms_cancel() {
        let q = q32();
        let x = &poly(&q, &["rho", "a", "b"]) - &poly(&q, &["a", "b", "rho"]);
        assert!(Potential::canonicalize(&x).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_cycles() {
        let q = q32();
        assert!(Potential::canonicalize(&poly(&q, &["a", "b"])).is_err());
    }

    #[test]
    fn derivative_of_rho_recovers_relation() {
        let q = q32();
        let w = Potential::canonicalize(&poly(&q, &["rho", "a", "b"])).unwrap();
        assert_eq!(w.cyclic_derivative("rho"), poly(&q, &["a", "b"]));
        assert_eq!(w.cyclic_derivative("a"), poly(&q, &["b", "rho"]));
        assert!(Potential::zero().cyclic_derivative("a").is_zero());
        assert!(w.derivative_in(&q, "zz").is_err());
    }

    #[test]
    fn repeated_arrow_derivative() {
        let q = Quiver::from_triples(&["1"], &[("f", "1", "1"), ("g", "1", "1")]).unwrap();
        let w = Potential::canonicalize(&poly(&q, &["f", "f", "f"])).unwrap();
        assert_eq!(w.cyclic_derivative("f"), poly(&q, &["f", "f"]).scale(&int(3)));
    }

    #[test]
    fn left_and_right_derivatives() {
        let q = q32();
        let ab = poly(&q, &["a", "b"]);
        use DerivativeSide::*;
        assert_eq!(partial_derivative(Right, &ab, "b").unwrap(), poly(&q, &["a"]));
        assert_eq!(partial_derivative(Left, &ab, "a").unwrap(), poly(&q, &["b"]));
        assert!(partial_derivative(Right, &ab, "c").unwrap().is_zero());
        let e = PathPoly::from_path(Path::trivial("1"));
        assert!(partial_derivative(Left, &e, "a").is_err());
    }

    #[test]
    fn homogeneity() {
        let q = q32();
        let w = Potential::canonicalize(&poly(&q, &["rho", "a", "b"])).unwrap();
        let g = GradedQp::new(q.clone(), w.clone()).unwrap();
        assert_eq!(g.homogeneity_degree().unwrap(), 1);
        let flat = GradedQp::new(q.with_degrees(|_| 0), w).unwrap();
        assert_eq!(flat.homogeneity_degree().unwrap(), 0);
        assert!(flat.clone().declare_degree(1).is_err());
        let zero = GradedQp::new(q, Potential::zero()).unwrap();
        assert_eq!(zero.homogeneity_degree(), Err(Error::ZeroPotential));
    }

    #[test]
    fn mixed_degrees_are_reported() {
        let q = Quiver::new(
            ["1", "2"].map(Into::into).to_vec(),
            vec![
                Arrow::new("x", "1", "2").with_degree(1),
                Arrow::new("y", "2", "1"),
                Arrow::new("z", "2", "1").with_degree(1),
            ],
        )
        .unwrap();
        let w = Potential::canonicalize(&(&poly(&q, &["x", "y"]) + &poly(&q, &["x", "z"]))).unwrap();
        let err = GradedQp::new(q, w).unwrap().homogeneity_degree().unwrap_err();
        assert!(matches!(err, Error::Inhomogeneous(ref m) if m.contains("x z")));
    }
}
