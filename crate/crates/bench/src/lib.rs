//! Inputs shared by the benchmarks.

use qptilt::examples::load;
use qptilt::{AlgebraPresentation, Cut, GradedQp};

/// A bundled algebra by name.
pub fn algebra(name: &str) -> AlgebraPresentation {
    load(name).into_algebra().expect("bundled algebra")
}

/// A bundled QP with its cut, by name.
pub fn cut_qp(name: &str) -> (GradedQp, Cut) {
    let d = load(name).into_qp().expect("bundled QP");
    let cut = d.cut.clone().expect("bundled cut");
    (d.qp, cut)
}
