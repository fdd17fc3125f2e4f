//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any FAIL.

mod common;

use common::{dimension, equal_up_to_signs, reflect, rename_by_endpoints, Triples};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;
use qptilt::examples::load;
use qptilt::*;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

/// Wall-clock limit for criteria with a stated time budget.
const LIMIT: Duration = Duration::from_secs(1);

type Check = std::result::Result<String, String>;

type Criterion = (&'static str, Option<Duration>, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T>(r: qptilt::error::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn algebra(name: &str) -> AlgebraPresentation {
    load(name).into_algebra().unwrap()
}

fn qp(name: &str) -> (GradedQp, Cut) {
    let d = load(name).into_qp().unwrap();
    let c = d.cut.clone().unwrap();
    (d.qp, c)
}

fn expect(text: &str) -> AlgebraPresentation {
    parse_document(text).unwrap().into_algebra().unwrap()
}

fn triples(q: &Quiver) -> Vec<(String, String, String)> {
    q.arrows()
        .iter()
        .map(|a| (a.name.to_string(), a.source.to_string(), a.target.to_string()))
        .collect()
}

fn terms(w: &Potential, rename: impl Fn(&str) -> String) -> Vec<(i64, Vec<String>)> {
    w.terms()
        .map(|(p, c)| (c.to_integer().to_i64().unwrap(), p.names().map(&rename).collect()))
        .collect()
}

fn same_up_to_signs(g: &GradedQp, h: &GradedQp) -> bool {
    let Some(map) = rename_by_endpoints(&triples(&g.quiver), &triples(&h.quiver)) else {
        return false;
    };
    let arrows: Vec<String> = h.quiver.arrows().iter().map(|a| a.name.to_string()).collect();
    equal_up_to_signs(
        &terms(&g.potential, |a| map[a].clone()),
        &terms(&h.potential, str::to_string),
        &arrows,
    )
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let r = f();
    let took = start.elapsed();
    match (r, limit) {
        (Ok(_), Some(l)) if took > l => Err(format!("took {took:?}, limit {l:?}")),
        (Ok(m), _) => Ok(format!("{m} ({took:.2?})")),
        (Err(e), _) => Err(e),
    }
}

fn c1() -> Check {
    let p = algebra("square_ab");
    let t = ok(apr_tilt(&p, "1", TiltOptions::default()))?;
    let want = "{a*:2->1, c*:3->1, d:3->4, rho*:1->4} <c* rho*>";
    ensure(t.to_string() == want, format!("got {t}"))?;
    let (g, _) = ok(qp_from_algebra(&p))?;
    let out = ok(mutate_detailed(&g, &MutationStep::left("1"), 12))?;
    let pre: BTreeSet<String> = out
        .premutation
        .potential
        .as_poly()
        .to_string()
        .split(" + ")
        .map(String::from)
        .collect();
    let want: BTreeSet<String> = ["[rhoa] b", "[rhoa] a* rho*", "[rhoc] c* rho*"]
        .into_iter()
        .map(String::from)
        .collect();
    ensure(
        pre == want,
        format!("premutation {}", out.premutation.potential.as_poly()),
    )?;
    let cut = ok(cut_from_grading(&out.premutation))?;
    ensure(cut.to_string() == "{[rhoa], [rhoc]}", format!("cut {cut}"))?;
    Ok(format!("{t}"))
}

fn c2() -> Check {
    let cases = [
        ("square_commutative", "vertices: 1 2 3 4\narrows:\n  a*: 2 -> 1\n  c*: 3 -> 1\n  rho*: 1 -> 4\n"),
        (
            "two_rows",
            "vertices: 1 2 3 4 5 6\narrows:\n  a*: 2 -> 1\n  b: 2 -> 3\n  c: 3 -> 6\n  d: 4 -> 5\n  e: 5 -> 6\n  f: 4 -> 4\n  rho*: 1 -> 6\nrelations:\n  r1: d e\n  r2: f f f\n  r3: a* rho* + b c\n",
        ),
        (
            "double_arrow",
            "vertices: 1 2 3 4\narrows:\n  a1*: 2 -> 1\n  a2*: 2 -> 1\n  b: 2 -> 3\n  c: 3 -> 4\n  rho1*: 1 -> 4\n  rho2*: 1 -> 4\nrelations:\n  r1: a1* rho1* + b c\n  r2: a2* rho1*\n  r3: a1* rho2*\n  r4: a2* rho2* + b c\n",
        ),
        (
            "source_two_cycle",
            "vertices: 1 2 3 4\narrows:\n  a*: 2 -> 1\n  b: 2 -> 3\n  c: 3 -> 4\n  d*: 4 -> 1\n  rho*: 1 -> 4\nrelations:\n  r1: a* rho* + b c\n  r2: d* rho*\n",
        ),
    ];
    for (name, want) in cases {
        let start = Instant::now();
        let t = ok(apr_tilt(&algebra(name), "1", TiltOptions::default()))?;
        ensure(start.elapsed() < LIMIT, format!("{name} took {:?}", start.elapsed()))?;
        ensure(t.same_as(&expect(want)), format!("{name}: got {t}"))?;
    }
    Ok("4 of 4 match".into())
}

fn c3() -> Check {
    let p = algebra("id_three");
    let alg = ok(FiniteAlgebra::new(&p, 12))?;
    let id = ok(alg.injective_dimension_of_projective("1", 4))?;
    ensure(id == Dimension::Finite(3), format!("id P1 = {id}"))?;
    match apr_tilt(&p, "1", TiltOptions::default()) {
        Err(Error::HypothesisViolation { .. }) => {}
        other => return Err(format!("expected hypothesis violation, got {other:?}")),
    }
    let forced = ok(apr_tilt(
        &p,
        "1",
        TiltOptions {
            skip_hypothesis_check: true,
            ..Default::default()
        },
    ))?;
    let want = "{a*:2->1, c:3->4, d:4->5, rho1*:1->3} <a* rho1* c d>";
    ensure(forced.to_string() == want, format!("forced {forced}"))?;
    Ok(format!("rejected with id P1 = {id}; forced output {forced}"))
}

fn c4() -> Check {
    let p = algebra("line_abc");
    let t = ok(apr_tilt(&p, "1", TiltOptions::default()))?;
    let (g, _) = ok(qp_from_algebra(&t))?;
    let back = ok(canonical_renaming(&ok(mutate(&g, &MutationStep::right("1"), 12))?))?;
    let cut = ok(cut_from_grading(&back))?;
    let p2 = ok(truncated_jacobian(&back, &cut))?;
    ensure(p2.same_as(&p), format!("got {p2}"))?;
    Ok(format!("{}", p2.canonical()))
}

fn c5() -> Check {
    let (g, c) = ok(qp_from_algebra(&algebra("concealed_d9")))?;
    let steps = ok(MutationStep::parse_list("1L,2L,3L"))?;
    let trace = ok(mutation_chain(&g, &c, &steps, ChainOptions::default()))?;
    let q = &trace.last().qp.quiver;
    ensure(trace.last().qp.potential.is_zero(), "nonzero potential")?;
    // Euclidean D9: a tree on 10 vertices with exactly two trivalent
    // vertices, four leaves and every other vertex of valency 2.
    let mut deg = std::collections::BTreeMap::<String, usize>::new();
    for a in q.arrows() {
        *deg.entry(a.source.to_string()).or_default() += 1;
        *deg.entry(a.target.to_string()).or_default() += 1;
    }
    let tree = q.vertices().len() == 10 && q.arrows().len() == 9 && deg.len() == 10;
    let shape = deg.values().filter(|d| **d == 3).count() == 2
        && deg.values().filter(|d| **d == 1).count() == 4
        && deg.values().all(|d| *d <= 3);
    let alg = ok(FiniteAlgebra::new(trace.last_presentation(), 12))?;
    ensure(
        tree && shape && alg.global_dimension(4) == Dimension::Finite(1),
        format!("quiver {}", trace.last_presentation()),
    )?;
    Ok("zero potential on a D9 tree".into())
}

fn c6() -> Check {
    let (g1, c1) = qp("selfinjective_w1");
    let (g2, c2) = qp("selfinjective_w2");
    ensure(
        validate_cut(&g1, &c1).valid && validate_cut(&g2, &c2).valid,
        "displayed cuts invalid",
    )?;
    let mut g = g1.clone();
    for s in ok(MutationStep::parse_list("1U,6U,3U"))? {
        g = ok(mutate(&g, &s, 12))?;
    }
    ensure(
        same_up_to_signs(&g, &g2),
        format!("ungraded chain ends at {}", g.potential.as_poly()),
    )?;
    // The graded chain: 1R and 6L from W1, then 3L from W2, which is the
    // state after 6L up to renaming and signs.
    let trace = ok(mutation_chain(
        &g1,
        &c1,
        &ok(MutationStep::parse_list("1R,6L"))?,
        ChainOptions::default(),
    ))?;
    for s in std::iter::once(&trace.start).chain(&trace.states) {
        ensure(
            check_algebraic_cut(&s.qp, &s.cut, 12, 4).in_w1,
            format!("{:?} not in W1", s.cut),
        )?;
    }
    let m3 = ok(mutate(&g2, &MutationStep::left("3"), 12))?;
    let c3 = ok(cut_from_grading(&m3))?;
    ensure(check_algebraic_cut(&m3, &c3, 12, 4).in_w1, "3L from W2 not in W1")?;
    ensure(
        same_up_to_signs(&m3, &trace.last().qp),
        "3L from W2 differs from the 6L state",
    )?;
    Ok("1U6U3U gives the 6-cycle; 1R, 6L, 3L states all in W1 (3L replayed from W2)".into())
}

fn c7() -> Check {
    let mut checked = 0;
    let mut starts: Vec<(String, GradedQp, Cut)> = Vec::new();
    for (name, _) in qptilt::examples::ALL {
        let (g, c) = match load(name) {
            Document::Algebra(p) => ok(qp_from_algebra(&p))?,
            Document::Qp(d) => match d.cut.clone() {
                Some(c) => (d.qp, c),
                None => continue,
            },
        };
        if check_algebraic_cut(&g, &c, 12, 4).in_w1 {
            starts.push((name.to_string(), g, c));
        }
    }
    for (name, g, c) in &starts {
        for v in g.quiver.vertices() {
            if ok(classify_vertex(g, c, v))? != VertexClass::StrictSource {
                continue;
            }
            let m = ok(mutate(g, &MutationStep::left(v), 12))?;
            let cm = ok(cut_from_grading(&m))?;
            let r = check_algebraic_cut(&m, &cm, 12, 4);
            ensure(r.algebraic, format!("{name} at {v}: {r:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} mutations from {} examples", starts.len()))
}

fn c8() -> Check {
    let mut runner = TestRunner::deterministic();
    let loops = Quiver::from_triples(&["0"], &[("x", "0", "0"), ("y", "0", "0")]).unwrap();
    let strat = (prop::collection::vec(any::<bool>(), 2..=6), 0usize..6);
    for _ in 0..500 {
        let (w, r) = strat.new_tree(&mut runner).unwrap().current();
        let names: Vec<&str> = w.iter().map(|&b| if b { "x" } else { "y" }).collect();
        let p = loops.path(&names).unwrap();
        let a = ok(Potential::canonicalize(&PathPoly::from_path(p.clone())))?;
        let b = ok(Potential::canonicalize(&PathPoly::from_path(p.rotate(r % p.len()))))?;
        ensure(
            a == b && a.cyclic_derivative("x") == b.cyclic_derivative("x"),
            format!("rotation of {p}"),
        )?;
    }
    let mut splits = 0;
    let mut round_trips = 0;
    for (name, _) in qptilt::examples::ALL {
        let (g, _) = match load(name) {
            Document::Algebra(p) => {
                let (g, c) = ok(qp_from_algebra(&p))?;
                ensure(
                    ok(truncated_jacobian(&g, &c))?.same_as(&p),
                    format!("round trip of {name}"),
                )?;
                round_trips += 1;
                (g, c)
            }
            Document::Qp(d) => (d.qp, Cut::empty()),
        };
        for v in g.quiver.vertices() {
            for side in [Side::Left, Side::Right] {
                let Ok(pre) = graded_premutate(&g, v, side) else {
                    continue;
                };
                let s = ok(split(&pre, 12))?;
                let all: BTreeSet<&str> = pre.quiver.arrows().iter().map(|a| &*a.name).collect();
                let kept: BTreeSet<&str> = s.reduced.quiver.arrows().iter().map(|a| &*a.name).collect();
                let removed: BTreeSet<&str> = s.removed_arrows.iter().map(|a| &**a).collect();
                ensure(
                    kept.is_disjoint(&removed) && &kept | &removed == all,
                    format!("{name} at {v}: arrows"),
                )?;
                ensure(
                    s.reduced.potential.quadratic_terms().count() == 0,
                    format!("{name} at {v}: 2-cycles"),
                )?;
                let (d1, f1) = jacobian_dimension(&pre.quiver, &pre.potential, 6);
                let (d2, f2) = jacobian_dimension(&s.reduced.quiver, &s.reduced.potential, 6);
                if f1 && f2 {
                    ensure(d1 == d2, format!("{name} at {v}: Jacobian {d1} vs {d2}"))?;
                }
                splits += 1;
            }
        }
    }
    // Brute-force dimensions of the two square algebras.
    let sq = Triples::new(
        &["1", "2", "3", "4"],
        &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
    );
    let o1 = dimension(&sq, &[vec![(1, vec!["a", "b"])]], 8);
    let o2 = dimension(&sq, &[vec![(1, vec!["a", "b"]), (-1, vec!["c", "d"])]], 8);
    let l1 = ok(FiniteAlgebra::new(&algebra("square_ab"), 8))?.dimension();
    let l2 = ok(FiniteAlgebra::new(&algebra("square_commutative"), 8))?.dimension();
    ensure(
        (l1, l2) == (o1, o2),
        format!("dimensions {l1}, {l2} vs oracle {o1}, {o2}"),
    )?;
    Ok(format!(
        "500 rotations, {splits} splits, {round_trips} round trips, square dimensions {l1} and {l2} (oracle)"
    ))
}

fn c9() -> Check {
    let mut runner = TestRunner::deterministic();
    let strat = (2usize..=6, prop::collection::vec(0u8..3, 15));
    let mut done = 0;
    while done < 50 {
        let (n, coins) = strat.new_tree(&mut runner).unwrap().current();
        let mut arrows = Vec::new();
        let mut k = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                for m in 0..usize::from(coins[k % coins.len()]) {
                    arrows.push((format!("x{i}_{j}_{m}"), i.to_string(), j.to_string()));
                }
                k += 1;
            }
        }
        let t = Triples {
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            arrows,
        };
        let Some(src) = t
            .vertices
            .iter()
            .find(|v| t.arrows.iter().any(|a| &a.1 == *v) && !t.arrows.iter().any(|a| &a.2 == *v))
        else {
            continue;
        };
        let vs: Vec<&str> = t.vertices.iter().map(String::as_str).collect();
        let ar: Vec<(&str, &str, &str)> = t
            .arrows
            .iter()
            .map(|(a, s, e)| (a.as_str(), s.as_str(), e.as_str()))
            .collect();
        let p = AlgebraPresentation::path_algebra(Quiver::from_triples(&vs, &ar).unwrap());
        let tilted = match apr_tilt(&p, src, TiltOptions::default()) {
            Ok(x) => x,
            Err(Error::NotApr(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        ensure(tilted.relations.is_empty(), format!("relations after tilting {p}"))?;
        let got: BTreeSet<_> = triples(&tilted.quiver).into_iter().collect();
        ensure(got == reflect(&t, src), format!("tilt of {p} at {src} is {tilted}"))?;
        done += 1;
    }
    Ok("50 random acyclic quivers".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 square tilt pipeline", Some(LIMIT), c1),
        ("2 tilt sub-examples", None, c2),
        ("3 injective dimension guard", None, c3),
        ("4 left/right round trip", None, c4),
        ("5 concealed chain to a D9 tree", Some(LIMIT), c5),
        ("6 selfinjective chain", None, c6),
        ("7 closure under left mutation", None, c7),
        ("8 property suites", None, c8),
        ("9 reflection at sources", None, c9),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        match timed(limit, f) {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
