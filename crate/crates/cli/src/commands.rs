//! Command definitions and dispatch.

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use qptilt::{
    apr_tilt, check_algebraic_cut, cut_from_grading, emit_algebra, emit_dot, emit_qp, graded_premutate,
    jacobian_dimension, mutation_chain, parse_document, qp_from_algebra, split, truncated_jacobian, validate_cut,
    AlgebraPresentation, ChainOptions, Cut, Dimension, Document, FiniteAlgebra, GradedQp, MutationStep,
    NormalFormBasis, Side, TiltOptions, DEFAULT_BOUND, DEFAULT_CAP,
};
use serde::Serialize;
use serde_json::json;
use std::io::Read;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "qptilt",
    version,
    about = "Mutation of graded quivers with potential and APR tilting"
)]
pub struct Cli {
    /// Length bound for truncated computations.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: usize,
    /// Resolution length cap for homological dimensions.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Ungraded,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
            SideArg::Ungraded => Side::Ungraded,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a document and report on its cut and algebra.
    Check { input: Option<PathBuf> },
    /// Cyclic derivative of the potential.
    Derive {
        #[arg(long)]
        arrow: String,
        input: Option<PathBuf>,
    },
    /// Mutate at a vertex.
    Mutate {
        #[arg(long)]
        vertex: String,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Stop after premutation.
        #[arg(long)]
        no_reduce: bool,
        input: Option<PathBuf>,
    },
    /// Remove 2-cycles from the potential.
    Reduce { input: Option<PathBuf> },
    /// The QP with cut attached to an algebra.
    FromAlgebra { input: Option<PathBuf> },
    /// Truncated Jacobian algebra of a QP along a cut.
    Truncate {
        /// Cut arrows; defaults to the document's cut.
        #[arg(long, value_delimiter = ',')]
        cut: Vec<String>,
        input: Option<PathBuf>,
    },
    /// APR tilt of an algebra at a source.
    AprTilt {
        #[arg(long)]
        source: String,
        /// Skip the injective dimension check.
        #[arg(long)]
        force: bool,
        input: Option<PathBuf>,
    },
    /// Apply a sequence of steps such as `1L,2L,3R`.
    Chain {
        #[arg(long)]
        steps: String,
        #[arg(long)]
        allow_nonstrict: bool,
        input: Option<PathBuf>,
    },
    /// Global dimension.
    Gldim { input: Option<PathBuf> },
    /// Dimension of the algebra.
    Dim {
        /// Use the full Jacobian algebra of the QP.
        #[arg(long)]
        jacobian: bool,
        input: Option<PathBuf>,
    },
    /// Graphviz output.
    Dot { input: Option<PathBuf> },
    /// Run the HTTP session service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

fn read_input(input: &Option<PathBuf>) -> anyhow::Result<String> {
    match input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn document(input: &Option<PathBuf>) -> anyhow::Result<Document> {
    Ok(parse_document(&read_input(input)?)?)
}

/// A QP with its cut; algebras are turned into their QP.
fn qp_of(doc: Document) -> anyhow::Result<(GradedQp, Option<Cut>)> {
    Ok(match doc {
        Document::Qp(d) => {
            let cut = d.cut.clone().or_else(|| cut_from_grading(&d.qp).ok());
            (d.qp, cut)
        }
        Document::Algebra(p) => {
            let (g, c) = qp_from_algebra(&p)?;
            (g, Some(c))
        }
    })
}

fn algebra_of(doc: Document) -> anyhow::Result<AlgebraPresentation> {
    match doc {
        Document::Algebra(p) => Ok(p),
        Document::Qp(d) => {
            let cut = d
                .cut
                .clone()
                .or_else(|| cut_from_grading(&d.qp).ok())
                .ok_or_else(|| anyhow!("the QP has no cut, so it defines no truncated Jacobian algebra"))?;
            Ok(truncated_jacobian(&d.qp, &cut)?)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn qp_output(qp: &GradedQp, json: bool) -> String {
    let cut = cut_from_grading(qp).ok();
    if json {
        to_json(&json!({ "qp": qp, "cut": cut }))
    } else {
        emit_qp(qp, cut.as_ref())
    }
}

fn algebra_output(p: &AlgebraPresentation, json: bool) -> String {
    if json {
        to_json(p)
    } else {
        emit_algebra(p)
    }
}

#[derive(Serialize)]
struct AlgebraSummary {
    dimension: usize,
    stabilized: bool,
    global_dimension: Option<Dimension>,
    relations_minimal: Option<bool>,
    redundant: Vec<String>,
}

fn summarize(p: &AlgebraPresentation, bound: usize, cap: usize) -> AlgebraSummary {
    let nf = NormalFormBasis::compute(&p.quiver, &p.relation_values(), bound);
    match FiniteAlgebra::new(p, bound) {
        Ok(alg) => {
            let m = alg.relations_minimal().ok();
            AlgebraSummary {
                dimension: nf.dimension(),
                stabilized: true,
                global_dimension: Some(alg.global_dimension(cap)),
                relations_minimal: m.as_ref().map(|m| m.minimal),
                redundant: m
                    .map(|m| m.redundant.iter().map(ToString::to_string).collect())
                    .unwrap_or_default(),
            }
        }
        Err(_) => AlgebraSummary {
            dimension: nf.dimension(),
            stabilized: false,
            global_dimension: None,
            relations_minimal: None,
            redundant: Vec::new(),
        },
    }
}

fn summary_lines(s: &AlgebraSummary, out: &mut String) {
    if s.stabilized {
        out.push_str(&format!("dimension: {}\n", s.dimension));
    } else {
        out.push_str(&format!("dimension: not stabilized ({} at the bound)\n", s.dimension));
    }
    if let Some(g) = &s.global_dimension {
        out.push_str(&format!("global dimension: {g}\n"));
    }
    if let Some(m) = s.relations_minimal {
        out.push_str(&format!("relations minimal: {m}\n"));
    }
    if !s.redundant.is_empty() {
        out.push_str(&format!("redundant relations: {}\n", s.redundant.join(", ")));
    }
}

fn check(doc: Document, bound: usize, cap: usize, json: bool) -> anyhow::Result<String> {
    let mut out = String::new();
    match doc {
        Document::Algebra(p) => {
            let s = summarize(&p, bound, cap);
            if json {
                return Ok(to_json(
                    &json!({ "kind": "algebra", "warnings": p.quiver.validate().warnings(), "algebra": s }),
                ));
            }
            for w in p.quiver.validate().warnings() {
                out.push_str(&format!("warning: {w}\n"));
            }
            out.push_str(&format!(
                "algebra: {} vertices, {} arrows, {} relations\n",
                p.quiver.vertices().len(),
                p.quiver.arrows().len(),
                p.relations.len()
            ));
            summary_lines(&s, &mut out);
        }
        Document::Qp(d) => {
            let cut = d.cut.clone().or_else(|| cut_from_grading(&d.qp).ok());
            let warnings = d.qp.quiver.validate().warnings();
            let cut_report = cut.as_ref().map(|c| validate_cut(&d.qp, c));
            let algebraic = cut.as_ref().map(|c| check_algebraic_cut(&d.qp, c, bound, cap));
            if json {
                return Ok(to_json(&json!({
                    "kind": "qp",
                    "warnings": warnings,
                    "reduced": d.qp.potential.is_reduced(),
                    "cut": cut,
                    "cut_report": cut_report,
                    "algebraic_cut": algebraic,
                })));
            }
            for w in warnings {
                out.push_str(&format!("warning: {w}\n"));
            }
            out.push_str(&format!(
                "qp: {} vertices, {} arrows, {} potential terms\n",
                d.qp.quiver.vertices().len(),
                d.qp.quiver.arrows().len(),
                d.qp.potential.terms().count()
            ));
            out.push_str(&format!("reduced: {}\n", d.qp.potential.is_reduced()));
            match (&cut, &cut_report, &algebraic) {
                (Some(c), Some(r), Some(a)) => {
                    out.push_str(&format!("cut: {c} {}\n", if r.valid { "valid" } else { "invalid" }));
                    for t in r.offending() {
                        out.push_str(&format!("  term {} meets the cut {} times\n", t.term, t.count));
                    }
                    if let Some(d) = a.dimension {
                        out.push_str(&format!("dimension: {d}\n"));
                    } else if r.valid {
                        out.push_str("dimension: not stabilized\n");
                    }
                    if let Some(g) = a.global_dimension {
                        out.push_str(&format!("global dimension: {g}\n"));
                    }
                    if let Some(m) = a.relations_minimal {
                        out.push_str(&format!("relations minimal: {m}\n"));
                    }
                    out.push_str(&format!("algebraic cut: {}\n", a.algebraic));
                }
                _ => out.push_str("cut: none\n"),
            }
        }
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> anyhow::Result<String> {
    let (bound, cap, json) = (cli.bound, cli.cap, cli.json);
    match &cli.command {
        Command::Check { input } => check(document(input)?, bound, cap, json),
        Command::Derive { arrow, input } => {
            let (g, _) = qp_of(document(input)?)?;
            let d = g.potential.derivative_in(&g.quiver, arrow)?;
            Ok(if json {
                to_json(&json!({ "arrow": arrow, "derivative": d.to_string(), "terms": d }))
            } else {
                format!("{d}\n")
            })
        }
        Command::Mutate {
            vertex,
            side,
            no_reduce,
            input,
        } => {
            let (g, _) = qp_of(document(input)?)?;
            let pre = graded_premutate(&g, vertex, (*side).into())?;
            if *no_reduce {
                return Ok(qp_output(&pre, json));
            }
            let s = split(&pre, bound)?;
            Ok(qp_output(&s.reduced, json))
        }
        Command::Reduce { input } => {
            let (g, _) = qp_of(document(input)?)?;
            let s = split(&g, bound)?;
            Ok(if json {
                to_json(&s)
            } else {
                qp_output(&s.reduced, false)
            })
        }
        Command::FromAlgebra { input } => {
            let Document::Algebra(p) = document(input)? else {
                return Err(anyhow!("expected an algebra document with a relations section"));
            };
            let (g, c) = qp_from_algebra(&p)?;
            Ok(if json {
                to_json(&json!({ "qp": g, "cut": c }))
            } else {
                emit_qp(&g, Some(&c))
            })
        }
        Command::Truncate { cut, input } => {
            let (g, doc_cut) = qp_of(document(input)?)?;
            let cut = if cut.is_empty() {
                doc_cut.ok_or_else(|| anyhow!("no cut given and the document has none"))?
            } else {
                Cut::new(cut)
            };
            Ok(algebra_output(&truncated_jacobian(&g, &cut)?, json))
        }
        Command::AprTilt { source, force, input } => {
            let p = algebra_of(document(input)?)?;
            let opts = TiltOptions {
                bound,
                cap,
                skip_hypothesis_check: *force,
            };
            let out = apr_tilt(&p, source, opts)?;
            if *force {
                let id = FiniteAlgebra::new(&p, bound)?.injective_dimension_of_projective(source, cap)?;
                if !id.at_most(2) {
                    eprintln!(
                        "warning: injective dimension of P_{source} is {id}; the output is the mutation formula, \
                         which need not present the endomorphism algebra of the tilting module"
                    );
                }
            }
            Ok(algebra_output(&out, json))
        }
        Command::Chain {
            steps,
            allow_nonstrict,
            input,
        } => {
            let (g, cut) = qp_of(document(input)?)?;
            let cut = cut.ok_or_else(|| anyhow!("chains need a cut"))?;
            let steps = MutationStep::parse_list(steps)?;
            let opts = ChainOptions {
                bound,
                allow_nonstrict: *allow_nonstrict,
            };
            let trace = mutation_chain(&g, &cut, &steps, opts)?;
            Ok(if json {
                to_json(&trace)
            } else {
                let last = trace.last();
                emit_qp(&last.qp, Some(&last.cut))
            })
        }
        Command::Gldim { input } => {
            let p = algebra_of(document(input)?)?;
            let g = FiniteAlgebra::new(&p, bound)?.global_dimension(cap);
            Ok(if json {
                to_json(&json!({ "global_dimension": g }))
            } else {
                format!("{g}\n")
            })
        }
        Command::Dim { jacobian, input } => {
            let doc = document(input)?;
            let (dim, stabilized) = if *jacobian {
                let (g, _) = qp_of(doc)?;
                jacobian_dimension(&g.quiver, &g.potential, bound)
            } else {
                let p = algebra_of(doc)?;
                let nf = NormalFormBasis::compute(&p.quiver, &p.relation_values(), bound);
                (nf.dimension(), nf.is_stabilized())
            };
            Ok(if json {
                to_json(&json!({ "dimension": dim, "stabilized": stabilized, "bound": bound }))
            } else if stabilized {
                format!("{dim}\n")
            } else {
                format!("{dim} (not stabilized at bound {bound})\n")
            })
        }
        Command::Dot { input } => Ok(match document(input)? {
            Document::Qp(d) => {
                let cut = d.cut.clone().or_else(|| cut_from_grading(&d.qp).ok());
                emit_dot(&d.qp.quiver, cut.as_ref())
            }
            Document::Algebra(p) => emit_dot(&p.quiver, None),
        }),
        Command::Serve { port } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(crate::server::serve(*port))?;
            Ok(String::new())
        }
    }
}
