//! The `graphstate` command line.
//!
//! Every subcommand builds a serializable report; `--json` prints it as
//! JSON, otherwise a short text rendering is printed. Exit codes: 0 on
//! success, 2 when the input violates a precondition, 1 on internal
//! failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{
    add_vertex_procedure, delete_vertex_procedure, edge_addition_channel, edge_deletion_channel,
    measurement_probabilities, KrausChannel,
};
use crate::concurrence::{concurrence_labeled, four_vertex_census, FourVertexCensus};
use crate::density::{density_of_graph, DensityMatrix};
use crate::entropy::{circulant_entropy_approx, circulant_entropy_exact, q_entropy, regular_graph_entropy, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::graph::{cayley_circulant, complete, cycle, parse_graph, path, petersen, star, Graph};
use crate::linalg::{eigensystem, projector, CVector, HermitianMatrix};
use crate::separability::{
    entangled_edges, explicit_decomposition, labeling_search, partial_transpose, ppt_is_decisive, ppt_test,
    BipartiteLabeling, Certificate, LabelingCensus, SearchOptions, SeparabilityStatus, SeparabilityVerdict,
    DEFAULT_SEED, DEFAULT_TOL,
};

#[derive(Debug, Parser)]
#[command(name = "graphstate", version, about = "Density matrices of graphs as quantum states")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Tolerance for PSD and partial-transpose checks.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Seed for every sampled search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Split {
    /// Rows of the bipartition.
    #[arg(long)]
    pub p: Option<usize>,
    /// Columns of the bipartition.
    #[arg(long)]
    pub q: Option<usize>,
    /// `v:s:t,...` with 1-based vertex, 0-based row and 1-based column.
    #[arg(long)]
    pub labeling: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum, entropy and (with --p/--q) separability of one graph.
    Analyze {
        /// Edge-list file, `-` for stdin, or a built-in such as `@petersen`.
        graph: String,
        #[command(flatten)]
        split: Split,
    },
    /// Every graph on four vertices under every 2x2 labeling.
    Census4 {
        /// Text output as CSV rows.
        #[arg(long)]
        csv: bool,
    },
    /// Apply a script of graph edits as Kraus channels.
    Channel {
        graph: String,
        /// File with one edit per line.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Inline edit, repeatable: `del-edge U V`, `add-edge U V`,
        /// `del-vertex V`, `add-vertex`.
        #[arg(long = "edit", short = 'e')]
        edits: Vec<String>,
        /// Include the Kraus operators of every edge edit.
        #[arg(long)]
        dump_kraus: bool,
    },
    /// Separability across vertex labelings.
    Search {
        graph: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Draw `budget` random labelings when enumeration is too large.
        #[arg(long)]
        sample: bool,
    },
    /// Look for separable graphs whose entangled edges are one edge or a star.
    Probe {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        /// Graphs drawn per split when there are too many to enumerate.
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
    },
    /// Von Neumann entropy of a graph or of a circulant `C_n(±k)`.
    Entropy {
        graph: Option<String>,
        /// `N K` for the circulant on `Z_N` generated by `±K`.
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        circulant: Option<Vec<usize>>,
        /// Also report the q-entropy for this q.
        #[arg(long = "q-entropy")]
        q_entropy: Option<f64>,
    },
}

/// Reads an edge-list file, stdin (`-`), or one of `@petersen`,
/// `@complete:N`, `@star:N`, `@cycle:N`, `@path:N`, `@circulant:N:a,b,...`.
pub fn load_graph(spec: &str) -> Result<Graph> {
    if let Some(name) = spec.strip_prefix('@') {
        let mut parts = name.split(':');
        let kind = parts.next().unwrap_or_default();
        let num = |s: Option<&str>| -> Result<usize> {
            s.and_then(|x| x.parse().ok()).ok_or_else(|| Error::InvalidArgument(format!("bad built-in graph {spec:?}")))
        };
        return match kind {
            "petersen" => Ok(petersen()),
            "complete" => complete(num(parts.next())?),
            "star" => star(num(parts.next())?),
            "cycle" => cycle(num(parts.next())?),
            "path" => path(num(parts.next())?),
            "circulant" => {
                let n = num(parts.next())?;
                let set = parts
                    .next()
                    .unwrap_or_default()
                    .split(',')
                    .map(|x| num(Some(x)))
                    .collect::<Result<Vec<_>>>()?;
                cayley_circulant(n, &set)
            }
            _ => Err(Error::InvalidArgument(format!("unknown built-in graph {spec:?}"))),
        };
    }
    let text = if spec == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(spec)
    }
    .map_err(|e| Error::InvalidArgument(format!("{spec}: {e}")))?;
    parse_graph(&text)
}

fn labeling_for(n: usize, split: &Split) -> Result<Option<BipartiteLabeling>> {
    match (split.p, split.q) {
        (None, None) if split.labeling.is_none() => Ok(None),
        (Some(p), Some(q)) => {
            let lab = match &split.labeling {
                Some(text) => BipartiteLabeling::parse(p, q, text)?,
                None => BipartiteLabeling::default_for(p, q)?,
            };
            lab.check_dim(n)?;
            Ok(Some(lab))
        }
        _ => Err(Error::InvalidArgument("--p and --q go together".into())),
    }
}

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub components: usize,
    pub regular_degree: Option<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        Self {
            n: g.n(),
            m: g.m(),
            components: g.component_count(),
            regular_degree: g.regular_degree(),
            edges: g.edges_one_based(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SeparabilitySection {
    pub verdict: SeparabilityVerdict,
    /// Eigenvalues of the partial transpose, ascending.
    pub pt_spectrum: Vec<f64>,
    pub ppt_decisive: bool,
    pub entangled_edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concurrence: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Certificate>,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub graph: GraphSummary,
    pub spectrum: Vec<f64>,
    pub entropy: f64,
    pub entropy_bound: f64,
    pub purity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separability: Option<SeparabilitySection>,
}

pub fn cmd_analyze(g: &Graph, lab: Option<&BipartiteLabeling>, tol: f64) -> Result<AnalysisReport> {
    let rho = density_of_graph(g)?;
    let ent = von_neumann_entropy(&rho);
    let separability = match lab {
        None => None,
        Some(lab) => {
            let pt = eigensystem(&partial_transpose(rho.mat(), lab)?);
            let mut verdict = ppt_test(&rho, lab, tol)?;
            verdict.min_pt_eigenvalue = pt.min();
            let decomposition = if verdict.status == SeparabilityStatus::EntangledNpt {
                None
            } else {
                explicit_decomposition(g, lab)?
            };
            if verdict.status == SeparabilityStatus::PptInconclusive {
                if let Some(cert) = &decomposition {
                    verdict.status = SeparabilityStatus::Separable;
                    verdict.certified_by = Some(cert.method.to_string());
                }
            }
            let concurrence = if lab.p() == 2 && lab.q() == 2 {
                Some(concurrence_labeled(rho.mat(), lab)?.value)
            } else {
                None
            };
            Some(SeparabilitySection {
                ppt_decisive: ppt_is_decisive(lab.p(), lab.q()),
                entangled_edges: entangled_edges(g, lab)?.into_iter().map(|(u, v)| (u + 1, v + 1)).collect(),
                pt_spectrum: pt.values,
                verdict,
                concurrence,
                decomposition,
            })
        }
    };
    Ok(AnalysisReport {
        graph: GraphSummary::of(g),
        spectrum: ent.spectrum.values.clone(),
        entropy: ent.entropy,
        entropy_bound: ent.bound_max,
        purity: rho.purity(),
        separability,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Edit {
    DeleteEdge(usize, usize),
    AddEdge(usize, usize),
    DeleteVertex(usize),
    AddVertex,
}

impl Edit {
    /// Parses one script line with 1-based vertices.
    pub fn parse(line: &str) -> Result<Self> {
        let words: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::InvalidArgument(format!("bad edit {line:?}"));
        let vertex = |w: &str| -> Result<usize> {
            match w.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v - 1),
                _ => Err(bad()),
            }
        };
        match words.as_slice() {
            ["del-edge", u, v] => Ok(Edit::DeleteEdge(vertex(u)?, vertex(v)?)),
            ["add-edge", u, v] => Ok(Edit::AddEdge(vertex(u)?, vertex(v)?)),
            ["del-vertex", v] => Ok(Edit::DeleteVertex(vertex(v)?)),
            ["add-vertex"] => Ok(Edit::AddVertex),
            _ => Err(bad()),
        }
    }

    pub fn parse_script(text: &str) -> Result<Vec<Self>> {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(Edit::parse)
            .collect()
    }
}

#[derive(Debug, Serialize)]
pub struct OutcomeRow {
    pub id: String,
    pub probability: f64,
}

#[derive(Debug, Serialize)]
pub struct ChannelStep {
    pub edit: String,
    pub n: usize,
    pub m: usize,
    pub operators: usize,
    pub trace: f64,
    /// `max |state − σ(graph)|` after the edit.
    pub deviation: f64,
    /// Outcomes of the edge measurement for edge edits; for vertex edits,
    /// the discarded projector's click probability.
    pub outcomes: Vec<OutcomeRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kraus: Option<serde_json::Value>,
}

#[derive(Debug, Serialize)]
pub struct ChannelTrajectory {
    pub start: GraphSummary,
    pub steps: Vec<ChannelStep>,
    pub end: GraphSummary,
    /// Final state entries, row-major, real parts (all states are real).
    pub final_state: Vec<Vec<f64>>,
    #[serde(skip)]
    pub states: Vec<DensityMatrix>,
}

/// Probabilities of the edge measurement straight from `tr(Pσ)`; used for
/// additions, whose edge is not yet in the graph.
fn traced_outcomes(rho: &HermitianMatrix, u: usize, v: usize) -> Vec<OutcomeRow> {
    let n = rho.dim();
    let r = rho.to_complex();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut rows = Vec::new();
    for (id, sign) in [("plus", 1.0), ("minus", -1.0)] {
        let mut b = CVector::zeros(n);
        b[u].re = s;
        b[v].re = sign * s;
        rows.push(OutcomeRow { id: id.into(), probability: (projector(&b) * &r).trace().re });
    }
    for x in (0..n).filter(|&x| x != u && x != v) {
        rows.push(OutcomeRow { id: format!("vertex:{}", x + 1), probability: r[(x, x)].re });
    }
    rows
}

fn edge_step(
    label: &str,
    ch: &KrausChannel,
    rho: &HermitianMatrix,
    next: &Graph,
    outcomes: Vec<OutcomeRow>,
    dump: bool,
) -> Result<(ChannelStep, HermitianMatrix)> {
    let out = ch.apply_to(rho)?;
    let deviation = out.max_abs_diff(density_of_graph(next)?.mat());
    let step = ChannelStep {
        edit: label.to_string(),
        n: next.n(),
        m: next.m(),
        operators: ch.len(),
        trace: out.trace(),
        deviation,
        outcomes,
        kraus: dump.then(|| ch.to_json()),
    };
    Ok((step, out))
}

pub fn cmd_channel(g: &Graph, edits: &[Edit], dump_kraus: bool) -> Result<ChannelTrajectory> {
    let mut graph = g.clone();
    let mut rho = density_of_graph(g)?.into_mat();
    let mut steps = Vec::new();
    let mut states = Vec::new();
    for edit in edits {
        let (step, next_rho, next_graph) = match *edit {
            Edit::DeleteEdge(u, v) => {
                let ch = edge_deletion_channel(&graph, (u, v))?;
                let outcomes = measurement_probabilities(&graph, (u, v))?
                    .into_iter()
                    .map(|o| OutcomeRow { id: o.id, probability: o.probability })
                    .collect();
                let next = graph.without_edge(u, v)?;
                let (step, out) = edge_step(ch.label(), &ch, &rho, &next, outcomes, dump_kraus)?;
                (step, out, next)
            }
            Edit::AddEdge(u, v) => {
                let ch = edge_addition_channel(&graph, (u, v))?;
                let next = graph.with_edge(u, v)?;
                let outcomes = traced_outcomes(&rho, u, v);
                let (step, out) = edge_step(ch.label(), &ch, &rho, &next, outcomes, dump_kraus)?;
                (step, out, next)
            }
            Edit::DeleteVertex(v) => {
                let r = delete_vertex_procedure(&graph, v)?;
                let step = vertex_step(format!("del-vertex {}", v + 1), &r);
                (step, r.state.into_mat(), r.graph)
            }
            Edit::AddVertex => {
                let r = add_vertex_procedure(&graph)?;
                let step = vertex_step("add-vertex".into(), &r);
                (step, r.state.into_mat(), r.graph)
            }
        };
        steps.push(step);
        states.push(DensityMatrix::from_hermitian(next_rho.clone(), 1e-9)?);
        rho = next_rho;
        graph = next_graph;
    }
    let c = rho.to_complex();
    Ok(ChannelTrajectory {
        start: GraphSummary::of(g),
        steps,
        end: GraphSummary::of(&graph),
        final_state: (0..c.nrows()).map(|i| (0..c.ncols()).map(|j| c[(i, j)].re).collect()).collect(),
        states,
    })
}

fn vertex_step(edit: String, r: &crate::channels::VertexEdit) -> ChannelStep {
    ChannelStep {
        edit,
        n: r.graph.n(),
        m: r.graph.m(),
        operators: r.steps.iter().map(|s| s.operators).sum(),
        trace: r.state.mat().trace(),
        deviation: r.deviation,
        outcomes: vec![
            OutcomeRow { id: "keep".into(), probability: 1.0 - r.discard_probability },
            OutcomeRow { id: "discard".into(), probability: r.discard_probability },
        ],
        kraus: None,
    }
}

#[derive(Debug, Default, Serialize)]
pub struct ProbeTally {
    pub instances: u64,
    pub entangled_npt: u64,
    pub separable: u64,
    pub ppt_inconclusive: u64,
}

#[derive(Debug, Serialize)]
pub struct ProbeCase {
    pub p: usize,
    pub q: usize,
    pub method: &'static str,
    pub graphs_examined: u64,
    pub single_entangled_edge: ProbeTally,
    pub entangled_edges_at_one_vertex: ProbeTally,
    /// Graphs in either family whose partial transpose is positive, in the
    /// default labeling (vertex `v` at row `v / q`, column `v % q`).
    pub counterexamples: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Serialize)]
pub struct ProbeReport {
    pub cases: Vec<ProbeCase>,
    pub counterexample_found: bool,
}

/// Largest `n` whose labeled graphs are enumerated outright.
const PROBE_EXHAUSTIVE_N: usize = 6;
const PROBE_MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    Single,
    Star,
}

fn probe_family(entangled: &[(usize, usize)]) -> Option<Family> {
    match entangled {
        [] => None,
        [_] => Some(Family::Single),
        [(a, b), rest @ ..] => [*a, *b]
            .into_iter()
            .any(|x| rest.iter().all(|&(u, v)| u == x || v == x))
            .then_some(Family::Star),
    }
}

fn probe_split(p: usize, q: usize, budget: usize, seed: u64, tol: f64) -> Result<ProbeCase> {
    let n = p * q;
    let pairs = n * (n - 1) / 2;
    let lab = BipartiteLabeling::default_for(p, q)?;
    let (method, masks): (&'static str, Vec<u64>) = if n <= PROBE_EXHAUSTIVE_N {
        ("exhaustive", (1..(1u64 << pairs)).collect())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 32 | q as u64));
        ("sampled", (0..budget).map(|_| rng.random_range(1..(1u64 << pairs))).collect())
    };
    type Hit = (Family, SeparabilityStatus, Vec<(usize, usize)>);
    let results: Vec<Option<Hit>> = masks
        .par_iter()
        .map(|&mask| {
            let g = Graph::from_edge_mask(n, mask);
            let Some(family) = probe_family(&entangled_edges(&g, &lab)?) else {
                return Ok(None);
            };
            let verdict = ppt_test(&density_of_graph(&g)?, &lab, tol)?;
            Ok(Some((family, verdict.status, g.edges_one_based())))
        })
        .collect::<Result<_>>()?;
    let mut single = ProbeTally::default();
    let mut stars = ProbeTally::default();
    let mut counterexamples = Vec::new();
    for (family, status, edges) in results.into_iter().flatten() {
        let t = if family == Family::Single { &mut single } else { &mut stars };
        t.instances += 1;
        match status {
            SeparabilityStatus::EntangledNpt => t.entangled_npt += 1,
            SeparabilityStatus::Separable => t.separable += 1,
            SeparabilityStatus::PptInconclusive => t.ppt_inconclusive += 1,
        }
        if status != SeparabilityStatus::EntangledNpt && counterexamples.len() < PROBE_MAX_COUNTEREXAMPLES {
            counterexamples.push(edges);
        }
    }
    Ok(ProbeCase {
        p,
        q,
        method,
        graphs_examined: masks.len() as u64,
        single_entangled_edge: single,
        entangled_edges_at_one_vertex: stars,
        counterexamples,
    })
}

/// Probes every split `p ≤ q` with `p, q ≥ 2` and `pq ≤ max_n`, or only
/// the given one.
pub fn cmd_probe(max_n: usize, split: Option<(usize, usize)>, budget: usize, seed: u64, tol: f64) -> Result<ProbeReport> {
    if max_n > 8 {
        return Err(Error::InvalidArgument("--max-n is at most 8".into()));
    }
    let splits: Vec<(usize, usize)> = match split {
        Some((p, q)) if p * q <= max_n && p >= 2 && q >= 2 => vec![(p, q)],
        Some((p, q)) => return Err(Error::InvalidArgument(format!("{p}x{q} is outside 2 <= p, q and pq <= {max_n}"))),
        None => (2..=max_n)
            .flat_map(|p| (p..=max_n).map(move |q| (p, q)))
            .filter(|&(p, q)| p * q <= max_n)
            .collect(),
    };
    let cases = splits.iter().map(|&(p, q)| probe_split(p, q, budget, seed, tol)).collect::<Result<Vec<_>>>()?;
    let counterexample_found = cases.iter().any(|c| !c.counterexamples.is_empty());
    Ok(ProbeReport { cases, counterexample_found })
}

#[derive(Debug, Serialize)]
pub struct EntropyOutput {
    pub source: String,
    pub n: usize,
    pub entropy: f64,
    pub bound_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular_formula: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circulant_approximation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_entropy: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub eigenvalues: Vec<f64>,
}

pub fn cmd_entropy(graph: Option<&Graph>, circulant: Option<(usize, usize)>, q: Option<f64>) -> Result<EntropyOutput> {
    match (graph, circulant) {
        (Some(g), None) => {
            let rho = density_of_graph(g)?;
            let rep = von_neumann_entropy(&rho);
            let regular_formula = match g.regular_degree() {
                Some(d) => Some(regular_graph_entropy(g, d)?),
                None => None,
            };
            let q_entropy = match q {
                Some(q) => Some((q, q_entropy(&rho, q)?)),
                None => None,
            };
            Ok(EntropyOutput {
                source: "graph".into(),
                n: g.n(),
                entropy: rep.entropy,
                bound_max: rep.bound_max,
                regular_formula,
                circulant_approximation: None,
                q_entropy,
                eigenvalues: rep.spectrum.values,
            })
        }
        (None, Some((n, k))) => Ok(EntropyOutput {
            source: format!("circulant {n} {k}"),
            n,
            entropy: circulant_entropy_exact(n, k)?,
            bound_max: ((n - 1) as f64).log2(),
            regular_formula: None,
            circulant_approximation: Some(circulant_entropy_approx(n, k)),
            q_entropy: None,
            eigenvalues: Vec::new(),
        }),
        _ => Err(Error::InvalidArgument("give either a graph or --circulant N K".into())),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Numerical(e.to_string()))?;
    writeln!(out, "{s}").map_err(io_err)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Numerical(format!("write failed: {e}"))
}

fn fmt_values(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.9}")).collect::<Vec<_>>().join(" ")
}

fn text_analyze(out: &mut dyn Write, r: &AnalysisReport) -> std::io::Result<()> {
    writeln!(out, "vertices {}  edges {}  components {}", r.graph.n, r.graph.m, r.graph.components)?;
    writeln!(out, "spectrum {}", fmt_values(&r.spectrum))?;
    writeln!(out, "entropy {:.9} bits (max {:.9})  purity {:.9}", r.entropy, r.entropy_bound, r.purity)?;
    if let Some(s) = &r.separability {
        writeln!(out, "labeling {} ({}x{})", s.verdict.labeling, s.verdict.p, s.verdict.q)?;
        writeln!(out, "partial transpose {}", fmt_values(&s.pt_spectrum))?;
        let cert = s.verdict.certified_by.as_deref().map(|c| format!(" via {c}")).unwrap_or_default();
        writeln!(out, "verdict {}{cert}", s.verdict.status.as_str())?;
        writeln!(out, "entangled edges {:?}", s.entangled_edges)?;
        if let Some(c) = s.concurrence {
            writeln!(out, "concurrence {c:.9}")?;
        }
        if let Some(d) = &s.decomposition {
            writeln!(out, "decomposition {} states, error {:.3e}", d.states.len(), d.reconstruction_error)?;
        }
    }
    Ok(())
}

fn text_census(out: &mut dyn Write, c: &FourVertexCensus, csv: bool) -> std::io::Result<()> {
    if csv {
        return write!(out, "{}", c.to_csv());
    }
    writeln!(out, "isomorphism classes {} ({} with edges)", c.class_count, c.classes_with_edges)?;
    writeln!(out, "entangled under every labeling {}", c.entangled_for_every_labeling)?;
    writeln!(out, "entangled under some labeling {}", c.entangled_for_some_labeling)?;
    for k in &c.classes {
        let edges: Vec<String> = k.edges.iter().map(|(u, v)| format!("{u}{v}")).collect();
        writeln!(
            out,
            "{:>2}  {:<18} aut {:>2}  npt {:>2}/{}  C {}",
            k.id,
            edges.join(","),
            k.automorphisms,
            k.npt_labelings,
            k.labelings,
            fmt_values(&k.concurrence_values)
        )?;
    }
    Ok(())
}

fn text_channel(out: &mut dyn Write, t: &ChannelTrajectory) -> std::io::Result<()> {
    for s in &t.steps {
        writeln!(
            out,
            "{:<16} n {} m {}  operators {}  trace {:.12}  deviation {:.3e}",
            s.edit, s.n, s.m, s.operators, s.trace, s.deviation
        )?;
        let probs: Vec<String> = s.outcomes.iter().map(|o| format!("{}={:.6}", o.id, o.probability)).collect();
        writeln!(out, "    {}", probs.join(" "))?;
    }
    writeln!(out, "final graph edges {:?}", t.end.edges)
}

fn text_search(out: &mut dyn Write, c: &LabelingCensus) -> std::io::Result<()> {
    let method = match c.method {
        crate::separability::SearchMethod::ExhaustiveOrbits => "exhaustive over automorphism orbits",
        crate::separability::SearchMethod::Sampled => "sampled",
    };
    writeln!(out, "{}x{} on {} vertices, {method}, {} labelings evaluated", c.p, c.q, c.n, c.evaluated)?;
    writeln!(
        out,
        "SEPARABLE {}  ENTANGLED_NPT {}  PPT_INCONCLUSIVE {}",
        c.counts.separable, c.counts.entangled_npt, c.counts.ppt_inconclusive
    )?;
    for (status, w) in &c.witnesses {
        writeln!(out, "{} witness {} (min PT {:.6e})", status.as_str(), w.labeling, w.min_pt_eigenvalue)?;
    }
    Ok(())
}

fn text_probe(out: &mut dyn Write, r: &ProbeReport) -> std::io::Result<()> {
    for c in &r.cases {
        writeln!(out, "{}x{} {} over {} graphs", c.p, c.q, c.method, c.graphs_examined)?;
        for (name, t) in [("one entangled edge", &c.single_entangled_edge), ("entangled star", &c.entangled_edges_at_one_vertex)] {
            writeln!(
                out,
                "    {name}: {} instances, NPT {}, SEPARABLE {}, PPT_INCONCLUSIVE {}",
                t.instances, t.entangled_npt, t.separable, t.ppt_inconclusive
            )?;
        }
        for e in &c.counterexamples {
            writeln!(out, "    counterexample {e:?}")?;
        }
    }
    if !r.counterexample_found {
        writeln!(out, "no counterexample found")?;
    }
    Ok(())
}

fn text_entropy(out: &mut dyn Write, e: &EntropyOutput) -> std::io::Result<()> {
    writeln!(out, "{} on {} vertices: entropy {:.9} bits (max {:.9})", e.source, e.n, e.entropy, e.bound_max)?;
    if let Some(r) = e.regular_formula {
        writeln!(out, "regular-graph formula {r:.9}")?;
    }
    if let Some(a) = e.circulant_approximation {
        writeln!(out, "large-n approximation {a:.9}")?;
    }
    if let Some((q, v)) = e.q_entropy {
        writeln!(out, "q-entropy (q = {q}) {v:.9}")?;
    }
    Ok(())
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    json: bool,
    v: &T,
    text: impl FnOnce(&mut dyn Write, &T) -> std::io::Result<()>,
) -> Result<()> {
    if json {
        write_json(out, v)
    } else {
        text(out, v).map_err(io_err)
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Analyze { graph, split } => {
            let g = load_graph(graph)?;
            let lab = labeling_for(g.n(), split)?;
            emit(out, cli.json, &cmd_analyze(&g, lab.as_ref(), cli.tol)?, text_analyze)
        }
        Command::Census4 { csv } => {
            let c = four_vertex_census()?;
            emit(out, cli.json, &c, |o, c| text_census(o, c, *csv))
        }
        Command::Channel { graph, script, edits, dump_kraus } => {
            let g = load_graph(graph)?;
            let mut all = Vec::new();
            if let Some(path) = script {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                all.extend(Edit::parse_script(&text)?);
            }
            for e in edits {
                all.push(Edit::parse(e)?);
            }
            emit(out, cli.json, &cmd_channel(&g, &all, *dump_kraus)?, text_channel)
        }
        Command::Search { graph, p, q, budget, sample } => {
            let g = load_graph(graph)?;
            let opts = SearchOptions { budget: *budget, sample: *sample, seed: cli.seed, tol: cli.tol, workers: None };
            emit(out, cli.json, &labeling_search(&g, *p, *q, &opts)?, text_search)
        }
        Command::Probe { max_n, p, q, budget } => {
            let split = match (p, q) {
                (Some(p), Some(q)) => Some((*p, *q)),
                (None, None) => None,
                _ => return Err(Error::InvalidArgument("--p and --q go together".into())),
            };
            emit(out, cli.json, &cmd_probe(*max_n, split, *budget, cli.seed, cli.tol)?, text_probe)
        }
        Command::Entropy { graph, circulant, q_entropy } => {
            let g = graph.as_deref().map(load_graph).transpose()?;
            let circ = circulant.as_ref().map(|v| (v[0], v[1]));
            emit(out, cli.json, &cmd_entropy(g.as_ref(), circ, *q_entropy)?, text_entropy)
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let mut buf = Vec::new();
    let result = match cli.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut buf)),
            Err(e) => Err(Error::InvalidArgument(format!("worker pool: {e}"))),
        },
        None => dispatch(&cli, &mut buf),
    }
    .and_then(|()| out.write_all(&buf).map_err(io_err));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_precondition() {
                2
            } else {
                1
            }
        }
    }
}
