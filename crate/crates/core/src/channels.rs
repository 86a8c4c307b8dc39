//! Kraus channels that turn the state of a graph into the state of an
//! edited graph.
//!
//! Edge deletion and addition are measure-and-prepare channels: measure in
//! a basis adapted to the edited edge, then rotate the outcome onto one of
//! the rank-one terms `P[(|i⟩ − |j⟩)/√2]` of the target state, each chosen
//! with equal weight.

use num_complex::Complex64;
use serde::Serialize;

use crate::concurrence::concurrence_labeled;
use crate::density::{density_of_graph, density_with_loops, DensityMatrix};
use crate::error::{Error, Result};
use crate::graph::{all_permutations, Graph};
use crate::linalg::{basis, c, projector, CMatrix, CVector, HermitianMatrix};
use crate::separability::{classify, ppt_test, BipartiteLabeling, SeparabilityStatus, DEFAULT_TOL};

/// Tolerance for `Σ A†A = I` and for the unit-norm checks.
pub const COMPLETENESS_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct KrausChannel {
    operators: Vec<CMatrix>,
    input_dim: usize,
    output_dim: usize,
    label: String,
}

impl KrausChannel {
    /// Checks shapes and completeness.
    pub fn new(operators: Vec<CMatrix>, label: impl Into<String>) -> Result<Self> {
        let first = operators.first().ok_or_else(|| Error::InvalidArgument("channel has no operators".into()))?;
        let (output_dim, input_dim) = first.shape();
        if let Some(bad) = operators.iter().find(|a| a.shape() != (output_dim, input_dim)) {
            return Err(Error::DimensionMismatch { expected: output_dim * input_dim, actual: bad.len() });
        }
        let ch = Self { operators, input_dim, output_dim, label: label.into() };
        let dev = ch.completeness_error();
        if dev > COMPLETENESS_TOL {
            return Err(Error::InvalidArgument(format!("Kraus operators miss completeness by {dev:e}")));
        }
        Ok(ch)
    }

    pub fn identity(dim: usize) -> Self {
        Self { operators: vec![CMatrix::identity(dim, dim)], input_dim: dim, output_dim: dim, label: "identity".into() }
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `max |Σ A†A − I|`.
    pub fn completeness_error(&self) -> f64 {
        let mut sum = CMatrix::zeros(self.input_dim, self.input_dim);
        for a in &self.operators {
            sum += a.adjoint() * a;
        }
        sum -= CMatrix::identity(self.input_dim, self.input_dim);
        sum.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `Λ(ρ) = Σ A ρ A†` on a bare matrix.
    pub fn apply_to(&self, rho: &HermitianMatrix) -> Result<HermitianMatrix> {
        if rho.dim() != self.input_dim {
            return Err(Error::DimensionMismatch { expected: self.input_dim, actual: rho.dim() });
        }
        let r = rho.to_complex();
        let mut out = CMatrix::zeros(self.output_dim, self.output_dim);
        for a in &self.operators {
            out += a * &r * a.adjoint();
        }
        HermitianMatrix::from_complex(out, 1e-10)
    }

    /// Operators as `[[[re, im], ...], ...]` arrays.
    pub fn to_json(&self) -> serde_json::Value {
        let mats: Vec<Vec<Vec<[f64; 2]>>> = self
            .operators
            .iter()
            .map(|a| (0..a.nrows()).map(|i| (0..a.ncols()).map(|j| [a[(i, j)].re, a[(i, j)].im]).collect()).collect())
            .collect();
        serde_json::json!({
            "label": self.label,
            "input_dim": self.input_dim,
            "output_dim": self.output_dim,
            "operators": mats,
        })
    }
}

pub fn apply_channel(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    DensityMatrix::from_hermitian(ch.apply_to(rho.mat())?, 1e-9)
}

fn check_unit(v: &CVector, what: &str) -> Result<()> {
    let norm = v.norm();
    if (norm - 1.0).abs() > COMPLETENESS_TOL {
        return Err(Error::InvalidArgument(format!("{what} has norm {norm}")));
    }
    Ok(())
}

/// Householder reflection `H = I − 2vv†/(v†v)` with `v = x + φ e₁`,
/// `φ = x₁/|x₁|` (1 when `x₁ = 0`). It sends `x` to `−φ e₁`.
fn householder(x: &CVector) -> (CMatrix, Complex64) {
    let n = x.len();
    let phase = if x[0].norm() > 1e-300 { x[0] / x[0].norm() } else { c(1.0, 0.0) };
    let mut v = x.clone();
    v[0] += phase;
    let h = CMatrix::identity(n, n) - (&v * v.adjoint()) * c(2.0 / v.norm_squared(), 0.0);
    (h, phase)
}

/// A unitary with `U·source = target`, built from the two reflections
/// through `e₁`. Equal inputs give the identity.
pub fn complete_to_unitary(source: &CVector, target: &CVector) -> Result<CMatrix> {
    if source.len() != target.len() {
        return Err(Error::DimensionMismatch { expected: source.len(), actual: target.len() });
    }
    check_unit(source, "source")?;
    check_unit(target, "target")?;
    let (hs, ps) = householder(source);
    let (ht, pt) = householder(target);
    Ok(ht * hs * (pt / ps))
}

/// `(|a⟩ + sign·|b⟩)/√2`.
fn edge_vector(n: usize, a: usize, b: usize, sign: f64) -> CVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = CVector::zeros(n);
    v[a] = c(s, 0.0);
    v[b] += c(sign * s, 0.0);
    v
}

/// The measurement basis for edge `{i, j}`: `(|i⟩ ± |j⟩)/√2`, then the
/// remaining vertices in order.
fn edge_basis(n: usize, i: usize, j: usize) -> Vec<(String, CVector)> {
    let mut out = vec![("plus".to_string(), edge_vector(n, i, j, 1.0)), ("minus".to_string(), edge_vector(n, i, j, -1.0))];
    for x in (0..n).filter(|&x| x != i && x != j) {
        out.push((format!("vertex:{}", x + 1), basis(n, x)));
    }
    out
}

/// Measure in the basis of `(u, v)` and prepare one of `targets` with equal
/// weight.
fn measure_and_prepare(n: usize, u: usize, v: usize, targets: &[(usize, usize)], label: String) -> Result<KrausChannel> {
    let w = c(1.0 / (targets.len() as f64).sqrt(), 0.0);
    let mut ops = Vec::with_capacity(n * targets.len());
    for (_, b) in edge_basis(n, u, v) {
        let p = projector(&b);
        for &(a, bb) in targets {
            let u_op = complete_to_unitary(&b, &edge_vector(n, a, bb, -1.0))?;
            ops.push(u_op * &p * w);
        }
    }
    KrausChannel::new(ops, label)
}

fn loop_free(g: &Graph) -> Result<()> {
    if g.total_loops() > 0 {
        return Err(Error::Precondition("channels act on loop-free graphs".into()));
    }
    Ok(())
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Channel sending `σ(G)` to `σ(G − {u, v})`; `n(m − 1)` operators.
pub fn edge_deletion_channel(g: &Graph, edge: (usize, usize)) -> Result<KrausChannel> {
    loop_free(g)?;
    let (u, v) = ordered(edge.0, edge.1);
    if !g.has_edge(u, v) {
        return Err(Error::MissingEdge(u + 1, v + 1));
    }
    if g.m() < 2 {
        return Err(Error::Precondition("deleting the only edge leaves no graph state".into()));
    }
    let rest: Vec<_> = g.edges().iter().copied().filter(|&e| e != (u, v)).collect();
    measure_and_prepare(g.n(), u, v, &rest, format!("del-edge {} {}", u + 1, v + 1))
}

/// Channel sending `σ(G)` to `σ(G + {u, v})`; `n(m + 1)` operators.
pub fn edge_addition_channel(g: &Graph, edge: (usize, usize)) -> Result<KrausChannel> {
    loop_free(g)?;
    let (u, v) = ordered(edge.0, edge.1);
    if u == v || v >= g.n() {
        return Err(Error::InvalidArgument(format!("cannot add {{{}, {}}}", u + 1, v + 1)));
    }
    if g.has_edge(u, v) {
        return Err(Error::DuplicateEdge(u + 1, v + 1));
    }
    let target = g.with_edge(u, v)?;
    measure_and_prepare(g.n(), u, v, target.edges(), format!("add-edge {} {}", u + 1, v + 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct MeasurementOutcome {
    /// `plus`, `minus` or `vertex:i` (1-based).
    pub id: String,
    pub probability: f64,
    #[serde(skip)]
    pub post_state: DensityMatrix,
}

/// Outcome probabilities of the edge measurement on `σ(G)`, from the
/// Kronecker-delta sums over the edge list.
pub fn measurement_probabilities(g: &Graph, edge: (usize, usize)) -> Result<Vec<MeasurementOutcome>> {
    loop_free(g)?;
    let (ik, jk) = ordered(edge.0, edge.1);
    let k = g.edge_index(ik, jk).ok_or_else(|| Error::MissingEdge(ik + 1, jk + 1))?;
    let m = g.m() as f64;
    let d = |a: usize, b: usize| -> f64 { if a == b { 1.0 } else { 0.0 } };
    let edges = g.edges();
    let mut probs = Vec::new();
    let plus: f64 = edges
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != k)
        .map(|(_, &(il, jl))| (d(ik, il) - d(ik, jl) + d(jk, il) - d(jk, jl)).powi(2))
        .sum();
    probs.push(plus / (4.0 * m));
    let minus: f64 =
        edges.iter().map(|&(il, jl)| (d(ik, il) - d(ik, jl) - d(jk, il) + d(jk, jl)).powi(2)).sum();
    probs.push(minus / (4.0 * m));
    for x in (0..g.n()).filter(|&x| x != ik && x != jk) {
        let s: f64 = edges.iter().map(|&(il, jl)| (d(x, il) - d(x, jl)).powi(2)).sum();
        probs.push(s / (2.0 * m));
    }
    edge_basis(g.n(), ik, jk)
        .into_iter()
        .zip(probs)
        .map(|((id, b), probability)| {
            let post = HermitianMatrix::from_complex(projector(&b), 1e-12)?;
            Ok(MeasurementOutcome { id, probability, post_state: DensityMatrix::from_parts(post, None, None) })
        })
        .collect()
}

/// `tr(Qρ)` and the compressed post-measurement state `QρQ/tr(Qρ)`
/// restricted to `keep`, where `Q` is the coordinate projector onto `keep`.
fn project_and_compress(rho: &HermitianMatrix, keep: &[usize]) -> Result<(f64, HermitianMatrix)> {
    let sub = rho.principal_submatrix(keep);
    let p = sub.trace();
    if p <= 0.0 {
        return Err(Error::Numerical("projector never clicks".into()));
    }
    Ok((p, sub.scale(1.0 / p)))
}

#[derive(Clone, Debug, Serialize)]
pub struct EditStep {
    pub label: String,
    pub operators: usize,
    /// `max |Λ(ρ) − σ(target)|` after this step.
    pub deviation: f64,
}

#[derive(Clone, Debug)]
pub struct VertexEdit {
    pub state: DensityMatrix,
    pub graph: Graph,
    pub steps: Vec<EditStep>,
    /// Probability that the discarded subspace clicks; zero in exact
    /// arithmetic.
    pub discard_probability: f64,
    /// `max |state − σ(graph)|`.
    pub deviation: f64,
}

/// Deletes every edge of `edges` from `g` in turn, applying the channels
/// to `rho`.
fn delete_edges(
    mut g: Graph,
    mut rho: HermitianMatrix,
    edges: &[(usize, usize)],
    steps: &mut Vec<EditStep>,
) -> Result<(Graph, HermitianMatrix)> {
    for &e in edges {
        let ch = edge_deletion_channel(&g, e)?;
        rho = ch.apply_to(&rho)?;
        g = g.without_edge(e.0, e.1)?;
        let deviation = rho.max_abs_diff(density_of_graph(&g)?.mat());
        steps.push(EditStep { label: ch.label().to_string(), operators: ch.len(), deviation });
    }
    Ok((g, rho))
}

/// Deletes the edges at `v` in ascending order, measures
/// `{I − P[|v⟩], P[|v⟩]}` and drops the row and column of `v`.
pub fn delete_vertex_procedure(g: &Graph, v: usize) -> Result<VertexEdit> {
    loop_free(g)?;
    let reduced = g.without_vertex(v)?;
    reduced.require_edges()?;
    let incident: Vec<_> = g.edges().iter().copied().filter(|&(a, b)| a == v || b == v).collect();
    let mut steps = Vec::new();
    let (_, rho) = delete_edges(g.clone(), density_of_graph(g)?.into_mat(), &incident, &mut steps)?;
    let keep: Vec<usize> = (0..g.n()).filter(|&x| x != v).collect();
    let (p, state) = project_and_compress(&rho, &keep)?;
    let deviation = state.max_abs_diff(density_of_graph(&reduced)?.mat());
    Ok(VertexEdit {
        state: DensityMatrix::from_hermitian(state, 1e-9)?,
        graph: reduced,
        steps,
        discard_probability: (1.0 - p).max(0.0),
        deviation,
    })
}

/// Tensors `σ(G)` with the two-loop state `(P[|u₁⟩] + P[|u₂⟩])/2`, deletes
/// every edge of the `u₂` copy, then discards `u₂v₂ … u₂vₙ`. The result
/// lives on `u₁v₁ … u₁vₙ, u₂v₁`, i.e. `σ(G ⊎ {x})`.
pub fn add_vertex_procedure(g: &Graph) -> Result<VertexEdit> {
    loop_free(g)?;
    g.require_edges()?;
    let n = g.n();
    let mut h = Graph::empty(2);
    h.add_loops(0, 1)?;
    h.add_loops(1, 1)?;
    let rho = density_with_loops(&h)?.mat().kron(density_of_graph(g)?.mat());
    let doubled = g.disjoint_union(g);
    let second: Vec<_> = doubled.edges().iter().copied().filter(|&(a, _)| a >= n).collect();
    let mut steps = Vec::new();
    let (_, rho) = delete_edges(doubled, rho, &second, &mut steps)?;
    let keep: Vec<usize> = (0..=n).collect();
    let (p, state) = project_and_compress(&rho, &keep)?;
    let grown = g.with_isolated_vertex();
    let deviation = state.max_abs_diff(density_of_graph(&grown)?.mat());
    Ok(VertexEdit {
        state: DensityMatrix::from_hermitian(state, 1e-9)?,
        graph: grown,
        steps,
        discard_probability: (1.0 - p).max(0.0),
        deviation,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LoccReport {
    pub crossing_status: SeparabilityStatus,
    pub crossing_certified_by: Option<String>,
    pub bell_status: SeparabilityStatus,
    pub bell_min_pt_eigenvalue: f64,
    pub bell_concurrence: f64,
    /// `K_4 − e` minus the edge joining its two degree-3 vertices, checked
    /// under all 24 labelings.
    pub k4_minus_two_separable_labelings: usize,
    pub k4_minus_two_labelings: usize,
    pub narrative: String,
}

/// The two 2⊗2 facts that rule out deleting an edge of a crossing pair by
/// local operations, and the `K_4 − e` case where deletion is harmless.
pub fn locc_principle_examples() -> Result<LoccReport> {
    let lab = BipartiteLabeling::default_for(2, 2)?;
    // vertex 2s + t sits at (s, t): {11,22} is (0,3), {12,21} is (1,2)
    let crossing = Graph::from_edges(4, &[(0, 3), (1, 2)])?;
    let rho = density_of_graph(&crossing)?;
    let cross = classify(&crossing, &rho, &lab, DEFAULT_TOL)?;
    let bell_graph = crossing.without_edge(1, 2)?;
    let bell = density_of_graph(&bell_graph)?;
    let bell_pt = ppt_test(&bell, &lab, DEFAULT_TOL)?;
    let bell_c = concurrence_labeled(bell.mat(), &lab)?.value;

    let k4e = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    let target = k4e.without_edge(2, 3)?;
    let sigma = density_of_graph(&target)?;
    let perms = all_permutations(4);
    let mut separable = 0;
    for perm in &perms {
        let l = BipartiteLabeling::from_permutation(2, 2, perm)?;
        if classify(&target, &sigma, &l, DEFAULT_TOL)?.status == SeparabilityStatus::Separable {
            separable += 1;
        }
    }
    let narrative = format!(
        "sigma of the crossing pair {{11,22}},{{12,21}} is {}; deleting {{12,21}} leaves the Bell projector, \
         which is {} with concurrence {:.6}. A local channel would turn a separable state into an entangled one, \
         so no LOCC deletes that edge. For K4-e, removing the edge between the degree-3 vertices gives a state \
         separable under {}/{} labelings.",
        cross.status.as_str(),
        bell_pt.status.as_str(),
        bell_c,
        separable,
        perms.len()
    );
    Ok(LoccReport {
        crossing_status: cross.status,
        crossing_certified_by: cross.certified_by,
        bell_status: bell_pt.status,
        bell_min_pt_eigenvalue: bell_pt.min_pt_eigenvalue,
        bell_concurrence: bell_c,
        k4_minus_two_separable_labelings: separable,
        k4_minus_two_labelings: perms.len(),
        narrative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path, star};
    use crate::linalg::max_abs;
    use proptest::prelude::*;

    fn unit_vec(v: &[(f64, f64)]) -> CVector {
        let x = CVector::from_iterator(v.len(), v.iter().map(|&(a, b)| c(a, b)));
        let n = x.norm();
        x / c(n, 0.0)
    }

    #[test]
    fn unitary_completion() {
        let e1 = basis(3, 0);
        let t = unit_vec(&[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        let u = complete_to_unitary(&e1, &t).unwrap();
        assert!(max_abs(&(u.adjoint() * &u - CMatrix::identity(3, 3))) < 1e-12);
        assert!(max_abs(&(CMatrix::from_columns(&[&u * &e1 - &t]))) < 1e-12);
        let same = complete_to_unitary(&t, &t).unwrap();
        assert!(max_abs(&(same - CMatrix::identity(3, 3))) < 1e-12);
        assert!(complete_to_unitary(&CVector::zeros(3), &t).is_err());
    }

    proptest! {
        #[test]
        fn unitary_completion_random(v in prop::collection::vec(-1.0f64..1.0, 16)) {
            let s: Vec<_> = (0..4).map(|i| (v[2 * i], v[2 * i + 1])).collect();
            let t: Vec<_> = (4..8).map(|i| (v[2 * i], v[2 * i + 1])).collect();
            let (s, t) = (unit_vec(&s), unit_vec(&t));
            prop_assume!(s.norm().is_finite() && t.norm().is_finite());
            let u = complete_to_unitary(&s, &t).unwrap();
            prop_assert!(max_abs(&(u.adjoint() * &u - CMatrix::identity(4, 4))) < 1e-12);
            prop_assert!((&u * &s - &t).norm() < 1e-10);
            prop_assert!((u.determinant().norm() - 1.0).abs() < 1e-9);
        }

        #[test]
        fn channels_preserve_trace_and_positivity(v in prop::collection::vec(-1.0f64..1.0, 50), mask in 1u64..1024) {
            let g = Graph::from_edge_mask(5, mask);
            prop_assume!(g.m() >= 2);
            let a = CMatrix::from_fn(5, 5, |i, j| c(v[5 * i + j], v[25 + 5 * i + j]));
            let r = &a * a.adjoint();
            let r = &r / r.trace();
            let rho = DensityMatrix::from_hermitian(HermitianMatrix::from_complex(r, 1e-12).unwrap(), 1e-9).unwrap();
            let e = g.edges()[0];
            let out = apply_channel(&edge_deletion_channel(&g, e).unwrap(), &rho).unwrap();
            prop_assert!((out.mat().trace() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn deletion_and_round_trip() {
        let g = path(4).unwrap();
        let sigma = density_of_graph(&g).unwrap();
        let ch = edge_deletion_channel(&g, (1, 2)).unwrap();
        assert_eq!(ch.len(), 2 * 2 + 2 * 2);
        assert!(ch.completeness_error() < 1e-10);
        let cut = apply_channel(&ch, &sigma).unwrap();
        let smaller = g.without_edge(1, 2).unwrap();
        assert!(cut.mat().max_abs_diff(density_of_graph(&smaller).unwrap().mat()) < 1e-10);
        let add = edge_addition_channel(&smaller, (2, 1)).unwrap();
        assert_eq!(add.len(), 4 * 3);
        let back = apply_channel(&add, &cut).unwrap();
        assert!(back.mat().max_abs_diff(sigma.mat()) < 1e-10);
        assert!(edge_deletion_channel(&g, (0, 2)).is_err());
        assert!(edge_deletion_channel(&path(2).unwrap(), (0, 1)).is_err());
        assert!(edge_addition_channel(&g, (0, 1)).is_err());
    }

    #[test]
    fn identity_channel() {
        let rho = density_of_graph(&star(4).unwrap()).unwrap();
        let out = apply_channel(&KrausChannel::identity(4), &rho).unwrap();
        assert!(out.mat().max_abs_diff(rho.mat()) < 1e-15);
        assert!(KrausChannel::new(vec![CMatrix::identity(2, 2) * c(0.5, 0.0)], "bad").is_err());
    }

    #[test]
    fn probabilities_match_traces() {
        let mut g = path(4).unwrap().with_isolated_vertex();
        g.add_edge(0, 2).unwrap();
        for &e in g.edges() {
            let outcomes = measurement_probabilities(&g, e).unwrap();
            let sigma = density_of_graph(&g).unwrap().mat().to_complex();
            let total: f64 = outcomes.iter().map(|o| o.probability).sum();
            assert!((total - 1.0).abs() < 1e-12);
            for o in &outcomes {
                let direct = (o.post_state.mat().to_complex() * &sigma).trace().re;
                assert!((direct - o.probability).abs() < 1e-12, "{}", o.id);
            }
            let minus = &outcomes[1];
            assert!(minus.probability >= 1.0 / g.m() as f64 - 1e-12);
        }
        let isolated = measurement_probabilities(&g, (0, 1)).unwrap();
        assert_eq!(isolated.last().unwrap().id, "vertex:5");
        assert_eq!(isolated.last().unwrap().probability, 0.0);
    }

    #[test]
    fn vertex_deletion() {
        let k3 = delete_vertex_procedure(&complete(3).unwrap(), 2).unwrap();
        assert_eq!(k3.graph, path(2).unwrap());
        assert!(k3.deviation < 1e-10 && k3.discard_probability.abs() < 1e-10);
        let claw = delete_vertex_procedure(&star(4).unwrap(), 3).unwrap();
        assert_eq!(claw.graph, star(3).unwrap());
        assert!(claw.deviation < 1e-10);
        assert!(delete_vertex_procedure(&path(2).unwrap(), 0).is_err());
    }

    #[test]
    fn vertex_addition() {
        let k2 = add_vertex_procedure(&path(2).unwrap()).unwrap();
        assert_eq!(k2.state.dim(), 3);
        assert!(k2.deviation < 1e-10 && k2.discard_probability.abs() < 1e-10);
        assert!((k2.state.mat().trace() - 1.0).abs() < 1e-10);
        let p4 = add_vertex_procedure(&path(4).unwrap()).unwrap();
        assert!(p4.deviation < 1e-10);
        assert!(p4.steps.iter().all(|s| s.deviation < 1e-10));
    }

    #[test]
    fn locc_examples() {
        let r = locc_principle_examples().unwrap();
        assert_eq!(r.crossing_status, SeparabilityStatus::Separable);
        assert_eq!(r.bell_status, SeparabilityStatus::EntangledNpt);
        assert!((r.bell_concurrence - 1.0).abs() < 1e-9);
        assert_eq!(r.k4_minus_two_separable_labelings, 24);
    }

    #[test]
    fn dump_shape() {
        let ch = edge_deletion_channel(&path(3).unwrap(), (0, 1)).unwrap();
        let v = ch.to_json();
        assert_eq!(v["operators"].as_array().unwrap().len(), 3);
        assert_eq!(v["operators"][0].as_array().unwrap().len(), 3);
    }
}
