//! Bipartite structure of graph states: partial transpose, PPT verdicts,
//! entangled edges and explicit separable decompositions.

mod decompose;
mod labeling;
mod search;
mod tally;

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Serialize, Serializer};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::graph::{star, Graph};
use crate::linalg::{basis, eigensystem, max_abs, projector, CMatrix, CVector, HermitianMatrix, PSD_TOL};

pub use decompose::{complete_graph_decomposition, explicit_decomposition, product_edge_state, Certificate};
pub use labeling::BipartiteLabeling;
pub use search::{labeling_search, LabelingCensus, SearchMethod, SearchOptions, StatusCounts, DEFAULT_SEED};
pub use tally::{
    canonicalize_pe_matching, pe_matching_separability, tally_mark_decomposition, CanonicalPeMatching,
    PeMatchingDecomposition, TallyMark,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeparabilityStatus {
    Separable,
    EntangledNpt,
    PptInconclusive,
}

impl SeparabilityStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Separable => "SEPARABLE",
            Self::EntangledNpt => "ENTANGLED_NPT",
            Self::PptInconclusive => "PPT_INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparabilityVerdict {
    pub status: SeparabilityStatus,
    pub min_pt_eigenvalue: f64,
    pub p: usize,
    pub q: usize,
    #[serde(serialize_with = "display")]
    pub labeling: BipartiteLabeling,
    /// How a SEPARABLE status was established: the positive partial
    /// transpose in dimensions where that is decisive, or the name of an
    /// explicit decomposition that was built and checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_by: Option<String>,
}

fn display<S: Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// True in the dimensions where a positive partial transpose already
/// implies separability.
pub fn ppt_is_decisive(p: usize, q: usize) -> bool {
    p.min(q) == 1 || (p.min(q) == 2 && p.max(q) <= 3)
}

/// Transposes the second factor: entry `((s,t),(s',t'))` becomes
/// `ρ((s,t'),(s',t))`. The result stays in the vertex basis.
pub fn partial_transpose(rho: &HermitianMatrix, lab: &BipartiteLabeling) -> Result<HermitianMatrix> {
    lab.check_dim(rho.dim())?;
    Ok(rho.gather(|x, y| {
        let (sx, tx) = lab.coords(x);
        let (sy, ty) = lab.coords(y);
        (lab.vertex_at(sx, ty), lab.vertex_at(sy, tx))
    }))
}

pub fn ppt_test(rho: &DensityMatrix, lab: &BipartiteLabeling, tol: f64) -> Result<SeparabilityVerdict> {
    lab.check_density(rho)?;
    let pt = partial_transpose(rho.mat(), lab)?;
    let min = eigensystem(&pt).min();
    let (p, q) = (lab.p(), lab.q());
    let (status, certified_by) = if min < -tol {
        (SeparabilityStatus::EntangledNpt, None)
    } else if ppt_is_decisive(p, q) {
        (SeparabilityStatus::Separable, Some("ppt".to_string()))
    } else {
        (SeparabilityStatus::PptInconclusive, None)
    };
    Ok(SeparabilityVerdict { status, min_pt_eigenvalue: min, p, q, labeling: lab.clone(), certified_by })
}

/// `ppt_test` followed, for a PPT_INCONCLUSIVE outcome on a graph state,
/// by an attempt to build and verify an explicit decomposition.
pub fn classify(g: &Graph, rho: &DensityMatrix, lab: &BipartiteLabeling, tol: f64) -> Result<SeparabilityVerdict> {
    let mut v = ppt_test(rho, lab, tol)?;
    if v.status == SeparabilityStatus::PptInconclusive {
        if let Some(cert) = explicit_decomposition(g, lab)? {
            v.status = SeparabilityStatus::Separable;
            v.certified_by = Some(cert.method.to_string());
        }
    }
    Ok(v)
}

/// Edges whose endpoints differ in both coordinates.
pub fn entangled_edges(g: &Graph, lab: &BipartiteLabeling) -> Result<Vec<(usize, usize)>> {
    lab.check_dim(g.n())?;
    Ok(g.edges().iter().copied().filter(|&(u, v)| is_entangled(lab, u, v)).collect())
}

pub(crate) fn is_entangled(lab: &BipartiteLabeling, u: usize, v: usize) -> bool {
    let (a, b) = (lab.coords(u), lab.coords(v));
    a.0 != b.0 && a.1 != b.1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchingClass {
    NotMatching,
    Matching,
    EMatching,
    PeMatching,
}

/// Strongest of: matching (vertex-disjoint edges), e-matching (all edges
/// also entangled), pe-matching (an e-matching covering every vertex).
pub fn classify_matching(g: &Graph, lab: &BipartiteLabeling) -> Result<MatchingClass> {
    lab.check_dim(g.n())?;
    let mut covered = vec![false; g.n()];
    for &(u, v) in g.edges() {
        if covered[u] || covered[v] {
            return Ok(MatchingClass::NotMatching);
        }
        covered[u] = true;
        covered[v] = true;
    }
    if !g.edges().iter().all(|&(u, v)| is_entangled(lab, u, v)) {
        return Ok(MatchingClass::Matching);
    }
    if covered.iter().all(|&c| c) {
        Ok(MatchingClass::PeMatching)
    } else {
        Ok(MatchingClass::EMatching)
    }
}

/// `weight · P[left ⊗ right]` with unit-norm factors.
#[derive(Clone, Debug)]
pub struct ProductState {
    pub left: CVector,
    pub right: CVector,
    pub weight: f64,
}

impl ProductState {
    pub fn new(left: CVector, right: CVector, weight: f64) -> Self {
        Self { left, right, weight }
    }

    /// `left ⊗ right`, indexed by `s·q + t`.
    pub fn vector(&self) -> CVector {
        self.left.kronecker(&self.right)
    }

    pub fn factors_normalized(&self, tol: f64) -> bool {
        (self.left.norm() - 1.0).abs() <= tol && (self.right.norm() - 1.0).abs() <= tol
    }
}

impl Serialize for ProductState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let pairs = |v: &CVector| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>();
        let mut st = s.serialize_struct("ProductState", 3)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("left", &pairs(&self.left))?;
        st.serialize_field("right", &pairs(&self.right))?;
        st.end()
    }
}

/// `Σ w_i P[left_i ⊗ right_i]` in the tensor basis.
pub fn product_mixture(states: &[ProductState], dim: usize) -> CMatrix {
    let mut acc = CMatrix::zeros(dim, dim);
    for st in states {
        acc += projector(&st.vector()) * crate::linalg::c(st.weight, 0.0);
    }
    acc
}

/// Largest entrywise deviation between `ρ` (moved to the tensor basis of
/// `lab`) and the mixture of `states`.
pub fn decomposition_error(rho: &HermitianMatrix, lab: &BipartiteLabeling, states: &[ProductState]) -> Result<f64> {
    let target = lab.to_tensor_basis(rho)?.to_complex();
    for st in states {
        if st.left.len() != lab.p() || st.right.len() != lab.q() {
            return Err(Error::DimensionMismatch { expected: lab.n(), actual: st.left.len() * st.right.len() });
        }
    }
    Ok(max_abs(&(product_mixture(states, lab.n()) - target)))
}

/// True when the weights sum to one, every factor is a unit vector and the
/// mixture equals `ρ` entrywise, all within `tol`.
pub fn verify_separable_decomposition(
    rho: &HermitianMatrix,
    lab: &BipartiteLabeling,
    states: &[ProductState],
    tol: f64,
) -> Result<bool> {
    let wsum: f64 = states.iter().map(|s| s.weight).sum();
    if (wsum - 1.0).abs() > tol || states.iter().any(|s| s.weight < -tol || !s.factors_normalized(tol)) {
        return Ok(false);
    }
    Ok(decomposition_error(rho, lab, states)? <= tol)
}

/// The 2⊗2 corner of `σ(K_{1,n−1})` spanned by vertices `(0,0)`, `(0,1)`,
/// `(1,0)`, `(1,1)` of the default labeling, root at `(0,0)`. Left
/// unnormalized.
#[derive(Clone, Debug)]
pub struct StarWitness {
    pub projected: HermitianMatrix,
    pub partial_transpose: HermitianMatrix,
    /// From the eigensolver, ascending.
    pub pt_eigenvalues: Vec<f64>,
    /// From the closed form, ascending.
    pub formula_eigenvalues: Vec<f64>,
}

pub fn star_projection_witness(n: usize, p: usize, q: usize) -> Result<StarWitness> {
    if n < 4 || p < 2 || q < 2 || p * q != n {
        return Err(Error::InvalidArgument(format!("need n = p·q >= 4 with p, q >= 2 (n={n}, p={p}, q={q})")));
    }
    let rho = crate::density::density_of_graph(&star(n)?)?;
    let idx = [0, 1, q, q + 1];
    let projected = rho.mat().principal_submatrix(&idx);
    let corner = BipartiteLabeling::default_for(2, 2)?;
    let pt = partial_transpose(&projected, &corner)?;
    let pt_eigenvalues = eigensystem(&pt).values;
    let k = (n - 1) as f64;
    let root = (k * k + 8.0).sqrt() / k;
    let mut formula_eigenvalues = vec![1.0 / (2.0 * k), 1.0 / k, (1.0 + root) / 4.0, (1.0 - root) / 4.0];
    formula_eigenvalues.sort_by(f64::total_cmp);
    Ok(StarWitness { projected, partial_transpose: pt, pt_eigenvalues, formula_eigenvalues })
}

pub(crate) fn unit(n: usize, i: usize) -> CVector {
    basis(n, i)
}

/// `(|a⟩ + sign·|b⟩)/√2`.
pub(crate) fn pair_vector(n: usize, a: usize, b: usize, sign: f64) -> CVector {
    let mut v = CVector::zeros(n);
    v[a] += crate::linalg::c(FRAC_1_SQRT_2, 0.0);
    v[b] += crate::linalg::c(sign * FRAC_1_SQRT_2, 0.0);
    v
}

pub(crate) const DEFAULT_TOL: f64 = PSD_TOL;
