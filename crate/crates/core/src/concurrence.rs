//! Wootters concurrence of two-qubit states and the census of all graphs
//! on four vertices in `C^2 ⊗ C^2`.

use num_complex::Complex64;
use serde::Serialize;

use crate::density::density_of_graph;
use crate::error::{Error, Result};
use crate::graph::{all_permutations, isomorphism_classes, Graph};
use crate::linalg::{eigensystem, psd_sqrt, CMatrix, CVector, HermitianMatrix, PSD_TOL};
use crate::separability::{partial_transpose, BipartiteLabeling};

/// Symmetrized products with an eigenvalue below this signal a failure.
const SYMMETRIZED_NEG_TOL: f64 = 1e-8;
/// Values this close are reported as one concurrence value.
const VALUE_MERGE_TOL: f64 = 1e-9;

/// `σ_y ⊗ σ_y` with `σ_y = −i|1⟩⟨2| + i|2⟩⟨1|`.
fn sigma_yy() -> CMatrix {
    let sy = CMatrix::from_row_slice(
        2,
        2,
        &[Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
    );
    sy.kronecker(&sy)
}

fn check_two_qubit(dim: usize) -> Result<()> {
    if dim != 4 {
        return Err(Error::DimensionMismatch { expected: 4, actual: dim });
    }
    Ok(())
}

/// `ρ̃ = (σ_y ⊗ σ_y) ρ* (σ_y ⊗ σ_y)`, with `ρ` given in the tensor basis.
pub fn spin_flip(rho: &HermitianMatrix) -> Result<HermitianMatrix> {
    check_two_qubit(rho.dim())?;
    let y = sigma_yy();
    let conj = rho.to_complex().map(|z| z.conj());
    HermitianMatrix::from_complex(&y * conj * &y, 1e-12)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcurrenceResult {
    pub value: f64,
    /// Square roots of the eigenvalues of `ρρ̃`, descending.
    pub lambdas: [f64; 4],
}

/// Concurrence of a 4×4 state in the tensor basis. The eigenvalues of
/// `ρρ̃` are taken from the similar Hermitian matrix `√ρ ρ̃ √ρ`.
pub fn concurrence(rho: &HermitianMatrix) -> Result<ConcurrenceResult> {
    check_two_qubit(rho.dim())?;
    let root = psd_sqrt(rho)?.to_complex();
    let flipped = spin_flip(rho)?.to_complex();
    let sym = HermitianMatrix::from_complex(&root * flipped * &root, 1e-10)?;
    let spec = eigensystem(&sym);
    if spec.min() < -SYMMETRIZED_NEG_TOL {
        return Err(Error::Numerical(format!("symmetrized product has eigenvalue {:e}", spec.min())));
    }
    let floor = 1e-12 * spec.max().abs().max(1e-300);
    let mut lambdas = [0.0; 4];
    for (slot, &x) in lambdas.iter_mut().zip(spec.values.iter().rev()) {
        *slot = if x <= floor { 0.0 } else { x.sqrt() };
    }
    let value = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
    Ok(ConcurrenceResult { value, lambdas })
}

/// Concurrence of a graph state under a 2⊗2 labeling.
pub fn concurrence_labeled(rho: &HermitianMatrix, lab: &BipartiteLabeling) -> Result<ConcurrenceResult> {
    if lab.p() != 2 || lab.q() != 2 {
        return Err(Error::Precondition("concurrence needs a 2x2 labeling".into()));
    }
    concurrence(&lab.to_tensor_basis(rho)?)
}

/// `√(2(1 − tr ρ_A²))` for a unit vector `ψ ∈ C^2 ⊗ C^2`.
pub fn pure_state_concurrence(psi: &CVector) -> Result<f64> {
    check_two_qubit(psi.len())?;
    if (psi.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidArgument(format!("state has norm {}", psi.norm())));
    }
    let m = CMatrix::from_fn(2, 2, |s, t| psi[2 * s + t]);
    let rho_a = &m * m.adjoint();
    let purity = (&rho_a * &rho_a).trace().re;
    Ok((2.0 * (1.0 - purity)).max(0.0).sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusClass {
    pub id: usize,
    /// 1-based vertex pairs of the representative.
    pub edges: Vec<(usize, usize)>,
    pub automorphisms: usize,
    pub labelings: usize,
    pub npt_labelings: usize,
    pub entangled_for_every_labeling: bool,
    pub entangled_for_some_labeling: bool,
    /// Distinct concurrence values over the entangled labelings, ascending.
    pub concurrence_values: Vec<f64>,
    /// Largest `−λ_min` of the symmetrized product over all labelings.
    pub worst_symmetrized_negativity: f64,
    /// Labelings where "concurrence > 1e-9" and "partial transpose has an
    /// eigenvalue < −1e-9" disagree.
    pub cross_validation_mismatches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FourVertexCensus {
    /// Isomorphism classes of graphs on four vertices, the empty graph
    /// included.
    pub class_count: usize,
    pub classes_with_edges: usize,
    pub entangled_for_every_labeling: usize,
    pub entangled_for_some_labeling: usize,
    pub classes: Vec<CensusClass>,
}

fn symmetrized_min(rho: &HermitianMatrix) -> Result<f64> {
    let root = psd_sqrt(rho)?.to_complex();
    let sym = HermitianMatrix::from_complex(&root * spin_flip(rho)?.to_complex() * &root, 1e-10)?;
    Ok(eigensystem(&sym).min())
}

fn census_class(id: usize, g: &Graph) -> Result<CensusClass> {
    let rho = density_of_graph(g)?;
    let perms = all_permutations(4);
    let mut npt = 0;
    let mut values: Vec<f64> = Vec::new();
    let mut mismatches = 0;
    let mut worst: f64 = 0.0;
    for perm in &perms {
        let lab = BipartiteLabeling::from_permutation(2, 2, perm)?;
        let pt_min = eigensystem(&partial_transpose(rho.mat(), &lab)?).min();
        let tensor = lab.to_tensor_basis(rho.mat())?;
        let c = concurrence(&tensor)?.value;
        worst = worst.max(-symmetrized_min(&tensor)?);
        let is_npt = pt_min < -PSD_TOL;
        if is_npt != (c > PSD_TOL) {
            mismatches += 1;
        }
        if is_npt {
            npt += 1;
        }
        if c > PSD_TOL {
            values.push(c);
        }
    }
    values.sort_by(f64::total_cmp);
    values.dedup_by(|a, b| (*a - *b).abs() <= VALUE_MERGE_TOL);
    Ok(CensusClass {
        id,
        edges: g.edges_one_based(),
        automorphisms: g.automorphisms().len(),
        labelings: perms.len(),
        npt_labelings: npt,
        entangled_for_every_labeling: npt == perms.len(),
        entangled_for_some_labeling: npt > 0,
        concurrence_values: values,
        worst_symmetrized_negativity: worst,
        cross_validation_mismatches: mismatches,
    })
}

/// Every isomorphism class on four vertices with at least one edge, each
/// examined under all 24 labelings.
pub fn four_vertex_census() -> Result<FourVertexCensus> {
    let reps = isomorphism_classes(4);
    let class_count = reps.len();
    let with_edges: Vec<&Graph> = reps.iter().filter(|g| g.m() > 0).collect();
    let classes = with_edges
        .iter()
        .enumerate()
        .map(|(i, g)| census_class(i + 1, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(FourVertexCensus {
        class_count,
        classes_with_edges: classes.len(),
        entangled_for_every_labeling: classes.iter().filter(|c| c.entangled_for_every_labeling).count(),
        entangled_for_some_labeling: classes.iter().filter(|c| c.entangled_for_some_labeling).count(),
        classes,
    })
}

impl FourVertexCensus {
    /// One row per class: id, edges, |Aut|, the two entanglement flags and
    /// the concurrence values separated by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class_id,edges,aut,always_entangled,ever_entangled,concurrence_values\n");
        for c in &self.classes {
            let edges: Vec<String> = c.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            let vals: Vec<String> = c.concurrence_values.iter().map(|v| format!("{v:.9}")).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.id,
                edges.join(" "),
                c.automorphisms,
                c.entangled_for_every_labeling,
                c.entangled_for_some_labeling,
                vals.join(";")
            ));
        }
        out
    }

    /// All concurrence values seen in the census.
    pub fn all_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.classes.iter().flat_map(|c| c.concurrence_values.iter().copied()).collect();
        v.sort_by(f64::total_cmp);
        v.dedup_by(|a, b| (*a - *b).abs() <= VALUE_MERGE_TOL);
        v
    }
}
