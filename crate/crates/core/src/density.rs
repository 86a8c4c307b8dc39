//! Density matrices of graphs.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{eigensystem, is_psd, HermitianMatrix, Rational, RationalMatrix, SpectrumResult};

/// A trace-one PSD matrix, optionally remembering the graph it came from
/// and the divisor used to normalize its Laplacian.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: HermitianMatrix,
    origin: Option<Graph>,
    normalization: Option<Rational>,
}

impl DensityMatrix {
    /// Wraps an arbitrary matrix after checking trace and positivity.
    pub fn from_hermitian(mat: HermitianMatrix, tol: f64) -> Result<Self> {
        let tr = mat.trace();
        if (tr - 1.0).abs() > tol.max(1e-12) {
            return Err(Error::Precondition(format!("trace is {tr}, expected 1")));
        }
        let chk = is_psd(&mat, tol);
        if !chk.is_psd {
            return Err(Error::NotPsd(chk.min_eigenvalue));
        }
        Ok(Self { mat, origin: None, normalization: None })
    }

    /// Skips validation; callers guarantee trace one and positivity.
    pub(crate) fn from_parts(mat: HermitianMatrix, origin: Option<Graph>, normalization: Option<Rational>) -> Self {
        Self { mat, origin, normalization }
    }

    pub fn mat(&self) -> &HermitianMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> HermitianMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn origin(&self) -> Option<&Graph> {
        self.origin.as_ref()
    }

    pub fn normalization(&self) -> Option<Rational> {
        self.normalization
    }

    pub fn as_rational(&self) -> Option<&RationalMatrix> {
        self.mat.as_rational()
    }

    pub fn spectrum(&self) -> SpectrumResult {
        eigensystem(&self.mat)
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.mat.trace_of_square()
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.purity() - 1.0).abs() <= tol
    }
}

fn rational_of(x: usize) -> Rational {
    Rational::from_integer(x as i64)
}

/// `σ(G) = L(G) / d_G`. Loops are ignored; isolated vertices stay as zero
/// rows and columns.
pub fn density_of_graph(g: &Graph) -> Result<DensityMatrix> {
    g.require_edges()?;
    let d = rational_of(g.degree_sum());
    let mat = g.laplacian_rational().scale(d.recip());
    Ok(DensityMatrix::from_parts(mat.into(), Some(g.clone()), Some(d)))
}

/// `σ∘(G) = (Δ − M + Δ∘) / (2m + Σ l_i)` where `Δ∘` carries the loop
/// counts. A graph made only of loops is accepted here.
pub fn density_with_loops(g: &Graph) -> Result<DensityMatrix> {
    let d = rational_of(g.degree_sum()) + Rational::from_integer(g.total_loops() as i64);
    if d.is_zero() {
        return Err(Error::NoEdges);
    }
    let mut l = g.laplacian_rational();
    for (i, &c) in g.loops().iter().enumerate() {
        l.add_at(i, i, Rational::from_integer(c as i64));
    }
    Ok(DensityMatrix::from_parts(l.scale(d.recip()).into(), Some(g.clone()), Some(d)))
}

/// `P[(|u⟩ + sign·|v⟩)/√2]` on `n` vertices, exact.
fn edge_projector(n: usize, u: usize, v: usize, sign: i64) -> RationalMatrix {
    let half = Rational::new(1, 2);
    let mut m = RationalMatrix::zeros(n);
    m.set(u, u, half);
    m.set(v, v, half);
    m.set(u, v, half * sign);
    m.set(v, u, half * sign);
    m
}

/// `σ(G) = (1/m) Σ σ(H_ij)` over the edge factors; every term is the pure
/// state `P[(|v_i⟩ − |v_j⟩)/√2]`.
pub fn pure_mixture_decomposition(g: &Graph) -> Result<Vec<(Rational, DensityMatrix)>> {
    g.require_edges()?;
    let w = Rational::new(1, g.m() as i64);
    Ok(g.edge_factors()
        .into_iter()
        .map(|f| {
            let (u, v) = f.edges()[0];
            let mat = edge_projector(g.n(), u, v, -1);
            (w, DensityMatrix::from_parts(mat.into(), Some(f), Some(Rational::from_integer(2))))
        })
        .collect())
}

/// `σ⁺` of a single edge `{u, v}` on `n` vertices: `P[(|u⟩ + |v⟩)/√2]`.
pub fn sigma_plus_edge(n: usize, u: usize, v: usize) -> Result<DensityMatrix> {
    if u == v || u >= n || v >= n {
        return Err(Error::InvalidArgument(format!("{{{}, {}}} is not an edge on {n} vertices", u + 1, v + 1)));
    }
    Ok(DensityMatrix::from_parts(edge_projector(n, u, v, 1).into(), None, None))
}

/// `σ⁺(G) = (1/m) Σ σ⁺(H_ij) = (Δ + M) / d_G`.
pub fn sigma_plus(g: &Graph) -> Result<DensityMatrix> {
    g.require_edges()?;
    let mut acc = RationalMatrix::zeros(g.n());
    for &(u, v) in g.edges() {
        acc = &acc + &edge_projector(g.n(), u, v, 1);
    }
    let w = Rational::new(1, g.m() as i64);
    Ok(DensityMatrix::from_parts(acc.scale(w).into(), Some(g.clone()), None))
}

/// One term `weight · (left ⊗ right)` of a product decomposition.
#[derive(Clone, Debug)]
pub struct TensorTerm {
    pub weight: Rational,
    pub left: DensityMatrix,
    pub right: DensityMatrix,
}

/// `σ(G ⊗ H) = ½[σ(G) ⊗ σ⁺(H) + σ⁺(G) ⊗ σ(H)]`. Both graphs must be
/// loop-free so that degrees multiply across the product.
pub fn tensor_separable_decomposition(g: &Graph, h: &Graph) -> Result<[TensorTerm; 2]> {
    if g.total_loops() > 0 || h.total_loops() > 0 {
        return Err(Error::Precondition("tensor decomposition needs loop-free factors".into()));
    }
    let half = Rational::new(1, 2);
    Ok([
        TensorTerm { weight: half, left: density_of_graph(g)?, right: sigma_plus(h)? },
        TensorTerm { weight: half, left: sigma_plus(g)?, right: density_of_graph(h)? },
    ])
}

/// `Σ w_i (left_i ⊗ right_i)`, exact when all factors are rational.
pub fn tensor_mixture(terms: &[TensorTerm]) -> Result<HermitianMatrix> {
    let first = terms.first().ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
    let dim = first.left.dim() * first.right.dim();
    let mut acc = HermitianMatrix::zeros(dim);
    for t in terms {
        acc = acc.add(&t.left.mat().kron(t.right.mat()).scale_rational(t.weight))?;
    }
    Ok(acc)
}

/// `Σ w_i ρ_i`, exact when all inputs are rational.
pub fn mixture(terms: &[(Rational, DensityMatrix)]) -> Result<HermitianMatrix> {
    let first = terms.first().ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
    let mut acc = HermitianMatrix::zeros(first.1.dim());
    for (w, rho) in terms {
        acc = acc.add(&rho.mat().scale_rational(*w))?;
    }
    Ok(acc)
}
