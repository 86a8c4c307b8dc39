use serde::Serialize;

use super::{
    decomposition_error, entangled_edges, pair_vector, pe_matching_separability, unit, BipartiteLabeling, ProductState,
};
use crate::density::density_of_graph;
use crate::error::{Error, Result};
use crate::graph::Graph;

const VERIFY_TOL: f64 = 1e-10;

/// The product state of a non-entangled edge `{u, v}`, or `None` when the
/// edge is entangled. Same row: `|s⟩ ⊗ (|t⟩ − |t'⟩)/√2`; same column:
/// `(|s⟩ − |s'⟩)/√2 ⊗ |t⟩`.
pub fn product_edge_state(lab: &BipartiteLabeling, u: usize, v: usize, weight: f64) -> Option<ProductState> {
    let ((s, t), (s2, t2)) = (lab.coords(u), lab.coords(v));
    let (p, q) = (lab.p(), lab.q());
    if s == s2 {
        Some(ProductState::new(unit(p, s), pair_vector(q, t, t2, -1.0), weight))
    } else if t == t2 {
        Some(ProductState::new(pair_vector(p, s, s2, -1.0), unit(q, t), weight))
    } else {
        None
    }
}

/// Product states for `σ(K_n)` in `C^p ⊗ C^q`. Product edges are kept as
/// they are; each pair of entangled edges `{(s,t),(s',t')}`,
/// `{(s,t'),(s',t)}` is replaced by `P[u⁺ ⊗ w⁻] + P[u⁻ ⊗ w⁺]` with
/// `u^± = (|s⟩ ± |s'⟩)/√2` and `w^± = (|t⟩ ± |t'⟩)/√2`. Every state has
/// weight `1/m`.
pub fn complete_graph_decomposition(n: usize, p: usize, q: usize) -> Result<Vec<ProductState>> {
    if p * q != n || n < 2 {
        return Err(Error::InvalidArgument(format!("{n} is not {p}·{q}")));
    }
    let w = 2.0 / (n * (n - 1)) as f64;
    let mut out = Vec::new();
    for s in 0..p {
        for t in 0..q {
            for t2 in (t + 1)..q {
                out.push(ProductState::new(unit(p, s), pair_vector(q, t, t2, -1.0), w));
            }
        }
    }
    for t in 0..q {
        for s in 0..p {
            for s2 in (s + 1)..p {
                out.push(ProductState::new(pair_vector(p, s, s2, -1.0), unit(q, t), w));
            }
        }
    }
    for s in 0..p {
        for s2 in (s + 1)..p {
            for t in 0..q {
                for t2 in (t + 1)..q {
                    out.push(ProductState::new(pair_vector(p, s, s2, 1.0), pair_vector(q, t, t2, -1.0), w));
                    out.push(ProductState::new(pair_vector(p, s, s2, -1.0), pair_vector(q, t, t2, 1.0), w));
                }
            }
        }
    }
    Ok(out)
}

/// An explicit separable decomposition that has been checked against the
/// state it claims to reproduce.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub method: &'static str,
    pub states: Vec<ProductState>,
    pub reconstruction_error: f64,
}

/// Tries the known constructions in turn: no entangled edges, the complete
/// graph, and (for `p = 2`) entangled edges closing into tally-marks. A
/// construction is only returned after it reproduces `σ(G)` within 1e-10.
pub fn explicit_decomposition(g: &Graph, lab: &BipartiteLabeling) -> Result<Option<Certificate>> {
    lab.check_dim(g.n())?;
    if g.m() == 0 {
        return Ok(None);
    }
    let rho = density_of_graph(g)?;
    let n = g.n();
    let candidate = if entangled_edges(g, lab)?.is_empty() {
        let w = 1.0 / g.m() as f64;
        let states = g
            .edges()
            .iter()
            .map(|&(u, v)| product_edge_state(lab, u, v, w).expect("no entangled edges"))
            .collect();
        Some(("product-edges", states))
    } else if g.m() == n * (n - 1) / 2 {
        Some(("complete-graph", complete_graph_decomposition(n, lab.p(), lab.q())?))
    } else if lab.p() == 2 {
        match pe_matching_separability(g, lab) {
            Ok(d) => Some(("pe-matching", d.states)),
            Err(Error::Precondition(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let Some((method, states)) = candidate else {
        return Ok(None);
    };
    let err = decomposition_error(rho.mat(), lab, &states)?;
    Ok((err <= VERIFY_TOL).then_some(Certificate { method, states, reconstruction_error: err }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path, VertexPermutation};
    use crate::separability::verify_separable_decomposition;

    #[test]
    fn complete_graph_reconstructs() {
        for (n, p, q) in [(4, 2, 2), (6, 2, 3), (6, 3, 2), (9, 3, 3), (8, 2, 4)] {
            let states = complete_graph_decomposition(n, p, q).unwrap();
            assert_eq!(states.len(), n * (n - 1) / 2);
            assert!(states.iter().all(|s| s.factors_normalized(1e-12)));
            let rho = density_of_graph(&complete(n).unwrap()).unwrap();
            let lab = BipartiteLabeling::default_for(p, q).unwrap();
            assert!(verify_separable_decomposition(rho.mat(), &lab, &states, 1e-10).unwrap(), "n={n}");
        }
        assert!(complete_graph_decomposition(5, 2, 3).is_err());
    }

    #[test]
    fn complete_graph_under_any_labeling() {
        let rho = density_of_graph(&complete(6).unwrap()).unwrap();
        let states = complete_graph_decomposition(6, 2, 3).unwrap();
        let perm = VertexPermutation::new(vec![3, 5, 0, 2, 4, 1]).unwrap();
        let lab = BipartiteLabeling::from_permutation(2, 3, &perm).unwrap();
        assert!(verify_separable_decomposition(rho.mat(), &lab, &states, 1e-10).unwrap());
    }

    #[test]
    fn explicit_methods() {
        let lab = BipartiteLabeling::default_for(2, 2).unwrap();
        let rows = Graph::from_edges(4, &[(0, 1), (2, 3), (0, 2)]).unwrap();
        assert_eq!(explicit_decomposition(&rows, &lab).unwrap().unwrap().method, "product-edges");
        assert_eq!(explicit_decomposition(&complete(4).unwrap(), &lab).unwrap().unwrap().method, "complete-graph");
        let cross = Graph::from_edges(4, &[(0, 3), (1, 2)]).unwrap();
        assert_eq!(explicit_decomposition(&cross, &lab).unwrap().unwrap().method, "pe-matching");
        let open = Graph::from_edges(4, &[(0, 3), (0, 1)]).unwrap();
        assert!(explicit_decomposition(&open, &lab).unwrap().is_none());
        // P_4 relabeled so its two entangled edges form a criss-cross
        let p4 = path(4).unwrap().relabel(&VertexPermutation::new(vec![0, 3, 1, 2]).unwrap()).unwrap();
        assert_eq!(explicit_decomposition(&p4, &lab).unwrap().unwrap().method, "pe-matching");
    }
}
