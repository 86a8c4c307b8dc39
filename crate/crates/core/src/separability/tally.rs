//! Entangled perfect matchings in `C^2 ⊗ C^q`.
//!
//! With two rows an e-matching is a partial map `π` from row-0 labels to
//! row-1 labels with `π(t) ≠ t`. When `π` permutes its support, every cycle
//! `t_1 → t_2 → … → t_r → t_1` is a tally-mark and has an explicit
//! decomposition into `r` product states built from discrete Fourier
//! vectors.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{
    decomposition_error, entangled_edges, is_entangled, classify_matching, partial_transpose, product_edge_state,
    BipartiteLabeling, MatchingClass, ProductState, SeparabilityStatus, SeparabilityVerdict,
};
use crate::density::density_of_graph;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPermutation};
use crate::linalg::{eigensystem, CVector};

const VERIFY_TOL: f64 = 1e-10;

/// Edges `(k, t_s) – (l, t_{s+1})` for `s = 1..r`, indices taken cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TallyMark {
    pub rows: (usize, usize),
    /// Second labels in cycle order, 0-based.
    pub labels: Vec<usize>,
}

impl TallyMark {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The mark's edges as vertex pairs under `lab`.
    pub fn edges(&self, lab: &BipartiteLabeling) -> Vec<(usize, usize)> {
        let r = self.labels.len();
        (0..r)
            .map(|s| {
                let a = lab.vertex_at(self.rows.0, self.labels[s]);
                let b = lab.vertex_at(self.rows.1, self.labels[(s + 1) % r]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    /// `r` product states of weight `total / r` whose mixture is
    /// `total · σ(mark)`: left `(|k⟩ − e^{−2πim/r}|l⟩)/√2`, right
    /// `(1/√r) Σ_s e^{2πism/r} |t_s⟩`.
    pub fn product_states(&self, p: usize, q: usize, total: f64) -> Vec<ProductState> {
        let r = self.labels.len();
        let rf = r as f64;
        let (k, l) = self.rows;
        (0..r)
            .map(|m| {
                let mut left = CVector::zeros(p);
                left[k] = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
                left[l] = -Complex64::from_polar(1.0 / 2f64.sqrt(), -2.0 * PI * m as f64 / rf);
                let mut right = CVector::zeros(q);
                for (s, &t) in self.labels.iter().enumerate() {
                    right[t] = Complex64::from_polar(1.0 / rf.sqrt(), 2.0 * PI * (s * m) as f64 / rf);
                }
                ProductState::new(left, right, total / rf)
            })
            .collect()
    }
}

/// Result of bringing a pe-matching into tally-mark form.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalPeMatching {
    /// Acts on second labels: label `t` becomes `permutation(t)`.
    pub permutation: VertexPermutation,
    /// The transpositions applied, in order, as 0-based label pairs.
    pub transpositions: Vec<(usize, usize)>,
    pub canonical: Graph,
    /// Tally-marks of the canonical graph; each lists its labels ascending.
    pub tally_marks: Vec<TallyMark>,
}

/// Row-0 to row-1 label map of a two-row e-matching.
fn matching_map(g: &Graph, lab: &BipartiteLabeling, edges: &[(usize, usize)]) -> Vec<Option<usize>> {
    let mut pi = vec![None; lab.q()];
    for &(u, v) in edges {
        let (a, b) = (lab.coords(u), lab.coords(v));
        let (top, bottom) = if a.0 == 0 { (a, b) } else { (b, a) };
        pi[top.1] = Some(bottom.1);
    }
    debug_assert_eq!(g.n(), lab.n());
    pi
}

/// `(τ, transpositions, sorted cycles)`.
type CanonicalMap = (Vec<usize>, Vec<(usize, usize)>, Vec<Vec<usize>>);

/// Conjugates `π` by transpositions until each cycle, read from its
/// smallest label, visits its labels in ascending order. Returns the
/// accumulated relabeling `τ`, the transpositions and the sorted cycles.
fn canonicalize_map(pi: &[Option<usize>]) -> CanonicalMap {
    let q = pi.len();
    let mut cur = pi.to_vec();
    let mut tau: Vec<usize> = (0..q).collect();
    let mut swaps = Vec::new();
    let mut done = vec![false; q];
    let mut cycles = Vec::new();
    for start in 0..q {
        if done[start] || cur[start].is_none() {
            continue;
        }
        let mut labels = vec![start];
        let mut x = cur[start].expect("checked");
        while x != start {
            labels.push(x);
            x = cur[x].expect("closed cycle");
        }
        labels.sort_unstable();
        for s in 0..labels.len() - 1 {
            let x = cur[labels[s]].expect("in cycle");
            let y = labels[s + 1];
            if x == y {
                continue;
            }
            let swap = |t: usize| if t == x { y } else if t == y { x } else { t };
            let mut next = vec![None; q];
            for (i, &img) in cur.iter().enumerate() {
                next[swap(i)] = img.map(swap);
            }
            cur = next;
            for t in tau.iter_mut() {
                *t = swap(*t);
            }
            swaps.push((x.min(y), x.max(y)));
        }
        for &t in &labels {
            done[t] = true;
        }
        cycles.push(labels);
    }
    (tau, swaps, cycles)
}

/// The support of `π` must be closed: every label that is hit is also a
/// source. Otherwise some chain is open and no tally-mark exists.
fn is_closed(pi: &[Option<usize>]) -> bool {
    let mut hit = vec![false; pi.len()];
    for &t in pi.iter().flatten() {
        hit[t] = true;
    }
    pi.iter().zip(&hit).all(|(src, &h)| src.is_some() == h)
}

fn require_two_rows(lab: &BipartiteLabeling) -> Result<()> {
    if lab.p() != 2 {
        return Err(Error::Precondition(format!("needs p = 2, got p = {}", lab.p())));
    }
    Ok(())
}

/// Relabels second labels so the pe-matching becomes a disjoint union of
/// tally-marks. Requires `p = 2` and a pe-matching.
pub fn canonicalize_pe_matching(g: &Graph, lab: &BipartiteLabeling) -> Result<CanonicalPeMatching> {
    require_two_rows(lab)?;
    if classify_matching(g, lab)? != MatchingClass::PeMatching {
        return Err(Error::Precondition("graph is not a pe-matching under this labeling".into()));
    }
    let pi = matching_map(g, lab, g.edges());
    let (tau, transpositions, cycles) = canonicalize_map(&pi);
    let vertex_perm: Vec<usize> = (0..g.n())
        .map(|v| {
            let (s, t) = lab.coords(v);
            lab.vertex_at(s, tau[t])
        })
        .collect();
    let canonical = g.relabel(&VertexPermutation::new(vertex_perm)?)?;
    Ok(CanonicalPeMatching {
        permutation: VertexPermutation::new(tau)?,
        transpositions,
        canonical,
        tally_marks: cycles.into_iter().map(|labels| TallyMark { rows: (0, 1), labels }).collect(),
    })
}

/// Decomposes `σ(h)` for a graph whose edges form one tally-mark between
/// two rows. Vertices outside the mark must be isolated.
pub fn tally_mark_decomposition(h: &Graph, lab: &BipartiteLabeling) -> Result<Vec<ProductState>> {
    lab.check_dim(h.n())?;
    let mark = single_tally_mark(h, lab)?;
    Ok(mark.product_states(lab.p(), lab.q(), 1.0))
}

fn single_tally_mark(h: &Graph, lab: &BipartiteLabeling) -> Result<TallyMark> {
    let not_mark = || Error::Precondition("edges do not form a single tally-mark".into());
    h.require_edges()?;
    let cls = classify_matching(h, lab)?;
    if cls < MatchingClass::EMatching {
        return Err(not_mark());
    }
    let (u0, v0) = h.edges()[0];
    let (k, l) = {
        let (a, b) = (lab.coords(u0).0, lab.coords(v0).0);
        (a.min(b), a.max(b))
    };
    let mut pi = vec![None; lab.q()];
    for &(u, v) in h.edges() {
        let (a, b) = (lab.coords(u), lab.coords(v));
        let (top, bottom) = if a.0 == k { (a, b) } else { (b, a) };
        if top.0 != k || bottom.0 != l {
            return Err(not_mark());
        }
        pi[top.1] = Some(bottom.1);
    }
    if !is_closed(&pi) {
        return Err(not_mark());
    }
    let start = pi.iter().position(Option::is_some).ok_or_else(not_mark)?;
    let mut labels = vec![start];
    let mut x = pi[start].expect("start is a source");
    while x != start {
        labels.push(x);
        x = pi[x].expect("closed");
    }
    if labels.len() != h.m() {
        return Err(not_mark());
    }
    Ok(TallyMark { rows: (k, l), labels })
}

#[derive(Clone, Debug, Serialize)]
pub struct PeMatchingDecomposition {
    pub verdict: SeparabilityVerdict,
    /// Tally-marks formed by the entangled edges, in the original labels.
    pub tally_marks: Vec<TallyMark>,
    pub transpositions: Vec<(usize, usize)>,
    pub states: Vec<ProductState>,
    pub reconstruction_error: f64,
}

/// Separability of `σ(G)` in `C^2 ⊗ C^q` when the entangled edges of `G`
/// form closed tally-marks (in particular, a pe-matching).
///
/// `σ(G) = (|H|/m) σ(H) + ((m − |H|)/m) σ(G∖H)`, where `H` holds the
/// entangled edges. Every edge of `G∖H` is a product state; `σ(H)` is
/// decomposed after canonicalization and mapped back through the inverse
/// relabeling of second labels.
pub fn pe_matching_separability(g: &Graph, lab: &BipartiteLabeling) -> Result<PeMatchingDecomposition> {
    require_two_rows(lab)?;
    lab.check_dim(g.n())?;
    let rho = density_of_graph(g)?;
    let ent = entangled_edges(g, lab)?;
    let h = Graph::from_edges(g.n(), &ent)?;
    if !ent.is_empty() && classify_matching(&h, lab)? < MatchingClass::EMatching {
        return Err(Error::Precondition("entangled edges share a vertex".into()));
    }
    let pi = matching_map(&h, lab, &ent);
    if !is_closed(&pi) {
        return Err(Error::Precondition("entangled edges do not close into tally-marks".into()));
    }
    let m = g.m() as f64;
    let (tau, transpositions, cycles) = canonicalize_map(&pi);
    let mut states = Vec::new();
    let mut tally_marks = Vec::new();
    for labels in cycles {
        let mark = TallyMark { rows: (0, 1), labels: labels.clone() };
        for mut st in mark.product_states(2, lab.q(), mark.len() as f64 / m) {
            // Canonical label τ(t) stands for original label t.
            st.right = CVector::from_fn(lab.q(), |t, _| st.right[tau[t]]);
            states.push(st);
        }
        let inv: Vec<usize> = {
            let mut inv = vec![0; tau.len()];
            for (t, &c) in tau.iter().enumerate() {
                inv[c] = t;
            }
            inv
        };
        tally_marks.push(TallyMark { rows: (0, 1), labels: labels.iter().map(|&c| inv[c]).collect() });
    }
    for &(u, v) in g.edges() {
        if !is_entangled(lab, u, v) {
            states.push(product_edge_state(lab, u, v, 1.0 / m).expect("edge is not entangled"));
        }
    }
    let err = decomposition_error(rho.mat(), lab, &states)?;
    if err > VERIFY_TOL {
        return Err(Error::Numerical(format!("pe-matching decomposition off by {err:e}")));
    }
    let min = eigensystem(&partial_transpose(rho.mat(), lab)?).min();
    let verdict = SeparabilityVerdict {
        status: SeparabilityStatus::Separable,
        min_pt_eigenvalue: min,
        p: lab.p(),
        q: lab.q(),
        labeling: lab.clone(),
        certified_by: Some("pe-matching".into()),
    };
    Ok(PeMatchingDecomposition { verdict, tally_marks, transpositions, states, reconstruction_error: err })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;
    use crate::separability::verify_separable_decomposition;

    /// Two-row graph from a map on 1-based second labels.
    fn two_row(q: usize, pi: &[(usize, usize)]) -> (Graph, BipartiteLabeling) {
        let lab = BipartiteLabeling::default_for(2, q).unwrap();
        let edges: Vec<(usize, usize)> =
            pi.iter().map(|&(a, b)| (lab.vertex_at(0, a - 1), lab.vertex_at(1, b - 1))).collect();
        (Graph::from_edges(2 * q, &edges).unwrap(), lab)
    }

    fn swap(x: usize, y: usize) -> impl Fn(usize) -> usize {
        move |t| if t == x { y } else if t == y { x } else { t }
    }

    #[test]
    fn criss_cross_is_canonical() {
        let (g, lab) = two_row(2, &[(1, 2), (2, 1)]);
        let c = canonicalize_pe_matching(&g, &lab).unwrap();
        assert!(c.transpositions.is_empty());
        assert_eq!(c.canonical, g);
        assert_eq!(c.tally_marks, vec![TallyMark { rows: (0, 1), labels: vec![0, 1] }]);
    }

    #[test]
    fn pe_matching_transposition_sequence() {
        // Start from the canonical 5-cycle 1→2→3→4→5→1 and undo (3 5), then
        // (2 3); canonicalization must apply (2 3) and then (3 5).
        let s23 = swap(2, 3);
        let s35 = swap(3, 5);
        let canon = |t: usize| t % 5 + 1;
        let pi: Vec<(usize, usize)> = (1..=5).map(|t| (t, s23(s35(canon(s35(s23(t))))))).collect();
        let (g, lab) = two_row(5, &pi);
        let c = canonicalize_pe_matching(&g, &lab).unwrap();
        assert_eq!(c.transpositions, vec![(1, 2), (2, 4)]);
        let (expect, _) = two_row(5, &(1..=5).map(|t| (t, canon(t))).collect::<Vec<_>>());
        assert_eq!(c.canonical, expect);
        assert_eq!(c.tally_marks.len(), 1);
        assert_eq!(c.tally_marks[0].labels, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn several_cycles_become_several_marks() {
        let (g, lab) = two_row(5, &[(1, 4), (4, 1), (2, 5), (5, 3), (3, 2)]);
        let c = canonicalize_pe_matching(&g, &lab).unwrap();
        let sizes: Vec<usize> = c.tally_marks.iter().map(TallyMark::len).collect();
        assert_eq!(sizes, vec![2, 3]);
        assert_eq!(c.tally_marks[1].labels, vec![1, 2, 4]);
        let lab_c = lab.clone();
        for mark in &c.tally_marks {
            for (u, v) in mark.edges(&lab_c) {
                assert!(c.canonical.has_edge(u, v));
            }
        }
    }

    #[test]
    fn canonicalize_rejects_non_matchings() {
        let lab = BipartiteLabeling::default_for(2, 2).unwrap();
        assert!(canonicalize_pe_matching(&complete(4).unwrap(), &lab).is_err());
        let lab3 = BipartiteLabeling::default_for(3, 2).unwrap();
        assert!(canonicalize_pe_matching(&Graph::from_edges(6, &[(0, 3)]).unwrap(), &lab3).is_err());
    }

    #[test]
    fn tally_marks_reconstruct() {
        for r in 2..=5usize {
            let pi: Vec<(usize, usize)> = (1..=r).map(|t| (t, t % r + 1)).collect();
            let (g, lab) = two_row(r, &pi);
            let states = tally_mark_decomposition(&g, &lab).unwrap();
            assert_eq!(states.len(), r);
            let rho = density_of_graph(&g).unwrap();
            assert!(decomposition_error(rho.mat(), &lab, &states).unwrap() < 1e-12);
            assert!(verify_separable_decomposition(rho.mat(), &lab, &states, 1e-10).unwrap());
            for a in &states {
                for b in &states {
                    let ip = a.right.dotc(&b.right).norm();
                    let expect = if std::ptr::eq(a, b) { 1.0 } else { 0.0 };
                    assert!((ip - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn tally_mark_rejects_open_chain() {
        let (g, lab) = two_row(3, &[(1, 2), (2, 3)]);
        assert!(tally_mark_decomposition(&g, &lab).is_err());
    }

    #[test]
    fn bell_mixture_example() {
        let lab = BipartiteLabeling::default_for(2, 2).unwrap();
        let g = Graph::from_edges(4, &[(0, 3), (1, 2)]).unwrap();
        let d = pe_matching_separability(&g, &lab).unwrap();
        assert_eq!(d.verdict.status, SeparabilityStatus::Separable);
        assert_eq!(d.states.len(), 2);
        assert!(d.reconstruction_error < 1e-12);
    }

    #[test]
    fn mixed_graph_with_product_edges() {
        let (mut g, lab) = two_row(4, &[(1, 3), (3, 1), (2, 4), (4, 2)]);
        g.add_edge(lab.vertex_at(0, 0), lab.vertex_at(0, 1)).unwrap();
        g.add_edge(lab.vertex_at(0, 2), lab.vertex_at(1, 2)).unwrap();
        let d = pe_matching_separability(&g, &lab).unwrap();
        assert_eq!(d.states.len(), 6);
        assert!(d.reconstruction_error < 1e-12);
    }

    #[test]
    fn dangling_entangled_edge_is_rejected() {
        let lab = BipartiteLabeling::default_for(2, 3).unwrap();
        let g = Graph::from_edges(6, &[(0, 4), (0, 1)]).unwrap();
        assert!(matches!(pe_matching_separability(&g, &lab), Err(Error::Precondition(_))));
    }
}
