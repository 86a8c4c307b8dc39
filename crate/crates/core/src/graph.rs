//! Simple graphs with optional loops, their structural matrices and the
//! standard families used throughout the crate.
//!
//! Vertices are 0-based in the API. The text format and the `*_one_based`
//! helpers are the only places where 1-based labels appear.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{HermitianMatrix, Rational, RationalMatrix};

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    n: usize,
    /// Non-loop edges `(u, v)` with `u < v`, sorted ascending.
    edges: Vec<(usize, usize)>,
    /// Loop multiplicity per vertex.
    loops: Vec<u32>,
}

/// A bijection on the vertex set; `image[v]` is where `v` goes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VertexPermutation {
    image: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::InvalidArgument(format!("{image:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Self { image })
    }

    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::InvalidArgument("permutation entries are 1-based".into()));
        }
        Self::new(image.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Self { image: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self { image: other.image.iter().map(|&x| self.image[x]).collect() }
    }
}

impl Graph {
    /// `n` isolated vertices. Most constructions need at least one edge;
    /// see [`Graph::require_edges`].
    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new(), loops: vec![0; n] }
    }

    /// Builds from 0-based pairs. `u == v` adds a loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                let vertex = if u == 0 || u > n { u } else { v };
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            g.add_edge(u - 1, v - 1)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; a loop when `u == v`. Loops may repeat, edges may not.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x + 1, n: self.n });
            }
        }
        if u == v {
            self.loops[u] += 1;
            return Ok(());
        }
        let e = (u.min(v), u.max(v));
        match self.edges.binary_search(&e) {
            Ok(_) => Err(Error::DuplicateEdge(e.0 + 1, e.1 + 1)),
            Err(pos) => {
                self.edges.insert(pos, e);
                Ok(())
            }
        }
    }

    pub fn add_loops(&mut self, v: usize, count: u32) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v + 1, n: self.n });
        }
        self.loops[v] += count;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of non-loop edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    pub fn total_loops(&self) -> u64 {
        self.loops.iter().map(|&l| l as u64).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return None;
        }
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Non-loop degree.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// `d_G = 2m`.
    pub fn degree_sum(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match () {
                _ if a == v => Some(b),
                _ if b == v => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn require_edges(&self) -> Result<()> {
        if self.edges.is_empty() {
            Err(Error::NoEdges)
        } else {
            Ok(())
        }
    }

    pub fn adjacency_rational(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.n);
        for &(u, v) in &self.edges {
            m.set(u, v, Rational::from_integer(1));
            m.set(v, u, Rational::from_integer(1));
        }
        for (i, &l) in self.loops.iter().enumerate() {
            m.set(i, i, Rational::from_integer(l as i64));
        }
        m
    }

    /// `M(G)`; the diagonal holds loop counts.
    pub fn adjacency_matrix(&self) -> HermitianMatrix {
        self.adjacency_rational().into()
    }

    pub fn laplacian_rational(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.n);
        for &(u, v) in &self.edges {
            let one = Rational::from_integer(1);
            m.add_at(u, u, one);
            m.add_at(v, v, one);
            m.set(u, v, -one);
            m.set(v, u, -one);
        }
        m
    }

    /// `L(G) = Δ(G) − M(G)` with loops ignored.
    pub fn laplacian(&self) -> HermitianMatrix {
        self.laplacian_rational().into()
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.n;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// One graph per edge, each on the full vertex set.
    pub fn edge_factors(&self) -> Vec<Graph> {
        self.edges
            .iter()
            .map(|&e| Graph { n: self.n, edges: vec![e], loops: vec![0; self.n] })
            .collect()
    }

    /// Graph with adjacency `M(self) ⊗ M(other)`; vertex `(a, b)` has index
    /// `a * other.n + b`.
    pub fn tensor_product(&self, other: &Graph) -> Result<Graph> {
        let (ma, mb) = (self.adjacency_rational(), other.adjacency_rational());
        let q = other.n;
        let mut g = Graph::empty(self.n * q);
        for a in 0..self.n {
            for c in 0..self.n {
                let x = ma.get(a, c);
                if x.is_zero() {
                    continue;
                }
                for b in 0..q {
                    for d in 0..q {
                        let w = x * mb.get(b, d);
                        if w.is_zero() {
                            continue;
                        }
                        let (i, j) = (a * q + b, c * q + d);
                        let w = *w.numer() as u32;
                        if i == j {
                            g.loops[i] = w;
                        } else if i < j {
                            if w != 1 {
                                return Err(Error::Unsupported(
                                    "tensor product would create a multi-edge".into(),
                                ));
                            }
                            g.add_edge(i, j)?;
                        }
                    }
                }
            }
        }
        g.require_edges()?;
        Ok(g)
    }

    pub fn relabel(&self, perm: &VertexPermutation) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: perm.len() });
        }
        let mut g = Graph::empty(self.n);
        for &(u, v) in &self.edges {
            g.add_edge(perm.apply(u), perm.apply(v))?;
        }
        for (v, &l) in self.loops.iter().enumerate() {
            g.loops[perm.apply(v)] = l;
        }
        Ok(g)
    }

    /// `self ⊎ other`, with `other`'s vertices placed after `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        g.n += other.n;
        g.loops.extend_from_slice(&other.loops);
        g.edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        g
    }

    pub fn with_isolated_vertex(&self) -> Graph {
        self.disjoint_union(&Graph::empty(1))
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let idx = self.edge_index(u, v).ok_or(Error::MissingEdge(u + 1, v + 1))?;
        let mut g = self.clone();
        g.edges.remove(idx);
        Ok(g)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    /// Removes `v` and every edge at it; later vertices shift down by one.
    pub fn without_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v + 1, n: self.n });
        }
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let mut g = Graph::empty(self.n - 1);
        for &(a, b) in &self.edges {
            if a != v && b != v {
                g.add_edge(shift(a), shift(b))?;
            }
        }
        for (x, &l) in self.loops.iter().enumerate() {
            if x != v {
                g.loops[shift(x)] = l;
            }
        }
        Ok(g)
    }

    /// Same graph with all loops dropped.
    pub fn without_loops(&self) -> Graph {
        Graph { n: self.n, edges: self.edges.clone(), loops: vec![0; self.n] }
    }

    /// `Some(d)` when every vertex has non-loop degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        let first = *d.first()?;
        d.iter().all(|&x| x == first).then_some(first)
    }

    /// Bitmask over the `n(n-1)/2` vertex pairs in lexicographic order.
    /// Loops are not represented. Only meaningful for `n ≤ 11`.
    pub fn edge_mask(&self) -> u64 {
        self.edges.iter().fold(0, |acc, &(u, v)| acc | (1 << pair_index(self.n, u, v)))
    }

    pub fn from_edge_mask(n: usize, mask: u64) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for u in 0..n {
            for v in (u + 1)..n {
                if mask >> k & 1 == 1 {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph { n, edges, loops: vec![0; n] }
    }

    /// All automorphisms, found by backtracking over vertex images. Loops
    /// must be preserved as well.
    pub fn automorphisms(&self) -> Vec<VertexPermutation> {
        let n = self.n;
        let adj = self.adjacency_bits();
        let deg = self.degrees();
        let mut out = Vec::new();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.aut_rec(0, &adj, &deg, &mut image, &mut used, &mut out);
        out
    }

    fn aut_rec(
        &self,
        v: usize,
        adj: &[Vec<bool>],
        deg: &[usize],
        image: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<VertexPermutation>,
    ) {
        let n = self.n;
        if v == n {
            out.push(VertexPermutation { image: image.to_vec() });
            return;
        }
        for w in 0..n {
            if used[w] || deg[w] != deg[v] || self.loops[w] != self.loops[v] {
                continue;
            }
            if (0..v).any(|u| adj[u][v] != adj[image[u]][w]) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            self.aut_rec(v + 1, adj, deg, image, used, out);
            used[w] = false;
        }
        image[v] = usize::MAX;
    }

    fn adjacency_bits(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    /// Text form accepted by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        for (v, &l) in self.loops.iter().enumerate() {
            for _ in 0..l {
                s.push_str(&format!("e {} {}\n", v + 1, v + 1));
            }
        }
        s
    }

    /// Edges as 1-based pairs.
    pub fn edges_one_based(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?}", self.n, self.edges_one_based())?;
        if self.loops.iter().any(|&l| l > 0) {
            write!(f, ", loops={:?}", self.loops)?;
        }
        write!(f, ")")
    }
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = (u.min(v), u.max(v));
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Parses the edge-list format: `# comment`, `n <count>`, `e <u> <v>`, with
/// 1-based vertices. The `n` line must come first; a graph without any
/// non-loop edge is rejected.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap_or_default();
        let nums: Vec<usize> = parts
            .map(|p| p.parse::<usize>().map_err(|_| err(format!("expected an integer, got {p:?}"))))
            .collect::<Result<_>>()?;
        match tag {
            "n" => {
                if graph.is_some() {
                    return Err(err("repeated n line".into()));
                }
                match nums.as_slice() {
                    [n] if *n > 0 => graph = Some(Graph::empty(*n)),
                    _ => return Err(err("n line takes one positive count".into())),
                }
            }
            "e" => {
                let g = graph.as_mut().ok_or_else(|| err("edge before n line".into()))?;
                let [u, v] = nums.as_slice() else {
                    return Err(err("e line takes two vertices".into()));
                };
                for &x in [u, v] {
                    if x == 0 || x > g.n {
                        return Err(Error::VertexOutOfRange { vertex: x, n: g.n });
                    }
                }
                g.add_edge(u - 1, v - 1)?;
            }
            other => return Err(err(format!("unknown line type {other:?}"))),
        }
    }
    let g = graph.ok_or(Error::Parse { line: 0, message: "missing n line".into() })?;
    g.require_edges()?;
    Ok(g)
}

pub fn complete(n: usize) -> Result<Graph> {
    check_min(n, 2, "complete")?;
    Ok(Graph::from_edge_mask(n, (1u64 << (n * (n - 1) / 2)) - 1))
}

/// `K_{1,n-1}` with vertex 0 as the root.
pub fn star(n: usize) -> Result<Graph> {
    check_min(n, 2, "star")?;
    Graph::from_edges(n, &(1..n).map(|v| (0, v)).collect::<Vec<_>>())
}

pub fn cycle(n: usize) -> Result<Graph> {
    check_min(n, 3, "cycle")?;
    Graph::from_edges(n, &(0..n).map(|v| (v, (v + 1) % n)).collect::<Vec<_>>())
}

pub fn path(n: usize) -> Result<Graph> {
    check_min(n, 2, "path")?;
    Graph::from_edges(n, &(0..n - 1).map(|v| (v, v + 1)).collect::<Vec<_>>())
}

/// Cayley graph `X(Z_n, S)`: `u ~ v` iff `v − u ∈ S (mod n)`.
pub fn cayley_circulant(n: usize, s: &[usize]) -> Result<Graph> {
    check_min(n, 2, "circulant")?;
    let set: BTreeSet<usize> = s.iter().copied().collect();
    for &x in &set {
        if x == 0 || x >= n {
            return Err(Error::InvalidArgument(format!("connection set element {x} not in 1..{n}")));
        }
        if !set.contains(&(n - x)) {
            return Err(Error::InvalidArgument(format!("connection set not closed under negation ({x})")));
        }
    }
    let mut edges = BTreeSet::new();
    for u in 0..n {
        for &x in &set {
            let v = (u + x) % n;
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let g = Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>())?;
    g.require_edges()?;
    Ok(g)
}

/// Outer 5-cycle on 0..5, inner pentagram on 5..10, spokes `i ~ i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, &edges).expect("petersen edges are valid")
}

fn check_min(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!("{what} graph needs n >= {min}, got {n}")));
    }
    Ok(())
}

/// Every labeled simple graph on `n` vertices (`2^(n(n-1)/2)` of them).
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0..(1u64 << pairs)).map(move |mask| Graph::from_edge_mask(n, mask))
}

/// One representative per isomorphism class, chosen as the graph whose
/// edge mask is smallest among its relabelings. Brute force; `n ≤ 7`.
pub fn isomorphism_classes(n: usize) -> Vec<Graph> {
    let perms = all_permutations(n);
    let pairs = n * n.saturating_sub(1) / 2;
    let mut seen = vec![false; 1 << pairs];
    let mut reps = Vec::new();
    for mask in 0..(1u64 << pairs) {
        if seen[mask as usize] {
            continue;
        }
        let g = Graph::from_edge_mask(n, mask);
        for p in &perms {
            let h = g.relabel(p).expect("same size");
            seen[h.edge_mask() as usize] = true;
        }
        reps.push(g);
    }
    reps
}

/// All `n!` permutations in lexicographic order of their images.
pub fn all_permutations(n: usize) -> Vec<VertexPermutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(VertexPermutation { image: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}
