use std::fmt;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::graph::VertexPermutation;
use crate::linalg::HermitianMatrix;

/// Identifies each vertex with a basis vector `|s⟩ ⊗ |t⟩` of `C^p ⊗ C^q`.
///
/// Internally `s` and `t` are 0-based. The text form `v:s:t` uses a
/// 1-based vertex, 0-based `s` and 1-based `t`, so that the default map is
/// `v = s·q + t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BipartiteLabeling {
    p: usize,
    q: usize,
    coords: Vec<(usize, usize)>,
    /// Inverse of `coords`: tensor index `s·q + t` to vertex.
    vertex_of: Vec<usize>,
}

impl BipartiteLabeling {
    /// Vertex `v` (0-based) sits at `(v / q, v % q)`.
    pub fn default_for(p: usize, q: usize) -> Result<Self> {
        Self::from_tensor_indices(p, q, (0..p * q).collect())
    }

    /// Explicit `(s, t)` per vertex, both 0-based.
    pub fn from_pairs(p: usize, q: usize, coords: Vec<(usize, usize)>) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidArgument("p and q must be positive".into()));
        }
        if coords.len() != p * q {
            return Err(Error::DimensionMismatch { expected: p * q, actual: coords.len() });
        }
        let mut vertex_of = vec![usize::MAX; p * q];
        for (v, &(s, t)) in coords.iter().enumerate() {
            if s >= p || t >= q {
                return Err(Error::InvalidArgument(format!("vertex {} at ({s}, {t}) outside {p}x{q}", v + 1)));
            }
            let idx = s * q + t;
            if vertex_of[idx] != usize::MAX {
                return Err(Error::InvalidArgument(format!("two vertices share position ({s}, {t})")));
            }
            vertex_of[idx] = v;
        }
        Ok(Self { p, q, coords, vertex_of })
    }

    /// Vertex `v` sits at tensor index `perm(v)`.
    pub fn from_permutation(p: usize, q: usize, perm: &VertexPermutation) -> Result<Self> {
        Self::from_tensor_indices(p, q, perm.image().to_vec())
    }

    fn from_tensor_indices(p: usize, q: usize, idx: Vec<usize>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("q must be positive".into()));
        }
        Self::from_pairs(p, q, idx.into_iter().map(|i| (i / q, i % q)).collect())
    }

    /// Parses comma-separated `v:s:t` entries covering every vertex once.
    pub fn parse(p: usize, q: usize, text: &str) -> Result<Self> {
        let n = p * q;
        let mut coords = vec![None; n];
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let parts: Vec<&str> = item.split(':').collect();
            let nums: Vec<usize> = parts
                .iter()
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidArgument(format!("bad labeling entry {item:?}")))?;
            let [v, s, t] = nums[..] else {
                return Err(Error::InvalidArgument(format!("labeling entry {item:?} is not v:s:t")));
            };
            if v == 0 || v > n || t == 0 {
                return Err(Error::InvalidArgument(format!("labeling entry {item:?} out of range")));
            }
            if coords[v - 1].replace((s, t - 1)).is_some() {
                return Err(Error::InvalidArgument(format!("vertex {v} labeled twice")));
            }
        }
        let coords = coords
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or_else(|| Error::InvalidArgument(format!("vertex {} has no label", v + 1))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(p, q, coords)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.p * self.q
    }

    /// `(s, t)` of vertex `v`, 0-based.
    pub fn coords(&self, v: usize) -> (usize, usize) {
        self.coords[v]
    }

    pub fn tensor_index(&self, v: usize) -> usize {
        let (s, t) = self.coords[v];
        s * self.q + t
    }

    pub fn vertex_at(&self, s: usize, t: usize) -> usize {
        self.vertex_of[s * self.q + t]
    }

    /// `ρ` rewritten in the tensor basis `|s⟩|t⟩` ordered by `s·q + t`.
    pub fn to_tensor_basis(&self, rho: &HermitianMatrix) -> Result<HermitianMatrix> {
        self.check_dim(rho.dim())?;
        Ok(rho.gather(|a, b| (self.vertex_of[a], self.vertex_of[b])))
    }

    /// Inverse of [`Self::to_tensor_basis`].
    pub fn from_tensor_basis(&self, m: &HermitianMatrix) -> Result<HermitianMatrix> {
        self.check_dim(m.dim())?;
        Ok(m.gather(|x, y| (self.tensor_index(x), self.tensor_index(y))))
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), actual: dim });
        }
        Ok(())
    }

    pub(crate) fn check_density(&self, rho: &DensityMatrix) -> Result<()> {
        self.check_dim(rho.dim())
    }
}

impl fmt::Display for BipartiteLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, &(s, t)) in self.coords.iter().enumerate() {
            if v > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}:{}", v + 1, s, t + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_map_matches_formula() {
        let lab = BipartiteLabeling::default_for(2, 3).unwrap();
        // 1-based i = s·q + t with 1 ≤ t ≤ q
        for i in 1..=6usize {
            let (s, t0) = lab.coords(i - 1);
            assert_eq!(s * 3 + t0 + 1, i);
        }
        assert_eq!(lab.to_string(), "1:0:1,2:0:2,3:0:3,4:1:1,5:1:2,6:1:3");
    }

    #[test]
    fn parse_round_trip() {
        let lab = BipartiteLabeling::parse(2, 2, "1:0:1, 2:1:1, 3:0:2, 4:1:2").unwrap();
        assert_eq!(lab.coords(1), (1, 0));
        assert_eq!(lab.vertex_at(0, 1), 2);
        assert_eq!(BipartiteLabeling::parse(2, 2, &lab.to_string()).unwrap(), lab);
        assert!(BipartiteLabeling::parse(2, 2, "1:0:1,2:1:1,3:0:2").is_err());
        assert!(BipartiteLabeling::parse(2, 2, "1:0:1,2:0:1,3:0:2,4:1:2").is_err());
        assert!(BipartiteLabeling::parse(2, 2, "1:0:1,2:1:1,3:0:2,4:2:2").is_err());
        assert!(BipartiteLabeling::parse(2, 2, "1:0:0,2:1:1,3:0:2,4:1:2").is_err());
    }
}
