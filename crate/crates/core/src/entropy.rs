//! Von Neumann and q-entropies, plus the closed forms for regular and
//! circulant graphs.

use std::f64::consts::{LOG2_E, PI};

use serde::Serialize;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{eigensystem, SpectrumResult};

/// Eigenvalues at or below this count as exact zeros.
pub const ZERO_EIGENVALUE: f64 = 1e-12;

/// `1 − log2(e)/2`.
pub const CIRCULANT_C: f64 = 1.0 - LOG2_E / 2.0;

#[derive(Clone, Debug)]
pub struct EntropyReport {
    /// In bits.
    pub entropy: f64,
    pub spectrum: SpectrumResult,
    /// `log2(n − 1)`, the largest entropy any graph on `n` vertices reaches.
    pub bound_max: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropySummary {
    pub entropy: f64,
    pub bound_max: f64,
    pub eigenvalues: Vec<f64>,
}

impl EntropyReport {
    pub fn summary(&self) -> EntropySummary {
        EntropySummary {
            entropy: self.entropy,
            bound_max: self.bound_max,
            eigenvalues: self.spectrum.values.clone(),
        }
    }
}

/// `−Σ λ log2 λ` over the eigenvalues above [`ZERO_EIGENVALUE`].
pub fn entropy_of_values(values: &[f64]) -> f64 {
    let s: f64 = values
        .iter()
        .filter(|&&x| x > ZERO_EIGENVALUE)
        .map(|&x| -x * x.log2())
        .sum();
    s.max(0.0)
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> EntropyReport {
    let spectrum = rho.spectrum();
    let n = rho.dim();
    EntropyReport {
        entropy: entropy_of_values(&spectrum.values),
        bound_max: if n >= 2 { ((n - 1) as f64).log2() } else { 0.0 },
        spectrum,
    }
}

/// `(tr ρ^q)^{1/q}` for `q > 1`.
pub fn q_entropy(rho: &DensityMatrix, q: f64) -> Result<f64> {
    if q.is_nan() || q <= 1.0 {
        return Err(Error::InvalidArgument(format!("q must exceed 1, got {q}")));
    }
    let sum: f64 = rho.spectrum().values.iter().map(|&x| x.max(0.0).powf(q)).sum();
    Ok(sum.powf(1.0 / q))
}

/// Entropy of a `d`-regular loop-free graph from its adjacency spectrum:
/// `log2(dn) − (1/(dn)) Σ (d − μ) log2(d − μ)`.
pub fn regular_graph_entropy(g: &Graph, d: usize) -> Result<f64> {
    if g.regular_degree() != Some(d) {
        return Err(Error::Precondition(format!("graph is not {d}-regular")));
    }
    if d == 0 {
        return Err(Error::NoEdges);
    }
    let spec = eigensystem(&g.without_loops().adjacency_matrix());
    let dn = (d * g.n()) as f64;
    let sum: f64 = spec
        .multiplicities()
        .iter()
        .map(|&(mu, mult)| {
            let x = d as f64 - mu;
            if x <= ZERO_EIGENVALUE * dn {
                0.0
            } else {
                mult as f64 * x * x.log2()
            }
        })
        .sum();
    Ok(dn.log2() - sum / dn)
}

/// Cycle length `p` and copy count for `X(Z_n, {k, n−k})`. Supported when
/// `gcd(n, k)` is 1 (one `n`-cycle up to isomorphism) or `k` itself.
pub fn circulant_structure(n: usize, k: usize) -> Result<(usize, usize)> {
    if n < 3 || k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("need 0 < k < n and n >= 3, got n={n} k={k}")));
    }
    let k = k.min(n - k);
    let g = gcd(n, k);
    if g == 1 {
        Ok((n, 1))
    } else if g == k {
        Ok((n / k, k))
    } else {
        Err(Error::Unsupported(format!("gcd({n}, {k}) = {g} is neither 1 nor {k}")))
    }
}

/// Spectrum of `σ(X(Z_n, {k, n−k}))` from the sine formula
/// `2 sin²(πj/p) / n`, `j = 1..p`, each repeated once per cycle copy.
pub fn circulant_spectrum(n: usize, k: usize) -> Result<Vec<f64>> {
    let (p, copies) = circulant_structure(n, k)?;
    let nf = n as f64;
    let mut out = Vec::with_capacity(n);
    for _ in 0..copies {
        for j in 1..=p {
            let s = (PI * j as f64 / p as f64).sin();
            out.push(2.0 * s * s / nf);
        }
    }
    Ok(out)
}

pub fn circulant_entropy_exact(n: usize, k: usize) -> Result<f64> {
    Ok(entropy_of_values(&circulant_spectrum(n, k)?))
}

/// Large-cycle approximation `log2 n − 1 + 2C/k`.
pub fn circulant_entropy_approx(n: usize, k: usize) -> f64 {
    (n as f64).log2() - 1.0 + 2.0 * CIRCULANT_C / k as f64
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
