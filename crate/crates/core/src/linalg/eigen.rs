//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Real symmetric input (the exact-rational case) is rotated in the real
//! field; general Hermitian input uses complex Jacobi rotations that first
//! strip the phase of the pivot. Sweeps stop once the off-diagonal Frobenius
//! norm drops below `JACOBI_TOL` relative to the full Frobenius norm.

use num_complex::Complex64;

use super::hermitian::HermitianMatrix;
use super::CMatrix;
use crate::error::{Error, Result};

pub const JACOBI_TOL: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;
pub const MULTIPLICITY_TOL: f64 = 1e-8;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// (columns of `vectors`).
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
    pub sweeps: usize,
}

impl SpectrumResult {
    /// Distinct eigenvalues with multiplicities. Consecutive eigenvalues
    /// closer than `tol` share a group; the group value is their mean.
    pub fn grouped(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &v in &self.values {
            match out.last_mut() {
                Some((last, count, sum)) if (v - *last).abs() <= tol => {
                    *last = v;
                    *count += 1;
                    *sum += v;
                }
                _ => out.push((v, 1, v)),
            }
        }
        out.into_iter().map(|(_, c, s)| (s / c as f64, c)).collect()
    }

    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        self.grouped(MULTIPLICITY_TOL)
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Number of eigenvalues with `|λ| <= tol`.
    pub fn zero_count(&self, tol: f64) -> usize {
        self.values.iter().filter(|v| v.abs() <= tol).count()
    }

    /// `Σ λ_i v_i v_i†`.
    pub fn reconstruct(&self) -> CMatrix {
        self.reconstruct_with(|x| x)
    }

    /// `Σ f(λ_i) v_i v_i†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let mut out = CMatrix::zeros(n, n);
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            let v = self.vectors.column(k);
            for i in 0..n {
                let vi = v[i] * w;
                for j in 0..n {
                    out[(i, j)] += vi * v[j].conj();
                }
            }
        }
        out
    }
}

pub fn eigensystem(a: &HermitianMatrix) -> SpectrumResult {
    let n = a.dim();
    if n == 0 {
        return SpectrumResult { values: vec![], vectors: CMatrix::zeros(0, 0), sweeps: 0 };
    }
    let (values, vectors, sweeps) = if a.is_exact_real() {
        let m = a.to_real_vec();
        let (vals, vecs, sweeps) = jacobi_real(m, n);
        let vectors = CMatrix::from_fn(n, n, |i, j| Complex64::new(vecs[i * n + j], 0.0));
        (vals, vectors, sweeps)
    } else {
        jacobi_complex(a.to_complex())
    };
    sort_ascending(values, vectors, sweeps)
}

fn sort_ascending(values: Vec<f64>, vectors: CMatrix, sweeps: usize) -> SpectrumResult {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
    let sorted_values = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors = CMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    SpectrumResult { values: sorted_values, vectors: sorted_vectors, sweeps }
}

/// Jacobi on a real symmetric row-major matrix. Returns unsorted eigenvalues,
/// row-major eigenvector matrix (eigenvectors in columns) and sweep count.
fn jacobi_real(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>, usize) {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let total: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = JACOBI_TOL * total.max(f64::MIN_POSITIVE);
    let mut sweeps = 0;
    while sweeps < JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A <- A J with J = [[c, s], [-s, c]] on (p, q)
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                // A <- J^T A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    (values, v, sweeps)
}

fn jacobi_complex(mut a: CMatrix) -> (Vec<f64>, CMatrix, usize) {
    let n = a.nrows();
    let mut v = CMatrix::identity(n, n);
    let total = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = JACOBI_TOL * total.max(f64::MIN_POSITIVE);
    let mut sweeps = 0;
    while sweeps < JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[(i, j)].norm_sqr();
                }
            }
        }
        if off.sqrt() <= threshold {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let phase = apq / g;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = I except J_pp = J_qq = c, J_pq = s e, J_qp = -s conj(e).
                let jpq = phase * s;
                let jqp = -phase.conj() * s;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c + aqk * jqp.conj();
                    a[(q, k)] = apk * jpq.conj() + aqk * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * c;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[(i, i)].re).collect();
    (values, v, sweeps)
}

/// Outcome of a PSD check; `min_eigenvalue` is reported either way.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsdCheck {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
}

pub fn is_psd(a: &HermitianMatrix, tol: f64) -> PsdCheck {
    let min = eigensystem(a).min();
    PsdCheck { is_psd: min >= -tol, min_eigenvalue: min }
}

const SQRT_NEG_TOL: f64 = 1e-10;

/// Principal square root of a PSD matrix. Eigenvalues within roundoff of
/// zero (relative to the largest) are snapped to zero first.
pub fn psd_sqrt(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let spec = eigensystem(a);
    psd_sqrt_of(&spec)
}

pub(crate) fn psd_sqrt_of(spec: &SpectrumResult) -> Result<HermitianMatrix> {
    let min = spec.min();
    if min < -SQRT_NEG_TOL {
        return Err(Error::NotPsd(min));
    }
    let floor = 1e-12 * spec.max().abs().max(1.0);
    let r = spec.reconstruct_with(|x| if x <= floor { 0.0 } else { x.sqrt() });
    HermitianMatrix::from_complex(r, 1e-8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, RationalMatrix};
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn herm_from_rows(rows: &[&[i64]]) -> HermitianMatrix {
        HermitianMatrix::from_rational(RationalMatrix::from_int_rows(rows)).unwrap()
    }

    fn random_hermitian(n: usize, vals: &[f64]) -> HermitianMatrix {
        let mut m = CMatrix::zeros(n, n);
        let mut it = vals.iter().cycle();
        for i in 0..n {
            m[(i, i)] = Complex64::new(*it.next().unwrap(), 0.0);
            for j in 0..i {
                let z = Complex64::new(*it.next().unwrap(), *it.next().unwrap());
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        HermitianMatrix::from_complex(m, 0.0).unwrap()
    }

    fn check_decomposition(a: &HermitianMatrix) {
        let n = a.dim();
        let spec = eigensystem(a);
        assert!(spec.values.windows(2).all(|w| w[0] <= w[1]));
        let err = max_abs(&(spec.reconstruct() - a.to_complex()));
        assert!(err <= 1e-10 * n as f64, "reconstruction error {err}");
        let gram = spec.vectors.adjoint() * &spec.vectors;
        let dev = max_abs(&(gram - CMatrix::identity(n, n)));
        assert!(dev <= 1e-10, "orthonormality {dev}");
    }

    #[test]
    fn two_by_two_real() {
        let a = herm_from_rows(&[&[1, -1], &[-1, 1]]);
        let spec = eigensystem(&a);
        assert!((spec.values[0]).abs() < 1e-14);
        assert!((spec.values[1] - 2.0).abs() < 1e-14);
        check_decomposition(&a);
    }

    #[test]
    fn agrees_with_nalgebra_on_real_input() {
        let a = herm_from_rows(&[&[4, 1, 0, 2], &[1, 3, 1, 0], &[0, 1, 2, 5], &[2, 0, 5, 1]]);
        let ours = eigensystem(&a).values;
        let dm = DMatrix::from_fn(4, 4, |i, j| a.get(i, j).re);
        let mut theirs: Vec<f64> = dm.symmetric_eigen().eigenvalues.iter().copied().collect();
        theirs.sort_by(f64::total_cmp);
        for (x, y) in ours.iter().zip(&theirs) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_pauli_y() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(0.0, -1.0);
        m[(1, 0)] = Complex64::new(0.0, 1.0);
        let a = HermitianMatrix::from_complex(m, 0.0).unwrap();
        let spec = eigensystem(&a);
        assert!((spec.values[0] + 1.0).abs() < 1e-14);
        assert!((spec.values[1] - 1.0).abs() < 1e-14);
        check_decomposition(&a);
    }

    #[test]
    fn grouping_counts_multiplicity() {
        let a = herm_from_rows(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        let groups = eigensystem(&a).multiplicities();
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].1, 1);
        assert_eq!(groups[1].1, 2);
        assert!((groups[1].0 - 3.0).abs() < 1e-12);
    }

    #[test]
    fn psd_checks() {
        assert!(is_psd(&HermitianMatrix::zeros(3), PSD_TOL).is_psd);
        let neg = herm_from_rows(&[&[0, 1], &[1, 0]]);
        let chk = is_psd(&neg, PSD_TOL);
        assert!(!chk.is_psd);
        assert!((chk.min_eigenvalue + 1.0).abs() < 1e-14);
    }

    #[test]
    fn sqrt_of_diagonal() {
        let a = herm_from_rows(&[&[4, 0], &[0, 9]]);
        let r = psd_sqrt(&a).unwrap();
        assert!((r.get(0, 0).re - 2.0).abs() < 1e-14);
        assert!((r.get(1, 1).re - 3.0).abs() < 1e-14);
        assert!(r.get(0, 1).norm() < 1e-14);
        assert!(psd_sqrt(&herm_from_rows(&[&[0, 1], &[1, 0]])).is_err());
    }

    const PSD_TOL: f64 = crate::linalg::PSD_TOL;

    proptest! {
        #[test]
        fn random_hermitian_decomposes(n in 1usize..7, vals in prop::collection::vec(-1.0f64..1.0, 64)) {
            let a = random_hermitian(n, &vals);
            check_decomposition(&a);
        }

        #[test]
        fn permutation_similarity_keeps_spectrum(
            n in 2usize..7,
            vals in prop::collection::vec(-1.0f64..1.0, 64),
            seed in any::<u64>(),
        ) {
            let a = random_hermitian(n, &vals);
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let x = eigensystem(&a).values;
            let y = eigensystem(&a.permute(&perm)).values;
            for (u, v) in x.iter().zip(&y) {
                prop_assert!((u - v).abs() <= 1e-10);
            }
        }

        #[test]
        fn sqrt_squares_back_and_commutes(n in 1usize..6, vals in prop::collection::vec(-1.0f64..1.0, 64)) {
            let b = random_hermitian(n, &vals).to_complex();
            let a = HermitianMatrix::from_complex(&b * b.adjoint(), 1e-12).unwrap();
            let r = psd_sqrt(&a).unwrap().to_complex();
            let ac = a.to_complex();
            prop_assert!(max_abs(&(&r * &r - &ac)) <= 1e-9);
            prop_assert!(max_abs(&(&r * &ac - &ac * &r)) <= 1e-9);
        }
    }
}
