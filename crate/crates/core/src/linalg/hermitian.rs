use num_complex::Complex64;
use num_traits::{Signed, Zero};

use super::rational::{Rational, RationalMatrix};
use super::CMatrix;
use crate::error::{Error, Result};

/// A square Hermitian matrix. Graph-derived matrices keep exact rational
/// entries; anything that went through floating point is stored as complex.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    entries: Entries,
}

#[derive(Clone, Debug, PartialEq)]
enum Entries {
    Rational(RationalMatrix),
    Complex(CMatrix),
}

impl HermitianMatrix {
    pub fn from_rational(m: RationalMatrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::NotHermitian(f64::NAN));
        }
        Ok(Self { entries: Entries::Rational(m) })
    }

    /// Accepts `m` if it is Hermitian within `tol`, then symmetrizes it so the
    /// stored matrix is exactly Hermitian.
    pub fn from_complex(m: CMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), actual: m.ncols() });
        }
        let n = m.nrows();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in 0..=i {
                dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if dev > tol {
            return Err(Error::NotHermitian(dev));
        }
        let mut h = m;
        for i in 0..n {
            h[(i, i)] = Complex64::new(h[(i, i)].re, 0.0);
            for j in 0..i {
                let v = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
                h[(i, j)] = v;
                h[(j, i)] = v.conj();
            }
        }
        Ok(Self { entries: Entries::Complex(h) })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { entries: Entries::Rational(RationalMatrix::zeros(dim)) }
    }

    pub fn identity(dim: usize) -> Self {
        Self { entries: Entries::Rational(RationalMatrix::identity(dim)) }
    }

    pub fn dim(&self) -> usize {
        match &self.entries {
            Entries::Rational(m) => m.dim(),
            Entries::Complex(m) => m.nrows(),
        }
    }

    /// True when entries are exact rationals (and therefore real).
    pub fn is_exact_real(&self) -> bool {
        matches!(self.entries, Entries::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&RationalMatrix> {
        match &self.entries {
            Entries::Rational(m) => Some(m),
            Entries::Complex(_) => None,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        match &self.entries {
            Entries::Rational(m) => Complex64::new(m.to_f64(i, j), 0.0),
            Entries::Complex(m) => m[(i, j)],
        }
    }

    pub fn to_complex(&self) -> CMatrix {
        match &self.entries {
            Entries::Rational(m) => m.to_complex(),
            Entries::Complex(m) => m.clone(),
        }
    }

    /// Real part as a dense row-major `f64` array.
    pub fn to_real_vec(&self) -> Vec<f64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.get(i, j).re);
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        match &self.entries {
            Entries::Rational(m) => num_traits::ToPrimitive::to_f64(&m.trace()).unwrap_or(f64::NAN),
            Entries::Complex(m) => m.trace().re,
        }
    }

    pub fn exact_trace(&self) -> Option<Rational> {
        self.as_rational().map(RationalMatrix::trace)
    }

    /// `tr(A^2)`, exact when the entries are rational.
    pub fn trace_of_square(&self) -> f64 {
        let n = self.dim();
        match &self.entries {
            Entries::Rational(m) => {
                let mut acc = Rational::zero();
                for i in 0..n {
                    for j in 0..n {
                        acc += m.get(i, j) * m.get(j, i);
                    }
                }
                num_traits::ToPrimitive::to_f64(&acc).unwrap_or(f64::NAN)
            }
            Entries::Complex(m) => (m * m).trace().re,
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        match (&self.entries, &other.entries) {
            (Entries::Rational(a), Entries::Rational(b)) => {
                Self { entries: Entries::Rational(a.kron(b)) }
            }
            _ => Self { entries: Entries::Complex(self.to_complex().kronecker(&other.to_complex())) },
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(match (&self.entries, &other.entries) {
            (Entries::Rational(a), Entries::Rational(b)) => Self { entries: Entries::Rational(a + b) },
            _ => Self { entries: Entries::Complex(self.to_complex() + other.to_complex()) },
        })
    }

    pub fn scale_rational(&self, k: Rational) -> Self {
        match &self.entries {
            Entries::Rational(a) => Self { entries: Entries::Rational(a.scale(k)) },
            Entries::Complex(a) => {
                let f = num_traits::ToPrimitive::to_f64(&k).unwrap_or(f64::NAN);
                Self { entries: Entries::Complex(a * Complex64::new(f, 0.0)) }
            }
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { entries: Entries::Complex(self.to_complex() * Complex64::new(k, 0.0)) }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        if let (Entries::Rational(a), Entries::Rational(b)) = (&self.entries, &other.entries) {
            return (a - b)
                .entries()
                .iter()
                .map(|x| num_traits::ToPrimitive::to_f64(&x.abs()).unwrap_or(f64::NAN))
                .fold(0.0, f64::max);
        }
        super::max_abs(&(self.to_complex() - other.to_complex()))
    }

    /// Exact equality for rational matrices, `max_abs_diff <= tol` otherwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match (&self.entries, &other.entries) {
            (Entries::Rational(a), Entries::Rational(b)) => a == b,
            _ => self.max_abs_diff(other) <= tol,
        }
    }

    /// Permutation similarity; basis vector `i` moves to position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        match &self.entries {
            Entries::Rational(a) => Self { entries: Entries::Rational(a.permute(perm)) },
            Entries::Complex(a) => {
                let n = a.nrows();
                let mut out = CMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        out[(perm[i], perm[j])] = a[(i, j)];
                    }
                }
                Self { entries: Entries::Complex(out) }
            }
        }
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        match &self.entries {
            Entries::Rational(a) => Self { entries: Entries::Rational(a.principal_submatrix(idx)) },
            Entries::Complex(a) => Self {
                entries: Entries::Complex(CMatrix::from_fn(idx.len(), idx.len(), |i, j| {
                    a[(idx[i], idx[j])]
                })),
            },
        }
    }

    /// Builds a matrix of the same kind whose `(i, j)` entry is taken from
    /// `(src(i, j))` of `self`. The caller guarantees the result is Hermitian.
    pub(crate) fn gather(&self, src: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        let n = self.dim();
        match &self.entries {
            Entries::Rational(a) => Self {
                entries: Entries::Rational(RationalMatrix::from_fn(n, |i, j| {
                    let (r, c) = src(i, j);
                    a.get(r, c)
                })),
            },
            Entries::Complex(a) => Self {
                entries: Entries::Complex(CMatrix::from_fn(n, n, |i, j| a[src(i, j)])),
            },
        }
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: other.dim() });
        }
        Ok(())
    }
}

impl From<RationalMatrix> for HermitianMatrix {
    /// Symmetric part is not taken; panics if `m` is not symmetric.
    fn from(m: RationalMatrix) -> Self {
        Self::from_rational(m).expect("rational matrix must be symmetric")
    }
}
