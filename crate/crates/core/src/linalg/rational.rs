use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::CMatrix;

pub type Rational = num_rational::Rational64;

/// Square matrix over exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    dim: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Rational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds from integer rows; panics on ragged input.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |i, j| {
            assert_eq!(rows[i].len(), dim, "row {i} has wrong length");
            Rational::from_integer(rows[i][j])
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.dim + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.dim + j] += v;
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, k: Rational) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&x| x * k).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sum(&self, i: usize) -> Rational {
        self.data[i * self.dim..(i + 1) * self.dim].iter().copied().sum()
    }

    /// Kronecker product; block (i, j) of the result is `self[i][j] * other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a * b, |r, c| self.get(r / b, c / b) * other.get(r % b, c % b))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]))
    }

    /// `P A P^T` for the permutation sending basis vector `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim);
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(perm[i], perm[j], self.get(i, j));
            }
        }
        out
    }

    pub fn to_f64(&self, i: usize, j: usize) -> f64 {
        self.get(i, j).to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_complex(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, self.dim, |i, j| Complex64::new(self.to_f64(i, j), 0.0))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, rhs.dim);
        RationalMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, rhs.dim);
        RationalMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix({})", self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn identity_kron_identity() {
        let i2 = RationalMatrix::identity(2);
        let i3 = RationalMatrix::identity(3);
        assert_eq!(i2.kron(&i3), RationalMatrix::identity(6));
    }

    #[test]
    fn kron_trace_is_multiplicative() {
        let a = RationalMatrix::from_fn(2, |i, j| r((i + 2 * j) as i64 + 1, 3));
        let b = RationalMatrix::from_fn(3, |i, j| r(i as i64 - j as i64, 5));
        assert_eq!(a.kron(&b).trace(), a.trace() * b.trace());
    }

    #[test]
    fn permute_is_similarity() {
        let a = RationalMatrix::from_int_rows(&[&[1, 2, 0], &[2, 3, 4], &[0, 4, 5]]);
        let p = a.permute(&[2, 0, 1]);
        assert_eq!(p.get(2, 0), a.get(0, 1));
        assert_eq!(p.trace(), a.trace());
    }
}
