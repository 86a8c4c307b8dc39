//! Dense linear algebra over exact rationals and `Complex64`.

pub mod eigen;
pub mod hermitian;
pub mod rational;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub use eigen::{eigensystem, is_psd, psd_sqrt, PsdCheck, SpectrumResult};
pub use hermitian::HermitianMatrix;
pub use rational::{Rational, RationalMatrix};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = nalgebra::DVector<Complex64>;

pub const PSD_TOL: f64 = 1e-9;

/// Largest entrywise modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn kron(a: &HermitianMatrix, b: &HermitianMatrix) -> HermitianMatrix {
    a.kron(b)
}

/// `|v⟩⟨v|`.
pub fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

/// Standard basis vector `e_i` in dimension `n`.
pub fn basis(n: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[i] = Complex64::new(1.0, 0.0);
    v
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
