//! Dense complex polynomials.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Polynomial with complex coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialC {
    coeffs: Vec<Complex64>,
}

impl PolynomialC {
    /// Construct from coefficients (lowest first); trailing zeros are trimmed
    /// so the leading coefficient is nonzero unless this is the zero
    /// polynomial.
    pub fn new(mut coeffs: Vec<Complex64>) -> PolynomialC {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        PolynomialC { coeffs }
    }

    pub fn zero() -> PolynomialC {
        PolynomialC::new(vec![])
    }

    pub fn one() -> PolynomialC {
        PolynomialC::new(vec![Complex64::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> PolynomialC {
        PolynomialC::new(crate::series::derivative(&self.coeffs))
    }

    /// m-th derivative evaluated at a point.
    pub fn deriv_at(&self, m: usize, z: Complex64) -> Complex64 {
        if m > self.degree() {
            return Complex64::new(0.0, 0.0);
        }
        let mut coeffs: Vec<Complex64> = self.coeffs.clone();
        for _ in 0..m {
            coeffs = crate::series::derivative(&coeffs);
        }
        PolynomialC { coeffs }.eval(z)
    }

    pub fn mul(&self, other: &PolynomialC) -> PolynomialC {
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        PolynomialC::new(crate::series::mul_trunc(&self.coeffs, &other.coeffs, len))
    }

    pub fn scale(&self, s: Complex64) -> PolynomialC {
        PolynomialC::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}
