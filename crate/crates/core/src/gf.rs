//! Generating functions, the inverse-series coefficients, and direct
//! evaluation of `pi_n(x)/n!`.
//!
//! Two kinds of generating function are supported: complex polynomials
//! (zeros located once by the simultaneous root finder, derivatives exact)
//! and the Bernoulli function `g(z) = (e^z - 1)/z` with zeros `2 pi i k`.
//! These cover every family exercised by the rest of the crate.

use crate::bigfloat::{Bf, BfComplex};
use crate::logc::LogComplex;
use crate::poly::PolynomialC;
use num_bigint::BigInt;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Tolerance on `|g(zeta)|` below which a point counts as a zero
/// (double-precision root polishing scale).
pub const TOL_ZERO: f64 = 1e-10;

/// Threshold above which plain-double Appell coefficients overflow `n!`.
pub const N_PLAIN_LIMIT: u32 = 170;

#[derive(Debug, Error)]
pub enum GfError {
    #[error("g(0) vanishes (|g(0)| < {TOL_ZERO}); the family is undefined")]
    ZeroAtOrigin,
    #[error("root finding on g failed: {0}")]
    RootFinding(String),
    #[error("n = {0} exceeds the plain-double limit {N_PLAIN_LIMIT}; use the LogComplex form")]
    NeedLogForm(u32),
    #[error("coefficient overflow in plain-double form; use the LogComplex form")]
    CoefficientOverflow,
}

/// A zero of `g` with its multiplicity.
#[derive(Clone, Copy, Debug)]
pub struct Zero {
    pub location: Complex64,
    pub multiplicity: u32,
}

#[derive(Clone, Debug)]
enum Kind {
    Poly {
        poly: PolynomialC,
        zeros: Vec<Zero>,
    },
    Bernoulli,
}

/// A generating function `g` with `g(0) != 0`: evaluator, derivatives,
/// Taylor coefficients at the origin, and its zero set.
#[derive(Clone, Debug)]
pub struct GeneratingFunction {
    kind: Kind,
}

impl GeneratingFunction {
    /// Polynomial `g` from coefficients (lowest first). Locates and polishes
    /// all zeros, grouping multiple roots.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<GeneratingFunction, GfError> {
        let poly = PolynomialC::new(coeffs);
        let scale = poly.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 || poly.eval(Complex64::new(0.0, 0.0)).norm() < TOL_ZERO * scale {
            return Err(GfError::ZeroAtOrigin);
        }
        let zeros = if poly.degree() == 0 {
            vec![]
        } else {
            let rf = crate::roots::aberth(poly.coeffs(), 400, 1e-14);
            if rf.roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(GfError::RootFinding("non-finite root".into()));
            }
            cluster_roots(&poly, rf.roots)
        };
        Ok(GeneratingFunction {
            kind: Kind::Poly { poly, zeros },
        })
    }

    /// The constant function `g = c`.
    pub fn constant(c: Complex64) -> Result<GeneratingFunction, GfError> {
        GeneratingFunction::polynomial(vec![c])
    }

    /// `g(z) = (e^z - 1)/z`, the Bernoulli generating function. Zeros
    /// `2 pi i k`, `k != 0`, all simple.
    pub fn bernoulli() -> GeneratingFunction {
        GeneratingFunction {
            kind: Kind::Bernoulli,
        }
    }

    pub fn is_bernoulli(&self) -> bool {
        matches!(self.kind, Kind::Bernoulli)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match &self.kind {
            Kind::Poly { poly, .. } => poly.eval(z),
            Kind::Bernoulli => bernoulli_deriv(0, z),
        }
    }

    /// `g^(m)(z)`.
    pub fn deriv(&self, m: u32, z: Complex64) -> Complex64 {
        match &self.kind {
            Kind::Poly { poly, .. } => poly.deriv_at(m as usize, z),
            Kind::Bernoulli => bernoulli_deriv(m, z),
        }
    }

    pub fn g0(&self) -> Complex64 {
        self.eval(Complex64::new(0.0, 0.0))
    }

    /// Taylor coefficients of `g` at the origin, `count` of them.
    pub fn taylor0(&self, count: usize) -> Vec<Complex64> {
        match &self.kind {
            Kind::Poly { poly, .. } => (0..count).map(|k| poly.coeff(k)).collect(),
            Kind::Bernoulli => {
                // 1/(k+1)!
                let mut out = Vec::with_capacity(count);
                let mut inv_fact = 1.0f64;
                for k in 0..count {
                    inv_fact /= (k + 1) as f64;
                    let _ = k;
                    out.push(Complex64::new(inv_fact, 0.0));
                }
                // first entry should be 1/1! = 1
                out
            }
        }
    }

    pub(crate) fn taylor0_bf(&self, count: usize) -> Vec<BfComplex> {
        match &self.kind {
            Kind::Poly { poly, .. } => (0..count)
                .map(|k| BfComplex::from_c64(poly.coeff(k)))
                .collect(),
            Kind::Bernoulli => {
                let mut out = Vec::with_capacity(count);
                let mut fact = BigInt::from(1);
                for k in 0..count {
                    fact *= BigInt::from((k + 1) as u64);
                    out.push(BfComplex::from_real(Bf::from_ratio(
                        &BigInt::from(1),
                        &fact,
                    )));
                }
                out
            }
        }
    }

    /// Zeros with modulus at most `r`, sorted by modulus.
    pub fn zeros_in_disk(&self, r: f64) -> Vec<Zero> {
        match &self.kind {
            Kind::Poly { zeros, .. } => zeros
                .iter()
                .copied()
                .filter(|z| z.location.norm() <= r)
                .collect(),
            Kind::Bernoulli => {
                let mut out = vec![];
                let kmax = (r / (2.0 * PI)).floor() as i64;
                for k in 1..=kmax {
                    out.push(Zero {
                        location: Complex64::new(0.0, 2.0 * PI * k as f64),
                        multiplicity: 1,
                    });
                    out.push(Zero {
                        location: Complex64::new(0.0, -2.0 * PI * k as f64),
                        multiplicity: 1,
                    });
                }
                out.sort_by(|a, b| {
                    a.location
                        .norm()
                        .partial_cmp(&b.location.norm())
                        .unwrap()
                        .then(b.location.im.partial_cmp(&a.location.im).unwrap())
                });
                out
            }
        }
    }

    /// All zeros of a polynomial kind (the full finite list).
    pub fn all_polynomial_zeros(&self) -> Option<&[Zero]> {
        match &self.kind {
            Kind::Poly { zeros, .. } => Some(zeros),
            Kind::Bernoulli => None,
        }
    }

    /// Smallest zero modulus (`+inf` when `g` has no zeros).
    pub fn r0(&self) -> f64 {
        match &self.kind {
            Kind::Poly { zeros, .. } => zeros
                .iter()
                .map(|z| z.location.norm())
                .fold(f64::INFINITY, f64::min),
            Kind::Bernoulli => 2.0 * PI,
        }
    }
}

/// Bernoulli `g` and derivatives: series near the origin, the Leibniz
/// recurrence `z g^(m) + m g^(m-1) = e^z` away from it.
fn bernoulli_deriv(m: u32, z: Complex64) -> Complex64 {
    const R_SWITCH: f64 = 6.0;
    if z.norm() <= R_SWITCH {
        // g^(m)(z) = sum_j z^j / (j! (j+m+1))
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0); // z^j/j!
        for j in 0..200u32 {
            let contrib = term / (j + m + 1) as f64;
            sum += contrib;
            if contrib.norm() < 1e-18 * sum.norm().max(1e-300) && j > 4 {
                break;
            }
            term = term * z / (j + 1) as f64;
        }
        sum
    } else {
        let ez = z.exp();
        let mut g = (ez - 1.0) / z;
        for k in 1..=m {
            g = (ez - k as f64 * g) / z;
        }
        g
    }
}

/// Group nearby roots into multiple zeros and polish each cluster.
fn cluster_roots(poly: &PolynomialC, mut roots: Vec<Complex64>) -> Vec<Zero> {
    roots.sort_by(|a, b| {
        a.norm()
            .partial_cmp(&b.norm())
            .unwrap()
            .then(a.arg().partial_cmp(&b.arg()).unwrap())
    });
    let scale = roots.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let cluster_tol = 1e-5 * scale;
    let mut zeros: Vec<Zero> = vec![];
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![roots[i]];
        used[i] = true;
        for j in (i + 1)..roots.len() {
            if !used[j] && (roots[j] - roots[i]).norm() < cluster_tol {
                members.push(roots[j]);
                used[j] = true;
            }
        }
        let p = members.len() as u32;
        let centroid = members.iter().sum::<Complex64>() / members.len() as f64;
        // Polish the cluster on the (p-1)-th derivative, where the zero is
        // simple.
        let mut zeta = centroid;
        for _ in 0..40 {
            let f = poly.deriv_at(p as usize - 1, zeta);
            let df = poly.deriv_at(p as usize, zeta);
            if df.norm() == 0.0 {
                break;
            }
            let step = f / df;
            zeta -= step;
            if step.norm() < 1e-15 * zeta.norm().max(1e-10) {
                break;
            }
        }
        zeros.push(Zero {
            location: zeta,
            multiplicity: p,
        });
    }
    zeros.sort_by(|a, b| a.location.norm().partial_cmp(&b.location.norm()).unwrap());
    zeros
}

/// Coefficients `c_0..c_N` of `1/g` at the origin:
/// `c_n = (delta_{n0} - sum_{j=1..n} g_j c_{n-j}) / g_0`.
pub fn inverse_taylor(g: &GeneratingFunction, n: usize) -> Result<Vec<Complex64>, GfError> {
    if g.g0().norm() < TOL_ZERO {
        return Err(GfError::ZeroAtOrigin);
    }
    Ok(crate::series::recip_trunc(&g.taylor0(n + 1), n + 1))
}

/// Same recurrence on the high-precision floats used by the oracle.
pub(crate) fn inverse_taylor_bf(g: &GeneratingFunction, n: usize) -> Vec<BfComplex> {
    let gs = g.taylor0_bf(n + 1);
    let g0_inv = gs[0].recip();
    let mut c: Vec<BfComplex> = Vec::with_capacity(n + 1);
    c.push(g0_inv.clone());
    for m in 1..=n {
        let mut s = BfComplex::zero();
        for j in 1..=m {
            s = s.add(&gs[j].mul(&c[m - j]));
        }
        c.push(s.neg().mul(&g0_inv));
    }
    c
}

/// The Appell polynomial `p_n` in plain doubles. Coefficient of `x^j` is
/// `n!/j! * c_{n-j}`. Fails for `n` past the factorial overflow threshold or
/// when an individual coefficient overflows.
pub fn appell_coefficients(g: &GeneratingFunction, n: u32) -> Result<PolynomialC, GfError> {
    if n > N_PLAIN_LIMIT {
        return Err(GfError::NeedLogForm(n));
    }
    let c = inverse_taylor_bf(g, n as usize);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    // n!/j! accumulated exactly.
    let mut falling = BigInt::from(1);
    for j in (0..=n).rev() {
        // falling = n!/j! once we reach row j
        let v = c[(n - j) as usize]
            .mul_real(&Bf::from_bigint(&falling))
            .to_c64();
        coeffs.push((j, v));
        if j > 0 {
            falling *= BigInt::from(j);
        }
    }
    coeffs.reverse();
    if coeffs.iter().any(|(_, v)| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(GfError::CoefficientOverflow);
    }
    Ok(PolynomialC::new(coeffs.into_iter().map(|(_, v)| v).collect()))
}

/// Appell coefficients in log form, usable for any `n`.
pub fn appell_coefficients_log(g: &GeneratingFunction, n: u32) -> Vec<LogComplex> {
    let c = inverse_taylor_bf(g, n as usize);
    let mut falling = BigInt::from(1);
    let mut out = vec![LogComplex::ZERO; n as usize + 1];
    for j in (0..=n).rev() {
        out[j as usize] = c[(n - j) as usize]
            .mul_real(&Bf::from_bigint(&falling))
            .to_log_complex();
        if j > 0 {
            falling *= BigInt::from(j);
        }
    }
    out
}

/// Precomputed coefficients of `p_n(y)/n!` for repeated evaluation of
/// `pi_n(x)/n! = p_n(n x)/n!` at many `x`.
pub struct DirectEvaluator {
    n: u32,
    /// q_j = c_{n-j}/j!, so that p_n(y)/n! = sum_j q_j y^j.
    q: Vec<BfComplex>,
}

impl DirectEvaluator {
    pub fn new(g: &GeneratingFunction, n: u32) -> DirectEvaluator {
        let c = inverse_taylor_bf(g, n as usize);
        let mut q = Vec::with_capacity(n as usize + 1);
        let mut fact = BigInt::from(1);
        for j in 0..=n as usize {
            if j > 0 {
                fact *= BigInt::from(j as u64);
            }
            let inv = Bf::from_ratio(&BigInt::from(1), &fact);
            q.push(c[n as usize - j].mul_real(&inv));
        }
        DirectEvaluator { n, q }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `pi_n(x)/n!` by Horner at `y = n x`, carried out at working precision
    /// so the heavy cancellation near the small-|x| regime cannot reach the
    /// returned digits.
    pub fn eval(&self, x: Complex64) -> LogComplex {
        let y = BfComplex::from_c64(x).mul_real(&Bf::from_bigint(&BigInt::from(self.n)));
        let mut acc = BfComplex::zero();
        for qj in self.q.iter().rev() {
            acc = acc.mul(&y).add(qj);
        }
        acc.to_log_complex()
    }

    /// Coefficients `q_j` of `p_n(y)/n!` in log form (used by the root
    /// finder).
    pub fn coeffs_log(&self) -> Vec<LogComplex> {
        self.q.iter().map(|c| c.to_log_complex()).collect()
    }

    /// Value and x-derivative of `pi_n(x)/n!` in one pass (Newton polishing
    /// of roots).
    pub fn eval_with_derivative(&self, x: Complex64) -> (LogComplex, LogComplex) {
        let nbf = Bf::from_bigint(&BigInt::from(self.n));
        let y = BfComplex::from_c64(x).mul_real(&nbf);
        let mut p = BfComplex::zero();
        let mut dp = BfComplex::zero();
        for qj in self.q.iter().rev() {
            dp = dp.mul(&y).add(&p);
            p = p.mul(&y).add(qj);
        }
        // d/dx = n * d/dy
        (p.to_log_complex(), dp.mul_real(&nbf).to_log_complex())
    }
}

/// One-shot direct evaluation of `pi_n(x)/n!` (the oracle all contour
/// representations are tested against).
pub fn eval_rescaled_direct(g: &GeneratingFunction, n: u32, x: Complex64) -> LogComplex {
    DirectEvaluator::new(g, n).eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gf_poly(cs: &[f64]) -> GeneratingFunction {
        GeneratingFunction::polynomial(cs.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn inverse_taylor_identity_and_geometric() {
        let one = GeneratingFunction::constant(c(1.0, 0.0)).unwrap();
        assert_eq!(
            inverse_taylor(&one, 3).unwrap(),
            vec![c(1.0, 0.0); 1]
                .into_iter()
                .chain(vec![c(0.0, 0.0); 3])
                .collect::<Vec<_>>()
        );
        let g = gf_poly(&[1.0, -1.0]); // 1 - z
        let inv = inverse_taylor(&g, 3).unwrap();
        for coeff in inv {
            assert!((coeff - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn inverse_taylor_bernoulli_head() {
        // Verified by the independent product check below; the head is the
        // classical 1, -1/2, 1/12, 0, -1/720.
        let g = GeneratingFunction::bernoulli();
        let inv = inverse_taylor(&g, 4).unwrap();
        let expect = [1.0, -0.5, 1.0 / 12.0, 0.0, -1.0 / 720.0];
        for (a, b) in inv.iter().zip(expect) {
            assert!((a - c(b, 0.0)).norm() < 1e-14);
        }
        // Product with the g-series is 1 + O(z^5): residuals < 1e-12.
        let prod = crate::series::mul_trunc(&inv, &g.taylor0(5), 5);
        assert!((prod[0] - c(1.0, 0.0)).norm() < 1e-14);
        for t in &prod[1..] {
            assert!(t.norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_rejects_zero_at_origin() {
        assert!(matches!(
            GeneratingFunction::polynomial(vec![c(0.0, 0.0), c(1.0, 0.0)]),
            Err(GfError::ZeroAtOrigin)
        ));
    }

    #[test]
    fn appell_monomials_for_constant_g() {
        let one = GeneratingFunction::constant(c(1.0, 0.0)).unwrap();
        let p3 = appell_coefficients(&one, 3).unwrap();
        assert_eq!(p3.degree(), 3);
        for k in 0..3 {
            assert!(p3.coeff(k).norm() < 1e-15);
        }
        assert!((p3.coeff(3) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_identity() {
        // p_n' = n p_{n-1}, coefficient-wise, for a generic polynomial g.
        let g = gf_poly(&[-2.0, 2.0, -1.0, 1.0]); // (z-1)(z^2+2)
        let p5 = appell_coefficients(&g, 5).unwrap();
        let p4 = appell_coefficients(&g, 4).unwrap();
        let d = p5.derivative();
        for k in 0..=4 {
            let want = p4.coeff(k) * 5.0;
            assert!(
                (d.coeff(k) - want).norm() <= 1e-12 * want.norm().max(1.0),
                "k={k}"
            );
        }
    }

    #[test]
    fn direct_eval_examples() {
        // g = 1: pi_2(1)/2! = (2*1)^2/2 = 2.
        let one = GeneratingFunction::constant(c(1.0, 0.0)).unwrap();
        let v = eval_rescaled_direct(&one, 2, c(1.0, 0.0)).to_complex();
        assert!((v - c(2.0, 0.0)).norm() < 1e-14);

        // Bernoulli: pi_2(1/2)/2! = B_2(1)/2 = 1/12.
        let b = GeneratingFunction::bernoulli();
        let v = eval_rescaled_direct(&b, 2, c(0.5, 0.0)).to_complex();
        assert!((v - c(1.0 / 12.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn direct_eval_matches_brute_force_for_shifted_g() {
        // Independent brute-force oracle for g(z) = z - 2: solve the first
        // two coefficients of 1/g by hand and form p_1 directly.
        // (sum c_k z^k)(z - 2) = 1 gives c_0 = -1/2, c_1 = -1/4, so
        // p_1(x) = c_0 x + c_1 and pi_1(1)/1! = p_1(1) = -3/4.
        let g = gf_poly(&[-2.0, 1.0]);
        let inv = inverse_taylor(&g, 3).unwrap();
        let prod = crate::series::mul_trunc(&inv, &g.taylor0(4), 4);
        assert!((prod[0] - c(1.0, 0.0)).norm() < 1e-14);
        for t in &prod[1..] {
            assert!(t.norm() < 1e-13);
        }
        assert!((inv[0] - c(-0.5, 0.0)).norm() < 1e-15);
        assert!((inv[1] - c(-0.25, 0.0)).norm() < 1e-15);
        let v = eval_rescaled_direct(&g, 1, c(1.0, 0.0)).to_complex();
        assert!((v - c(-0.75, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn polynomial_zero_listing() {
        let g = gf_poly(&[-2.0, 2.0, -1.0, 1.0]); // (z-1)(z^2+2)
        let zs = g.zeros_in_disk(10.0);
        assert_eq!(zs.len(), 3);
        assert!((zs[0].location - c(1.0, 0.0)).norm() < 1e-10);
        assert!((zs[1].location.norm() - 2f64.sqrt()).abs() < 1e-10);
        assert!((g.r0() - 1.0).abs() < 1e-10);
        // Zero-quality invariant: |g(zeta)| < tol, |g'(zeta)| > tol.
        for z in &zs {
            assert!(g.eval(z.location).norm() < TOL_ZERO);
            assert!(g.deriv(1, z.location).norm() > TOL_ZERO);
        }
    }

    #[test]
    fn multiple_zero_detected() {
        // (z-1)^2 (z+3) = z^3 + z^2 - 5z + 3
        let g = gf_poly(&[3.0, -5.0, 1.0, 1.0]);
        let zs = g.zeros_in_disk(10.0);
        let double = zs.iter().find(|z| z.multiplicity == 2).expect("double zero");
        assert!((double.location - c(1.0, 0.0)).norm() < 1e-8);
        assert!(g.deriv(1, double.location).norm() < 1e-6);
        assert!(g.deriv(2, double.location).norm() > 1.0);
    }

    #[test]
    fn bernoulli_zero_listing() {
        let g = GeneratingFunction::bernoulli();
        let zs = g.zeros_in_disk(15.0);
        assert_eq!(zs.len(), 4);
        assert!((zs[0].location - c(0.0, 2.0 * PI)).norm() < 1e-12);
        assert!((zs[1].location - c(0.0, -2.0 * PI)).norm() < 1e-12);
        assert_eq!(g.r0(), 2.0 * PI);
    }

    #[test]
    fn bernoulli_eval_consistency() {
        // Series region and recurrence region agree where they overlap, and
        // the function value matches (e^z-1)/z computed directly.
        for &z in &[c(5.9, 0.3), c(6.1, 0.3), c(-5.9, -2.0), c(-6.5, 1.0)] {
            let g = GeneratingFunction::bernoulli();
            let direct = (z.exp() - 1.0) / z;
            assert!((g.eval(z) - direct).norm() < 1e-12 * direct.norm());
            // Derivative via central differences.
            let h = 1e-5;
            let fd = (g.eval(z + c(h, 0.0)) - g.eval(z - c(h, 0.0))) / (2.0 * h);
            assert!((g.deriv(1, z) - fd).norm() < 1e-6 * fd.norm().max(1.0));
        }
        assert!((GeneratingFunction::bernoulli().g0() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn log_coefficients_beyond_factorial_overflow() {
        let g = GeneratingFunction::bernoulli();
        assert!(matches!(
            appell_coefficients(&g, 200),
            Err(GfError::NeedLogForm(200))
        ));
        let lc = appell_coefficients_log(&g, 200);
        assert_eq!(lc.len(), 201);
        // Leading coefficient of p_n is n!/n! * c_0 = 1 (g0 = 1).
        assert!(lc[200].log_mag.abs() < 1e-10);
    }
}
