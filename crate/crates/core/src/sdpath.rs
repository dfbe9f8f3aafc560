//! The steepest-descent curve `C` through the saddle at `theta = 0`.
//!
//! `C` is the set where `Im(e^{i theta} - i theta) = 0` with decreasing real
//! part; writing `theta = X + iY` it satisfies `X e^Y = sin X`. The curve is
//! parametrized by solving
//!
//! ```text
//! e^{i theta(tau)} - i theta(tau) = 1 - tau^2
//! ```
//!
//! For `tau > 0` the solution with `Re theta in (0, pi)` is
//! `theta(tau) = i (1 - tau^2 + W(-e^{tau^2 - 1}))` where `W` is the Lambert
//! branch with imaginary part in `(-pi, 0)` (the classical `W_{-1}` on this
//! ray); `theta(-tau) = -conj(theta(tau))`, and a Taylor series from the
//! complete-Bell-polynomial recurrence covers the branch point at `tau = 0`.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SdError {
    #[error("lambert_branch requires tau > 0 (got {0})")]
    NonPositiveTau(f64),
    #[error("psi is defined for |Re theta| < pi (got Re = {0})")]
    PsiDomain(f64),
}

/// A point of the parametrized curve.
#[derive(Clone, Copy, Debug)]
pub struct SDPoint {
    pub tau: f64,
    pub theta: Complex64,
    pub theta_prime: Complex64,
}

/// Derivatives `theta^(k)(0)`, `k = 1..=K`.
#[derive(Clone, Debug)]
pub struct SeriesCoeffs {
    pub derivs: Vec<Complex64>,
}

impl SeriesCoeffs {
    /// Taylor coefficient of `tau^k` (i.e. `theta^(k)(0)/k!`).
    pub fn taylor(&self) -> Vec<Complex64> {
        let mut fact = 1.0;
        self.derivs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                fact *= (i + 1) as f64;
                d / fact
            })
            .collect()
    }
}

/// Below this |tau| the Lambert solve loses accuracy to the square-root
/// branch point and the K = 12 Taylor series is used instead (truncation
/// error there is ~1e-13; the two paths are cross-checked in tests).
pub const TAU_SWITCH: f64 = 0.05;

const SERIES_ORDER: usize = 12;

/// `tau(y)^2 = 1 - y cot y + log(y / sin y)` on `y in (-pi, 0)`.
fn tau_sq_of_y(y: f64) -> f64 {
    1.0 - y * (y.cos() / y.sin()) + (y / y.sin()).ln()
}

fn dtau_sq_dy(y: f64) -> f64 {
    let s = y.sin();
    -2.0 * (y.cos() / s) + y / (s * s) + 1.0 / y
}

/// The Lambert value `W(-e^{tau^2-1})` on the branch with
/// `Im W in (-pi, 0)`: writes `W = x + i y`, `x = -y cot y`, and solves the
/// strictly decreasing `tau(y)` by bracketed bisection plus Newton.
pub fn lambert_branch(tau: f64) -> Result<Complex64, SdError> {
    if tau <= 0.0 {
        return Err(SdError::NonPositiveTau(tau));
    }
    let target = tau * tau;
    // tau^2(y) -> 0 as y -> 0^- and -> +inf as y -> -pi^+, decreasing in y.
    let mut lo = -PI + 1e-12;
    let mut hi = -1e-12;
    // Bisection to a safe bracket, then Newton.
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if tau_sq_of_y(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut y = 0.5 * (lo + hi);
    for _ in 0..8 {
        let f = tau_sq_of_y(y) - target;
        let d = dtau_sq_dy(y);
        if d == 0.0 {
            break;
        }
        let step = f / d;
        let mut ynew = y - step;
        if !(lo..=hi).contains(&ynew) {
            ynew = 0.5 * (lo + hi);
        }
        if tau_sq_of_y(ynew) > target {
            lo = ynew;
        } else {
            hi = ynew;
        }
        y = ynew;
        if step.abs() < 1e-16 * y.abs() {
            break;
        }
    }
    let x = -y * (y.cos() / y.sin());
    let w = Complex64::new(x, y);
    // Defining-equation check: w e^w = -e^{tau^2 - 1} (when representable).
    if target - 1.0 < 700.0 {
        let lhs = w * w.exp();
        let rhs = -((target - 1.0).exp());
        debug_assert!(
            (lhs - rhs).norm() <= 1e-10 * rhs.abs().max(1.0),
            "lambert residual too large at tau={tau}: {lhs} vs {rhs}"
        );
    }
    Ok(w)
}

fn theta_series() -> &'static Vec<Complex64> {
    static CACHE: OnceLock<Vec<Complex64>> = OnceLock::new();
    CACHE.get_or_init(|| theta_taylor_coeffs(SERIES_ORDER).taylor())
}

/// Point of `C` at parameter `tau`: Lambert path for `|tau| > TAU_SWITCH`,
/// Taylor series below; `theta'(tau) = 2 i tau / (i theta - tau^2)` away
/// from 0 and `sqrt(2)` at the saddle.
pub fn theta_of_tau(tau: f64) -> SDPoint {
    if tau == 0.0 {
        return SDPoint {
            tau,
            theta: Complex64::new(0.0, 0.0),
            theta_prime: Complex64::new(2f64.sqrt(), 0.0),
        };
    }
    let theta = if tau.abs() <= TAU_SWITCH {
        let coeffs = theta_series();
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            acc = acc * tau + c;
        }
        acc * tau // series starts at tau^1
    } else {
        let w = lambert_branch(tau.abs()).expect("tau.abs() > 0");
        let plus = Complex64::new(-w.im, 1.0 - tau * tau + w.re);
        if tau > 0.0 {
            plus
        } else {
            -plus.conj()
        }
    };
    let denom = Complex64::new(0.0, 1.0) * theta - tau * tau;
    let theta_prime = Complex64::new(0.0, 2.0 * tau) / denom;
    SDPoint {
        tau,
        theta,
        theta_prime,
    }
}

/// Derivatives of `theta` at 0 from the complete-Bell-polynomial recurrence.
///
/// With `a_k = i theta^(k)(0)` and `Y_m` the complete Bell polynomials of
/// `(a_1, ..., a_m)`, the defining equation forces `a_1 = i sqrt(2)` and, for
/// each `n >= 3`, `sum_{k=0}^{n-2} C(n-1,k) Y_{n-1-k} a_{k+1} = 0`, which is
/// linear in the highest unknown `a_{n-1}` (total coefficient `n a_1`).
pub fn theta_taylor_coeffs(order: usize) -> SeriesCoeffs {
    assert!(order >= 1);
    let i = Complex64::new(0.0, 1.0);
    let mut a: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); order + 1]; // a[1..=order]
    let mut y: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); order + 1];
    a[1] = i * 2f64.sqrt();
    y[0] = Complex64::new(1.0, 0.0);
    y[1] = a[1];
    for n in 3..=order + 1 {
        let j = n - 1; // unknown a_j
        if j > order {
            break;
        }
        // Provisional Y_j with a_j = 0.
        let row_j = crate::series::binomial_row(j - 1);
        let mut yj = Complex64::new(0.0, 0.0);
        for k in 0..=j - 1 {
            yj += row_j[k] * y[j - 1 - k] * a[k + 1];
        }
        // Equation sum with a_j = 0 everywhere.
        let row_n = crate::series::binomial_row(n - 1);
        let mut s0 = Complex64::new(0.0, 0.0);
        for k in 0..=n - 2 {
            let ym = if n - 1 - k == j { yj } else { y[n - 1 - k] };
            s0 += row_n[k] * ym * a[k + 1];
        }
        a[j] = -s0 / (n as f64 * a[1]);
        y[j] = yj + a[j];
    }
    SeriesCoeffs {
        derivs: (1..=order).map(|k| a[k] / i).collect(),
    }
}

/// Signed offset of `theta` from the curve `C`: positive strictly above,
/// zero on the curve, negative below. Defined for `|Re theta| < pi`.
pub fn psi(theta: Complex64) -> Result<f64, SdError> {
    let x = theta.re;
    if x.abs() >= PI {
        return Err(SdError::PsiDomain(x));
    }
    if x == 0.0 {
        Ok(theta.im)
    } else {
        Ok(theta.im - (x.sin() / x).ln())
    }
}

/// Contour-integral cross-check of [`lambert_branch`] over the rectangle
/// boundary of the region `{Re > -1, Im in (-pi, 0)}` (diagnostic only; the
/// production path is the root solve).
pub fn lambert_via_contour(tau: f64) -> Result<Complex64, SdError> {
    if tau <= 0.0 {
        return Err(SdError::NonPositiveTau(tau));
    }
    let z = -((tau * tau - 1.0).exp());
    let zc = Complex64::new(z, 0.0);
    let f = move |xi: Complex64| -> Complex64 { (xi + 1.0) / (xi * xi.exp() - zc) };
    let right = tau * tau + 4.0;
    let corners = [
        Complex64::new(-1.0, -PI),
        Complex64::new(right, -PI),
        Complex64::new(right, 0.0),
        Complex64::new(-1.0, 0.0),
    ];
    let integral = contour_over_rectangle(&f, &corners);
    Ok(zc * integral / (2.0 * PI * Complex64::new(0.0, 1.0)))
}

/// Contour-integral cross-check of `theta_+(tau)` over the rectangle
/// boundary of `{Re in (0, pi), Im < 0}` (diagnostic only).
pub fn theta_plus_via_contour(tau: f64) -> Result<Complex64, SdError> {
    if tau <= 0.0 {
        return Err(SdError::NonPositiveTau(tau));
    }
    let t2 = tau * tau;
    let f = move |xi: Complex64| -> Complex64 {
        let i = Complex64::new(0.0, 1.0);
        xi * (i * xi - t2) / ((i * xi).exp() - i * xi - 1.0 + t2)
    };
    let depth = t2 + 4.0;
    let corners = [
        Complex64::new(0.0, -depth),
        Complex64::new(PI, -depth),
        Complex64::new(PI, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    let integral = contour_over_rectangle(&f, &corners);
    Ok(integral / (2.0 * PI))
}

fn contour_over_rectangle<F: Fn(Complex64) -> Complex64>(
    f: &F,
    corners: &[Complex64; 4],
) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..4 {
        let a = corners[k];
        let b = corners[(k + 1) % 4];
        let d = b - a;
        let leg = crate::quad::integrate(
            &|t| f(a + d * t) * d,
            0.0,
            1.0,
            1e-10,
            1e-13,
            &[0.25, 0.5, 0.75],
        );
        total += leg.value;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lambert_known_point() {
        // tau^2 = 1 + log(pi/2) maps to W = -i pi/2:
        // (-i pi/2) e^{-i pi/2} = -pi/2 = -e^{tau^2-1}.
        let tau = (1.0 + (PI / 2.0).ln()).sqrt();
        let w = lambert_branch(tau).unwrap();
        assert!((w - c(0.0, -PI / 2.0)).norm() < 1e-12, "w = {w}");
    }

    #[test]
    fn lambert_branch_point_limit() {
        let w = lambert_branch(1e-4).unwrap();
        assert!((w - c(-1.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn lambert_residual_at_tau_one() {
        let w = lambert_branch(1.0).unwrap();
        let residual = (w * w.exp() + Complex64::new(1.0f64.exp() / 1.0f64.exp(), 0.0)).norm();
        // z e^z = -e^{0} = -1
        assert!(residual < 1e-12, "residual {residual}");
        assert!(w.im > -PI && w.im < 0.0);
    }

    #[test]
    fn theta_at_zero_and_prime() {
        let p = theta_of_tau(0.0);
        assert_eq!(p.theta, c(0.0, 0.0));
        assert!((p.theta_prime - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn theta_known_on_curve_point() {
        // From the Lambert point above: theta = pi/2 - i log(pi/2), and
        // X e^Y = sin X there.
        let tau = (1.0 + (PI / 2.0).ln()).sqrt();
        let p = theta_of_tau(tau);
        assert!((p.theta - c(PI / 2.0, -(PI / 2.0f64).ln())).norm() < 1e-12);
        let x = p.theta.re;
        let y = p.theta.im;
        assert!((x * y.exp() - x.sin()).abs() < 1e-12);
    }

    #[test]
    fn taylor_matches_printed_expansion() {
        // theta(tau) = sqrt(2) tau - i tau^2/3 - tau^3/(9 sqrt 2) + 2i tau^4/135
        //   + tau^5/(540 sqrt 2) + 4 i tau^6/8505 + 139 tau^7/(340200 sqrt 2)
        //   - 2 i tau^8/25515 + O(tau^9)
        let s2 = 2f64.sqrt();
        let expect = [
            c(s2, 0.0),
            c(0.0, -1.0 / 3.0),
            c(-1.0 / (9.0 * s2), 0.0),
            c(0.0, 2.0 / 135.0),
            c(1.0 / (540.0 * s2), 0.0),
            c(0.0, 4.0 / 8505.0),
            c(139.0 / (340200.0 * s2), 0.0),
            c(0.0, -2.0 / 25515.0),
        ];
        let got = theta_taylor_coeffs(8).taylor();
        for (k, (g, e)) in got.iter().zip(expect.iter()).enumerate() {
            assert!((g - e).norm() < 1e-14, "coeff tau^{}: {} vs {}", k + 1, g, e);
        }
    }

    #[test]
    fn small_tau_series_vs_printed_partial_sum() {
        let tau = 0.1f64;
        let s2 = 2f64.sqrt();
        let partial = c(s2 * tau, 0.0)
            + c(0.0, -tau.powi(2) / 3.0)
            + c(-tau.powi(3) / (9.0 * s2), 0.0)
            + c(0.0, 2.0 * tau.powi(4) / 135.0)
            + c(tau.powi(5) / (540.0 * s2), 0.0)
            + c(0.0, 4.0 * tau.powi(6) / 8505.0)
            + c(139.0 * tau.powi(7) / (340200.0 * s2), 0.0)
            + c(0.0, -2.0 * tau.powi(8) / 25515.0);
        let p = theta_of_tau(tau);
        assert!((p.theta - partial).norm() < 5e-9); // O(tau^9) truncation
    }

    #[test]
    fn series_and_lambert_paths_agree() {
        for &tau in &[0.045, 0.05, 0.055, 0.1, -0.045, -0.055] {
            let from_series = {
                let coeffs = theta_series();
                let mut acc = c(0.0, 0.0);
                for &co in coeffs.iter().rev() {
                    acc = acc * tau + co;
                }
                acc * tau
            };
            let from_lambert = {
                let w = lambert_branch(tau.abs()).unwrap();
                let plus = c(-w.im, 1.0 - tau * tau + w.re);
                if tau > 0.0 {
                    plus
                } else {
                    -plus.conj()
                }
            };
            assert!(
                (from_series - from_lambert).norm() < 1e-12,
                "tau={tau}: {from_series} vs {from_lambert}"
            );
        }
    }

    #[test]
    fn implicit_equation_residual_along_curve() {
        let i = c(0.0, 1.0);
        let mut worst = 0.0f64;
        let mut worst_reality = 0.0f64;
        for k in 0..=10_000 {
            let tau = -6.0 + 12.0 * k as f64 / 10_000.0;
            let p = theta_of_tau(tau);
            let lhs = (i * p.theta).exp() - i * p.theta;
            let res = (lhs - c(1.0 - tau * tau, 0.0)).norm();
            worst = worst.max(res);
            worst_reality = worst_reality.max(lhs.im.abs());
            // Reflection symmetry theta(-tau) = -conj(theta(tau)).
            if k % 100 == 0 {
                let q = theta_of_tau(-tau);
                assert!((q.theta + p.theta.conj()).norm() < 1e-12);
            }
        }
        assert!(worst < 1e-11, "implicit residual {worst}");
        assert!(worst_reality < 1e-11, "Im(e^{{i theta}} - i theta) {worst_reality}");
    }

    #[test]
    fn implicit_equation_on_real_strip_form() {
        // X e^Y = sin X along the sampled curve, away from the saddle.
        for k in 1..=200 {
            let tau = 0.03 * k as f64;
            let p = theta_of_tau(tau);
            let (x, y) = (p.theta.re, p.theta.im);
            assert!(x > 0.0 && x < PI);
            assert!((x * y.exp() - x.sin()).abs() < 1e-10, "tau={tau}");
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let h = 1e-5;
        for &tau in &[
            -3.0, -1.0, -0.2, -0.06, -0.05, -0.04, 0.0, 0.03, 0.05, 0.07, 0.5, 2.0, 4.0,
        ] {
            let p = theta_of_tau(tau);
            let fd = (theta_of_tau(tau + h).theta - theta_of_tau(tau - h).theta) / (2.0 * h);
            assert!(
                (p.theta_prime - fd).norm() < 1e-7,
                "tau={tau}: {} vs {}",
                p.theta_prime,
                fd
            );
        }
    }

    #[test]
    fn lambert_y_monotone_in_tau() {
        let mut last = 0.0f64; // y starts near 0^- for tau -> 0
        for k in 1..=500 {
            let tau = 0.02 * k as f64;
            let y = lambert_branch(tau).unwrap().im;
            assert!(y < last, "y(tau) must strictly decrease (tau={tau})");
            last = y;
        }
    }

    #[test]
    fn psi_values_and_signs() {
        assert_eq!(psi(c(0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(psi(c(0.0, 1.0)).unwrap(), 1.0);
        let on_curve = c(PI / 2.0, -(PI / 2.0f64).ln());
        assert!(psi(on_curve).unwrap().abs() < 1e-14);
        assert!(psi(c(PI, 0.0)).is_err());
        // Sign convention above/below the curve.
        let delta = 1e-6;
        for k in 1..=100 {
            let tau = -3.0 + 6.0 * k as f64 / 101.0;
            if tau.abs() < 1e-3 {
                continue;
            }
            let p = theta_of_tau(tau);
            let up = psi(p.theta + c(0.0, delta)).unwrap();
            let down = psi(p.theta - c(0.0, delta)).unwrap();
            assert!(up > 0.0, "tau={tau}");
            assert!(down < 0.0, "tau={tau}");
        }
    }

    #[test]
    fn contour_validators_agree_with_root_solve() {
        for &tau in &[0.5, 1.2, 2.0] {
            let w_direct = lambert_branch(tau).unwrap();
            let w_contour = lambert_via_contour(tau).unwrap();
            assert!(
                (w_direct - w_contour).norm() < 1e-6,
                "tau={tau}: {w_direct} vs {w_contour}"
            );
            let th_direct = theta_of_tau(tau).theta;
            let th_contour = theta_plus_via_contour(tau).unwrap();
            assert!(
                (th_direct - th_contour).norm() < 1e-6,
                "tau={tau}: {th_direct} vs {th_contour}"
            );
        }
    }
}
