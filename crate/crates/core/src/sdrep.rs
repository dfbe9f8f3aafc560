//! Evaluation of `pi_n(x)/n!` over the steepest-descent curve: a Gaussian
//! integral in the parameter `tau` plus residues at the singularities lying
//! at or above the curve (classified by the sign of `psi`).
//!
//! The residue values coincide with the axis representation's; only the step
//! weights change, so the two representations agree identically — which the
//! tests exploit.

use crate::contour::{
    residue_scaled, singularities_curve_band, EvalError, PositionClass, RepresentationBreakdown,
    ResidueTerm, Singularity, NEAR_BAND,
};
use crate::gf::GeneratingFunction;
use crate::logc::LogComplex;
use crate::quad::{self, PoleSub};
use crate::sdpath::theta_of_tau;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Truncation half-width of the Gaussian `tau`-integral: `e^{-n T^2}`
/// is below 1e-15 with margin for the growth of `theta'`.
pub fn truncation(n: u32) -> f64 {
    (36.0 / n as f64).sqrt() + 1.0
}

/// The `tau`-plane pole of the integrand produced by a singularity
/// `theta_k`: `tau*^2 = 1 - x zeta + i theta_k` exactly, with the sign of
/// `Re theta_k` selecting the branch.
pub(crate) fn tau_pole(x: Complex64, s: &Singularity) -> Complex64 {
    let square = 1.0 - x * s.zeta + Complex64::new(0.0, 1.0) * s.theta;
    let root = square.sqrt();
    if s.theta.re < 0.0 {
        -root
    } else {
        root
    }
}

/// The scaled integrand `theta'(tau) e^{-n tau^2} / g(e^{i theta(tau)}/x)`.
pub(crate) fn descent_integrand(
    g: &GeneratingFunction,
    n: u32,
    x: Complex64,
    tau: f64,
) -> Complex64 {
    let p = theta_of_tau(tau);
    let i = Complex64::new(0.0, 1.0);
    let arg = (i * p.theta).exp() / x;
    p.theta_prime * (-(n as f64) * tau * tau).exp() / g.eval(arg)
}

/// The descent integral with near-curve poles subtracted; shared with the
/// Bernoulli closed forms.
pub(crate) fn descent_integral(
    g: &GeneratingFunction,
    n: u32,
    x: Complex64,
    sings: &[Singularity],
    half_width: f64,
) -> Result<Complex64, EvalError> {
    let t = half_width;
    let mut poles = vec![];
    for s in sings {
        if s.psi.abs() >= NEAR_BAND {
            continue;
        }
        if s.order > 1 {
            if s.curve == PositionClass::On {
                return Err(EvalError::DegenerateOnContourPole(s.order));
            }
            continue;
        }
        let mut tp = tau_pole(x, s);
        let on_path = s.curve == PositionClass::On;
        if on_path {
            tp = Complex64::new(tp.re, 0.0);
        }
        if tp.re.abs() > t + 0.5 || tp.im.abs() > 0.2 {
            continue;
        }
        if on_path && tp.re.abs() >= t {
            continue;
        }
        // Residue in tau equals the theta-space scaled residue
        // (e^{-n tau*^2} = e^{n(x zeta - i theta_k - 1)}).
        let r = residue_scaled(g, n, x, s).to_complex();
        if !r.re.is_finite() || !r.im.is_finite() {
            return Err(EvalError::QuadratureFailed(format!(
                "non-representable near-curve residue at theta = {}",
                s.theta
            )));
        }
        poles.push(PoleSub {
            location: tp,
            residue: r,
            on_path,
        });
    }
    let f = |tau: f64| descent_integrand(g, n, x, tau);
    let spread = 1.0 / (n as f64).sqrt();
    let splits = [-spread, 0.0, spread];
    let r = quad::integrate_with_poles(&f, -t, t, &poles, 1e-11, 1e-300, &splits);
    if !r.converged {
        return Err(EvalError::QuadratureFailed(format!(
            "descent quadrature error {:.3e} after {} evaluations",
            r.abs_err, r.evals
        )));
    }
    Ok(r.value)
}

/// Evaluate `pi_n(x)/n!` through the steepest-descent representation.
///
/// Rejects `x` for which infinitely many singularities lie above the curve
/// (purely imaginary `x` for the Bernoulli family, which has its own closed
/// polylogarithm form) and non-simple poles on the curve.
pub fn evaluate(
    g: &GeneratingFunction,
    n: u32,
    x: Complex64,
) -> Result<RepresentationBreakdown, EvalError> {
    assert!(n >= 1, "n must be positive");
    if x.norm() == 0.0 {
        return Err(EvalError::XZero);
    }
    let sings = singularities_curve_band(g, x, NEAR_BAND)?;
    for s in &sings {
        if s.curve == PositionClass::On && s.order > 1 {
            return Err(EvalError::DegenerateOnContourPole(s.order));
        }
    }
    let integral = descent_integral(g, n, x, &sings, truncation(n))?;

    let residues: Vec<ResidueTerm> = sings
        .iter()
        .filter(|s| s.psi >= -crate::contour::PSI_TOL)
        .map(|s| ResidueTerm {
            singularity: *s,
            value: residue_scaled(g, n, x, s),
            weight: s.weight_curve(),
        })
        .collect();

    let prefactor = LogComplex::from_complex(x)
        .powi(n as i64)
        .mul(LogComplex::new(n as f64, 0.0))
        .mul(LogComplex::from_real(1.0 / (2.0 * PI)));
    let integral_lc = LogComplex::from_complex(integral);
    let m2pii = Complex64::new(0.0, -2.0 * PI);
    let total = prefactor.mul(LogComplex::sum(
        residues
            .iter()
            .filter(|r| r.weight != 0.0)
            .map(|r| r.value.mul_complex(m2pii * r.weight))
            .chain(std::iter::once(integral_lc)),
    ));
    let eta_x = {
        let r0 = g.r0();
        if r0.is_finite() {
            Some(-((r0 / 2.0) * x.norm()).ln())
        } else {
            None
        }
    };
    Ok(RepresentationBreakdown {
        prefactor,
        integral: integral_lc,
        residues,
        total,
        eta_x,
    })
}
