//! The simple-contour representation of `pi_n(x)/n!`: a principal-value
//! integral over `theta in [-pi, pi]` plus residues at the zeros of
//! `g(e^{i theta}/x)` weighted by the sign of their imaginary part
//! (1 above the axis, 1/2 on it, 0 below).
//!
//! Everything is computed with the factor `e^n` pulled out of the integrand,
//! so the quadrature sees `e^{n(e^{i theta} - i theta - 1)} / g`, whose
//! magnitude is at most `1/|g|` on the real axis; the factor is carried in
//! the [`LogComplex`] prefactor `(e x)^n / 2 pi`.

use crate::gf::GeneratingFunction;
use crate::logc::LogComplex;
use crate::quad::{self, PoleSub};
use crate::sdpath;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Width of the `| |zeta x| - 1 | <= TOL_ON` band in which a singularity is
/// treated as sitting exactly on the integration contour. Below this,
/// double precision cannot distinguish the cases.
pub const TOL_ON: f64 = 1e-12;

/// Tolerance on `psi` for the on-curve classification.
pub const PSI_TOL: f64 = 1e-12;

/// Poles with `|Im theta|` (or `|psi|`) below this band are subtracted from
/// the integrand before quadrature even when their weight is 0 or 1, keeping
/// the representation numerically continuous across weight changes.
pub const NEAR_BAND: f64 = 0.05;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("x = 0 is outside the domain of the rescaled representations")]
    XZero,
    #[error("a singularity of order {0} lies on the reference contour; only simple on-contour poles are supported")]
    DegenerateOnContourPole(u32),
    #[error("quadrature failed to converge: {0}")]
    QuadratureFailed(String),
    #[error("infinitely many singularities lie above the steepest-descent curve for this x")]
    InfinitelyManyResidues,
    #[error("{0}")]
    Gf(#[from] crate::gf::GfError),
    #[error("{0}")]
    Sd(#[from] sdpath::SdError),
}

/// Which contour singularities are classified against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reference {
    RealAxis,
    CurveC,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositionClass {
    Above,
    On,
    Below,
}

/// A zero `theta_k` of `g(e^{i theta}/x)` in the strip `Re in (-pi, pi]`,
/// with its source zero of `g` and both position classifications.
#[derive(Clone, Copy, Debug)]
pub struct Singularity {
    pub theta: Complex64,
    pub zeta: Complex64,
    pub order: u32,
    /// `|zeta x|`.
    pub abs_zx: f64,
    pub axis: PositionClass,
    pub curve: PositionClass,
    /// Signed offset from the steepest-descent curve (`+inf` when
    /// `Re theta = +-pi`, where the curve has receded to `-inf`).
    pub psi: f64,
}

impl Singularity {
    fn from_zero(zeta: Complex64, order: u32, x: Complex64) -> Singularity {
        let zx = zeta * x;
        let abs_zx = zx.norm();
        let theta = Complex64::new(zx.arg(), -abs_zx.ln());
        let axis = if (abs_zx - 1.0).abs() <= TOL_ON {
            PositionClass::On
        } else if abs_zx < 1.0 {
            PositionClass::Above
        } else {
            PositionClass::Below
        };
        let psi = if theta.re.abs() >= PI - 1e-14 {
            f64::INFINITY
        } else {
            sdpath::psi(theta).expect("|Re theta| < pi")
        };
        let curve = if psi.abs() <= PSI_TOL {
            PositionClass::On
        } else if psi > 0.0 {
            PositionClass::Above
        } else {
            PositionClass::Below
        };
        Singularity {
            theta,
            zeta,
            order,
            abs_zx,
            axis,
            curve,
            psi,
        }
    }

    pub fn weight_axis(&self) -> f64 {
        match self.axis {
            PositionClass::Above => 1.0,
            PositionClass::On => 0.5,
            PositionClass::Below => 0.0,
        }
    }

    pub fn weight_curve(&self) -> f64 {
        match self.curve {
            PositionClass::Above => 1.0,
            PositionClass::On => 0.5,
            PositionClass::Below => 0.0,
        }
    }
}

/// One residue contribution: the raw residue of the `e^{-n}`-scaled
/// integrand at `theta_k`, and the step weight it enters with.
#[derive(Clone, Debug)]
pub struct ResidueTerm {
    pub singularity: Singularity,
    /// Residue of `e^{n(e^{i theta} - i theta - 1)}/g(e^{i theta}/x)`.
    pub value: LogComplex,
    pub weight: f64,
}

/// Evaluation split into integral, residues, and total:
/// `total = prefactor * (integral - 2 pi i sum_k weight_k residue_k)`.
#[derive(Clone, Debug)]
pub struct RepresentationBreakdown {
    /// `(e x)^n / (2 pi)`.
    pub prefactor: LogComplex,
    /// The (principal-value) integral of the `e^{-n}`-scaled integrand.
    pub integral: LogComplex,
    pub residues: Vec<ResidueTerm>,
    pub total: LogComplex,
    /// Diagnostic only: `eta_x = -log(r |x|)` for the derivation contour
    /// radius `r = r_0/2` (`None` when `g` has no zeros).
    pub eta_x: Option<f64>,
}

impl RepresentationBreakdown {
    /// Relative residual of the bookkeeping identity
    /// `total = prefactor (integral - 2 pi i sum w R)`.
    pub fn assembly_residual(&self) -> f64 {
        let assembled = assemble(self.prefactor, self.integral, &self.residues);
        assembled.rel_gap(self.total)
    }
}

fn assemble(prefactor: LogComplex, integral: LogComplex, residues: &[ResidueTerm]) -> LogComplex {
    let m2pii = Complex64::new(0.0, -2.0 * PI);
    let terms = residues
        .iter()
        .filter(|r| r.weight != 0.0)
        .map(|r| r.value.mul_complex(m2pii * r.weight))
        .chain(std::iter::once(integral));
    prefactor.mul(LogComplex::sum(terms))
}

/// All singularities relevant for the real-axis reference: `|zeta x|` up to
/// `exp(band)` (weight classes need `<= 1`, the quadrature wants the
/// near-axis ones on both sides).
pub(crate) fn singularities_axis_band(
    g: &GeneratingFunction,
    x: Complex64,
    band: f64,
) -> Vec<Singularity> {
    let bound = band.exp() / x.norm();
    let mut sings: Vec<Singularity> = g
        .zeros_in_disk(bound)
        .iter()
        .map(|z| Singularity::from_zero(z.location, z.multiplicity, x))
        .collect();
    sings.sort_by(|a, b| b.theta.im.partial_cmp(&a.theta.im).unwrap());
    sings
}

/// Singularities at or above the steepest-descent curve, with a `band` of
/// slack in `psi` (so `band = 0` lists exactly the contributing set).
pub(crate) fn singularities_curve_band(
    g: &GeneratingFunction,
    x: Complex64,
    band: f64,
) -> Result<Vec<Singularity>, EvalError> {
    let mut sings: Vec<Singularity> = if let Some(zeros) = g.all_polynomial_zeros() {
        zeros
            .iter()
            .map(|z| Singularity::from_zero(z.location, z.multiplicity, x))
            .filter(|s| s.psi >= -band)
            .collect()
    } else {
        // Bernoulli: zeros 2 pi i k. Each sign family shares the angle
        // X = Arg(+-i x), so psi >= -band bounds k by
        // (X / sin X) e^band / (2 pi |x|); the bound diverges only when
        // x is purely imaginary (X = +-pi), where infinitely many
        // singularities sit above the curve.
        let mut out = vec![];
        for sign in [1.0f64, -1.0] {
            let ix = Complex64::new(0.0, sign) * x;
            let ang = ix.arg();
            if ang.abs() >= PI - 1e-14 {
                return Err(EvalError::InfinitelyManyResidues);
            }
            let ratio = if ang == 0.0 { 1.0 } else { ang / ang.sin() };
            let kmax = (ratio * band.exp() / (2.0 * PI * x.norm())).floor() as i64;
            for k in 1..=kmax {
                let zeta = Complex64::new(0.0, sign * 2.0 * PI * k as f64);
                let s = Singularity::from_zero(zeta, 1, x);
                if s.psi >= -band {
                    out.push(s);
                }
            }
        }
        out
    };
    sings.sort_by(|a, b| b.theta.im.partial_cmp(&a.theta.im).unwrap());
    Ok(sings)
}

/// The singularities of the integrand classified against the requested
/// reference contour, ordered by descending imaginary part. For the real
/// axis this lists `|zeta x| <= 1 + TOL_ON`; for the curve it lists the
/// at-or-above set (rejecting the purely-imaginary Bernoulli case, whose
/// above-curve set is infinite).
pub fn theta_singularities(
    g: &GeneratingFunction,
    x: Complex64,
    reference: Reference,
) -> Result<Vec<Singularity>, EvalError> {
    if x.norm() == 0.0 {
        return Err(EvalError::XZero);
    }
    match reference {
        Reference::RealAxis => {
            let mut sings = singularities_axis_band(g, x, 0.0);
            sings.retain(|s| s.abs_zx <= 1.0 + TOL_ON);
            Ok(sings)
        }
        Reference::CurveC => singularities_curve_band(g, x, PSI_TOL),
    }
}

/// Residue of the `e^{-n}`-scaled integrand at a simple singularity:
/// `e^{n(x zeta - i theta_k - 1)} / (i zeta g'(zeta))`.
fn residue_simple(g: &GeneratingFunction, n: u32, x: Complex64, s: &Singularity) -> LogComplex {
    let exponent = (x * s.zeta - Complex64::new(0.0, 1.0) * s.theta - 1.0) * n as f64;
    let denom = Complex64::new(0.0, 1.0) * s.zeta * g.deriv(1, s.zeta);
    LogComplex::exp_of(exponent).div(LogComplex::from_complex(denom))
}

/// Residue at an order-`p` singularity via local power series: expand
/// numerator and denominator in `u = theta - theta_k` and read off the
/// `u^{-1}` coefficient of `N(u)/D(u)`.
fn residue_multiple(g: &GeneratingFunction, n: u32, x: Complex64, s: &Singularity) -> LogComplex {
    let p = s.order as usize;
    let len = 2 * p + 2;
    let i = Complex64::new(0.0, 1.0);

    // D(u) = g(zeta e^{iu}): inner w(u) = zeta (e^{iu} - 1).
    let mut inner = vec![Complex64::new(0.0, 0.0); len];
    let mut fact = 1.0;
    for (m, slot) in inner.iter_mut().enumerate().skip(1) {
        fact *= m as f64;
        *slot = s.zeta * i.powu(m as u32) / fact;
    }
    let mut gtaylor = Vec::with_capacity(len);
    let mut fact = 1.0;
    for m in 0..len {
        if m > 0 {
            fact *= m as f64;
        }
        gtaylor.push(g.deriv(m as u32, s.zeta) / fact);
    }
    let d_series = crate::series::apply_taylor(&gtaylor, &inner, len);
    // Shift out the order-p zero: d_tilde[m] = D_{m+p}.
    let d_tilde: Vec<Complex64> = (0..=p).map(|m| d_series[m + p]).collect();

    // N(u) = scale * exp(E(u)), E(u) = n (x zeta (e^{iu} - 1) - i u).
    let nf = n as f64;
    let mut e_series = vec![Complex64::new(0.0, 0.0); p + 1];
    let mut fact = 1.0;
    for (m, slot) in e_series.iter_mut().enumerate().skip(1) {
        fact *= m as f64;
        *slot = nf * x * s.zeta * i.powu(m as u32) / fact;
        if m == 1 {
            *slot -= nf * i;
        }
    }
    let n_series = crate::series::exp_trunc(&e_series, p + 1);
    let ratio = crate::series::mul_trunc(&n_series, &crate::series::recip_trunc(&d_tilde, p), p);
    let coeff = ratio[p - 1];

    let exponent = (x * s.zeta - i * s.theta - 1.0) * nf;
    LogComplex::exp_of(exponent).mul_complex(coeff)
}

pub(crate) fn residue_scaled(
    g: &GeneratingFunction,
    n: u32,
    x: Complex64,
    s: &Singularity,
) -> LogComplex {
    if s.order == 1 {
        residue_simple(g, n, x, s)
    } else {
        residue_multiple(g, n, x, s)
    }
}

/// Pick the window `[w, w + 2 pi]` (the integrand is 2 pi-periodic for
/// integer n) whose endpoints are farthest from the listed pole angles.
pub(crate) fn periodic_window(pole_angles: &[f64]) -> f64 {
    if pole_angles.is_empty() {
        return -PI;
    }
    let mut angles: Vec<f64> = pole_angles
        .iter()
        .map(|t| crate::logc::wrap_angle(*t))
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best_gap = -1.0;
    let mut best_mid = -PI;
    for k in 0..angles.len() {
        let a = angles[k];
        let b = if k + 1 < angles.len() {
            angles[k + 1]
        } else {
            angles[0] + 2.0 * PI
        };
        if b - a > best_gap {
            best_gap = b - a;
            best_mid = 0.5 * (a + b);
        }
    }
    best_mid - 2.0 * PI * (((best_mid + PI) / (2.0 * PI)).floor())
}

/// The scaled integrand `e^{n(e^{i theta} - i theta - 1)}/g(e^{i theta}/x)`
/// at real `theta`.
pub(crate) fn scaled_integrand(
    g: &GeneratingFunction,
    n: u32,
    x: Complex64,
    theta: f64,
) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let eith = (i * theta).exp();
    let expo = (eith - i * theta - 1.0) * n as f64;
    expo.exp() / g.eval(eith / x)
}

/// Principal-value integral of the scaled integrand over one period, with
/// near-axis poles subtracted. Shared by the general evaluation and the
/// Bernoulli cosine form.
pub(crate) fn axis_integral(
    g: &GeneratingFunction,
    n: u32,
    x: Complex64,
    sings: &[Singularity],
) -> Result<Complex64, EvalError> {
    let near: Vec<&Singularity> = sings
        .iter()
        .filter(|s| s.theta.im.abs() < NEAR_BAND)
        .collect();
    for s in &near {
        if s.axis == PositionClass::On && s.order > 1 {
            return Err(EvalError::DegenerateOnContourPole(s.order));
        }
    }
    let w = periodic_window(&near.iter().map(|s| s.theta.re).collect::<Vec<_>>());
    let shift_into = |t: f64| -> f64 {
        let mut v = t;
        while v < w {
            v += 2.0 * PI;
        }
        while v >= w + 2.0 * PI {
            v -= 2.0 * PI;
        }
        v
    };
    let mut poles = vec![];
    for s in &near {
        if s.order > 1 {
            // Higher-order pole close to (but, by the check above, not on)
            // the axis: leave it to adaptive subdivision.
            continue;
        }
        let res = residue_simple(g, n, x, s);
        let rc = res.to_complex();
        if !rc.re.is_finite() || !rc.im.is_finite() {
            return Err(EvalError::QuadratureFailed(format!(
                "non-representable near-axis residue at theta = {}",
                s.theta
            )));
        }
        poles.push(PoleSub {
            location: Complex64::new(shift_into(s.theta.re), s.theta.im),
            residue: rc,
            on_path: s.axis == PositionClass::On,
        });
    }
    let f = |t: f64| scaled_integrand(g, n, x, t);
    let mut splits = vec![shift_into(0.0)];
    let spread = 1.0 / (n as f64).sqrt();
    splits.push(shift_into(spread));
    splits.push(shift_into(-spread));
    let r = quad::integrate_with_poles(&f, w, w + 2.0 * PI, &poles, 1e-10, 1e-300, &splits);
    if !r.converged {
        return Err(EvalError::QuadratureFailed(format!(
            "axis quadrature error {:.3e} after {} evaluations",
            r.abs_err, r.evals
        )));
    }
    Ok(r.value)
}

/// Evaluate `pi_n(x)/n!` through the axis-contour representation.
pub fn evaluate(
    g: &GeneratingFunction,
    n: u32,
    x: Complex64,
) -> Result<RepresentationBreakdown, EvalError> {
    assert!(n >= 1, "n must be positive");
    if x.norm() == 0.0 {
        return Err(EvalError::XZero);
    }
    let sings = singularities_axis_band(g, x, NEAR_BAND);
    let integral = axis_integral(g, n, x, &sings)?;

    let residues: Vec<ResidueTerm> = sings
        .iter()
        .filter(|s| s.abs_zx <= 1.0 + TOL_ON)
        .map(|s| ResidueTerm {
            singularity: *s,
            value: residue_scaled(g, n, x, s),
            weight: s.weight_axis(),
        })
        .collect();

    let prefactor = LogComplex::from_complex(x)
        .powi(n as i64)
        .mul(LogComplex::new(n as f64, 0.0))
        .mul(LogComplex::from_real(1.0 / (2.0 * PI)));
    let integral_lc = LogComplex::from_complex(integral);
    let total = assemble(prefactor, integral_lc, &residues);
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::eval_rescaled_direct;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gf_poly(cs: &[Complex64]) -> GeneratingFunction {
        GeneratingFunction::polynomial(cs.to_vec()).unwrap()
    }

    #[test]
    fn bernoulli_fig_geometry() {
        // x = e^{2 pi i/3}/(6 pi): theta_k^+ = -5 pi/6 - i log(k/3),
        // theta_k^- = pi/6 - i log(k/3), k_max = 3, theta_3 on the axis.
        let g = GeneratingFunction::bernoulli();
        let x = Complex64::from_polar(1.0 / (6.0 * PI), 2.0 * PI / 3.0);
        let sings = theta_singularities(&g, x, Reference::RealAxis).unwrap();
        assert_eq!(sings.len(), 6);
        for s in &sings {
            let k = s.zeta.im / (2.0 * PI);
            let expect_re = if k > 0.0 { -5.0 * PI / 6.0 } else { PI / 6.0 };
            let expect_im = -(k.abs() / 3.0).ln();
            assert!((s.theta.re - expect_re).abs() < 1e-12);
            assert!((s.theta.im - expect_im).abs() < 1e-12);
        }
        let on_axis: Vec<_> = sings.iter().filter(|s| s.axis == PositionClass::On).collect();
        assert_eq!(on_axis.len(), 2);
        for s in on_axis {
            assert!((s.zeta.im.abs() / (2.0 * PI) - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn no_singularities_when_x_large() {
        let g = GeneratingFunction::bernoulli();
        let x = c(0.2, 0.0); // |x| > 1/(2 pi)
        assert!(theta_singularities(&g, x, Reference::RealAxis)
            .unwrap()
            .is_empty());
        let g = gf_poly(&[c(-1.0, 0.0), c(1.0, 0.0)]); // z - 1
        assert!(theta_singularities(&g, c(2.0, 0.0), Reference::RealAxis)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn rejects_x_zero() {
        let g = GeneratingFunction::bernoulli();
        assert!(matches!(
            theta_singularities(&g, c(0.0, 0.0), Reference::RealAxis),
            Err(EvalError::XZero)
        ));
    }

    #[test]
    fn constant_g_matches_direct() {
        // No residues: the integral alone reproduces (n x)^n/n!.
        let g = GeneratingFunction::constant(c(1.0, 0.0)).unwrap();
        for &(n, x) in &[(1u32, c(1.0, 0.0)), (6, c(0.5, 0.4)), (25, c(-1.2, 0.3))] {
            let b = evaluate(&g, n, x).unwrap();
            assert!(b.residues.is_empty());
            let direct = eval_rescaled_direct(&g, n, x);
            assert!(
                b.total.rel_gap(direct) < 1e-9,
                "n={n} x={x}: {} vs {}",
                b.total,
                direct
            );
        }
    }

    #[test]
    fn bernoulli_matches_direct() {
        let g = GeneratingFunction::bernoulli();
        let b = evaluate(&g, 10, c(0.3, 0.2)).unwrap();
        let direct = eval_rescaled_direct(&g, 10, c(0.3, 0.2));
        assert!(b.total.rel_gap(direct) < 1e-8, "{} vs {}", b.total, direct);
        assert!(b.assembly_residual() < 1e-13);
        // eta_x diagnostic present for a g with zeros.
        assert!((b.eta_x.unwrap() - (-(PI * 0.360_555_127_546_398_9).ln())).abs() < 1e-12);
    }

    #[test]
    fn residue_value_matches_printed_bernoulli_form() {
        // Residue at theta_k^{+-} is -i/(2 pi k x)^n e^{-+ i n(pi/2 - 2 pi k x)};
        // compare after removing the e^{-n} scaling we carry.
        let g = GeneratingFunction::bernoulli();
        let x = c(0.04, 0.02);
        let n = 7u32;
        let sings = theta_singularities(&g, x, Reference::RealAxis).unwrap();
        assert!(!sings.is_empty());
        for s in sings {
            let k = (s.zeta.im / (2.0 * PI)).round();
            let sign = k.signum();
            let kabs = k.abs();
            let printed = LogComplex::from_complex(c(0.0, -1.0))
                .div(LogComplex::from_complex(2.0 * PI * kabs * x).powi(n as i64))
                .mul(LogComplex::exp_of(
                    c(0.0, -sign) * n as f64 * (PI / 2.0 - 2.0 * PI * kabs * x),
                ));
            let scaled = printed.mul(LogComplex::new(-(n as f64), 0.0)); // times e^{-n}
            let got = residue_scaled(&g, n, x, &s);
            assert!(
                got.rel_gap(scaled) < 1e-10,
                "k={k}: {got} vs {scaled}"
            );
        }
    }

    #[test]
    fn polynomial_with_residues_matches_direct() {
        // g = z - 1 at |x| < 1 has one contributing residue.
        let g = gf_poly(&[c(-1.0, 0.0), c(1.0, 0.0)]);
        for &(n, x) in &[(5u32, c(0.4, 0.1)), (12, c(-0.3, 0.25)), (30, c(0.2, -0.6))] {
            let b = evaluate(&g, n, x).unwrap();
            let direct = eval_rescaled_direct(&g, n, x);
            assert!(
                b.total.rel_gap(direct) < 1e-8,
                "n={n} x={x}: {} vs {}",
                b.total,
                direct
            );
        }
    }

    #[test]
    fn double_zero_residue_matches_direct() {
        // (z-1)^2 (z+3)/3 has a double zero at 1; test the local-series
        // residue path. g(0) = 1.
        let g = gf_poly(&[c(1.0, 0.0), c(-5.0 / 3.0, 0.0), c(1.0 / 3.0, 0.0), c(1.0 / 3.0, 0.0)]);
        let x = c(0.45, 0.2);
        let n = 9;
        let b = evaluate(&g, n, x).unwrap();
        assert!(b.residues.iter().any(|r| r.singularity.order == 2));
        let direct = eval_rescaled_direct(&g, n, x);
        assert!(b.total.rel_gap(direct) < 1e-8, "{} vs {}", b.total, direct);
    }

    #[test]
    fn on_axis_pole_takes_half_weight_and_matches_direct() {
        // |zeta x| = 1 exactly: x = 1/(2 pi) puts the first Bernoulli pair on
        // the contour.
        let g = GeneratingFunction::bernoulli();
        let x = c(1.0 / (2.0 * PI), 0.0);
        let n = 8;
        let b = evaluate(&g, n, x).unwrap();
        let halves: Vec<_> = b.residues.iter().filter(|r| r.weight == 0.5).collect();
        assert_eq!(halves.len(), 2);
        let direct = eval_rescaled_direct(&g, n, x);
        assert!(b.total.rel_gap(direct) < 1e-8, "{} vs {}", b.total, direct);
    }

    #[test]
    fn weight_jump_is_continuous() {
        // Radial perturbation across |zeta x| = 1 flips the weight 1 -> 1/2
        // -> 0; the jump of the total (second difference across the
        // crossing, which cancels the smooth radial variation) stays tiny.
        let g = gf_poly(&[c(-1.0, 0.0), c(1.0, 0.0)]); // zero at 1
        let n = 14;
        let dir = Complex64::from_polar(1.0, 0.7);
        let at = |r: f64| evaluate(&g, n, dir * r).unwrap();
        let delta = 1e-5;
        let below = at(1.0 - delta);
        let on = at(1.0);
        let above = at(1.0 + delta);
        assert_eq!(below.residues[0].weight, 1.0);
        assert_eq!(on.residues[0].weight, 0.5);
        assert!(above.residues.is_empty(), "|zeta x| > 1 contributes nothing");
        let jump = below
            .total
            .add(above.total)
            .sub(on.total.mul(LogComplex::from_real(2.0)));
        assert!(
            (jump.log_mag - on.total.log_mag).exp() < 1e-6,
            "discontinuity across the weight change: {}",
            (jump.log_mag - on.total.log_mag).exp()
        );
        // And each evaluation still matches the oracle tightly.
        for (b, r) in [(&below, 1.0 - delta), (&on, 1.0), (&above, 1.0 + delta)] {
            let direct = eval_rescaled_direct(&g, n, dir * r);
            assert!(b.total.rel_gap(direct) < 1e-7, "r={r}");
        }
    }

    #[test]
    fn integrand_is_periodic() {
        let g = gf_poly(&[c(-2.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]);
        let x = c(0.7, 0.3);
        for n in [3u32, 17] {
            let a = scaled_integrand(&g, n, x, -PI);
            let b = scaled_integrand(&g, n, x, PI);
            assert!((a - b).norm() <= 1e-13 * a.norm().max(1e-300));
        }
    }

    #[test]
    fn window_selection_avoids_poles() {
        let w = periodic_window(&[3.1, -3.1]);
        // Poles hug +-pi; the window endpoint moves near 0.
        let d1 = (3.1f64 - w).abs().min((3.1 - (w + 2.0 * PI)).abs());
        assert!(d1 > 1.0);
        assert_eq!(periodic_window(&[]), -PI);
    }
}
