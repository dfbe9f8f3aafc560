//! Large-`n` asymptotics: the saddle-point estimate of the contour integral,
//! residue growth rates, and two-term expansions including the case of a
//! simple pole sitting at the saddle.
//!
//! The two-term coefficients are not hard-coded: the integrand
//! `theta'(tau)/g(e^{i theta(tau)}/x)` is expanded as a power series in
//! `tau` (through the curve's Taylor series) and the Gaussian moments
//! `int tau^{2m} e^{-n tau^2} d tau = Gamma(m+1/2)/n^{m+1/2}` extract each
//! order. Tests pin the printed closed forms against this construction.

use crate::contour::{singularities_axis_band, EvalError};
use crate::gf::GeneratingFunction;
use crate::logc::LogComplex;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq)]
pub enum TermKind {
    /// The saddle-point contribution of the integral term.
    Saddle,
    /// The residue family of the zero `zeta`.
    Residue { zeta: Complex64, order: u32 },
    /// Integral term when `1/x` is a simple zero of `g` (pole at the saddle,
    /// principal-value reading).
    SaddlePole,
}

/// One asymptotic contribution `scale * n^power * (series[0] + series[1]/n + ...)`.
#[derive(Clone, Debug)]
pub struct AsymptoticTerm {
    pub kind: TermKind,
    /// The exponential factor, e.g. `e^n` or `(e^{zeta x}/(zeta x))^n`.
    pub scale: LogComplex,
    /// Power of `n` multiplying the series.
    pub power: f64,
    /// Correction coefficients in `1/n`.
    pub series: Vec<Complex64>,
}

impl AsymptoticTerm {
    pub fn evaluate(&self, n: u32) -> LogComplex {
        let nf = n as f64;
        let mut s = Complex64::new(0.0, 0.0);
        let mut np = 1.0;
        for c in &self.series {
            s += c / np;
            np *= nf;
        }
        self.scale
            .mul(LogComplex::new(self.power * nf.ln(), 0.0))
            .mul_complex(s)
    }

    /// Exponential growth rate per unit n (`log` of the scale base).
    pub fn rate(&self, n: u32) -> f64 {
        self.scale.log_mag / n as f64
    }
}

/// The list of asymptotic contributions to the axis representation at `x`,
/// sorted by decreasing exponential scale.
#[derive(Clone, Debug)]
pub struct AsymptoticTerms {
    pub terms: Vec<AsymptoticTerm>,
    /// `g(1/x) = 0`: the regular saddle estimate does not apply and is
    /// omitted from `terms`.
    pub saddle_is_pole: bool,
    /// Two leading scales tie to within 1e-9 in log-rate: the expansion is
    /// non-uniform here (a dominance boundary).
    pub boundary: bool,
}

fn is_saddle_pole(g: &GeneratingFunction, x: Complex64) -> Result<bool, EvalError> {
    let inv = 1.0 / x;
    let v = g.eval(inv).norm();
    let scale = v + inv.norm() * g.deriv(1, inv).norm() + g.deriv(2, inv).norm();
    Ok(v < 1e-10 * scale.max(1e-300))
}

/// Saddle estimate plus one term per residue contributing on the axis
/// reference (`|zeta x| <= 1`), each with its exponential scale, `n`-power
/// and leading coefficient; the saddle also carries its `1/n` correction.
pub fn dominant_terms(
    g: &GeneratingFunction,
    n: u32,
    x: Complex64,
) -> Result<AsymptoticTerms, EvalError> {
    if x.norm() == 0.0 {
        return Err(EvalError::XZero);
    }
    let nf = n as f64;
    let mut terms = vec![];
    let saddle_is_pole = is_saddle_pole(g, x)?;
    if !saddle_is_pole {
        // Integral ~ e^n sqrt(pi/n) (F0 + F2/(2n)); F0 = sqrt(2)/g(1/x), so
        // the leading piece is the familiar e^n sqrt(2 pi/n)/g(1/x).
        let f = integrand_series(g, x, 8)?;
        terms.push(AsymptoticTerm {
            kind: TermKind::Saddle,
            scale: LogComplex::new(nf, 0.0),
            power: -0.5,
            series: vec![f[0] * PI.sqrt(), f[2] * PI.sqrt() / 2.0],
        });
    }
    for s in singularities_axis_band(g, x, 0.0) {
        if s.abs_zx > 1.0 + crate::contour::TOL_ON {
            continue;
        }
        let p = s.order;
        // c_k(x) = 1/((p-1)! d_p) with d_p the leading local coefficient of
        // g(e^{i theta}/x) at theta_k; leading residue coefficient is
        // c_k (i zeta x - i)^{p-1}.
        let lead = residue_leading_coeff(g, x, &s);
        let zx = s.zeta * x;
        let log_zx = Complex64::new(zx.norm().ln(), zx.arg());
        let scale = LogComplex::exp_of((zx - log_zx) * nf);
        terms.push(AsymptoticTerm {
            kind: TermKind::Residue {
                zeta: s.zeta,
                order: p,
            },
            scale,
            power: (p - 1) as f64,
            series: vec![lead],
        });
    }
    terms.sort_by(|a, b| {
        b.scale
            .log_mag
            .partial_cmp(&a.scale.log_mag)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let boundary = terms.len() >= 2 && (terms[0].rate(n) - terms[1].rate(n)).abs() < 1e-9;
    Ok(AsymptoticTerms {
        terms,
        saddle_is_pole,
        boundary,
    })
}

fn residue_leading_coeff(
    g: &GeneratingFunction,
    x: Complex64,
    s: &crate::contour::Singularity,
) -> Complex64 {
    let p = s.order as usize;
    let i = Complex64::new(0.0, 1.0);
    if p == 1 {
        return 1.0 / (i * s.zeta * g.deriv(1, s.zeta));
    }
    // d_p from the local series of g(zeta e^{iu}).
    let len = p + 2;
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
    let d = crate::series::apply_taylor(&gtaylor, &inner, len);
    let mut pfact = 1.0;
    for k in 1..p {
        pfact *= k as f64;
    }
    let ck = 1.0 / (pfact * d[p]);
    ck * (i * s.zeta * x - i).powu(p as u32 - 1)
}

/// Power series of `theta'(tau)/g(e^{i theta(tau)}/x)` about `tau = 0`
/// (the regular case `g(1/x) != 0`).
pub(crate) fn integrand_series(
    g: &GeneratingFunction,
    x: Complex64,
    len: usize,
) -> Result<Vec<Complex64>, EvalError> {
    let (theta_prime, delta) = curve_series(x, len);
    let inv = 1.0 / x;
    let mut gtaylor = Vec::with_capacity(len);
    let mut fact = 1.0;
    for m in 0..len {
        if m > 0 {
            fact *= m as f64;
        }
        gtaylor.push(g.deriv(m as u32, inv) / fact);
    }
    let d = crate::series::apply_taylor(&gtaylor, &delta, len);
    if d[0].norm() == 0.0 {
        return Err(EvalError::QuadratureFailed(
            "g(1/x) = 0: use the saddle-pole form".into(),
        ));
    }
    Ok(crate::series::mul_trunc(
        &theta_prime,
        &crate::series::recip_trunc(&d, len),
        len,
    ))
}

/// `theta'(tau)` series and `Delta(tau) = (e^{i theta(tau)} - 1)/x` series.
fn curve_series(x: Complex64, len: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let taylor = crate::sdpath::theta_taylor_coeffs(len + 1).taylor();
    let mut theta = vec![Complex64::new(0.0, 0.0); len + 2];
    for (k, c) in taylor.iter().enumerate() {
        if k + 1 < theta.len() {
            theta[k + 1] = *c;
        }
    }
    let theta_prime: Vec<Complex64> = crate::series::derivative(&theta)
        .into_iter()
        .take(len)
        .collect();
    let i = Complex64::new(0.0, 1.0);
    let itheta: Vec<Complex64> = theta.iter().map(|c| c * i).collect();
    let mut e = crate::series::exp_trunc(&itheta, len);
    e[0] -= 1.0;
    let delta: Vec<Complex64> = e.iter().map(|c| c / x).collect();
    (theta_prime, delta)
}

/// Two-term expansion of the full integral piece `(x^n/2pi) PV int_C`:
/// `(e x)^n n^{-1/2} (series[0] + series[1]/n)`. Handles both the regular
/// case and a simple pole at the saddle (`1/x` a simple zero of `g`);
/// rejects higher-order zeros at `1/x`.
pub fn saddle_two_term(
    g: &GeneratingFunction,
    n: u32,
    x: Complex64,
) -> Result<AsymptoticTerm, EvalError> {
    if x.norm() == 0.0 {
        return Err(EvalError::XZero);
    }
    let nf = n as f64;
    let scale = LogComplex::from_complex(x)
        .powi(n as i64)
        .mul(LogComplex::new(nf, 0.0));
    if !is_saddle_pole(g, x)? {
        let f = integrand_series(g, x, 8)?;
        // (x^n/2pi) e^n sqrt(pi/n) (F0 + F2/(2n) + ...)
        let s0 = f[0] / (2.0 * PI.sqrt());
        let s1 = f[2] / (4.0 * PI.sqrt());
        Ok(AsymptoticTerm {
            kind: TermKind::Saddle,
            scale,
            power: -0.5,
            series: vec![s0, s1],
        })
    } else {
        let inv = 1.0 / x;
        if g.deriv(1, inv).norm() < 1e-10 {
            return Err(EvalError::DegenerateOnContourPole(2));
        }
        let len = 9;
        let (theta_prime, delta) = curve_series(x, len);
        // D = Delta * (g1 + g2 Delta/2 + ...): divide out the simple zero.
        let mut gtaylor = Vec::with_capacity(len);
        let mut fact = 1.0;
        for m in 1..=len {
            fact *= m as f64;
            gtaylor.push(g.deriv(m as u32, inv) / fact);
        }
        let dfactor = crate::series::apply_taylor(&gtaylor, &delta, len);
        // Delta = delta1 * tau * (1 + ...): shift one power of tau out.
        let delta_shift: Vec<Complex64> = delta.iter().skip(1).cloned().collect();
        let d_tilde = crate::series::mul_trunc(&delta_shift, &dfactor, len);
        // G = theta' / d_tilde; integrand F = G/tau, PV kills G[0]/tau.
        let gser = crate::series::mul_trunc(
            &theta_prime,
            &crate::series::recip_trunc(&d_tilde, len),
            len,
        );
        let s0 = gser[1] / (2.0 * PI.sqrt());
        let s1 = gser[3] / (4.0 * PI.sqrt());
        Ok(AsymptoticTerm {
            kind: TermKind::SaddlePole,
            scale,
            power: -0.5,
            series: vec![s0, s1],
        })
    }
}
