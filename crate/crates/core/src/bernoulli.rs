//! The Bernoulli specialization: exact oracle from the classical number
//! recurrence, the closed cosine form of the axis representation, the
//! steepest-descent forms (with the polylogarithm on the imaginary axis),
//! and the printed two-term asymptotics.
//!
//! `B_n` are the Appell family for `g(z) = (e^z - 1)/z`, whose zeros are
//! `2 pi i k`; all singularity bookkeeping collapses into explicit formulas
//! in `k`, which this module implements as printed and cross-checks against
//! the generic machinery.

use crate::bigfloat::{Bf, BfComplex};
use crate::contour::{
    self, EvalError, PositionClass, RepresentationBreakdown, ResidueTerm, Singularity,
};
use crate::gf::GeneratingFunction;
use crate::logc::LogComplex;
use crate::poly::PolynomialC;
use crate::sdrep;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::f64::consts::PI;

/// Bernoulli numbers `B_0..=B_n` as exact rationals, from
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn numbers_rational(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // binomials C(m+1, j) exactly
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate().take(m) {
            acc += BigRational::from(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from(BigInt::from(m + 1)));
    }
    b
}

/// The Bernoulli polynomial `B_n(x)` with double coefficients, from
/// `B_n(x) = sum_k C(n,k) B_{n-k} x^k` on the exact rationals.
pub fn polynomial(n: u32) -> PolynomialC {
    let n = n as usize;
    let nums = numbers_rational(n);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut binom = BigInt::one();
    for k in 0..=n {
        let c = BigRational::from(binom.clone()) * &nums[n - k];
        coeffs.push(Complex64::new(rational_to_f64(&c), 0.0));
        if k < n {
            binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
        }
    }
    PolynomialC::new(coeffs)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    Bf::from_ratio(r.numer(), r.denom()).to_f64()
}

/// Precomputed high-precision coefficients of `B_n(y)/n!` for evaluating the
/// rescaled polynomials at many points. This is the independent oracle: it
/// rests on the Bernoulli-number recurrence, not on the inverse-series route.
pub struct DirectBernoulli {
    n: u32,
    /// q_k = B_{n-k} / ((n-k)! k!)
    q: Vec<BfComplex>,
}

impl DirectBernoulli {
    pub fn new(n: u32) -> DirectBernoulli {
        let n = n as usize;
        let nums = numbers_rational(n);
        let mut fact = vec![BigInt::one(); n + 1];
        for k in 1..=n {
            fact[k] = &fact[k - 1] * BigInt::from(k);
        }
        let q = (0..=n)
            .map(|k| {
                let r = &nums[n - k];
                let den = r.denom() * &fact[n - k] * &fact[k];
                BfComplex::from_real(Bf::from_ratio(r.numer(), &den))
            })
            .collect();
        DirectBernoulli { n: n as u32, q }
    }

    /// `beta_n(x)/n! = B_n(n x)/n!`.
    pub fn eval(&self, x: Complex64) -> LogComplex {
        let y = BfComplex::from_c64(x).mul_real(&Bf::from_bigint(&BigInt::from(self.n)));
        let mut acc = BfComplex::zero();
        for qk in self.q.iter().rev() {
            acc = acc.mul(&y).add(qk);
        }
        acc.to_log_complex()
    }
}

/// Evaluation result of one of the closed Bernoulli forms.
#[derive(Clone, Debug)]
pub struct BernoulliEval {
    pub n: u32,
    pub x: Complex64,
    /// Number of cosine terms on the axis reference: `floor(1/(2 pi |x|))`.
    pub k_max: u32,
    pub breakdown: RepresentationBreakdown,
    /// Closed form of the infinite residue family on the imaginary axis,
    /// when taken (`Li_n(e^{2 pi i n x})/(2 pi i)^n`-type term).
    pub polylog_term: Option<LogComplex>,
    /// Cross-check notes (printed step weights vs psi classification);
    /// empty when the two routes agree.
    pub diagnostics: Vec<String>,
}

fn bernoulli_singularity(k: i64, x: Complex64) -> Singularity {
    let zeta = Complex64::new(0.0, 2.0 * PI * k as f64);
    // Reuse the generic classifier through the band enumerator's shape.
    let zx = zeta * x;
    let abs_zx = zx.norm();
    let theta = Complex64::new(zx.arg(), -abs_zx.ln());
    let axis = if (abs_zx - 1.0).abs() <= contour::TOL_ON {
        PositionClass::On
    } else if abs_zx < 1.0 {
        PositionClass::Above
    } else {
        PositionClass::Below
    };
    let psi = if theta.re.abs() >= PI - 1e-14 {
        f64::INFINITY
    } else {
        crate::sdpath::psi(theta).unwrap()
    };
    let curve = if psi.abs() <= contour::PSI_TOL {
        PositionClass::On
    } else if psi > 0.0 {
        PositionClass::Above
    } else {
        PositionClass::Below
    };
    Singularity {
        theta,
        zeta,
        order: 1,
        abs_zx,
        axis,
        curve,
        psi,
    }
}

/// Printed residue of the scaled integrand at `theta_k^{+-}`:
/// `-i/(2 pi k x)^n e^{-+ i n(pi/2 - 2 pi k x)}`, times the `e^{-n}` we
/// factor out.
fn printed_residue_scaled(n: u32, x: Complex64, k: i64) -> LogComplex {
    let nf = n as f64;
    let sign = if k > 0 { 1.0 } else { -1.0 };
    let kabs = k.unsigned_abs() as f64;
    LogComplex::from_complex(Complex64::new(0.0, -1.0))
        .div(LogComplex::from_complex(2.0 * PI * kabs * x).powi(n as i64))
        .mul(LogComplex::exp_of(
            Complex64::new(0.0, -sign) * nf * (PI / 2.0 - 2.0 * PI * kabs * x),
        ))
        .mul(LogComplex::new(-nf, 0.0))
}

/// `cos(z)` in log form, stable for large `|Im z|`.
fn log_cos(z: Complex64) -> LogComplex {
    if z.im.abs() <= 30.0 {
        LogComplex::from_complex(z.cos())
    } else {
        let i = Complex64::new(0.0, 1.0);
        // Pick the exponential that dominates.
        let (lead, correction) = if z.im < 0.0 {
            (i * z, (-2.0 * i * z).exp())
        } else {
            (-i * z, (2.0 * i * z).exp())
        };
        LogComplex::exp_of(lead)
            .mul(LogComplex::from_real(0.5))
            .mul_complex(Complex64::new(1.0, 0.0) + correction)
    }
}

/// Axis representation in the closed cosine form:
/// `beta_n(x)/n! = (x^n/2 pi) PV int - (2/(2 pi)^n) sum_{k<=k_max}
///  Theta(1/(2 pi |x|) - k) k^{-n} cos(n(pi/2 - 2 pi k x))`.
pub fn eval_cosine_rep(n: u32, x: Complex64) -> Result<BernoulliEval, EvalError> {
    assert!(n >= 1);
    if x.norm() == 0.0 {
        return Err(EvalError::XZero);
    }
    let g = GeneratingFunction::bernoulli();
    let sings = contour::singularities_axis_band(&g, x, contour::NEAR_BAND);
    let integral = contour::axis_integral(&g, n, x, &sings)?;

    let bound = 1.0 / (2.0 * PI * x.norm());
    let k_max = ((1.0 + contour::TOL_ON) * bound).floor() as u32;
    let nf = n as f64;
    let mut cos_terms = vec![];
    let mut residues = vec![];
    for k in 1..=k_max as i64 {
        let on_contour = (2.0 * PI * k as f64 * x.norm() - 1.0).abs() <= contour::TOL_ON;
        let weight = if on_contour { 0.5 } else { 1.0 };
        let term = LogComplex::from_real(2.0 * weight)
            .mul(LogComplex::new(-nf * (2.0 * PI).ln() - nf * (k as f64).ln(), 0.0))
            .mul(log_cos(nf * (PI / 2.0 - 2.0 * PI * k as f64 * x)))
            .neg();
        cos_terms.push(term);
        for signed in [k, -k] {
            residues.push(ResidueTerm {
                singularity: bernoulli_singularity(signed, x),
                value: printed_residue_scaled(n, x, signed),
                weight,
            });
        }
    }

    let prefactor = LogComplex::from_complex(x)
        .powi(n as i64)
        .mul(LogComplex::new(nf, 0.0))
        .mul(LogComplex::from_real(1.0 / (2.0 * PI)));
    let integral_lc = LogComplex::from_complex(integral);
    let total = LogComplex::sum(
        std::iter::once(prefactor.mul(integral_lc)).chain(cos_terms.iter().copied()),
    );
    Ok(BernoulliEval {
        n,
        x,
        k_max,
        breakdown: RepresentationBreakdown {
            prefactor,
            integral: integral_lc,
            residues,
            total,
            eta_x: Some(-(PI * x.norm()).ln()),
        },
        polylog_term: None,
        diagnostics: vec![],
    })
}

/// `Li_n(z) = sum_{k>=1} z^k/k^n` for `|z| < 1`, in log form. Terms are
/// added until they fall below 1e-17 of the partial sum.
pub fn polylog(n: u32, z: LogComplex) -> LogComplex {
    if z.is_zero() {
        return LogComplex::ZERO;
    }
    assert!(z.log_mag < 0.0, "polylog series needs |z| < 1");
    if z.log_mag < -600.0 {
        // Li_n(z) = z (1 + z/2^n + ...): the first term is all that is
        // representable.
        return z;
    }
    let zc = z.to_complex();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 1..10_000u32 {
        zk *= zc;
        let term = zk / (k as f64).powi(n as i32);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    LogComplex::from_complex(sum)
}

/// Steepest-descent representation in the printed closed forms: two finite
/// step-weighted sums for `Re x != 0`, the polylogarithm form on the
/// imaginary axis.
pub fn eval_descent_rep(n: u32, x: Complex64) -> Result<BernoulliEval, EvalError> {
    assert!(n >= 1);
    if x.norm() == 0.0 {
        return Err(EvalError::XZero);
    }
    if x.re == 0.0 {
        return eval_descent_imaginary(n, x);
    }
    let g = GeneratingFunction::bernoulli();
    let sings = contour::singularities_curve_band(&g, x, contour::NEAR_BAND)?;
    let integral = sdrep::descent_integral(&g, n, x, &sings, sdrep::truncation(n))?;

    let nf = n as f64;
    let i = Complex64::new(0.0, 1.0);
    let mut residues = vec![];
    let mut sum_terms = vec![];
    let mut diagnostics = vec![];
    for sign in [1.0f64, -1.0] {
        // Theta(Arg(sign * i x)/(2 pi Im(sign * i x)) - k): the printed bound
        // for each family.
        let six = i * sign * x;
        let bound = six.arg() / (2.0 * PI * six.im);
        let kmax = (bound * (1.0 + 1e-13)).floor().max(0.0) as i64;
        for k in 1..=kmax {
            let s = bernoulli_singularity(if sign > 0.0 { k } else { -k }, x);
            // Half weight exactly on the curve; the printed bound and the
            // psi classification must agree.
            let on_curve = s.curve == PositionClass::On;
            let weight = if on_curve { 0.5 } else { 1.0 };
            let printed_on = (bound - k as f64).abs() <= (k as f64) * 1e-11 + 1e-11;
            if on_curve != printed_on {
                diagnostics.push(format!(
                    "family {sign:+}, k={k}: printed step argument {bound} vs psi {}",
                    s.psi
                ));
            }
            if s.psi < -contour::PSI_TOL && !on_curve {
                diagnostics.push(format!(
                    "family {sign:+}, k={k}: included by printed bound but psi = {} < 0",
                    s.psi
                ));
            }
            // Term: -(1/(2 pi)^n) e^{sign 2 k pi i n x}/(sign i k)^n.
            let exp_part = LogComplex::exp_of(i * sign * 2.0 * PI * k as f64 * nf * x);
            let ik_pow = LogComplex::new(nf * (k as f64).ln(), sign * nf * PI / 2.0);
            let term = exp_part
                .div(ik_pow)
                .mul(LogComplex::new(-nf * (2.0 * PI).ln(), 0.0))
                .mul_complex(Complex64::new(-weight, 0.0));
            sum_terms.push(term);
            residues.push(ResidueTerm {
                singularity: s,
                value: printed_residue_scaled(n, x, if sign > 0.0 { k } else { -k }),
                weight,
            });
        }
    }

    let prefactor = LogComplex::from_complex(x)
        .powi(n as i64)
        .mul(LogComplex::new(nf, 0.0))
        .mul(LogComplex::from_real(1.0 / (2.0 * PI)));
    let integral_lc = LogComplex::from_complex(integral);
    let total = LogComplex::sum(
        std::iter::once(prefactor.mul(integral_lc)).chain(sum_terms.iter().copied()),
    );
    let bound = 1.0 / (2.0 * PI * x.norm());
    Ok(BernoulliEval {
        n,
        x,
        k_max: ((1.0 + contour::TOL_ON) * bound).floor() as u32,
        breakdown: RepresentationBreakdown {
            prefactor,
            integral: integral_lc,
            residues,
            total,
            eta_x: Some(-(PI * x.norm()).ln()),
        },
        polylog_term: None,
        diagnostics,
    })
}

/// `x = i q`: the plus family condenses into
/// `-Li_n(e^{2 pi i n x})/(2 pi i)^n`; the minus family stays finite.
/// For `q < 0` the evaluation is the conjugate of the one at `i |q|`.
fn eval_descent_imaginary(n: u32, x: Complex64) -> Result<BernoulliEval, EvalError> {
    let q = x.im;
    if q < 0.0 {
        let mut e = eval_descent_imaginary(n, Complex64::new(0.0, -q))?;
        e.x = x;
        conjugate_eval(&mut e);
        return Ok(e);
    }
    let g = GeneratingFunction::bernoulli();
    let nf = n as f64;
    let i = Complex64::new(0.0, 1.0);
    // Plain Gaussian integral: for purely imaginary x no singularity sits on
    // (or near) the finite part of the curve.
    let t = sdrep::truncation(n);
    let f = |tau: f64| sdrep::descent_integrand(&g, n, x, tau);
    let spread = 1.0 / nf.sqrt();
    let r = crate::quad::integrate(&f, -t, t, 1e-11, 1e-300, &[-spread, 0.0, spread]);
    if !r.converged {
        return Err(EvalError::QuadratureFailed(format!(
            "descent quadrature error {:.3e}",
            r.abs_err
        )));
    }

    // -(1/(2 pi i)^n) Li_n(e^{2 pi i n x}).
    let z = LogComplex::exp_of(i * 2.0 * PI * nf * x); // |z| = e^{-2 pi n q} < 1
    let li = polylog(n, z);
    let polylog_term = li
        .div(LogComplex::new(nf * (2.0 * PI).ln(), nf * PI / 2.0))
        .neg();

    // Minus family: -(1/(2 pi)^n) sum Theta(1/(2 pi Im x) - k)
    //   e^{-2 pi i k n x}/(-i k)^n.
    let bound = 1.0 / (2.0 * PI * q);
    let kmax = (bound * (1.0 + 1e-13)).floor().max(0.0) as i64;
    let mut residues = vec![];
    let mut sum_terms = vec![];
    for k in 1..=kmax {
        let s = bernoulli_singularity(-k, x);
        let weight = if s.curve == PositionClass::On { 0.5 } else { 1.0 };
        let exp_part = LogComplex::exp_of(-i * 2.0 * PI * k as f64 * nf * x);
        let ik_pow = LogComplex::new(nf * (k as f64).ln(), -nf * PI / 2.0);
        sum_terms.push(
            exp_part
                .div(ik_pow)
                .mul(LogComplex::new(-nf * (2.0 * PI).ln(), 0.0))
                .mul_complex(Complex64::new(-weight, 0.0)),
        );
        residues.push(ResidueTerm {
            singularity: s,
            value: printed_residue_scaled(n, x, -k),
            weight,
        });
    }

    let prefactor = LogComplex::from_complex(x)
        .powi(n as i64)
        .mul(LogComplex::new(nf, 0.0))
        .mul(LogComplex::from_real(1.0 / (2.0 * PI)));
    let integral_lc = LogComplex::from_complex(r.value);
    let total = LogComplex::sum(
        [prefactor.mul(integral_lc), polylog_term]
            .into_iter()
            .chain(sum_terms.iter().copied()),
    );
    Ok(BernoulliEval {
        n,
        x,
        k_max: ((1.0 + contour::TOL_ON) / (2.0 * PI * x.norm())).floor() as u32,
        breakdown: RepresentationBreakdown {
            prefactor,
            integral: integral_lc,
            residues,
            total,
            eta_x: Some(-(PI * x.norm()).ln()),
        },
        polylog_term: Some(polylog_term),
        diagnostics: vec![],
    })
}

fn conjugate_eval(e: &mut BernoulliEval) {
    let conj = |l: &mut LogComplex| {
        *l = LogComplex::new(l.log_mag, -l.phase);
    };
    conj(&mut e.breakdown.total);
    conj(&mut e.breakdown.integral);
    conj(&mut e.breakdown.prefactor);
    if let Some(p) = e.polylog_term.as_mut() {
        conj(p);
    }
    for r in &mut e.breakdown.residues {
        conj(&mut r.value);
        let s = &mut r.singularity;
        s.theta = s.theta.conj() * -1.0; // reflected strip representative
        s.zeta = s.zeta.conj();
    }
}

/// Printed two-term asymptotics of the rescaled Bernoulli polynomials:
/// the regular case (`e^{1/x} != 1`) and the saddle-pole case
/// (`1/x = 2 pi i m`).
pub fn asymptotic_term(n: u32, x: Complex64) -> Result<crate::asym::AsymptoticTerm, EvalError> {
    use crate::asym::{AsymptoticTerm, TermKind};
    if x.norm() == 0.0 {
        return Err(EvalError::XZero);
    }
    let nf = n as f64;
    let inv = 1.0 / x;
    let e1x = inv.exp();
    let scale = LogComplex::from_complex(x)
        .powi(n as i64)
        .mul(LogComplex::new(nf, 0.0));
    let denom = e1x - 1.0;
    let s2pi = (2.0 * PI).sqrt();
    if denom.norm() > 1e-10 * e1x.norm().max(1.0) {
        // e^n x^{n-1}/((e^{1/x}-1) sqrt(2 pi n)) (1 - c/n + O(1/n^2)).
        let lead = 1.0 / (x * denom * s2pi);
        let e2x = (2.0 * inv).exp();
        let c = (x * x + e2x * (6.0 - 12.0 * x + x * x) - 2.0 * e1x * (x * x - 6.0 * x - 3.0))
            / (12.0 * x * x * denom * denom);
        Ok(AsymptoticTerm {
            kind: TermKind::Saddle,
            scale,
            power: -0.5,
            series: vec![lead, -lead * c],
        })
    } else {
        // 1/x = 2 pi i m.
        let m = (inv.im / (2.0 * PI)).round();
        let lead = (Complex64::new(2.0 / 3.0, 0.0) - Complex64::new(0.0, 2.0 * PI * m))
            / (2.0 * s2pi);
        let next = (Complex64::new(1.0 / 270.0, 0.0)
            + Complex64::new(0.0, m * PI / 6.0)
            + Complex64::new(2.0 * m * m * PI * PI / 3.0, 0.0))
            / (2.0 * s2pi);
        Ok(AsymptoticTerm {
            kind: TermKind::SaddlePole,
            scale,
            power: -0.5,
            series: vec![lead, next],
        })
    }
}
