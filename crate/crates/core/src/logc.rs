//! Complex numbers in log-magnitude/phase form.
//!
//! Factors like `(e x)^n` or `e^{n(x zeta - i theta)}` overflow `f64` long
//! before the quantities they multiply become meaningless. `LogComplex`
//! stores `log|z|` and `arg z` separately so products, quotients and integer
//! powers stay exact in the exponent, and only a final conversion back to
//! `Complex64` can overflow.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A complex value `z` stored as `(log|z|, arg z)`.
///
/// `log_mag = -inf` encodes `z = 0`; the phase is then meaningless but kept
/// at `0`. The phase is always normalized into `(-pi, pi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogComplex {
    pub log_mag: f64,
    pub phase: f64,
}

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    if a.is_finite() {
        let mut r = a.rem_euclid(2.0 * PI);
        if r > PI {
            r -= 2.0 * PI;
        }
        r
    } else {
        a
    }
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_mag: f64::NEG_INFINITY,
        phase: 0.0,
    };

    pub fn one() -> LogComplex {
        LogComplex {
            log_mag: 0.0,
            phase: 0.0,
        }
    }

    pub fn new(log_mag: f64, phase: f64) -> LogComplex {
        if log_mag == f64::NEG_INFINITY {
            return LogComplex::ZERO;
        }
        LogComplex {
            log_mag,
            phase: wrap_angle(phase),
        }
    }

    pub fn from_complex(z: Complex64) -> LogComplex {
        if z == Complex64::new(0.0, 0.0) {
            LogComplex::ZERO
        } else {
            LogComplex {
                log_mag: z.norm().ln(),
                phase: z.arg(),
            }
        }
    }

    pub fn from_real(x: f64) -> LogComplex {
        if x == 0.0 {
            LogComplex::ZERO
        } else {
            LogComplex {
                log_mag: x.abs().ln(),
                phase: if x > 0.0 { 0.0 } else { PI },
            }
        }
    }

    /// Exact when `log_mag` is below the overflow threshold (~709); returns
    /// infinities beyond it.
    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let m = self.log_mag.exp();
        Complex64::new(m * self.phase.cos(), m * self.phase.sin())
    }

    pub fn is_zero(self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn mul(self, other: LogComplex) -> LogComplex {
        if self.is_zero() || other.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mag + other.log_mag, self.phase + other.phase)
    }

    pub fn div(self, other: LogComplex) -> LogComplex {
        if self.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mag - other.log_mag, self.phase - other.phase)
    }

    pub fn mul_complex(self, z: Complex64) -> LogComplex {
        self.mul(LogComplex::from_complex(z))
    }

    pub fn neg(self) -> LogComplex {
        if self.is_zero() {
            return self;
        }
        LogComplex::new(self.log_mag, self.phase + PI)
    }

    pub fn recip(self) -> LogComplex {
        LogComplex::new(-self.log_mag, -self.phase)
    }

    /// Integer power; the exponent arithmetic is exact, the phase is reduced
    /// once at the end.
    pub fn powi(self, n: i64) -> LogComplex {
        if self.is_zero() {
            return if n == 0 { LogComplex::one() } else { LogComplex::ZERO };
        }
        LogComplex::new(self.log_mag * n as f64, self.phase * n as f64)
    }

    /// `exp(w)` for a plain complex exponent `w`: log-magnitude `Re w`,
    /// phase `Im w`. This never overflows.
    pub fn exp_of(w: Complex64) -> LogComplex {
        LogComplex::new(w.re, w.im)
    }

    /// Addition via the usual shift-by-max trick. Accurate as long as the
    /// terms do not cancel below ~1e-16 of the larger one.
    pub fn add(self, other: LogComplex) -> LogComplex {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let m = self.log_mag.max(other.log_mag);
        let a = Complex64::from_polar((self.log_mag - m).exp(), self.phase);
        let b = Complex64::from_polar((other.log_mag - m).exp(), other.phase);
        let s = a + b;
        if s == Complex64::new(0.0, 0.0) {
            return LogComplex::ZERO;
        }
        LogComplex::new(m + s.norm().ln(), s.arg())
    }

    pub fn sub(self, other: LogComplex) -> LogComplex {
        self.add(other.neg())
    }

    /// Sum of many terms, shifted by the running maximum once.
    pub fn sum<I: IntoIterator<Item = LogComplex>>(terms: I) -> LogComplex {
        let terms: Vec<LogComplex> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        if terms.is_empty() {
            return LogComplex::ZERO;
        }
        let m = terms
            .iter()
            .map(|t| t.log_mag)
            .fold(f64::NEG_INFINITY, f64::max);
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &terms {
            acc += Complex64::from_polar((t.log_mag - m).exp(), t.phase);
        }
        if acc == Complex64::new(0.0, 0.0) {
            return LogComplex::ZERO;
        }
        LogComplex::new(m + acc.norm().ln(), acc.arg())
    }

    /// `|self - other| / |other|`, computed without leaving log space.
    pub fn rel_gap(self, other: LogComplex) -> f64 {
        if other.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        let diff = self.sub(other);
        (diff.log_mag - other.log_mag).exp()
    }
}

impl std::fmt::Display for LogComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.log_mag.abs() < 300.0 {
            let z = self.to_complex();
            write!(f, "{:e}{:+e}i", z.re, z.im)
        } else {
            write!(f, "exp({:.6})*e^({:.6}i)", self.log_mag, self.phase)
        }
    }
}
