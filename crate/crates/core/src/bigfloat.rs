//! Minimal arbitrary-precision binary floats for the direct-evaluation path.
//!
//! Direct evaluation of `pi_n(x)/n!` from the inverse-series coefficients can
//! cancel tens of digits (the worst term exceeds the sum by a factor of
//! roughly `e^{2 pi n (|x| - |Im x|)}` for the Bernoulli family), so the
//! coefficient recurrence and the Horner loop run on a `BigInt`-mantissa
//! float with [`PRECISION`] bits. Truncation keeps the relative error of a
//! single operation below `2^{1-PRECISION}`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, Signed, Zero};

/// Mantissa bits carried through the oracle path (~115 decimal digits).
pub const PRECISION: u64 = 384;

const LN_2: f64 = std::f64::consts::LN_2;

/// `mant * 2^exp`, `mant = 0` encoding zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Bf {
    mant: BigInt,
    exp: i64,
}

impl Bf {
    pub fn zero() -> Bf {
        Bf {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Bf {
        Bf {
            mant: BigInt::from(1),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn from_f64(x: f64) -> Bf {
        if x == 0.0 {
            return Bf::zero();
        }
        assert!(x.is_finite(), "cannot convert non-finite f64");
        let (m, e, s) = Float::integer_decode(x);
        let mant = BigInt::from(m) * s;
        Bf {
            mant,
            exp: e as i64,
        }
        .rounded()
    }

    /// `num / den` to working precision.
    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Bf {
        assert!(!den.is_zero());
        if num.is_zero() {
            return Bf::zero();
        }
        // Shift enough that the quotient keeps PRECISION significant bits
        // even when the denominator dwarfs the numerator.
        let gap = (den.magnitude().bits() as i64 - num.magnitude().bits() as i64).max(0) as u64;
        let shift = PRECISION + 16 + gap;
        let mant = (num << shift) / den;
        Bf {
            mant,
            exp: -(shift as i64),
        }
        .rounded()
    }

    pub fn from_bigint(n: &BigInt) -> Bf {
        Bf {
            mant: n.clone(),
            exp: 0,
        }
        .rounded()
    }

    fn bits(&self) -> u64 {
        self.mant.magnitude().bits()
    }

    fn rounded(mut self) -> Bf {
        let b = self.bits();
        if b > PRECISION {
            let drop = (b - PRECISION) as i64;
            self.mant >>= drop;
            self.exp += drop;
        }
        if self.mant.is_zero() {
            self.exp = 0;
        }
        self
    }

    /// Position of the most significant bit: value magnitude is in
    /// `[2^(msb-1), 2^msb)`.
    fn msb(&self) -> i64 {
        self.exp + self.bits() as i64
    }

    pub fn neg(&self) -> Bf {
        Bf {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Bf) -> Bf {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.msb() >= other.msb() {
            (self, other)
        } else {
            (other, self)
        };
        // The smaller operand is entirely below the kept precision.
        if hi.msb() - lo.msb() > PRECISION as i64 + 8 {
            return hi.clone();
        }
        let target = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - target) as u64);
        let b = &other.mant << ((other.exp - target) as u64);
        Bf {
            mant: a + b,
            exp: target,
        }
        .rounded()
    }

    pub fn sub(&self, other: &Bf) -> Bf {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Bf) -> Bf {
        if self.is_zero() || other.is_zero() {
            return Bf::zero();
        }
        Bf {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
        .rounded()
    }

    pub fn recip(&self) -> Bf {
        assert!(!self.is_zero(), "division by zero");
        let shift = 2 * PRECISION + 16;
        let num = BigInt::from(1) << shift;
        let mant = num / &self.mant;
        Bf {
            mant,
            exp: -(shift as i64) - self.exp,
        }
        .rounded()
    }

    pub fn div(&self, other: &Bf) -> Bf {
        self.mul(&other.recip())
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.bits();
        let mag = self.mant.magnitude();
        // Keep 54 bits and round the last one away.
        let (top, shift) = if b > 54 {
            let t = (mag >> (b - 54)) + 1u32;
            (t >> 1u32, self.exp + (b - 53) as i64)
        } else {
            (mag << 1u32, self.exp - 1)
        };
        let sign = if self.mant.is_negative() { -1.0 } else { 1.0 };
        let t = sign * top.to_string().parse::<f64>().unwrap_or(0.0);
        if shift.unsigned_abs() > 2000 {
            return if shift > 0 {
                t * f64::INFINITY
            } else {
                t * 0.0
            };
        }
        t * 2f64.powi(shift as i32)
    }

    /// Natural log of the magnitude (`-inf` for zero).
    pub fn log_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let b = self.bits();
        let top = if b > 64 { &self.mant >> (b - 64) } else { self.mant.clone() };
        let top = top.magnitude().to_string().parse::<f64>().unwrap();
        let top_bits = if b > 64 { 64 } else { b } as i64;
        top.ln() + (self.exp + b as i64 - top_bits) as f64 * LN_2
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }
}

/// Complex number over [`Bf`].
#[derive(Clone, Debug)]
pub struct BfComplex {
    pub re: Bf,
    pub im: Bf,
}

impl BfComplex {
    pub fn zero() -> BfComplex {
        BfComplex {
            re: Bf::zero(),
            im: Bf::zero(),
        }
    }

    pub fn from_c64(z: Complex64) -> BfComplex {
        BfComplex {
            re: Bf::from_f64(z.re),
            im: Bf::from_f64(z.im),
        }
    }

    pub fn from_real(x: Bf) -> BfComplex {
        BfComplex {
            re: x,
            im: Bf::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &BfComplex) -> BfComplex {
        BfComplex {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &BfComplex) -> BfComplex {
        BfComplex {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn neg(&self) -> BfComplex {
        BfComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, other: &BfComplex) -> BfComplex {
        BfComplex {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn mul_real(&self, x: &Bf) -> BfComplex {
        BfComplex {
            re: self.re.mul(x),
            im: self.im.mul(x),
        }
    }

    pub fn recip(&self) -> BfComplex {
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let inv = n.recip();
        BfComplex {
            re: self.re.mul(&inv),
            im: self.im.neg().mul(&inv),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Convert to log-magnitude/phase without overflow.
    pub fn to_log_complex(&self) -> crate::logc::LogComplex {
        if self.is_zero() {
            return crate::logc::LogComplex::ZERO;
        }
        // Scale both parts by a common power of two so atan2 and the norm
        // are computed on mid-range doubles.
        let m = self.re.msb().max(self.im.msb());
        let scale = |b: &Bf| -> f64 {
            if b.is_zero() {
                0.0
            } else {
                let shifted = Bf {
                    mant: b.mant.clone(),
                    exp: b.exp - m,
                };
                shifted.to_f64()
            }
        };
        let re = scale(&self.re);
        let im = scale(&self.im);
        let norm = (re * re + im * im).sqrt();
        crate::logc::LogComplex::new(norm.ln() + m as f64 * LN_2, im.atan2(re))
    }
}
