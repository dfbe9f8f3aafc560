//! Truncated complex power series.
//!
//! Shared by the inverse-Taylor recurrence, the local expansions used for
//! higher-order residues, and the Watson-lemma term extraction. A series is a
//! coefficient vector `c[0..len]`, lowest order first; all operations
//! truncate to the shorter length involved.

use num_complex::Complex64;

pub type Series = Vec<Complex64>;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Product truncated to `len` coefficients.
pub fn mul_trunc(a: &[Complex64], b: &[Complex64], len: usize) -> Series {
    let mut out = vec![czero(); len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == czero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Reciprocal series of `a` (requires `a[0] != 0`): the division recurrence
/// `r_n = (delta_{n0} - sum_{j=1..n} a_j r_{n-j}) / a_0`.
pub fn recip_trunc(a: &[Complex64], len: usize) -> Series {
    assert!(!a.is_empty() && a[0] != czero(), "reciprocal needs a[0] != 0");
    let mut r = vec![czero(); len];
    r[0] = 1.0 / a[0];
    for n in 1..len {
        let mut s = czero();
        for j in 1..=n.min(a.len() - 1) {
            s += a[j] * r[n - j];
        }
        r[n] = -s / a[0];
    }
    r
}

/// `exp` of a series with zero constant term, via `f' = h' f`:
/// `f_n = (1/n) sum_{k=1..n} k h_k f_{n-k}`.
pub fn exp_trunc(h: &[Complex64], len: usize) -> Series {
    assert!(h.is_empty() || h[0] == czero(), "exp_trunc needs h[0] = 0");
    let mut f = vec![czero(); len];
    f[0] = Complex64::new(1.0, 0.0);
    for n in 1..len {
        let mut s = czero();
        for k in 1..=n.min(h.len() - 1) {
            s += (k as f64) * h[k] * f[n - k];
        }
        f[n] = s / (n as f64);
    }
    f
}

/// Evaluate a Taylor polynomial `sum taylor[m] u^m` at a series argument `u`
/// with `u[0] = 0` (plain composition by Horner over series products).
pub fn apply_taylor(taylor: &[Complex64], inner: &[Complex64], len: usize) -> Series {
    assert!(inner.is_empty() || inner[0] == czero(), "inner series must vanish at 0");
    let mut out = vec![czero(); len];
    for &c in taylor.iter().rev() {
        out = mul_trunc(&out, inner, len);
        out[0] += c;
    }
    out
}

/// Term-by-term derivative.
pub fn derivative(a: &[Complex64]) -> Series {
    if a.len() <= 1 {
        return vec![];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// Evaluate the truncated series at a scalar point.
pub fn eval(a: &[Complex64], t: Complex64) -> Complex64 {
    let mut acc = czero();
    for &c in a.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

/// Binomial coefficients `C(n, k)` as f64, row by row.
pub fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for k in 1..=n {
        let prev = row[k - 1];
        row.push(prev * (n - k + 1) as f64 / k as f64);
    }
    row
}
