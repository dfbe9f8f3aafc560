//! Adaptive Gauss–Kronrod quadrature for complex-valued integrands on a real
//! interval, with principal-value pole subtraction.
//!
//! The 15-point Kronrod rule with the embedded 7-point Gauss rule supplies
//! the error estimate; the worst segment is bisected until the summed error
//! meets the requested tolerance.

use num_complex::Complex64;
use std::collections::BinaryHeap;

// 15-point Kronrod abscissae (positive half) and weights, 7-point Gauss
// weights (QUADPACK QK15 constants).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_err: f64,
    pub evals: usize,
    pub converged: bool,
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

fn qk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64, usize) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    let mut fv = [Complex64::new(0.0, 0.0); 15];
    fv[7] = fc;
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = kronrod * 0.5;
    let mut resasc = WGK[7] * (fc - mean).norm();
    for (j, v) in fv.iter().enumerate() {
        let w = if j <= 7 { WGK[j] } else { WGK[14 - j] };
        resasc += w * (v - mean).norm();
    }
    resasc *= half.abs();
    let raw = (kronrod - gauss).norm() * half.abs();
    let mut err = raw;
    if resasc != 0.0 && raw != 0.0 {
        err = resasc * (200.0 * raw / resasc).powf(1.5).min(1.0);
    }
    let min_err = 50.0 * f64::EPSILON * resabs * half.abs();
    if min_err > err {
        err = min_err;
    }
    (kronrod * half, err, 15)
}

/// Integrate `f` over `[a, b]`. `splits` seeds extra initial subdivision
/// points (sorted or not; clipped to the interior).
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    splits: &[f64],
) -> QuadResult {
    let mut cuts: Vec<f64> = vec![a];
    let mut interior: Vec<f64> = splits
        .iter()
        .copied()
        .filter(|t| *t > a + 1e-14 && *t < b - 1e-14)
        .collect();
    interior.sort_by(|p, q| p.partial_cmp(q).unwrap());
    interior.dedup();
    cuts.extend(interior);
    cuts.push(b);

    let mut heap: BinaryHeap<Segment> = BinaryHeap::new();
    let mut evals = 0;
    for w in cuts.windows(2) {
        let (v, e, n) = qk15(f, w[0], w[1]);
        evals += n;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value: v,
            err: e,
        });
    }

    const MAX_SEGMENTS: usize = 6000;
    loop {
        let total: Complex64 = heap.iter().map(|s| s.value).sum();
        let err: f64 = heap.iter().map(|s| s.err).sum();
        let bound = (rel_tol * total.norm()).max(abs_tol);
        if err <= bound {
            return QuadResult {
                value: total,
                abs_err: err,
                evals,
                converged: true,
            };
        }
        if heap.len() >= MAX_SEGMENTS {
            return QuadResult {
                value: total,
                abs_err: err,
                evals,
                converged: false,
            };
        }
        let worst = heap.pop().unwrap();
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating-point resolution; keep its estimate.
            let mut ws = worst;
            ws.err = 0.0;
            heap.push(ws);
            continue;
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (v, e, n) = qk15(f, lo, hi);
            evals += n;
            heap.push(Segment {
                a: lo,
                b: hi,
                value: v,
                err: e,
            });
        }
    }
}

/// A simple pole of the integrand to be subtracted before quadrature.
#[derive(Clone, Copy, Debug)]
pub struct PoleSub {
    /// Pole location; real part inside the integration interval.
    pub location: Complex64,
    /// Residue of the integrand at the pole.
    pub residue: Complex64,
    /// Principal-value pole sitting exactly on the path (real location).
    pub on_path: bool,
}

/// Integrate `f` over `[a, b]` after subtracting `res/(t - loc)` for every
/// listed pole, then add the subtracted parts back analytically:
/// the principal value `res * ln((b-t)/(t-a))` for on-path poles and the
/// exact `res * (Log(b-loc) - Log(a-loc))` for near-path poles.
pub fn integrate_with_poles<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    poles: &[PoleSub],
    rel_tol: f64,
    abs_tol: f64,
    extra_splits: &[f64],
) -> QuadResult {
    let smooth = |t: f64| -> Complex64 {
        let mut v = f(t);
        for p in poles {
            v -= p.residue / (Complex64::new(t, 0.0) - p.location);
        }
        v
    };
    let mut splits: Vec<f64> = extra_splits.to_vec();
    for p in poles {
        splits.push(p.location.re);
    }
    let mut out = integrate(&smooth, a, b, rel_tol, abs_tol, &splits);
    for p in poles {
        let add = if p.on_path {
            let t = p.location.re;
            debug_assert!(t > a && t < b, "PV pole must be interior");
            p.residue * ((b - t) / (t - a)).ln()
        } else {
            // Path stays on one side of the pole, so the principal branch
            // difference is the continuous antiderivative.
            let num = Complex64::new(b, 0.0) - p.location;
            let den = Complex64::new(a, 0.0) - p.location;
            p.residue * (num.ln() - den.ln())
        };
        out.value += add;
    }
    out
}
