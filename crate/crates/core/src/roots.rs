//! Simultaneous polynomial root finding (Aberth–Ehrlich iteration).
//!
//! Internal helper shared by the generating-function constructor (zeros of a
//! polynomial `g`) and the empirical root clouds of the rescaled polynomials.

use num_complex::Complex64;

pub struct RootFind {
    pub roots: Vec<Complex64>,
    pub iterations: u32,
    pub converged: bool,
}

/// All complex roots of `sum coeffs[k] z^k` (lowest first, leading nonzero).
///
/// Deterministic: seeds sit on the Newton-polygon circles (one circle per
/// upper-convex-hull edge of `(k, log|c_k|)`, radius from the edge slope),
/// which tracks the root moduli even when the coefficients span hundreds of
/// orders of magnitude.
pub fn aberth(coeffs: &[Complex64], max_iter: u32, eps: f64) -> RootFind {
    let deg = coeffs.len() - 1;
    assert!(deg >= 1, "need degree >= 1");
    let lead = coeffs[deg];
    assert!(lead.norm() > 0.0, "leading coefficient must be nonzero");

    // Scale-free working copy.
    let max_c = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let p: Vec<Complex64> = coeffs.iter().map(|c| c / max_c).collect();
    let dp: Vec<Complex64> = crate::series::derivative(&p);

    let radius = seed_radius(&p);
    let mut w = newton_polygon_seeds(&p);
    debug_assert_eq!(w.len(), deg);
    if w.len() != deg {
        w = (0..deg)
            .map(|i| {
                let ang = 2.0 * std::f64::consts::PI * (i as f64 + 0.25) / deg as f64 + 0.4;
                Complex64::from_polar(radius, ang)
            })
            .collect();
    }

    let horner = |cs: &[Complex64], z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in cs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };

    let tol_scale = radius.max(1e-12);
    let mut converged = false;
    let mut iters = 0;
    for it in 0..max_iter {
        iters = it + 1;
        let mut max_step = 0.0f64;
        // Gauss-Seidel sweep: corrections see the updates of this pass.
        for i in 0..deg {
            let wi = w[i];
            let pv = horner(&p, wi);
            if pv.norm() == 0.0 {
                continue;
            }
            let dv = horner(&dp, wi);
            let newton = if dv.norm() > 0.0 {
                pv / dv
            } else {
                // Saddle of p; nudge off it.
                Complex64::new(eps.sqrt(), eps.sqrt())
            };
            let mut repulse = Complex64::new(0.0, 0.0);
            for (j, &wj) in w.iter().enumerate() {
                if j != i {
                    let d = wi - wj;
                    if d.norm() > 1e-300 {
                        repulse += 1.0 / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulse;
            let step = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            w[i] = wi - step;
            max_step = max_step.max(step.norm() / w[i].norm().max(tol_scale));
        }
        if max_step < eps {
            converged = true;
            break;
        }
    }

    // Newton polishing pass.
    for wi in w.iter_mut() {
        for _ in 0..3 {
            let pv = horner(&p, *wi);
            let dv = horner(&dp, *wi);
            if dv.norm() == 0.0 {
                break;
            }
            let step = pv / dv;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *wi -= step;
            if step.norm() <= 1e-16 * wi.norm().max(tol_scale) {
                break;
            }
        }
    }

    RootFind {
        roots: w,
        iterations: iters,
        converged,
    }
}

/// Seed positions from the upper convex hull of `(k, log|c_k|)`: each hull
/// edge from `k1` to `k2` contributes `k2 - k1` seeds on the circle of
/// radius `exp((L_{k1} - L_{k2})/(k2 - k1))`, staggered in angle.
fn newton_polygon_seeds(p: &[Complex64]) -> Vec<Complex64> {
    polygon_seeds_from_logmags(&p.iter().map(|c| c.norm().ln()).collect::<Vec<_>>())
}

/// Same construction on raw log-magnitudes (`-inf` marks a zero
/// coefficient), usable when the coefficients themselves are not
/// representable in doubles.
pub(crate) fn polygon_seeds_from_logmags(logmags: &[f64]) -> Vec<Complex64> {
    let logs: Vec<(usize, f64)> = logmags
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_finite())
        .map(|(k, &l)| (k, l))
        .collect();
    // Upper hull by monotone chain over increasing k.
    let mut hull: Vec<(usize, f64)> = vec![];
    for &(k, l) in &logs {
        while hull.len() >= 2 {
            let (k1, l1) = hull[hull.len() - 2];
            let (k2, l2) = hull[hull.len() - 1];
            // Keep the chain concave (upper hull): drop k2 if below segment.
            let cross = (k2 as f64 - k1 as f64) * (l - l1) - (k as f64 - k1 as f64) * (l2 - l1);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((k, l));
    }
    let mut seeds = vec![];
    // Roots below the lowest nonzero power sit at 0 (caller strips them;
    // keep tiny seeds as a fallback).
    for i in 0..hull[0].0 {
        seeds.push(Complex64::from_polar(
            1e-6,
            0.3 + i as f64,
        ));
    }
    for (edge, pair) in hull.windows(2).enumerate() {
        let (k1, l1) = pair[0];
        let (k2, l2) = pair[1];
        let m = k2 - k1;
        let r = ((l1 - l2) / m as f64).exp();
        for i in 0..m {
            let ang = 2.0 * std::f64::consts::PI * (i as f64 + 0.26) / m as f64
                + 0.57 * (edge as f64 + 1.0);
            seeds.push(Complex64::from_polar(r, ang));
        }
    }
    seeds
}

fn seed_radius(p: &[Complex64]) -> f64 {
    let deg = p.len() - 1;
    let lead = p[deg].norm();
    let mut r = 0.0f64;
    for (k, c) in p.iter().enumerate().take(deg) {
        let m = (c.norm() / lead).powf(1.0 / (deg - k) as f64);
        r = r.max(m);
    }
    1.2 * r.max(1e-6)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sort_by_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    #[test]
    fn quadratic() {
        // (z-1)(z+2) = z^2 + z - 2
        let r = aberth(&[c(-2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)], 100, 1e-14);
        let roots = sort_by_re(r.roots);
        assert!((roots[0] - c(-2.0, 0.0)).norm() < 1e-12);
        assert!((roots[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cubic_complex() {
        // (z-1)(z^2+2) = -2 + 2z - z^2 + z^3
        let r = aberth(&[c(-2.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)], 200, 1e-14);
        let mut found: Vec<Complex64> = r.roots;
        let targets = [c(1.0, 0.0), c(0.0, 2f64.sqrt()), c(0.0, -2f64.sqrt())];
        for t in targets {
            let (idx, best) = found
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| (*a - t).norm().partial_cmp(&(*b - t).norm()).unwrap())
                .map(|(i, z)| (i, *z))
                .unwrap();
            assert!((best - t).norm() < 1e-11, "missing root {t}");
            found.remove(idx);
        }
    }

    #[test]
    fn wilkinson_small() {
        // (z-1)(z-2)...(z-8): coefficients by expansion.
        let mut p = vec![c(1.0, 0.0)];
        for k in 1..=8 {
            let mut q = vec![c(0.0, 0.0); p.len() + 1];
            for (i, &pc) in p.iter().enumerate() {
                q[i] += pc * c(-(k as f64), 0.0);
                q[i + 1] += pc;
            }
            p = q;
        }
        let r = aberth(&p, 300, 1e-14);
        let roots = sort_by_re(r.roots);
        for (k, root) in roots.iter().enumerate() {
            assert!((root - c((k + 1) as f64, 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn double_root_clusters() {
        // (z-1)^2 (z+3) = 3 - 5z + z^2 + z^3: roots pair near 1 within
        // sqrt-eps accuracy.
        let p = [c(3.0, 0.0), c(-5.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        let r = aberth(&p, 300, 1e-14);
        let near_one: Vec<_> = r.roots.iter().filter(|z| (*z - c(1.0, 0.0)).norm() < 1e-4).collect();
        assert_eq!(near_one.len(), 2);
    }
}
