//! Zero attractors: the dominance comparison between the saddle scale `e`
//! and the residue scales `|e^{zeta x}/(zeta x)|`, the tie curves (rotated
//! and rescaled Szego arcs, equimodulus straight lines), and the empirical
//! roots of `pi_n` they attract.

use crate::gf::{DirectEvaluator, GeneratingFunction};
use crate::logc::LogComplex;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

/// Zeros beyond this modulus rank contribute no visible arc for the
/// Bernoulli family; the polynomial kind always uses its full zero list.
const BERNOULLI_ARC_PAIRS: i64 = 8;

#[derive(Debug, Error)]
pub enum AttractorError {
    #[error("x = 0 has no dominance classification")]
    XZero,
    #[error("root iteration failed to converge for root indices {0:?}")]
    NonConvergence(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Champion {
    Saddle,
    /// Index into [`competitors`]' zero list and the zero itself.
    Zero { index: usize, zeta: Complex64 },
}

/// Which exponential scale wins at `x`, by how much.
#[derive(Clone, Debug, Serialize)]
pub struct DominanceReport {
    pub x: Complex64,
    pub champion: Champion,
    /// The winning magnitude `max(e, |e^{zeta x}/(zeta x)|)`.
    pub phi: f64,
    /// Log-gap to the runner-up (`inf` when the saddle runs unopposed).
    pub margin: f64,
}

/// The zeros admissible at `x` (those with `|zeta x| < 1`), in the stable
/// order used by champion indices and arc labels.
pub fn competitors(g: &GeneratingFunction, x: Complex64) -> Vec<Complex64> {
    arc_zeros(g)
        .into_iter()
        .filter(|z| (z * x).norm() < 1.0)
        .collect()
}

fn arc_zeros(g: &GeneratingFunction) -> Vec<Complex64> {
    if let Some(zeros) = g.all_polynomial_zeros() {
        zeros.iter().map(|z| z.location).collect()
    } else {
        g.zeros_in_disk(2.0 * PI * BERNOULLI_ARC_PAIRS as f64 + 1.0)
            .iter()
            .map(|z| z.location)
            .collect()
    }
}

fn log_scale(zeta: Complex64, x: Complex64) -> f64 {
    let zx = zeta * x;
    zx.re - zx.norm().ln()
}

/// Compare the saddle scale with every admissible residue scale at `x`.
pub fn dominance(g: &GeneratingFunction, x: Complex64) -> Result<DominanceReport, AttractorError> {
    if x.norm() == 0.0 {
        return Err(AttractorError::XZero);
    }
    let mut entries: Vec<(Champion, f64)> = vec![(Champion::Saddle, 1.0)];
    for (index, zeta) in arc_zeros(g).into_iter().enumerate() {
        if (zeta * x).norm() < 1.0 {
            entries.push((Champion::Zero { index, zeta }, log_scale(zeta, x)));
        }
    }
    entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    let margin = if entries.len() >= 2 {
        entries[0].1 - entries[1].1
    } else {
        f64::INFINITY
    };
    Ok(DominanceReport {
        x,
        champion: entries[0].0,
        phi: entries[0].1.exp(),
        margin,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ArcKind {
    /// Tie between the saddle and the zero `zeta`: the rescaled Szego curve
    /// `x = z/zeta`, `|z e^{1-z}| = 1`, `|z| <= 1`.
    Szego { index: usize, zeta: Complex64 },
    /// Tie between two residue scales: a straight line.
    Line {
        index_a: usize,
        zeta_a: Complex64,
        index_b: usize,
        zeta_b: Complex64,
    },
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ArcSample {
    pub x: Complex64,
    /// Curve parameter: the angle on the canonical Szego curve, or the
    /// signed offset along the line.
    pub param: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ClipReason {
    CurveEnd,
    ThirdTermDominates,
    Admissibility,
}

/// Which conditions held on the retained samples and what terminated the
/// piece at each end.
#[derive(Clone, Debug, Serialize)]
pub struct Validity {
    pub param_range: (f64, f64),
    pub start: ClipReason,
    pub end: ClipReason,
    /// Minimum of (tie scale - best third scale) over the kept samples;
    /// nonnegative up to the clipping tolerance.
    pub min_margin_over_third: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AttractorArc {
    pub kind: ArcKind,
    pub samples: Vec<ArcSample>,
    pub validity: Validity,
}

/// Radius of the canonical Szego curve `|z e^{1-z}| = 1` at angle `phi`,
/// by safeguarded Newton on `log rho + 1 - rho cos phi = 0`.
pub fn szego_radius(phi: f64) -> f64 {
    let cp = phi.cos();
    // The cusp: f and f' vanish together at rho = 1.
    if cp >= 1.0 - 1e-15 {
        return 1.0;
    }
    let f = |r: f64| r.ln() + 1.0 - r * cp;
    // f is increasing on (0, 1] with f(0+) = -inf, f(1) = 1 - cp > 0.
    let (mut lo, mut hi) = (1e-12f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut rho = 0.5 * (lo + hi);
    for _ in 0..6 {
        let d = 1.0 / rho - cp;
        if d <= 0.0 {
            break;
        }
        let step = f(rho) / d;
        rho -= step;
        if !(lo..=hi).contains(&rho) {
            rho = 0.5 * (lo + hi);
            break;
        }
        if step.abs() < 1e-16 * rho {
            break;
        }
    }
    rho
}

/// Cusp points `x = 1/zeta` of the Szego arcs.
pub fn szego_cusps(g: &GeneratingFunction) -> Vec<Complex64> {
    arc_zeros(g).iter().map(|z| 1.0 / z).collect()
}

/// Build all attractor arcs at the given sampling resolution, clipped to
/// where the tying pair are the joint global champions.
pub fn attractor_arcs(g: &GeneratingFunction, resolution: usize) -> Vec<AttractorArc> {
    let zeros = arc_zeros(g);
    let resolution = resolution.max(8);
    let mut arcs = vec![];

    // Szego arcs: tie between the saddle and one zero.
    for (index, &zeta) in zeros.iter().enumerate() {
        let mut kept: Vec<(bool, ArcSample, f64)> = vec![];
        for s in 0..=resolution {
            let phi = -PI + 2.0 * PI * s as f64 / resolution as f64;
            let rho = szego_radius(phi);
            let z = Complex64::from_polar(rho, phi);
            let x = z / zeta;
            // Third-term margin: every other scale must stay below the tie
            // value 1 (= log e).
            let mut third = f64::NEG_INFINITY;
            for (j, &other) in zeros.iter().enumerate() {
                if j != index && (other * x).norm() < 1.0 {
                    third = third.max(log_scale(other, x));
                }
            }
            let keep = third <= 1.0 + 1e-12;
            kept.push((keep, ArcSample { x, param: phi }, 1.0 - third));
        }
        arcs.extend(split_runs(
            ArcKind::Szego { index, zeta },
            &kept,
            ClipReason::CurveEnd,
        ));
    }

    // Equimodulus lines: tie between two residue scales.
    for ia in 0..zeros.len() {
        for ib in (ia + 1)..zeros.len() {
            let (za, zb) = (zeros[ia], zeros[ib]);
            let d = za - zb;
            if d.norm() < 1e-12 {
                continue;
            }
            // Base point and direction of Re((za - zb) x) = log|za/zb|.
            let level = (za.norm() / zb.norm()).ln();
            let x0 = level * d.conj() / d.norm_sqr();
            let u = Complex64::new(0.0, 1.0) * d.conj() / d.norm();
            // Joint admissibility |za x| < 1 and |zb x| < 1 along x0 + t u.
            let range = match admissible_interval(za, x0, u).and_then(|r1| {
                admissible_interval(zb, x0, u).map(|r2| (r1.0.max(r2.0), r1.1.min(r2.1)))
            }) {
                Some((lo, hi)) if lo < hi => (lo, hi),
                _ => continue,
            };
            let tie = |x: Complex64| log_scale(za, x);
            let mut kept: Vec<(bool, ArcSample, f64)> = vec![];
            for s in 0..=resolution {
                let t = range.0 + (range.1 - range.0) * s as f64 / resolution as f64;
                let x = x0 + t * u;
                let tie_val = tie(x);
                let mut third = 1.0f64; // the saddle competes
                for (j, &other) in zeros.iter().enumerate() {
                    if j != ia && j != ib && (other * x).norm() < 1.0 {
                        third = third.max(log_scale(other, x));
                    }
                }
                let keep = tie_val >= third - 1e-12;
                kept.push((keep, ArcSample { x, param: t }, tie_val - third));
            }
            arcs.extend(split_runs(
                ArcKind::Line {
                    index_a: ia,
                    zeta_a: za,
                    index_b: ib,
                    zeta_b: zb,
                },
                &kept,
                ClipReason::Admissibility,
            ));
        }
    }
    arcs
}

/// `|zeta (x0 + t u)| < 1` solved for `t` (a disk in the line parameter).
fn admissible_interval(zeta: Complex64, x0: Complex64, u: Complex64) -> Option<(f64, f64)> {
    // |a + t b|^2 < 1 with a = zeta x0, b = zeta u (|b| = |zeta|).
    let a = zeta * x0;
    let b = zeta * u;
    let bb = b.norm_sqr();
    let ab = (a * b.conj()).re;
    let c = a.norm_sqr() - 1.0;
    let disc = ab * ab - bb * c;
    if disc <= 0.0 {
        return None;
    }
    let s = disc.sqrt();
    Some(((-ab - s) / bb, (-ab + s) / bb))
}

fn split_runs(
    kind: ArcKind,
    samples: &[(bool, ArcSample, f64)],
    boundary_reason: ClipReason,
) -> Vec<AttractorArc> {
    let mut out = vec![];
    let mut run: Vec<(ArcSample, f64)> = vec![];
    let mut started_at_edge = true;
    for (i, (keep, sample, margin)) in samples.iter().enumerate() {
        if *keep {
            if run.is_empty() {
                started_at_edge = i == 0;
            }
            run.push((*sample, *margin));
        }
        let terminal = !keep || i + 1 == samples.len();
        if terminal && run.len() >= 2 {
            let start = if started_at_edge {
                boundary_reason
            } else {
                ClipReason::ThirdTermDominates
            };
            let end = if *keep && i + 1 == samples.len() {
                boundary_reason
            } else {
                ClipReason::ThirdTermDominates
            };
            let min_margin = run.iter().map(|(_, m)| *m).fold(f64::INFINITY, f64::min);
            out.push(AttractorArc {
                kind,
                samples: run.iter().map(|(s, _)| *s).collect(),
                validity: Validity {
                    param_range: (run[0].0.param, run.last().unwrap().0.param),
                    start,
                    end,
                    min_margin_over_third: min_margin,
                },
            });
            run.clear();
        } else if terminal {
            run.clear();
        }
    }
    out
}

/// Roots of `pi_n(x)` by simultaneous iteration on the rescaled coefficient
/// list (log-scaled into doubles), polished by high-precision Newton.
/// Double precision supports `n` up to about 200.
pub fn roots_rescaled(g: &GeneratingFunction, n: u32) -> Result<Vec<Complex64>, AttractorError> {
    assert!(n >= 1);
    let eval = DirectEvaluator::new(g, n);
    let q: Vec<LogComplex> = eval.coeffs_log();
    // Strip zero roots: q_0 = ... = q_{j0-1} = 0 gives j0 roots at 0.
    let j0 = q
        .iter()
        .position(|c| !c.is_zero())
        .expect("leading coefficient is nonzero");
    let mut roots: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); j0];
    let deg = q.len() - 1 - j0;
    if deg > 0 {
        // Substitute y = s w to equilibrate the extreme coefficients.
        let log_s = (q[j0].log_mag - q[q.len() - 1].log_mag) / deg as f64;
        let scaled: Vec<LogComplex> = q[j0..]
            .iter()
            .enumerate()
            .map(|(j, c)| c.mul(LogComplex::new(log_s * j as f64, 0.0)))
            .collect();
        let m = scaled
            .iter()
            .map(|c| c.log_mag)
            .fold(f64::NEG_INFINITY, f64::max);
        let range = scaled
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| m - c.log_mag)
            .fold(0.0f64, f64::max);
        let s = log_s.exp();
        if range < 600.0 {
            // Everything representable: cheap double-precision pre-stage.
            let coeffs: Vec<Complex64> = scaled
                .iter()
                .map(|c| LogComplex::new(c.log_mag - m, c.phase).to_complex())
                .collect();
            let rf = crate::roots::aberth(&coeffs, 1000, 1e-13);
            for w in rf.roots {
                roots.push(w * s / n as f64);
            }
        } else {
            // Coefficient dynamic range exceeds doubles (large n): start
            // straight from the Newton-polygon circles; the high-precision
            // sweeps below do the convergence.
            let logmags: Vec<f64> = scaled.iter().map(|c| c.log_mag).collect();
            for w in crate::roots::polygon_seeds_from_logmags(&logmags) {
                roots.push(w * s / n as f64);
            }
        }
    }

    // Double precision cannot pin the densely clustered roots (the
    // evaluation condition number grows like e^{c n} away from the extreme
    // coefficients), so finish with simultaneous-iteration sweeps whose
    // Newton ratio p/p' comes from the high-precision evaluator; the
    // pairwise repulsion keeps collapsed iterates apart and only needs
    // double precision.
    let scale_len = roots
        .iter()
        .map(|r| r.norm())
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let m = roots.len();
    for _sweep in 0..60 {
        let mut max_rel = 0.0f64;
        for i in 0..m {
            if j0 > 0 && i < j0 {
                continue; // exact zero roots (still repel the others)
            }
            let (p, dp) = eval.eval_with_derivative(roots[i]);
            if p.is_zero() {
                continue;
            }
            let newton = p.div(dp).to_complex();
            let mut repulse = Complex64::new(0.0, 0.0);
            for j in 0..m {
                if j != i {
                    let d = roots[i] - roots[j];
                    if d.norm() > 1e-300 {
                        repulse += 1.0 / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulse;
            let step = if denom.norm() > 1e-12 {
                newton / denom
            } else {
                newton
            };
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            roots[i] -= step;
            max_rel = max_rel.max(step.norm() / roots[i].norm().max(1e-3 * scale_len));
        }
        if max_rel < 1e-13 {
            break;
        }
    }
    // Residual criterion: a fresh Newton step at each final point.
    let mut failed = vec![];
    for (idx, root) in roots.iter().enumerate() {
        if root.norm() == 0.0 && j0 > 0 && idx < j0 {
            continue;
        }
        let (p, dp) = eval.eval_with_derivative(*root);
        if !p.is_zero() {
            let newton = p.div(dp).to_complex().norm();
            if newton > 1e-10 * root.norm().max(1e-3 * scale_len) {
                failed.push(idx);
            }
        }
    }
    if !failed.is_empty() {
        return Err(AttractorError::NonConvergence(failed));
    }
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(roots)
}

/// Largest distance from any of `points` to the sampled arc set (point to
/// polyline-segment distance).
pub fn one_sided_hausdorff(points: &[Complex64], arcs: &[AttractorArc]) -> f64 {
    let mut worst = 0.0f64;
    for &p in points {
        let mut best = f64::INFINITY;
        for arc in arcs {
            for w in arc.samples.windows(2) {
                best = best.min(dist_segment(p, w[0].x, w[1].x));
            }
        }
        worst = worst.max(best);
    }
    worst
}

fn dist_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let denom = ab.norm_sqr();
    if denom == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * ab.conj()).re / denom;
    let t = t.clamp(0.0, 1.0);
    (p - (a + t * ab)).norm()
}

/// CSV with columns `re,im,kind,param`; zero labels appear in `#` comment
/// lines so `kind` stays compact (`szego_0`, `line_0_2`, `root`).
pub fn arcs_to_csv(arcs: &[AttractorArc], zeros_legend: &[Complex64]) -> String {
    let mut out = String::new();
    for (i, z) in zeros_legend.iter().enumerate() {
        out.push_str(&format!("# zero_{i} = {},{}\n", z.re, z.im));
    }
    out.push_str("re,im,kind,param\n");
    for arc in arcs {
        let kind = match arc.kind {
            ArcKind::Szego { index, .. } => format!("szego_{index}"),
            ArcKind::Line {
                index_a, index_b, ..
            } => format!("line_{index_a}_{index_b}"),
        };
        for s in &arc.samples {
            out.push_str(&format!("{},{},{},{}\n", s.x.re, s.x.im, kind, s.param));
        }
    }
    out
}

pub fn roots_to_csv(roots: &[Complex64]) -> String {
    let mut out = String::from("re,im,kind,param\n");
    for (i, r) in roots.iter().enumerate() {
        out.push_str(&format!("{},{},root,{}\n", r.re, r.im, i));
    }
    out
}

#[derive(Serialize)]
struct ArcsJson<'a> {
    zeros: Vec<[f64; 2]>,
    arcs: &'a [AttractorArc],
}

pub fn arcs_to_json(arcs: &[AttractorArc], zeros_legend: &[Complex64]) -> String {
    serde_json::to_string_pretty(&ArcsJson {
        zeros: zeros_legend.iter().map(|z| [z.re, z.im]).collect(),
        arcs,
    })
    .expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fig_poly() -> GeneratingFunction {
        // (z-1)(z^2+2)
        GeneratingFunction::polynomial(vec![c(-2.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)])
            .unwrap()
    }

    #[test]
    fn dominance_examples() {
        // g = z - 1 at x = 0.1: |e^{0.1}/0.1| = 11.05 > e.
        let g = GeneratingFunction::polynomial(vec![c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let d = dominance(&g, c(0.1, 0.0)).unwrap();
        match d.champion {
            Champion::Zero { zeta, .. } => assert!((zeta - c(1.0, 0.0)).norm() < 1e-10),
            other => panic!("expected zero champion, got {other:?}"),
        }
        assert!((d.phi - (0.1f64.exp() / 0.1)).abs() < 1e-10);
        // All |zeta x| >= 1: saddle unopposed.
        let d = dominance(&g, c(3.0, 0.0)).unwrap();
        assert_eq!(d.champion, Champion::Saddle);
        assert!((d.phi - 1.0f64.exp()).abs() < 1e-12);
        assert!(d.margin.is_infinite());
    }

    #[test]
    fn szego_radius_endpoints() {
        assert!((szego_radius(0.0) - 1.0).abs() < 1e-12);
        // At phi = pi: log rho + 1 + rho = 0 => rho = 0.278464542761074.
        let rho = szego_radius(PI);
        assert!((rho.ln() + 1.0 + rho).abs() < 1e-12);
        assert!((rho - 0.278464542761074).abs() < 1e-10);
    }

    #[test]
    fn single_zero_attractor_is_scaled_szego_curve() {
        // g = z - zeta: the attractor is the Szego curve scaled by 1/zeta.
        let zeta = c(1.5, 1.0);
        let g = GeneratingFunction::polynomial(vec![-zeta, c(1.0, 0.0)]).unwrap();
        let arcs = attractor_arcs(&g, 256);
        assert_eq!(arcs.len(), 1);
        let arc = &arcs[0];
        assert_eq!(arc.samples.len(), 257); // nothing clipped
        for s in &arc.samples {
            let zx = zeta * s.x;
            // Defining residual |Re(zeta x) - log|zeta x| - 1| <= 1e-10.
            assert!((zx.re - zx.norm().ln() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn fig_polynomial_cusps_and_lines() {
        let g = fig_poly();
        let arcs = attractor_arcs(&g, 400);
        // Cusps of the three Szego arcs at 1/zeta: 1, -i/sqrt 2, +i/sqrt 2.
        let cusps = szego_cusps(&g);
        let s = 1.0 / 2f64.sqrt();
        for target in [c(1.0, 0.0), c(0.0, s), c(0.0, -s)] {
            assert!(
                cusps.iter().any(|p| (p - target).norm() < 1e-9),
                "missing cusp {target}"
            );
        }
        // The cusp points appear on the sampled arcs (param 0 on each Szego
        // arc when unclipped there).
        for target in [c(1.0, 0.0), c(0.0, s), c(0.0, -s)] {
            let near = arcs.iter().flat_map(|a| &a.samples).any(|smp| {
                (smp.x - target).norm() < 0.02
            });
            assert!(near, "no arc sample near cusp {target}");
        }
        // Equimodulus lines exist between the conjugate pair +-i sqrt 2.
        assert!(arcs.iter().any(|a| matches!(a.kind, ArcKind::Line { .. })));
        // Every line sample satisfies the defining log equality.
        for arc in arcs.iter() {
            if let ArcKind::Line { zeta_a, zeta_b, .. } = arc.kind {
                for smp in &arc.samples {
                    let lhs = ((zeta_a - zeta_b) * smp.x).re;
                    let rhs = (zeta_a.norm() / zeta_b.norm()).ln();
                    assert!((lhs - rhs).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn bernoulli_pair_line_is_real_axis() {
        // zeta = +-2 pi i: Re(4 pi i x) = 0 is the real axis.
        let g = GeneratingFunction::bernoulli();
        let arcs = attractor_arcs(&g, 200);
        let line = arcs
            .iter()
            .find(|a| {
                matches!(a.kind, ArcKind::Line { zeta_a, zeta_b, .. }
                    if (zeta_a + zeta_b).norm() < 1e-9 && zeta_a.im.abs() > 6.0 && zeta_a.im.abs() < 7.0)
            })
            .expect("conjugate-pair line");
        for s in &line.samples {
            assert!(s.x.im.abs() < 1e-12, "line sample off the real axis: {}", s.x);
        }
    }

    #[test]
    fn roots_of_monomial_family() {
        // g = 1: pi_n(x) = (n x)^n, all roots at 0.
        let g = GeneratingFunction::constant(c(1.0, 0.0)).unwrap();
        let roots = roots_rescaled(&g, 5).unwrap();
        assert_eq!(roots.len(), 5);
        for r in roots {
            assert!(r.norm() < 1e-12);
        }
    }

    #[test]
    fn roots_of_rescaled_quadratic() {
        // Bernoulli n = 2: pi_2(x) = B_2(2x) = 4x^2 - 2x + 1/6,
        // roots (1 +- 1/sqrt 3)/4.
        let g = GeneratingFunction::bernoulli();
        let roots = roots_rescaled(&g, 2).unwrap();
        let lo = (1.0 - 1.0 / 3f64.sqrt()) / 4.0;
        let hi = (1.0 + 1.0 / 3f64.sqrt()) / 4.0;
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - c(lo, 0.0)).norm() < 1e-12, "{}", roots[0]);
        assert!((roots[1] - c(hi, 0.0)).norm() < 1e-12, "{}", roots[1]);
    }

    #[test]
    fn roots_residuals_are_tight() {
        let g = fig_poly();
        let n = 60;
        let roots = roots_rescaled(&g, n).unwrap();
        assert_eq!(roots.len(), n as usize);
        let eval = DirectEvaluator::new(&g, n);
        for r in &roots {
            let (p, dp) = eval.eval_with_derivative(*r);
            let newton = p.div(dp).to_complex().norm();
            assert!(newton < 1e-10 * r.norm().max(0.05), "residual {newton} at {r}");
        }
    }

    #[test]
    fn roots_approach_arcs() {
        let g = fig_poly();
        let arcs = attractor_arcs(&g, 800);
        let mut last = f64::INFINITY;
        for n in [50u32, 100] {
            let roots = roots_rescaled(&g, n).unwrap();
            let d = one_sided_hausdorff(&roots, &arcs);
            assert!(d < last * 1.10, "not shrinking: {d} vs {last}");
            last = d;
        }
        assert!(last <= 0.10, "distance at n=100: {last}");
    }

    #[test]
    fn champion_constant_off_the_arcs() {
        use rand::{Rng, SeedableRng};
        let g = fig_poly();
        let arcs = attractor_arcs(&g, 600);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut crossings = 0;
        for _ in 0..1000 {
            let a = c(rng.random_range(-1.4..1.4), rng.random_range(-1.4..1.4));
            let b = a + c(rng.random_range(-0.08..0.08), rng.random_range(-0.08..0.08));
            if a.norm() < 1e-3 || b.norm() < 1e-3 {
                continue;
            }
            let ca = dominance(&g, a).unwrap().champion;
            let cb = dominance(&g, b).unwrap().champion;
            if ca != cb {
                crossings += 1;
                // The segment must pass near the arc set.
                let mid = (a + b) / 2.0;
                let d = one_sided_hausdorff(&[mid], &arcs);
                assert!(
                    d < 0.08,
                    "champion changed across a segment far from any arc: {a} -> {b}, d={d}"
                );
            }
        }
        assert!(crossings > 0, "probe should cross arcs at least once");
    }

    #[test]
    fn csv_shapes() {
        let g = GeneratingFunction::polynomial(vec![c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let arcs = attractor_arcs(&g, 16);
        let zeros: Vec<Complex64> = vec![c(1.0, 0.0)];
        let csv = arcs_to_csv(&arcs, &zeros);
        assert!(csv.starts_with("# zero_0 = 1,0\nre,im,kind,param\n"));
        assert!(csv.contains("szego_0"));
        let json = arcs_to_json(&arcs, &zeros);
        assert!(serde_json::from_str::<serde_json::Value>(&json).is_ok());
        let roots = roots_to_csv(&[c(0.5, -0.25)]);
        assert_eq!(roots, "re,im,kind,param\n0.5,-0.25,root,0\n");
    }
}
