#[test]
fn probe_n150() {
    use appell_core::*;
    use num_complex::Complex64;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let g = GeneratingFunction::polynomial(vec![c(-2.0,0.0), c(2.0,0.0), c(-1.0,0.0), c(1.0,0.0)]).unwrap();
    let t0 = std::time::Instant::now();
    for n in [50u32, 100, 150] {
        match appell_core::attractor::roots_rescaled(&g, n) {
            Ok(r) => println!("n={n}: ok {} roots ({:?})", r.len(), t0.elapsed()),
            Err(e) => println!("n={n}: {e}"),
        }
    }
    let arcs = appell_core::attractor::attractor_arcs(&g, 800);
    for n in [50u32, 100, 150] {
        let roots = appell_core::attractor::roots_rescaled(&g, n).unwrap();
        let d = appell_core::attractor::one_sided_hausdorff(&roots, &arcs);
        println!("hausdorff n={n}: {d:.4}");
    }
}
