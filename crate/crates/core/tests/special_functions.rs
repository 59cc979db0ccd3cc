use fbmc_golay::analysis::{marcum_q1, rician_cdf, rician_pdf};

/// `e^{-z} I_0(z)` by the trapezoid rule on the full circle, which converges
/// geometrically for periodic integrands.
fn i0_scaled_circle(z: f64) -> f64 {
    let n = 128 + (20.0 * z.sqrt()).ceil() as usize;
    let h = 2.0 * std::f64::consts::PI / n as f64;
    (0..n).map(|k| (z * ((k as f64 * h).cos() - 1.0)).exp()).sum::<f64>() / n as f64
}

fn rice_density(x: f64, a: f64) -> f64 {
    x * (-(x - a) * (x - a) / 2.0).exp() * i0_scaled_circle(a * x)
}

/// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
fn gk15(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    const XK: [f64; 8] = [
        0.991_455_371_120_812_6,
        0.949_107_912_342_758_5,
        0.864_864_423_359_769_1,
        0.741_531_185_599_394_4,
        0.586_087_235_467_691_1,
        0.405_845_151_377_397_2,
        0.207_784_955_007_898_5,
        0.0,
    ];
    const WK: [f64; 8] = [
        0.022_935_322_010_529_22,
        0.063_092_092_629_978_55,
        0.104_790_010_322_250_2,
        0.140_653_259_715_525_9,
        0.169_004_726_639_267_9,
        0.190_350_578_064_785_4,
        0.204_432_940_075_298_9,
        0.209_482_141_084_727_8,
    ];
    const WG: [f64; 4] = [
        0.129_484_966_168_869_7,
        0.279_705_391_489_276_7,
        0.381_830_050_505_118_9,
        0.417_959_183_673_469_4,
    ];
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut kron = 0.0;
    let mut gauss = 0.0;
    for i in 0..8 {
        let vals = if i == 7 { f(c) } else { f(c - h * XK[i]) + f(c + h * XK[i]) };
        kron += WK[i] * vals;
        if i % 2 == 1 {
            gauss += WG[i / 2] * vals;
        }
    }
    (kron * h, (kron - gauss).abs() * h)
}

fn adaptive(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64, depth: u32) -> f64 {
    let (v, err) = gk15(f, lo, hi);
    if err <= tol || depth == 0 {
        return v;
    }
    let mid = 0.5 * (lo + hi);
    adaptive(f, lo, mid, tol / 2.0, depth - 1) + adaptive(f, mid, hi, tol / 2.0, depth - 1)
}

fn q1_quadrature(a: f64, b: f64) -> f64 {
    let f = |x: f64| rice_density(x, a);
    let top = a.max(b) + 14.0;
    adaptive(&f, b, top, 1e-13, 30)
}

#[test]
fn marcum_matches_quadrature_grid() {
    let mut worst = 0.0f64;
    for i in 0..50 {
        for k in 0..50 {
            let a = 0.2 * i as f64;
            let b = 0.2 * k as f64;
            let err = (marcum_q1(a, b) - q1_quadrature(a, b)).abs();
            assert!(err < 1e-8, "Q1({a}, {b}) off by {err:e}");
            worst = worst.max(err);
        }
    }
    assert!(worst < 1e-8);
}

#[test]
fn marcum_reference_points() {
    assert!((q1_quadrature(1.0, 2.0) - 0.269_012_060_035_913_5).abs() < 1e-12);
    assert!((marcum_q1(1.0, 2.0) - 0.269_012_060_035_913_5).abs() < 1e-12);
    assert!((marcum_q1(5.0, 3.0) - 0.983_383_670_432_756).abs() < 1e-12);
}

#[test]
fn marcum_large_arguments() {
    for (a, b) in [(30.0, 31.0), (60.0, 58.5), (120.0, 121.0)] {
        let err = (marcum_q1(a, b) - q1_quadrature(a, b)).abs();
        assert!(err < 1e-8, "Q1({a}, {b}) off by {err:e}");
    }
}

#[test]
fn marcum_monotone() {
    for a in [0.0, 0.7, 2.5, 8.0] {
        let mut prev = 1.0;
        for k in 0..300 {
            let q = marcum_q1(a, k as f64 * 0.05);
            assert!(q <= prev + 1e-15, "not decreasing in b at a={a}");
            prev = q;
        }
    }
    for b in [0.5, 2.0, 6.0] {
        let mut prev = 0.0;
        for k in 0..300 {
            let q = marcum_q1(k as f64 * 0.05, b);
            assert!(q >= prev - 1e-15, "not increasing in a at b={b}");
            prev = q;
        }
    }
}

#[test]
fn rician_pdf_normalized() {
    for (nu, sigma) in [(0.0, 1.0), (1.0, 0.5), (4.0, 1.3), (10.0, 2.0)] {
        let f = |x: f64| rician_pdf(x, nu, sigma).unwrap();
        let total = adaptive(&f, 0.0, nu + 20.0 * sigma, 1e-12, 30);
        assert!((total - 1.0).abs() < 1e-9, "nu={nu} sigma={sigma}: {total}");
        let x = nu + 0.3 * sigma;
        let cdf = adaptive(&f, 0.0, x, 1e-12, 30);
        assert!((rician_cdf(x, nu, sigma).unwrap() - cdf).abs() < 1e-9);
    }
}
