#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use frv_varma::montecarlo::{eigen_decomposition, Histogram, SymMatrix};
use frv_varma::polyroots::{find_roots, Polynomial};
use frv_varma::report::{read_density_csv, write_density_csv};
use frv_varma::solver::{curve_moments, density_curve, CurveOptions};
use frv_varma::transforms::m_transform_inverse_law;
use frv_varma::{autocovariance, Complex64, MTransform, ProcessSpec};
use proptest::prelude::*;

fn upper_point() -> impl Strategy<Value = Complex64> {
    (-3.0..5.0f64, 0.02..3.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn varma11() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.5..1.5f64, 0.05..0.4f64, prop::bool::ANY, 0.05..0.7f64, prop::bool::ANY)
        .prop_map(|(a0, a1, s1, b1, s2)| (a0, if s1 { a1 } else { -a1 } * a0, if s2 { b1 } else { -b1 }))
}

fn closed_forms((a0, a1, b1): (f64, f64, f64)) -> [MTransform; 3] {
    [MTransform::vma1(a0, a1), MTransform::var1(a0, b1), MTransform::varma11(a0, a1, b1)]
}

proptest! {
    #[test]
    fn symbol_is_positive_and_matches_oracle((a0, a1, b1) in varma11(), p in -3.2..3.2f64) {
        let spec = ProcessSpec::varma(&[a0, a1], &[b1]).unwrap();
        let value = spec.fourier_symbol(p).unwrap();
        prop_assert!(value > 0.0);
        let oracle = symbol(&[a0, a1], &[b1], p);
        prop_assert!((value - oracle).abs() < 1e-10 * oracle.max(1.0));
    }

    #[test]
    fn polynomial_roots_round_trip(raw in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 1..7)) {
        let roots: Vec<Complex64> = raw.iter().map(|(a, b)| Complex64::new(*a, *b)).collect();
        let separated = roots.iter().enumerate().all(|(i, x)| roots[..i].iter().all(|y| (x - y).norm() > 0.1));
        prop_assume!(separated);
        let found = find_roots(&Polynomial::from_roots(Complex64::new(1.0, 0.0), &roots)).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for r in &roots {
            let nearest = found.iter().map(|f| (f - r).norm()).fold(f64::MAX, f64::min);
            prop_assert!(nearest < 1e-7, "{} {}", r, nearest);
        }
    }

    #[test]
    fn transforms_are_conjugate_symmetric(params in varma11(), z in upper_point()) {
        for h in closed_forms(params) {
            let up = h.eval(z).unwrap();
            let down = h.eval(z.conj()).unwrap();
            prop_assert!((up.conj() - down).norm() < 1e-10 * up.norm().max(1.0));
        }
    }

    #[test]
    fn green_maps_upper_half_plane_down(params in varma11(), z in upper_point()) {
        for h in closed_forms(params) {
            prop_assert!(h.green(z).unwrap().im < 0.0);
        }
    }

    #[test]
    fn closed_forms_match_quadrature(params in varma11(), z in upper_point()) {
        let (a0, a1, b1) = params;
        let [vma, var, varma] = closed_forms(params);
        let cases = [(vma, vec![a0, a1], vec![]), (var, vec![a0], vec![b1]), (varma, vec![a0, a1], vec![b1])];
        for (h, a, b) in cases {
            let exact = h.eval(z).unwrap();
            let quad = quadrature_m(&a, &b, z, 8192);
            prop_assert!((exact - quad).norm() < 1e-7 * exact.norm().max(1.0), "{} vs {}", exact, quad);
        }
    }

    #[test]
    fn inverse_law_is_an_involution(params in varma11(), z in upper_point()) {
        for h in closed_forms(params) {
            let direct = h.clone().eval(z).unwrap();
            let twice = m_transform_inverse_law(m_transform_inverse_law(h)).eval(z).unwrap();
            prop_assert!((direct - twice).norm() < 1e-9 * direct.norm().max(1.0));
        }
    }

    #[test]
    fn eigen_decomposition_reconstructs(n in 1usize..10, seed in any::<u64>()) {
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let v = next();
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        let a = SymMatrix::from_rows(&rows).unwrap();
        let e = eigen_decomposition(&a).unwrap();
        prop_assert!(e.reconstruction_error(&a) < 1e-12 * a.frobenius().max(1.0));
        let trace: f64 = (0..n).map(|i| rows[i][i]).sum();
        prop_assert!((e.values.iter().sum::<f64>() - trace).abs() < 1e-12 * n as f64);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn histogram_area(values in prop::collection::vec(-5.0..5.0f64, 1..300), bins in 1usize..50) {
        let inside = Histogram::from_values(&values, bins, -5.0, 5.0).unwrap();
        prop_assert!((inside.area() - 1.0).abs() < 1e-12);
        let cropped = Histogram::from_values(&values, bins, -1.0, 1.0).unwrap();
        let kept = values.iter().filter(|v| v.abs() <= 1.0).count() as f64 / values.len() as f64;
        prop_assert!((cropped.area() - kept).abs() < 1e-12);
    }

    #[test]
    fn density_csv_round_trip(rows in prop::collection::vec((any::<f64>(), 0.0..1e6f64), 0..50)) {
        prop_assume!(rows.iter().all(|(l, _)| l.is_finite()));
        let (l, p): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
        let mut buf = Vec::new();
        write_density_csv(&mut buf, &l, &p).unwrap();
        let (l2, p2) = read_density_csv(&buf[..]).unwrap();
        prop_assert_eq!(l, l2);
        prop_assert_eq!(p, p2);
    }

    #[test]
    fn autocovariance_matches_oracles(params in varma11(), lag in 0i64..12) {
        let (a0, a1, b1) = params;
        let var = autocovariance(&ProcessSpec::var(a0, &[b1]).unwrap()).unwrap();
        prop_assert!((var.at(lag) - var1_autocov(a0, b1, lag)).abs() < 1e-12 * var1_autocov(a0, b1, 0));
        let varma = autocovariance(&ProcessSpec::varma(&[a0, a1], &[b1]).unwrap()).unwrap();
        let expected = varma11_autocov(a0, a1, b1, lag);
        prop_assert!((varma.at(lag) - expected).abs() < 1e-10 * varma11_autocov(a0, a1, b1, 0));
        let vma = autocovariance(&ProcessSpec::vma(&[a0, a1, b1]).unwrap()).unwrap();
        prop_assert!((vma.at(lag) - inverse_fourier(&[a0, a1, b1], &[], lag, 64)).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vma1_curves_are_densities(a1 in -0.6..0.6f64, r in 0.05..0.9f64) {
        let curve = density_curve(&ProcessSpec::vma(&[1.0, a1]).unwrap(), r, &CurveOptions::default()).unwrap();
        prop_assert!(curve.rho.iter().all(|p| *p >= 0.0 && p.is_finite()));
        let (l, p) = curve.samples();
        prop_assert!((trapezoid(&l, &p) - 1.0).abs() < 1e-3);
        prop_assert!((curve_moments(&curve, 0).unwrap() - 1.0).abs() < 1e-3);
        prop_assert!((curve.first_moment - (1.0 + a1 * a1)).abs() < 2e-3);
    }
}
