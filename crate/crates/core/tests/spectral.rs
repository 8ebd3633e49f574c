use std::f64::consts::PI;

use approx::assert_relative_eq;
use aqg_core::lab::FieldFamily;
use aqg_core::spectral::{
    dissipation_symbol, forward_transform, fractional_laplacian, fractional_partial,
    friedrichs_project, inverse_transform, l2_norm_physical, riesz_velocity, sample, sobolev_norm,
    sobolev_norm_sq, Axis, DissipationParams, GridSpec, SobolevIndex, SpectralField,
};
use aqg_core::{Complex64, Error};
use proptest::prelude::*;

fn square(n: usize) -> GridSpec {
    GridSpec::square(n).unwrap()
}

fn from_fn(grid: &GridSpec, f: impl Fn(f64, f64) -> f64) -> SpectralField {
    forward_transform(grid, &sample(grid, f)).unwrap()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn assert_field_close(a: &SpectralField, b: &SpectralField, tol: f64) {
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        assert!((x - y).norm() <= tol, "{x} vs {y}");
    }
}

#[test]
fn constant_field_has_only_a_mean() {
    let g = square(16);
    let f = from_fn(&g, |_, _| 1.0);
    assert_relative_eq!(f.coeff(0, 0).re, 1.0, epsilon = 1e-15);
    let rest: f64 = f.coeffs()[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    assert!(rest < 1e-15);
}

#[test]
fn cosine_has_two_half_amplitudes() {
    let g = square(16);
    let f = from_fn(&g, |x, _| x.cos());
    for (k1, k2) in [(1, 0), (-1, 0)] {
        assert!((f.coeff(k1, k2) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
    }
    let total: f64 = f.coeffs().iter().map(|c| c.norm_sqr()).sum();
    assert_relative_eq!(total, 0.5, epsilon = 1e-15);
}

#[test]
fn inverse_of_half_amplitudes_is_cosine() {
    let g = square(16);
    let mut f = SpectralField::zeros(g);
    f.set_pair(1, 0, Complex64::new(0.5, 0.0)).unwrap();
    let values = inverse_transform(&f).unwrap();
    assert!(max_diff(&values, &sample(&g, |x, _| x.cos())) < 1e-15);
    let zero = inverse_transform(&SpectralField::zeros(g)).unwrap();
    assert!(zero.iter().all(|&v| v == 0.0));
}

#[test]
fn inverse_rejects_non_hermitian_coefficients() {
    let g = square(8);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); g.len()];
    coeffs[g.index_of(1, 0).unwrap()] = Complex64::new(1.0, 0.0);
    let f = SpectralField::from_coeffs(g, coeffs).unwrap();
    assert!(matches!(
        inverse_transform(&f),
        Err(Error::InvalidField { .. })
    ));
}

#[test]
fn rectangular_box_wavenumbers() {
    let g = GridSpec::new(16, 8, 4.0 * PI, PI).unwrap();
    // cos(x₁/2) has k1 = 1, ξ₁ = 1/2; sin(2x₂) has k2 = 1, ξ₂ = 2.
    let f = from_fn(&g, |x, y| (0.5 * x).cos() + (2.0 * y).sin());
    let d1 = fractional_partial(&f, Axis::X1, 2.0).unwrap();
    let expected = from_fn(&g, |x, _| 0.25 * (0.5 * x).cos());
    assert_field_close(&d1, &expected, 1e-14);
    assert_relative_eq!(g.area(), 4.0 * PI * PI, epsilon = 1e-14);
}

#[test]
fn fractional_partial_examples() {
    let g = square(16);
    let c1 = from_fn(&g, |x, _| x.cos());
    for alpha in [0.1, 0.37, 0.5, 0.93] {
        let out = fractional_partial(&c1, Axis::X1, 2.0 * alpha).unwrap();
        assert_field_close(&out, &c1, 1e-15);
    }
    let c2 = from_fn(&g, |x, _| (2.0 * x).cos());
    let out = fractional_partial(&c2, Axis::X1, 1.0).unwrap();
    assert_field_close(&out, &c2.scaled(2.0), 1e-14);
    for sigma in [0.3, 1.0] {
        assert!(fractional_partial(&c1, Axis::X2, sigma).unwrap().is_zero());
    }
    assert_eq!(fractional_partial(&c1, Axis::X2, 0.0).unwrap(), c1);
    assert!(matches!(
        fractional_partial(&c1, Axis::X1, -0.5),
        Err(Error::Domain(_))
    ));
}

#[test]
fn fractional_laplacian_examples() {
    let g = square(16);
    let c1 = from_fn(&g, |x, _| x.cos());
    assert_field_close(&fractional_laplacian(&c1, 1.0).unwrap(), &c1, 1e-15);
    let mut with_mean = c1.clone();
    with_mean.set_pair(0, 0, Complex64::new(3.0, 0.0)).unwrap();
    assert_eq!(fractional_laplacian(&with_mean, 0.0).unwrap(), with_mean);
    assert_eq!(fractional_laplacian(&with_mean, 0.5).unwrap().mean(), 0.0);
    assert!(fractional_laplacian(&c1, f64::NAN).is_err());
}

/// `|∇|²f` against the five-point Laplacian, which is second-order accurate.
#[test]
fn laplacian_matches_finite_differences() {
    let f = |x: f64, y: f64| (0.5 * x.sin()).exp() * (y.cos() + 0.3 * (2.0 * y).sin());
    let mut errors = Vec::new();
    for n in [32usize, 64, 128] {
        let g = square(n);
        let h = 2.0 * PI / n as f64;
        let spectral =
            inverse_transform(&fractional_laplacian(&from_fn(&g, f), 2.0).unwrap()).unwrap();
        let mut err: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let (x, y) = g.point(i, j);
                let lap = (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4.0 * f(x, y))
                    / (h * h);
                err = err.max((spectral[g.flat(i, j)] + lap).abs());
            }
        }
        errors.push(err);
    }
    for w in errors.windows(2) {
        let ratio = w[0] / w[1];
        assert!(
            (3.6..4.4).contains(&ratio),
            "error ratio {ratio}, errors {errors:?}"
        );
    }
}

#[test]
fn riesz_velocity_examples() {
    let g = square(16);
    let u = riesz_velocity(&from_fn(&g, |x, _| x.cos()));
    assert!(u.u1.max_abs() < 1e-16);
    let u2 = inverse_transform(&u.u2).unwrap();
    assert!(max_diff(&u2, &sample(&g, |x, _| -x.sin())) < 1e-15);

    let u = riesz_velocity(&from_fn(&g, |_, y| y.cos()));
    assert!(u.u2.max_abs() < 1e-16);
    let u1 = inverse_transform(&u.u1).unwrap();
    assert!(max_diff(&u1, &sample(&g, |_, y| y.sin())) < 1e-15);

    let u = riesz_velocity(&SpectralField::zeros(g));
    assert!(u.u1.is_zero() && u.u2.is_zero());
}

#[test]
fn friedrichs_projection_examples() {
    let g = square(16);
    let f = FieldFamily::with_band(7, 0.0).sample(&g, 11).unwrap();
    let big = friedrichs_project(&f, g.max_wavenumber() + 1.0).unwrap();
    assert_eq!(big, f);
    let mut with_mean = f.clone();
    with_mean.set_pair(0, 0, Complex64::new(0.25, 0.0)).unwrap();
    let only_mean = friedrichs_project(&with_mean, 1.0).unwrap();
    assert_eq!(only_mean.coeff(0, 0).re, 0.25);
    assert_eq!(
        only_mean.coeffs()[1..]
            .iter()
            .filter(|c| c.norm() > 0.0)
            .count(),
        0
    );
    assert!(matches!(friedrichs_project(&f, 0.0), Err(Error::Domain(_))));
}

#[test]
fn sobolev_norm_examples() {
    let g = square(16);
    let c1 = from_fn(&g, |x, _| x.cos());
    let l2 = sobolev_norm_sq(&c1, SobolevIndex::L2);
    assert_relative_eq!(l2, 2.0 * PI * PI, max_relative = 1e-14);
    for s in [0.5, 1.4, 3.0] {
        let hs = sobolev_norm_sq(&c1, SobolevIndex::inhomogeneous(s));
        assert_relative_eq!(hs, 2f64.powf(s) * l2, max_relative = 1e-14);
        assert_relative_eq!(
            sobolev_norm_sq(&c1, SobolevIndex::homogeneous(s)),
            l2,
            max_relative = 1e-14
        );
    }
    let z = SpectralField::zeros(g);
    for idx in [
        SobolevIndex::L2,
        SobolevIndex::homogeneous(2.0),
        SobolevIndex::inhomogeneous(-1.0),
    ] {
        assert_eq!(sobolev_norm(&z, idx), 0.0);
    }
}

#[test]
fn dissipation_symbol_examples() {
    let unit = DissipationParams::unit(0.5, 0.5).unwrap();
    assert_relative_eq!(dissipation_symbol((1.0, 1.0), &unit), 2.0, epsilon = 1e-15);
    assert_eq!(dissipation_symbol((0.0, 0.0), &unit), 0.0);
    let p = DissipationParams::new(0.5, 0.5, 3.0, 1.0).unwrap();
    assert_relative_eq!(dissipation_symbol((2.0, 0.0), &p), 6.0, epsilon = 1e-15);
    assert!(DissipationParams::new(1.0, 0.5, 1.0, 1.0).is_err());
    assert!(DissipationParams::new(0.5, 0.5, 0.0, 1.0).is_err());
}

fn physical_strategy(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, n * n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transform_round_trip(values in physical_strategy(16)) {
        let g = square(16);
        let back = inverse_transform(&forward_transform(&g, &values).unwrap()).unwrap();
        let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assert!(max_diff(&values, &back) <= 1e-13 * scale.max(1e-300));
    }

    #[test]
    fn parseval(values in physical_strategy(16)) {
        let g = square(16);
        let f = forward_transform(&g, &values).unwrap();
        let physical = l2_norm_physical(&g, &values);
        let spectral = sobolev_norm(&f, SobolevIndex::L2);
        prop_assert!((physical - spectral).abs() <= 1e-12 * physical);
    }

    #[test]
    fn riesz_isometry_and_divergence(seed in any::<u64>()) {
        let g = square(16);
        let theta = FieldFamily::with_band(7, 0.0).sample(&g, seed).unwrap();
        let u = riesz_velocity(&theta);
        let lhs = sobolev_norm_sq(&u.u1, SobolevIndex::L2) + sobolev_norm_sq(&u.u2, SobolevIndex::L2);
        let rhs = sobolev_norm_sq(&theta, SobolevIndex::L2);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        prop_assert!(u.divergence_defect() < 1e-12 * theta.max_abs());
    }

    #[test]
    fn multiplier_composition(seed in any::<u64>(), a in 0.0f64..2.0, b in 0.0f64..2.0) {
        let g = square(16);
        let f = FieldFamily::with_band(7, 0.0).sample(&g, seed).unwrap();
        for axis in [Axis::X1, Axis::X2] {
            let twice = fractional_partial(&fractional_partial(&f, axis, a).unwrap(), axis, b).unwrap();
            let once = fractional_partial(&f, axis, a + b).unwrap();
            for (x, y) in twice.coeffs().iter().zip(once.coeffs()) {
                prop_assert!((x - y).norm() <= 1e-13 * y.norm().max(1e-300));
            }
        }
    }

    #[test]
    fn projection_is_orthogonal_and_idempotent(seed in any::<u64>(), radius in 0.5f64..12.0) {
        let g = square(16);
        let f = FieldFamily::with_band(7, 0.5).sample(&g, seed).unwrap();
        let low = friedrichs_project(&f, radius).unwrap();
        prop_assert_eq!(&friedrichs_project(&low, radius).unwrap(), &low);
        let high = &f - &low;
        let total = sobolev_norm_sq(&f, SobolevIndex::L2);
        let parts = sobolev_norm_sq(&low, SobolevIndex::L2) + sobolev_norm_sq(&high, SobolevIndex::L2);
        prop_assert!((total - parts).abs() <= 1e-13 * total);
    }
}
