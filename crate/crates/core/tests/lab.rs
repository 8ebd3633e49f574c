use aqg_core::lab::{
    check_anisotropic_bound, check_commutator, check_embedding, check_high_frequency_bound,
    check_interpolation, check_product_estimate, check_riesz_bound, check_symbol_bound,
    lattice_sweep, shells_field, single_shell_field, symbol_constant, FieldFamily, LemmaId,
    RatioReport, Verdict,
};
use aqg_core::spectral::{DissipationParams, GridSpec, SpectralField};
use aqg_core::{Complex64, Error};

fn square(n: usize) -> GridSpec {
    GridSpec::square(n).unwrap()
}

fn family(grid: &GridSpec, kmax: u64, count: u64) -> Vec<SpectralField> {
    (0..count)
        .map(|seed| {
            FieldFamily::with_band(kmax, 1.0)
                .sample(grid, seed)
                .unwrap()
        })
        .collect()
}

fn pairs(fields: &[SpectralField]) -> Vec<(&SpectralField, &SpectralField)> {
    fields.chunks(2).map(|c| (&c[0], &c[1])).collect()
}

#[test]
fn symbol_bound_sweeps() {
    let g = square(8);
    for (a, b) in [(0.5, 0.5), (0.3, 0.7)] {
        let p = DissipationParams::unit(a, b).unwrap();
        let r = check_symbol_bound(&p, lattice_sweep(&g, 64)).unwrap();
        assert_eq!(r.verdict, Verdict::Bounded);
        assert!(r.max_ratio <= symbol_constant(a, b));
        assert_eq!(r.lemma, LemmaId::SymbolBound);
    }
    assert!((symbol_constant(0.5, 0.5) - 2.0).abs() < 1e-15);
    // ξ = (1, 0): |ξ| = 1 against A + A = 2.
    let p = DissipationParams::unit(0.5, 0.5).unwrap();
    let r = check_symbol_bound(&p, [(1.0, 0.0)]).unwrap();
    assert!((r.max_ratio - 0.5).abs() < 1e-15);
}

#[test]
fn anisotropic_bound_on_random_fields() {
    let g = square(32);
    let p = DissipationParams::unit(0.3, 0.7).unwrap();
    let fields = family(&g, 10, 100);
    let r = check_anisotropic_bound(&fields, &p, 1.4, 0.0).unwrap();
    assert_eq!(r.samples, 100);
    assert!(!r.is_violation());
    assert!(r.max_ratio <= 1.0 + 1e-12);
}

#[test]
fn interpolation_tight_on_shells_strict_otherwise() {
    let g = square(32);
    let shells: Vec<_> = [1, 2, 5, 25, 50]
        .iter()
        .map(|&r2| single_shell_field(&g, r2 as u64, r2).unwrap())
        .collect();
    let r = check_interpolation(&shells, 0.3, 2.1, 0.4).unwrap();
    assert_eq!(r.equality, Some(true));
    assert!((r.max_ratio - 1.0).abs() <= 1e-13 && (r.min_ratio - 1.0).abs() <= 1e-13);

    let two: Vec<_> = (0..20)
        .map(|seed| shells_field(&g, seed, &[1, 25]).unwrap())
        .collect();
    let r = check_interpolation(&two, 0.0, 2.0, 0.5).unwrap();
    assert!(r.max_ratio < 1.0);
    assert_eq!(r.equality, Some(false));
}

#[test]
fn commutator_ratio_is_stable_under_refinement() {
    let (s, alpha) = (1.4, 0.3);
    let reports: Vec<RatioReport> = [32usize, 64]
        .iter()
        .map(|&n| {
            let fields = family(&square(n), 10, 40);
            check_commutator(pairs(&fields), s, alpha).unwrap()
        })
        .collect();
    let (coarse, fine) = (&reports[0], &reports[1]);
    assert!(coarse.max_ratio.is_finite() && coarse.max_ratio > 0.0);
    assert_eq!(coarse.non_finite, 0);
    assert!((coarse.max_ratio - fine.max_ratio).abs() <= 1e-10 * coarse.max_ratio);
    assert_eq!(fine.parameters.n1, Some(64));
}

#[test]
fn commutator_rejects_mean_in_g() {
    let g = square(32);
    let f = FieldFamily::with_band(5, 1.0).sample(&g, 1).unwrap();
    let mut c = SpectralField::zeros(g);
    c.set_pair(0, 0, Complex64::new(1.0, 0.0)).unwrap();
    assert!(matches!(
        check_commutator([(&f, &c)], 1.4, 0.3),
        Err(Error::Precondition(_))
    ));
    let h = FieldFamily::with_band(5, 1.0)
        .sample(&square(16), 1)
        .unwrap();
    assert!(matches!(
        check_commutator([(&f, &h)], 1.4, 0.3),
        Err(Error::GridMismatch)
    ));
}

#[test]
fn product_estimate_is_bounded_and_refinement_stable() {
    let (s1, s2) = (0.3, 0.7);
    let ratios: Vec<f64> = [32usize, 64]
        .iter()
        .map(|&n| {
            let fields = family(&square(n), 10, 40);
            check_product_estimate(pairs(&fields), s1, s2)
                .unwrap()
                .max_ratio
        })
        .collect();
    assert!(ratios[0].is_finite() && ratios[0] > 0.0);
    assert!((ratios[0] - ratios[1]).abs() <= 1e-10 * ratios[0]);
    let f = FieldFamily::with_band(5, 1.0)
        .sample(&square(32), 0)
        .unwrap();
    for (a, b) in [(1.0, 0.5), (0.5, 1.2), (-0.6, 0.5)] {
        assert!(matches!(
            check_product_estimate([(&f, &f)], a, b),
            Err(Error::Precondition(_))
        ));
    }
}

#[test]
fn embedding_is_bounded_and_stable() {
    let mut maxima = Vec::new();
    for n in [32usize, 64] {
        let fields = family(&square(n), 10, 30);
        let r = check_embedding(&fields, 0.5).unwrap();
        assert_eq!(r.parameters.p, Some(4.0));
        maxima.push(r.max_ratio);
    }
    // p = 4 is an even power, so the refined quadrature is exact at both sizes.
    assert!((maxima[0] - maxima[1]).abs() <= 1e-10 * maxima[0]);
    let r = check_embedding(&family(&square(32), 10, 10), 0.0).unwrap();
    assert!((r.max_ratio - 1.0).abs() < 1e-12 && (r.min_ratio - 1.0).abs() < 1e-12);
}

#[test]
fn riesz_bound_p2_is_isometry_and_p4_bounded() {
    let fields = family(&square(32), 10, 30);
    let r = check_riesz_bound(&fields, 2).unwrap();
    assert!((r.max_ratio - 1.0).abs() < 1e-12 && (r.min_ratio - 1.0).abs() < 1e-12);
    let r4 = check_riesz_bound(&fields, 4).unwrap();
    assert!(r4.max_ratio.is_finite() && r4.max_ratio < 10.0);
    let fine = family(&square(64), 10, 30);
    let r4_fine = check_riesz_bound(&fine, 4).unwrap();
    assert!((r4.max_ratio - r4_fine.max_ratio).abs() <= 1e-10 * r4.max_ratio);
}

#[test]
fn high_frequency_bound_over_many_deltas() {
    let g = square(32);
    let p = DissipationParams::unit(0.3, 0.7).unwrap();
    let deltas: Vec<f64> = (0..12).map(|i| 0.1 * 2f64.powi(i)).collect();
    let r = check_high_frequency_bound(&family(&g, 10, 20), &p, &deltas).unwrap();
    assert_eq!(r.samples, 240);
    assert!(!r.is_violation());
}

#[test]
fn reports_are_deterministic() {
    let run = || {
        let fields = family(&square(32), 10, 10);
        (
            check_commutator(pairs(&fields), 1.4, 0.3).unwrap(),
            check_embedding(&fields, 0.5).unwrap(),
        )
    };
    assert_eq!(run(), run());
}
