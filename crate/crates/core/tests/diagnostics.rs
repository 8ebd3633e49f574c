use aqg_core::diagnostics::{
    classify_region, critical_exponent, critical_exponent_of, decay_report, energy_ledger,
    frequency_split, high_frequency_bound, local_theory_applies, regularity_threshold,
    DecayCriteria, LedgerAccumulator, Region,
};
use aqg_core::dynamics::{integrate, InitialData, Stepper, StepperConfig, TrajectoryState};
use aqg_core::lab::FieldFamily;
use aqg_core::spectral::{
    sobolev_norm_sq, DissipationParams, GridSpec, SobolevIndex, SpectralField,
};
use aqg_core::Error;
use proptest::prelude::*;

fn params(alpha: f64, beta: f64) -> DissipationParams {
    DissipationParams::unit(alpha, beta).unwrap()
}

#[test]
fn critical_exponent_examples() {
    assert!((critical_exponent(&params(0.3, 0.7)) - 1.4).abs() < 1e-15);
    assert_eq!(critical_exponent(&params(0.5, 0.5)), 1.0);
    for gamma in [0.1, 0.25, 0.6, 0.9] {
        assert_eq!(critical_exponent_of(gamma, gamma), 2.0 - 2.0 * gamma);
    }
}

#[test]
fn classification_examples() {
    assert!((regularity_threshold(0.3) - 0.625).abs() < 1e-15);
    assert_eq!(classify_region(0.3, 0.7), Ok(Region::GlobalRegularity));
    assert!((regularity_threshold(0.75) - 0.25 / 1.5).abs() < 1e-15);
    assert_eq!(classify_region(0.75, 0.2), Ok(Region::GlobalRegularity));
    assert_eq!(classify_region(0.25, 0.25), Ok(Region::OutsideRegion));
    assert_eq!(classify_region(0.6, 0.6), Ok(Region::GlobalRegularity));
    assert!(local_theory_applies(0.3, 0.7));
    assert!(local_theory_applies(0.25, 0.25));
    assert!(!local_theory_applies(0.6, 0.6));
    for (a, b) in [(0.0, 0.5), (1.0, 0.5), (0.5, -0.1), (0.5, f64::NAN)] {
        assert!(matches!(classify_region(a, b), Err(Error::Domain(_))));
    }
}

proptest! {
    #[test]
    fn classification_is_monotone_in_beta(alpha in 0.001f64..0.999, b1 in 0.001f64..0.999, b2 in 0.001f64..0.999) {
        let (lo, hi) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        if classify_region(alpha, lo).unwrap() == Region::GlobalRegularity {
            prop_assert_eq!(classify_region(alpha, hi).unwrap(), Region::GlobalRegularity);
        }
    }

    #[test]
    fn critical_exponent_is_symmetric_and_in_range(alpha in 0.001f64..0.999, beta in 0.001f64..0.999) {
        let s = critical_exponent_of(alpha, beta);
        prop_assert_eq!(s, critical_exponent_of(beta, alpha));
        prop_assert!(s > 0.0 && s < 2.0);
    }

    #[test]
    fn frequency_split_is_an_orthogonal_partition(seed in any::<u64>(), delta in 0.05f64..20.0, s in -1.0f64..3.0) {
        let g = GridSpec::square(32).unwrap();
        let p = params(0.3, 0.7);
        let theta = FieldFamily::third_band(&g, 0.5).sample(&g, seed).unwrap();
        let split = frequency_split(&theta, &p, delta).unwrap();
        prop_assert_eq!(&(&split.low + &split.high), &theta);
        for (idx, (l, h)) in split.low.coeffs().iter().zip(split.high.coeffs()).enumerate() {
            let (a, b) = g.xi(idx);
            let sym = p.anisotropic_symbol(a, b);
            if l.norm() > 0.0 { prop_assert!(sym <= delta); }
            if h.norm() > 0.0 { prop_assert!(sym > delta); }
        }
        for idx in [SobolevIndex::L2, SobolevIndex::homogeneous(s)] {
            let total = sobolev_norm_sq(&theta, idx);
            let parts = sobolev_norm_sq(&split.low, idx) + sobolev_norm_sq(&split.high, idx);
            prop_assert!((total - parts).abs() <= 1e-13 * total);
        }
        let b = high_frequency_bound(&theta, &p, delta).unwrap();
        prop_assert!(b.high_energy <= b.bound * (1.0 + 1e-12));
    }
}

#[test]
fn frequency_split_extremes() {
    let g = GridSpec::square(16).unwrap();
    let p = params(0.3, 0.7);
    let mut theta = FieldFamily::third_band(&g, 0.0).sample(&g, 1).unwrap();
    theta
        .set_pair(0, 0, aqg_core::Complex64::new(0.5, 0.0))
        .unwrap();
    let max_sym = (0..g.len())
        .map(|i| {
            let (a, b) = g.xi(i);
            p.anisotropic_symbol(a, b)
        })
        .fold(0.0, f64::max);
    assert!(frequency_split(&theta, &p, max_sym).unwrap().high.is_zero());
    let low = frequency_split(&theta, &p, 0.5).unwrap().low;
    assert_eq!(low.coeff(0, 0).re, 0.5);
    assert_eq!(
        low.coeffs()[1..].iter().filter(|c| c.norm() > 0.0).count(),
        0
    );
    assert!(frequency_split(&theta, &p, 0.0).is_err());
}

fn linear_run(dt: f64, t_end: f64, every: usize) -> Vec<TrajectoryState> {
    let g = GridSpec::square(16).unwrap();
    let p = params(0.5, 0.5);
    let theta = InitialData::PlaneWave {
        k1: 1,
        k2: 1,
        amplitude: 1.0,
    }
    .build(&g, 0)
    .unwrap();
    let mut stepper = Stepper::new(g, p, StepperConfig::linear(dt), Default::default()).unwrap();
    let mut state = TrajectoryState::new(theta);
    let mut out = Vec::new();
    integrate(
        &mut stepper,
        &mut state,
        (t_end / dt).round() as usize,
        every,
        None,
        |s| {
            out.push(s.clone());
            Ok(())
        },
    )
    .unwrap();
    out
}

/// Single mode `k = (1, 1)`, `α = β = 1/2`: `E(t) = E₀e^{−4t}` and both
/// dissipation integrands equal `E(t)`.
#[test]
fn linear_ledger_and_balance_match_closed_form() {
    let s = 1.0;
    let p = params(0.5, 0.5);
    for (dt, tol) in [(0.01, 1e-3), (0.005, 2.6e-4)] {
        let samples = linear_run(dt, 2.0, 1);
        let series = energy_ledger(&samples, &p, s).unwrap();
        let e0 = series.initial_energy;
        let mut worst: f64 = 0.0;
        for r in &series.records {
            let decay = (-4.0 * r.t).exp();
            let expected = e0 * (1.0 + decay) / 2.0;
            assert!((r.ledger - expected).abs() <= tol * e0);
            worst = worst.max((r.balance - e0).abs() / e0);
        }
        // Trapezoid error of 4∫E: 4·(dt²/12)·|E'(0)| = (4/3)·dt²·E₀.
        assert!(worst <= 1.4 * dt * dt, "dt = {dt}: balance drift {worst}");
        assert!(!series.violated);
    }
}

#[test]
fn ledger_cumulatives_are_nondecreasing() {
    let samples = linear_run(0.01, 1.0, 5);
    let series = energy_ledger(&samples, &params(0.5, 0.5), 1.4).unwrap();
    for w in series.records.windows(2) {
        assert!(w[1].cum_d1 >= w[0].cum_d1 && w[1].cum_d2 >= w[0].cum_d2);
        assert!(w[1].ledger <= w[0].ledger);
    }
}

#[test]
fn accumulator_flags_growth() {
    let g = GridSpec::square(8).unwrap();
    let p = params(0.5, 0.5);
    let mut acc = LedgerAccumulator::new(&g, &p, 1.0, 1e-6);
    let mut theta = SpectralField::zeros(g);
    theta
        .set_pair(1, 0, aqg_core::Complex64::new(1.0, 0.0))
        .unwrap();
    acc.push(&TrajectoryState {
        t: 0.0,
        theta: theta.clone(),
    })
    .unwrap();
    acc.push(&TrajectoryState {
        t: 0.1,
        theta: theta.scaled(1.1),
    })
    .unwrap();
    assert!(acc.violated());
    assert!(acc.max_relative_excess() > 0.2);
}

#[test]
fn linear_decay_rate_is_the_symbol() {
    let samples = linear_run(0.01, 3.0, 10);
    let series = energy_ledger(&samples, &params(0.5, 0.5), 1.0).unwrap();
    let rep = decay_report(&series.records, &DecayCriteria::default()).unwrap();
    let rate = rep.l2_rate.unwrap();
    assert!((rate - 2.0).abs() < 0.02 * 0.5, "rate {rate}");
    assert!(rep.monotone && rep.passed);
    assert!((rep.terminal_fraction - (-6.0f64).exp()).abs() < 1e-12);
    assert_eq!(rep.middle.t, 1.5);
}
