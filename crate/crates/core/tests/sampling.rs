use betamoments::mc::{factorization_test, mh_sample, ChainConfig};
use betamoments::moments::{backend_sequence, Backend};
use betamoments::rational::rat;
use betamoments::EnsembleSpec;

fn jacobi(alpha: i64, gamma: i64, big_n: u64) -> EnsembleSpec {
    EnsembleSpec::JacobiGeneral {
        alpha: rat(alpha, 1),
        gamma: rat(gamma, 1),
        beta: rat(2, 1),
        big_n,
    }
}

/// Largest relative deviation from the asymptotic moments, after checking
/// each one lies within max(5%, 4 stderr).
fn check_asymptotics(spec: &EnsembleSpec, sweeps: usize) -> f64 {
    let cfg = ChainConfig::for_spec(spec, sweeps, sweeps / 10, 2, 2024).unwrap();
    let stats = mh_sample(spec, &cfg, 4).unwrap();
    assert!(
        stats.diagnostics.warnings.is_empty(),
        "{:?}",
        stats.diagnostics.warnings
    );
    assert!(
        stats.diagnostics.split_max_z < 4.0,
        "{spec:?}: {:?}",
        stats.diagnostics
    );
    let exact = backend_sequence(spec, 4, Backend::Recurrence).unwrap();
    let mut worst = 0.0f64;
    for (e, x) in stats.estimates.iter().zip(&exact) {
        let x = x.to_f64();
        let dev = (e.mean - x).abs();
        assert!(
            dev <= (0.05 * x).max(4.0 * e.stderr),
            "{spec:?} n = {}: {} vs {x}",
            e.n,
            e.mean
        );
        worst = worst.max(dev / x);
    }
    worst
}

#[test]
fn every_ensemble_matches_asymptotics_at_forty() {
    let specs = [
        jacobi(1, 1, 40),
        jacobi(2, 3, 40),
        EnsembleSpec::JacobiGamma1 {
            alpha: rat(1, 1),
            beta: rat(2, 1),
            big_n: 40,
        },
        EnsembleSpec::Laguerre {
            alpha: rat(1, 1),
            epsilon: rat(1, 1),
            beta: rat(2, 1),
            big_n: 40,
        },
        EnsembleSpec::DelayTimes {
            tau_d: rat(1, 1),
            beta: rat(2, 1),
            big_n: 40,
        },
    ];
    for spec in &specs {
        check_asymptotics(spec, 40_000);
    }
}

#[test]
fn jacobi_deviation_shrinks_with_n() {
    let at_20 = check_asymptotics(&jacobi(1, 1, 20), 40_000);
    let at_40 = check_asymptotics(&jacobi(1, 1, 40), 40_000);
    assert!(at_40 < at_20, "{at_40} >= {at_20}");
}

#[test]
fn symmetric_jacobi_mean_is_exactly_half() {
    for (a, n) in [(1, 40), (3, 12)] {
        let spec = jacobi(a, a, n);
        let cfg = ChainConfig::for_spec(&spec, 30_000, 3_000, 3, 99).unwrap();
        let e = mh_sample(&spec, &cfg, 1).unwrap().estimates[0].clone();
        assert!((e.mean - 0.5).abs() < 3.0 * e.stderr, "{e:?}");
    }
}

#[test]
fn laguerre_nearly_factorizes() {
    let spec = EnsembleSpec::Laguerre {
        alpha: rat(1, 1),
        epsilon: rat(1, 1),
        beta: rat(2, 1),
        big_n: 40,
    };
    let cfg = ChainConfig::for_spec(&spec, 20_000, 2_000, 2, 5).unwrap();
    let report = factorization_test(&spec, &cfg).unwrap();
    assert!(report.ratio_n < 0.1);
    assert!(report.consistent, "decay {}", report.decay);
}

#[test]
fn identical_configs_reproduce_exactly() {
    let spec = EnsembleSpec::DelayTimes {
        tau_d: rat(1, 2),
        beta: rat(1, 1),
        big_n: 6,
    };
    let cfg = ChainConfig::for_spec(&spec, 5_000, 500, 4, 17).unwrap();
    let a = serde_json::to_string(&mh_sample(&spec, &cfg, 3).unwrap()).unwrap();
    let b = serde_json::to_string(&mh_sample(&spec, &cfg, 3).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn stderr_positive_with_enough_sweeps() {
    let spec = jacobi(2, 1, 5);
    let cfg = ChainConfig::for_spec(&spec, 1_200, 1_000, 1, 3).unwrap();
    let stats = mh_sample(&spec, &cfg, 2).unwrap();
    assert!(stats.estimates.iter().all(|e| e.stderr > 0.0));
}
