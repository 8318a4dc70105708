//! Self-checks grouped into suites, each check reporting pass/fail with a
//! counterexample instead of raising.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::combinatorics::{
    catalan, count_weighted_paths, enumerate_paths, enumerate_schroder_paths, motzkin_count,
    schroder, schroder_bijection, Direction, PathModel,
};
use crate::ensembles::{a_params, EnsembleKind, EnsembleSpec};
use crate::error::Error;
use crate::genfunc::{
    gamma1_radicand, generating_function, gf_jacobi_gamma1, solve_quadratic_fe, QuadraticFE,
};
use crate::moments::{
    backend_sequence, closed_jacobi_a4, closed_jacobi_general, cross_check, recurrence_sequence,
    Backend, KLimit,
};
use crate::rational::{rat, Rational};
use crate::series::PowerSeries;

/// Default largest moment index for the cross-backend suite.
pub const DEFAULT_MAX_N: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    CrossBackend,
    Identities,
    PathsOracle,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::CrossBackend => "cross-backend",
            Suite::Identities => "identities",
            Suite::PathsOracle => "paths-oracle",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cross-backend" => Ok(Suite::CrossBackend),
            "identities" => Ok(Suite::Identities),
            "paths-oracle" => Ok(Suite::PathsOracle),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite {other:?}; expected cross-backend, identities, paths-oracle or all"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub check: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

fn r(s: &str) -> Rational {
    s.parse().expect("literal rational")
}

/// Five parameter sets per ensemble kind, used by the suites and the tests.
pub fn reference_specs(kind: EnsembleKind) -> Vec<EnsembleSpec> {
    match kind {
        EnsembleKind::JacobiGamma1 => [
            ("1", "2", 100),
            ("1/2", "1", 7),
            ("3", "4", 5),
            ("5/3", "2/3", 12),
            ("7/2", "1", 1),
        ]
        .iter()
        .map(|&(a, b, n)| EnsembleSpec::JacobiGamma1 {
            alpha: r(a),
            beta: r(b),
            big_n: n,
        })
        .collect(),
        EnsembleKind::JacobiGeneral => [
            ("1", "1", "2", 100),
            ("1/2", "3/2", "1", 7),
            ("2", "5", "4", 3),
            ("1/3", "0", "2", 9),
            ("3", "1/2", "1", 20),
        ]
        .iter()
        .map(|&(a, g, b, n)| EnsembleSpec::JacobiGeneral {
            alpha: r(a),
            gamma: r(g),
            beta: r(b),
            big_n: n,
        })
        .collect(),
        EnsembleKind::Laguerre => [
            ("0", "1", "2", 10),
            ("1", "3/2", "1", 6),
            ("5/2", "2", "4", 3),
            ("1/3", "7", "2", 40),
            ("2", "1/2", "1", 1),
        ]
        .iter()
        .map(|&(a, e, b, n)| EnsembleSpec::Laguerre {
            alpha: r(a),
            epsilon: r(e),
            beta: r(b),
            big_n: n,
        })
        .collect(),
        EnsembleKind::DelayTimes => [
            ("1", "2", 1),
            ("1/2", "1", 4),
            ("3", "4", 2),
            ("5/7", "2", 30),
            ("2", "2/3", 9),
        ]
        .iter()
        .map(|&(t, b, n)| EnsembleSpec::DelayTimes {
            tau_d: r(t),
            beta: r(b),
            big_n: n,
        })
        .collect(),
    }
}

struct Collector {
    suite: Suite,
    checks: Vec<CheckResult>,
}

impl Collector {
    fn record(&mut self, check: &str, detail: String, outcome: Result<Option<String>, Error>) {
        let (passed, counterexample) = match outcome {
            Ok(None) => (true, None),
            Ok(Some(c)) => (false, Some(c)),
            Err(e) => (false, Some(format!("error: {e}"))),
        };
        self.checks.push(CheckResult {
            suite: self.suite,
            check: check.to_string(),
            passed,
            detail,
            counterexample,
        });
    }
}

fn spec_label(spec: &EnsembleSpec) -> String {
    serde_json::to_string(spec).unwrap_or_else(|_| format!("{spec:?}"))
}

/// First index where two sequences differ, as a counterexample string.
fn first_difference(a: &[Rational], b: &[Rational], offset: usize) -> Option<String> {
    a.iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .map(|i| format!("n = {}: {} != {}", i + offset, a[i], b[i]))
}

fn cross_backend(c: &mut Collector, max_n: usize) {
    for kind in EnsembleKind::ALL {
        for spec in reference_specs(kind) {
            let outcome = cross_check(&spec, max_n, &Backend::ALL).map(|cc| {
                cc.first_discrepancy.map(|d| {
                    format!(
                        "n = {}: {} gives {}, {} gives {}",
                        d.n, d.reference, d.reference_value, d.backend, d.value
                    )
                })
            });
            c.record(
                "backends-agree",
                format!("{} n = 1..={max_n}", spec_label(&spec)),
                outcome,
            );
        }
    }
}

/// `γ = 0` turns the general Jacobi case into the `γ = 1` formulas.
fn gamma_reduction(c: &mut Collector) {
    const N_MAX: usize = 15;
    for spec in reference_specs(EnsembleKind::JacobiGamma1) {
        let EnsembleSpec::JacobiGamma1 { alpha, beta, big_n } = spec.clone() else {
            unreachable!()
        };
        let general = EnsembleSpec::JacobiGeneral {
            alpha,
            gamma: Rational::zero(),
            beta,
            big_n,
        };
        let outcome = (|| {
            let reference = backend_sequence(&spec, N_MAX, Backend::Recurrence)?;
            for b in Backend::ALL {
                if let Some(diff) =
                    first_difference(&backend_sequence(&general, N_MAX, b)?, &reference, 1)
                {
                    return Ok(Some(format!("{b}: {diff}")));
                }
            }
            Ok(None)
        })();
        c.record(
            "gamma-zero-reduction",
            format!("{} n <= {N_MAX}", spec_label(&spec)),
            outcome,
        );
    }
}

/// With `α = 0` the Laguerre moments are `C_n <T>^n`.
fn catalan_limit(c: &mut Collector) {
    const N_MAX: usize = 15;
    for (eps, beta, n) in [
        ("1", "2", 10u64),
        ("3/2", "1", 4),
        ("1/5", "4", 7),
        ("2", "2", 1),
    ] {
        let spec = EnsembleSpec::Laguerre {
            alpha: Rational::zero(),
            epsilon: r(eps),
            beta: r(beta),
            big_n: n,
        };
        let outcome = recurrence_sequence(&spec, N_MAX).map(|m| {
            let expected: Vec<Rational> = (0..=N_MAX)
                .map(|k| Rational::from(catalan(k as u64)) * m[1].pow(k as u32))
                .collect();
            first_difference(&m, &expected, 0)
        });
        c.record(
            "catalan-limit",
            format!("{} n <= {N_MAX}", spec_label(&spec)),
            outcome,
        );
    }
}

fn closed_form_identities(c: &mut Collector) {
    const N_MAX: usize = 20;
    for spec in reference_specs(EnsembleKind::JacobiGeneral) {
        let outcome = a_params(&spec).map_err(Error::from).map(|a| {
            (1..=N_MAX).find_map(|n| {
                let printed = closed_jacobi_general(&a, n, KLimit::Printed);
                let a4 = closed_jacobi_a4(&a, n);
                let tight = closed_jacobi_general(&a, n, KLimit::Tight);
                if printed != a4 {
                    Some(format!("n = {n}: {printed} != {a4} (A4 form)"))
                } else if printed != tight {
                    Some(format!("n = {n}: {printed} != {tight} (k <= m/2)"))
                } else {
                    None
                }
            })
        });
        c.record(
            "closed-form-a4-and-k-limit",
            format!("{} n <= {N_MAX}", spec_label(&spec)),
            outcome,
        );
    }
}

/// `τ_D = 1` gives 1, 2, 6, 22, 90 from the recurrence, the weighted path
/// count and the number of Schröder images.
fn delay_sequence(c: &mut Collector) {
    let expected: Vec<Rational> = [1, 2, 6, 22, 90].iter().map(|&v| rat(v, 1)).collect();
    let spec = EnsembleSpec::DelayTimes {
        tau_d: Rational::one(),
        beta: rat(2, 1),
        big_n: 1,
    };
    let outcome = (|| {
        let rec = recurrence_sequence(&spec, 5)?;
        if let Some(d) = first_difference(&rec[1..], &expected, 1) {
            return Ok(Some(format!("recurrence {d}")));
        }
        let a = a_params(&spec)?;
        for n in 1..=5usize {
            let model = PathModel::delay(n - 1, a.a1.clone(), a.a2.clone(), a.a3.clone());
            let weighted = &a.a2 * count_weighted_paths(&model);
            if weighted != expected[n - 1] {
                return Ok(Some(format!("path count n = {n}: {weighted}")));
            }
            let sources = enumerate_paths(&model, model.max_path_steps())?;
            let images = sources
                .iter()
                .map(schroder_bijection)
                .collect::<Result<std::collections::BTreeSet<_>, _>>()?;
            let targets = enumerate_schroder_paths(n - 1)?;
            if images.len() != sources.len()
                || images.len() != targets.len()
                || Rational::from(schroder(n as u64 - 1)) != expected[n - 1]
            {
                return Ok(Some(format!(
                    "bijection n = {n}: {} paths, {} images, {} Schröder paths",
                    sources.len(),
                    images.len(),
                    targets.len()
                )));
            }
        }
        Ok(None)
    })();
    c.record(
        "delay-sequence",
        "tauD = 1, n = 1..=5 is 1, 2, 6, 22, 90".into(),
        outcome,
    );
}

fn residuals(c: &mut Collector, order: usize) {
    for kind in EnsembleKind::ALL {
        for spec in reference_specs(kind) {
            let outcome = (|| {
                let a = a_params(&spec)?;
                let eq = QuadraticFE::for_kind(kind, &a, order);
                let f = solve_quadratic_fe(&eq, order)?;
                let res = eq.residual(&f);
                if !res.is_zero() {
                    return Ok(Some(format!(
                        "residual {:?}",
                        res.coeffs()
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                    )));
                }
                if generating_function(&spec, order)? != f {
                    return Ok(Some(
                        "generating_function differs from the solved equation".into(),
                    ));
                }
                if kind == EnsembleKind::JacobiGamma1 {
                    // errors with a mismatch if the square-root form disagrees
                    let closed = gf_jacobi_gamma1(&a, order)?;
                    let two_a1 = &a.a1 * rat(2, 1);
                    let lhs = (&closed - &PowerSeries::one(order)).scale(&two_a1);
                    let lhs = &lhs + &PowerSeries::one(order);
                    if &lhs * &lhs != gamma1_radicand(&a, order)? {
                        return Ok(Some("squared sqrt form differs from its radicand".into()));
                    }
                }
                Ok(None)
            })();
            c.record(
                "gf-residual",
                format!("{} order {order}", spec_label(&spec)),
                outcome,
            );
        }
    }
}

fn unit_counts(c: &mut Collector) {
    let one = Rational::one;
    let count =
        |model: &PathModel| enumerate_paths(model, model.max_path_steps()).map(|v| v.len() as u64);
    let outcome = (|| -> Result<Option<String>, Error> {
        for p in 0..=8u64 {
            let n = count(&PathModel::dyck(p as usize, one(), one()))?;
            if catalan(p) != n.into() {
                return Ok(Some(format!(
                    "catalan({p}) = {} but {n} Dyck paths",
                    catalan(p)
                )));
            }
        }
        Ok(None)
    })();
    c.record(
        "catalan-oracle",
        "catalan(p) vs enumerated Dyck paths, p <= 8".into(),
        outcome,
    );

    let outcome = (|| -> Result<Option<String>, Error> {
        for n in 0..=10usize {
            let paths = enumerate_paths(&PathModel::motzkin(n, one(), one(), one()), n)?;
            for m in 0..=n / 2 {
                let k = paths.iter().filter(|p| p.count(Direction::Up) == m).count() as u64;
                if motzkin_count(n as u64, m as u64) != k.into() {
                    return Ok(Some(format!(
                        "motzkin_count({n}, {m}) = {} but {k} paths",
                        motzkin_count(n as u64, m as u64)
                    )));
                }
            }
        }
        Ok(None)
    })();
    c.record(
        "motzkin-oracle",
        "motzkin_count(n, m) vs enumerated Motzkin paths, n <= 10".into(),
        outcome,
    );

    let outcome = (|| -> Result<Option<String>, Error> {
        for n in 0..=6u64 {
            let direct = enumerate_schroder_paths(n as usize)?.len() as u64;
            let delay = count(&PathModel::delay(n as usize, one(), one(), one()))?;
            if schroder(n) != direct.into() || schroder(n) != delay.into() {
                return Ok(Some(format!(
                    "schroder({n}) = {}, {direct} Schröder paths, {delay} delay paths",
                    schroder(n)
                )));
            }
        }
        Ok(None)
    })();
    c.record(
        "schroder-oracle",
        "schroder(n) vs enumerated Schröder and delay-model paths, n <= 6".into(),
        outcome,
    );
}

fn dp_vs_enumeration(c: &mut Collector) {
    let weights = [
        (r("-2/3"), r("5/4"), r("1/7"), r("3")),
        (r("1"), r("1"), r("1"), r("1")),
        (r("7/2"), r("-1/3"), r("2"), r("-5/6")),
    ];
    for (w1, w2, w3, w4) in &weights {
        let mut models = Vec::new();
        for len in 0..=7usize {
            models.push(PathModel::dyck(len, w1.clone(), w2.clone()));
        }
        for len in 0..=9usize {
            models.push(PathModel::motzkin(len, w1.clone(), w2.clone(), w3.clone()));
        }
        for len in 0..=6usize {
            models.push(PathModel::delay(len, w1.clone(), w2.clone(), w3.clone()));
            models.push(PathModel::jacobi4(
                len,
                w1.clone(),
                w2.clone(),
                w3.clone(),
                w4.clone(),
            ));
        }
        let outcome = (|| -> Result<Option<String>, Error> {
            for model in &models {
                let paths = enumerate_paths(model, model.max_path_steps())?;
                let brute: Rational = paths.iter().map(|p| p.weight(model)).sum();
                let dp = count_weighted_paths(model);
                if brute != dp {
                    let steps: String =
                        model.steps().iter().map(|s| s.direction.symbol()).collect();
                    return Ok(Some(format!(
                        "steps {steps}, length {}: DP {dp}, enumeration {brute}",
                        model.horizontal_length()
                    )));
                }
            }
            Ok(None)
        })();
        c.record(
            "dp-vs-enumeration",
            format!(
                "weights ({w1}, {w2}, {w3}, {w4}) on {} models",
                models.len()
            ),
            outcome,
        );
    }
}

/// Runs `suite`; `max_n` bounds the cross-backend comparison and the
/// generating-function order.
pub fn run_suite(suite: Suite, max_n: usize) -> VerifyReport {
    let suites: &[Suite] = match suite {
        Suite::All => &[Suite::CrossBackend, Suite::Identities, Suite::PathsOracle],
        Suite::CrossBackend => &[Suite::CrossBackend],
        Suite::Identities => &[Suite::Identities],
        Suite::PathsOracle => &[Suite::PathsOracle],
    };
    let mut checks = Vec::new();
    for &s in suites {
        let mut c = Collector {
            suite: s,
            checks: Vec::new(),
        };
        match s {
            Suite::CrossBackend => cross_backend(&mut c, max_n),
            Suite::Identities => {
                gamma_reduction(&mut c);
                catalan_limit(&mut c);
                closed_form_identities(&mut c);
                delay_sequence(&mut c);
                residuals(&mut c, max_n);
            }
            Suite::PathsOracle => {
                unit_counts(&mut c);
                dp_vs_enumeration(&mut c);
            }
            Suite::All => unreachable!(),
        }
        checks.extend(c.checks);
    }
    VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_specs_are_valid() {
        for kind in EnsembleKind::ALL {
            let specs = reference_specs(kind);
            assert_eq!(specs.len(), 5);
            for s in specs {
                assert_eq!(s.kind(), kind);
                a_params(&s).unwrap();
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::CrossBackend,
            Suite::Identities,
            Suite::PathsOracle,
            Suite::All,
        ] {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::CrossBackend, Suite::Identities, Suite::PathsOracle] {
            let report = run_suite(suite, 8);
            let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
            assert!(report.passed, "{failed:#?}");
            assert!(report.checks.iter().all(|c| c.suite == suite));
        }
    }

    #[test]
    fn failures_carry_counterexamples() {
        let a = [rat(1, 1), rat(2, 1)];
        let b = [rat(1, 1), rat(3, 1)];
        assert_eq!(first_difference(&a, &b, 1).unwrap(), "n = 2: 2/1 != 3/1");
        let mut c = Collector {
            suite: Suite::Identities,
            checks: Vec::new(),
        };
        c.record("x", String::new(), Ok(Some("n = 2".into())));
        c.record("y", String::new(), Err(Error::Other("boom".into())));
        assert!(!c.checks[0].passed && !c.checks[1].passed);
        assert_eq!(c.checks[1].counterexample.as_deref(), Some("error: boom"));
    }
}
