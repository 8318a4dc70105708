//! Ensemble descriptions and their large-N constants `A1..A4`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParamError;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    JacobiGamma1,
    JacobiGeneral,
    Laguerre,
    DelayTimes,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 4] = [
        EnsembleKind::JacobiGamma1,
        EnsembleKind::JacobiGeneral,
        EnsembleKind::Laguerre,
        EnsembleKind::DelayTimes,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EnsembleKind::JacobiGamma1 => "jacobi_gamma1",
            EnsembleKind::JacobiGeneral => "jacobi_general",
            EnsembleKind::Laguerre => "laguerre",
            EnsembleKind::DelayTimes => "delay_times",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which ensemble, together with its raw finite-N parameters.
///
/// `JacobiGamma1` is the transport case: weight `T^(α-1)` with no `(1-T)`
/// factor. `DelayTimes` is parameterized by the dwell time; the finite-N
/// exponents of its density are derived from `(β, N, τ_D)` when sampling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnsembleSpec {
    JacobiGamma1 {
        alpha: Rational,
        beta: Rational,
        #[serde(rename = "N")]
        big_n: u64,
    },
    JacobiGeneral {
        alpha: Rational,
        gamma: Rational,
        beta: Rational,
        #[serde(rename = "N")]
        big_n: u64,
    },
    Laguerre {
        alpha: Rational,
        epsilon: Rational,
        beta: Rational,
        #[serde(rename = "N")]
        big_n: u64,
    },
    DelayTimes {
        #[serde(rename = "tauD")]
        tau_d: Rational,
        beta: Rational,
        #[serde(rename = "N")]
        big_n: u64,
    },
}

impl EnsembleSpec {
    pub fn kind(&self) -> EnsembleKind {
        match self {
            EnsembleSpec::JacobiGamma1 { .. } => EnsembleKind::JacobiGamma1,
            EnsembleSpec::JacobiGeneral { .. } => EnsembleKind::JacobiGeneral,
            EnsembleSpec::Laguerre { .. } => EnsembleKind::Laguerre,
            EnsembleSpec::DelayTimes { .. } => EnsembleKind::DelayTimes,
        }
    }

    pub fn beta(&self) -> &Rational {
        match self {
            EnsembleSpec::JacobiGamma1 { beta, .. }
            | EnsembleSpec::JacobiGeneral { beta, .. }
            | EnsembleSpec::Laguerre { beta, .. }
            | EnsembleSpec::DelayTimes { beta, .. } => beta,
        }
    }

    pub fn big_n(&self) -> u64 {
        match self {
            EnsembleSpec::JacobiGamma1 { big_n, .. }
            | EnsembleSpec::JacobiGeneral { big_n, .. }
            | EnsembleSpec::Laguerre { big_n, .. }
            | EnsembleSpec::DelayTimes { big_n, .. } => *big_n,
        }
    }

    /// Same ensemble and parameters with a different matrix size.
    pub fn with_big_n(&self, n: u64) -> EnsembleSpec {
        let mut spec = self.clone();
        match &mut spec {
            EnsembleSpec::JacobiGamma1 { big_n, .. }
            | EnsembleSpec::JacobiGeneral { big_n, .. }
            | EnsembleSpec::Laguerre { big_n, .. }
            | EnsembleSpec::DelayTimes { big_n, .. } => *big_n = n,
        }
        spec
    }

    fn beta_n(&self) -> Rational {
        self.beta() * Rational::from_integer(self.big_n())
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.big_n() < 1 {
            return Err(ParamError::new("N", "must be at least 1"));
        }
        if !self.beta().is_positive() {
            return Err(ParamError::new("beta", "must be positive"));
        }
        match self {
            EnsembleSpec::JacobiGamma1 { alpha, .. } => {
                if (alpha + self.beta_n()).is_zero() {
                    return Err(ParamError::new("alpha", "alpha + beta*N must be nonzero"));
                }
            }
            EnsembleSpec::JacobiGeneral { alpha, gamma, .. } => {
                if (alpha + gamma + self.beta_n()).is_zero() {
                    return Err(ParamError::new(
                        "gamma",
                        "alpha + gamma + beta*N must be nonzero",
                    ));
                }
            }
            EnsembleSpec::Laguerre { epsilon, .. } => {
                if !epsilon.is_positive() {
                    return Err(ParamError::new("epsilon", "must be positive"));
                }
            }
            EnsembleSpec::DelayTimes { tau_d, .. } => {
                if !tau_d.is_positive() {
                    return Err(ParamError::new("tauD", "must be positive"));
                }
            }
        }
        Ok(())
    }
}

/// Large-N constants; `a4 = a1·(1 - a3)` is always filled in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AParams {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
}

impl AParams {
    /// Builds the set from `a1`, `a2` and `a3`, deriving `a4`.
    pub fn new(a1: Rational, a2: Rational, a3: Rational) -> Self {
        let a4 = &a1 * (Rational::one() - &a3);
        AParams { a1, a2, a3, a4 }
    }

    /// The common case `a3 = a1 + a2`.
    pub fn from_a1_a2(a1: Rational, a2: Rational) -> Self {
        let a3 = &a1 + &a2;
        Self::new(a1, a2, a3)
    }
}

pub fn a_params(spec: &EnsembleSpec) -> Result<AParams, ParamError> {
    spec.validate()?;
    let beta_n = spec.beta_n();
    let two = Rational::from_integer(2);
    let params = match spec {
        EnsembleSpec::JacobiGamma1 { alpha, .. } => {
            let den = &two * (alpha + &beta_n);
            AParams::from_a1_a2(&beta_n / &den, (&two * alpha + &beta_n) / &den)
        }
        EnsembleSpec::JacobiGeneral { alpha, gamma, .. } => {
            let den = &two * (alpha + gamma + &beta_n);
            AParams::from_a1_a2(&beta_n / &den, (&two * alpha + &beta_n) / &den)
        }
        EnsembleSpec::Laguerre { alpha, epsilon, .. } => {
            let a1 = &beta_n / (&two * epsilon);
            let a2 = alpha / epsilon + &a1;
            AParams::from_a1_a2(a1, a2)
        }
        EnsembleSpec::DelayTimes { tau_d, .. } => {
            AParams::new(Rational::one(), tau_d.clone(), tau_d.clone())
        }
    };
    Ok(params)
}

/// Transport setup with `n1` incoming and `n2` outgoing channels.
pub fn transport_to_jacobi(n1: u64, n2: u64, beta: Rational) -> Result<EnsembleSpec, ParamError> {
    if n1 < 1 {
        return Err(ParamError::new("N1", "must be at least 1"));
    }
    if n2 < 1 {
        return Err(ParamError::new("N2", "must be at least 1"));
    }
    if !beta.is_positive() {
        return Err(ParamError::new("beta", "must be positive"));
    }
    let alpha = &beta * Rational::new(n1.abs_diff(n2) as i64 + 1, 2).expect("nonzero");
    Ok(EnsembleSpec::JacobiGamma1 {
        alpha,
        beta,
        big_n: n1.min(n2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn jacobi(alpha: i64, gamma: i64, beta: i64, big_n: u64) -> EnsembleSpec {
        EnsembleSpec::JacobiGeneral {
            alpha: rat(alpha, 1),
            gamma: rat(gamma, 1),
            beta: rat(beta, 1),
            big_n,
        }
    }

    #[test]
    fn jacobi_general_constants() {
        let a = a_params(&jacobi(1, 1, 2, 100)).unwrap();
        assert_eq!(a.a1, rat(50, 101));
        assert_eq!(a.a2, rat(1, 2));
        assert_eq!(a.a3, rat(201, 202));
        assert_eq!(a.a4, rat(50, 101) * rat(1, 202));
    }

    #[test]
    fn jacobi_gamma1_constants_sum_to_one() {
        let spec = EnsembleSpec::JacobiGamma1 {
            alpha: rat(1, 1),
            beta: rat(2, 1),
            big_n: 100,
        };
        let a = a_params(&spec).unwrap();
        assert_eq!(a.a1, rat(100, 201));
        assert_eq!(a.a2, rat(101, 201));
        assert_eq!(&a.a1 + &a.a2, Rational::one());
        assert_eq!(a.a3, Rational::one());
        assert!(a.a4.is_zero());
    }

    #[test]
    fn delay_times_constants() {
        let spec = EnsembleSpec::DelayTimes {
            tau_d: rat(3, 2),
            beta: rat(2, 1),
            big_n: 10,
        };
        let a = a_params(&spec).unwrap();
        assert_eq!((a.a1, a.a2, a.a3), (rat(1, 1), rat(3, 2), rat(3, 2)));
    }

    #[test]
    fn laguerre_constants() {
        let spec = EnsembleSpec::Laguerre {
            alpha: rat(3, 1),
            epsilon: rat(2, 1),
            beta: rat(1, 1),
            big_n: 10,
        };
        let a = a_params(&spec).unwrap();
        assert_eq!(a.a1, rat(5, 2));
        assert_eq!(a.a2, rat(4, 1));
        assert_eq!(a.a3, &a.a1 + &a.a2);
    }

    #[test]
    fn gamma_zero_matches_gamma1() {
        for (alpha, beta, n) in [(1, 2, 100), (3, 1, 7), (0, 4, 12)] {
            let g1 = EnsembleSpec::JacobiGamma1 {
                alpha: rat(alpha, 1),
                beta: rat(beta, 1),
                big_n: n,
            };
            assert_eq!(
                a_params(&jacobi(alpha, 0, beta, n)).unwrap(),
                a_params(&g1).unwrap()
            );
        }
    }

    #[test]
    fn invalid_parameters_name_the_field() {
        let bad_eps = EnsembleSpec::Laguerre {
            alpha: rat(0, 1),
            epsilon: rat(0, 1),
            beta: rat(2, 1),
            big_n: 3,
        };
        assert_eq!(a_params(&bad_eps).unwrap_err().field, "epsilon");
        let bad_tau = EnsembleSpec::DelayTimes {
            tau_d: rat(-1, 1),
            beta: rat(2, 1),
            big_n: 3,
        };
        assert_eq!(a_params(&bad_tau).unwrap_err().field, "tauD");
        assert_eq!(a_params(&jacobi(1, 1, 0, 3)).unwrap_err().field, "beta");
        assert_eq!(a_params(&jacobi(1, 1, 2, 0)).unwrap_err().field, "N");
        // 2(α + γ + βN) = 0
        assert_eq!(a_params(&jacobi(-3, -1, 2, 2)).unwrap_err().field, "gamma");
    }

    #[test]
    fn transport_mapping() {
        let s = transport_to_jacobi(10, 10, rat(2, 1)).unwrap();
        assert_eq!(
            s,
            EnsembleSpec::JacobiGamma1 {
                alpha: rat(1, 1),
                beta: rat(2, 1),
                big_n: 10
            }
        );
        let s = transport_to_jacobi(4, 8, rat(2, 1)).unwrap();
        assert_eq!(
            s,
            EnsembleSpec::JacobiGamma1 {
                alpha: rat(5, 1),
                beta: rat(2, 1),
                big_n: 4
            }
        );
        let s = transport_to_jacobi(3, 4, rat(1, 1)).unwrap();
        assert_eq!(
            s,
            EnsembleSpec::JacobiGamma1 {
                alpha: rat(1, 1),
                beta: rat(1, 1),
                big_n: 3
            }
        );
        assert_eq!(
            transport_to_jacobi(0, 4, rat(1, 1)).unwrap_err().field,
            "N1"
        );
    }

    #[test]
    fn fixed_alpha_tends_to_half() {
        let half = rat(1, 2);
        for (n, tol) in [(1_000u64, rat(1, 100)), (1_000_000, rat(1, 100_000))] {
            let spec = EnsembleSpec::JacobiGamma1 {
                alpha: rat(3, 1),
                beta: rat(2, 1),
                big_n: n,
            };
            let a = a_params(&spec).unwrap();
            assert!((&a.a1 - &half).abs() < tol);
            assert!((&a.a2 - &half).abs() < tol);
        }
    }

    #[test]
    fn transport_constants_approach_channel_fractions() {
        let mut prev: Option<Rational> = None;
        for n in [10u64, 100, 1000] {
            let a = a_params(&transport_to_jacobi(n, n, rat(2, 1)).unwrap()).unwrap();
            let err = (&a.a1 - rat(1, 2)).abs() + (&a.a2 - rat(1, 2)).abs();
            if let Some(p) = prev {
                assert!(err < p);
            }
            prev = Some(err);
        }
    }

    #[test]
    fn json_shape() {
        let spec = EnsembleSpec::DelayTimes {
            tau_d: rat(3, 2),
            beta: rat(2, 1),
            big_n: 4,
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"delay_times","tauD":"3/2","beta":"2/1","N":4}"#
        );
        let back: EnsembleSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        let g: EnsembleSpec = serde_json::from_str(
            r#"{"kind":"jacobi_general","alpha":"1","gamma":"1/2","beta":"2","N":10}"#,
        )
        .unwrap();
        assert_eq!(
            g,
            EnsembleSpec::JacobiGeneral {
                alpha: rat(1, 1),
                gamma: rat(1, 2),
                beta: rat(2, 1),
                big_n: 10
            }
        );
    }
}
