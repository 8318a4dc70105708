//! Large-N factorization of the two-point function.
//!
//! The connected part `⟨T1 T2⟩ - ⟨T1⟩⟨T2⟩` is of relative size `1/N`, so
//! doubling `N` should roughly halve it.

use serde::Serialize;

use super::{mh_sample, ChainConfig, ChainStats};
use crate::ensembles::EnsembleSpec;
use crate::error::McError;

/// Accepted range for `ratio(N) / ratio(2N)`.
pub const DECAY_BAND: (f64, f64) = (1.4, 2.8);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorizationReport {
    #[serde(rename = "N")]
    pub big_n: u64,
    /// `|cov| / ⟨T⟩²` at `N` and at `2N`.
    pub ratio_n: f64,
    pub ratio_n_stderr: f64,
    pub ratio_2n: f64,
    pub ratio_2n_stderr: f64,
    pub decay: f64,
    pub decay_stderr: f64,
    pub consistent: bool,
    pub stats_n: ChainStats,
    pub stats_2n: ChainStats,
}

/// Samples `spec` at its own `N` and at `2N` with the same chain settings.
pub fn factorization_test(
    spec: &EnsembleSpec,
    cfg: &ChainConfig,
) -> Result<FactorizationReport, McError> {
    let n = spec.big_n();
    if n < 2 {
        return Err(McError::NeedTwoParticles);
    }
    let doubled = spec.with_big_n(2 * n);
    let stats_n = mh_sample(spec, cfg, 1)?;
    let stats_2n = mh_sample(&doubled, cfg, 1)?;
    let a = stats_n.pair_cov.clone().ok_or(McError::NeedTwoParticles)?;
    let b = stats_2n.pair_cov.clone().ok_or(McError::NeedTwoParticles)?;
    let decay = a.ratio / b.ratio;
    let decay_stderr =
        decay * ((a.ratio_stderr / a.ratio).powi(2) + (b.ratio_stderr / b.ratio).powi(2)).sqrt();
    Ok(FactorizationReport {
        big_n: n,
        ratio_n: a.ratio,
        ratio_n_stderr: a.ratio_stderr,
        ratio_2n: b.ratio,
        ratio_2n_stderr: b.ratio_stderr,
        decay,
        decay_stderr,
        consistent: decay.is_finite() && (DECAY_BAND.0..=DECAY_BAND.1).contains(&decay),
        stats_n,
        stats_2n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn needs_two_particles() {
        let spec = EnsembleSpec::JacobiGamma1 {
            alpha: rat(1, 1),
            beta: rat(2, 1),
            big_n: 1,
        };
        let cfg = ChainConfig::for_spec(&spec, 100, 10, 1, 0).unwrap();
        let err = factorization_test(&spec, &cfg).unwrap_err();
        assert!(err.to_string().contains("need N≥2"));
    }
}
