//! Metropolis–Hastings sampling of the finite-N eigenvalue densities.
//!
//! Single-coordinate random-walk updates with reflection at the walls; one
//! sweep proposes one move per coordinate. Every sweep after burn-in records
//! `(1/N) Σ_i T_i^n` (all coordinates are exchangeable) and the pair product
//! averaged over `i ≠ j`. Standard errors come from batch means pooled over
//! chains. Chains run in parallel on independent ChaCha8 streams and are
//! merged in chain order, so results are bit-for-bit reproducible.

mod density;
mod factorization;

pub use density::{delay_exponents, delay_weight_integral, log_density, Domain, LogDensity};
pub use factorization::{factorization_test, FactorizationReport, DECAY_BAND};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ensembles::{a_params, EnsembleSpec};
use crate::error::McError;

/// Recorded in every [`ChainStats`] so a run can be replayed exactly.
pub const GENERATOR: &str = "rand_chacha::ChaCha8Rng (per-chain seeds via splitmix64)";

/// Batch count per chain for the batch-means standard error.
pub const BATCHES_PER_CHAIN: usize = 50;

const ACCEPTANCE_WARN_LOW: f64 = 0.05;
const ACCEPTANCE_WARN_HIGH: f64 = 0.95;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainConfig {
    pub sweeps: usize,
    pub burn_in: usize,
    pub step_scale: f64,
    pub chains: usize,
    pub seed: u64,
}

impl ChainConfig {
    /// Config with the ensemble's default step scale.
    pub fn for_spec(
        spec: &EnsembleSpec,
        sweeps: usize,
        burn_in: usize,
        chains: usize,
        seed: u64,
    ) -> Result<Self, McError> {
        Ok(ChainConfig {
            sweeps,
            burn_in,
            step_scale: default_step_scale(spec)?,
            chains,
            seed,
        })
    }

    pub fn validate(&self) -> Result<(), McError> {
        if self.sweeps == 0 {
            return Err(McError::Config("sweeps must be positive".into()));
        }
        if self.burn_in >= self.sweeps {
            return Err(McError::Config(
                "burn_in must be smaller than sweeps".into(),
            ));
        }
        if self.chains == 0 {
            return Err(McError::Config("chains must be at least 1".into()));
        }
        if !(self.step_scale > 0.0 && self.step_scale.is_finite()) {
            return Err(McError::Config(
                "step_scale must be a positive number".into(),
            ));
        }
        Ok(())
    }
}

/// A tenth of the natural scale of the ensemble: 0.1 on `[0, 1]`, 0.1·⟨T⟩
/// for the unbounded ensembles.
pub fn default_step_scale(spec: &EnsembleSpec) -> Result<f64, McError> {
    Ok(match spec {
        EnsembleSpec::JacobiGamma1 { .. } | EnsembleSpec::JacobiGeneral { .. } => 0.1,
        EnsembleSpec::Laguerre { .. } | EnsembleSpec::DelayTimes { .. } => {
            0.1 * a_params(spec)?.a2.to_f64().abs()
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub n: usize,
    pub mean: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairCovariance {
    /// `⟨T1 T2⟩ - ⟨T1⟩⟨T2⟩`
    pub cov: f64,
    pub stderr: f64,
    /// `|cov| / (⟨T1⟩⟨T2⟩)`
    pub ratio: f64,
    pub ratio_stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainDiagnostics {
    /// Per-chain estimate of `⟨T⟩`.
    pub chain_means: Vec<f64>,
    pub chain_acceptance: Vec<f64>,
    /// Largest `|m_a - m_b| / sqrt(se_a² + se_b²)` over the halves of every
    /// chain and over every pair of chains, for `⟨T⟩`.
    pub split_max_z: f64,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainStats {
    pub kind: String,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub estimates: Vec<MomentEstimate>,
    pub pair_cov: Option<PairCovariance>,
    pub acceptance: f64,
    pub generator: &'static str,
    pub seed: u64,
    pub config: ChainConfig,
    pub diagnostics: ChainDiagnostics,
}

impl ChainStats {
    pub fn estimate(&self, n: usize) -> Option<&MomentEstimate> {
        self.estimates.iter().find(|e| e.n == n)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn chain_seed(seed: u64, chain: usize) -> u64 {
    splitmix64(seed ^ splitmix64(chain as u64))
}

/// Output of one chain: batch means of every recorded statistic.
struct ChainRun {
    /// `batches[b][s]`: statistic `s` averaged over batch `b`. Statistics are
    /// `(1/N)Σ T^n` for `n = 1..=n_max`, then the pair product if `N ≥ 2`.
    batches: Vec<Vec<f64>>,
    acceptance: f64,
}

fn starting_point(spec: &EnsembleSpec, n: usize) -> Result<Vec<f64>, McError> {
    let grid = |i: usize| (i as f64 + 0.5) / n as f64;
    Ok(match spec {
        EnsembleSpec::JacobiGamma1 { .. } | EnsembleSpec::JacobiGeneral { .. } => {
            (0..n).map(grid).collect()
        }
        _ => {
            let mean = a_params(spec)?.a2.to_f64().abs();
            (0..n).map(|i| 2.0 * mean * grid(i)).collect()
        }
    })
}

fn reflect(mut t: f64, domain: Domain) -> f64 {
    loop {
        if t < 0.0 {
            t = -t;
        } else if domain == Domain::Unit && t > 1.0 {
            t = 2.0 - t;
        } else {
            return t;
        }
    }
}

fn run_chain(
    spec: &EnsembleSpec,
    density: &LogDensity,
    cfg: &ChainConfig,
    n_max: usize,
    chain: usize,
) -> Result<ChainRun, McError> {
    let n = spec.big_n() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(chain_seed(cfg.seed, chain));
    let mut ts = starting_point(spec, n)?;
    let domain = density.domain();
    let stat_count = n_max + usize::from(n >= 2);

    let kept = cfg.sweeps - cfg.burn_in;
    let batch_count = BATCHES_PER_CHAIN.min(kept);
    let batch_len = kept / batch_count;
    let mut batches = vec![vec![0.0; stat_count]; batch_count];

    let mut accepted = 0u64;
    let mut proposed = 0u64;
    let mut powers = vec![0.0; n_max];
    for sweep in 0..cfg.sweeps {
        for i in 0..n {
            let step = cfg.step_scale * (2.0 * rng.random::<f64>() - 1.0);
            let proposal = reflect(ts[i] + step, domain);
            let delta = density.delta(&ts, i, proposal);
            let u: f64 = rng.random();
            proposed += 1;
            if delta >= 0.0 || u < delta.exp() {
                ts[i] = proposal;
                accepted += 1;
            }
        }
        if sweep < cfg.burn_in {
            continue;
        }
        let b = (sweep - cfg.burn_in) / batch_len;
        if b >= batch_count {
            continue;
        }
        powers.iter_mut().for_each(|p| *p = 0.0);
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for &t in &ts {
            let mut p = 1.0;
            for slot in powers.iter_mut() {
                p *= t;
                *slot += p;
            }
            sum += t;
            sum_sq += t * t;
        }
        let row = &mut batches[b];
        for (k, p) in powers.iter().enumerate() {
            row[k] += p / n as f64;
        }
        if n >= 2 {
            row[n_max] += (sum * sum - sum_sq) / (n * (n - 1)) as f64;
        }
    }
    for row in &mut batches {
        row.iter_mut().for_each(|v| *v /= batch_len as f64);
    }
    Ok(ChainRun {
        batches,
        acceptance: accepted as f64 / proposed.max(1) as f64,
    })
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    if values.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

fn z_score(a: &[f64], b: &[f64]) -> f64 {
    let (ma, sa) = mean_and_stderr(a);
    let (mb, sb) = mean_and_stderr(b);
    (ma - mb).abs() / (sa * sa + sb * sb).sqrt()
}

/// Runs `cfg.chains` chains and pools their batch means.
pub fn mh_sample(
    spec: &EnsembleSpec,
    cfg: &ChainConfig,
    n_max: usize,
) -> Result<ChainStats, McError> {
    cfg.validate()?;
    if n_max == 0 {
        return Err(McError::Config("n_max must be at least 1".into()));
    }
    let density = LogDensity::new(spec)?;
    if let EnsembleSpec::DelayTimes { tau_d, .. } = spec {
        delay_weight_integral(density.beta(), tau_d.to_f64())?;
    }
    let runs = (0..cfg.chains)
        .into_par_iter()
        .map(|c| run_chain(spec, &density, cfg, n_max, c))
        .collect::<Result<Vec<_>, _>>()?;

    let column = |s: usize| -> Vec<f64> {
        runs.iter()
            .flat_map(|r| r.batches.iter().map(move |row| row[s]))
            .collect()
    };
    let estimates = (0..n_max)
        .map(|k| {
            let (mean, stderr) = mean_and_stderr(&column(k));
            MomentEstimate {
                n: k + 1,
                mean,
                stderr,
            }
        })
        .collect();

    let pair_cov = (spec.big_n() >= 2).then(|| {
        let firsts = column(0);
        let pairs = column(n_max);
        let (m1, _) = mean_and_stderr(&firsts);
        let (p, _) = mean_and_stderr(&pairs);
        let cov = p - m1 * m1;
        let per_batch_cov: Vec<f64> = firsts.iter().zip(&pairs).map(|(m, p)| p - m * m).collect();
        let (_, stderr) = mean_and_stderr(&per_batch_cov);
        let per_batch_ratio: Vec<f64> = firsts
            .iter()
            .zip(&pairs)
            .map(|(m, p)| (p - m * m).abs() / (m * m))
            .collect();
        let (_, ratio_stderr) = mean_and_stderr(&per_batch_ratio);
        PairCovariance {
            cov,
            stderr,
            ratio: cov.abs() / (m1 * m1),
            ratio_stderr,
        }
    });

    let chain_means: Vec<f64> = runs
        .iter()
        .map(|r| mean_and_stderr(&r.batches.iter().map(|b| b[0]).collect::<Vec<_>>()).0)
        .collect();
    let chain_acceptance: Vec<f64> = runs.iter().map(|r| r.acceptance).collect();
    let acceptance = chain_acceptance.iter().sum::<f64>() / runs.len() as f64;

    let firsts: Vec<Vec<f64>> = runs
        .iter()
        .map(|r| r.batches.iter().map(|b| b[0]).collect())
        .collect();
    let mut split_max_z = 0.0f64;
    for f in &firsts {
        if f.len() >= 4 {
            let (a, b) = f.split_at(f.len() / 2);
            split_max_z = split_max_z.max(z_score(a, b));
        }
    }
    for i in 0..firsts.len() {
        for j in i + 1..firsts.len() {
            if firsts[i].len() >= 2 {
                split_max_z = split_max_z.max(z_score(&firsts[i], &firsts[j]));
            }
        }
    }

    let mut warnings = Vec::new();
    if !(ACCEPTANCE_WARN_LOW..=ACCEPTANCE_WARN_HIGH).contains(&acceptance) {
        warnings.push(format!(
            "acceptance rate {acceptance:.3} outside [{ACCEPTANCE_WARN_LOW}, {ACCEPTANCE_WARN_HIGH}]; step_scale {} is badly tuned",
            cfg.step_scale
        ));
    }
    if cfg.sweeps - cfg.burn_in < 20 {
        warnings.push("fewer than 20 recorded sweeps; standard errors are unreliable".into());
    }

    Ok(ChainStats {
        kind: spec.kind().to_string(),
        big_n: spec.big_n(),
        estimates,
        pair_cov,
        acceptance,
        generator: GENERATOR,
        seed: cfg.seed,
        config: cfg.clone(),
        diagnostics: ChainDiagnostics {
            chain_means,
            chain_acceptance,
            split_max_z,
            warnings,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn jacobi(n: u64) -> EnsembleSpec {
        EnsembleSpec::JacobiGeneral {
            alpha: rat(1, 1),
            gamma: rat(1, 1),
            beta: rat(2, 1),
            big_n: n,
        }
    }

    #[test]
    fn config_validation() {
        let spec = jacobi(4);
        let ok = ChainConfig::for_spec(&spec, 100, 10, 2, 1).unwrap();
        assert!(ok.validate().is_ok());
        assert!(ChainConfig {
            burn_in: 100,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(ChainConfig {
            chains: 0,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(ChainConfig {
            step_scale: 0.0,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(mh_sample(&spec, &ok, 0).is_err());
    }

    #[test]
    fn reflection_stays_in_domain() {
        assert_eq!(reflect(-0.25, Domain::Unit), 0.25);
        assert_eq!(reflect(1.25, Domain::Unit), 0.75);
        assert_eq!(reflect(-3.5, Domain::Positive), 3.5);
        assert!((reflect(2.3, Domain::Unit) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn chain_seeds_differ() {
        let seeds: std::collections::BTreeSet<u64> = (0..16).map(|c| chain_seed(42, c)).collect();
        assert_eq!(seeds.len(), 16);
    }

    #[test]
    fn deterministic_given_seed() {
        let spec = jacobi(6);
        let cfg = ChainConfig::for_spec(&spec, 3_000, 300, 3, 7).unwrap();
        let a = mh_sample(&spec, &cfg, 3).unwrap();
        let b = mh_sample(&spec, &cfg, 3).unwrap();
        assert_eq!(a, b);
        let c = mh_sample(&spec, &ChainConfig { seed: 8, ..cfg }, 3).unwrap();
        assert_ne!(a.estimates, c.estimates);
    }

    #[test]
    fn symmetric_jacobi_mean_is_half() {
        let spec = jacobi(10);
        let cfg = ChainConfig::for_spec(&spec, 20_000, 2_000, 2, 3).unwrap();
        let stats = mh_sample(&spec, &cfg, 1).unwrap();
        let e = stats.estimate(1).unwrap();
        assert!(e.stderr > 0.0);
        assert!((e.mean - 0.5).abs() < 3.0 * e.stderr, "{e:?}");
        assert!(
            stats.diagnostics.split_max_z < 4.0,
            "{:?}",
            stats.diagnostics
        );
        assert!(
            stats.diagnostics.warnings.is_empty(),
            "{:?}",
            stats.diagnostics.warnings
        );
    }

    #[test]
    fn exponential_mean() {
        let spec = EnsembleSpec::Laguerre {
            alpha: rat(0, 1),
            epsilon: rat(1, 1),
            beta: rat(2, 1),
            big_n: 1,
        };
        let cfg = ChainConfig {
            step_scale: 1.5,
            ..ChainConfig::for_spec(&spec, 100_000, 1_000, 2, 11).unwrap()
        };
        let stats = mh_sample(&spec, &cfg, 2).unwrap();
        let e1 = stats.estimate(1).unwrap();
        assert!((e1.mean - 1.0).abs() < 3.0 * e1.stderr, "{e1:?}");
        let e2 = stats.estimate(2).unwrap();
        assert!((e2.mean - 2.0).abs() < 4.0 * e2.stderr, "{e2:?}");
        assert!(stats.pair_cov.is_none());
    }

    #[test]
    fn badly_tuned_step_warns() {
        let spec = jacobi(8);
        let cfg = ChainConfig {
            step_scale: 1e-6,
            ..ChainConfig::for_spec(&spec, 400, 100, 1, 5).unwrap()
        };
        let stats = mh_sample(&spec, &cfg, 1).unwrap();
        assert!(stats.acceptance > 0.95);
        assert_eq!(stats.diagnostics.warnings.len(), 1);
    }

    #[test]
    fn json_has_documented_fields() {
        let spec = jacobi(3);
        let cfg = ChainConfig::for_spec(&spec, 200, 50, 1, 9).unwrap();
        let v = serde_json::to_value(mh_sample(&spec, &cfg, 2).unwrap()).unwrap();
        for key in ["estimates", "pair_cov", "acceptance", "generator", "seed"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["estimates"][1]["n"], 2);
        assert_eq!(v["seed"], 9);
    }
}
