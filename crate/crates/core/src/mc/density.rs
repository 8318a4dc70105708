//! Unnormalized log-densities of the finite-N eigenvalue distributions.

use crate::ensembles::EnsembleSpec;
use crate::error::McError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    /// (0, 1)
    Unit,
    /// (0, ∞)
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Weight {
    /// `T^a (1-T)^b`
    Jacobi { a: f64, b: f64 },
    /// `T^a e^{-ε T}`
    Laguerre { a: f64, eps: f64 },
    /// `T^a e^{-ε / T}`
    Inverse { a: f64, eps: f64 },
}

/// `β·Σ_{i<j} log|T_i - T_j| + Σ_i w(T_i)` for one ensemble.
#[derive(Clone, Debug, PartialEq)]
pub struct LogDensity {
    beta: f64,
    weight: Weight,
}

fn xlogy(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

impl LogDensity {
    pub fn new(spec: &EnsembleSpec) -> Result<Self, McError> {
        spec.validate()?;
        let beta = spec.beta().to_f64();
        let n = spec.big_n() as f64;
        let weight = match spec {
            EnsembleSpec::JacobiGamma1 { alpha, .. } => Weight::Jacobi {
                a: alpha.to_f64() - 1.0,
                b: 0.0,
            },
            EnsembleSpec::JacobiGeneral { alpha, gamma, .. } => Weight::Jacobi {
                a: alpha.to_f64() - 1.0,
                b: gamma.to_f64() - 1.0,
            },
            EnsembleSpec::Laguerre { alpha, epsilon, .. } => Weight::Laguerre {
                a: alpha.to_f64(),
                eps: epsilon.to_f64(),
            },
            EnsembleSpec::DelayTimes { tau_d, .. } => {
                let (a, eps) = delay_exponents(beta, n, tau_d.to_f64());
                Weight::Inverse { a, eps }
            }
        };
        Ok(LogDensity { beta, weight })
    }

    pub fn domain(&self) -> Domain {
        match self.weight {
            Weight::Jacobi { .. } => Domain::Unit,
            _ => Domain::Positive,
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn in_domain(&self, t: f64) -> bool {
        match self.domain() {
            Domain::Unit => t > 0.0 && t < 1.0,
            Domain::Positive => t > 0.0 && t.is_finite(),
        }
    }

    /// Single-particle log-weight; `-∞` outside the open domain.
    pub fn log_weight(&self, t: f64) -> f64 {
        if !self.in_domain(t) {
            return f64::NEG_INFINITY;
        }
        match self.weight {
            Weight::Jacobi { a, b } => xlogy(a, t) + xlogy(b, 1.0 - t),
            Weight::Laguerre { a, eps } => xlogy(a, t) - eps * t,
            Weight::Inverse { a, eps } => xlogy(a, t) - eps / t,
        }
    }

    pub fn eval(&self, ts: &[f64]) -> f64 {
        let mut total = 0.0;
        for (i, &t) in ts.iter().enumerate() {
            let w = self.log_weight(t);
            if w == f64::NEG_INFINITY {
                return w;
            }
            total += w;
            for &u in &ts[i + 1..] {
                let gap = (t - u).abs();
                if gap == 0.0 {
                    return f64::NEG_INFINITY;
                }
                total += self.beta * gap.ln();
            }
        }
        total
    }

    /// Change in log-density when coordinate `i` moves from `ts[i]` to `t`.
    pub fn delta(&self, ts: &[f64], i: usize, t: f64) -> f64 {
        let w_new = self.log_weight(t);
        if w_new == f64::NEG_INFINITY {
            return w_new;
        }
        let old = ts[i];
        // One log of a product instead of 2(N-1) logs; fall back to the sum
        // if the product leaves the normal range.
        let mut ratio = 1.0f64;
        for (j, &u) in ts.iter().enumerate() {
            if j != i {
                ratio *= (t - u) / (old - u);
            }
        }
        let vandermonde = if ratio.is_normal() {
            ratio.abs().ln()
        } else {
            let mut acc = 0.0;
            for (j, &u) in ts.iter().enumerate() {
                if j != i {
                    acc += (t - u).abs().ln() - (old - u).abs().ln();
                }
            }
            acc
        };
        if vandermonde.is_nan() {
            return f64::NEG_INFINITY;
        }
        self.beta * vandermonde + w_new - self.log_weight(old)
    }
}

/// Finite-N exponents of the delay-time weight `T^α e^{-ε/T}`:
/// `α = -3βN/2 + β - 2`, `ε = βNτ_D/2`.
pub fn delay_exponents(beta: f64, n: f64, tau_d: f64) -> (f64, f64) {
    (-1.5 * beta * n + beta - 2.0, 0.5 * beta * n * tau_d)
}

/// Numerically integrates the single-particle delay-time weight at `N = 1`
/// and checks that the integral converges. Returns its value.
pub fn delay_weight_integral(beta: f64, tau_d: f64) -> Result<f64, McError> {
    let (a, eps) = delay_exponents(beta, 1.0, tau_d);
    if eps.is_nan() || eps <= 0.0 {
        return Err(McError::NotIntegrable(format!(
            "ε = {eps} must be positive"
        )));
    }
    // In s = ln T the integrand is exp((a + 1)s - ε e^{-s}).
    let f = |s: f64| ((a + 1.0) * s - eps * (-s).exp()).exp();
    let (lo, hi, steps) = (-60.0f64, 60.0f64, 24_000usize);
    let h = (hi - lo) / steps as f64;
    let mut total = 0.5 * (f(lo) + f(hi));
    for k in 1..steps {
        total += f(lo + k as f64 * h);
    }
    total *= h;
    let tail = f(lo).max(f(hi));
    if !total.is_finite() || total <= 0.0 || tail > 1e-12 * total {
        return Err(McError::NotIntegrable(format!(
            "T^{a} e^(-{eps}/T) does not decay at the ends of (0, ∞)"
        )));
    }
    Ok(total)
}

/// Log-density of `spec` at `ts`, normalization omitted.
pub fn log_density(spec: &EnsembleSpec, ts: &[f64]) -> Result<f64, McError> {
    Ok(LogDensity::new(spec)?.eval(ts))
}
