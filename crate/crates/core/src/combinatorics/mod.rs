//! Closed-form path counts and the weighted lattice-path machinery.

mod bijection;
mod paths;

pub use bijection::{
    enumerate_schroder_paths, schroder_bijection, schroder_bijection_inverse, SchroderPath,
    SchroderStep,
};
pub use paths::{
    count_weighted_paths, enumerate_paths, Direction, Path, PathModel, Step, StepLabel,
    MAX_ENUMERATION_STEPS,
};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `n choose k`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc·(n-i)/(i+1) is C(n, i+1)
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Catalan number `C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// Number of Motzkin paths of length `n` with exactly `m` rising steps,
/// `C(n, 2m)·Catalan(m)`.
pub fn motzkin_count(n: u64, m: u64) -> BigUint {
    if 2 * m > n {
        return BigUint::zero();
    }
    binomial(n, 2 * m) * catalan(m)
}

/// Large Schröder numbers 1, 2, 6, 22, 90, ... via
/// `R_n = R_{n-1} + sum_{k<n} R_k R_{n-1-k}`.
pub fn schroder(n: u64) -> BigUint {
    schroder_sequence(n).pop().expect("nonempty")
}

/// `R_0 ..= R_n`.
pub fn schroder_sequence(n: u64) -> Vec<BigUint> {
    let mut r: Vec<BigUint> = vec![BigUint::one()];
    for i in 1..=n as usize {
        let conv: BigUint = (0..i).map(|k| &r[k] * &r[i - 1 - k]).sum();
        let next = &r[i - 1] + conv;
        r.push(next);
    }
    r
}
