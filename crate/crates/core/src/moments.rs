//! Large-N moments `<T^n>` by four independent routes.
//!
//! * [`Backend::Recurrence`]: iterate the ensemble's recurrence in the
//!   convolution `D_n = sum_{a=1}^{n-1} <T^(n-a)><T^a>`.
//! * [`Backend::ClosedForm`]: the explicit binomial/Catalan sums.
//! * [`Backend::Series`]: coefficients of the generating function.
//! * [`Backend::Paths`]: weighted lattice-path counts from the DP, times the
//!   terminal `A2` step and (for the Jacobi cases) the binomial slot factors.
//!
//! All four are exact and must agree to the last bit.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::combinatorics::{
    binomial, catalan, count_weighted_paths, motzkin_count, schroder_sequence, Direction,
    PathModel, Step, StepLabel,
};
use crate::ensembles::{a_params, AParams, EnsembleKind, EnsembleSpec};
use crate::error::Error;
use crate::genfunc::generating_function;
use crate::rational::Rational;

/// Significant digits of the `value_float` rendering.
pub const FLOAT_DIGITS: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Recurrence,
    #[serde(rename = "closed")]
    ClosedForm,
    Series,
    Paths,
}

impl Backend {
    pub const ALL: [Backend; 4] = [
        Backend::Recurrence,
        Backend::ClosedForm,
        Backend::Series,
        Backend::Paths,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Recurrence => "recurrence",
            Backend::ClosedForm => "closed",
            Backend::Series => "series",
            Backend::Paths => "paths",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentResult {
    pub kind: EnsembleKind,
    pub n: usize,
    pub backend: Backend,
    pub value: Rational,
}

impl Serialize for MomentResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MomentResult", 5)?;
        s.serialize_field("kind", &self.kind)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("backend", &self.backend)?;
        s.serialize_field("value", &self.value)?;
        s.serialize_field("value_float", &self.value.to_decimal(FLOAT_DIGITS))?;
        s.end()
    }
}

/// `D_n` for `n = prefix.len()`, given `<T^0> .. <T^(n-1)>`.
pub fn dseq_extend(prefix: &[Rational]) -> Result<Rational, Error> {
    if prefix.is_empty() {
        return Err(Error::Other("moment prefix must contain <T^0>".into()));
    }
    let n = prefix.len();
    Ok((1..n).map(|a| &prefix[n - a] * &prefix[a]).sum())
}

/// Values `D_0 ..= D_{n_max}` for a full moment table `<T^0> ..= <T^{n_max}>`.
pub fn dseq(moments: &[Rational]) -> Vec<Rational> {
    (0..moments.len())
        .map(|n| (1..n).map(|a| &moments[n - a] * &moments[a]).sum())
        .collect()
}

/// `sum_{k=0}^{n-2} A3^k D_{n-k-shift}`.
fn geometric_tail(a3: &Rational, d: &[Rational], n: usize, shift: usize) -> Rational {
    let mut acc = Rational::zero();
    let mut power = Rational::one();
    for k in 0..n.saturating_sub(1) {
        acc += &power * &d[n - k - shift];
        power *= a3;
    }
    acc
}

/// `<T^0> ..= <T^{n_max}>` by iterating the recurrence, bottom-up.
pub fn recurrence_sequence(spec: &EnsembleSpec, n_max: usize) -> Result<Vec<Rational>, Error> {
    let a = a_params(spec)?;
    let AParams { a1, a2, a3, .. } = &a;
    let mut m = vec![Rational::one()];
    let mut d = vec![Rational::zero()];
    for n in 1..=n_max {
        d.push(dseq_extend(&m)?);
        let value = if n == 1 {
            a2.clone()
        } else {
            let lead = a2 * a3.pow(n as u32 - 1);
            match spec.kind() {
                EnsembleKind::JacobiGamma1 => a2 - a1 * &d[n],
                EnsembleKind::Laguerre => lead + a1 * geometric_tail(a3, &d, n, 1),
                EnsembleKind::DelayTimes => lead + a1 * geometric_tail(a3, &d, n, 0),
                EnsembleKind::JacobiGeneral => {
                    lead + (Rational::one() - a3) * a1 * geometric_tail(a3, &d, n, 1) - a1 * &d[n]
                }
            }
        };
        m.push(value);
    }
    Ok(m)
}

pub fn moment_recurrence(spec: &EnsembleSpec, n: usize) -> Result<Rational, Error> {
    Ok(recurrence_sequence(spec, n)?.swap_remove(n))
}

fn big(v: num_bigint::BigUint) -> Rational {
    Rational::from(v)
}

fn sign(p: usize) -> Rational {
    if p.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Upper limit of the inner `k` sum of the general Jacobi closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KLimit {
    /// `⌊(m+1)/2⌋`, as the formula is usually written.
    Printed,
    /// `⌊m/2⌋`; the extra term carries `C(m-k, k) = 0`.
    Tight,
}

/// `A2 sum_p C(n-1, p) (-1)^p C_p (A1 A2)^p`.
pub fn closed_jacobi_gamma1(a: &AParams, n: usize) -> Rational {
    let x = &a.a1 * &a.a2;
    let sum: Rational = (0..n)
        .map(|p| {
            sign(p) * big(binomial(n as u64 - 1, p as u64) * catalan(p as u64)) * x.pow(p as u32)
        })
        .sum();
    &a.a2 * sum
}

/// General Jacobi closed form in terms of `A1, A2, A3`.
pub fn closed_jacobi_general(a: &AParams, n: usize, limit: KLimit) -> Rational {
    let x = &a.a1 * &a.a2;
    let one_minus_a3 = Rational::one() - &a.a3;
    let mut total = Rational::zero();
    for m in 0..n {
        let k_max = match limit {
            KLimit::Printed => m.div_ceil(2),
            KLimit::Tight => m / 2,
        };
        let inner: Rational = (0..=k_max)
            .map(|k| {
                let c = binomial((m - k) as u64, k as u64) * catalan((m - k) as u64);
                big(c) * x.pow((m - k) as u32) * one_minus_a3.pow(k as u32)
            })
            .sum();
        total +=
            sign(m) * big(binomial(n as u64 - 1, m as u64)) * a.a3.pow((n - 1 - m) as u32) * inner;
    }
    &a.a2 * total
}

/// The same sum with `A4` kept as its own variable:
/// `(-A1 A2)^(m-2k) (A4 A2)^k` in place of `(-1)^m (A1 A2)^(m-k) (1-A3)^k`.
pub fn closed_jacobi_a4(a: &AParams, n: usize) -> Rational {
    let fall_pair = -(&a.a1 * &a.a2);
    let rise_pair = &a.a4 * &a.a2;
    let mut total = Rational::zero();
    for m in 0..n {
        let inner: Rational = (0..=m / 2)
            .map(|k| {
                let c = binomial((m - k) as u64, k as u64) * catalan((m - k) as u64);
                big(c) * fall_pair.pow((m - 2 * k) as u32) * rise_pair.pow(k as u32)
            })
            .sum();
        total += big(binomial(n as u64 - 1, m as u64)) * a.a3.pow((n - 1 - m) as u32) * inner;
    }
    &a.a2 * total
}

/// `A2 sum_m M_{n-1,m} (A1 A2)^m A3^(n-1-2m)`.
pub fn closed_laguerre(a: &AParams, n: usize) -> Rational {
    let x = &a.a1 * &a.a2;
    let sum: Rational = (0..=(n - 1) / 2)
        .map(|m| {
            big(motzkin_count(n as u64 - 1, m as u64))
                * x.pow(m as u32)
                * a.a3.pow((n - 1 - 2 * m) as u32)
        })
        .sum();
    &a.a2 * sum
}

/// `R_{n-1}·τ_D^n`: the Schröder number indexed so that `n = 1..5` gives
/// 1, 2, 6, 22, 90, matching the recurrence.
pub fn closed_delay_times(a: &AParams, n: usize) -> Rational {
    let r = schroder_sequence(n as u64 - 1).pop().expect("nonempty");
    big(r) * a.a2.pow(n as u32)
}

pub fn moment_closed_form(spec: &EnsembleSpec, n: usize) -> Result<Rational, Error> {
    if n == 0 {
        return Ok(Rational::one());
    }
    let a = a_params(spec)?;
    closed_form_for(spec.kind(), &a, n)
}

fn closed_form_for(kind: EnsembleKind, a: &AParams, n: usize) -> Result<Rational, Error> {
    Ok(match kind {
        EnsembleKind::JacobiGamma1 => closed_jacobi_gamma1(a, n),
        EnsembleKind::Laguerre => closed_laguerre(a, n),
        EnsembleKind::DelayTimes => closed_delay_times(a, n),
        EnsembleKind::JacobiGeneral => {
            let printed = closed_jacobi_general(a, n, KLimit::Printed);
            let a4_form = closed_jacobi_a4(a, n);
            if printed != a4_form {
                return Err(Error::Other(format!(
                    "closed forms disagree at n = {n}: {printed} vs {a4_form}"
                )));
            }
            printed
        }
    })
}

pub fn moment_series(spec: &EnsembleSpec, n: usize) -> Result<Rational, Error> {
    Ok(generating_function(spec, n)?.into_coeffs().swap_remove(n))
}

/// Number of ways to place the `n - 1 - m` horizontal `A3` steps among the
/// `n - 1` horizontal units (Jacobi cases), or of ordered partitions of `n`
/// into `m + 1` parts (transport case); both are `C(n-1, m)`.
pub fn slot_factor(n: usize, m: usize) -> Rational {
    big(binomial(n as u64 - 1, m as u64))
}

/// Transport paths: rises carry `-A1`, falls `A2`.
fn transport_pairs(a: &AParams, pairs: usize) -> Rational {
    count_weighted_paths(&PathModel::dyck(pairs, -&a.a1, a.a2.clone()))
}

/// Jacobi paths without horizontal steps: vertical `-A1`, fall `A2`, rise `A4`,
/// spanning `m` horizontal units.
fn jacobi_core_paths(a: &AParams, m: usize) -> Rational {
    let model = PathModel::new(
        vec![
            Step::new(Direction::Vertical, -&a.a1, StepLabel::A1),
            Step::new(Direction::Down, a.a2.clone(), StepLabel::A2),
            Step::new(Direction::Up, a.a4.clone(), StepLabel::A4),
        ],
        0,
        0,
        0,
        m,
    )
    .expect("ground-level model is valid");
    count_weighted_paths(&model)
}

fn paths_for(kind: EnsembleKind, a: &AParams, n: usize) -> Rational {
    let len = n - 1;
    let body = match kind {
        EnsembleKind::JacobiGamma1 => (0..n)
            .map(|p| slot_factor(n, p) * transport_pairs(a, p))
            .sum(),
        EnsembleKind::Laguerre => count_weighted_paths(&PathModel::motzkin(
            len,
            a.a1.clone(),
            a.a2.clone(),
            a.a3.clone(),
        )),
        EnsembleKind::DelayTimes => count_weighted_paths(&PathModel::delay(
            len,
            a.a1.clone(),
            a.a2.clone(),
            a.a3.clone(),
        )),
        EnsembleKind::JacobiGeneral => (0..n)
            .map(|m| slot_factor(n, m) * a.a3.pow((len - m) as u32) * jacobi_core_paths(a, m))
            .sum(),
    };
    // the terminal A2 step that leaves the last part
    &a.a2 * body
}

pub fn moment_paths(spec: &EnsembleSpec, n: usize) -> Result<Rational, Error> {
    if n == 0 {
        return Ok(Rational::one());
    }
    let a = a_params(spec)?;
    Ok(paths_for(spec.kind(), &a, n))
}

pub fn moment(spec: &EnsembleSpec, n: usize, backend: Backend) -> Result<Rational, Error> {
    match backend {
        Backend::Recurrence => moment_recurrence(spec, n),
        Backend::ClosedForm => moment_closed_form(spec, n),
        Backend::Series => moment_series(spec, n),
        Backend::Paths => moment_paths(spec, n),
    }
}

/// `<T^1> ..= <T^{n_max}>` from one backend.
pub fn backend_sequence(
    spec: &EnsembleSpec,
    n_max: usize,
    backend: Backend,
) -> Result<Vec<Rational>, Error> {
    let a = a_params(spec)?;
    let kind = spec.kind();
    match backend {
        Backend::Recurrence => Ok(recurrence_sequence(spec, n_max)?.split_off(1)),
        Backend::Series => Ok(generating_function(spec, n_max)?.into_coeffs().split_off(1)),
        Backend::ClosedForm => (1..=n_max).map(|n| closed_form_for(kind, &a, n)).collect(),
        Backend::Paths => Ok((1..=n_max).map(|n| paths_for(kind, &a, n)).collect()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub n: usize,
    pub reference: Backend,
    pub reference_value: Rational,
    pub backend: Backend,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub results: Vec<MomentResult>,
    pub equal: bool,
    pub first_discrepancy: Option<Discrepancy>,
}

/// Runs the requested backends for `n = 1..=n_max` and compares each against
/// the first one. A disagreement is reported, not raised.
pub fn cross_check(
    spec: &EnsembleSpec,
    n_max: usize,
    backends: &[Backend],
) -> Result<CrossCheck, Error> {
    let columns = backends
        .iter()
        .map(|&b| backend_sequence(spec, n_max, b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(compare_columns(spec.kind(), backends, columns))
}

fn compare_columns(
    kind: EnsembleKind,
    backends: &[Backend],
    columns: Vec<Vec<Rational>>,
) -> CrossCheck {
    let n_max = columns.first().map_or(0, Vec::len);
    let mut first_discrepancy = None;
    'scan: for i in 0..n_max {
        for (col, &b) in columns.iter().zip(backends).skip(1) {
            if col[i] != columns[0][i] {
                first_discrepancy = Some(Discrepancy {
                    n: i + 1,
                    reference: backends[0],
                    reference_value: columns[0][i].clone(),
                    backend: b,
                    value: col[i].clone(),
                });
                break 'scan;
            }
        }
    }
    let mut results = Vec::with_capacity(n_max * backends.len());
    for i in 0..n_max {
        for (col, &backend) in columns.iter().zip(backends) {
            results.push(MomentResult {
                kind,
                n: i + 1,
                backend,
                value: col[i].clone(),
            });
        }
    }
    CrossCheck {
        results,
        equal: first_discrepancy.is_none(),
        first_discrepancy,
    }
}

pub fn moments_all_backends(spec: &EnsembleSpec, n_max: usize) -> Result<CrossCheck, Error> {
    cross_check(spec, n_max, &Backend::ALL)
}
