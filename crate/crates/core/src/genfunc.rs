//! Moment generating functions `F(x) = sum_n <T^n> x^n` as truncated series.
//!
//! Every ensemble's `F` satisfies a quadratic equation, normalized here to
//!
//! ```text
//! F = p0 + p1·(F - 1) + p2·(F - 1)^2
//! ```
//!
//! with polynomial `p0, p1, p2` (denominators such as `1 - x` or `1 - A3·x`
//! are cleared first). The solution with `F(0) = 1` is built coefficient by
//! coefficient, which picks the right branch of the quadratic automatically.

use crate::ensembles::{a_params, AParams, EnsembleKind, EnsembleSpec};
use crate::error::GenFuncError;
use crate::rational::Rational;
use crate::series::PowerSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFE {
    pub p0: PowerSeries,
    pub p1: PowerSeries,
    pub p2: PowerSeries,
}

impl QuadraticFE {
    fn order(&self) -> usize {
        self.p0.order().min(self.p1.order()).min(self.p2.order())
    }

    /// `p0 + p1·(F-1) + p2·(F-1)^2 - F`, truncated at the common order.
    pub fn residual(&self, f: &PowerSeries) -> PowerSeries {
        let g = f - &PowerSeries::one(f.order());
        let g2 = g.mul(&g);
        let rhs = &(&self.p0 + &self.p1.mul(&g)) + &self.p2.mul(&g2);
        &rhs - f
    }

    /// `A2·x + A3·x·(F-1)`, the part shared by every ensemble.
    fn linear_part(a: &AParams, order: usize) -> (PowerSeries, PowerSeries) {
        let p0 = PowerSeries::from_coeffs([Rational::one(), a.a2.clone()], order);
        let p1 = PowerSeries::monomial(a.a3.clone(), 1, order);
        (p0, p1)
    }

    /// `(1 - A3 x)(F - 1) = A2 x - A1 (1 - x)(F - 1)^2`; with `A3 = 1` this is
    /// also the transport (γ = 1) equation.
    pub fn jacobi(a: &AParams, order: usize) -> Self {
        let (p0, p1) = Self::linear_part(a, order);
        let p2 = PowerSeries::from_coeffs([-&a.a1, a.a1.clone()], order);
        QuadraticFE { p0, p1, p2 }
    }

    /// `(1 - A3 x)(F - 1) = A2 x + A1 x (F - 1)^2`.
    pub fn laguerre(a: &AParams, order: usize) -> Self {
        let (p0, p1) = Self::linear_part(a, order);
        let p2 = PowerSeries::monomial(a.a1.clone(), 1, order);
        QuadraticFE { p0, p1, p2 }
    }

    /// `(1 - A3 x)(F - 1) = A2 x + A1 (F - 1)^2`.
    pub fn delay_times(a: &AParams, order: usize) -> Self {
        let (p0, p1) = Self::linear_part(a, order);
        let p2 = PowerSeries::constant(a.a1.clone(), order);
        QuadraticFE { p0, p1, p2 }
    }

    pub fn for_kind(kind: EnsembleKind, a: &AParams, order: usize) -> Self {
        match kind {
            EnsembleKind::JacobiGamma1 | EnsembleKind::JacobiGeneral => Self::jacobi(a, order),
            EnsembleKind::Laguerre => Self::laguerre(a, order),
            EnsembleKind::DelayTimes => Self::delay_times(a, order),
        }
    }
}

/// The power-series solution with `F(0) = 1`.
///
/// Writing `G = F - 1`, the coefficient of `x^n` gives
/// `(1 - p1_0)·g_n = p0_n + sum_{j≥1} p1_j g_{n-j} + sum_j p2_j [G^2]_{n-j}`,
/// and `[G^2]_k` only involves `g_1 .. g_{k-1}`.
pub fn solve_quadratic_fe(eq: &QuadraticFE, order: usize) -> Result<PowerSeries, GenFuncError> {
    if eq.p0.coeffs()[0] != Rational::one() {
        return Err(GenFuncError::BadConstantTerm);
    }
    if order > eq.order() {
        return Err(GenFuncError::OrderTooHigh {
            requested: order,
            available: eq.order(),
        });
    }
    let pivot = Rational::one() - &eq.p1.coeffs()[0];
    if pivot.is_zero() {
        return Err(GenFuncError::Singular);
    }
    let inv_pivot = pivot.recip()?;
    let (p0, p1, p2) = (eq.p0.coeffs(), eq.p1.coeffs(), eq.p2.coeffs());

    let mut g: Vec<Rational> = vec![Rational::zero()];
    let mut g_sq: Vec<Rational> = vec![Rational::zero()];
    for n in 1..=order {
        // [G^2]_n needs only g_1..g_{n-1}, all known
        g_sq.push((1..n).map(|a| &g[a] * &g[n - a]).sum());
        let mut acc = p0[n].clone();
        for j in 1..=n {
            acc += &p1[j] * &g[n - j];
        }
        for j in 0..=n {
            acc += &p2[j] * &g_sq[n - j];
        }
        g.push(acc * &inv_pivot);
    }
    g[0] = Rational::one();
    Ok(PowerSeries::from_coeffs(g, order))
}

/// Transport case: the closed square-root form
/// `F = 1 - 1/(2A1) + sqrt(1 + 4 A1 A2 x / (1 - x)) / (2A1)`,
/// cross-checked against the functional-equation solution.
pub fn gf_jacobi_gamma1(a: &AParams, order: usize) -> Result<PowerSeries, GenFuncError> {
    if a.a1.is_zero() {
        return Err(GenFuncError::Arith(
            crate::error::ArithError::DivisionByZero,
        ));
    }
    let closed = gamma1_sqrt_form(a, order)?;
    let mut eq_params = a.clone();
    eq_params.a3 = Rational::one();
    let solved = solve_quadratic_fe(&QuadraticFE::jacobi(&eq_params, order), order)?;
    if let Some(k) = (0..=order).find(|&k| closed.coeffs()[k] != solved.coeffs()[k]) {
        return Err(GenFuncError::Mismatch {
            power: k,
            closed: closed.coeffs()[k].to_string(),
            solved: solved.coeffs()[k].to_string(),
        });
    }
    Ok(solved)
}

/// `1 + 4 A1 A2 x / (1 - x)`, the radicand of the transport closed form.
pub fn gamma1_radicand(a: &AParams, order: usize) -> Result<PowerSeries, GenFuncError> {
    let four_a1a2 = Rational::from_integer(4) * &a.a1 * &a.a2;
    let ratio = PowerSeries::monomial(four_a1a2, 1, order).div(&PowerSeries::from_coeffs(
        [Rational::one(), -Rational::one()],
        order,
    ))?;
    Ok(&PowerSeries::one(order) + &ratio)
}

fn gamma1_sqrt_form(a: &AParams, order: usize) -> Result<PowerSeries, GenFuncError> {
    let root = gamma1_radicand(a, order)?.sqrt()?;
    let inv_2a1 = (Rational::from_integer(2) * &a.a1).recip()?;
    let shift = PowerSeries::constant(Rational::one() - &inv_2a1, order);
    Ok(&shift + &root.scale(&inv_2a1))
}

pub fn gf_laguerre(a: &AParams, order: usize) -> Result<PowerSeries, GenFuncError> {
    solve_quadratic_fe(&QuadraticFE::laguerre(a, order), order)
}

pub fn gf_jacobi_general(a: &AParams, order: usize) -> Result<PowerSeries, GenFuncError> {
    solve_quadratic_fe(&QuadraticFE::jacobi(a, order), order)
}

pub fn gf_delay_times(a: &AParams, order: usize) -> Result<PowerSeries, GenFuncError> {
    solve_quadratic_fe(&QuadraticFE::delay_times(a, order), order)
}

/// Generating function of the given ensemble through `x^order`.
pub fn generating_function(spec: &EnsembleSpec, order: usize) -> Result<PowerSeries, GenFuncError> {
    let a = a_params(spec)?;
    match spec.kind() {
        EnsembleKind::JacobiGamma1 => gf_jacobi_gamma1(&a, order),
        EnsembleKind::JacobiGeneral => gf_jacobi_general(&a, order),
        EnsembleKind::Laguerre => gf_laguerre(&a, order),
        EnsembleKind::DelayTimes => gf_delay_times(&a, order),
    }
}
