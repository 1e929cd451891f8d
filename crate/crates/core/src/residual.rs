//! Residual Tsallis entropy: the entropy of the remaining lifetime
//! [X − t | X > t] for single variables, order statistics and designs.
//!
//! In the quantile domain the residual factor of a unit with density
//! proportional to u^p(1−u)^q f(F⁻¹(u)) is the tail integral from F(t) to 1
//! divided by the unit's survival at t raised to α.

use crate::dist::DistributionModel;
use crate::error::{Error, Result};
use crate::special::{self, UnitPoint};
use crate::tsallis::{
    compose_factors, density_moment, tsallis_compose, Design, DesignSpec, EntropyOrder, EntropyReport, Route,
};
use rayon::prelude::*;
use serde::Serialize;

/// A lifetime law together with a time t ≥ 0 at which it still survives.
#[derive(Debug, Clone)]
pub struct ResidualContext {
    model: DistributionModel,
    t: f64,
    at: UnitPoint,
}

impl ResidualContext {
    pub fn new(model: &DistributionModel, t: f64) -> Result<Self> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::Domain(format!("residual time must be finite and nonnegative, got {t}")));
        }
        let at = model.cdf_point(t);
        if at.v <= 0.0 {
            return Err(Error::Domain(format!("survival at t = {t} is zero")));
        }
        Ok(Self { model: model.clone(), t, at })
    }

    pub fn model(&self) -> &DistributionModel {
        &self.model
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// F(t) with its complement.
    pub fn level(&self) -> UnitPoint {
        self.at
    }
}

fn divide(r: EntropyReport, d: f64) -> EntropyReport {
    EntropyReport { value: r.value / d, error_estimate: r.error_estimate / d, ..r }
}

/// Survival of X_(i:n) at t in its Beta and binomial forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderStatSurvival {
    /// B̄_{F(t)}(i, n−i+1)/B(i, n−i+1)
    pub beta_form: f64,
    /// Σ_{j<i} C(n,j) F^j F̄^{n−j}
    pub binomial_form: f64,
}

impl OrderStatSurvival {
    pub fn value(&self) -> f64 {
        self.beta_form
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i >= 1 && i <= n {
        Ok(())
    } else {
        Err(Error::Domain(format!("order statistic index {i} outside 1..={n}")))
    }
}

pub fn order_stat_survival(model: &DistributionModel, i: usize, n: usize, t: f64) -> Result<OrderStatSurvival> {
    check_index(i, n)?;
    let p = model.cdf_point(t);
    let (fi, fnn) = (i as f64, n as f64);
    let beta_form =
        special::incomplete_beta_upper_at(p, fi, fnn - fi + 1.0)? / special::beta_fn(fi, fnn - fi + 1.0)?;
    let mut binomial_form = 0.0;
    let mut choose = 1.0;
    for j in 0..i {
        binomial_form += choose * p.u.powi(j as i32) * p.v.powi((n - j) as i32);
        choose *= (n - j) as f64 / (j + 1) as f64;
    }
    Ok(OrderStatSurvival { beta_form, binomial_form })
}

/// Residual factor ∫ₜ^∞ f_{(i:n)}^α dx / F̄_{(i:n)}(t)^α.
fn residual_factor(ctx: &ResidualContext, alpha: EntropyOrder, i: usize, n: usize, route: Route) -> Result<EntropyReport> {
    check_index(i, n)?;
    let a = alpha.alpha();
    let (fi, fnn) = (i as f64, n as f64);
    let tail = special::incomplete_beta_upper_at(ctx.at, fi, fnn - fi + 1.0)?;
    if tail <= 0.0 {
        return Err(Error::Domain(format!("X_({i}:{n}) has zero survival at t = {}", ctx.t)));
    }
    let m = density_moment(&ctx.model, a - 1.0, a * (fi - 1.0), a * (fnn - fi), ctx.at, route)?;
    Ok(divide(m, tail.powf(a)))
}

/// Per-unit residual factors of a design in unit order.
pub fn residual_factors(
    ctx: &ResidualContext,
    alpha: EntropyOrder,
    spec: DesignSpec,
    route: Route,
) -> Result<Vec<EntropyReport>> {
    match spec.design {
        Design::Srs => Ok(vec![residual_factor(ctx, alpha, 1, 1, route)?; spec.n]),
        Design::Rss => (1..=spec.n).map(|i| residual_factor(ctx, alpha, i, spec.n, route)).collect(),
        Design::Mrssu => (1..=spec.n).map(|i| residual_factor(ctx, alpha, i, i, route)).collect(),
    }
}

/// S_α(design; t) through the requested route.
pub fn residual_design(
    ctx: &ResidualContext,
    alpha: EntropyOrder,
    spec: DesignSpec,
    route: Route,
) -> Result<EntropyReport> {
    Ok(compose_factors(&residual_factors(ctx, alpha, spec, route)?, alpha))
}

/// S_α(X; t) = (∫ₜ^∞ f^α/F̄^α(t) dx − 1)/(1 − α).
pub fn residual_tsallis(ctx: &ResidualContext, alpha: EntropyOrder) -> Result<EntropyReport> {
    residual_design(ctx, alpha, DesignSpec::srs(1)?, Route::Auto)
}

/// Same contract as [`tsallis_compose`].
pub fn residual_compose(s1: f64, s2: f64, alpha: EntropyOrder) -> f64 {
    tsallis_compose(s1, s2, alpha)
}

/// S_α(X_(i:n); t).
pub fn residual_order_stat(
    model: &DistributionModel,
    alpha: EntropyOrder,
    i: usize,
    n: usize,
    t: f64,
) -> Result<EntropyReport> {
    let ctx = ResidualContext::new(model, t)?;
    Ok(compose_factors(&[residual_factor(&ctx, alpha, i, n, Route::Auto)?], alpha))
}

pub fn residual_srs(model: &DistributionModel, alpha: EntropyOrder, n: usize, t: f64) -> Result<EntropyReport> {
    residual_design(&ResidualContext::new(model, t)?, alpha, DesignSpec::srs(n)?, Route::Auto)
}

/// Composition of S_α(X_(i:i); t) over i = 1..n.
pub fn residual_mrssu(model: &DistributionModel, alpha: EntropyOrder, n: usize, t: f64) -> Result<EntropyReport> {
    residual_design(&ResidualContext::new(model, t)?, alpha, DesignSpec::mrssu(n)?, Route::Auto)
}

/// δ_t = S_α(MRSSU; t) − S_α(SRS; t) per grid point.
pub fn residual_delta(
    model: &DistributionModel,
    alpha: EntropyOrder,
    n: usize,
    t_grid: &[f64],
) -> Vec<(f64, Result<f64>)> {
    t_grid
        .par_iter()
        .map(|&t| {
            let d = residual_mrssu(model, alpha, n, t)
                .and_then(|m| Ok(m.value - residual_srs(model, alpha, n, t)?.value));
            (t, d)
        })
        .collect()
}

/// n = 2 residual entropies of the two designs and their difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualPair {
    pub srs: f64,
    pub mrssu: f64,
    pub delta: f64,
}

fn check_unit_time(t: f64) -> Result<()> {
    if (0.0..1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::Domain(format!("uniform(0,1) residual time must lie in [0, 1), got {t}")))
    }
}

/// The uniform(0, 1) n = 2 forms as stated, with the MRSSU term
/// 2^{α−1}(1+t)^{1−α}(1−t)^{2−2α}.
pub fn uniform_residual_stated(alpha: EntropyOrder, t: f64) -> Result<ResidualPair> {
    check_unit_time(t)?;
    let a = alpha.alpha();
    let c = alpha.complement();
    let srs_factor = (1.0 - t).powf(2.0 - 2.0 * a);
    let mrssu_factor = 2f64.powf(a - 1.0) * (1.0 + t).powf(1.0 - a) * srs_factor;
    Ok(ResidualPair {
        srs: (srs_factor - 1.0) / c,
        mrssu: (mrssu_factor - 1.0) / c,
        delta: srs_factor / (a - 1.0) * (1.0 - 2f64.powf(a - 1.0) * (1.0 + t).powf(1.0 - a)),
    })
}

/// The uniform(0, 1) n = 2 forms rederived from the order-statistic
/// residual formula.
pub fn uniform_residual_closed(alpha: EntropyOrder, t: f64) -> Result<ResidualPair> {
    check_unit_time(t)?;
    let a = alpha.alpha();
    let c = alpha.complement();
    let single = (1.0 - t).powf(1.0 - a);
    let max2 = 2f64.powf(a) * (1.0 - t.powf(a + 1.0)) / ((a + 1.0) * (1.0 - t * t).powf(a));
    let srs = (single * single - 1.0) / c;
    let mrssu = (single * max2 - 1.0) / c;
    Ok(ResidualPair { srs, mrssu, delta: mrssu - srs })
}

fn exponential_parts(alpha: EntropyOrder, theta: f64, t: f64) -> Result<(f64, f64, f64)> {
    if !(theta.is_finite() && theta > 0.0) {
        return Err(Error::InvalidParameter(format!("theta must be positive, got {theta}")));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!("residual time must be finite and nonnegative, got {t}")));
    }
    let a = alpha.alpha();
    let e = (-theta * t).exp();
    let b = special::incomplete_beta_lower_at(UnitPoint { u: e, v: -(-theta * t).exp_m1() }, a, a + 1.0)?;
    let d = e * (2.0 - e);
    Ok((a, b, d))
}

/// The exponential n = 2 forms as stated: MRSSU prefactor θ^{α−1} and a
/// δ_t bracket 1 − αB_{e^{−θt}}(α, α+1)/D^α with D = 2e^{−θt} − e^{−2θt}.
pub fn exponential_residual_stated(alpha: EntropyOrder, theta: f64, t: f64) -> Result<ResidualPair> {
    let (a, b, d) = exponential_parts(alpha, theta, t)?;
    let c = alpha.complement();
    let s = theta.powf(2.0 * a - 2.0);
    Ok(ResidualPair {
        srs: (s / (a * a) - 1.0) / c,
        mrssu: (theta.powf(a - 1.0) * 2f64.powf(a) * b / (a * d.powf(a)) - 1.0) / c,
        delta: s / ((a - 1.0) * a * a) * (1.0 - a * b / d.powf(a)),
    })
}

/// The exponential n = 2 forms rederived from the order-statistic residual
/// formula (prefactor θ^{2α−2} and the 2^α factor inside δ_t).
pub fn exponential_residual_closed(alpha: EntropyOrder, theta: f64, t: f64) -> Result<ResidualPair> {
    let (a, b, d) = exponential_parts(alpha, theta, t)?;
    let c = alpha.complement();
    let s = theta.powf(2.0 * a - 2.0);
    let srs = (s / (a * a) - 1.0) / c;
    let mrssu = (s * 2f64.powf(a) * b / (a * d.powf(a)) - 1.0) / c;
    Ok(ResidualPair { srs, mrssu, delta: mrssu - srs })
}
