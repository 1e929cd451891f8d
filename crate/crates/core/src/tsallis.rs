//! Tsallis entropy of single lifetimes, order statistics and SRS / RSS /
//! MRSSU sample vectors.
//!
//! Every quantity is assembled from integrals of the form
//!
//! ```text
//! K(p, q) = ∫ u^p (1−u)^q f^{α−1}(F⁻¹(u)) du
//! ```
//!
//! which are evaluated either through a Beta function (when the model has a
//! [`BetaKernel`](crate::dist::BetaKernel)) or by quadrature. The design
//! entropies are then (∏ factors − 1)/(1 − α).

use crate::dist::DistributionModel;
use crate::error::{Error, Result};
use crate::special::{self, integrate_unit_points, integrate_unit_range, UnitPoint, DEFAULT_TOL};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Entropic index α > 0 with α ≠ 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct EntropyOrder(f64);

impl EntropyOrder {
    /// Rejects α ≤ 0, non-finite α and α = 1; the α → 1 limit is only
    /// available through the Shannon operations.
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::Domain(format!("entropic index must be positive, got {alpha}")));
        }
        if alpha == 1.0 {
            return Err(Error::Domain(
                "entropic index 1 is the Shannon limit; use the Shannon operations".into(),
            ));
        }
        Ok(Self(alpha))
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    /// 1 − α
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }

    /// The index k·α, e.g. iα in the maximum-order-statistic identities.
    pub fn scaled(self, k: f64) -> Result<Self> {
        Self::new(self.0 * k)
    }
}

impl fmt::Display for EntropyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sampling design tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Design {
    /// n independent draws.
    Srs,
    /// The i-th of n sets of size n contributes its i-th order statistic.
    Rss,
    /// The i-th set has size i and contributes its maximum.
    Mrssu,
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Design::Srs => "srs",
            Design::Rss => "rss",
            Design::Mrssu => "mrssu",
        })
    }
}

impl FromStr for Design {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "srs" => Ok(Design::Srs),
            "rss" => Ok(Design::Rss),
            "mrssu" => Ok(Design::Mrssu),
            other => Err(Error::Parse(format!("unknown design `{other}`"))),
        }
    }
}

/// A design together with its set size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DesignSpec {
    pub design: Design,
    pub n: usize,
}

impl DesignSpec {
    pub fn new(design: Design, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("set size n must be at least 1".into()));
        }
        Ok(Self { design, n })
    }

    pub fn srs(n: usize) -> Result<Self> {
        Self::new(Design::Srs, n)
    }

    pub fn rss(n: usize) -> Result<Self> {
        Self::new(Design::Rss, n)
    }

    pub fn mrssu(n: usize) -> Result<Self> {
        Self::new(Design::Mrssu, n)
    }
}

/// How a reported value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte-carlo",
        })
    }
}

/// A computed measure with its provenance and error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyReport {
    pub value: f64,
    pub method: Method,
    pub error_estimate: f64,
}

impl EntropyReport {
    pub fn closed_form(value: f64) -> Self {
        Self { value, method: Method::ClosedForm, error_estimate: 0.0 }
    }

    pub(crate) fn quadrature(value: f64, error_estimate: f64) -> Self {
        Self { value, method: Method::Quadrature, error_estimate }
    }
}

/// Evaluation path for the integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    /// Closed form when the family has one, quadrature otherwise.
    #[default]
    Auto,
    /// Closed form only; [`Error::Unsupported`] for other laws.
    ClosedForm,
    /// Quadrature even when a closed form exists.
    Quadrature,
}

/// ∫_{from}^1 u^p (1−u)^q f^{a}(F⁻¹(u)) du.
pub(crate) fn density_moment(
    model: &DistributionModel,
    a: f64,
    p: f64,
    q: f64,
    from: UnitPoint,
    route: Route,
) -> Result<EntropyReport> {
    let closed = || -> Option<Result<f64>> {
        let k = model.beta_kernel()?;
        let x = p + k.r * a + 1.0;
        let y = q + k.s * a + 1.0;
        if y <= 0.0 || (x <= 0.0 && from.u <= 0.0) {
            return Some(Err(Error::Divergent { partial: f64::INFINITY }));
        }
        if x <= 0.0 {
            return None;
        }
        let b = if from.u <= 0.0 {
            special::beta_fn(x, y)
        } else {
            special::incomplete_beta_upper_at(from, x, y)
        };
        Some(b.map(|b| k.c.powf(a) * b))
    };
    let quadrature = || -> Result<EntropyReport> {
        let r = integrate_unit_range(
            |pt| {
                let w = pt.u.powf(p) * pt.v.powf(q);
                if w == 0.0 {
                    return 0.0;
                }
                w * model.density_quantile_point(pt).powf(a)
            },
            from,
            UnitPoint::ONE,
            DEFAULT_TOL,
        )?;
        Ok(EntropyReport::quadrature(r.value, r.error_estimate))
    };
    match route {
        Route::Quadrature => quadrature(),
        Route::ClosedForm => match closed() {
            Some(v) => v.map(EntropyReport::closed_form),
            None => Err(Error::Unsupported(format!("no closed form for {model}"))),
        },
        Route::Auto => match closed() {
            Some(v) => v.map(EntropyReport::closed_form),
            None => quadrature(),
        },
    }
}

/// (∏ factors − 1)/(1 − α) with first-order error propagation.
pub(crate) fn compose_factors(factors: &[EntropyReport], alpha: EntropyOrder) -> EntropyReport {
    let product: f64 = factors.iter().map(|f| f.value).product();
    let rel: f64 = factors
        .iter()
        .map(|f| if f.value == 0.0 { 0.0 } else { f.error_estimate / f.value.abs() })
        .sum();
    let method = if factors.iter().all(|f| f.method == Method::ClosedForm) {
        Method::ClosedForm
    } else if factors.iter().any(|f| f.method == Method::MonteCarlo) {
        Method::MonteCarlo
    } else {
        Method::Quadrature
    };
    let c = alpha.complement();
    EntropyReport {
        value: (product - 1.0) / c,
        method,
        error_estimate: if method == Method::ClosedForm { 0.0 } else { product.abs() * rel / c.abs() },
    }
}

fn scale(r: EntropyReport, k: f64) -> EntropyReport {
    EntropyReport { value: k * r.value, error_estimate: k.abs() * r.error_estimate, ..r }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i >= 1 && i <= n {
        Ok(())
    } else {
        Err(Error::Domain(format!("order statistic index {i} outside 1..={n}")))
    }
}

/// ∫ f_{(i:n)}^α dx, the factor of the i-th RSS unit.
pub(crate) fn order_stat_factor(
    model: &DistributionModel,
    alpha: EntropyOrder,
    i: usize,
    n: usize,
    from: UnitPoint,
    route: Route,
) -> Result<EntropyReport> {
    check_index(i, n)?;
    let a = alpha.alpha();
    let (i, n) = (i as f64, n as f64);
    let m = density_moment(model, a - 1.0, a * (i - 1.0), a * (n - i), from, route)?;
    let ln_b = special::ln_beta_fn(i, n - i + 1.0)?;
    Ok(scale(m, (-a * ln_b).exp()))
}

/// The per-unit factors ∫ f_unit^α dx of a design, in unit order.
pub fn design_factors(
    model: &DistributionModel,
    alpha: EntropyOrder,
    spec: DesignSpec,
    route: Route,
) -> Result<Vec<EntropyReport>> {
    let a = alpha.alpha();
    match spec.design {
        Design::Srs => {
            let k = density_moment(model, a - 1.0, 0.0, 0.0, UnitPoint::ZERO, route)?;
            Ok(vec![k; spec.n])
        }
        Design::Rss => (1..=spec.n)
            .map(|i| order_stat_factor(model, alpha, i, spec.n, UnitPoint::ZERO, route))
            .collect(),
        Design::Mrssu => (1..=spec.n)
            .map(|i| order_stat_factor(model, alpha, i, i, UnitPoint::ZERO, route))
            .collect(),
    }
}

/// S_α of a design through the requested route.
pub fn tsallis_design(
    model: &DistributionModel,
    alpha: EntropyOrder,
    spec: DesignSpec,
    route: Route,
) -> Result<EntropyReport> {
    Ok(compose_factors(&design_factors(model, alpha, spec, route)?, alpha))
}

/// S_α(X) = (∫₀¹ f^{α−1}(F⁻¹(u)) du − 1)/(1 − α).
pub fn tsallis_entropy(model: &DistributionModel, alpha: EntropyOrder) -> Result<EntropyReport> {
    tsallis_design(model, alpha, DesignSpec::srs(1)?, Route::Auto)
}

pub fn tsallis_srs(model: &DistributionModel, alpha: EntropyOrder, n: usize) -> Result<EntropyReport> {
    tsallis_design(model, alpha, DesignSpec::srs(n)?, Route::Auto)
}

pub fn tsallis_rss(model: &DistributionModel, alpha: EntropyOrder, n: usize) -> Result<EntropyReport> {
    tsallis_design(model, alpha, DesignSpec::rss(n)?, Route::Auto)
}

pub fn tsallis_mrssu(model: &DistributionModel, alpha: EntropyOrder, n: usize) -> Result<EntropyReport> {
    tsallis_design(model, alpha, DesignSpec::mrssu(n)?, Route::Auto)
}

/// S_α(X_(i:n)).
pub fn tsallis_order_stat(
    model: &DistributionModel,
    alpha: EntropyOrder,
    i: usize,
    n: usize,
) -> Result<EntropyReport> {
    let f = order_stat_factor(model, alpha, i, n, UnitPoint::ZERO, Route::Auto)?;
    Ok(compose_factors(&[f], alpha))
}

/// s₁ + s₂ + (1 − α)s₁s₂, the entropy of a pair of independent variables.
pub fn tsallis_compose(s1: f64, s2: f64, alpha: EntropyOrder) -> f64 {
    s1 + s2 + alpha.complement() * s1 * s2
}

/// MRSSU entropy of uniform(0, b) by the product of i^α/(1 + α(i−1)),
/// each factor scaled by b^{1−α}.
pub fn mrssu_uniform_closed(alpha: EntropyOrder, n: usize, b: f64) -> Result<EntropyReport> {
    check_n_and_scale(n, b)?;
    let a = alpha.alpha();
    let mut ln_product = 0.0;
    for i in 1..=n {
        let i = i as f64;
        ln_product += a * i.ln() - (1.0 + a * (i - 1.0)).ln() + (1.0 - a) * b.ln();
    }
    Ok(EntropyReport::closed_form(-(ln_product.exp_m1()) / (a - 1.0)))
}

/// MRSSU entropy of the exponential law with rate θ; the factorial of the
/// non-integer α − 1 is read as Γ(α).
pub fn mrssu_exponential_closed(alpha: EntropyOrder, n: usize, theta: f64) -> Result<EntropyReport> {
    check_n_and_scale(n, theta)?;
    let a = alpha.alpha();
    let lg = |x: f64| special::ln_gamma_fn(x);
    let nf = n as f64;
    let mut ln_product = nf * (a - 1.0) * theta.ln() + nf * lg(a)?;
    for i in 1..=n {
        let i = i as f64;
        ln_product += lg(a * (i - 1.0) + 1.0)? + a * i.ln() - lg(a * i + 1.0)?;
    }
    Ok(EntropyReport::closed_form(-(ln_product.exp_m1()) / (a - 1.0)))
}

fn check_n_and_scale(n: usize, scale: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("set size n must be at least 1".into()));
    }
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidParameter(format!("scale parameter must be positive, got {scale}")));
    }
    Ok(())
}

/// Closed-form n = 2 entropies of the three designs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairForms {
    pub srs: f64,
    pub rss: f64,
    pub mrssu: f64,
}

/// The n = 2 closed forms for uniform(0, b).
pub fn uniform_pair_forms(alpha: EntropyOrder, b: f64) -> Result<PairForms> {
    check_n_and_scale(2, b)?;
    let a = alpha.alpha();
    let s = b.powf(2.0 - 2.0 * a);
    Ok(PairForms {
        srs: (1.0 - s) / (a - 1.0),
        rss: (1.0 - 4f64.powf(a) / ((a + 1.0) * (a + 1.0)) * s) / (a - 1.0),
        mrssu: (1.0 - 2f64.powf(a) / (a + 1.0) * s) / (a - 1.0),
    })
}

/// The n = 2 closed forms for the exponential law with rate θ.
pub fn exponential_pair_forms(alpha: EntropyOrder, theta: f64) -> Result<PairForms> {
    check_n_and_scale(2, theta)?;
    let a = alpha.alpha();
    let s = theta.powf(2.0 * a - 2.0);
    let b = special::beta_fn(a + 1.0, a)?;
    Ok(PairForms {
        srs: (1.0 - s / (a * a)) / (a - 1.0),
        rss: (1.0 - s * 4f64.powf(a) * b / (2.0 * a)) / (a - 1.0),
        mrssu: (1.0 - s * 2f64.powf(a) * b / a) / (a - 1.0),
    })
}

/// H(X) = −∫ f log f = −∫₀¹ log f(F⁻¹(u)) du.
pub fn shannon_entropy(model: &DistributionModel) -> Result<EntropyReport> {
    shannon_order_stat(model, 1, 1, Route::Auto)
}

/// Shannon entropy of X_(i:n).
pub fn shannon_order_stat(model: &DistributionModel, i: usize, n: usize, route: Route) -> Result<EntropyReport> {
    check_index(i, n)?;
    let (fi, fnn) = (i as f64, n as f64);
    let ln_b = special::ln_beta_fn(fi, fnn - fi + 1.0)?;
    let kernel = model.beta_kernel().filter(|_| route != Route::Quadrature);
    if let Some(k) = kernel {
        let psi = |x: f64| special::digamma_fn(x);
        let e_ln_u = psi(fi)? - psi(fnn + 1.0)?;
        let e_ln_v = psi(fnn - fi + 1.0)? - psi(fnn + 1.0)?;
        let h = ln_b - (fi - 1.0 + k.r) * e_ln_u - (fnn - fi + k.s) * e_ln_v - k.c.ln();
        return Ok(EntropyReport::closed_form(h));
    }
    if route == Route::ClosedForm {
        return Err(Error::Unsupported(format!("no closed form for {model}")));
    }
    let r = integrate_unit_points(
        |pt| {
            let ln_w = (fi - 1.0) * pt.ln_u() + (fnn - fi) * pt.ln_v() - ln_b;
            let w = ln_w.exp();
            if w == 0.0 {
                return 0.0;
            }
            -w * (ln_w + model.density_quantile_point(pt).ln())
        },
        DEFAULT_TOL,
    )?;
    Ok(EntropyReport::quadrature(r.value, r.error_estimate))
}

/// Shannon entropy of a design vector (the α → 1 limit of its S_α).
pub fn shannon_design(model: &DistributionModel, spec: DesignSpec) -> Result<EntropyReport> {
    let parts: Vec<EntropyReport> = match spec.design {
        Design::Srs => vec![shannon_entropy(model)?; spec.n],
        Design::Rss => (1..=spec.n)
            .map(|i| shannon_order_stat(model, i, spec.n, Route::Auto))
            .collect::<Result<_>>()?,
        Design::Mrssu => (1..=spec.n)
            .map(|i| shannon_order_stat(model, i, i, Route::Auto))
            .collect::<Result<_>>()?,
    };
    let value = parts.iter().map(|p| p.value).sum();
    let error_estimate = parts.iter().map(|p| p.error_estimate).sum();
    let method = if parts.iter().all(|p| p.method == Method::ClosedForm) {
        Method::ClosedForm
    } else {
        Method::Quadrature
    };
    Ok(EntropyReport { value, method, error_estimate })
}

/// S_α of a design, or its Shannon limit when α = 1.
pub fn design_entropy_or_limit(model: &DistributionModel, alpha: f64, spec: DesignSpec) -> Result<f64> {
    if alpha == 1.0 {
        Ok(shannon_design(model, spec)?.value)
    } else {
        Ok(tsallis_design(model, EntropyOrder::new(alpha)?, spec, Route::Auto)?.value)
    }
}

/// One cell of a δ sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaCell {
    pub param: f64,
    pub alpha: f64,
    pub delta: Result<f64>,
}

/// δ = S_α(first) − S_α(second) over a (parameter, α) grid.
///
/// `models` pairs each law with the parameter value reported in the output.
/// Cells fail individually; α = 1 cells use the Shannon limit.
pub fn delta_series(
    models: &[(f64, DistributionModel)],
    pair: (DesignSpec, DesignSpec),
    alphas: &[f64],
) -> Result<Vec<DeltaCell>> {
    if models.is_empty() || alphas.is_empty() {
        return Err(Error::Domain("delta grids must be nonempty".into()));
    }
    let cells: Vec<(usize, usize)> =
        (0..models.len()).flat_map(|m| (0..alphas.len()).map(move |a| (m, a))).collect();
    Ok(cells
        .par_iter()
        .map(|&(m, k)| {
            let (param, model) = &models[m];
            let alpha = alphas[k];
            let delta = design_entropy_or_limit(model, alpha, pair.0)
                .and_then(|s1| Ok(s1 - design_entropy_or_limit(model, alpha, pair.1)?));
            DeltaCell { param: *param, alpha, delta }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn order(a: f64) -> EntropyOrder {
        EntropyOrder::new(a).unwrap()
    }

    fn unif(b: f64) -> DistributionModel {
        DistributionModel::uniform(b).unwrap()
    }

    fn expo(t: f64) -> DistributionModel {
        DistributionModel::exponential(t).unwrap()
    }

    #[test]
    fn order_rejects_bad_indices() {
        assert!(EntropyOrder::new(1.0).is_err());
        assert!(EntropyOrder::new(0.0).is_err());
        assert!(EntropyOrder::new(-2.0).is_err());
        assert!(EntropyOrder::new(f64::NAN).is_err());
        assert!(DesignSpec::srs(0).is_err());
        assert_eq!("MRSSU".parse::<Design>().unwrap(), Design::Mrssu);
        assert!("ars".parse::<Design>().is_err());
    }

    #[test]
    fn single_variable_values() {
        for a in [0.3, 2.0, 5.0] {
            assert!(tsallis_entropy(&unif(1.0), order(a)).unwrap().value.abs() < 1e-14);
        }
        assert_relative_eq!(tsallis_entropy(&expo(1.0), order(2.0)).unwrap().value, 0.5, max_relative = 1e-14);
        assert_relative_eq!(tsallis_entropy(&unif(2.0), order(2.0)).unwrap().value, 0.5, max_relative = 1e-14);
        let r = tsallis_entropy(&expo(1.0), order(2.0)).unwrap();
        assert_eq!(r.method, Method::ClosedForm);
        assert_eq!(r.error_estimate, 0.0);
    }

    #[test]
    fn design_values_n2() {
        let a = order(2.0);
        let u = unif(1.0);
        assert!(tsallis_srs(&u, a, 2).unwrap().value.abs() < 1e-14);
        assert_relative_eq!(tsallis_rss(&u, a, 2).unwrap().value, -7.0 / 9.0, max_relative = 1e-13);
        assert_relative_eq!(tsallis_mrssu(&u, a, 2).unwrap().value, -1.0 / 3.0, max_relative = 1e-13);
        let e = expo(1.0);
        assert_relative_eq!(tsallis_srs(&e, a, 2).unwrap().value, 0.75, max_relative = 1e-13);
        assert_relative_eq!(tsallis_rss(&e, a, 2).unwrap().value, 2.0 / 3.0, max_relative = 1e-13);
        assert_relative_eq!(tsallis_mrssu(&e, a, 2).unwrap().value, 5.0 / 6.0, max_relative = 1e-13);
    }

    #[test]
    fn order_statistic_values() {
        let u = unif(1.0);
        let a = order(2.0);
        assert_relative_eq!(tsallis_order_stat(&u, a, 2, 2).unwrap().value, -1.0 / 3.0, max_relative = 1e-13);
        assert_relative_eq!(tsallis_order_stat(&u, a, 1, 2).unwrap().value, -1.0 / 3.0, max_relative = 1e-13);
        assert!(tsallis_order_stat(&u, a, 3, 2).is_err());
        assert!(tsallis_order_stat(&u, a, 0, 2).is_err());
        let e = expo(1.5);
        let single = tsallis_entropy(&e, a).unwrap().value;
        assert_relative_eq!(tsallis_order_stat(&e, a, 1, 1).unwrap().value, single, max_relative = 1e-14);
    }

    #[test]
    fn quadrature_route_matches_closed_form() {
        let models = [unif(2.0), expo(0.5), DistributionModel::power(2.0).unwrap()];
        for m in &models {
            for a in [0.25, 0.5, 2.0, 3.0] {
                for design in [Design::Srs, Design::Rss, Design::Mrssu] {
                    let spec = DesignSpec::new(design, 3).unwrap();
                    let c = tsallis_design(m, order(a), spec, Route::ClosedForm).unwrap();
                    let q = tsallis_design(m, order(a), spec, Route::Quadrature).unwrap();
                    assert_eq!(q.method, Method::Quadrature);
                    assert!((c.value - q.value).abs() < 1e-9, "{m} {a} {design}: {} {}", c.value, q.value);
                }
            }
        }
    }

    #[test]
    fn closed_form_mrssu_helpers() {
        assert!(mrssu_uniform_closed(order(0.7), 1, 1.0).unwrap().value.abs() < 1e-14);
        assert_relative_eq!(mrssu_uniform_closed(order(2.0), 3, 1.0).unwrap().value, -1.4, max_relative = 1e-13);
        assert_relative_eq!(
            mrssu_exponential_closed(order(2.0), 2, 2.0).unwrap().value,
            1.0 / 3.0,
            max_relative = 1e-12
        );
        for a in [0.25, 0.5, 2.0, 3.0] {
            for n in 1..=5 {
                let u = mrssu_uniform_closed(order(a), n, 2.0).unwrap().value;
                let q = tsallis_mrssu(&unif(2.0), order(a), n).unwrap().value;
                assert_relative_eq!(u, q, max_relative = 1e-11, epsilon = 1e-13);
                let e = mrssu_exponential_closed(order(a), n, 0.5).unwrap().value;
                let q = tsallis_mrssu(&expo(0.5), order(a), n).unwrap().value;
                assert_relative_eq!(e, q, max_relative = 1e-11, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn pair_forms_match_general_formulas() {
        for a in [0.25, 0.5, 2.0, 3.0] {
            for b in [0.5, 1.0, 2.0] {
                let f = uniform_pair_forms(order(a), b).unwrap();
                let m = unif(b);
                assert_relative_eq!(f.srs, tsallis_srs(&m, order(a), 2).unwrap().value, epsilon = 1e-12);
                assert_relative_eq!(f.rss, tsallis_rss(&m, order(a), 2).unwrap().value, epsilon = 1e-12);
                assert_relative_eq!(f.mrssu, tsallis_mrssu(&m, order(a), 2).unwrap().value, epsilon = 1e-12);
                let f = exponential_pair_forms(order(a), b).unwrap();
                let m = expo(b);
                assert_relative_eq!(f.srs, tsallis_srs(&m, order(a), 2).unwrap().value, epsilon = 1e-12);
                assert_relative_eq!(f.rss, tsallis_rss(&m, order(a), 2).unwrap().value, epsilon = 1e-12);
                assert_relative_eq!(f.mrssu, tsallis_mrssu(&m, order(a), 2).unwrap().value, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn compose_identities() {
        let a = order(2.0);
        assert_eq!(tsallis_compose(0.0, 0.0, a), 0.0);
        assert_relative_eq!(tsallis_compose(0.5, 0.5, a), 0.75, max_relative = 1e-15);
        assert_eq!(tsallis_compose(0.37, 0.0, a), 0.37);
    }

    #[test]
    fn shannon_values() {
        assert!(shannon_entropy(&unif(1.0)).unwrap().value.abs() < 1e-14);
        assert_relative_eq!(shannon_entropy(&expo(1.0)).unwrap().value, 1.0, max_relative = 1e-14);
        assert_relative_eq!(shannon_entropy(&unif(2.0)).unwrap().value, 2f64.ln(), max_relative = 1e-14);
        let p = DistributionModel::power(3.0).unwrap();
        for (i, n) in [(1, 1), (1, 3), (2, 3), (3, 3)] {
            let c = shannon_order_stat(&p, i, n, Route::ClosedForm).unwrap().value;
            let q = shannon_order_stat(&p, i, n, Route::Quadrature).unwrap().value;
            assert_relative_eq!(c, q, epsilon = 1e-9);
        }
        let e = expo(2.0);
        let c = shannon_order_stat(&e, 2, 2, Route::ClosedForm).unwrap().value;
        let q = shannon_order_stat(&e, 2, 2, Route::Quadrature).unwrap().value;
        assert_relative_eq!(c, q, epsilon = 1e-9);
    }

    #[test]
    fn non_kernel_models_use_quadrature() {
        let m = expo(1.0).reversed_hazard(2.0).unwrap();
        let r = tsallis_entropy(&m, order(2.0)).unwrap();
        assert_eq!(r.method, Method::Quadrature);
        // Max of two unit exponentials: ∫f² = 1/3.
        assert_relative_eq!(r.value, 2.0 / 3.0, max_relative = 1e-9);
        assert!(matches!(tsallis_design(&m, order(2.0), DesignSpec::srs(1).unwrap(), Route::ClosedForm), Err(Error::Unsupported(_))));
    }

    #[test]
    fn divergent_closed_form() {
        // f = x^{-1/2}/2 on (0,1): ∫f³ diverges.
        let p = DistributionModel::power(0.5).unwrap();
        assert!(matches!(tsallis_entropy(&p, order(3.0)), Err(Error::Divergent { .. })));
    }

    #[test]
    fn delta_cells() {
        let models = vec![(1.0, unif(1.0))];
        let pair = (DesignSpec::rss(2).unwrap(), DesignSpec::srs(2).unwrap());
        let cells = delta_series(&models, pair, &[2.0, 1.0, -1.0]).unwrap();
        assert_eq!(cells.len(), 3);
        assert_relative_eq!(*cells[0].delta.as_ref().unwrap(), -7.0 / 9.0, max_relative = 1e-13);
        assert!(cells[1].delta.is_ok());
        assert!(cells[2].delta.is_err());
        assert!(delta_series(&[], pair, &[2.0]).is_err());
        let e = vec![(1.0, expo(1.0))];
        let pair = (DesignSpec::srs(2).unwrap(), DesignSpec::mrssu(2).unwrap());
        let cells = delta_series(&e, pair, &[2.0]).unwrap();
        assert_relative_eq!(*cells[0].delta.as_ref().unwrap(), -1.0 / 12.0, max_relative = 1e-12);
    }
}
