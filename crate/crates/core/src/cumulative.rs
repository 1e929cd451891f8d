//! Cumulative Tsallis entropy (CTE), its dynamic (past-lifetime) version,
//! the alternate measure Cξ_α, failure entropy FE_α and the design-level
//! and transformation identities built on them.
//!
//! All measures reduce to ∫ F^β dx over the support, or to ∫ (F/F(t))^β
//! over [lower, t] for the dynamic forms. The first integral is infinite for
//! unbounded supports because F → 1; that case is reported as
//! [`Error::Divergent`].

use crate::dist::DistributionModel;
use crate::error::{Error, Result};
use crate::special::{self, integrate_interval, DEFAULT_TOL};
use crate::tsallis::{compose_factors, Design, DesignSpec, EntropyOrder, EntropyReport, Method, Route};
use serde::Serialize;

/// A time t with F(t) > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncationTime {
    t: f64,
}

impl TruncationTime {
    pub fn new(model: &DistributionModel, t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::Domain(format!("truncation time must be finite, got {t}")));
        }
        if model.cdf(t) <= 0.0 {
            return Err(Error::Domain(format!("F({t}) = 0; the conditional cdf is undefined")));
        }
        Ok(Self { t })
    }

    pub fn value(self) -> f64 {
        self.t
    }
}

/// Two independently computed sides of an identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    pub lhs: f64,
    pub rhs: f64,
}

impl IdentityReport {
    pub fn difference(&self) -> f64 {
        self.lhs - self.rhs
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.difference().abs() <= tol * self.lhs.abs().max(self.rhs.abs()).max(1.0)
    }
}

fn check_exponent(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("cdf exponent must be positive, got {beta}")))
    }
}

/// ∫ F^β dx over the support.
pub fn cdf_power_integral(model: &DistributionModel, beta: f64, route: Route) -> Result<EntropyReport> {
    check_exponent(beta)?;
    let (lo, hi) = model.support();
    if route != Route::Quadrature {
        if let Some(k) = model.beta_kernel() {
            if k.s >= 1.0 {
                return Err(Error::Divergent { partial: f64::INFINITY });
            }
            let b = special::beta_fn(beta - k.r + 1.0, 1.0 - k.s)?;
            return Ok(EntropyReport::closed_form(b / k.c));
        }
        if route == Route::ClosedForm {
            return Err(Error::Unsupported(format!("no closed form for {model}")));
        }
    }
    let r = integrate_interval(|x| (beta * model.cdf_point(x).ln_u()).exp(), lo, hi, DEFAULT_TOL)?;
    Ok(EntropyReport::quadrature(r.value, r.error_estimate))
}

/// ∫ (F(x)/F(t))^β dx over [lower, t].
pub fn dynamic_cdf_integral(
    model: &DistributionModel,
    beta: f64,
    t: TruncationTime,
    route: Route,
) -> Result<EntropyReport> {
    check_exponent(beta)?;
    let (lo, hi) = model.support();
    let t = t.value();
    if t >= hi {
        return cdf_power_integral(model, beta, route);
    }
    let pt = model.cdf_point(t);
    let ln_ft = pt.ln_u();
    if route != Route::Quadrature {
        // F(t)^{-β} ∫₀^{F(t)} u^β / f(F⁻¹(u)) du
        if let Some(k) = model.beta_kernel().filter(|k| k.s < 1.0) {
            let b = special::incomplete_beta_lower_at(pt, beta - k.r + 1.0, 1.0 - k.s)?;
            return Ok(EntropyReport::closed_form(b / k.c * (-beta * ln_ft).exp()));
        }
        if route == Route::ClosedForm {
            return Err(Error::Unsupported(format!("no closed form for the dynamic integral of {model}")));
        }
    }
    let r = integrate_interval(|x| (beta * (model.cdf_point(x).ln_u() - ln_ft)).exp(), lo, t, DEFAULT_TOL)?;
    Ok(EntropyReport::quadrature(r.value, r.error_estimate))
}

fn cte_factors(
    model: &DistributionModel,
    alpha: EntropyOrder,
    spec: DesignSpec,
    t: Option<TruncationTime>,
    route: Route,
) -> Result<Vec<EntropyReport>> {
    let a = alpha.alpha();
    let one = |beta: f64| match t {
        Some(t) => dynamic_cdf_integral(model, beta, t, route),
        None => cdf_power_integral(model, beta, route),
    };
    match spec.design {
        Design::Srs => Ok(vec![one(a)?; spec.n]),
        Design::Mrssu => (1..=spec.n).map(|i| one(i as f64 * a)).collect(),
        Design::Rss => Err(Error::Unsupported("cumulative measures are defined for SRS and MRSSU only".into())),
    }
}

/// CE_α of an SRS or MRSSU design, (∏ ∫F^{β_i} − 1)/(1 − α).
pub fn cte_design(
    model: &DistributionModel,
    alpha: EntropyOrder,
    spec: DesignSpec,
    route: Route,
) -> Result<EntropyReport> {
    Ok(compose_factors(&cte_factors(model, alpha, spec, None, route)?, alpha))
}

/// Dynamic design CTE, (∏ ∫₀ᵗ (F/F(t))^{β_i} dx − 1)/(1 − α).
pub fn cte_dynamic_design(
    model: &DistributionModel,
    alpha: EntropyOrder,
    spec: DesignSpec,
    t: TruncationTime,
    route: Route,
) -> Result<EntropyReport> {
    Ok(compose_factors(&cte_factors(model, alpha, spec, Some(t), route)?, alpha))
}

/// CE_α(X) = (∫F^α dx − 1)/(1 − α).
pub fn cte(model: &DistributionModel, alpha: EntropyOrder) -> Result<EntropyReport> {
    cte_design(model, alpha, DesignSpec::srs(1)?, Route::Auto)
}

pub fn cte_dynamic(model: &DistributionModel, alpha: EntropyOrder, t: TruncationTime) -> Result<EntropyReport> {
    cte_dynamic_design(model, alpha, DesignSpec::srs(1)?, t, Route::Auto)
}

pub fn cte_srs(model: &DistributionModel, alpha: EntropyOrder, n: usize) -> Result<EntropyReport> {
    cte_design(model, alpha, DesignSpec::srs(n)?, Route::Auto)
}

pub fn cte_mrssu(model: &DistributionModel, alpha: EntropyOrder, n: usize) -> Result<EntropyReport> {
    cte_design(model, alpha, DesignSpec::mrssu(n)?, Route::Auto)
}

pub fn cte_dynamic_srs(
    model: &DistributionModel,
    alpha: EntropyOrder,
    n: usize,
    t: TruncationTime,
) -> Result<EntropyReport> {
    cte_dynamic_design(model, alpha, DesignSpec::srs(n)?, t, Route::Auto)
}

pub fn cte_dynamic_mrssu(
    model: &DistributionModel,
    alpha: EntropyOrder,
    n: usize,
    t: TruncationTime,
) -> Result<EntropyReport> {
    cte_dynamic_design(model, alpha, DesignSpec::mrssu(n)?, t, Route::Auto)
}

/// CE_α of the maximum of i draws, computed directly and through
/// ((1 − iα)/(1 − α))·CE_{iα}(X).
pub fn cte_order_stat_identity(model: &DistributionModel, alpha: EntropyOrder, i: usize) -> Result<IdentityReport> {
    if i == 0 {
        return Err(Error::Domain("order statistic index must be at least 1".into()));
    }
    let ia = alpha.alpha() * i as f64;
    if ia == 1.0 {
        return Err(Error::Domain("iα = 1 is a removable singularity of the identity".into()));
    }
    let law = model.max_order_stat(i)?.to_model();
    let lhs = cte(&law, alpha)?.value;
    let scaled = alpha.scaled(i as f64)?;
    let rhs = (1.0 - ia) / alpha.complement() * cte(model, scaled)?.value;
    Ok(IdentityReport { lhs, rhs })
}

/// ∫ (F − F^α) dx over the support; finite for unbounded laws as well.
fn alt_integral(model: &DistributionModel, a: f64) -> Result<EntropyReport> {
    if let Some(k) = model.beta_kernel() {
        let v = if k.s == 0.0 {
            1.0 / (2.0 - k.r) - 1.0 / (a - k.r + 1.0)
        } else if k.s == 1.0 {
            special::digamma_fn(a - k.r + 1.0)? - special::digamma_fn(2.0 - k.r)?
        } else {
            special::beta_fn(2.0 - k.r, 1.0 - k.s)? - special::beta_fn(a - k.r + 1.0, 1.0 - k.s)?
        };
        return Ok(EntropyReport::closed_form(v / k.c));
    }
    let (lo, hi) = model.support();
    let r = integrate_interval(
        |x| {
            let ln_f = model.cdf_point(x).ln_u();
            -ln_f.exp() * ((a - 1.0) * ln_f).exp_m1()
        },
        lo,
        hi,
        DEFAULT_TOL,
    )?;
    Ok(EntropyReport::quadrature(r.value, r.error_estimate))
}

/// Cξ_α(X) = (1/(α − 1)) ∫ (F − F^α) dx.
pub fn alt_cte(model: &DistributionModel, alpha: EntropyOrder) -> Result<EntropyReport> {
    let a = alpha.alpha();
    let r = alt_integral(model, a)?;
    Ok(EntropyReport {
        value: r.value / (a - 1.0),
        error_estimate: r.error_estimate / (a - 1.0).abs(),
        ..r
    })
}

fn product_report(parts: &[EntropyReport]) -> (f64, f64, Method) {
    let value: f64 = parts.iter().map(|p| p.value).product();
    let rel: f64 = parts.iter().map(|p| if p.value == 0.0 { 0.0 } else { p.error_estimate / p.value.abs() }).sum();
    let method = if parts.iter().all(|p| p.method == Method::ClosedForm) {
        Method::ClosedForm
    } else {
        Method::Quadrature
    };
    (value, value.abs() * rel, method)
}

fn alt_design(model: &DistributionModel, alpha: EntropyOrder, spec: DesignSpec) -> Result<EntropyReport> {
    let a = alpha.alpha();
    let (plain, powered): (Vec<f64>, Vec<f64>) = match spec.design {
        Design::Srs => (vec![1.0; spec.n], vec![a; spec.n]),
        Design::Mrssu => (1..=spec.n).map(|i| (i as f64, i as f64 * a)).unzip(),
        Design::Rss => return Err(Error::Unsupported("cumulative measures are defined for SRS and MRSSU only".into())),
    };
    let p: Vec<EntropyReport> =
        plain.iter().map(|&b| cdf_power_integral(model, b, Route::Auto)).collect::<Result<_>>()?;
    let q: Vec<EntropyReport> =
        powered.iter().map(|&b| cdf_power_integral(model, b, Route::Auto)).collect::<Result<_>>()?;
    let (pv, pe, pm) = product_report(&p);
    let (qv, qe, qm) = product_report(&q);
    let method = if pm == Method::ClosedForm && qm == Method::ClosedForm {
        Method::ClosedForm
    } else {
        Method::Quadrature
    };
    Ok(EntropyReport {
        value: (pv - qv) / (a - 1.0),
        method,
        error_estimate: if method == Method::ClosedForm { 0.0 } else { (pe + qe) / (a - 1.0).abs() },
    })
}

/// (1/(α−1))[(∫F)ⁿ − (∫F^α)ⁿ]; needs ∫F dx finite.
pub fn alt_cte_srs(model: &DistributionModel, alpha: EntropyOrder, n: usize) -> Result<EntropyReport> {
    alt_design(model, alpha, DesignSpec::srs(n)?)
}

/// (1/(α−1))[∏∫F^i − ∏∫F^{iα}]; needs ∫F dx finite.
pub fn alt_cte_mrssu(model: &DistributionModel, alpha: EntropyOrder, n: usize) -> Result<EntropyReport> {
    alt_design(model, alpha, DesignSpec::mrssu(n)?)
}

/// Classical cumulative entropy −∫ F log F dx.
pub fn cumulative_entropy(model: &DistributionModel) -> Result<EntropyReport> {
    let (lo, hi) = model.support();
    let r = integrate_interval(
        |x| {
            let p = model.cdf_point(x);
            if p.u <= 0.0 {
                return 0.0;
            }
            -p.u * p.ln_u()
        },
        lo,
        hi,
        DEFAULT_TOL,
    )?;
    Ok(EntropyReport::quadrature(r.value, r.error_estimate))
}

fn log_report(r: EntropyReport, scale: f64) -> Result<EntropyReport> {
    if r.value <= 0.0 {
        return Err(Error::Domain(format!("logarithm of nonpositive integral {}", r.value)));
    }
    Ok(EntropyReport {
        value: r.value.ln() * scale,
        error_estimate: r.error_estimate / r.value * scale.abs(),
        ..r
    })
}

/// FE_α(X) = (1/(1−α)) log ∫F^α dx.
pub fn failure_entropy(model: &DistributionModel, alpha: EntropyOrder) -> Result<EntropyReport> {
    log_report(cdf_power_integral(model, alpha.alpha(), Route::Auto)?, 1.0 / alpha.complement())
}

/// (1/(1−α)) log ∫₀ᵗ (F/F(t))^α dx, without a trailing −1.
pub fn fe_dynamic(model: &DistributionModel, alpha: EntropyOrder, t: TruncationTime) -> Result<EntropyReport> {
    log_report(dynamic_cdf_integral(model, alpha.alpha(), t, Route::Auto)?, 1.0 / alpha.complement())
}

/// FE_α(X_SRS) = n·FE_α(X).
pub fn fe_srs(model: &DistributionModel, alpha: EntropyOrder, n: usize) -> Result<EntropyReport> {
    DesignSpec::srs(n)?;
    let r = failure_entropy(model, alpha)?;
    let n = n as f64;
    Ok(EntropyReport { value: n * r.value, error_estimate: n * r.error_estimate, ..r })
}

/// FE_α(X_MRSSU) = Σ ((iα−1)/(α−1)) FE_{iα}(X), evaluated as
/// Σ log ∫F^{iα} / (1−α) so that iα = 1 needs no special case.
pub fn fe_mrssu(model: &DistributionModel, alpha: EntropyOrder, n: usize) -> Result<EntropyReport> {
    DesignSpec::mrssu(n)?;
    let scale = 1.0 / alpha.complement();
    let mut value = 0.0;
    let mut error_estimate = 0.0;
    let mut method = Method::ClosedForm;
    for i in 1..=n {
        let r = log_report(cdf_power_integral(model, i as f64 * alpha.alpha(), Route::Auto)?, scale)?;
        value += r.value;
        error_estimate += r.error_estimate;
        if r.method != Method::ClosedForm {
            method = Method::Quadrature;
        }
    }
    Ok(EntropyReport { value, method, error_estimate })
}

/// CE_α = (e^{(1−α)FE_α} − 1)/(1 − α).
pub fn cte_from_fe(fe: f64, alpha: EntropyOrder) -> f64 {
    let c = alpha.complement();
    (c * fe).exp_m1() / c
}

/// Both readings of the CTE relation under F* = F^θ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrhrmReport {
    /// CE_α of the transformed design.
    pub lhs: f64,
    /// ((1 − θα)/(1 − α))·CE_{θα} of the base design.
    pub rhs_order_theta_alpha: f64,
    /// ((1 − θα)/(1 − α))·CE_α of the base design.
    pub rhs_same_order: f64,
}

impl PrhrmReport {
    pub fn order_theta_alpha(&self) -> IdentityReport {
        IdentityReport { lhs: self.lhs, rhs: self.rhs_order_theta_alpha }
    }

    pub fn same_order(&self) -> IdentityReport {
        IdentityReport { lhs: self.lhs, rhs: self.rhs_same_order }
    }
}

/// The law with cdf F^θ.
pub fn prhrm_transform(model: &DistributionModel, theta: f64) -> Result<DistributionModel> {
    model.reversed_hazard(theta)
}

pub fn prhrm_cte_check(
    model: &DistributionModel,
    theta: f64,
    alpha: EntropyOrder,
    spec: DesignSpec,
) -> Result<PrhrmReport> {
    let star = prhrm_transform(model, theta)?;
    let ta = theta * alpha.alpha();
    if ta == 1.0 {
        return Err(Error::Domain("θα = 1 makes the factor (1 − θα) vanish".into()));
    }
    let factor = (1.0 - ta) / alpha.complement();
    let lhs = cte_design(&star, alpha, spec, Route::Auto)?.value;
    let at_ta = cte_design(model, EntropyOrder::new(ta)?, spec, Route::Auto)?.value;
    let at_a = cte_design(model, alpha, spec, Route::Auto)?.value;
    Ok(PrhrmReport { lhs, rhs_order_theta_alpha: factor * at_ta, rhs_same_order: factor * at_a })
}

/// CE_α(aX + b, MRSSU) against aⁿ·CE_α(X, MRSSU) + (aⁿ − 1)/(1 − α).
pub fn cte_linear_transform(
    model: &DistributionModel,
    a: f64,
    b: f64,
    alpha: EntropyOrder,
    n: usize,
) -> Result<IdentityReport> {
    if b < 0.0 {
        return Err(Error::Domain(format!("shift must be nonnegative, got {b}")));
    }
    let y = model.affine(a, b)?;
    let lhs = cte_mrssu(&y, alpha, n)?.value;
    let an = a.powi(n as i32);
    let rhs = an * cte_mrssu(model, alpha, n)?.value + (an - 1.0) / alpha.complement();
    Ok(IdentityReport { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn order(a: f64) -> EntropyOrder {
        EntropyOrder::new(a).unwrap()
    }

    fn unif() -> DistributionModel {
        DistributionModel::uniform(1.0).unwrap()
    }

    #[test]
    fn cte_values() {
        assert_relative_eq!(cte(&unif(), order(2.0)).unwrap().value, 2.0 / 3.0, max_relative = 1e-14);
        let p = DistributionModel::power(1.0).unwrap();
        assert_relative_eq!(cte(&p, order(2.0)).unwrap().value, 2.0 / 3.0, max_relative = 1e-14);
        let e = DistributionModel::exponential(1.0).unwrap();
        for a in [0.5, 2.0] {
            assert!(matches!(cte(&e, order(a)), Err(Error::Divergent { .. })));
            assert!(matches!(
                cte_design(&e, order(a), DesignSpec::srs(1).unwrap(), Route::Quadrature),
                Err(Error::Divergent { .. })
            ));
        }
    }

    #[test]
    fn dynamic_values() {
        let u = unif();
        let t = |x| TruncationTime::new(&u, x).unwrap();
        assert_relative_eq!(cte_dynamic(&u, order(2.0), t(1.0)).unwrap().value, 2.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(cte_dynamic(&u, order(2.0), t(0.5)).unwrap().value, 5.0 / 6.0, max_relative = 1e-13);
        let p = DistributionModel::power(2.0).unwrap();
        let tp = TruncationTime::new(&p, 1.0).unwrap();
        assert_relative_eq!(
            cte_dynamic(&p, order(2.0), tp).unwrap().value,
            cte(&p, order(2.0)).unwrap().value,
            max_relative = 1e-14
        );
        assert!(TruncationTime::new(&u, 0.0).is_err());
        assert!(TruncationTime::new(&u, f64::INFINITY).is_err());
    }

    #[test]
    fn dynamic_routes_agree() {
        let models = [
            DistributionModel::uniform(2.0).unwrap(),
            DistributionModel::power(2.0).unwrap(),
            DistributionModel::exponential(1.0).unwrap(),
        ];
        for m in &models {
            for x in [0.3, 0.8] {
                let t = TruncationTime::new(m, x).unwrap();
                for beta in [0.5, 2.0, 4.0] {
                    let q = dynamic_cdf_integral(m, beta, t, Route::Quadrature).unwrap().value;
                    let c = dynamic_cdf_integral(m, beta, t, Route::Auto).unwrap().value;
                    assert_relative_eq!(q, c, max_relative = 1e-10);
                }
            }
        }
    }

    #[test]
    fn design_values() {
        let a = order(2.0);
        assert_relative_eq!(cte_srs(&unif(), a, 2).unwrap().value, 8.0 / 9.0, max_relative = 1e-13);
        assert_relative_eq!(cte_mrssu(&unif(), a, 2).unwrap().value, 14.0 / 15.0, max_relative = 1e-13);
        assert_relative_eq!(cte_srs(&unif(), a, 1).unwrap().value, 2.0 / 3.0, max_relative = 1e-13);
        assert!(cte_design(&unif(), a, DesignSpec::rss(2).unwrap(), Route::Auto).is_err());
        for m in [unif(), DistributionModel::power(2.0).unwrap(), DistributionModel::uniform(0.5).unwrap()] {
            for alpha in [0.25, 0.5, 2.0, 3.0] {
                for d in [Design::Srs, Design::Mrssu] {
                    let spec = DesignSpec::new(d, 4).unwrap();
                    let c = cte_design(&m, order(alpha), spec, Route::ClosedForm).unwrap().value;
                    let q = cte_design(&m, order(alpha), spec, Route::Quadrature).unwrap().value;
                    assert!((c - q).abs() < 1e-10, "{m} {alpha} {d}");
                }
            }
        }
    }

    #[test]
    fn order_stat_identity_examples() {
        let r = cte_order_stat_identity(&unif(), order(2.0), 2).unwrap();
        assert_relative_eq!(r.lhs, 0.8, max_relative = 1e-13);
        assert_relative_eq!(r.rhs, 0.8, max_relative = 1e-13);
        let r = cte_order_stat_identity(&unif(), order(2.0), 1).unwrap();
        assert_eq!(r.difference(), 0.0);
        let p = DistributionModel::power(2.0).unwrap();
        assert!(cte_order_stat_identity(&p, order(0.5), 2).is_err());
        let r = cte_order_stat_identity(&p, order(0.75), 2).unwrap();
        assert!(r.holds(1e-10));
    }

    #[test]
    fn alternate_measure() {
        let e = DistributionModel::exponential(1.0).unwrap();
        assert_relative_eq!(alt_cte(&e, order(2.0)).unwrap().value, 0.5, max_relative = 1e-13);
        assert_relative_eq!(alt_cte(&unif(), order(2.0)).unwrap().value, 1.0 / 6.0, max_relative = 1e-13);
        // Kernel and quadrature paths for a law without a kernel.
        let ee = e.reversed_hazard(2.0).unwrap();
        let a = alt_cte(&ee, order(3.0)).unwrap();
        assert_eq!(a.method, Method::Quadrature);
        // ∫(F² − F⁶) for F = 1 − e^{−x} is H₆ − H₂.
        let want = (1.0 / 3.0 + 1.0 / 4.0 + 1.0 / 5.0 + 1.0 / 6.0) / 2.0;
        assert_relative_eq!(a.value, want, max_relative = 1e-9);
        assert!(matches!(alt_cte_srs(&e, order(2.0), 2), Err(Error::Divergent { .. })));
        let s = alt_cte_srs(&unif(), order(2.0), 2).unwrap().value;
        assert_relative_eq!(s, (0.25 - 1.0 / 9.0) / 1.0, max_relative = 1e-13);
        let m = alt_cte_mrssu(&unif(), order(2.0), 2).unwrap().value;
        assert_relative_eq!(m, (1.0 / 6.0 - 1.0 / 15.0) / 1.0, max_relative = 1e-13);
    }

    #[test]
    fn classical_cumulative_entropy() {
        assert_relative_eq!(cumulative_entropy(&unif()).unwrap().value, 0.25, max_relative = 1e-12);
        let e = DistributionModel::exponential(1.0).unwrap();
        let want = std::f64::consts::PI.powi(2) / 6.0 - 1.0;
        assert_relative_eq!(cumulative_entropy(&e).unwrap().value, want, max_relative = 1e-9);
    }

    #[test]
    fn failure_entropy_values() {
        let a = order(2.0);
        assert_relative_eq!(failure_entropy(&unif(), a).unwrap().value, 3f64.ln(), max_relative = 1e-13);
        let fe = failure_entropy(&unif(), a).unwrap().value;
        assert_relative_eq!(fe_srs(&unif(), a, 2).unwrap().value, 2.0 * fe, max_relative = 1e-14);
        assert_relative_eq!(fe_mrssu(&unif(), a, 2).unwrap().value, 15f64.ln(), max_relative = 1e-13);
        assert_relative_eq!(cte_from_fe(fe, a), 2.0 / 3.0, max_relative = 1e-13);
        assert_eq!(cte_from_fe(0.0, a), 0.0);
        let via = cte_from_fe(fe_mrssu(&unif(), a, 2).unwrap().value, a);
        assert_relative_eq!(via, cte_mrssu(&unif(), a, 2).unwrap().value, max_relative = 1e-12);
        // Sum form with iα ≠ 1 terms.
        let b = order(0.75);
        let direct = fe_mrssu(&unif(), b, 3).unwrap().value;
        let mut sum = 0.0;
        for i in 1..=3 {
            let ia = 0.75 * i as f64;
            sum += (ia - 1.0) / (0.75 - 1.0) * failure_entropy(&unif(), order(ia)).unwrap().value;
        }
        assert_relative_eq!(direct, sum, max_relative = 1e-12);
    }

    #[test]
    fn dynamic_failure_entropy_recovers_static() {
        let p = DistributionModel::power(2.0).unwrap();
        let t = TruncationTime::new(&p, 1.0).unwrap();
        let a = order(0.5);
        assert_relative_eq!(
            fe_dynamic(&p, a, t).unwrap().value,
            failure_entropy(&p, a).unwrap().value,
            max_relative = 1e-13
        );
    }

    #[test]
    fn prhrm_examples() {
        let u = unif();
        assert_eq!(prhrm_transform(&u, 1.0).unwrap().to_string(), "uniform:b=1");
        assert_eq!(prhrm_transform(&u, 2.0).unwrap().to_string(), "beta:theta=2");
        let r = prhrm_cte_check(&u, 2.0, order(2.0), DesignSpec::srs(1).unwrap()).unwrap();
        assert_relative_eq!(r.lhs, 0.8, max_relative = 1e-13);
        assert!(r.order_theta_alpha().holds(1e-12));
        assert!(!r.same_order().holds(1e-6));
        assert!(prhrm_cte_check(&u, 0.5, order(2.0), DesignSpec::srs(1).unwrap()).is_err());
        let r = prhrm_cte_check(&u, 1.5, order(0.5), DesignSpec::mrssu(3).unwrap()).unwrap();
        assert!(r.order_theta_alpha().holds(1e-12));
    }

    #[test]
    fn linear_transform_examples() {
        let u = unif();
        let r = cte_linear_transform(&u, 2.0, 0.0, order(2.0), 2).unwrap();
        assert_relative_eq!(r.lhs, 4.0 * 14.0 / 15.0 - 3.0, max_relative = 1e-13);
        assert!(r.holds(1e-12));
        assert!(cte_linear_transform(&u, 0.5, 1.0, order(2.0), 2).unwrap().holds(1e-10));
        assert!(cte_linear_transform(&u, 1.0, 3.0, order(0.5), 3).unwrap().holds(1e-12));
        assert!(cte_linear_transform(&u, 1.0, -1.0, order(0.5), 3).is_err());
    }
}
