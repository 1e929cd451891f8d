//! Double-exponential (tanh-sinh) quadrature.
//!
//! The substitution x = c + h·tanh(π/2·sinh t) clusters nodes
//! double-exponentially towards both endpoints, which is what the entropy
//! integrands need: they are analytic inside (0,1) but may carry algebraic
//! singularities such as (1−u)^{α−1} at the ends.
//!
//! Nodes are generated as distances from the nearest endpoint, so an
//! interval whose singular end sits at zero resolves the singularity down to
//! ~1e-300. The unit-interval helpers exploit this by splitting at one half
//! and integrating the upper half in the complement variable v = 1 − u,
//! passing both coordinates to the integrand through [`UnitPoint`].

use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

/// Default absolute/relative tolerance of the engine.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Finest refinement level; the step in t is 2^-MAX_LEVEL.
const MAX_LEVEL: u32 = 12;
const MIN_LEVEL: u32 = 3;
/// With |t| ≤ 6.1 the nearest node sits ~1e-300 from its endpoint.
const T_MAX: f64 = 6.1;
/// Decades of 1 − u scanned before declaring a tail integral divergent.
const MAX_DECADES: u32 = 64;

/// Value of an integral together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    const ZERO: Self = Self { value: 0.0, error_estimate: 0.0, evaluations: 0 };

    fn add(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

/// A probability level u together with its complement v = 1 − u, each
/// carried at full precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPoint {
    pub u: f64,
    pub v: f64,
}

impl UnitPoint {
    pub const ZERO: Self = Self { u: 0.0, v: 1.0 };
    pub const ONE: Self = Self { u: 1.0, v: 0.0 };

    pub fn new(u: f64) -> Self {
        Self { u, v: 1.0 - u }
    }

    pub fn from_upper(v: f64) -> Self {
        Self { u: 1.0 - v, v }
    }

    /// Point with ln u given, e.g. after raising a level to a power.
    pub fn from_ln(ln_u: f64) -> Self {
        Self { u: ln_u.exp(), v: -ln_u.exp_m1() }
    }

    /// ln u, accurate for u near one as well.
    pub fn ln_u(self) -> f64 {
        if self.u < 0.5 {
            self.u.ln()
        } else {
            (-self.v).ln_1p()
        }
    }

    /// ln(1 − u), accurate for u near zero as well.
    pub fn ln_v(self) -> f64 {
        if self.v < 0.5 {
            self.v.ln()
        } else {
            (-self.u).ln_1p()
        }
    }

    /// The point 1 − u.
    pub fn flip(self) -> Self {
        Self { u: self.v, v: self.u }
    }

    /// u^p for any real power.
    pub fn pow(self, p: f64) -> Self {
        if p == 1.0 {
            self
        } else {
            Self::from_ln(p * self.ln_u())
        }
    }
}

fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if a == b {
        return Ok(QuadratureResult::ZERO);
    }
    if b < a {
        let r = tanh_sinh(f, b, a, tol)?;
        return Ok(QuadratureResult { value: -r.value, ..r });
    }
    let half = 0.5 * (b - a);
    let mut evaluations = 0usize;

    let mut node = |t: f64| -> Result<f64> {
        let s = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * s.abs()).exp();
        let dist = 2.0 * half * e / (1.0 + e);
        let weight = half * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if dist == 0.0 || weight == 0.0 {
            return Ok(0.0);
        }
        let x = if t < 0.0 { a + dist } else { b - dist };
        if x <= a || x >= b {
            return Ok(0.0);
        }
        evaluations += 1;
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::NonFinite { at: x });
        }
        Ok(weight * y)
    };

    // Level 0: integer nodes.
    let mut sum = node(0.0)?;
    let mut k = 1.0;
    while k <= T_MAX {
        sum += node(k)? + node(-k)?;
        k += 1.0;
    }
    let mut estimate = sum;
    let mut diff = f64::INFINITY;

    for level in 1..=MAX_LEVEL {
        let step = 0.5f64.powi(level as i32);
        let mut t = step;
        while t <= T_MAX {
            sum += node(t)? + node(-t)?;
            t += 2.0 * step;
        }
        let next = sum * step;
        diff = (next - estimate).abs();
        estimate = next;
        if level >= MIN_LEVEL && diff <= tol * estimate.abs().max(1.0) {
            return Ok(QuadratureResult {
                value: estimate,
                error_estimate: diff.max(4.0 * f64::EPSILON * estimate.abs()),
                evaluations,
            });
        }
    }
    Err(Error::NotConverged { partial: estimate, error_estimate: diff })
}

/// ∫ₐᵇ f(x) dx. An infinite upper limit is handed to [`integrate_half_line`].
pub fn integrate_interval<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if a.is_nan() || b.is_nan() || a == f64::NEG_INFINITY {
        return Err(Error::Domain(format!("unsupported integration limits [{a}, {b}]")));
    }
    if b == f64::INFINITY {
        return integrate_half_line(|x| f(a + x), tol);
    }
    tanh_sinh(&f, a, b, tol)
}

/// ∫₀¹ f(u) du for a plain integrand.
///
/// The upper half is evaluated at 1 − v, so singularities at u = 1 are
/// resolved only to double precision; use [`integrate_unit_points`] when
/// the integrand can be written in terms of the complement.
pub fn integrate_unit<F>(f: F, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate_unit_points(|p| f(p.u), tol)
}

/// ∫₀¹ f(p) du where the integrand sees both u and 1 − u.
pub fn integrate_unit_points<F>(f: F, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(UnitPoint) -> f64,
{
    integrate_unit_range(f, UnitPoint::ZERO, UnitPoint::ONE, tol)
}

/// ∫ f(p) du over u ∈ [lo, hi] ⊂ [0, 1].
pub fn integrate_unit_range<F>(f: F, lo: UnitPoint, hi: UnitPoint, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(UnitPoint) -> f64,
{
    if !(lo.u >= 0.0 && hi.v >= 0.0) {
        return Err(Error::Domain(format!("range [{}, {}] leaves the unit interval", lo.u, hi.u)));
    }
    if lo.u >= hi.u {
        return Ok(QuadratureResult::ZERO);
    }
    let mut total = QuadratureResult::ZERO;
    if lo.u < 0.5 {
        let top = hi.u.min(0.5);
        total = total.add(tanh_sinh(&|u| f(UnitPoint::new(u)), lo.u, top, tol)?);
    }
    if hi.v < 0.5 {
        let top = lo.v.min(0.5);
        total = total.add(tanh_sinh(&|v| f(UnitPoint::from_upper(v)), hi.v, top, tol)?);
    }
    Ok(total)
}

/// ∫₀¹ f(p) du for integrands that may fail to be integrable at u → 1.
///
/// The range u > 1/2 is consumed decade by decade in 1 − u; the integral is
/// accepted once two consecutive decades contribute less than the
/// tolerance, and reported as [`Error::Divergent`] if that never happens.
pub fn integrate_unit_tail_checked<F>(f: F, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(UnitPoint) -> f64,
{
    let g = |v: f64| f(UnitPoint::from_upper(v));
    let mut total = tanh_sinh(&|u| f(UnitPoint::new(u)), 0.0, 0.5, tol)?;
    let mut top = 0.5;
    let mut quiet = 0;
    for _ in 0..MAX_DECADES {
        let bottom = 0.1 * top;
        let piece = match tanh_sinh(&g, bottom, top, tol) {
            Ok(p) => p,
            Err(Error::NotConverged { partial, .. }) | Err(Error::NonFinite { at: partial }) => {
                return Err(Error::Divergent { partial: total.value + partial });
            }
            Err(e) => return Err(e),
        };
        total = total.add(piece);
        top = bottom;
        if piece.value.abs() <= tol * total.value.abs().max(1.0) {
            quiet += 1;
            if quiet == 2 {
                return match tanh_sinh(&g, 0.0, top, tol) {
                    Ok(rest) => Ok(total.add(rest)),
                    Err(_) => Err(Error::Divergent { partial: total.value }),
                };
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Divergent { partial: total.value })
}

/// ∫₀^∞ g(x) dx through x = u/(1 − u), with a Cauchy test on the tail.
pub fn integrate_half_line<G>(g: G, tol: f64) -> Result<QuadratureResult>
where
    G: Fn(f64) -> f64,
{
    integrate_unit_tail_checked(
        |p| {
            let x = p.u / p.v;
            let y = g(x);
            if y == 0.0 {
                0.0
            } else {
                y / (p.v * p.v)
            }
        },
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constant_and_monomials() {
        let r = integrate_unit(|_| 1.0, DEFAULT_TOL).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        let r = integrate_unit(|u| u * u, DEFAULT_TOL).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-14);
        assert!(r.error_estimate >= 0.0);
    }

    #[test]
    fn polynomials_up_to_degree_twenty() {
        for deg in 0..=20 {
            let r = integrate_unit(|u| (deg as f64 + 1.0) * u.powi(deg), DEFAULT_TOL).unwrap();
            assert!((r.value - 1.0).abs() < 1e-12, "degree {deg}: {}", r.value);
        }
    }

    #[test]
    fn endpoint_power_singularities() {
        let r = integrate_unit(|u| u.powf(-0.5), DEFAULT_TOL).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10);
        // (1−u)^{-3/4} needs the complement coordinate.
        let r = integrate_unit_points(|p| p.v.powf(-0.75), DEFAULT_TOL).unwrap();
        assert!((r.value - 4.0).abs() < 1e-10, "{}", r.value);
        let r = integrate_unit_points(|p| p.u.powf(-0.75) * p.v.powf(-0.75), DEFAULT_TOL).unwrap();
        let exact = crate::special::beta_fn(0.25, 0.25).unwrap();
        assert_relative_eq!(r.value, exact, max_relative = 1e-10);
    }

    #[test]
    fn partial_ranges() {
        let lo = UnitPoint::new(0.2);
        let hi = UnitPoint::from_upper(1e-6);
        let r = integrate_unit_range(|p| 2.0 * p.u, lo, hi, DEFAULT_TOL).unwrap();
        assert_relative_eq!(r.value, hi.u * hi.u - 0.04, max_relative = 1e-12);
        let r = integrate_unit_range(|p| 2.0 * p.u, hi, lo, DEFAULT_TOL).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn interval_and_half_line() {
        let r = integrate_interval(|x| x.cos(), 0.0, std::f64::consts::FRAC_PI_2, DEFAULT_TOL).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
        let r = integrate_interval(|x| x.sqrt(), 4.0, 9.0, DEFAULT_TOL).unwrap();
        assert_relative_eq!(r.value, 2.0 / 3.0 * (27.0 - 8.0), max_relative = 1e-13);
        let r = integrate_half_line(|x| (-x).exp(), DEFAULT_TOL).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "{}", r.value);
        let r = integrate_interval(|x| (-2.0 * x).exp(), 1.0, f64::INFINITY, DEFAULT_TOL).unwrap();
        assert_relative_eq!(r.value, 0.5 * (-2.0f64).exp(), max_relative = 1e-10);
        let r = integrate_interval(|x| x, 1.0, 0.0, DEFAULT_TOL).unwrap();
        assert!((r.value + 0.5).abs() < 1e-14);
    }

    #[test]
    fn divergence_is_reported() {
        match integrate_half_line(|_| 1.0, DEFAULT_TOL) {
            Err(Error::Divergent { partial }) => assert!(partial > 1e6),
            other => panic!("expected divergence, got {other:?}"),
        }
        match integrate_unit_tail_checked(|p| 1.0 / p.v, DEFAULT_TOL) {
            Err(Error::Divergent { .. }) => {}
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        let r = integrate_unit(|u| if u > 0.3 && u < 0.4 { f64::NAN } else { 1.0 }, DEFAULT_TOL);
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn unit_point_helpers() {
        let p = UnitPoint::from_upper(1e-20);
        assert_eq!(p.u, 1.0);
        assert_relative_eq!(p.ln_u(), -1e-20, max_relative = 1e-12);
        let q = p.pow(2.0);
        assert_relative_eq!(q.v, 2e-20, max_relative = 1e-12);
        assert_eq!(UnitPoint::new(0.25).flip().u, 0.75);
    }
}
