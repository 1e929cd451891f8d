//! Gamma, Beta and incomplete Beta functions, plus the quadrature engine
//! that every entropy integral in this crate reduces to.
//!
//! The special functions are thin validated wrappers over `statrs`; the
//! quadrature lives in [`quadrature`].

mod quadrature;

pub use quadrature::{
    integrate_half_line, integrate_interval, integrate_unit, integrate_unit_points,
    integrate_unit_range, integrate_unit_tail_checked, QuadratureResult, UnitPoint, DEFAULT_TOL,
};

use crate::error::{domain, Result};
use statrs::function::{beta as sbeta, gamma as sgamma};

fn check_positive(name: &str, a: f64) -> Result<()> {
    if a.is_finite() && a > 0.0 {
        Ok(())
    } else {
        domain(format!("{name} must be a positive finite number, got {a}"))
    }
}

/// Γ(a) for a > 0.
pub fn gamma_fn(a: f64) -> Result<f64> {
    check_positive("gamma argument", a)?;
    Ok(sgamma::gamma(a))
}

/// ln Γ(a) for a > 0.
pub fn ln_gamma_fn(a: f64) -> Result<f64> {
    check_positive("gamma argument", a)?;
    Ok(sgamma::ln_gamma(a))
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    let ln = ln_beta_fn(a, b)?;
    // With a small integer argument m, B(x, m) = (m−1)!/(x(x+1)…(x+m−1))
    // is a short product and much tighter than exp(ln B).
    let small_int = |m: f64| m.fract() == 0.0 && m <= 64.0;
    let (x, m) = if small_int(b) { (a, b) } else if small_int(a) { (b, a) } else { return Ok(ln.exp()) };
    let mut v = 1.0 / x;
    for k in 1..m as u32 {
        v *= k as f64 / (x + k as f64);
    }
    Ok(v)
}

/// ψ(a) = d/da ln Γ(a) for a > 0.
pub fn digamma_fn(a: f64) -> Result<f64> {
    check_positive("digamma argument", a)?;
    Ok(sgamma::digamma(a))
}

pub fn ln_beta_fn(a: f64, b: f64) -> Result<f64> {
    check_positive("beta argument a", a)?;
    check_positive("beta argument b", b)?;
    Ok(sbeta::ln_beta(a, b))
}

fn check_unit(z: f64) -> Result<()> {
    if (0.0..=1.0).contains(&z) {
        Ok(())
    } else {
        domain(format!("incomplete beta limit must lie in [0, 1], got {z}"))
    }
}

/// Lower incomplete beta B_z(a,b) = ∫₀ᶻ u^{a−1}(1−u)^{b−1} du.
pub fn incomplete_beta_lower(z: f64, a: f64, b: f64) -> Result<f64> {
    check_unit(z)?;
    incomplete_beta_lower_at(UnitPoint::new(z), a, b)
}

/// Upper incomplete beta B̄_t(a,b) = ∫ₜ¹ u^{a−1}(1−u)^{b−1} du.
pub fn incomplete_beta_upper(t: f64, a: f64, b: f64) -> Result<f64> {
    check_unit(t)?;
    incomplete_beta_upper_at(UnitPoint::new(t), a, b)
}

/// Lower incomplete beta at a point whose complement is known exactly.
pub fn incomplete_beta_lower_at(z: UnitPoint, a: f64, b: f64) -> Result<f64> {
    let full = beta_fn(a, b)?;
    if z.u <= 0.0 {
        return Ok(0.0);
    }
    if z.v <= 0.0 {
        return Ok(full);
    }
    // I_z(a,b) = 1 − I_{1−z}(b,a); evaluate whichever argument is small.
    let reg = if z.u <= 0.5 {
        sbeta::beta_reg(a, b, z.u)
    } else {
        1.0 - sbeta::beta_reg(b, a, z.v)
    };
    Ok(full * reg)
}

/// Upper incomplete beta at a point whose complement is known exactly.
///
/// Uses B̄_t(a,b) = B_{1−t}(b,a) so that t close to one keeps full
/// relative precision.
pub fn incomplete_beta_upper_at(t: UnitPoint, a: f64, b: f64) -> Result<f64> {
    incomplete_beta_lower_at(t.flip(), b, a)
}
