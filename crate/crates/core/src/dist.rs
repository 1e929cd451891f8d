//! Parametric lifetime laws and the functional forms the entropy formulas
//! consume: pdf, cdf, quantile, density-quantile f(F⁻¹(u)) and hazard.
//!
//! Every law is immutable after construction. Besides the three built-in
//! families the model can wrap a caller-supplied law, a proportional
//! reversed hazard transform (cdf F^θ) and a positive affine map aX + b.
//! The maximum of i draws is the reversed hazard transform with θ = i.
//!
//! Probability levels are passed around as [`UnitPoint`]s so that tails
//! near u = 1 keep their relative precision.

use crate::error::{Error, Result};
use crate::special::UnitPoint;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Family tag of a [`DistributionModel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Uniform on (0, b).
    Uniform,
    /// Exponential with rate θ.
    Exponential,
    /// beta(θ, 1): F(x) = x^θ on (0, 1).
    Power,
    /// Caller-supplied (pdf, cdf, quantile) triple.
    Custom,
    /// cdf F^θ of a base law.
    ReversedHazard,
    /// aX + b of a base law.
    Affine,
}

type RealMap = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A user-defined law given by its pdf, cdf and quantile on [lower, upper].
///
/// Consistency of the three maps is not checked on construction; call
/// [`DistributionModel::validate`] once before heavy use.
pub struct CustomLaw {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub pdf: RealMap,
    pub cdf: RealMap,
    pub quantile: RealMap,
}

impl fmt::Debug for CustomLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomLaw")
            .field("name", &self.name)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
enum Kind {
    Uniform { b: f64 },
    Exponential { theta: f64 },
    Power { theta: f64 },
    Custom(Arc<CustomLaw>),
    ReversedHazard { base: Arc<DistributionModel>, theta: f64 },
    Affine { base: Arc<DistributionModel>, scale: f64, shift: f64 },
}

/// Density-quantile functions of the form f(F⁻¹(u)) = c·u^r·(1−u)^s.
///
/// All built-in families (and their affine images) have this shape, which
/// turns every entropy integral into a Beta function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaKernel {
    pub c: f64,
    pub r: f64,
    pub s: f64,
}

/// A continuous lifetime law.
#[derive(Debug, Clone)]
pub struct DistributionModel {
    kind: Kind,
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {x}")))
    }
}

impl DistributionModel {
    pub fn uniform(b: f64) -> Result<Self> {
        Ok(Self { kind: Kind::Uniform { b: positive("b", b)? } })
    }

    pub fn exponential(theta: f64) -> Result<Self> {
        Ok(Self { kind: Kind::Exponential { theta: positive("theta", theta)? } })
    }

    /// The beta(θ, 1) law with cdf x^θ on (0, 1).
    pub fn power(theta: f64) -> Result<Self> {
        Ok(Self { kind: Kind::Power { theta: positive("theta", theta)? } })
    }

    pub fn custom(law: CustomLaw) -> Result<Self> {
        if !(law.lower.is_finite() && law.lower < law.upper) || law.upper.is_nan() {
            return Err(Error::InvalidParameter(format!(
                "custom law support [{}, {}] is not a proper interval",
                law.lower, law.upper
            )));
        }
        Ok(Self { kind: Kind::Custom(Arc::new(law)) })
    }

    pub fn family(&self) -> Family {
        match self.kind {
            Kind::Uniform { .. } => Family::Uniform,
            Kind::Exponential { .. } => Family::Exponential,
            Kind::Power { .. } => Family::Power,
            Kind::Custom(_) => Family::Custom,
            Kind::ReversedHazard { .. } => Family::ReversedHazard,
            Kind::Affine { .. } => Family::Affine,
        }
    }

    /// (lower, upper) end points of the support; upper may be infinite.
    pub fn support(&self) -> (f64, f64) {
        match &self.kind {
            Kind::Uniform { b } => (0.0, *b),
            Kind::Exponential { .. } => (0.0, f64::INFINITY),
            Kind::Power { .. } => (0.0, 1.0),
            Kind::Custom(law) => (law.lower, law.upper),
            Kind::ReversedHazard { base, .. } => base.support(),
            Kind::Affine { base, scale, shift } => {
                let (lo, hi) = base.support();
                (scale * lo + shift, scale * hi + shift)
            }
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.support().1.is_finite()
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Uniform { b } => {
                if (0.0..=*b).contains(&x) {
                    1.0 / b
                } else {
                    0.0
                }
            }
            Kind::Exponential { theta } => {
                if x < 0.0 {
                    0.0
                } else {
                    theta * (-theta * x).exp()
                }
            }
            Kind::Power { theta } => {
                if !(0.0..=1.0).contains(&x) {
                    0.0
                } else if x == 0.0 {
                    match theta.partial_cmp(&1.0) {
                        Some(std::cmp::Ordering::Equal) => 1.0,
                        Some(std::cmp::Ordering::Greater) => 0.0,
                        _ => f64::INFINITY,
                    }
                } else {
                    theta * x.powf(theta - 1.0)
                }
            }
            Kind::Custom(law) => {
                if x < law.lower || x > law.upper {
                    0.0
                } else {
                    (law.pdf)(x)
                }
            }
            Kind::ReversedHazard { base, theta } => {
                let f = base.pdf(x);
                if f == 0.0 {
                    return 0.0;
                }
                let p = base.cdf_point(x);
                theta * ((theta - 1.0) * p.ln_u()).exp() * f
            }
            Kind::Affine { base, scale, shift } => base.pdf((x - shift) / scale) / scale,
        }
    }

    /// F(x) and 1 − F(x), each to full precision.
    pub fn cdf_point(&self, x: f64) -> UnitPoint {
        match &self.kind {
            Kind::Uniform { b } => {
                if x <= 0.0 {
                    UnitPoint::ZERO
                } else if x >= *b {
                    UnitPoint::ONE
                } else {
                    UnitPoint { u: x / b, v: (b - x) / b }
                }
            }
            Kind::Exponential { theta } => {
                if x <= 0.0 {
                    UnitPoint::ZERO
                } else {
                    UnitPoint { u: -(-theta * x).exp_m1(), v: (-theta * x).exp() }
                }
            }
            Kind::Power { theta } => {
                if x <= 0.0 {
                    UnitPoint::ZERO
                } else if x >= 1.0 {
                    UnitPoint::ONE
                } else {
                    UnitPoint::from_ln(theta * x.ln())
                }
            }
            Kind::Custom(law) => {
                if x <= law.lower {
                    UnitPoint::ZERO
                } else if x >= law.upper {
                    UnitPoint::ONE
                } else {
                    UnitPoint::new((law.cdf)(x).clamp(0.0, 1.0))
                }
            }
            Kind::ReversedHazard { base, theta } => {
                let p = base.cdf_point(x);
                if p.u <= 0.0 {
                    UnitPoint::ZERO
                } else {
                    p.pow(*theta)
                }
            }
            Kind::Affine { base, scale, shift } => base.cdf_point((x - shift) / scale),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.cdf_point(x).u
    }

    pub fn survival(&self, x: f64) -> f64 {
        self.cdf_point(x).v
    }

    /// F⁻¹ at a level given with its complement; no range check.
    pub fn quantile_point(&self, p: UnitPoint) -> f64 {
        match &self.kind {
            Kind::Uniform { b } => {
                if p.u < 0.5 {
                    p.u * b
                } else {
                    b - p.v * b
                }
            }
            Kind::Exponential { theta } => {
                if p.u < 0.5 {
                    -(-p.u).ln_1p() / theta
                } else {
                    -p.v.ln() / theta
                }
            }
            Kind::Power { theta } => (p.ln_u() / theta).exp(),
            Kind::Custom(law) => (law.quantile)(p.u),
            Kind::ReversedHazard { base, theta } => base.quantile_point(p.pow(1.0 / theta)),
            Kind::Affine { base, scale, shift } => scale * base.quantile_point(p) + shift,
        }
    }

    fn check_level(u: f64) -> Result<()> {
        if u > 0.0 && u < 1.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!("probability level must lie in (0, 1), got {u}")))
        }
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        Self::check_level(u)?;
        Ok(self.quantile_point(UnitPoint::new(u)))
    }

    /// f(F⁻¹(u)) at a level given with its complement; no range check.
    pub fn density_quantile_point(&self, p: UnitPoint) -> f64 {
        match &self.kind {
            Kind::Uniform { b } => 1.0 / b,
            Kind::Exponential { theta } => theta * p.v,
            Kind::Power { theta } => theta * ((theta - 1.0) / theta * p.ln_u()).exp(),
            Kind::Custom(law) => (law.pdf)((law.quantile)(p.u)),
            Kind::ReversedHazard { base, theta } => {
                let q = p.pow(1.0 / theta);
                theta * ((theta - 1.0) / theta * p.ln_u()).exp() * base.density_quantile_point(q)
            }
            Kind::Affine { base, scale, .. } => base.density_quantile_point(p) / scale,
        }
    }

    pub fn density_quantile(&self, u: f64) -> Result<f64> {
        Self::check_level(u)?;
        Ok(self.density_quantile_point(UnitPoint::new(u)))
    }

    /// λ(x) = f(x)/(1 − F(x)).
    pub fn hazard(&self, x: f64) -> Result<f64> {
        if let Kind::Exponential { theta } = self.kind {
            return Ok(if x < 0.0 { 0.0 } else { theta });
        }
        let s = self.survival(x);
        if s <= 0.0 {
            return Err(Error::Domain(format!("hazard undefined at x = {x}: survival is zero")));
        }
        Ok(self.pdf(x) / s)
    }

    /// Law of the maximum of `i` independent draws.
    pub fn max_order_stat(&self, i: usize) -> Result<MaxOrderStatLaw> {
        if i < 1 {
            return Err(Error::Domain("order statistic index must be at least 1".into()));
        }
        Ok(MaxOrderStatLaw { base: self.clone(), i })
    }

    /// Proportional reversed hazard transform: the law with cdf F^θ.
    pub fn reversed_hazard(&self, theta: f64) -> Result<Self> {
        let theta = positive("theta", theta)?;
        if theta == 1.0 {
            return Ok(self.clone());
        }
        let kind = match &self.kind {
            Kind::Uniform { b } => {
                let p = Self::power(theta)?;
                if *b == 1.0 {
                    return Ok(p);
                }
                Kind::Affine { base: Arc::new(p), scale: *b, shift: 0.0 }
            }
            Kind::Power { theta: t } => Kind::Power { theta: t * theta },
            Kind::ReversedHazard { base, theta: t } => {
                Kind::ReversedHazard { base: base.clone(), theta: t * theta }
            }
            Kind::Affine { base, scale, shift } => Kind::Affine {
                base: Arc::new(base.reversed_hazard(theta)?),
                scale: *scale,
                shift: *shift,
            },
            _ => Kind::ReversedHazard { base: Arc::new(self.clone()), theta },
        };
        Ok(Self { kind })
    }

    /// Law of aX + b for a > 0.
    pub fn affine(&self, a: f64, b: f64) -> Result<Self> {
        let a = positive("scale", a)?;
        if !b.is_finite() {
            return Err(Error::InvalidParameter(format!("shift must be finite, got {b}")));
        }
        if a == 1.0 && b == 0.0 {
            return Ok(self.clone());
        }
        let kind = match &self.kind {
            Kind::Uniform { b: w } if b == 0.0 => Kind::Uniform { b: a * w },
            Kind::Exponential { theta } if b == 0.0 => Kind::Exponential { theta: theta / a },
            Kind::Affine { base, scale, shift } => {
                Kind::Affine { base: base.clone(), scale: a * scale, shift: a * shift + b }
            }
            _ => Kind::Affine { base: Arc::new(self.clone()), scale: a, shift: b },
        };
        Ok(Self { kind })
    }

    /// Closed-form density-quantile shape, when the law has one.
    pub fn beta_kernel(&self) -> Option<BetaKernel> {
        match &self.kind {
            Kind::Uniform { b } => Some(BetaKernel { c: 1.0 / b, r: 0.0, s: 0.0 }),
            Kind::Exponential { theta } => Some(BetaKernel { c: *theta, r: 0.0, s: 1.0 }),
            Kind::Power { theta } => Some(BetaKernel { c: *theta, r: (theta - 1.0) / theta, s: 0.0 }),
            Kind::Affine { base, scale, .. } => {
                base.beta_kernel().map(|k| BetaKernel { c: k.c / scale, ..k })
            }
            _ => None,
        }
    }

    /// x at which the survival function drops to `eps` (or the support end).
    pub fn effective_upper(&self, eps: f64) -> f64 {
        let (_, hi) = self.support();
        if hi.is_finite() {
            hi
        } else {
            self.quantile_point(UnitPoint::from_upper(eps))
        }
    }

    /// Grid-based consistency check of the pdf/cdf/quantile triple.
    pub fn validate(&self, grid: usize) -> ValidationReport {
        let grid = grid.max(8);
        let mut issues = Vec::new();
        let mut prev = 0.0;
        for k in 0..grid {
            let u = (k as f64 + 0.5) / grid as f64;
            let x = self.quantile_point(UnitPoint::new(u));
            let back = self.cdf(x);
            if (back - u).abs() > 1e-8 {
                issues.push(format!("cdf(quantile({u})) = {back}"));
            }
            if back + 1e-12 < prev {
                issues.push(format!("cdf decreases near x = {x}"));
            }
            prev = back;
            let h = 1e-6 * x.abs().max(1.0);
            let (lo, hi) = self.support();
            if x - h > lo && x + h < hi {
                let deriv = (self.cdf(x + h) - self.cdf(x - h)) / (2.0 * h);
                let f = self.pdf(x);
                if (deriv - f).abs() > 1e-4 * f.abs().max(1.0) {
                    issues.push(format!("pdf({x}) = {f} but numeric derivative of cdf is {deriv}"));
                }
            }
            if self.pdf(x) < 0.0 {
                issues.push(format!("negative density at x = {x}"));
            }
        }
        ValidationReport { consistent: issues.is_empty(), issues }
    }
}

/// Outcome of [`DistributionModel::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub consistent: bool,
    pub issues: Vec<String>,
}

/// Law of the largest of `i` independent draws from a base law.
#[derive(Debug, Clone)]
pub struct MaxOrderStatLaw {
    base: DistributionModel,
    i: usize,
}

impl MaxOrderStatLaw {
    pub fn base(&self) -> &DistributionModel {
        &self.base
    }

    pub fn index(&self) -> usize {
        self.i
    }

    /// i·f(x)·F(x)^{i−1}
    pub fn pdf(&self, x: f64) -> f64 {
        let f = self.base.pdf(x);
        if f == 0.0 || self.i == 1 {
            return f;
        }
        self.i as f64 * f * self.base.cdf(x).powi(self.i as i32 - 1)
    }

    /// F(x)^i
    pub fn cdf(&self, x: f64) -> f64 {
        self.base.cdf(x).powi(self.i as i32)
    }

    /// The same law as a stand-alone model (cdf F^i).
    pub fn to_model(&self) -> DistributionModel {
        self.base
            .reversed_hazard(self.i as f64)
            .expect("order statistic index is a positive finite exponent")
    }
}

impl fmt::Display for DistributionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Uniform { b } => write!(f, "uniform:b={b}"),
            Kind::Exponential { theta } => write!(f, "exp:theta={theta}"),
            Kind::Power { theta } => write!(f, "beta:theta={theta}"),
            Kind::Custom(law) => write!(f, "custom:{}", law.name),
            Kind::ReversedHazard { base, theta } => write!(f, "prhrm({base},theta={theta})"),
            Kind::Affine { base, scale, shift } => write!(f, "affine({base},a={scale},b={shift})"),
        }
    }
}

/// Parses `family:key=value,...`, e.g. `uniform:b=2`, `exp:theta=1`,
/// `beta:theta=2`.
impl FromStr for DistributionModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, params) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("model spec `{s}` lacks `family:` prefix")))?;
        let mut pairs = Vec::new();
        for item in params.split(',') {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, found `{item}`")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("`{v}` is not a number")))?;
            pairs.push((k.trim().to_string(), v));
        }
        let take = |key: &str| -> Result<f64> {
            let mut found = None;
            for (k, v) in &pairs {
                if k == key {
                    if found.is_some() {
                        return Err(Error::Parse(format!("parameter `{key}` given twice")));
                    }
                    found = Some(*v);
                } else {
                    return Err(Error::Parse(format!("unknown parameter `{k}` for `{family}`")));
                }
            }
            found.ok_or_else(|| Error::Parse(format!("`{family}` requires `{key}=`")))
        };
        match family.trim() {
            "uniform" => Self::uniform(take("b")?),
            "exp" | "exponential" => Self::exponential(take("theta")?),
            "beta" | "power" => Self::power(take("theta")?),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn builtins() -> Vec<DistributionModel> {
        vec![
            DistributionModel::uniform(1.0).unwrap(),
            DistributionModel::uniform(2.5).unwrap(),
            DistributionModel::exponential(1.0).unwrap(),
            DistributionModel::exponential(0.5).unwrap(),
            DistributionModel::power(2.0).unwrap(),
            DistributionModel::power(0.5).unwrap(),
        ]
    }

    #[test]
    fn pdf_examples() {
        assert_eq!(DistributionModel::uniform(2.0).unwrap().pdf(1.0), 0.5);
        assert_eq!(DistributionModel::exponential(1.0).unwrap().pdf(0.0), 1.0);
        assert_eq!(DistributionModel::power(2.0).unwrap().pdf(0.5), 1.0);
        assert_eq!(DistributionModel::uniform(2.0).unwrap().pdf(3.0), 0.0);
        assert_eq!(DistributionModel::exponential(1.0).unwrap().pdf(-1.0), 0.0);
    }

    #[test]
    fn quantile_and_density_quantile_examples() {
        let u = DistributionModel::uniform(3.0).unwrap();
        for k in 1..10 {
            assert_eq!(u.density_quantile(k as f64 / 10.0).unwrap(), 1.0 / 3.0);
        }
        let e = DistributionModel::exponential(2.0).unwrap();
        assert_relative_eq!(e.density_quantile(0.3).unwrap(), 2.0 * 0.7, max_relative = 1e-14);
        let p = DistributionModel::power(2.0).unwrap();
        assert_relative_eq!(p.quantile(0.25).unwrap(), 0.5, max_relative = 1e-14);
        assert!(p.quantile(0.0).is_err());
        assert!(p.quantile(1.0).is_err());
        assert!(e.density_quantile(1.5).is_err());
    }

    #[test]
    fn hazard_values() {
        let u = DistributionModel::uniform(1.0).unwrap();
        assert_relative_eq!(u.hazard(0.5).unwrap(), 2.0, max_relative = 1e-14);
        assert!(u.hazard(1.0).is_err());
        let e = DistributionModel::exponential(3.0).unwrap();
        assert_eq!(e.hazard(10.0).unwrap(), 3.0);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(DistributionModel::uniform(0.0).is_err());
        assert!(DistributionModel::exponential(-1.0).is_err());
        assert!(DistributionModel::power(f64::NAN).is_err());
        let e = DistributionModel::exponential(1.0).unwrap();
        assert!(e.max_order_stat(0).is_err());
        assert!(e.affine(0.0, 1.0).is_err());
        assert!(e.reversed_hazard(-2.0).is_err());
    }

    #[test]
    fn max_order_stat_examples() {
        let u = DistributionModel::uniform(1.0).unwrap();
        let m1 = u.max_order_stat(1).unwrap();
        let m2 = u.max_order_stat(2).unwrap();
        let e2 = DistributionModel::exponential(1.0).unwrap().max_order_stat(2).unwrap();
        for k in 1..20 {
            let x = k as f64 / 20.0;
            assert_eq!(m1.pdf(x), u.pdf(x));
            assert_eq!(m1.cdf(x), u.cdf(x));
            assert_relative_eq!(m2.pdf(x), 2.0 * x, max_relative = 1e-14);
            assert_relative_eq!(m2.cdf(x), x * x, max_relative = 1e-14);
            let y = 3.0 * x;
            assert_relative_eq!(e2.cdf(y), (1.0 - (-y).exp()).powi(2), max_relative = 1e-13);
        }
        assert_eq!(m2.to_model().family(), Family::Power);
    }

    #[test]
    fn cdf_quantile_round_trip() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        for m in builtins() {
            for _ in 0..1000 {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                let u = ((state >> 11) as f64 + 0.5) / (1u64 << 53) as f64;
                let x = m.quantile(u).unwrap();
                assert!((m.cdf(x) - u).abs() < 1e-12, "{m} u={u}");
                let dq = m.density_quantile(u).unwrap();
                assert_relative_eq!(dq, m.pdf(x), max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn pdf_matches_numeric_derivative() {
        for m in builtins() {
            for k in 1..=100 {
                let u = k as f64 / 101.0;
                let x = m.quantile(u).unwrap();
                let h = 1e-5 * x.max(1e-3);
                let d = (m.cdf(x + h) - m.cdf(x - h)) / (2.0 * h);
                assert_relative_eq!(d, m.pdf(x), max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn max_order_cdf_is_power_of_base() {
        for m in builtins() {
            for i in 1..=5 {
                let law = m.max_order_stat(i).unwrap();
                let as_model = law.to_model();
                for k in 1..=100 {
                    let x = m.quantile(k as f64 / 101.0).unwrap();
                    let want = m.cdf(x).powi(i as i32);
                    assert!((law.cdf(x) - want).abs() < 1e-12);
                    assert!((as_model.cdf(x) - want).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn transforms_simplify() {
        let u = DistributionModel::uniform(1.0).unwrap();
        assert_eq!(u.reversed_hazard(2.0).unwrap().to_string(), "beta:theta=2");
        assert_eq!(u.reversed_hazard(1.0).unwrap().to_string(), "uniform:b=1");
        assert_eq!(u.affine(2.0, 0.0).unwrap().to_string(), "uniform:b=2");
        let e = DistributionModel::exponential(1.0).unwrap();
        assert_eq!(e.affine(0.5, 0.0).unwrap().to_string(), "exp:theta=2");
        let shifted = u.affine(0.5, 1.0).unwrap();
        assert_eq!(shifted.support(), (1.0, 1.5));
        assert_relative_eq!(shifted.cdf(1.25), 0.5, max_relative = 1e-14);
        assert_relative_eq!(shifted.density_quantile(0.3).unwrap(), 2.0, max_relative = 1e-14);
        let k = shifted.beta_kernel().unwrap();
        assert_eq!(k, BetaKernel { c: 2.0, r: 0.0, s: 0.0 });
    }

    #[test]
    fn exponentiated_exponential_is_consistent() {
        let m = DistributionModel::exponential(1.5).unwrap().reversed_hazard(2.5).unwrap();
        assert_eq!(m.family(), Family::ReversedHazard);
        let report = m.validate(200);
        assert!(report.consistent, "{:?}", report.issues);
    }

    #[test]
    fn custom_models_and_validation() {
        let good = DistributionModel::custom(CustomLaw {
            name: "tri".into(),
            lower: 0.0,
            upper: 1.0,
            pdf: Box::new(|x| 2.0 * (1.0 - x)),
            cdf: Box::new(|x| 1.0 - (1.0 - x) * (1.0 - x)),
            quantile: Box::new(|u| 1.0 - (1.0 - u).sqrt()),
        })
        .unwrap();
        assert!(good.validate(64).consistent);
        assert_relative_eq!(good.density_quantile(0.75).unwrap(), 1.0, max_relative = 1e-12);
        let bad = DistributionModel::custom(CustomLaw {
            name: "bad".into(),
            lower: 0.0,
            upper: 1.0,
            pdf: Box::new(|_| 3.0),
            cdf: Box::new(|x| x),
            quantile: Box::new(|u| u),
        })
        .unwrap();
        assert!(!bad.validate(64).consistent);
    }

    #[test]
    fn spec_strings() {
        let m: DistributionModel = "uniform:b=2".parse().unwrap();
        assert_eq!(m.support(), (0.0, 2.0));
        let m: DistributionModel = "exp:theta=1".parse().unwrap();
        assert_eq!(m.family(), Family::Exponential);
        let m: DistributionModel = "beta:theta=2".parse().unwrap();
        assert_eq!(m.family(), Family::Power);
        for bad in ["uniform", "uniform:c=2", "exp:theta=x", "gamma:k=2", "exp:theta=1,theta=2", "uniform:b"] {
            assert!(matches!(bad.parse::<DistributionModel>(), Err(Error::Parse(_))), "{bad}");
        }
        assert!(matches!("uniform:b=-1".parse::<DistributionModel>(), Err(Error::InvalidParameter(_))));
    }
}
