//! Steffensen and Hayashi sandwiches for MRSSU entropies, grid checks of
//! stochastic orders and of reliability aging classes.

use crate::cumulative::{cte_dynamic, cte_dynamic_mrssu, TruncationTime};
use crate::dist::DistributionModel;
use crate::error::{Error, Result};
use crate::special::{integrate_interval, UnitPoint, DEFAULT_TOL};
use crate::tsallis::{density_moment, tsallis_mrssu, EntropyOrder, Route};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Default resolution of the grid checks.
pub const DEFAULT_GRID: usize = 512;
/// Slack allowed in every weak inequality, relative to max(1, |lhs|, |rhs|).
pub const GRID_TOL: f64 = 1e-9;
const MIN_GRID: usize = 16;
/// Survival level at which unbounded supports are cut for x-grids.
const TAIL_EPS: f64 = 1e-9;

fn at_least(lhs: f64, rhs: f64, tol: f64) -> bool {
    if lhs == f64::INFINITY || rhs == f64::NEG_INFINITY {
        return true;
    }
    lhs >= rhs - tol * 1f64.max(lhs.abs()).max(rhs.abs())
}

/// (n + 1)^α/(nα + 1); below 1 for α < 1 and above 1 for α > 1.
pub fn phi(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Domain(format!("entropic index must be positive, got {alpha}")));
    }
    if n < 1 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let n = n as f64;
    Ok((n + 1.0).powf(alpha) / (n * alpha + 1.0))
}

/// Which end of a [`BoundInterval`] is the lower one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// m ≤ value ≤ M
    #[serde(rename = "m-below-M")]
    MinorBelowMajor,
    /// M ≤ value ≤ m
    #[serde(rename = "M-below-m")]
    MajorBelowMinor,
}

impl Orientation {
    fn flip(self) -> Self {
        match self {
            Self::MinorBelowMajor => Self::MajorBelowMinor,
            Self::MajorBelowMinor => Self::MinorBelowMajor,
        }
    }

    /// The orientation claimed for α < 1, flipped for α > 1.
    fn by_regime(alpha: EntropyOrder, below_one: Self) -> Self {
        if alpha.alpha() < 1.0 {
            below_one
        } else {
            below_one.flip()
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::MinorBelowMajor => "m-below-M",
            Self::MajorBelowMinor => "M-below-m",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundInterval {
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    pub orientation: Orientation,
}

impl BoundInterval {
    pub fn lower(&self) -> f64 {
        match self.orientation {
            Orientation::MinorBelowMajor => self.m,
            Orientation::MajorBelowMinor => self.big_m,
        }
    }

    pub fn upper(&self) -> f64 {
        match self.orientation {
            Orientation::MinorBelowMajor => self.big_m,
            Orientation::MajorBelowMinor => self.m,
        }
    }

    /// lower ≤ value ≤ upper up to `tol` relative slack.
    pub fn contains(&self, value: f64, tol: f64) -> bool {
        at_least(value, self.lower(), tol) && at_least(self.upper(), value, tol)
    }

    fn with(self, orientation: Orientation) -> Self {
        Self { orientation, ..self }
    }
}

/// Monotonicity of the density on the support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityShape {
    Constant,
    Nonincreasing,
    Nondecreasing,
}

/// Reads the shape off f(F⁻¹(u)) on a u-grid, which is monotone in the
/// same direction as f.
pub fn density_shape(model: &DistributionModel, grid: usize) -> Option<DensityShape> {
    let grid = grid.max(MIN_GRID);
    let d: Vec<f64> = (0..grid)
        .map(|k| model.density_quantile_point(UnitPoint::new((k as f64 + 0.5) / grid as f64)))
        .collect();
    let down = d.windows(2).all(|w| at_least(w[0], w[1], GRID_TOL));
    let up = d.windows(2).all(|w| at_least(w[1], w[0], GRID_TOL));
    match (down, up) {
        (true, true) => Some(DensityShape::Constant),
        (true, false) => Some(DensityShape::Nonincreasing),
        (false, true) => Some(DensityShape::Nondecreasing),
        (false, false) => None,
    }
}

/// S_α(MRSSU) with three Steffensen sandwiches around it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteffensenReport {
    pub value: f64,
    pub shape: DensityShape,
    /// Bounds from ∫ i^α f^{α−1}(F⁻¹(u)) du over [1−λᵢ, 1] and [0, λᵢ],
    /// oriented as the inequality actually implies.
    pub derived: BoundInterval,
    /// The same m and M with the orientation asserted per α regime.
    pub stated: BoundInterval,
    /// m and M keeping the u^{α(i−1)} factor inside the restricted integrals.
    pub literal: BoundInterval,
}

impl SteffensenReport {
    pub fn derived_holds(&self, tol: f64) -> bool {
        self.derived.contains(self.value, tol)
    }

    pub fn stated_holds(&self, tol: f64) -> bool {
        self.stated.contains(self.value, tol)
    }

    pub fn literal_holds(&self, tol: f64) -> bool {
        self.literal.contains(self.value, tol)
    }
}

/// ∫_lo^hi u^p f^{α−1}(F⁻¹(u)) du.
fn restricted_moment(model: &DistributionModel, a: f64, p: f64, lo: UnitPoint, hi: UnitPoint) -> Result<f64> {
    let from_lo = density_moment(model, a - 1.0, p, 0.0, lo, Route::Auto)?.value;
    if hi.v <= 0.0 {
        return Ok(from_lo);
    }
    Ok(from_lo - density_moment(model, a - 1.0, p, 0.0, hi, Route::Auto)?.value)
}

pub fn steffensen_bounds(model: &DistributionModel, alpha: EntropyOrder, n: usize) -> Result<SteffensenReport> {
    let shape = density_shape(model, DEFAULT_GRID)
        .ok_or_else(|| Error::Precondition(format!("density of {model} is not monotone")))?;
    let a = alpha.alpha();
    let c = alpha.complement();
    let (mut low, mut high, mut lit_low, mut lit_high) = (1.0, 1.0, 1.0, 1.0);
    for i in 1..=n {
        let k = a * (i as f64 - 1.0);
        let lambda = 1.0 / (k + 1.0);
        let w = (i as f64).powf(a);
        // λ and 1 − λ as exact complements: 1 − λ = k/(k + 1).
        let lam = UnitPoint { u: lambda, v: k / (k + 1.0) };
        let top = lam.flip();
        low *= w * restricted_moment(model, a, 0.0, top, UnitPoint::ONE)?;
        high *= w * restricted_moment(model, a, 0.0, UnitPoint::ZERO, lam)?;
        lit_low *= w * restricted_moment(model, a, k, top, UnitPoint::ONE)?;
        lit_high *= w * restricted_moment(model, a, k, UnitPoint::ZERO, lam)?;
    }
    let value = tsallis_mrssu(model, alpha, n)?.value;
    let derived_orientation = match shape {
        DensityShape::Constant | DensityShape::Nonincreasing => Orientation::MajorBelowMinor,
        DensityShape::Nondecreasing => Orientation::MinorBelowMajor,
    };
    let claimed = Orientation::by_regime(
        alpha,
        match shape {
            DensityShape::Nondecreasing => Orientation::MajorBelowMinor,
            _ => Orientation::MinorBelowMajor,
        },
    );
    let interval = BoundInterval { m: (low - 1.0) / c, big_m: (high - 1.0) / c, orientation: derived_orientation };
    Ok(SteffensenReport {
        value,
        shape,
        derived: interval,
        stated: interval.with(claimed),
        literal: BoundInterval { m: (lit_low - 1.0) / c, big_m: (lit_high - 1.0) / c, orientation: claimed },
    })
}

/// CE_α(MRSSU; t) with the Hayashi sandwich.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HayashiReport {
    pub value: f64,
    /// 1/F^α(t)
    pub a: f64,
    /// (1/A)[(1 − α)CE_α(X; t) + 1]
    pub lambda: f64,
    /// None when λ falls outside [0, t − inf support].
    pub interval: Option<BoundInterval>,
}

impl HayashiReport {
    pub fn feasible(&self) -> bool {
        self.interval.is_some()
    }

    /// None when infeasible.
    pub fn holds(&self, tol: f64) -> Option<bool> {
        self.interval.map(|b| b.contains(self.value, tol))
    }
}

pub fn hayashi_bounds(model: &DistributionModel, alpha: EntropyOrder, t: f64, n: usize) -> Result<HayashiReport> {
    let tt = TruncationTime::new(model, t)?;
    let lo = model.support().0;
    if !lo.is_finite() {
        return Err(Error::Unsupported("Hayashi bounds need a finite lower support end".into()));
    }
    let a_exp = alpha.alpha();
    let ft = model.cdf(t);
    let big_a = ft.powf(-a_exp);
    let ce = cte_dynamic(model, alpha, tt)?.value;
    let lambda = (alpha.complement() * ce + 1.0) / big_a;
    let value = cte_dynamic_mrssu(model, alpha, n, tt)?.value;
    let span = t - lo;
    if !(lambda >= 0.0 && lambda <= span * (1.0 + 1e-12)) {
        return Ok(HayashiReport { value, a: big_a, lambda, interval: None });
    }
    let lambda_c = lambda.min(span);
    let (mut left, mut right) = (1.0, 1.0);
    for i in 1..=n {
        let k = a_exp * (i as f64 - 1.0);
        if k == 0.0 {
            left *= lambda_c;
            right *= lambda_c;
            continue;
        }
        let g = |x: f64| (model.cdf(x) / ft).powf(k);
        left *= integrate_interval(g, lo, lo + lambda_c, DEFAULT_TOL)?.value;
        right *= integrate_interval(g, t - lambda_c, t, DEFAULT_TOL)?.value;
    }
    let an = big_a.powi(n as i32);
    let c = alpha.complement();
    let interval = BoundInterval {
        m: (an * left - 1.0) / c,
        big_m: (an * right - 1.0) / c,
        orientation: Orientation::by_regime(alpha, Orientation::MinorBelowMajor),
    };
    Ok(HayashiReport { value, a: big_a, lambda, interval: Some(interval) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    St,
    Hr,
    Disp,
    Convex,
    Star,
    Superadditive,
}

impl OrderKind {
    pub const ALL: [OrderKind; 6] = [Self::St, Self::Hr, Self::Disp, Self::Convex, Self::Star, Self::Superadditive];
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::St => "st",
            Self::Hr => "hr",
            Self::Disp => "disp",
            Self::Convex => "convex",
            Self::Star => "star",
            Self::Superadditive => "superadditive",
        })
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown order '{s}'")))
    }
}

/// First grid point where an inequality failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub point: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderCheckReport {
    pub order: OrderKind,
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// Walks `cells`, returning the first (point, lhs, rhs) with lhs < rhs.
fn first_violation(cells: impl Iterator<Item = (Vec<f64>, f64, f64)>) -> Option<Witness> {
    cells
        .filter(|(_, l, r)| !(l.is_nan() && r.is_nan()))
        .find(|(_, l, r)| !at_least(*l, *r, GRID_TOL))
        .map(|(point, lhs, rhs)| Witness { point, lhs, rhs })
}

fn midpoints(lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    (0..grid).map(|k| lo + (hi - lo) * (k as f64 + 0.5) / grid as f64).collect()
}

fn x_range(model: &DistributionModel) -> (f64, f64) {
    (model.support().0, model.effective_upper(TAIL_EPS))
}

/// G⁻¹(F(x)).
fn transfer(x: &DistributionModel, y: &DistributionModel, at: f64) -> f64 {
    y.quantile_point(x.cdf_point(at))
}

fn hazard_or_inf(model: &DistributionModel, x: f64) -> f64 {
    model.hazard(x).unwrap_or(f64::INFINITY)
}

/// Grid verification of X ≤_order Y.
pub fn check_order(kind: OrderKind, x: &DistributionModel, y: &DistributionModel, grid_size: usize) -> OrderCheckReport {
    let grid = grid_size.max(MIN_GRID);
    let (xl, xh) = x_range(x);
    let (yl, yh) = x_range(y);
    let joint = midpoints(xl.min(yl), xh.max(yh), grid);
    let witness = match kind {
        OrderKind::St => first_violation(joint.iter().map(|&t| (vec![t], x.cdf(t), y.cdf(t)))),
        OrderKind::Hr => {
            first_violation(joint.iter().map(|&t| (vec![t], hazard_or_inf(x, t), hazard_or_inf(y, t))))
        }
        OrderKind::Disp => first_violation((0..grid).map(|k| {
            let p = UnitPoint::new((k as f64 + 0.5) / grid as f64);
            (vec![p.u], x.density_quantile_point(p), y.density_quantile_point(p))
        })),
        OrderKind::Convex => {
            let pts = midpoints(xl, xh, grid);
            let phi: Vec<f64> = pts.iter().map(|&t| transfer(x, y, t)).collect();
            first_violation((1..grid - 1).map(|k| {
                let second = phi[k - 1] + phi[k + 1];
                (vec![pts[k]], second, 2.0 * phi[k])
            }))
        }
        OrderKind::Star => {
            let pts: Vec<f64> = midpoints(xl, xh, grid).into_iter().filter(|&t| t > 0.0).collect();
            let ratio: Vec<f64> = pts.iter().map(|&t| transfer(x, y, t) / t).collect();
            first_violation((1..ratio.len()).map(|k| (vec![pts[k]], ratio[k], ratio[k - 1])))
        }
        OrderKind::Superadditive => {
            let m = triangle_side(grid);
            let step = (xh - xl.max(0.0)) / m as f64;
            let base = xl.max(0.0);
            first_violation(triangle(m).map(|(j, k)| {
                let (s, u) = (base + j as f64 * step, base + k as f64 * step);
                (vec![s, u], transfer(x, y, s + u), transfer(x, y, s) + transfer(x, y, u))
            }))
        }
    };
    OrderCheckReport { order: kind, holds: witness.is_none(), witness }
}

fn triangle_side(grid: usize) -> usize {
    grid.clamp(MIN_GRID, 128)
}

/// (j, k) with j, k ≥ 1 and j + k < m.
fn triangle(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..m).flat_map(move |j| (1..m - j).map(move |k| (j, k)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ReliabilityClass {
    #[serde(rename = "IFR")]
    Ifr,
    #[serde(rename = "DFR")]
    Dfr,
    /// −log F̄(x)/x nondecreasing.
    #[serde(rename = "IFRA")]
    Ifra,
    /// λ(x)/x nondecreasing, the definition as literally stated.
    #[serde(rename = "IFRA-literal")]
    IfraLiteral,
    #[serde(rename = "NBU")]
    Nbu,
}

impl fmt::Display for ReliabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ifr => "IFR",
            Self::Dfr => "DFR",
            Self::Ifra => "IFRA",
            Self::IfraLiteral => "IFRA-literal",
            Self::Nbu => "NBU",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReliabilityReport {
    pub class: ReliabilityClass,
    pub holds: bool,
    pub witness: Option<Witness>,
}

pub fn classify_reliability(model: &DistributionModel, class: ReliabilityClass, grid_size: usize) -> ReliabilityReport {
    let grid = grid_size.max(MIN_GRID);
    let (lo, hi) = x_range(model);
    let pts = midpoints(lo, hi, grid);
    let increasing = |vals: &[f64]| {
        first_violation((1..vals.len()).map(|k| (vec![pts[k]], vals[k], vals[k - 1])))
    };
    let witness = match class {
        ReliabilityClass::Ifr | ReliabilityClass::Dfr => {
            let h: Vec<f64> = pts.iter().map(|&t| hazard_or_inf(model, t)).collect();
            if class == ReliabilityClass::Ifr {
                increasing(&h)
            } else {
                first_violation((1..h.len()).map(|k| (vec![pts[k]], h[k - 1], h[k])))
            }
        }
        ReliabilityClass::Ifra => {
            let r: Vec<f64> = pts.iter().map(|&t| -model.cdf_point(t).ln_v() / t).collect();
            increasing(&r)
        }
        ReliabilityClass::IfraLiteral => {
            let r: Vec<f64> = pts.iter().map(|&t| hazard_or_inf(model, t) / t).collect();
            increasing(&r)
        }
        ReliabilityClass::Nbu => {
            let m = triangle_side(grid);
            let base = lo.max(0.0);
            let step = (hi - base) / m as f64;
            first_violation(triangle(m).map(|(j, k)| {
                let (s, u) = (base + j as f64 * step, base + k as f64 * step);
                (vec![s, u], model.survival(s) * model.survival(u), model.survival(s + u))
            }))
        }
    };
    ReliabilityReport { class, holds: witness.is_none(), witness }
}

/// Nonpositive second differences of log f on the interior of the support.
pub fn is_log_concave(model: &DistributionModel, grid_size: usize) -> bool {
    let grid = grid_size.max(MIN_GRID);
    let (lo, hi) = x_range(model);
    let lf: Vec<f64> = midpoints(lo, hi, grid).into_iter().map(|t| model.pdf(t).ln()).collect();
    if lf.iter().any(|v| !v.is_finite()) {
        return false;
    }
    lf.windows(3).all(|w| at_least(2.0 * w[1], w[0] + w[2], GRID_TOL))
}
