//! Monte Carlo draws of SRS, RSS and MRSSU samples under perfect ranking,
//! with plug-in entropy estimates and Kolmogorov–Smirnov law checks.
//!
//! Every (replication, unit) cell reads its own window of a ChaCha8 stream:
//! the unit index selects the stream and the replication the word offset,
//! so the output does not depend on how the work is split across threads.

use crate::dist::DistributionModel;
use crate::error::{Error, Result};
use crate::residual::order_stat_survival;
use crate::special::{self, UnitPoint};
use crate::tsallis::{Design, DesignSpec, EntropyOrder, EntropyReport, Method};
use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct SimulationConfig {
    pub seed: u64,
    pub replications: usize,
    pub design: DesignSpec,
    pub model: DistributionModel,
}

impl SimulationConfig {
    pub fn new(model: DistributionModel, design: DesignSpec, replications: usize, seed: u64) -> Result<Self> {
        if replications == 0 {
            return Err(Error::Domain("at least one replication is needed".into()));
        }
        Ok(Self { seed, replications, design, model })
    }
}

/// Replications × n values, row-major by replication.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleMatrix {
    pub replications: usize,
    pub n: usize,
    pub values: Vec<f64>,
}

impl SampleMatrix {
    pub fn row(&self, r: usize) -> &[f64] {
        &self.values[r * self.n..(r + 1) * self.n]
    }

    /// Values of unit `i` (1-based) across replications.
    pub fn column(&self, i: usize) -> Vec<f64> {
        (0..self.replications).map(|r| self.values[r * self.n + i - 1]).collect()
    }

    pub fn column_mean(&self, i: usize) -> f64 {
        self.column(i).iter().sum::<f64>() / self.replications as f64
    }
}

/// Uniforms consumed by unit i of a design of size n.
fn draws_per_unit(design: Design, i: usize, n: usize) -> usize {
    match design {
        Design::Srs => 1,
        Design::Rss => n,
        Design::Mrssu => i,
    }
}

/// The unit's probability level: one uniform, the i-th smallest of n, or the
/// largest of i.
fn unit_level(cfg: &SimulationConfig, rep: usize, i: usize) -> f64 {
    let n = cfg.design.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(i as u64);
    // Two 32-bit words per f64; n draws is the most any unit needs.
    rng.set_word_pos(rep as u128 * 2 * n as u128);
    let k = draws_per_unit(cfg.design.design, i, n);
    let mut draw = || -> f64 { rng.sample(Open01) };
    match cfg.design.design {
        Design::Srs => draw(),
        Design::Mrssu => (0..k).map(|_| draw()).fold(0.0, f64::max),
        Design::Rss => {
            let mut u: Vec<f64> = (0..k).map(|_| draw()).collect();
            u.sort_by(f64::total_cmp);
            u[i - 1]
        }
    }
}

/// Inverse-transform draws of every replication.
pub fn draw_design(cfg: &SimulationConfig) -> SampleMatrix {
    let n = cfg.design.n;
    let mut values = vec![0.0; cfg.replications * n];
    values.par_chunks_mut(n).enumerate().for_each(|(rep, row)| {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = cfg.model.quantile_point(UnitPoint::new(unit_level(cfg, rep, j + 1)));
        }
    });
    SampleMatrix { replications: cfg.replications, n, values }
}

/// (i, n) of the order statistic a design unit follows.
fn unit_law(design: DesignSpec, i: usize) -> (usize, usize) {
    match design.design {
        Design::Srs => (1, 1),
        Design::Rss => (i, design.n),
        Design::Mrssu => (i, i),
    }
}

/// ln f_{(i:n)}(x).
fn ln_order_stat_pdf(model: &DistributionModel, i: usize, n: usize, x: f64) -> Result<f64> {
    let f = model.pdf(x);
    if f <= 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let p = model.cdf_point(x);
    let (fi, fnn) = (i as f64, n as f64);
    let mut ln = f.ln() - special::ln_beta_fn(fi, fnn - fi + 1.0)?;
    if i > 1 {
        ln += (fi - 1.0) * p.ln_u();
    }
    if n > i {
        ln += (fnn - fi) * p.ln_v();
    }
    Ok(ln)
}

/// Cdf of the unit's law at x.
fn unit_cdf(model: &DistributionModel, i: usize, n: usize, x: f64) -> Result<f64> {
    Ok(1.0 - order_stat_survival(model, i, n, x)?.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "measure")]
pub enum Measure {
    Tsallis,
    /// Residual entropy at time t.
    Residual { t: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComponentEstimate {
    /// Estimate of the unit's factor ∫ f_unit^α.
    pub mean: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    /// One delta-method standard error.
    pub halfwidth: f64,
    pub components: Vec<ComponentEstimate>,
}

impl McEstimate {
    pub fn report(&self) -> EntropyReport {
        EntropyReport { value: self.value, method: Method::MonteCarlo, error_estimate: self.halfwidth }
    }

    /// |value − target| ≤ k·halfwidth, plus a few ulps so that degenerate
    /// estimators (constant density, zero spread) compare on rounding alone.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        let ulps = 16.0 * f64::EPSILON * 1f64.max(target.abs());
        (self.value - target).abs() <= k * self.halfwidth + ulps
    }
}

/// Plug-in estimate using ∫ f_unit^α dx = E[f_unit^{α−1}(Y)] per unit and
/// the product composition across units.
pub fn mc_entropy_estimate(cfg: &SimulationConfig, alpha: EntropyOrder, measure: Measure) -> Result<McEstimate> {
    let sample = draw_design(cfg);
    let a = alpha.alpha();
    let reps = cfg.replications as f64;
    let mut components = Vec::with_capacity(cfg.design.n);
    for unit in 1..=cfg.design.n {
        let (i, n) = unit_law(cfg.design, unit);
        let (t, scale) = match measure {
            Measure::Tsallis => (f64::NEG_INFINITY, 1.0),
            Measure::Residual { t } => {
                let s = order_stat_survival(&cfg.model, i, n, t)?.value();
                if s <= 0.0 {
                    return Err(Error::Domain(format!("unit {unit} has zero survival at t = {t}")));
                }
                (t, s.powf(-a))
            }
        };
        let terms = sample
            .column(unit)
            .into_iter()
            .map(|y| {
                if y <= t {
                    return Ok(0.0);
                }
                Ok(scale * ((a - 1.0) * ln_order_stat_pdf(&cfg.model, i, n, y)?).exp())
            })
            .collect::<Result<Vec<f64>>>()?;
        let mean = terms.iter().sum::<f64>() / reps;
        let var = if cfg.replications > 1 {
            terms.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (reps - 1.0)
        } else {
            0.0
        };
        components.push(ComponentEstimate { mean, std_error: (var / reps).sqrt() });
    }
    let c = alpha.complement();
    let product: f64 = components.iter().map(|k| k.mean).product();
    let var: f64 = (0..components.len())
        .map(|j| {
            let others: f64 = components.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, k)| k.mean).product();
            (others * components[j].std_error / c).powi(2)
        })
        .sum();
    Ok(McEstimate { value: (product - 1.0) / c, halfwidth: var.sqrt(), components })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsReport {
    pub statistic: f64,
    pub p_value: f64,
    pub sample_size: usize,
}

impl KsReport {
    pub fn passes(&self, significance: f64) -> bool {
        self.p_value > significance
    }
}

/// Q_KS(λ) = 2 Σ (−1)^{k−1} e^{−2k²λ²}.
fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=200 {
        let term = (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-16 * sum.abs() {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// KS statistic and p-value from the model cdf at the sorted sample, with
/// the Stephens small-sample adjustment of the asymptotic p-value.
fn ks_from_levels(levels: &[f64]) -> Result<KsReport> {
    if levels.is_empty() {
        return Err(Error::Domain("KS test needs a nonempty sample".into()));
    }
    let m = levels.len() as f64;
    let mut d: f64 = 0.0;
    for (k, &f) in levels.iter().enumerate() {
        d = d.max((k as f64 + 1.0) / m - f).max(f - k as f64 / m);
    }
    let sq = m.sqrt();
    Ok(KsReport {
        statistic: d,
        p_value: kolmogorov_survival((sq + 0.12 + 0.11 / sq) * d),
        sample_size: levels.len(),
    })
}

/// One-sample Kolmogorov–Smirnov test against a continuous cdf.
pub fn ks_test<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> Result<KsReport> {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    ks_from_levels(&xs.into_iter().map(cdf).collect::<Vec<_>>())
}

/// KS test of each column against the law of its unit (F^i for MRSSU).
pub fn column_ks(cfg: &SimulationConfig, sample: &SampleMatrix) -> Result<Vec<KsReport>> {
    (1..=cfg.design.n)
        .map(|unit| {
            let (i, n) = unit_law(cfg.design, unit);
            let mut col = sample.column(unit);
            col.sort_by(f64::total_cmp);
            let levels = col.iter().map(|&x| unit_cdf(&cfg.model, i, n, x)).collect::<Result<Vec<_>>>()?;
            ks_from_levels(&levels)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsallis::tsallis_entropy;

    fn cfg(model: DistributionModel, spec: DesignSpec, reps: usize, seed: u64) -> SimulationConfig {
        SimulationConfig::new(model, spec, reps, seed).unwrap()
    }

    fn unif() -> DistributionModel {
        DistributionModel::uniform(1.0).unwrap()
    }

    #[test]
    fn deterministic_and_seed_sensitive() {
        let c = cfg(unif(), DesignSpec::mrssu(3).unwrap(), 500, 7);
        assert_eq!(draw_design(&c), draw_design(&c));
        let d = cfg(unif(), DesignSpec::mrssu(3).unwrap(), 500, 8);
        assert_ne!(draw_design(&c), draw_design(&d));
        // A longer run extends a shorter one.
        let long = draw_design(&cfg(unif(), DesignSpec::mrssu(3).unwrap(), 800, 7));
        assert_eq!(&long.values[..1500], &draw_design(&c).values[..]);
        assert!(SimulationConfig::new(unif(), DesignSpec::srs(1).unwrap(), 0, 1).is_err());
    }

    #[test]
    fn mrssu_means() {
        let c = cfg(unif(), DesignSpec::mrssu(2).unwrap(), 100_000, 11);
        let s = draw_design(&c);
        let col = s.column(2);
        let mean = s.column_mean(2);
        let sd = (col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (col.len() - 1) as f64).sqrt();
        assert!((mean - 2.0 / 3.0).abs() < 3.0 * sd / (col.len() as f64).sqrt());
        let one = draw_design(&cfg(unif(), DesignSpec::mrssu(1).unwrap(), 10, 3));
        assert_eq!(one.n, 1);
    }

    #[test]
    fn ks_on_columns() {
        for spec in [DesignSpec::mrssu(4).unwrap(), DesignSpec::rss(3).unwrap(), DesignSpec::srs(2).unwrap()] {
            let c = cfg(DistributionModel::exponential(1.0).unwrap(), spec, 10_000, 2024);
            let s = draw_design(&c);
            for r in column_ks(&c, &s).unwrap() {
                assert!(r.passes(0.01), "{spec:?} {r:?}");
            }
        }
        // The wrong law is rejected.
        let c = cfg(unif(), DesignSpec::mrssu(3).unwrap(), 10_000, 5);
        let col = draw_design(&c).column(3);
        assert!(!ks_test(&col, |x| x).unwrap().passes(0.01));
    }

    #[test]
    fn kolmogorov_values() {
        assert!((kolmogorov_survival(1.358) - 0.05).abs() < 1e-3);
        assert!((kolmogorov_survival(1.628) - 0.01).abs() < 1e-3);
        assert_eq!(kolmogorov_survival(0.0), 1.0);
    }

    #[test]
    fn mc_matches_analytic() {
        let a = EntropyOrder::new(2.0).unwrap();
        let c = cfg(unif(), DesignSpec::mrssu(2).unwrap(), 100_000, 1);
        let e = mc_entropy_estimate(&c, a, Measure::Tsallis).unwrap();
        assert!(e.agrees_with(-1.0 / 3.0, 3.0), "{e:?}");
        let ex = DistributionModel::exponential(1.0).unwrap();
        let c = cfg(ex.clone(), DesignSpec::srs(1).unwrap(), 100_000, 2);
        let e = mc_entropy_estimate(&c, a, Measure::Tsallis).unwrap();
        assert!(e.agrees_with(tsallis_entropy(&ex, a).unwrap().value, 3.0));
        let c = cfg(ex, DesignSpec::mrssu(2).unwrap(), 100_000, 3);
        let e = mc_entropy_estimate(&c, a, Measure::Residual { t: 0.0 }).unwrap();
        assert!(e.agrees_with(5.0 / 6.0, 3.0));
        assert_eq!(e.report().method, Method::MonteCarlo);
    }
}
