//! Subcommand bodies. Every number comes from the library; this layer only
//! builds grids and lays results out in tables.

use crate::table::{Cell, OutputTable};
use rss_tsallis::bounds::{hayashi_bounds, steffensen_bounds};
use rss_tsallis::cumulative::{cte_design, cte_dynamic_design, TruncationTime};
use rss_tsallis::residual::{residual_design, ResidualContext};
use rss_tsallis::sim::{column_ks, draw_design, mc_entropy_estimate, Measure, SimulationConfig};
use rss_tsallis::theorems::{default_models, theorem_suite_subset, Suite, COMPARE_TOL, DEFAULT_ALPHAS, DEFAULT_NS};
use rss_tsallis::tsallis::{delta_series, shannon_design, tsallis_design};
use rss_tsallis::{Design, DesignSpec, DistributionModel, EntropyOrder, EntropyReport, Error, Route};
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments (exit status 2).
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub struct Output {
    pub table: OutputTable,
    /// A verification failed (exit status 1).
    pub failed: bool,
    /// Printed to stderr after the table.
    pub summary: Option<String>,
}

impl From<OutputTable> for Output {
    fn from(table: OutputTable) -> Self {
        Output { table, failed: false, summary: None }
    }
}

fn spec(design: Design, n: usize) -> Result<DesignSpec, CliError> {
    Ok(DesignSpec::new(design, n)?)
}

fn status(e: &Error) -> String {
    match e {
        Error::Divergent { .. } => "divergent".into(),
        Error::NotConverged { .. } => "not-converged".into(),
        Error::Precondition(m) => format!("precondition failed: {m}"),
        other => other.to_string(),
    }
}

fn report_cells(r: Result<EntropyReport, Error>) -> Vec<Cell> {
    match r {
        Ok(r) => vec![r.value.into(), r.method.to_string().into(), r.error_estimate.into(), "ok".into()],
        Err(e) => vec![Cell::Empty, Cell::Empty, Cell::Empty, status(&e).into()],
    }
}

fn order(alpha: f64) -> Result<EntropyOrder, Error> {
    EntropyOrder::new(alpha)
}

pub fn entropy(model: &DistributionModel, design: Design, n: usize, alphas: &[f64]) -> Result<Output, CliError> {
    let spec = spec(design, n)?;
    let mut t = OutputTable::new(&["alpha", "value", "method", "error_estimate", "status"]);
    for &a in alphas {
        let r = if a == 1.0 {
            shannon_design(model, spec)
        } else {
            order(a).and_then(|o| tsallis_design(model, o, spec, Route::Auto))
        };
        let mut row = vec![a.into()];
        row.extend(report_cells(r));
        t.push(row);
    }
    Ok(t.into())
}

pub fn delta(model: &DistributionModel, pair: (Design, Design), n: usize, alphas: &[f64]) -> Result<Output, CliError> {
    let specs = (spec(pair.0, n)?, spec(pair.1, n)?);
    let cells = delta_series(&[(0.0, model.clone())], specs, alphas)?;
    let mut t = OutputTable::new(&["alpha", "delta", "status"]);
    for c in cells {
        match c.delta {
            Ok(d) => t.push(vec![c.alpha.into(), d.into(), "ok".into()]),
            Err(e) => t.push(vec![c.alpha.into(), Cell::Empty, status(&e).into()]),
        }
    }
    Ok(t.into())
}

pub fn cumulative(
    model: &DistributionModel,
    design: Design,
    n: usize,
    alphas: &[f64],
    times: Option<&[f64]>,
) -> Result<Output, CliError> {
    let spec = spec(design, n)?;
    let mut t = OutputTable::new(&["alpha", "t", "value", "method", "error_estimate", "status"]);
    for &a in alphas {
        match times {
            None => {
                let mut row = vec![a.into(), Cell::Empty];
                row.extend(report_cells(order(a).and_then(|o| cte_design(model, o, spec, Route::Auto))));
                t.push(row);
            }
            Some(ts) => {
                for &time in ts {
                    let r = order(a).and_then(|o| {
                        cte_dynamic_design(model, o, spec, TruncationTime::new(model, time)?, Route::Auto)
                    });
                    let mut row = vec![a.into(), time.into()];
                    row.extend(report_cells(r));
                    t.push(row);
                }
            }
        }
    }
    Ok(t.into())
}

pub fn residual(
    model: &DistributionModel,
    design: Design,
    n: usize,
    alphas: &[f64],
    times: &[f64],
) -> Result<Output, CliError> {
    let spec = spec(design, n)?;
    let mut t = OutputTable::new(&["alpha", "t", "value", "method", "error_estimate", "status"]);
    for &a in alphas {
        for &time in times {
            let r = order(a)
                .and_then(|o| residual_design(&ResidualContext::new(model, time)?, o, spec, Route::Auto));
            let mut row = vec![a.into(), time.into()];
            row.extend(report_cells(r));
            t.push(row);
        }
    }
    Ok(t.into())
}

pub fn steffensen(model: &DistributionModel, n: usize, alphas: &[f64]) -> Result<Output, CliError> {
    spec(Design::Mrssu, n)?;
    let mut t = OutputTable::new(&[
        "alpha",
        "value",
        "m",
        "M",
        "orientation",
        "holds",
        "stated_orientation",
        "stated_holds",
        "literal_m",
        "literal_M",
        "literal_holds",
        "status",
    ]);
    for &a in alphas {
        match order(a).and_then(|o| steffensen_bounds(model, o, n)) {
            Ok(r) => t.push(vec![
                a.into(),
                r.value.into(),
                r.derived.m.into(),
                r.derived.big_m.into(),
                r.derived.orientation.to_string().into(),
                r.derived_holds(COMPARE_TOL).into(),
                r.stated.orientation.to_string().into(),
                r.stated_holds(COMPARE_TOL).into(),
                r.literal.m.into(),
                r.literal.big_m.into(),
                r.literal_holds(COMPARE_TOL).into(),
                "ok".into(),
            ]),
            Err(e) => {
                let mut row = vec![a.into()];
                row.extend(std::iter::repeat_n(Cell::Empty, 10));
                row.push(status(&e).into());
                t.push(row);
            }
        }
    }
    Ok(t.into())
}

pub fn hayashi(model: &DistributionModel, n: usize, alphas: &[f64], times: &[f64]) -> Result<Output, CliError> {
    spec(Design::Mrssu, n)?;
    let mut t =
        OutputTable::new(&["alpha", "t", "value", "m1", "M1", "lambda", "A", "orientation", "holds", "status"]);
    for &a in alphas {
        for &time in times {
            match order(a).and_then(|o| hayashi_bounds(model, o, time, n)) {
                Ok(r) => {
                    let (m, big_m, orient) = match r.interval {
                        Some(b) => (b.m.into(), b.big_m.into(), b.orientation.to_string().into()),
                        None => (Cell::Empty, Cell::Empty, Cell::Empty),
                    };
                    let status = if r.feasible() { "ok" } else { "infeasible" };
                    t.push(vec![
                        a.into(),
                        time.into(),
                        r.value.into(),
                        m,
                        big_m,
                        r.lambda.into(),
                        r.a.into(),
                        orient,
                        r.holds(COMPARE_TOL).into(),
                        status.into(),
                    ]);
                }
                Err(e) => {
                    let mut row = vec![a.into(), time.into()];
                    row.extend(std::iter::repeat_n(Cell::Empty, 7));
                    row.push(status(&e).into());
                    t.push(row);
                }
            }
        }
    }
    Ok(t.into())
}

pub fn simulate(
    model: &DistributionModel,
    design: Design,
    n: usize,
    alpha: Option<f64>,
    time: Option<f64>,
    seed: u64,
    reps: usize,
) -> Result<Output, CliError> {
    let cfg = SimulationConfig::new(model.clone(), spec(design, n)?, reps, seed)?;
    let sample = draw_design(&cfg);
    let ks = column_ks(&cfg, &sample)?;
    let estimate = match alpha {
        Some(a) => {
            let measure = time.map_or(Measure::Tsallis, |t| Measure::Residual { t });
            Some(mc_entropy_estimate(&cfg, order(a)?, measure)?)
        }
        None => None,
    };
    let mut t = OutputTable::new(&["unit", "sample_mean", "ks_statistic", "ks_p_value", "estimate", "std_error"]);
    for (i, k) in ks.iter().enumerate() {
        let (est, se) = match &estimate {
            Some(e) => (e.components[i].mean.into(), e.components[i].std_error.into()),
            None => (Cell::Empty, Cell::Empty),
        };
        t.push(vec![(i + 1).to_string().into(), sample.column_mean(i + 1).into(), k.statistic.into(), k.p_value.into(), est, se]);
    }
    if let Some(e) = &estimate {
        t.push(vec!["design".into(), Cell::Empty, Cell::Empty, Cell::Empty, e.value.into(), e.halfwidth.into()]);
    }
    Ok(t.into())
}

pub fn verify(
    suite: &str,
    models: &[DistributionModel],
    alphas: Option<&[f64]>,
    n: Option<usize>,
) -> Result<Output, CliError> {
    let suite: Suite = suite.parse()?;
    let models = if models.is_empty() { default_models() } else { models.to_vec() };
    let alphas = alphas.unwrap_or(&DEFAULT_ALPHAS);
    let ns: Vec<usize> = match n {
        Some(n) => (1..=n).collect(),
        None => DEFAULT_NS.to_vec(),
    };
    let ledger = theorem_suite_subset(&models, alphas, &ns, suite)?;
    let mut t = OutputTable::new(&["theorem", "status", "hypothesis", "conclusion", "lhs", "rhs", "instance", "note"]);
    for e in &ledger.entries {
        let word = |c| serde_json::to_value(c).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        t.push(vec![
            e.theorem.clone().into(),
            e.status.to_string().into(),
            word(e.hypothesis).into(),
            word(e.conclusion).into(),
            e.lhs.into(),
            e.rhs.into(),
            e.instance.to_string().into(),
            e.note.clone().into(),
        ]);
    }
    let s = ledger.summary();
    Ok(Output {
        table: t,
        failed: ledger.has_failures(),
        summary: Some(format!(
            "{} pass, {} fail, {} deviation, {} skipped",
            s.pass, s.fail, s.deviation, s.skipped
        )),
    })
}
