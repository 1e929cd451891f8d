//! `rss-tsallis`: entropy tables, figure data and verification ledgers for
//! SRS, RSS and MRSSU designs.

mod commands;
mod table;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rss_tsallis::{Design, DistributionModel};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use table::Format;

#[derive(Debug, Parser)]
#[command(name = "rss-tsallis", version, about = "Tsallis entropies of ranked set sampling designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// S_α of a design over one α or an α grid.
    Entropy {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, value_enum)]
        design: DesignArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        alpha: AlphaArgs,
    },
    /// δ = S_α(first design) − S_α(second design) over an α grid.
    Delta {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, value_enum)]
        pair: PairArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        alpha: AlphaArgs,
    },
    /// Cumulative Tsallis entropy, dynamic when --t or --t-range is given.
    Cumulative {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, value_enum, default_value = "mrssu")]
        design: DesignArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        alpha: AlphaArgs,
        #[command(flatten)]
        t: TimeArgs,
    },
    /// Residual Tsallis entropy over an (α, t) grid.
    Residual {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, value_enum, default_value = "mrssu")]
        design: DesignArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        alpha: AlphaArgs,
        #[command(flatten)]
        t: TimeArgs,
    },
    /// Steffensen bounds on S_α(MRSSU), or Hayashi bounds on the dynamic
    /// CTE when --t or --t-range is given.
    Bounds {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        alpha: AlphaArgs,
        #[command(flatten)]
        t: TimeArgs,
    },
    /// Monte Carlo draws with per-unit KS checks and, given --alpha, a
    /// plug-in entropy estimate.
    Simulate {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, value_enum)]
        design: DesignArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Option<f64>,
        /// Estimate the residual entropy at this time instead.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        reps: usize,
    },
    /// Theorem ledger; exits with status 1 when any instance fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Models to run on (repeatable); defaults to the built-in set.
        #[arg(long = "model", value_parser = parse_model)]
        models: Vec<DistributionModel>,
        #[arg(long, value_parser = parse_range)]
        alpha_range: Option<Range>,
        /// Largest set size; the grid is 1..=n.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct ModelArg {
    /// e.g. uniform:b=1, exp:theta=2, beta:theta=2
    #[arg(long, value_parser = parse_model)]
    model: DistributionModel,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct AlphaArgs {
    #[arg(long)]
    alpha: Option<f64>,
    /// lo:hi:steps, endpoints included
    #[arg(long, value_parser = parse_range)]
    alpha_range: Option<Range>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct TimeArgs {
    #[arg(long)]
    t: Option<f64>,
    /// lo:hi:steps, endpoints included
    #[arg(long, value_parser = parse_range)]
    t_range: Option<Range>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DesignArg {
    Srs,
    Rss,
    Mrssu,
}

impl From<DesignArg> for Design {
    fn from(d: DesignArg) -> Self {
        match d {
            DesignArg::Srs => Design::Srs,
            DesignArg::Rss => Design::Rss,
            DesignArg::Mrssu => Design::Mrssu,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PairArg {
    RssSrs,
    MrssuSrs,
    RssMrssu,
}

impl PairArg {
    fn designs(self) -> (Design, Design) {
        match self {
            PairArg::RssSrs => (Design::Rss, Design::Srs),
            PairArg::MrssuSrs => (Design::Mrssu, Design::Srs),
            PairArg::RssMrssu => (Design::Rss, Design::Mrssu),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Range {
    lo: f64,
    hi: f64,
    steps: usize,
}

impl Range {
    fn points(self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let d = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| if k + 1 == self.steps { self.hi } else { self.lo + k as f64 * d }).collect()
    }
}

fn parse_model(s: &str) -> Result<DistributionModel, String> {
    s.parse().map_err(|e: rss_tsallis::Error| e.to_string())
}

fn parse_range(s: &str) -> Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, steps] = parts[..] else {
        return Err(format!("expected lo:hi:steps, got `{s}`"));
    };
    let num = |v: &str| v.trim().parse::<f64>().map_err(|_| format!("`{v}` is not a number"));
    let (lo, hi) = (num(lo)?, num(hi)?);
    let steps: usize = steps.trim().parse().map_err(|_| format!("`{steps}` is not a step count"))?;
    if steps == 0 || !lo.is_finite() || !hi.is_finite() || (steps > 1 && hi < lo) {
        return Err(format!("range `{s}` needs finite lo ≤ hi and at least one step"));
    }
    Ok(Range { lo, hi, steps })
}

fn alphas(a: &AlphaArgs) -> Vec<f64> {
    match (a.alpha, a.alpha_range) {
        (Some(v), _) => vec![v],
        (None, Some(r)) => r.points(),
        (None, None) => unreachable!("clap requires one of --alpha, --alpha-range"),
    }
}

fn times(t: &TimeArgs) -> Option<Vec<f64>> {
    match (t.t, t.t_range) {
        (Some(v), _) => Some(vec![v]),
        (None, Some(r)) => Some(r.points()),
        (None, None) => None,
    }
}

fn run(cli: &Cli) -> Result<commands::Output, commands::CliError> {
    use commands::*;
    match &cli.command {
        Command::Entropy { model, design, n, alpha } => entropy(&model.model, (*design).into(), *n, &alphas(alpha)),
        Command::Delta { model, pair, n, alpha } => delta(&model.model, pair.designs(), *n, &alphas(alpha)),
        Command::Cumulative { model, design, n, alpha, t } => {
            cumulative(&model.model, (*design).into(), *n, &alphas(alpha), times(t).as_deref())
        }
        Command::Residual { model, design, n, alpha, t } => {
            let ts = times(t).ok_or_else(|| CliError::Usage("residual needs --t or --t-range".into()))?;
            residual(&model.model, (*design).into(), *n, &alphas(alpha), &ts)
        }
        Command::Bounds { model, n, alpha, t } => match times(t) {
            None => steffensen(&model.model, *n, &alphas(alpha)),
            Some(ts) => hayashi(&model.model, *n, &alphas(alpha), &ts),
        },
        Command::Simulate { model, design, n, alpha, t, seed, reps } => {
            simulate(&model.model, (*design).into(), *n, *alpha, *t, *seed, *reps)
        }
        Command::Verify { suite, models, alpha_range, n } => {
            verify(suite, models, alpha_range.map(Range::points).as_deref(), *n)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code());
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::File::create(path).and_then(|mut f| output.table.write_to(cli.format, &mut f)),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            output.table.write_to(cli.format, &mut lock).and_then(|_| lock.flush())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if let Some(summary) = &output.summary {
        eprintln!("{summary}");
    }
    if output.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
