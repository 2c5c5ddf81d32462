//! Command-line front end: emits the edge constants, exit-count tables,
//! Monte Carlo estimates, and spiked-model simulations as CSV or JSON.
//!
//! Exit codes: 0 success, 2 argument error, 3 numerical non-convergence or
//! consistency failure, 4 reference-comparison failure in `--check` mode.

mod output;

use std::fmt;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Cell, Report};
use rmt_edge::ensembles::{mc_both_edges_inside, mc_expected_tailsum, EnsembleSpec};
use rmt_edge::fredholm::counting_distribution;
use rmt_edge::kernels::{gue_cd_kernel, AiryKernel};
use rmt_edge::spiked::{
    interlacing_violations, mean_shrinker_gap, sample_spiked_eigs, shrinker_from_name,
    shrinker_names, SpikedModel,
};
use rmt_edge::tailsums::{
    cq_closed, cq_quadrature_routes, gue_expected_tailsum, wishart_limit_tailsum,
};
use rmt_edge::{ensembles::CounterRng, Error as CoreError};

#[derive(Parser)]
#[command(
    name = "rmt-edge",
    version,
    about = "Edge statistics of GUE and white Wishart eigenvalue ensembles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Limiting edge constants with dual-route evaluation
    Constants(ConstantsArgs),
    /// Exit-count probabilities p_N(k) and expected counts for finite-N GUE
    Table1(Table1Args),
    /// Expected tail sum beyond the GUE bulk edge at exponent q
    Tailsum(TailsumArgs),
    /// Limiting Wishart window integral and Tracy-Widom prefactor
    WishartLimit(WishartLimitArgs),
    /// Monte Carlo estimates from tridiagonal ensemble samplers
    #[command(subcommand)]
    Montecarlo(McCommand),
    /// Spiked-covariance shrinkage simulator
    Spiked(SpikedArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the report to this path instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significant digits for printed values (1..=12)
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=12))]
    digits: u8,
}

#[derive(Args)]
struct CommonNumerics {
    /// Absolute tolerance for quadrature/grid refinement
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for Monte Carlo subcommands (ignored by analytic ones)
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Exponents q for the c_q constants
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.0, 0.5, 1.0, 2.0, 3.0])]
    q: Vec<f64>,
    /// Compare against the known constants and exit 4 on mismatch
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    numerics: CommonNumerics,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct Table1Args {
    /// Matrix sizes (each at most 1000)
    #[arg(long = "N", value_delimiter = ',', default_values_t = vec![10usize, 25, 50, 100, 250, 500])]
    n_list: Vec<usize>,
    /// Largest exit count reported
    #[arg(long, default_value_t = 3)]
    kmax: usize,
    /// Compare against the reference table and exit 4 on mismatch
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    numerics: CommonNumerics,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct TailsumArgs {
    /// Matrix size
    #[arg(long = "N")]
    dim: usize,
    /// Tail-sum exponent
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    #[command(flatten)]
    numerics: CommonNumerics,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct WishartLimitArgs {
    /// Aspect ratio γ = lim N/n in (0, 1]
    #[arg(long)]
    gamma: f64,
    /// Tail-sum exponent
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    /// Window start in Tracy-Widom units (≥ -10)
    #[arg(long, default_value_t = 0.0)]
    s: f64,
    #[command(flatten)]
    numerics: CommonNumerics,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Subcommand)]
enum McCommand {
    /// GUE(N) draws (eigenvalue convention with bulk edge √(2N))
    Gue(McGueArgs),
    /// White Wishart sample-covariance draws
    Wishart(McWishartArgs),
}

#[derive(Args)]
struct McGueArgs {
    /// Matrix size
    #[arg(long = "N")]
    dim: usize,
    /// Tail-sum exponent
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    /// Window start (defaults to the bulk edge √(2N))
    #[arg(long)]
    window: Option<f64>,
    /// Estimate the probability that all eigenvalues stay inside the bulk
    #[arg(long)]
    edges: bool,
    /// Number of Monte Carlo draws (at least 100)
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[command(flatten)]
    numerics: CommonNumerics,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct McWishartArgs {
    /// Matrix dimension N
    #[arg(long = "N")]
    dim: usize,
    /// Sample count n (≥ N)
    #[arg(long = "n")]
    samples_n: usize,
    /// Tail-sum exponent
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    /// Window start (defaults to the bulk edge (1+√γ_N)²)
    #[arg(long)]
    window: Option<f64>,
    /// Estimate the probability that all eigenvalues stay inside the bulk
    #[arg(long)]
    edges: bool,
    /// Number of Monte Carlo draws (at least 100)
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[command(flatten)]
    numerics: CommonNumerics,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct SpikedArgs {
    /// Dimensions p to simulate
    #[arg(long = "p", value_delimiter = ',', default_values_t = vec![100usize, 200, 400])]
    p_list: Vec<usize>,
    /// Aspect ratio γ = p/n used to pick n
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    /// Spike eigenvalues (each above 1)
    #[arg(long, value_delimiter = ',', default_values_t = vec![10.0, 5.0])]
    spikes: Vec<f64>,
    /// Shrinker name ("linear" or "eta-star")
    #[arg(long, default_value = "linear")]
    eta: String,
    /// Loss-gap exponent
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    /// Dense spiked draws per p (interlacing check and exit histogram)
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// White-noise draws per p for the gap mean
    #[arg(long, default_value_t = 2000)]
    gap_samples: usize,
    #[command(flatten)]
    numerics: CommonNumerics,
    #[command(flatten)]
    output: OutputOpts,
}

enum CliError {
    Arg(String),
    Numerical(String),
    CheckFailed(Vec<String>),
    Io(std::io::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Arg(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::CheckFailed(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Arg(m) => write!(f, "{m}"),
            CliError::Numerical(m) => write!(f, "{m}"),
            CliError::CheckFailed(lines) => {
                writeln!(f, "reference comparison failed:")?;
                for l in lines {
                    writeln!(f, "  {l}")?;
                }
                Ok(())
            }
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Domain(_) | CoreError::InvalidArgument(_) => CliError::Arg(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.code());
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Constants(args) => cmd_constants(args),
        Command::Table1(args) => cmd_table1(args),
        Command::Tailsum(args) => cmd_tailsum(args),
        Command::WishartLimit(args) => cmd_wishart_limit(args),
        Command::Montecarlo(McCommand::Gue(args)) => cmd_montecarlo_gue(args),
        Command::Montecarlo(McCommand::Wishart(args)) => cmd_montecarlo_wishart(args),
        Command::Spiked(args) => cmd_spiked(args),
    }
}

fn validate_tol(tol: f64) -> Result<f64, CliError> {
    if !(1e-12..=1e-2).contains(&tol) {
        return Err(CliError::Arg(format!(
            "--tol {tol} outside the supported range [1e-12, 1e-2]"
        )));
    }
    Ok(tol)
}

fn validate_samples(samples: usize) -> Result<usize, CliError> {
    if samples < 100 {
        return Err(CliError::Arg(format!(
            "--samples {samples} below the Monte Carlo minimum of 100"
        )));
    }
    Ok(samples)
}

fn emit(report: &Report, output: &OutputOpts) -> Result<(), CliError> {
    let mut sink: Box<dyn Write> = match &output.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    };
    match output.format {
        Format::Csv => output::write_csv(report, output.digits, &mut sink)?,
        Format::Json => output::write_json(report, output.digits, &mut sink)?,
    }
    Ok(())
}

const GUE_C0: f64 = 3.06293830789884473e-02; // 1/(6 √3 π)
const TW_GAP: f64 = 0.030627; // 1 - F_2(0), complex edge
const WISHART_I2: f64 = 5.0 / 36.0;

fn cmd_constants(args: ConstantsArgs) -> Result<(), CliError> {
    let tol = validate_tol(args.numerics.tol)?;
    let mut report = Report::new(vec!["quantity", "value"]);
    let mut failures = Vec::new();

    let (i1_single, i1_double) = cq_quadrature_routes(0.0)?;
    let wishart = wishart_limit_tailsum(1.0, 0.0, 0.0)?;
    let gap = counting_distribution(&AiryKernel::new(), 0.0, 3, tol)?;
    let one_minus_f2 = 1.0 - gap.prob(0);

    report.push(vec![Cell::Text("gue_c0".into()), Cell::Num(cq_closed(0.0)?)]);
    report.push(vec![
        Cell::Text("wishart_c0".into()),
        Cell::Num(wishart.integral),
    ]);
    report.push(vec![Cell::Text("wishart_i1".into()), Cell::Num(i1_double)]);
    report.push(vec![
        Cell::Text("wishart_i2".into()),
        Cell::Num(wishart.integral - i1_double),
    ]);
    report.push(vec![
        Cell::Text("one_minus_f2_zero".into()),
        Cell::Num(one_minus_f2),
    ]);
    report.push(vec![Cell::Text("f2_zero".into()), Cell::Num(gap.prob(0))]);

    for &q in &args.q {
        let closed = cq_closed(q)?;
        let (single, double) = cq_quadrature_routes(q)?;
        report.push(vec![
            Cell::Text(format!("cq_closed_q{q}")),
            Cell::Num(closed),
        ]);
        report.push(vec![
            Cell::Text(format!("cq_quad_single_q{q}")),
            Cell::Num(single),
        ]);
        report.push(vec![
            Cell::Text(format!("cq_quad_double_q{q}")),
            Cell::Num(double),
        ]);
        if args.check {
            if (closed - single).abs() > 1e-7 {
                failures.push(format!(
                    "c_q closed vs single-integral route at q={q}: {closed} vs {single}"
                ));
            }
            if (single - double).abs() > 1e-7 {
                failures.push(format!(
                    "c_q quadrature routes disagree at q={q}: {single} vs {double}"
                ));
            }
        }
    }

    if args.check {
        if (cq_closed(0.0)? - GUE_C0).abs() > 1e-12 {
            failures.push("gue_c0 differs from 1/(6 sqrt(3) pi)".into());
        }
        if (wishart.integral - (GUE_C0 + WISHART_I2)).abs() > 1e-6 {
            failures.push(format!(
                "wishart_c0 {} differs from c0 + 5/36 = {}",
                wishart.integral,
                GUE_C0 + WISHART_I2
            ));
        }
        if (wishart.integral - i1_double - WISHART_I2).abs() > 1e-7 {
            failures.push("wishart boundary term differs from 5/36".into());
        }
        if (one_minus_f2 - TW_GAP).abs() > 5e-6 {
            failures.push(format!("1 - F_2(0) = {one_minus_f2} differs from {TW_GAP}"));
        }
        if (i1_single - i1_double).abs() > 1e-7 {
            failures.push("I_1 integral routes disagree".into());
        }
    }

    emit(&report, &args.output)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(failures))
    }
}

/// Reference exit-count table for `--check`: (N, p1, p2, p3, E).
const TABLE1_REFERENCE: [(usize, f64, f64, f64, f64); 6] = [
    (10, 2.868e-2, 1.36e-6, 6.9e-14, 0.028681),
    (25, 2.955e-2, 1.70e-6, 1.4e-13, 0.029551),
    (50, 2.994e-2, 1.88e-6, 1.9e-13, 0.029944),
    (100, 3.019e-2, 2.00e-6, 2.3e-13, 0.030195),
    (250, 3.039e-2, 2.09e-6, 2.6e-13, 0.030392),
    (500, 3.048e-2, 2.14e-6, 2.8e-13, 0.030480),
];

fn cmd_table1(args: Table1Args) -> Result<(), CliError> {
    let tol = validate_tol(args.numerics.tol)?;
    if args.kmax == 0 || args.kmax > 8 {
        return Err(CliError::Arg(format!(
            "--kmax {} outside 1..=8",
            args.kmax
        )));
    }
    for &n in &args.n_list {
        if n == 0 || n > 1000 {
            return Err(CliError::Arg(format!("--N entry {n} outside 1..=1000")));
        }
        if args.check && !TABLE1_REFERENCE.iter().any(|r| r.0 == n) {
            return Err(CliError::Arg(format!(
                "--check has reference rows only for N in {{10, 25, 50, 100, 250, 500}}, got {n}"
            )));
        }
    }

    let mut columns: Vec<&'static str> = vec!["N"];
    const P_NAMES: [&str; 8] = ["p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8"];
    columns.extend_from_slice(&P_NAMES[..args.kmax]);
    columns.push("E_TN");
    if args.check {
        columns.extend_from_slice(&["dev_p1", "dev_p2", "dev_p3", "dev_E"]);
    }
    let mut report = Report::new(columns);
    let mut failures = Vec::new();

    for &n in &args.n_list {
        let kernel = gue_cd_kernel(n)?;
        let edge = (2.0 * n as f64).sqrt();
        let dist = counting_distribution(&kernel, edge, args.kmax.max(3), tol)?;
        let tailsum = gue_expected_tailsum(n, 0.0)?;
        if (dist.mean() - tailsum).abs() > 1e-6 {
            return Err(CliError::Numerical(format!(
                "counting mean {} and trace-route tail sum {tailsum} disagree at N={n}",
                dist.mean()
            )));
        }
        let mut row = vec![Cell::Int(n as i64)];
        for k in 1..=args.kmax {
            row.push(Cell::Num(dist.prob(k)));
        }
        row.push(Cell::Num(tailsum));
        if args.check {
            let reference = TABLE1_REFERENCE
                .iter()
                .find(|r| r.0 == n)
                .expect("validated above");
            let dev_p1 = dist.prob(1) / reference.1 - 1.0;
            let dev_p2 = dist.prob(2) / reference.2 - 1.0;
            let ratio_p3 = dist.prob(3) / reference.3;
            let dev_e = tailsum / reference.4 - 1.0;
            row.push(Cell::Num(dev_p1));
            row.push(Cell::Num(dev_p2));
            row.push(Cell::Num(ratio_p3 - 1.0));
            row.push(Cell::Num(dev_e));
            if dev_p1.abs() > 5e-4 {
                failures.push(format!("N={n}: p1 deviation {dev_p1:e} above 5e-4"));
            }
            if dev_p2.abs() > 5e-3 {
                failures.push(format!("N={n}: p2 deviation {dev_p2:e} above 5e-3"));
            }
            if !(0.1..=10.0).contains(&ratio_p3) {
                failures.push(format!("N={n}: p3 ratio {ratio_p3} outside [0.1, 10]"));
            }
            if dev_e.abs() > 1e-4 {
                failures.push(format!("N={n}: E deviation {dev_e:e} above 1e-4"));
            }
        }
        report.push(row);
    }

    emit(&report, &args.output)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(failures))
    }
}

fn cmd_tailsum(args: TailsumArgs) -> Result<(), CliError> {
    validate_tol(args.numerics.tol)?;
    let value = gue_expected_tailsum(args.dim, args.q)?;
    let limit = cq_closed(args.q)?;
    let scaled = (args.dim as f64).powf(2.0 * args.q / 3.0) * value;
    let mut report = Report::new(vec!["N", "q", "tailsum", "n_rate_scaled", "cq_limit"]);
    report.push(vec![
        Cell::Int(args.dim as i64),
        Cell::Num(args.q),
        Cell::Num(value),
        Cell::Num(scaled),
        Cell::Num(limit),
    ]);
    emit(&report, &args.output)
}

fn cmd_wishart_limit(args: WishartLimitArgs) -> Result<(), CliError> {
    validate_tol(args.numerics.tol)?;
    let w = wishart_limit_tailsum(args.gamma, args.q, args.s)?;
    let mut report = Report::new(vec!["gamma", "q", "s", "tau_pow_q", "window_integral"]);
    report.push(vec![
        Cell::Num(args.gamma),
        Cell::Num(args.q),
        Cell::Num(args.s),
        Cell::Num(w.prefactor),
        Cell::Num(w.integral),
    ]);
    emit(&report, &args.output)
}

fn mc_report() -> Report {
    Report::new(vec![
        "ensemble",
        "dim",
        "n",
        "stat",
        "q",
        "window_lo",
        "window_hi",
        "mean",
        "std_error",
        "samples",
        "seed",
        "analytic",
    ])
}

fn cmd_montecarlo_gue(args: McGueArgs) -> Result<(), CliError> {
    validate_samples(args.samples)?;
    let spec = EnsembleSpec::Gue { dim: args.dim };
    let edge = (2.0 * args.dim as f64).sqrt();
    let mut report = mc_report();
    if args.edges {
        let est = mc_both_edges_inside(&spec, args.samples, args.numerics.seed)?;
        // Analytic comparator: limiting probability F_2(0)^2 via the Airy
        // kernel counting distribution.
        let f2 = counting_distribution(&AiryKernel::new(), 0.0, 2, 1e-8)?.prob(0);
        report.push(vec![
            Cell::Text("gue".into()),
            Cell::Int(args.dim as i64),
            Cell::Empty,
            Cell::Text("edges-inside".into()),
            Cell::Empty,
            Cell::Num(-edge),
            Cell::Num(edge),
            Cell::Num(est.mean),
            Cell::Num(est.std_error),
            Cell::Int(est.samples as i64),
            Cell::Int(est.seed as i64),
            Cell::Num(f2 * f2),
        ]);
    } else {
        let window = args.window.unwrap_or(edge);
        let est = mc_expected_tailsum(&spec, args.q, window, args.samples, args.numerics.seed)?;
        // Finite-N analytic route exists for windows at the bulk edge.
        let analytic = if args.dim <= 2000 && (window - edge).abs() < 1e-12 {
            Cell::Num(gue_expected_tailsum(args.dim, args.q)?)
        } else {
            Cell::Empty
        };
        report.push(vec![
            Cell::Text("gue".into()),
            Cell::Int(args.dim as i64),
            Cell::Empty,
            Cell::Text("tailsum".into()),
            Cell::Num(args.q),
            Cell::Num(window),
            Cell::Empty,
            Cell::Num(est.mean),
            Cell::Num(est.std_error),
            Cell::Int(est.samples as i64),
            Cell::Int(est.seed as i64),
            analytic,
        ]);
    }
    emit(&report, &args.output)
}

fn cmd_montecarlo_wishart(args: McWishartArgs) -> Result<(), CliError> {
    validate_samples(args.samples)?;
    let spec = EnsembleSpec::Wishart {
        dim: args.dim,
        samples: args.samples_n,
    };
    let gamma_n = args.dim as f64 / args.samples_n as f64;
    let lo = (1.0 - gamma_n.sqrt()).powi(2);
    let hi = (1.0 + gamma_n.sqrt()).powi(2);
    let mut report = mc_report();
    if args.edges {
        let est = mc_both_edges_inside(&spec, args.samples, args.numerics.seed)?;
        report.push(vec![
            Cell::Text("wishart".into()),
            Cell::Int(args.dim as i64),
            Cell::Int(args.samples_n as i64),
            Cell::Text("edges-inside".into()),
            Cell::Empty,
            Cell::Num(lo),
            Cell::Num(hi),
            Cell::Num(est.mean),
            Cell::Num(est.std_error),
            Cell::Int(est.samples as i64),
            Cell::Int(est.seed as i64),
            Cell::Empty,
        ]);
    } else {
        let window = args.window.unwrap_or(hi);
        let est = mc_expected_tailsum(&spec, args.q, window, args.samples, args.numerics.seed)?;
        // Comparator: the scale-free limit; exact at q = 0 where no N-rate
        // applies, absent otherwise.
        let analytic = if args.q == 0.0 && (window - hi).abs() < 1e-12 {
            Cell::Num(wishart_limit_tailsum(gamma_n, 0.0, 0.0)?.integral)
        } else {
            Cell::Empty
        };
        report.push(vec![
            Cell::Text("wishart".into()),
            Cell::Int(args.dim as i64),
            Cell::Int(args.samples_n as i64),
            Cell::Text("tailsum".into()),
            Cell::Num(args.q),
            Cell::Num(window),
            Cell::Empty,
            Cell::Num(est.mean),
            Cell::Num(est.std_error),
            Cell::Int(est.samples as i64),
            Cell::Int(est.seed as i64),
            analytic,
        ]);
    }
    emit(&report, &args.output)
}

fn cmd_spiked(args: SpikedArgs) -> Result<(), CliError> {
    validate_samples(args.samples)?;
    validate_samples(args.gap_samples)?;
    if !(args.gamma > 0.0 && args.gamma <= 1.0) {
        return Err(CliError::Arg(format!(
            "--gamma {} outside (0, 1]",
            args.gamma
        )));
    }
    let eta = shrinker_from_name(&args.eta).ok_or_else(|| {
        CliError::Arg(format!(
            "unknown shrinker '{}'; available: {}",
            args.eta,
            shrinker_names().join(", ")
        ))
    })?;

    let limit = wishart_limit_tailsum(args.gamma, 0.0, 0.0)?.integral;
    let mut report = Report::new(vec![
        "p",
        "n",
        "r",
        "eta",
        "q",
        "interlace_violations",
        "mean_gap",
        "gap_std_error",
        "exit0",
        "exit1",
        "exit2",
        "exit3plus",
        "exit_mean",
        "limit_exit_mean",
    ]);

    let mut violations_seen = 0usize;
    for &p in &args.p_list {
        let n = (p as f64 / args.gamma).round() as usize;
        let model = SpikedModel::new(p, n, args.spikes.clone())?;
        let edge = model.bulk_edge();
        let mut violations = 0usize;
        let mut hist = [0usize; 4];
        let mut exit_sum = 0usize;
        for j in 0..args.samples {
            let mut rng = CounterRng::new(args.numerics.seed, j as u64);
            let sample = sample_spiked_eigs(&model, &mut rng)?;
            violations += interlacing_violations(&sample, model.rank(), 1e-10);
            let exits = sample.noise_eigs.iter().filter(|&&l| l > edge).count();
            hist[exits.min(3)] += 1;
            exit_sum += exits;
        }
        let gap = mean_shrinker_gap(
            &model,
            eta.as_ref(),
            args.q,
            args.gap_samples,
            args.numerics.seed,
        )?;
        violations_seen += violations;
        report.push(vec![
            Cell::Int(p as i64),
            Cell::Int(n as i64),
            Cell::Int(model.rank() as i64),
            Cell::Text(eta.label().into()),
            Cell::Num(args.q),
            Cell::Int(violations as i64),
            Cell::Num(gap.mean),
            Cell::Num(gap.std_error),
            Cell::Int(hist[0] as i64),
            Cell::Int(hist[1] as i64),
            Cell::Int(hist[2] as i64),
            Cell::Int(hist[3] as i64),
            Cell::Num(exit_sum as f64 / args.samples as f64),
            Cell::Num(limit),
        ]);
    }

    emit(&report, &args.output)?;
    if violations_seen > 0 {
        return Err(CliError::Numerical(format!(
            "eigenvalue interlacing violated {violations_seen} times"
        )));
    }
    Ok(())
}
