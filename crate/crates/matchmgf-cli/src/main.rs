//! Command-line surface of the exact matching-cost distribution engine.
//!
//! Every command reads a problem spec and flags, computes through the
//! library, and writes one machine-readable artifact (JSON by default, CSV
//! where a tabular projection is defined) to stdout or `--output`. All
//! commands are deterministic — rerunning one produces byte-identical
//! output — and failures exit nonzero with a one-line JSON error record on
//! stderr.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use matchmgf::distengine::{cdf_grid, density, density_grid, EvalPolicy};
use matchmgf::ghostrec::{ghost_mgf, mgf, GhostTable};
use matchmgf::mcoracle::{monte_carlo, SimResult};
use matchmgf::momentlab::{
    cumulants, kappa_over_factorial_log_concavity, mean_closed_form, raw_moments,
};
use matchmgf::zerolab::{
    asymptotic_clusters, cluster_deviations, find_zeros, janson_compare, zero_free_disk,
    zero_free_k3_certificate,
};
use matchmgf::{ProblemSpec, RatFun, Scalar};

use matchmgf_cli::artifacts::*;
use matchmgf_cli::exit;

const EXIT_HELP: &str = "Exit codes:
  0  success
  2  command-line usage error
  3  invalid problem specification or arguments
  4  computation could not be completed (including any sweep failure)
  5  output could not be written";

#[derive(Parser)]
#[command(
    name = "matchmgf",
    version,
    about = "Exact distribution of the minimum cost of random bipartite k-matchings",
    after_help = EXIT_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the artifact to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Working precision (bits) for numeric stages (root finding, winding,
    /// grid evaluation reports).
    #[arg(
        long,
        global = true,
        env = "MATCHMGF_PRECISION_BITS",
        default_value_t = 256
    )]
    precision_bits: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct SpecArgs {
    /// Matching size k.
    #[arg(long)]
    k: u32,
    /// Left side size m: an integer or a rational like "10/3".
    #[arg(long)]
    m: String,
    /// Right side size n: an integer or a rational like "10/3".
    #[arg(long)]
    n: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact moment generating function of the minimum k-matching cost.
    Mgf(SpecArgs),
    /// Exact generating function with d ghost edges.
    Ghost {
        #[command(flatten)]
        spec: SpecArgs,
        /// Number of ghost edges (0 <= d <= k).
        #[arg(long)]
        d: u32,
    },
    /// Exact density evaluated on a uniform grid.
    Density {
        #[command(flatten)]
        spec: SpecArgs,
        /// Right end of the grid (rational; default 5x the exact mean).
        #[arg(long)]
        x_max: Option<String>,
        /// Number of grid points (>= 2).
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Exact CDF evaluated on a uniform grid.
    Cdf {
        #[command(flatten)]
        spec: SpecArgs,
        /// Right end of the grid (rational; default 5x the exact mean).
        #[arg(long)]
        x_max: Option<String>,
        /// Number of grid points (>= 2).
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Exact raw moments and cumulants.
    Moments {
        #[command(flatten)]
        spec: SpecArgs,
        /// Highest moment/cumulant order.
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Exact cumulants with the scaled log-concavity diagnostic.
    Cumulants {
        #[command(flatten)]
        spec: SpecArgs,
        /// Highest cumulant order.
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// All zeros of the MGF numerator.
    Zeros(SpecArgs),
    /// Zero-free-disk verdict: root finding plus an independent winding count.
    VerifyDiskfree(SpecArgs),
    /// Compare the MGF against the same-denominator real-rooted function.
    JansonCompare(SpecArgs),
    /// Asymptotic zero-cluster predictions; with --m and --n, also match the
    /// actual zeros against them.
    Clusters {
        /// Matching size k.
        #[arg(long)]
        k: u32,
        /// Left side size m (requires --n; enables matching actual zeros).
        #[arg(long)]
        m: Option<String>,
        /// Fixed right side size n for the fixed-side predictor.
        #[arg(long)]
        n: Option<String>,
    },
    /// Monte Carlo simulation via the exact matching solver.
    Simulate {
        #[command(flatten)]
        spec: SpecArgs,
        /// Number of independent instances.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// RNG seed; identical seeds give identical results.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Evaluate the empirical CDF at this point (repeatable).
        #[arg(long = "probe")]
        probes: Vec<f64>,
    },
    /// Run a verdict check over every spec k <= m <= n within the bounds.
    Sweep {
        /// Largest n.
        #[arg(long, default_value_t = 8)]
        max_n: i64,
        /// Largest m (default: max-n).
        #[arg(long)]
        max_m: Option<i64>,
        /// Largest k (default: max-m).
        #[arg(long)]
        max_k: Option<u32>,
        /// Which verdicts to run per spec.
        #[arg(long, value_enum, default_value_t = CheckKind::All)]
        check: CheckKind,
        /// Cumulant order for the positivity check.
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Emit the data behind one of the reference figures.
    ReproduceFigure {
        /// Which figure data set.
        #[arg(long, value_enum)]
        id: FigureId,
        /// Largest n for the density-family figure (default 25).
        #[arg(long)]
        max_n: Option<u32>,
        /// Grid points for density figures.
        #[arg(long)]
        points: Option<usize>,
        /// Grid right end for density figures (rational).
        #[arg(long)]
        x_max: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Diskfree,
    Cumulants,
    All,
}

impl CheckKind {
    fn runs_diskfree(self) -> bool {
        matches!(self, CheckKind::Diskfree | CheckKind::All)
    }
    fn runs_cumulants(self) -> bool {
        matches!(self, CheckKind::Cumulants | CheckKind::All)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureId {
    /// Density curves of the square problems n = 1..=25.
    Densities,
    /// The 201-point density curve of the (3,3,3) problem on [0, 4].
    Density3,
    /// Zeros and poles of the (20,20,20) MGF.
    Zeros20,
    /// Zeros, poles and cluster matching of the (5,12,20) MGF.
    #[value(name = "zeros5-12-20")]
    Zeros51220,
}

/// A failure to be reported as a JSON record on stderr plus an exit code.
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(code: i32, kind: &'static str, message: impl ToString) -> Self {
        Failure {
            code,
            kind,
            message: message.to_string(),
        }
    }

    fn invalid(message: impl ToString) -> Self {
        Failure::new(exit::INVALID, "invalid-input", message)
    }
}

impl From<matchmgf::Error> for Failure {
    fn from(e: matchmgf::Error) -> Self {
        match &e {
            matchmgf::Error::InvalidSpec(_) | matchmgf::Error::Domain(_) => Failure::invalid(e),
            _ => Failure::new(exit::COMPUTE, "computation-failed", e),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(failure) => {
            let record = serde_json::json!({
                "error": {
                    "code": failure.code,
                    "kind": failure.kind,
                    "message": failure.message,
                }
            });
            eprintln!("{record}");
            failure.code
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<(), Failure> {
    let precision = cli.precision_bits;
    let (artifact, deferred) = execute(cli.command, precision)?;
    let text = render(&artifact, cli.format)?;
    write_output(&cli.output, &text)?;
    match deferred {
        Some(failure) => Err(failure),
        None => Ok(()),
    }
}

/// Everything a command can emit.
enum Artifact {
    Mgf(MgfArtifact),
    Ghost(GhostArtifact),
    Grid(GridArtifact),
    Moments(MomentsArtifact),
    Cumulants(CumulantsArtifact),
    Zeros(ZerosArtifact),
    Disk(DiskArtifact),
    Janson(JansonArtifact),
    Clusters(ClustersArtifact),
    Sim(SimResult),
    Sweep(SweepArtifact),
    Densities(DensitiesFigure),
}

fn execute(cmd: Cmd, precision: u32) -> Result<(Artifact, Option<Failure>), Failure> {
    match cmd {
        Cmd::Mgf(args) => {
            let spec = parse_spec(&args)?;
            let table = GhostTable::build(&spec);
            Ok(do_not_defer(Artifact::Mgf(MgfArtifact {
                spec: SpecOut::from(&spec),
                mgf: RatFunOut::from(table.mgf()),
                cancellations: table
                    .cancellations()
                    .iter()
                    .map(CancellationOut::from)
                    .collect(),
            })))
        }
        Cmd::Ghost { spec, d } => {
            let spec = parse_spec(&spec)?;
            let ghost = ghost_mgf(&spec, d)?;
            Ok(do_not_defer(Artifact::Ghost(GhostArtifact {
                spec: SpecOut::from(&spec),
                d,
                ghost: RatFunOut::from(&ghost),
            })))
        }
        Cmd::Density {
            spec,
            x_max,
            points,
        } => grid_artifact(&spec, x_max, points, "density").map(do_not_defer),
        Cmd::Cdf {
            spec,
            x_max,
            points,
        } => grid_artifact(&spec, x_max, points, "cdf").map(do_not_defer),
        Cmd::Moments { spec, order } => {
            let spec = parse_spec(&spec)?;
            let f = mgf(&spec);
            let raw = raw_moments(&f, order);
            let series = cumulants(&f, order)?;
            Ok(do_not_defer(Artifact::Moments(MomentsArtifact {
                spec: SpecOut::from(&spec),
                order,
                raw_moments: raw.iter().map(|m| m.to_string()).collect(),
                cumulants: series.kappas().iter().map(|k| k.to_string()).collect(),
            })))
        }
        Cmd::Cumulants { spec, order } => {
            let spec = parse_spec(&spec)?;
            let series = cumulants(&mgf(&spec), order)?;
            Ok(do_not_defer(Artifact::Cumulants(CumulantsArtifact {
                spec: SpecOut::from(&spec),
                order,
                cumulants: series.kappas().iter().map(|k| k.to_string()).collect(),
                scaled_log_concavity_violations: kappa_over_factorial_log_concavity(&series),
            })))
        }
        Cmd::Zeros(args) => {
            let spec = parse_spec(&args)?;
            let f = mgf(&spec);
            let zeros = find_zeros(&f, precision)?;
            let real_zero_count = zeros.iter().filter(|z| z.im.is_zero()).count();
            Ok(do_not_defer(Artifact::Zeros(ZerosArtifact {
                spec: SpecOut::from(&spec),
                precision_bits: precision,
                count: zeros.len(),
                real_zero_count,
                conjugate_pair_count: (zeros.len() - real_zero_count) / 2,
                zeros: zeros.iter().map(cplx_pair).collect(),
                poles: ratfun_poles(&f),
            })))
        }
        Cmd::VerifyDiskfree(args) => {
            let spec = parse_spec(&args)?;
            let report = zero_free_disk(&spec, precision)?;
            Ok(do_not_defer(Artifact::Disk(DiskArtifact::from(&report))))
        }
        Cmd::JansonCompare(args) => {
            let spec = parse_spec(&args)?;
            let comparison = janson_compare(&spec)?;
            let certificate = if spec.k() == 3 {
                zero_free_k3_certificate(spec.m(), spec.n())
                    .ok()
                    .map(|c| CertificateOut::from(&c))
            } else {
                None
            };
            Ok(do_not_defer(Artifact::Janson(JansonArtifact {
                spec: SpecOut::from(&spec),
                equal: comparison.equal,
                cleared_numer_difference: comparison
                    .cleared_numer_difference
                    .coeffs()
                    .iter()
                    .map(|c| c.to_string())
                    .collect(),
                certificate,
            })))
        }
        Cmd::Clusters { k, m, n } => {
            let fixed_n = n.as_deref().map(parse_scalar).transpose()?;
            let prediction = asymptotic_clusters(k, fixed_n.as_ref())?;
            let mut artifact = ClustersArtifact::from_prediction(&prediction);
            if let Some(m) = m {
                let n = fixed_n
                    .clone()
                    .ok_or_else(|| Failure::invalid("--m requires --n"))?;
                let spec = ProblemSpec::new(k, parse_scalar(&m)?, n)?;
                let f = mgf(&spec);
                let zeros = find_zeros(&f, precision)?;
                let matched = cluster_deviations(&zeros, &spec, &prediction)?;
                artifact.spec = Some(SpecOut::from(&spec));
                artifact.precision_bits = Some(precision);
                artifact.zeros = Some(zeros.iter().map(cplx_pair).collect());
                artifact.poles = Some(ratfun_poles(&f));
                artifact.matched = Some(MatchOut::from(&matched));
            }
            Ok(do_not_defer(Artifact::Clusters(artifact)))
        }
        Cmd::Simulate {
            spec,
            samples,
            seed,
            probes,
        } => {
            let spec = parse_spec(&spec)?;
            let result = monte_carlo(&spec, samples, seed, &probes)?;
            Ok(do_not_defer(Artifact::Sim(result)))
        }
        Cmd::Sweep {
            max_n,
            max_m,
            max_k,
            check,
            order,
        } => run_sweep(max_n, max_m, max_k, check, order, precision),
        Cmd::ReproduceFigure {
            id,
            max_n,
            points,
            x_max,
        } => reproduce_figure(id, max_n, points, x_max, precision).map(do_not_defer),
    }
}

fn do_not_defer(artifact: Artifact) -> (Artifact, Option<Failure>) {
    (artifact, None)
}

fn parse_scalar(text: &str) -> Result<Scalar, Failure> {
    let parse_int = |part: &str| -> Result<i64, Failure> {
        part.trim()
            .parse::<i64>()
            .map_err(|_| Failure::invalid(format!("not a rational number: {text:?}")))
    };
    match text.split_once('/') {
        None => Ok(Scalar::from_int(parse_int(text)?)),
        Some((num, den)) => Scalar::ratio(parse_int(num)?, parse_int(den)?).map_err(Failure::from),
    }
}

fn parse_spec(args: &SpecArgs) -> Result<ProblemSpec, Failure> {
    let m = parse_scalar(&args.m)?;
    let n = parse_scalar(&args.n)?;
    ProblemSpec::new(args.k, m, n).map_err(Failure::from)
}

fn ratfun_poles(f: &RatFun) -> Vec<FactorOut> {
    f.denom().iter().map(FactorOut::from).collect()
}

fn grid_artifact(
    args: &SpecArgs,
    x_max: Option<String>,
    points: usize,
    kind: &str,
) -> Result<Artifact, Failure> {
    let spec = parse_spec(args)?;
    let f = mgf(&spec);
    let model = density(&f)?;
    let x_max = match x_max {
        Some(text) => parse_scalar(&text)?,
        None => {
            let mut mean = mean_closed_form(spec.k(), spec.m(), spec.n())?;
            mean *= &Scalar::from_int(5);
            mean
        }
    };
    let grid = match kind {
        "density" => density_grid(&model, &x_max, points, EvalPolicy::default())?,
        _ => cdf_grid(&model, &x_max, points, EvalPolicy::default())?,
    };
    Ok(Artifact::Grid(GridArtifact {
        spec: SpecOut::from(&spec),
        kind: kind.to_string(),
        x_max: x_max.to_string(),
        points,
        values: grid.iter().map(|(x, v)| (x.to_f64(), v.to_f64())).collect(),
    }))
}

fn run_sweep(
    max_n: i64,
    max_m: Option<i64>,
    max_k: Option<u32>,
    check: CheckKind,
    order: usize,
    precision: u32,
) -> Result<(Artifact, Option<Failure>), Failure> {
    let max_m = max_m.unwrap_or(max_n).min(max_n);
    let max_k = max_k.unwrap_or(max_m.max(0) as u32);
    let mut specs = Vec::new();
    for k in 1..=max_k.min(max_m.max(0) as u32) {
        for m in k as i64..=max_m {
            for n in m..=max_n {
                specs.push((k, m, n));
            }
        }
    }

    let check_name = |kind: CheckKind| -> &'static str {
        match kind {
            CheckKind::Diskfree => "diskfree",
            CheckKind::Cumulants => "cumulants",
            CheckKind::All => "all",
        }
    };

    // Fan the independent per-spec verdicts out over worker threads and
    // merge them back in spec order.
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(specs.len().max(1));
    let mut indexed: Vec<(usize, Vec<SweepRow>)> = std::thread::scope(|scope| {
        let specs = &specs;
        let mut handles = Vec::with_capacity(workers);
        for worker in 0..workers {
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for (index, (k, m, n)) in specs.iter().enumerate() {
                    if index % workers != worker {
                        continue;
                    }
                    out.push((index, sweep_rows(*k, *m, *n, check, order, precision)));
                }
                out
            }));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    indexed.sort_by_key(|(index, _)| *index);
    let results: Vec<SweepRow> = indexed.into_iter().flat_map(|(_, rows)| rows).collect();

    let failures = results.iter().filter(|r| !r.pass).count();
    let artifact = Artifact::Sweep(SweepArtifact {
        check: check_name(check).to_string(),
        max_k,
        max_m,
        max_n,
        order,
        precision_bits: precision,
        checked: results.len(),
        failures,
        results,
    });
    let deferred = (failures > 0).then(|| {
        Failure::new(
            exit::COMPUTE,
            "sweep-failures",
            format!("{failures} sweep check(s) failed"),
        )
    });
    Ok((artifact, deferred))
}

fn sweep_rows(
    k: u32,
    m: i64,
    n: i64,
    check: CheckKind,
    order: usize,
    precision: u32,
) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    let spec = match ProblemSpec::from_ints(k, m, n) {
        Ok(spec) => spec,
        Err(e) => {
            rows.push(SweepRow {
                spec: SpecOut {
                    k,
                    m: m.to_string(),
                    n: n.to_string(),
                },
                check: "spec".to_string(),
                pass: false,
                detail: e.to_string(),
            });
            return rows;
        }
    };
    let spec_out = SpecOut::from(&spec);
    if check.runs_diskfree() {
        let (pass, detail) = match zero_free_disk(&spec, precision) {
            Ok(report) => (
                report.zero_free && report.winding_count == 0,
                format!(
                    "zero_free={} winding={} zeros={}",
                    report.zero_free,
                    report.winding_count,
                    report.zeros.len()
                ),
            ),
            Err(e) => (false, e.to_string()),
        };
        rows.push(SweepRow {
            spec: spec_out.clone(),
            check: "diskfree".to_string(),
            pass,
            detail,
        });
    }
    if check.runs_cumulants() {
        let (pass, detail) = match cumulants(&mgf(&spec), order) {
            Ok(series) => match (1..=order).find(|&p| !series.kappa(p).is_positive()) {
                Some(p) => (
                    false,
                    format!("kappa_{p} = {} is not positive", series.kappa(p)),
                ),
                None => (true, format!("kappa_1..kappa_{order} all positive")),
            },
            Err(e) => (false, e.to_string()),
        };
        rows.push(SweepRow {
            spec: spec_out,
            check: "cumulants".to_string(),
            pass,
            detail,
        });
    }
    rows
}

fn reproduce_figure(
    id: FigureId,
    max_n: Option<u32>,
    points: Option<usize>,
    x_max: Option<String>,
    precision: u32,
) -> Result<Artifact, Failure> {
    match id {
        FigureId::Density3 => {
            let args = SpecArgs {
                k: 3,
                m: "3".to_string(),
                n: "3".to_string(),
            };
            grid_artifact(
                &args,
                Some(x_max.unwrap_or_else(|| "4".to_string())),
                points.unwrap_or(201),
                "density",
            )
        }
        FigureId::Densities => {
            let x_max = parse_scalar(&x_max.unwrap_or_else(|| "4".to_string()))?;
            let points = points.unwrap_or(201);
            let mut curves = Vec::new();
            for n in 1..=max_n.unwrap_or(25) {
                let f = mgf(&ProblemSpec::from_ints(n, n as i64, n as i64)?);
                let model = density(&f)?;
                let grid = density_grid(&model, &x_max, points, EvalPolicy::default())?;
                curves.push(DensityCurveOut {
                    n,
                    values: grid.iter().map(|(x, v)| (x.to_f64(), v.to_f64())).collect(),
                });
            }
            Ok(Artifact::Densities(DensitiesFigure {
                id: "densities".to_string(),
                x_max: x_max.to_string(),
                points,
                curves,
            }))
        }
        FigureId::Zeros20 => {
            let report = zero_free_disk(&ProblemSpec::from_ints(20, 20, 20)?, precision)?;
            Ok(Artifact::Disk(DiskArtifact::from(&report)))
        }
        FigureId::Zeros51220 => {
            let spec = ProblemSpec::from_ints(5, 12, 20)?;
            let f = mgf(&spec);
            let zeros = find_zeros(&f, precision)?;
            let prediction = asymptotic_clusters(5, Some(spec.n()))?;
            let matched = cluster_deviations(&zeros, &spec, &prediction)?;
            let mut artifact = ClustersArtifact::from_prediction(&prediction);
            artifact.spec = Some(SpecOut::from(&spec));
            artifact.precision_bits = Some(precision);
            artifact.zeros = Some(zeros.iter().map(cplx_pair).collect());
            artifact.poles = Some(ratfun_poles(&f));
            artifact.matched = Some(MatchOut::from(&matched));
            Ok(Artifact::Clusters(artifact))
        }
    }
}

/// `v` with exactly ten significant decimal digits.
fn sig10(v: f64) -> String {
    format!("{v:.9e}")
}

fn render(artifact: &Artifact, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(match artifact {
            Artifact::Mgf(a) => to_json(a),
            Artifact::Ghost(a) => to_json(a),
            Artifact::Grid(a) => to_json(a),
            Artifact::Moments(a) => to_json(a),
            Artifact::Cumulants(a) => to_json(a),
            Artifact::Zeros(a) => to_json(a),
            Artifact::Disk(a) => to_json(a),
            Artifact::Janson(a) => to_json(a),
            Artifact::Clusters(a) => to_json(a),
            Artifact::Sim(a) => to_json(a),
            Artifact::Sweep(a) => to_json(a),
            Artifact::Densities(a) => to_json(a),
        }),
        Format::Csv => render_csv(artifact),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("artifacts serialize");
    text.push('\n');
    text
}

fn render_csv(artifact: &Artifact) -> Result<String, Failure> {
    match artifact {
        Artifact::Grid(a) => {
            let mut out = format!("x,{}\n", a.kind);
            for (x, v) in &a.values {
                out.push_str(&format!("{},{}\n", sig10(*x), sig10(*v)));
            }
            Ok(out)
        }
        Artifact::Zeros(a) => Ok(scatter_csv(&a.zeros, &a.poles)?),
        Artifact::Disk(a) => Ok(scatter_csv(&a.zeros, &a.poles)?),
        Artifact::Clusters(a) => match (&a.zeros, &a.poles) {
            (Some(zeros), Some(poles)) => Ok(scatter_csv(zeros, poles)?),
            _ => Err(Failure::invalid(
                "csv output for clusters requires --m and --n (no zeros were computed)",
            )),
        },
        Artifact::Sim(a) => {
            let mut out = String::from("bin_lo,bin_hi,count\n");
            for (i, count) in a.histogram_counts.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    sig10(a.histogram_edges[i]),
                    sig10(a.histogram_edges[i + 1]),
                    count
                ));
            }
            Ok(out)
        }
        Artifact::Densities(a) => {
            let mut out = String::from("n,x,density\n");
            for curve in &a.curves {
                for (x, v) in &curve.values {
                    out.push_str(&format!("{},{},{}\n", curve.n, sig10(*x), sig10(*v)));
                }
            }
            Ok(out)
        }
        _ => Err(Failure::invalid(
            "csv output is not defined for this command; use --format json",
        )),
    }
}

fn scatter_csv(zeros: &[[String; 2]], poles: &[FactorOut]) -> Result<String, Failure> {
    let mut out = String::from("re,im,kind\n");
    for z in zeros {
        out.push_str(&format!("{},{},zero\n", z[0], z[1]));
    }
    for p in poles {
        let pole = parse_scalar(&p.pole)?;
        out.push_str(&format!("{},{},pole\n", sig10(pole.to_f64()), sig10(0.0)));
    }
    Ok(out)
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Failure::new(
                exit::IO,
                "io",
                format!("cannot write {}: {e}", path.display()),
            )
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::new(exit::IO, "io", format!("cannot write stdout: {e}")))
        }
    }
}
