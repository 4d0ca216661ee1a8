use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fuchsian_entropy::dynamics::{
    analytic_eigenpair, attractor_sample, eigenpair_residual, perron_root, BoundaryMap, MarkovData,
};
use fuchsian_entropy::entropy::{
    linspace, solve_target_entropy, strip_mass, sweep, sweep_csv, verify, EntropyReport,
    ReportOptions, Solution, MIN_STRIP_GRID,
};
use fuchsian_entropy::hyperbolic::DiskMoebius;
use fuchsian_entropy::maskit::{build_polygon, FenchelNielsen6, SAMPLE_SEED};
use fuchsian_entropy::polygon::MarkedPolygon;
use fuchsian_entropy::serial::{fmt17, to_string17};
use fuchsian_entropy::Error;

const EXIT_DOMAIN: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const STRIP_TOLERANCE: f64 = 1e-3;

#[derive(Parser)]
#[command(name = "fuchsian-entropy", version, about = "Entropy of boundary maps of genus-g surface groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write data here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    MatrixTxt,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy report for the regular (8g-4)-gon.
    Regular {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Entropy report for a genus-2 polygon from Fenchel-Nielsen parameters.
    Maskit {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Runs the verification suite; exits 3 on the first failure.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Entropy along one chart parameter, as CSV.
    Sweep {
        #[arg(long, default_value = "beta")]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Parameters with a prescribed entropy.
    Solve {
        #[arg(long)]
        target: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Topological entropy of the Markov transition matrix.
    Htop {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Random pairs pushed forward by the natural extension, as CSV.
    DumpAttractor {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 50)]
        iters: usize,
        #[arg(long, default_value_t = 5000)]
        points: usize,
        #[arg(long, default_value_t = SAMPLE_SEED)]
        seed: u64,
    },
    /// Strip quadrature against side lengths; exits 3 if any side is off.
    StripCheck {
        #[command(flatten)]
        params: ParamArgs,
        /// Quadrature nodes per strip.
        #[arg(long, default_value_t = 2000)]
        steps: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    nsteps: u64,
    #[arg(long, default_value_t = SAMPLE_SEED)]
    seed: u64,
}

impl RunArgs {
    fn options(&self) -> ReportOptions {
        ReportOptions {
            samples: self.samples,
            nsteps: self.nsteps as usize,
            seed: self.seed,
            ..ReportOptions::default()
        }
    }
}

/// Regular polygon of `--genus`, or a genus-2 polygon when a parameter file
/// or any chart flag is given. Flags override file values.
#[derive(Args)]
struct ParamArgs {
    /// JSON file with chart parameters, or the output of `solve`.
    params_file: Option<PathBuf>,
    #[arg(long)]
    genus: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<f64>,
}

enum Source {
    Regular(usize),
    Maskit(FenchelNielsen6),
}

impl Source {
    fn polygon(&self) -> Result<MarkedPolygon, Failure> {
        Ok(match self {
            Source::Regular(g) => MarkedPolygon::regular(*g)?,
            Source::Maskit(p) => build_polygon(p)?,
        })
    }

    /// Regular polygon, or the chart point that gives one.
    fn is_regular(&self) -> bool {
        match self {
            Source::Regular(_) => true,
            Source::Maskit(p) => *p == FenchelNielsen6::regular(),
        }
    }
}

impl ParamArgs {
    fn flags(&self) -> [(&'static str, Option<f64>); 6] {
        [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("sigma", self.sigma),
            ("tau", self.tau),
            ("rho", self.rho),
        ]
    }

    fn chart(&self) -> Result<FenchelNielsen6, Failure> {
        let mut p = match &self.params_file {
            Some(path) => read_params(path)?,
            None => FenchelNielsen6::regular(),
        };
        for (name, value) in self.flags() {
            if let Some(v) = value {
                p = p.with(name, v)?;
            }
        }
        Ok(p)
    }

    fn source(&self) -> Result<Source, Failure> {
        let chart = self.params_file.is_some() || self.flags().iter().any(|(_, v)| v.is_some());
        match (chart, self.genus) {
            (_, Some(g)) if g < 2 => Err(Error::InvalidGenus(g).into()),
            (true, Some(g)) if g != 2 => Err(Failure::Usage(format!(
                "chart parameters describe genus 2 only (got --genus {g})"
            ))),
            (true, _) => Ok(Source::Maskit(self.chart()?)),
            (false, g) => Ok(Source::Regular(g.unwrap_or(2))),
        }
    }
}

fn read_params(path: &Path) -> Result<FenchelNielsen6, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if let Ok(s) = serde_json::from_str::<Solution>(&text) {
        return Ok(s.params);
    }
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    data: String,
    /// Set when the data was produced but a check failed.
    failure: Option<String>,
}

impl From<String> for Output {
    fn from(data: String) -> Self {
        Output { data, failure: None }
    }
}

fn json<T: Serialize>(value: &T) -> Result<Output, Failure> {
    let mut s = to_string17(value)?;
    s.push('\n');
    Ok(s.into())
}

fn pick(format: Option<Format>, allowed: &[Format]) -> Result<Format, Failure> {
    match format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Failure::Usage(format!("format {f:?} is not available for this command"))),
    }
}

fn markov(poly: &MarkedPolygon) -> Result<MarkovData, Failure> {
    Ok(MarkovData::build(&BoundaryMap::new(poly)?)?)
}

fn report(poly: &MarkedPolygon, run: &RunArgs, format: Option<Format>) -> Result<Output, Failure> {
    match pick(format, &[Format::Json, Format::MatrixTxt])? {
        Format::MatrixTxt => Ok(markov(poly)?.to_text().into()),
        _ => json(&EntropyReport::compute(poly, &run.options())?),
    }
}

#[derive(Serialize)]
struct HtopReport {
    genus: usize,
    h_top: f64,
    perron_root: f64,
    analytic_root: f64,
    lower_bound: f64,
    eigenpair_residual: f64,
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Regular { genus, run } => report(&Source::Regular(*genus).polygon()?, run, cli.format),
        Command::Maskit { params, run } => {
            if let Some(g) = params.genus.filter(|&g| g != 2) {
                return Err(Failure::Usage(format!("maskit describes genus 2 only (got --genus {g})")));
            }
            report(&build_polygon(&params.chart()?)?, run, cli.format)
        }
        Command::Verify { params, run, corrupt } => {
            pick(cli.format, &[Format::Csv])?;
            let source = params.source()?;
            let mut poly = source.polygon()?;
            if *corrupt {
                poly = poly.with_pairing(1, poly.t(1).compose(&DiskMoebius::rotation(1e-3)));
            }
            let lines = verify(&poly, &run.options(), source.is_regular());
            let data: String = lines.iter().map(|l| format!("{l}\n")).collect();
            let failure = lines.iter().find(|l| !l.passed).map(|l| format!("check `{}` failed", l.name));
            Ok(Output { data, failure })
        }
        Command::Sweep { param, from, to, steps } => {
            pick(cli.format, &[Format::Csv])?;
            if !(from.is_finite() && to.is_finite()) || *steps == 0 {
                return Err(Failure::Usage("sweep needs finite --from/--to and --steps ≥ 1".into()));
            }
            Ok(sweep_csv(&sweep(param, &linspace(*from, *to, *steps))?).into())
        }
        Command::Solve { target, tol } => {
            pick(cli.format, &[Format::Json])?;
            json(&solve_target_entropy(*target, *tol)?)
        }
        Command::Htop { params } => {
            let poly = params.source()?.polygon()?;
            let md = markov(&poly)?;
            match pick(cli.format, &[Format::Json, Format::MatrixTxt])? {
                Format::MatrixTxt => Ok(md.to_text().into()),
                _ => {
                    let (root, _) = perron_root(&md)?;
                    let (lambda, v) = analytic_eigenpair(poly.genus())?;
                    json(&HtopReport {
                        genus: poly.genus(),
                        h_top: root.ln(),
                        perron_root: root,
                        analytic_root: lambda,
                        lower_bound: lambda.ln(),
                        eigenpair_residual: eigenpair_residual(&md, lambda, &v),
                    })
                }
            }
        }
        Command::DumpAttractor { params, iters, points, seed } => {
            pick(cli.format, &[Format::Csv])?;
            let bm = BoundaryMap::new(&params.source()?.polygon()?)?;
            let mut out = String::from("u_angle,w_angle\n");
            for p in attractor_sample(&bm, *points, *iters, *seed) {
                out.push_str(&format!("{},{}\n", fmt17(p.u.angle()), fmt17(p.w.angle())));
            }
            Ok(out.into())
        }
        Command::StripCheck { params, steps } => {
            pick(cli.format, &[Format::Csv])?;
            if *steps < MIN_STRIP_GRID {
                return Err(Failure::Usage(format!("--steps must be at least {MIN_STRIP_GRID}")));
            }
            let poly = params.source()?.polygon()?;
            let lengths = poly.metrics().side_lengths;
            let mut data = String::from("side,strip_mass,side_length,error\n");
            let mut failure = None;
            for (k, len) in lengths.iter().enumerate() {
                let m = strip_mass(&poly, k + 1, *steps)?;
                let err = (m - len).abs();
                if err > STRIP_TOLERANCE && failure.is_none() {
                    failure = Some(format!("strip {} is off by {err:e}", k + 1));
                }
                data.push_str(&format!("{},{},{},{}\n", k + 1, fmt17(m), fmt17(*len), fmt17(err)));
            }
            Ok(Output { data, failure })
        }
    }
}

fn emit(out: &Option<PathBuf>, data: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, data),
        None => std::io::stdout().lock().write_all(data.as_bytes()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    }
    let result = run(&cli).and_then(|o| {
        emit(&cli.out, &o.data).map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(o.failure)
    });
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_domain_error() { EXIT_DOMAIN } else { EXIT_VERIFY })
        }
    }
}
