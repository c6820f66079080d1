use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use scalesmith::diffops::central_difference;
use scalesmith::grid2d::Detector;
use scalesmith::kernels1d::{
    default_radius, disc_gaussian, equivalent_hybrid_kernel, integrated_gaussian,
    integrated_gaussian_derivative, norm_sampled_gaussian, sampled_gaussian,
    sampled_gaussian_derivative, Method, SmoothingKernel,
};
use scalesmith::scalesel::ScaleGrid;
use scalesmith::signals::ModelKind;

use scalesmith_cli::config::{BenchConfig, SpreadConfig};
use scalesmith_cli::outputs::{kernel_csv, resolve_out_dir, write_file, write_manifest};
use scalesmith_cli::render::{run_render, RenderRequest};
use scalesmith_cli::runner::{
    all_cells_failed, run_scalesel, run_spread, scalesel_csv, spread_csv,
};
use scalesmith_cli::NumericalFailure;

/// Benchmarks for discrete Gaussian-derivative schemes.
#[derive(Parser)]
#[command(name = "scalesmith", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump one kernel as `n,coeff` CSV on stdout.
    Kernel(KernelArgs),
    /// Sweep the spatial spread measure into spread.csv.
    Spread(SpreadArgs),
    /// Run the scale-selection consistency benchmark into scalesel.csv.
    Scalesel(ScaleselArgs),
    /// Render a model image, one response slice and its scale signature.
    Render(RenderArgs),
}

#[derive(Args)]
struct KernelArgs {
    /// One of: sampled-gauss, norm-sampled-gauss, int-gauss, disc-gauss,
    /// sampled, integrated, disc-cd, hybrid-sampled-cd, hybrid-int-cd, delta.
    #[arg(long)]
    kernel: String,
    /// Scale parameter s = sigma^2; unused for `delta`.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Differentiation order (0..=4).
    #[arg(long, default_value_t = 0)]
    order: u32,
    /// Truncation radius override for the Gaussian-family kernels.
    #[arg(long)]
    radius: Option<usize>,
}

#[derive(Args)]
struct SpreadArgs {
    /// Comma-separated scheme list; defaults to all five.
    #[arg(long, value_delimiter = ',')]
    methods: Vec<Method>,
    #[arg(long, default_value_t = 0.1)]
    sigma_min: f64,
    #[arg(long, default_value_t = 2.0)]
    sigma_max: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Output directory (default: $SCALESMITH_OUT or ./out).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScaleselArgs {
    /// Load a config JSON first; explicit flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated scheme list.
    #[arg(long, value_delimiter = ',')]
    methods: Vec<Method>,
    /// Comma-separated detector list.
    #[arg(long, value_delimiter = ',')]
    detectors: Vec<Detector>,
    #[arg(long)]
    sigma0_min: Option<f64>,
    #[arg(long)]
    sigma0_max: Option<f64>,
    #[arg(long)]
    sigma0_steps: Option<usize>,
    #[arg(long)]
    grid_min: Option<f64>,
    #[arg(long)]
    grid_max: Option<f64>,
    #[arg(long)]
    grid_levels: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory (default: $SCALESMITH_OUT or ./out).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    kind: ModelKind,
    #[arg(long)]
    method: Method,
    #[arg(long)]
    detector: Detector,
    #[arg(long)]
    sigma0: f64,
    /// Scale of the rendered response slice; defaults to sigma0.
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    grid_min: f64,
    #[arg(long, default_value_t = 5.0)]
    grid_max: f64,
    #[arg(long, default_value_t = 80)]
    grid_levels: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<NumericalFailure>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Kernel(args) => cmd_kernel(args),
        Command::Spread(args) => cmd_spread(args),
        Command::Scalesel(args) => cmd_scalesel(args),
        Command::Render(args) => cmd_render(args),
    }
}

fn cmd_kernel(args: KernelArgs) -> anyhow::Result<()> {
    let s = args.sigma;
    let text = if args.kernel == "delta" {
        kernel_csv(&central_difference(args.order)?)
    } else if let Ok(kind) = SmoothingKernel::from_str(&args.kernel) {
        if args.order != 0 {
            anyhow::bail!(
                "smoothing kernel '{}' has order 0; pass a scheme name to differentiate",
                args.kernel
            );
        }
        let k = match kind {
            SmoothingKernel::SampledGauss => {
                sampled_gaussian(s, args.radius.unwrap_or_else(|| default_radius(s, 0)))?
            }
            SmoothingKernel::NormSampledGauss => {
                norm_sampled_gaussian(s, args.radius.unwrap_or_else(|| default_radius(s, 0)))?
            }
            SmoothingKernel::IntGauss => {
                integrated_gaussian(s, args.radius.unwrap_or_else(|| default_radius(s, 0)))?
            }
            SmoothingKernel::DiscGauss => disc_gaussian(s)?,
        };
        kernel_csv(&k)
    } else {
        let method = Method::from_str(&args.kernel)?;
        let k = match (method, args.order) {
            (_, 0) => scalesmith::kernels1d::method_kernel(method, s, 0)?,
            (Method::SampledDer, o) => sampled_gaussian_derivative(
                s,
                o,
                args.radius.unwrap_or_else(|| default_radius(s, o)),
            )?,
            (Method::IntegratedDer, o) => integrated_gaussian_derivative(
                s,
                o,
                args.radius.unwrap_or_else(|| default_radius(s, o)),
            )?,
            (m, o) => equivalent_hybrid_kernel(m, s, o)?,
        };
        kernel_csv(&k)
    };
    print!("{text}");
    Ok(())
}

fn cmd_spread(args: SpreadArgs) -> anyhow::Result<()> {
    let config = SpreadConfig {
        methods: if args.methods.is_empty() {
            Method::ALL.to_vec()
        } else {
            args.methods
        },
        sigma_min: args.sigma_min,
        sigma_max: args.sigma_max,
        samples: args.samples,
        workers: args.workers,
    };
    let records = run_spread(&config)?;
    let dir = resolve_out_dir(args.out);
    let csv_path = write_file(&dir, "spread.csv", spread_csv(&records).as_bytes())?;
    let config_json = config.to_json();
    let cfg_path = write_file(&dir, "spread_config.json", config_json.as_bytes())?;
    write_manifest(&dir, &config_json, &[csv_path, cfg_path])?;
    eprintln!("wrote {} rows to {}", records.len(), dir.display());
    Ok(())
}

fn cmd_scalesel(args: ScaleselArgs) -> anyhow::Result<()> {
    let mut config = match &args.config {
        Some(path) => BenchConfig::from_json(&std::fs::read_to_string(path)?)?,
        None => BenchConfig::default(),
    };
    if !args.methods.is_empty() {
        config.methods = args.methods.clone();
    }
    if !args.detectors.is_empty() {
        config.detectors = args.detectors.clone();
    }
    if let Some(v) = args.sigma0_min {
        config.sigma0_min = v;
    }
    if let Some(v) = args.sigma0_max {
        config.sigma0_max = v;
    }
    if let Some(v) = args.sigma0_steps {
        config.sigma0_steps = v;
    }
    if let Some(v) = args.grid_min {
        config.grid_min = v;
    }
    if let Some(v) = args.grid_max {
        config.grid_max = v;
    }
    if let Some(v) = args.grid_levels {
        config.grid_levels = v;
    }
    if let Some(v) = args.workers {
        config.workers = v;
    }

    let records = run_scalesel(&config)?;
    if all_cells_failed(&records) {
        return Err(NumericalFailure("every signature was flat".into()).into());
    }
    let dir = resolve_out_dir(args.out);
    let csv_path = write_file(&dir, "scalesel.csv", scalesel_csv(&records).as_bytes())?;
    let config_json = config.to_json();
    let cfg_path = write_file(&dir, "config.json", config_json.as_bytes())?;
    write_manifest(&dir, &config_json, &[csv_path, cfg_path])?;
    eprintln!("wrote {} rows to {}", records.len(), dir.display());
    Ok(())
}

fn cmd_render(args: RenderArgs) -> anyhow::Result<()> {
    let request = RenderRequest {
        kind: args.kind,
        method: args.method,
        detector: args.detector,
        sigma0: args.sigma0,
        sigma: args.sigma.unwrap_or(args.sigma0),
        grid: ScaleGrid::new(args.grid_min, args.grid_max, args.grid_levels)?,
        out_dir: resolve_out_dir(args.out),
    };
    let files = run_render(&request)?;
    let labels: Vec<String> = files
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    eprintln!("wrote {}", labels.join(", "));
    Ok(())
}
