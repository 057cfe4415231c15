use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;
use sumlab::suite::{parse_n_list, render_output, run_suite, RunConfig, SUITES};

/// Experiment suites for Fourier summability means.
#[derive(Parser, Debug)]
#[command(name = "sumlab", version, about)]
struct Args {
    /// Suite to run (kernels, means, classify, theorem1, counterexample,
    /// wiener, bounds, salem, necessary, all)
    #[arg(long)]
    suite: Option<String>,

    /// Method descriptor, repeatable (e.g. `riesz:alpha=2,beta=2`)
    #[arg(long = "method")]
    methods: Vec<String>,

    /// Function descriptor, repeatable (e.g. `counterexample_f0:q=3,p=2,K=3`)
    #[arg(long = "function")]
    functions: Vec<String>,

    /// Comma-separated ascending list, e.g. `8,16,32,64`
    #[arg(long = "n-list")]
    n_list: Option<String>,

    /// Evaluation point
    #[arg(long)]
    x: Option<f64>,

    /// Integration half-range for the kernel-side checks
    #[arg(long)]
    delta: Option<f64>,

    /// Experiment tolerance
    #[arg(long)]
    tol: Option<f64>,

    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,

    /// csv or json
    #[arg(long)]
    format: Option<String>,

    /// Flat key=value config file with [section] headers
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(failed) => {
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(args: Args) -> sumlab::Result<bool> {
    let mut config = RunConfig::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)?;
        config.apply_config_file(&text)?;
    }
    if let Some(s) = args.suite {
        config.suite = s;
    }
    if !args.methods.is_empty() {
        config.methods = args.methods;
    }
    if !args.functions.is_empty() {
        config.functions = args.functions;
    }
    if let Some(n) = args.n_list {
        config.n_list = parse_n_list(&n)?;
    }
    if let Some(x) = args.x {
        config.x = x;
    }
    if let Some(d) = args.delta {
        config.delta = d;
    }
    if let Some(t) = args.tol {
        config.tol = t;
    }
    if let Some(f) = args.format {
        config.format = f.parse()?;
    }
    if let Some(o) = args.out {
        config.out = Some(o);
    }
    if !SUITES.contains(&config.suite.as_str()) {
        return Err(sumlab::Error::Config(format!(
            "unknown suite `{}`; expected one of {}",
            config.suite,
            SUITES.join(", ")
        )));
    }

    let outcome = run_suite(&config)?;
    let bytes = render_output(&outcome, config.format);
    match &config.out {
        Some(path) => std::fs::write(path, &bytes)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
        }
    }
    Ok(outcome.any_failed || outcome.partial)
}
