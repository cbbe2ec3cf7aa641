use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polyirs::errmodel::ErrorModel;
use polyirs::error::{Error, Result};
use polyirs::field::{FieldSpec, ToleranceProfile};
use polyirs::harness::{
    condnum_study, demo_matmul, emit_bound_csv, emit_csv, parse_range, run_monte_carlo, AlphaRule, CodewordSource,
    DecoderChoice, DemoConfig, ExperimentConfig, MultiplierRule,
};

/// Polynomial-coded matrix multiplication with collaborative decoding.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Monte Carlo error rates; one CSV row per (L, t).
    Simulate {
        /// gf:<p> or real
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// One L or a comma-separated list
        #[arg(long, value_delimiter = ',', required = true)]
        l: Vec<usize>,
        /// <min:max> or a single t
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        /// uref or gre [default: uref over GF(p), gre over the reals]
        #[arg(long)]
        model: Option<String>,
        /// pow:<base>, linear or primitive [default: primitive over GF(p), pow:0.9 over the reals]
        #[arg(long)]
        alphas: Option<String>,
        /// cpda, mssr or both
        #[arg(long, default_value = "cpda")]
        decoder: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// random or zero [default: random over GF(p), zero over the reals]
        #[arg(long)]
        codeword: Option<String>,
        /// Real-field thresholds: standard or precise
        #[arg(long, default_value = "precise")]
        tolerance: String,
        /// unit or unit-dual
        #[arg(long, default_value = "unit")]
        multipliers: String,
    },
    /// Analytic failure-probability bound over GF(q).
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mean condition number of the stacked syndrome Gram matrix (reals).
    Condnum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// <lmin:lmax>
        #[arg(long)]
        l: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value = "pow:0.9")]
        alphas: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "unit-dual")]
        multipliers: String,
        #[arg(long, default_value = "precise")]
        tolerance: String,
    },
    /// One end-to-end coded multiplication with faulty workers.
    DemoMatmul {
        #[arg(long)]
        field: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        nblocks: usize,
        #[arg(long)]
        workers: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Done {
    Ok,
    DecodeFailure,
}

fn with_tolerance(field: FieldSpec, tol: &str) -> Result<FieldSpec> {
    Ok(match field {
        FieldSpec::Real(_) => FieldSpec::Real(tol.parse()?),
        other => other,
    })
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(cmd: Cmd) -> Result<Done> {
    match cmd {
        Cmd::Simulate { field, n, k, l, t, trials, model, alphas, decoder, seed, out, codeword, tolerance, multipliers } => {
            let field = with_tolerance(field.parse()?, &tolerance)?;
            let (t_min, t_max) = parse_range(&t)?;
            let base = match field {
                FieldSpec::Prime { p } => ExperimentConfig::prime(p, n, k, l),
                FieldSpec::Real(_) => ExperimentConfig::real(n, k, l, AlphaRule::Power(0.9)),
            };
            let cfg = ExperimentConfig {
                field,
                t_min,
                t_max,
                trials,
                seed,
                model: model.as_deref().map(str::parse::<ErrorModel>).transpose()?.unwrap_or(base.model),
                alphas: alphas.as_deref().map(str::parse::<AlphaRule>).transpose()?.unwrap_or(base.alphas),
                decoder: decoder.parse::<DecoderChoice>()?,
                codeword: codeword.as_deref().map(str::parse::<CodewordSource>).transpose()?.unwrap_or(base.codeword),
                multipliers: multipliers.parse::<MultiplierRule>()?,
                ..base
            };
            let report = run_monte_carlo(&cfg)?;
            if cfg.decoder == DecoderChoice::Both {
                eprintln!("cpda/mssr disagreements: {}", report.disagreements());
            }
            emit_csv(&report, &out)?;
        }
        Cmd::Bound { q, n, k, l, t, out } => {
            let (lo, hi) = parse_range(&t)?;
            // Validate everything before touching the output file.
            polyirs::harness::pf_bound(q, n, k, l, hi)?;
            emit_bound_csv(q, n, k, l, lo, hi, create(&out)?)?;
        }
        Cmd::Condnum { n, k, l, t, trials, alphas, seed, out, multipliers, tolerance } => {
            let (l_lo, l_hi) = parse_range(&l)?;
            let (t_min, t_max) = parse_range(&t)?;
            if l_lo == 0 {
                return Err(Error::InvalidParameters("L must be at least 1".into()));
            }
            let mut cfg = ExperimentConfig::real(n, k, (l_lo..=l_hi).collect(), alphas.parse()?);
            cfg.field = FieldSpec::Real(tolerance.parse::<ToleranceProfile>()?);
            cfg.multipliers = multipliers.parse()?;
            cfg.t_min = t_min;
            cfg.t_max = t_max;
            cfg.trials = trials;
            cfg.seed = seed;
            emit_csv(&condnum_study(&cfg)?, &out)?;
        }
        Cmd::DemoMatmul { field, m, nblocks, workers, t, seed } => {
            let report = demo_matmul(&DemoConfig::new(field.parse()?, m, nblocks, workers, t, seed))?;
            println!("interleaving L = {}, t = {} of t_max = {}", report.interleaving, report.t, report.t_max);
            if let Some(reason) = report.failure {
                println!("decoding failed: {reason}");
                return Ok(Done::DecodeFailure);
            }
            if let Some(e) = report.max_rel_error {
                println!("max relative error: {e:.3e}");
            }
            if !report.recovered {
                println!("decoder returned a wrong codeword");
                return Ok(Done::DecodeFailure);
            }
            println!("recovered A^T B");
        }
    }
    Ok(Done::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Done::Ok) => ExitCode::SUCCESS,
        Ok(Done::DecodeFailure) => ExitCode::from(3),
        Err(e @ Error::InvalidParameters(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
