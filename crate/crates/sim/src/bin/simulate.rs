use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rm_mwpc::decoders::{AdmmParams, BpParams};
use rm_mwpc::ChannelKind;
use rm_sim::{emit, DecoderSpec, ExperimentConfig, MatrixPolicy, OutputFormat, SimError, Simulation};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChannelArg {
    Bec,
    Bsc,
    Awgn,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecoderArg {
    Pd,
    Bp,
    Lp,
    Bf,
    Mrb,
    MlBec,
    MlBf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixArg {
    Full,
    Tailored,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

/// Block-error-rate sweep of a Reed–Muller code over one channel family.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Code order and number of variables, as `r,m`
    #[arg(long, value_parser = parse_code)]
    code: (usize, usize),
    #[arg(long, value_enum)]
    channel: ChannelArg,
    /// Erasure or crossover probabilities, or Eb/N0 values in dB
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    params: Vec<f64>,
    #[arg(long, value_enum)]
    decoder: DecoderArg,
    #[arg(long, value_enum, default_value = "full")]
    matrix: MatrixArg,
    /// Share of positions classified as reliable for tailored matrices
    #[arg(long, default_value_t = 0.25)]
    f: f64,
    /// Rows per frame for tailored and random matrices
    #[arg(long)]
    s: Option<usize>,
    /// BP check-message weight
    #[arg(long, default_value_t = 1.0)]
    w: f64,
    /// BP iterations
    #[arg(long, default_value_t = 30)]
    ell: usize,
    /// ADMM penalty
    #[arg(long, default_value_t = 0.03)]
    mu: f64,
    /// ADMM iteration cap
    #[arg(long, default_value_t = 1000)]
    tmax: usize,
    /// ADMM residual tolerance
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    /// Bit-flipping budget (default 2n)
    #[arg(long)]
    max_flips: Option<usize>,
    /// MRB reprocessing order
    #[arg(long, default_value_t = 3)]
    nu: usize,
    #[arg(long, default_value_t = 100)]
    min_errors: u64,
    #[arg(long)]
    max_frames: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

fn parse_code(text: &str) -> Result<(usize, usize), String> {
    let (r, m) = text.split_once(',').ok_or("expected r,m")?;
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
    Ok((parse(r)?, parse(m)?))
}

fn config_from(args: &Args) -> Result<ExperimentConfig, SimError> {
    let channel = match args.channel {
        ChannelArg::Bec => ChannelKind::Bec,
        ChannelArg::Bsc => ChannelKind::Bsc,
        ChannelArg::Awgn => ChannelKind::BiAwgn,
    };
    let decoder = match args.decoder {
        DecoderArg::Pd => DecoderSpec::Peeling,
        DecoderArg::Bp => DecoderSpec::Bp(BpParams {
            weight: args.w,
            iterations: args.ell,
        }),
        DecoderArg::Lp => DecoderSpec::Lp(AdmmParams {
            mu: args.mu,
            max_iterations: args.tmax,
            tolerance: args.tol,
        }),
        DecoderArg::Bf => DecoderSpec::BitFlip {
            max_flips: args.max_flips,
        },
        DecoderArg::Mrb => DecoderSpec::Mrb { order: args.nu },
        DecoderArg::MlBec => DecoderSpec::MlBec,
        DecoderArg::MlBf => DecoderSpec::MlBruteForce,
    };
    let rows = || args.s.ok_or_else(|| SimError::Config("--s is required for tailored and random matrices".into()));
    let matrix = match args.matrix {
        MatrixArg::Full => MatrixPolicy::Full,
        MatrixArg::Tailored => MatrixPolicy::Tailored {
            fraction: args.f,
            rows: rows()?,
        },
        MatrixArg::Random => MatrixPolicy::RandomSubset { rows: rows()? },
    };
    let config = ExperimentConfig::new(
        args.code,
        channel,
        args.params.clone(),
        decoder,
        matrix,
        args.max_frames,
        args.seed,
    )
    .with_min_block_errors(args.min_errors);
    config.validate()?;
    Ok(config)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let config = match config_from(&args) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let format = match args.format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Json => OutputFormat::Json,
    };

    let result = Simulation::new(config.clone()).and_then(|sim| {
        let mut records = Vec::with_capacity(config.params.len());
        for &p in &config.params {
            let rec = sim.run_point(p)?;
            eprintln!(
                "{} = {p}: {} errors in {} frames, bler {:.4e}, {:.2} iterations per frame ({:.1} s)",
                config.channel.as_str(),
                rec.block_errors,
                rec.frames,
                rec.bler,
                rec.decoder_iters_mean,
                rec.wall_time
            );
            records.push(rec);
        }
        emit(&config, &records, format, &args.out)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ SimError::Config(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
