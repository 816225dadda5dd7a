//! `stegaug` command-line tool.
//!
//! Exit codes: 0 success, 1 I/O or system failure, 2 usage or validation
//! error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stegaug::BitDepth;

#[derive(Parser, Debug)]
#[command(name = "stegaug", version, about = "LSB steganography data augmentation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert a CIFAR-10 binary batch into a SAUG1 container.
    Ingest {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hide the top k bits of SECRET in the low k bits of COVER.
    Embed {
        cover: PathBuf,
        secret: PathBuf,
        #[arg(long, value_parser = parse_depth)]
        k: BitDepth,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover the hidden image from a stego PPM.
    Extract {
        stego: PathBuf,
        #[arg(long, value_parser = parse_depth)]
        k: BitDepth,
        #[arg(long)]
        out: PathBuf,
    },
    /// Augment a batch (SAUG1 container or CIFAR-10 binary file).
    Augment(AugmentArgs),
    /// Write quantization analysis tables as CSV.
    Analyze {
        #[command(flatten)]
        depths: DepthArgs,
        /// SAUG1 container whose pixels replace the full intensity domain.
        #[arg(long)]
        population: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, env = "STEGAUG_THREADS")]
        threads: Option<usize>,
    },
    /// Measure augmentation throughput.
    Bench {
        input: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        depths: DepthArgs,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        repetitions: u32,
        #[arg(long, env = "STEGAUG_THREADS")]
        threads: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
struct DepthArgs {
    /// Fixed bit depth.
    #[arg(long, value_parser = parse_depth, conflicts_with = "k_choices")]
    k: Option<BitDepth>,
    /// Comma-separated bit depths sampled uniformly (default 1..7).
    #[arg(long, value_delimiter = ',', value_parser = parse_depth)]
    k_choices: Option<Vec<BitDepth>>,
}

impl DepthArgs {
    fn resolve(&self) -> Vec<BitDepth> {
        match (&self.k, &self.k_choices) {
            (Some(k), _) => vec![*k],
            (None, Some(ks)) => ks.clone(),
            (None, None) => BitDepth::all().collect(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Steg,
    Color,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    Saug,
    Cifar,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Transform {
    Brightness,
    Contrast,
    Saturation,
    Linear,
}

#[derive(Args, Debug)]
struct AugmentArgs {
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    input_format: InputFormat,
    #[arg(long, value_enum, default_value_t = Mode::Steg)]
    mode: Mode,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    depths: DepthArgs,
    /// Write one CSV row per output sample describing what was applied.
    #[arg(long)]
    records: Option<PathBuf>,
    #[arg(long, env = "STEGAUG_THREADS")]
    threads: Option<usize>,
    /// Color mode: transform applied to every sample.
    #[arg(long, value_enum, required_if_eq("mode", "color"))]
    transform: Option<Transform>,
    /// Color mode: bias, contrast factor, saturation factor, or alpha.
    #[arg(long, required_if_eq("mode", "color"), allow_negative_numbers = true)]
    param: Option<f64>,
    /// Color mode, linear transform: additive bias.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
}

fn parse_depth(s: &str) -> Result<BitDepth, String> {
    let k: u32 = s.trim().parse().map_err(|e| format!("{e}"))?;
    BitDepth::new(k).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 1 } else { 2 })
        }
    }
}
