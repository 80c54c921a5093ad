//! Command-line grammar.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use syzygy_core::gates::{Gate, Theorem};
use syzygy_core::{FieldSpec, MapVariant};

#[derive(Parser, Debug)]
#[command(
    name = "syzygy",
    version,
    about = "Koszul modules and Betti tables of tangent developable surfaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,

    /// Directory for JSON/CSV/text files, in addition to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Primes standing in for characteristic 0, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [32003u64, 32009], global = true)]
    pub proxy_primes: Vec<u64>,

    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0x5eed, global = true)]
    pub seed: u64,

    /// Record wall-clock milliseconds per cell (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Betti table of one surface model.
    Betti(BettiArgs),
    /// Sweep the vanishing theorem for tangent surfaces (T1) or carpets (T2).
    Theorem(TheoremArgs),
    /// Run the structural property gates.
    Suite(SuiteArgs),
    /// Dimensions and ranks of the maps around the Koszul module.
    Maps(MapsArgs),
    /// Betti cells over a family of models and characteristics.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct BettiArgs {
    /// `tangent-rnc:g=N`, `elliptic:d=N` or `genus2:deg13`.
    #[arg(long, conflicts_with_all = ["g", "d"], required_unless_present_any = ["g", "d"])]
    pub model: Option<String>,

    /// Shorthand for `--model tangent-rnc:g=N`.
    #[arg(long, conflicts_with = "d")]
    pub g: Option<usize>,

    /// Shorthand for `--model elliptic:d=N`.
    #[arg(long)]
    pub d: Option<usize>,

    /// Characteristics, comma separated; 0 uses the proxy primes.
    #[arg(long = "char", value_delimiter = ',', value_parser = parse_field, default_value = "0")]
    pub chars: Vec<FieldSpec>,

    /// Rows to compute; only the upper end matters.
    #[arg(long, value_parser = parse_range, default_value = "0..4")]
    pub q: RangeInclusive<usize>,
}

#[derive(Args, Debug)]
pub struct TheoremArgs {
    #[arg(value_parser = parse_theorem)]
    pub which: Theorem,

    /// Genus range, e.g. `3..12`.
    #[arg(long, value_parser = parse_range, default_value = "3..12")]
    pub g: RangeInclusive<usize>,

    /// Characteristics; defaults to 0,2,3,5,7,11,13 (without 2 for T2).
    #[arg(long = "char", value_delimiter = ',', value_parser = parse_field)]
    pub chars: Vec<FieldSpec>,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Gates to run (repeatable or comma separated); all by default.
    #[arg(long, value_delimiter = ',', value_parser = parse_gate)]
    pub gate: Vec<Gate>,

    /// Characteristics for the map-level gates and the rational normal
    /// curve tables.
    #[arg(long = "char", value_delimiter = ',', value_parser = parse_field)]
    pub chars: Vec<FieldSpec>,

    /// Curve models for the table gates; defaults to both elliptic tables
    /// and the genus-two table.
    #[arg(long, value_delimiter = ',')]
    pub model: Vec<String>,

    /// Largest genus of the rational normal curve tables.
    #[arg(long, default_value_t = 9)]
    pub g_max: usize,
}

#[derive(Args, Debug)]
pub struct MapsArgs {
    #[arg(long)]
    pub p: usize,

    /// Genus fixing the degree `q = g - p - 3` of `γ`; defaults to `p + 3`.
    #[arg(long)]
    pub g: Option<usize>,

    #[arg(long, value_parser = parse_variant, default_value = "tangent")]
    pub variant: MapVariant,

    /// A single characteristic; 0 computes over the rationals.
    #[arg(long = "char", value_parser = parse_field, default_value = "0")]
    pub field: FieldSpec,

    /// Also print every nonzero entry.
    #[arg(long)]
    pub triplets: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Model family: `tangent-rnc` or `elliptic`.
    #[arg(long, default_value = "tangent-rnc")]
    pub model: String,

    /// Genus range for `tangent-rnc`.
    #[arg(long, value_parser = parse_range, default_value = "3..6")]
    pub g: RangeInclusive<usize>,

    /// Degree range for `elliptic`.
    #[arg(long, value_parser = parse_range, default_value = "9..10")]
    pub d: RangeInclusive<usize>,

    #[arg(long = "char", value_delimiter = ',', value_parser = parse_field, default_value = "0")]
    pub chars: Vec<FieldSpec>,

    /// Columns to keep.
    #[arg(long, value_parser = parse_range)]
    pub p: Option<RangeInclusive<usize>>,

    /// Rows to keep.
    #[arg(long, value_parser = parse_range, default_value = "0..3")]
    pub q: RangeInclusive<usize>,
}

/// `N`, `A..B` or `A..=B`, all inclusive.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected N, A..B or A..=B, got {s:?}");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let c: u64 = s.trim().parse().map_err(|_| format!("not a characteristic: {s:?}"))?;
    FieldSpec::new(c).map_err(|e| e.to_string())
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse()
}

fn parse_gate(s: &str) -> Result<Gate, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<MapVariant, String> {
    s.parse().map_err(|e: syzygy_core::multilinear::MapError| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..12").unwrap(), 3..=12);
        assert_eq!(parse_range("3..=12").unwrap(), 3..=12);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert!(parse_range("7..3").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field("0").unwrap(), FieldSpec::RATIONALS);
        assert!(parse_field("9").is_err());
    }

    #[test]
    fn grammar_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
