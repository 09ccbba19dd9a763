use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{
    BnGrid, ClConverge, ClumpVerify, ConfigFile, Experiment, ExperimentConfig, FinalBound, FlowSweep,
    Format, OpSpectrum, RepWeights, SpacingHist, TorusMcKs,
};
use crate::error::CliResult;

/// Variable naming the output directory when neither `--out` nor the config sets one.
pub const OUT_DIR_ENV: &str = "SPECSTAT_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "specstat", version, about = "Spacing-statistics experiments with CSV/JSON output")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// TOML config with per-subcommand tables.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    SpacingHist(SpacingHist),
    TorusMcKs(TorusMcKs),
    BnGrid(BnGrid),
    RepWeights(RepWeights),
    OpSpectrum(OpSpectrum),
    FlowSweep(FlowSweep),
    ClumpVerify(ClumpVerify),
    ClConverge(ClConverge),
    FinalBound(FinalBound),
}

/// Layers defaults, the config table for the subcommand, and flags.
fn layered<T: Clone + Default>(
    file: Option<&T>,
    flags: &T,
    overlay: fn(&mut T, &T),
    fill: fn(&mut T),
) -> T {
    let mut s = file.cloned().unwrap_or_default();
    overlay(&mut s, flags);
    fill(&mut s);
    s
}

impl Cli {
    /// Resolves the run from flags, the config file and `env_out`.
    pub fn resolve(&self, env_out: Option<PathBuf>) -> CliResult<ExperimentConfig> {
        let file = match &self.common.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        macro_rules! pick {
            ($variant:ident, $field:ident, $ty:ident, $flags:expr) => {
                Experiment::$variant(layered(file.$field.as_ref(), $flags, $ty::overlay, $ty::fill_defaults))
            };
        }
        let experiment = match &self.command {
            Command::SpacingHist(f) => pick!(SpacingHist, spacing_hist, SpacingHist, f),
            Command::TorusMcKs(f) => pick!(TorusMcKs, torus_mc_ks, TorusMcKs, f),
            Command::BnGrid(f) => pick!(BnGrid, bn_grid, BnGrid, f),
            Command::RepWeights(f) => pick!(RepWeights, rep_weights, RepWeights, f),
            Command::OpSpectrum(f) => pick!(OpSpectrum, op_spectrum, OpSpectrum, f),
            Command::FlowSweep(f) => pick!(FlowSweep, flow_sweep, FlowSweep, f),
            Command::ClumpVerify(f) => pick!(ClumpVerify, clump_verify, ClumpVerify, f),
            Command::ClConverge(f) => pick!(ClConverge, cl_converge, ClConverge, f),
            Command::FinalBound(f) => pick!(FinalBound, final_bound, FinalBound, f),
        };
        Ok(ExperimentConfig {
            experiment,
            seed: self.common.seed.or(file.seed).unwrap_or(0),
            format: self.common.format.or(file.format).unwrap_or_default(),
            out: self.common.out.clone().or(file.out).or(env_out).unwrap_or_else(|| PathBuf::from(".")),
        })
    }
}
