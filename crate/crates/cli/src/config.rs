//! Experiment configuration: a TOML file with optional top-level `seed`,
//! `format` and `out`, and one table per subcommand. Command-line flags
//! override file values, which override the built-in defaults.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// Defines a config section whose fields are all optional, so that the
/// same struct parses from TOML and from flags and can be layered.
macro_rules! section {
    (
        $(#[$meta:meta])*
        $name:ident {
            $( $(#[$fmeta:meta])* $field:ident : $ty:ty = $default:expr ),* $(,)?
        }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
        #[serde(deny_unknown_fields)]
        pub struct $name {
            $(
                $(#[$fmeta])*
                #[serde(default, skip_serializing_if = "Option::is_none")]
                pub $field: Option<$ty>,
            )*
        }

        impl $name {
            /// Takes every field that `over` sets.
            pub fn overlay(&mut self, over: &Self) {
                $( if over.$field.is_some() { self.$field = over.$field.clone(); } )*
            }

            /// Fills unset fields with their defaults.
            pub fn fill_defaults(&mut self) {
                $( if self.$field.is_none() { self.$field = $default; } )*
            }
        }
    };
}

section! {
    /// Density histogram of the rescaled gaps of a spectrum file.
    SpacingHist {
        /// File of real eigenvalues separated by whitespace or commas; `#` starts a comment.
        #[arg(long)]
        input: PathBuf = None,
        #[arg(long)]
        bin_width: f64 = Some(0.1),
    }
}

section! {
    /// Monte-Carlo mean KS distance to Poisson over Haar tori.
    TorusMcKs {
        /// Torus dimensions.
        #[arg(long = "n", value_delimiter = ',')]
        n: Vec<usize> = Some(vec![16, 64, 256, 1024]),
        #[arg(long)]
        samples: usize = Some(1000),
    }
}

section! {
    /// Far-from-Poisson membership on a cubical lattice of cell centers.
    BnGrid {
        #[arg(long = "n")]
        n: usize = Some(3),
        #[arg(long)]
        resolution: usize = Some(20),
        #[arg(long)]
        alpha: f64 = Some(4.0 / 3.0),
    }
}

section! {
    /// Dimensions and weight counts along a ray `m * lambda`.
    RepWeights {
        /// Rank plus one of `su(n)`.
        #[arg(long = "n")]
        n: usize = Some(3),
        /// Highest weight in fundamental-weight coordinates.
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<u64> = Some(vec![1, 1]),
        #[arg(long = "m", value_delimiter = ',')]
        m: Vec<u64> = Some(vec![1, 2, 4, 8, 16]),
        /// Torus element coefficients as rationals; default `1/997^j`.
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<String> = None,
    }
}

section! {
    /// Exact spectrum of a diagonal operator polynomial on an irreducible.
    OpSpectrum {
        #[arg(long = "n")]
        n: usize = Some(2),
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<u64> = Some(vec![1]),
        #[arg(long = "m")]
        m: u64 = Some(4),
        /// Terms `re[,im]: word`, words made of `t<k>`, `e<i>_<j>` and `casimir`.
        #[arg(long = "term")]
        terms: Vec<String> = Some(vec!["1: t0".into()]),
        #[arg(long, value_enum)]
        rescale: Rescale = Some(Rescale::Dimension),
    }
}

section! {
    /// Time averages of a box or far-from-Poisson indicator along a linear flow.
    FlowSweep {
        #[arg(long, value_delimiter = ',')]
        direction: Vec<f64> = Some(vec![2f64.sqrt() - 1.0, 3f64.sqrt() - 1.0, 5f64.sqrt() - 2.0]),
        #[arg(long, value_enum)]
        set: FlowSet = Some(FlowSet::Box),
        /// Side of the box `[0, side)^n`.
        #[arg(long)]
        side: f64 = Some(0.5),
        /// Threshold parameter of the far-from-Poisson set.
        #[arg(long)]
        alpha: f64 = Some(4.0 / 3.0),
        #[arg(long, value_delimiter = ',')]
        horizons: Vec<f64> = Some(vec![10.0, 100.0, 1000.0, 10000.0]),
        #[arg(long)]
        steps: usize = Some(400_000),
    }
}

section! {
    /// Residuals of the window-sum inclusion-exclusion identity on random tuples.
    ClumpVerify {
        #[arg(long)]
        cases: usize = Some(100),
        #[arg(long)]
        n_max: usize = Some(12),
        #[arg(long = "a", value_delimiter = ',')]
        a: Vec<usize> = Some(vec![0, 1]),
        /// Right ends `s` of the indicators `1[0, s]`.
        #[arg(long = "s", value_delimiter = ',')]
        s: Vec<f64> = Some(vec![0.5, 1.5]),
    }
}

section! {
    /// Rescaled expectations at increasing levels against the classical limit.
    ClConverge {
        #[arg(long = "n")]
        n: usize = Some(2),
        /// Lowering-chart entries `i,j: re,im` with `i > j`.
        #[arg(long = "point")]
        point: Vec<String> = Some(vec!["1,0: 0.5,0.25".into()]),
        /// Terms `re[,im]: word`, words made of `t<k>` and `e<i>_<j>`.
        #[arg(long = "term")]
        terms: Vec<String> = Some(vec!["1: t0 t0".into()]),
        #[arg(long, value_delimiter = ',')]
        levels: Vec<u32> = Some(vec![10, 20, 40, 80, 160]),
    }
}

section! {
    /// Summands of the final error budget.
    FinalBound {
        #[arg(long = "n", value_delimiter = ',')]
        n: Vec<u64> = Some(vec![1_000_000]),
        #[arg(long)]
        alpha: f64 = Some(4.0 / 3.0),
        #[arg(long)]
        gamma: f64 = Some(0.3),
        #[arg(long)]
        epsilon: f64 = Some(0.1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Rescale {
    None,
    Dimension,
    Parameter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FlowSet {
    Box,
    Bn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Contents of a config file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, rename = "spacing-hist", skip_serializing_if = "Option::is_none")]
    pub spacing_hist: Option<SpacingHist>,
    #[serde(default, rename = "torus-mc-ks", skip_serializing_if = "Option::is_none")]
    pub torus_mc_ks: Option<TorusMcKs>,
    #[serde(default, rename = "bn-grid", skip_serializing_if = "Option::is_none")]
    pub bn_grid: Option<BnGrid>,
    #[serde(default, rename = "rep-weights", skip_serializing_if = "Option::is_none")]
    pub rep_weights: Option<RepWeights>,
    #[serde(default, rename = "op-spectrum", skip_serializing_if = "Option::is_none")]
    pub op_spectrum: Option<OpSpectrum>,
    #[serde(default, rename = "flow-sweep", skip_serializing_if = "Option::is_none")]
    pub flow_sweep: Option<FlowSweep>,
    #[serde(default, rename = "clump-verify", skip_serializing_if = "Option::is_none")]
    pub clump_verify: Option<ClumpVerify>,
    #[serde(default, rename = "cl-converge", skip_serializing_if = "Option::is_none")]
    pub cl_converge: Option<ClConverge>,
    #[serde(default, rename = "final-bound", skip_serializing_if = "Option::is_none")]
    pub final_bound: Option<FinalBound>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config values serialize")
    }
}

/// One experiment with all parameters resolved.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
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

impl Experiment {
    pub fn kind(&self) -> &'static str {
        match self {
            Experiment::SpacingHist(_) => "spacing-hist",
            Experiment::TorusMcKs(_) => "torus-mc-ks",
            Experiment::BnGrid(_) => "bn-grid",
            Experiment::RepWeights(_) => "rep-weights",
            Experiment::OpSpectrum(_) => "op-spectrum",
            Experiment::FlowSweep(_) => "flow-sweep",
            Experiment::ClumpVerify(_) => "clump-verify",
            Experiment::ClConverge(_) => "cl-converge",
            Experiment::FinalBound(_) => "final-bound",
        }
    }

    /// Config file holding exactly this experiment and seed.
    pub fn as_config(&self, seed: u64) -> ConfigFile {
        let mut c = ConfigFile { seed: Some(seed), ..ConfigFile::default() };
        match self.clone() {
            Experiment::SpacingHist(s) => c.spacing_hist = Some(s),
            Experiment::TorusMcKs(s) => c.torus_mc_ks = Some(s),
            Experiment::BnGrid(s) => c.bn_grid = Some(s),
            Experiment::RepWeights(s) => c.rep_weights = Some(s),
            Experiment::OpSpectrum(s) => c.op_spectrum = Some(s),
            Experiment::FlowSweep(s) => c.flow_sweep = Some(s),
            Experiment::ClumpVerify(s) => c.clump_verify = Some(s),
            Experiment::ClConverge(s) => c.cl_converge = Some(s),
            Experiment::FinalBound(s) => c.final_bound = Some(s),
        }
        c
    }
}

/// Resolved run: experiment, seed and output settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub seed: u64,
    pub format: Format,
    pub out: PathBuf,
}

impl ExperimentConfig {
    /// SHA-256 of the canonical TOML of the experiment and seed, followed by
    /// any input bytes the experiment reads. Output settings are excluded.
    pub fn hash(&self, inputs: &[u8]) -> String {
        let mut h = Sha256::new();
        h.update(self.experiment.as_config(self.seed).to_toml().as_bytes());
        h.update(inputs);
        hex::encode(h.finalize())
    }
}

/// Field value that must be present after defaults are filled.
pub fn required<'a, T>(v: &'a Option<T>, key: &str) -> CliResult<&'a T> {
    v.as_ref().ok_or_else(|| CliError::Config(format!("missing required key `{key}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"
seed = 7
format = "json"

[torus-mc-ks]
n = [64]
samples = 1000

[op-spectrum]
terms = ["1/2: t0 t0", "1,-2: casimir"]
rescale = "parameter"
"#;
        let c = ConfigFile::parse(text).unwrap();
        assert_eq!(c.torus_mc_ks.as_ref().unwrap().n, Some(vec![64]));
        assert_eq!(ConfigFile::parse(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(ConfigFile::parse("sead = 1").is_err());
        assert!(ConfigFile::parse("[bn-grid]\nresolutoin = 3").is_err());
        assert!(ConfigFile::parse("[no-such-kind]").is_err());
    }

    #[test]
    fn overlay_and_defaults() {
        let mut base = BnGrid { n: Some(4), ..BnGrid::default() };
        base.overlay(&BnGrid { resolution: Some(5), ..BnGrid::default() });
        base.fill_defaults();
        assert_eq!(base, BnGrid { n: Some(4), resolution: Some(5), alpha: Some(4.0 / 3.0) });
    }

    #[test]
    fn hash_ignores_output_settings() {
        let mut s = BnGrid::default();
        s.fill_defaults();
        let a = ExperimentConfig { experiment: Experiment::BnGrid(s), seed: 1, format: Format::Csv, out: ".".into() };
        let b = ExperimentConfig { format: Format::Json, out: "elsewhere".into(), ..a.clone() };
        assert_eq!(a.hash(&[]), b.hash(&[]));
        assert_ne!(a.hash(&[]), ExperimentConfig { seed: 2, ..a.clone() }.hash(&[]));
        assert_eq!(a.hash(&[]).len(), 64);
    }
}
