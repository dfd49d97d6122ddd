//! Run configuration: command-line flags layered over an optional TOML file.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use vosa_core::modules::TauTable;
use vosa_core::FracIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TwistChoice {
    Id,
    Sigma,
    Tau,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
}

/// Flags shared by every subcommand. Unset flags fall back to the config
/// file, then to built-in defaults.
#[derive(Clone, Debug, Default, Args)]
pub struct CommonArgs {
    /// TOML file with any of the keys below (flags take precedence)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Number of fermions
    #[arg(long = "l", global = true)]
    pub l: Option<usize>,
    #[arg(long, value_enum, global = true)]
    pub twist: Option<TwistChoice>,
    /// Eigenvalue data for --twist tau, e.g. "self:1/2,self:0"
    #[arg(long, global = true)]
    pub tau_table: Option<String>,
    /// Truncation weight, written p/q
    #[arg(long, global = true)]
    pub max_weight: Option<String>,
    /// Relation window beyond the truncation weight
    #[arg(long, global = true)]
    pub margin: Option<String>,
    /// Compare against the ground states of the known twisted modules
    #[arg(long, global = true)]
    pub certify: bool,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Disable the basis cache
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    l: Option<usize>,
    twist: Option<TwistChoice>,
    tau_table: Option<String>,
    max_weight: Option<String>,
    margin: Option<String>,
    certify: Option<bool>,
    cache_dir: Option<PathBuf>,
    output: Option<PathBuf>,
    format: Option<Format>,
}

/// Fully resolved configuration.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub l: usize,
    pub twist: TwistChoice,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_table: Option<String>,
    pub max_weight: FracIndex,
    pub margin: FracIndex,
    pub certify: bool,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub format: Format,
}

pub fn default_max_weight() -> FracIndex {
    FracIndex::new(5, 2)
}

fn parse_weight(s: &str, what: &str) -> Result<FracIndex> {
    let w: FracIndex = s.trim().parse().with_context(|| format!("invalid {what} '{s}'"))?;
    if w < FracIndex::ZERO || !w.in_lattice(2) {
        bail!("{what} must be a non-negative multiple of 1/2, got {w}");
    }
    Ok(w)
}

fn read_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let twist = args.twist.or(file.twist).unwrap_or(TwistChoice::Id);
        let tau_table = args.tau_table.clone().or(file.tau_table);
        let mut l = args.l.or(file.l);
        if twist == TwistChoice::Tau {
            let table = tau_table_for(tau_table.as_deref(), l)?;
            let n = table.realize()?.0.dim();
            match l {
                Some(k) if k != n => bail!("--l {k} does not match the tau table, which has {n} generators"),
                _ => l = Some(n),
            }
        } else if tau_table.is_some() {
            bail!("--tau-table only applies to --twist tau");
        }
        let l = l.unwrap_or(1);
        if l == 0 {
            bail!("--l must be at least 1");
        }
        let max_weight = match args.max_weight.as_deref().or(file.max_weight.as_deref()) {
            Some(s) => parse_weight(s, "max-weight")?,
            None => default_max_weight(),
        };
        let margin = match args.margin.as_deref().or(file.margin.as_deref()) {
            Some(s) => parse_weight(s, "margin")?,
            None => FracIndex::int(2),
        };
        let cache_dir = if args.no_cache {
            None
        } else {
            args.cache_dir
                .clone()
                .or_else(|| std::env::var_os(vosa_core::zhu::CACHE_ENV).map(PathBuf::from))
                .or(file.cache_dir)
        };
        Ok(RunConfig {
            l,
            twist,
            tau_table,
            max_weight,
            margin,
            certify: args.certify || file.certify.unwrap_or(false),
            cache_dir,
            output: args.output.clone().or(file.output),
            format: args.format.or(file.format).unwrap_or(Format::Json),
        })
    }

    pub fn tau(&self) -> Result<TauTable> {
        tau_table_for(self.tau_table.as_deref(), Some(self.l))
    }
}

/// The given table, or the swap of the polarized pair when `l = 2`.
fn tau_table_for(table: Option<&str>, l: Option<usize>) -> Result<TauTable> {
    match table {
        Some(s) => {
            let t: TauTable = s.parse()?;
            t.realize()?;
            Ok(t)
        }
        None if l.unwrap_or(2) == 2 => Ok(TauTable::swap_pair()),
        None => bail!("--twist tau needs --tau-table unless l = 2"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.toml");
        std::fs::write(&p, "l = 3\ntwist = \"sigma\"\nmax_weight = \"2\"\ncertify = true\n").unwrap();
        let args = CommonArgs { config: Some(p), l: Some(2), no_cache: true, ..Default::default() };
        let c = RunConfig::resolve(&args).unwrap();
        assert_eq!(c.l, 2);
        assert_eq!(c.twist, TwistChoice::Sigma);
        assert_eq!(c.max_weight, FracIndex::int(2));
        assert!(c.certify);
        assert!(c.cache_dir.is_none());
    }

    #[test]
    fn rejects_bad_values() {
        let bad = |args: CommonArgs| RunConfig::resolve(&args).is_err();
        assert!(bad(CommonArgs { max_weight: Some("1/3".into()), ..Default::default() }));
        assert!(bad(CommonArgs { l: Some(0), ..Default::default() }));
        assert!(bad(CommonArgs { twist: Some(TwistChoice::Tau), l: Some(3), ..Default::default() }));
        assert!(bad(CommonArgs {
            twist: Some(TwistChoice::Tau),
            tau_table: Some("self:1/3".into()),
            ..Default::default()
        }));
        assert!(bad(CommonArgs { tau_table: Some("self:0".into()), ..Default::default() }));
    }

    #[test]
    fn tau_defaults_to_the_swap() {
        let args = CommonArgs { twist: Some(TwistChoice::Tau), ..Default::default() };
        let c = RunConfig::resolve(&args).unwrap();
        assert_eq!(c.l, 2);
        assert_eq!(c.tau().unwrap(), TauTable::swap_pair());
    }
}
