//! Command-line and config-file settings, merged and validated into a [`RunConfig`].

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dunkl_appell::{catalog, AppellFamily64, DunklContext64, Error, Theorem};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "dunkl-approx",
    version,
    about = "Evaluate Dunkl-Appell operators, tabulate convergence and check error bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate K_n f on a grid
    Eval(Settings),
    /// Closed-form central moments alongside K_n f (f defaults to id)
    Moments(Settings),
    /// Error table over several n, with a sup-error summary on stderr
    Converge(Settings),
    /// Check the actual error against one of the error estimates
    Bounds(Settings),
    /// Randomized consistency suites
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Unit,
    GouldHopper,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

/// Every key can come from a flag or from the TOML file given by `--config`;
/// flags win. File keys are spelled like the flags (`gh-a`, `x-grid`, ...).
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    /// TOML file with default values for any of the flags below
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Dunkl parameter, at least 0
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,

    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,

    /// Gould-Hopper coefficient a in Q(t) = exp(a t^(d+1))
    #[arg(long, allow_hyphen_values = true)]
    pub gh_a: Option<f64>,

    #[arg(long)]
    pub gh_d: Option<u32>,

    /// Degree at which the Gould-Hopper generator is truncated
    #[arg(long)]
    pub gh_cap: Option<usize>,

    /// Generator coefficients c_0,c_1,... for the custom family
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<f64>>,

    /// Accept generators with negative coefficients; weights are still checked
    #[arg(long)]
    #[serde(default)]
    pub allow_unverified: bool,

    /// Comma-separated list of n
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u32>>,

    /// Comma-separated x values; an empty list gives an empty table
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,

    /// start:stop:step
    #[arg(long)]
    pub x_grid: Option<String>,

    /// Test function from the registry
    #[arg(long)]
    pub f: Option<String>,

    /// Weight truncation tolerance
    #[arg(long)]
    pub tol: Option<f64>,

    /// Maximum number of weights per point
    #[arg(long)]
    pub cap: Option<usize>,

    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Write the table here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// T2, T3 or T4
    #[arg(long)]
    pub theorem: Option<String>,

    /// Hölder constant for T3
    #[arg(long)]
    pub holder_m: Option<f64>,

    /// Hölder exponent for T3, in (0, 1]
    #[arg(long)]
    pub beta: Option<f64>,

    /// Right end a of the interval for T4; defaults to the largest x
    #[arg(long)]
    pub interval_end: Option<f64>,

    /// Multiplies the modulus used by the bound (negative control)
    #[arg(long, hide = true)]
    pub sabotage_modulus: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Random cases per suite
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
}

impl Settings {
    /// Fills unset fields from the `--config` file, if one was given.
    pub fn merged(self) -> Result<Settings> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text = fs::read_to_string(&path)
            .with_context(|| format!("--config: cannot read {}", path.display()))?;
        let file: Settings = toml::from_str(&text)
            .with_context(|| format!("--config: cannot parse {}", path.display()))?;
        Ok(Settings {
            config: Some(path),
            mu: self.mu.or(file.mu),
            family: self.family.or(file.family),
            gh_a: self.gh_a.or(file.gh_a),
            gh_d: self.gh_d.or(file.gh_d),
            gh_cap: self.gh_cap.or(file.gh_cap),
            coeffs: self.coeffs.or(file.coeffs),
            allow_unverified: self.allow_unverified || file.allow_unverified,
            n: self.n.or(file.n),
            x: self.x.or(file.x),
            x_grid: self.x_grid.or(file.x_grid),
            f: self.f.or(file.f),
            tol: self.tol.or(file.tol),
            cap: self.cap.or(file.cap),
            format: self.format.or(file.format),
            out: self.out.or(file.out),
            theorem: self.theorem.or(file.theorem),
            holder_m: self.holder_m.or(file.holder_m),
            beta: self.beta.or(file.beta),
            interval_end: self.interval_end.or(file.interval_end),
            sabotage_modulus: self.sabotage_modulus.or(file.sabotage_modulus),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Unit,
    GouldHopper { a: f64, d: u32, degree_cap: usize },
    Custom { coeffs: Vec<f64>, allow_unverified: bool },
}

impl FamilySpec {
    pub fn build(&self, mu: f64) -> Result<AppellFamily64> {
        let ctx = DunklContext64::new(mu).map_err(|e| anyhow!("--mu: {e}"))?;
        ctx.require_operator_domain()
            .map_err(|e| anyhow!("--mu: {e}"))?;
        match self {
            FamilySpec::Unit => AppellFamily64::unit(ctx).map_err(|e| anyhow!("--family: {e}")),
            FamilySpec::GouldHopper { a, d, degree_cap } => {
                AppellFamily64::gould_hopper(ctx, *a, *d, *degree_cap)
                    .map_err(|e| anyhow!("--gh-a/--gh-d: {e}"))
            }
            FamilySpec::Custom {
                coeffs,
                allow_unverified,
            } => {
                let f = AppellFamily64::from_coefficients(ctx, coeffs.clone())
                    .map_err(|e| anyhow!("--coeffs: {e}"))?;
                Ok(if *allow_unverified {
                    f.allow_unverified()
                } else {
                    f
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mu: f64,
    pub family: FamilySpec,
    pub n_list: Vec<u32>,
    pub grid: Vec<f64>,
    pub function: String,
    pub tol: f64,
    pub cap: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub theorem: Option<Theorem>,
    pub holder_m: Option<f64>,
    pub beta: Option<f64>,
    pub interval_end: Option<f64>,
    pub modulus_scale: f64,
}

pub const DEFAULT_TOL: f64 = 1e-14;
pub const DEFAULT_CAP: usize = 100_000;
pub const DEFAULT_GH_CAP: usize = 64;

impl RunConfig {
    /// Validates merged settings. `default_f` is the test function used when
    /// `--f` is absent.
    pub fn from_settings(s: Settings, default_f: &str) -> Result<RunConfig> {
        let mu = s.mu.unwrap_or(0.0);
        let family = match s.family.unwrap_or(FamilyKind::Unit) {
            FamilyKind::Unit => FamilySpec::Unit,
            FamilyKind::GouldHopper => FamilySpec::GouldHopper {
                a: s.gh_a.ok_or_else(|| anyhow!("--gh-a is required for the gould-hopper family"))?,
                d: s.gh_d.ok_or_else(|| anyhow!("--gh-d is required for the gould-hopper family"))?,
                degree_cap: s.gh_cap.unwrap_or(DEFAULT_GH_CAP),
            },
            FamilyKind::Custom => FamilySpec::Custom {
                coeffs: s
                    .coeffs
                    .ok_or_else(|| anyhow!("--coeffs is required for the custom family"))?,
                allow_unverified: s.allow_unverified,
            },
        };

        let n_list = s.n.ok_or_else(|| anyhow!("--n is required"))?;
        if n_list.is_empty() {
            bail!("--n: the list is empty");
        }
        if n_list.contains(&0) {
            bail!("--n: every n must be at least 1");
        }

        let grid = match (s.x, s.x_grid) {
            (Some(_), Some(_)) => bail!("--x and --x-grid are mutually exclusive"),
            (Some(list), None) => parse_x_list(&list)?,
            (None, Some(spec)) => parse_grid(&spec)?,
            (None, None) => bail!("one of --x or --x-grid is required"),
        };
        if let Some(&bad) = grid.iter().find(|x| !(**x >= 0.0) || !x.is_finite()) {
            bail!("--x: {bad} is not a finite nonnegative number");
        }

        let function = s.f.unwrap_or_else(|| default_f.to_string());
        catalog::lookup::<f64>(&function).map_err(|e| anyhow!("--f: {e}"))?;

        let tol = s.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol < 1.0) {
            bail!("--tol: {tol} must lie in (0, 1)");
        }
        let cap = s.cap.unwrap_or(DEFAULT_CAP);
        if cap == 0 {
            bail!("--cap: must be at least 1");
        }

        let theorem = s
            .theorem
            .as_deref()
            .map(str::parse::<Theorem>)
            .transpose()
            .map_err(|e: Error| anyhow!("--theorem: {e}"))?;
        if let Some(m) = s.holder_m {
            if !(m > 0.0) {
                bail!("--holder-m: {m} must be positive");
            }
        }
        if let Some(b) = s.beta {
            if !(b > 0.0 && b <= 1.0) {
                bail!("--beta: {b} must lie in (0, 1]");
            }
        }
        if let Some(a) = s.interval_end {
            if !(a > 0.0) {
                bail!("--interval-end: {a} must be positive");
            }
        }
        let modulus_scale = s.sabotage_modulus.unwrap_or(1.0);
        if !(modulus_scale >= 0.0) {
            bail!("--sabotage-modulus: {modulus_scale} must be nonnegative");
        }

        Ok(RunConfig {
            mu,
            family,
            n_list,
            grid,
            function,
            tol,
            cap,
            format: s.format.unwrap_or(Format::Csv),
            out: s.out,
            theorem,
            holder_m: s.holder_m,
            beta: s.beta,
            interval_end: s.interval_end,
            modulus_scale,
        })
    }
}

fn parse_x_list(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| anyhow!("--x: '{p}' is not a number"))
        })
        .collect()
}

/// `start:stop:step`, both ends included. The last point snaps to `stop`
/// when the step divides the range up to rounding.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        bail!("--x-grid: expected start:stop:step, got '{spec}'");
    };
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| anyhow!("--x-grid: '{s}' is not a number"))
    };
    let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
    if !(step > 0.0) || !step.is_finite() {
        bail!("--x-grid: step {step} must be positive");
    }
    if !(start <= stop) || !stop.is_finite() {
        bail!("--x-grid: start {start} must not exceed stop {stop}");
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    let mut pts: Vec<f64> = (0..=count).map(|k| start + k as f64 * step).collect();
    if let Some(last) = pts.last_mut() {
        if (*last - stop).abs() <= 1e-9 * step {
            *last = stop;
        }
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> Settings {
        Settings {
            n: Some(vec![10]),
            x: Some("1".into()),
            ..Settings::default()
        }
    }

    #[test]
    fn grid_includes_both_ends() {
        let g = parse_grid("0:2:0.1").unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[20], 2.0);
        assert_eq!(parse_grid("1:1:0.5").unwrap(), vec![1.0]);
    }

    #[test]
    fn bad_grids_are_rejected() {
        assert!(parse_grid("2:0:0.1").is_err());
        assert!(parse_grid("0:2:0").is_err());
        assert!(parse_grid("0:2").is_err());
    }

    #[test]
    fn empty_x_list_is_an_empty_grid() {
        let s = Settings {
            x: Some(String::new()),
            ..settings()
        };
        assert!(RunConfig::from_settings(s, "id").unwrap().grid.is_empty());
    }

    #[test]
    fn errors_name_the_parameter() {
        let s = Settings {
            f: Some("tanx".into()),
            ..settings()
        };
        let msg = RunConfig::from_settings(s, "id").unwrap_err().to_string();
        assert!(msg.starts_with("--f:"), "{msg}");

        let s = Settings {
            n: Some(vec![0]),
            ..settings()
        };
        let msg = RunConfig::from_settings(s, "id").unwrap_err().to_string();
        assert!(msg.starts_with("--n:"), "{msg}");
    }

    #[test]
    fn flags_win_over_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        fs::write(&path, "mu = 0.7\nfamily = \"gould-hopper\"\ngh-a = 0.5\ngh-d = 1\nn = [5, 10]\n").unwrap();
        let s = Settings {
            config: Some(path),
            mu: Some(0.2),
            x: Some("1".into()),
            ..Settings::default()
        };
        let cfg = RunConfig::from_settings(s.merged().unwrap(), "id").unwrap();
        assert_eq!(cfg.mu, 0.2);
        assert_eq!(cfg.n_list, vec![5, 10]);
        assert_eq!(
            cfg.family,
            FamilySpec::GouldHopper {
                a: 0.5,
                d: 1,
                degree_cap: DEFAULT_GH_CAP
            }
        );
    }

    #[test]
    fn unknown_file_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        fs::write(&path, "nu = 1\n").unwrap();
        let s = Settings {
            config: Some(path),
            ..Settings::default()
        };
        assert!(s.merged().is_err());
    }
}
