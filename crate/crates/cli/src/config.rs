//! Effective settings: command-line flags override a TOML file, which
//! overrides the built-in defaults.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

use ising_infmax::graph;
use ising_infmax::model::{FamilyParams, IsingModel, SolverConfig, DEFAULT_EXACT_CAP};

/// How the solver radius is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RadiusSpec {
    Fixed(usize),
    Named(RadiusRule),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusRule {
    /// From `k`, `epsilon`, `C`, `delta` and the max degree.
    Formula,
    /// Largest component diameter: local influence equals global influence.
    Diameter,
}

impl Default for RadiusSpec {
    fn default() -> Self {
        RadiusSpec::Named(RadiusRule::Formula)
    }
}

impl FromStr for RadiusSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "formula" => Ok(RadiusSpec::Named(RadiusRule::Formula)),
            "diameter" => Ok(RadiusSpec::Named(RadiusRule::Diameter)),
            _ => s
                .parse()
                .map(RadiusSpec::Fixed)
                .map_err(|_| format!("expected an integer, `formula` or `diameter`, got `{s}`")),
        }
    }
}

impl fmt::Display for RadiusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadiusSpec::Fixed(r) => write!(f, "{r}"),
            RadiusSpec::Named(RadiusRule::Formula) => f.write_str("formula"),
            RadiusSpec::Named(RadiusRule::Diameter) => f.write_str("diameter"),
        }
    }
}

/// Contents of a `--config` file. Every key is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub k: Option<usize>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub decay_constant: Option<f64>,
    pub radius: Option<RadiusSpec>,
    pub exact_ball_cap: Option<usize>,
    pub max_budget: Option<usize>,
    pub max_degree: Option<usize>,
    pub best_effort: Option<bool>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub burn_in: Option<usize>,
    pub thin: Option<usize>,
    pub tolerance: Option<f64>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Solver flags shared by every command that runs the localized solver.
#[derive(Args, Clone, Debug, Default)]
pub struct SolverFlags {
    /// Budget: pin at most this many vertices [default: 1]
    #[arg(long)]
    pub k: Option<usize>,
    /// Additive error target [default: 0.1]
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Slack delta of the family, with gamma = 1 - delta [default: 0.24]
    #[arg(long)]
    pub delta: Option<f64>,
    /// Influence-decay constant C [default: 1]
    #[arg(long = "decay-constant", visible_alias = "C")]
    pub decay_constant: Option<f64>,
    /// Radius: an integer, `formula` or `diameter` [default: formula]
    #[arg(long)]
    pub radius: Option<RadiusSpec>,
    /// Largest ball handled by exact enumeration [default: 25]
    #[arg(long)]
    pub cap: Option<usize>,
    /// Largest allowed budget [default: 6]
    #[arg(long)]
    pub max_budget: Option<usize>,
    /// Max degree of the family [default: max(3, model max degree)]
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Shrink the radius to fit the cap and accept models outside the family
    #[arg(long)]
    pub best_effort: bool,
}

/// Resolved solver settings, echoed into every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverSettings {
    pub k: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub decay_constant: f64,
    pub radius: RadiusSpec,
    pub exact_ball_cap: usize,
    pub max_budget: usize,
    pub max_degree: Option<usize>,
    pub best_effort: bool,
}

impl SolverSettings {
    pub fn resolve(flags: &SolverFlags, file: &FileConfig) -> Self {
        let d = SolverConfig::default();
        SolverSettings {
            k: flags.k.or(file.k).unwrap_or(d.k),
            epsilon: flags.epsilon.or(file.epsilon).unwrap_or(d.epsilon),
            delta: flags.delta.or(file.delta).unwrap_or(0.24),
            decay_constant: flags.decay_constant.or(file.decay_constant).unwrap_or(d.decay_constant),
            radius: flags.radius.or(file.radius).unwrap_or_default(),
            exact_ball_cap: flags.cap.or(file.exact_ball_cap).unwrap_or(DEFAULT_EXACT_CAP),
            max_budget: flags.max_budget.or(file.max_budget).unwrap_or(d.max_budget),
            max_degree: flags.max_degree.or(file.max_degree),
            best_effort: flags.best_effort || file.best_effort.unwrap_or(false),
        }
    }

    pub fn family_for(&self, model: &IsingModel) -> Result<FamilyParams> {
        let delta_max = self.max_degree.unwrap_or_else(|| model.max_degree().max(3));
        Ok(FamilyParams::high_temperature(delta_max, self.delta)?)
    }

    pub fn config_for(&self, model: &IsingModel) -> SolverConfig {
        let radius_override = match self.radius {
            RadiusSpec::Fixed(r) => Some(r),
            RadiusSpec::Named(RadiusRule::Diameter) => Some(graph::diameter(model)),
            RadiusSpec::Named(RadiusRule::Formula) => None,
        };
        SolverConfig {
            k: self.k,
            epsilon: self.epsilon,
            decay_constant: self.decay_constant,
            radius_override,
            exact_ball_cap: self.exact_ball_cap,
            max_budget: self.max_budget,
            best_effort: self.best_effort,
        }
    }
}

/// Parses `0=+,3=-` style pinnings.
pub fn parse_pins(text: &str) -> Result<Vec<(usize, ising_infmax::Spin)>> {
    use ising_infmax::Spin;
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((v, s)) = item.split_once('=') else {
            bail!("pin `{item}` is not of the form vertex=+ or vertex=-");
        };
        let v: usize = v.trim().parse().with_context(|| format!("bad vertex in pin `{item}`"))?;
        let spin = match s.trim() {
            "+" | "+1" | "1" => Spin::Plus,
            "-" | "-1" => Spin::Minus,
            other => bail!("bad spin `{other}` in pin `{item}`"),
        };
        out.push((v, spin));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_parsing() {
        assert_eq!("7".parse::<RadiusSpec>().unwrap(), RadiusSpec::Fixed(7));
        assert_eq!("diameter".parse::<RadiusSpec>().unwrap(), RadiusSpec::Named(RadiusRule::Diameter));
        assert!("-1".parse::<RadiusSpec>().is_err());
    }

    #[test]
    fn precedence() {
        let file: FileConfig = toml::from_str("k = 2\nepsilon = 0.05\nradius = \"diameter\"").unwrap();
        let flags = SolverFlags {
            k: Some(3),
            ..Default::default()
        };
        let s = SolverSettings::resolve(&flags, &file);
        assert_eq!(s.k, 3);
        assert_eq!(s.epsilon, 0.05);
        assert_eq!(s.radius, RadiusSpec::Named(RadiusRule::Diameter));
        assert_eq!(s.decay_constant, 1.0);
        assert!(toml::from_str::<FileConfig>("kk = 2").is_err());
        let fixed: FileConfig = toml::from_str("radius = 4").unwrap();
        assert_eq!(fixed.radius, Some(RadiusSpec::Fixed(4)));
    }

    #[test]
    fn pins() {
        let p = parse_pins("0=+, 3=-").unwrap();
        assert_eq!(p, vec![(0, ising_infmax::Spin::Plus), (3, ising_infmax::Spin::Minus)]);
        assert!(parse_pins("0+").is_err());
        assert!(parse_pins("x=+").is_err());
        assert!(parse_pins("").unwrap().is_empty());
    }
}
