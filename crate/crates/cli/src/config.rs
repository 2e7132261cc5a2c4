use serde::Serialize;

use nilcoh_core::cecohomology::DEFAULT_DIMENSION_CAP;
use nilcoh_core::unipotent::{DEFAULT_AUGMENTATION_CAP, DEFAULT_GROUP_CAP};
use nilcoh_core::weyl::DEFAULT_WEYL_CAP;

pub const CAP_VAR: &str = "NILCOH_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Roots,
    Weyl,
    Nilpotent,
    Cohomology,
    Kostant,
    Multiplicity,
    Specseq,
    Unipotent,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Roots => "roots",
            Command::Weyl => "weyl",
            Command::Nilpotent => "nilpotent",
            Command::Cohomology => "cohomology",
            Command::Kostant => "kostant",
            Command::Multiplicity => "multiplicity",
            Command::Specseq => "specseq",
            Command::Unipotent => "unipotent",
        }
    }
}

/// Size limits; `NILCOH_CAP` overrides the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest Lie algebra dimension for an exterior algebra.
    pub dim: usize,
    /// Largest group order for subgroup enumeration.
    pub group: u128,
    /// Largest group order for the augmentation engine.
    pub augmentation: u128,
    /// Largest Weyl group order.
    pub weyl: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            dim: DEFAULT_DIMENSION_CAP,
            group: DEFAULT_GROUP_CAP,
            augmentation: DEFAULT_AUGMENTATION_CAP,
            weyl: DEFAULT_WEYL_CAP,
        }
    }
}

impl Caps {
    /// Parses `NILCOH_CAP`: a bare number raises both group caps, otherwise
    /// a comma-separated list of `dim=`, `group=`, `augmentation=`, `weyl=`.
    pub fn parse(spec: &str) -> Result<Caps, String> {
        let mut caps = Caps::default();
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(caps);
        }
        if let Ok(n) = spec.parse::<u128>() {
            caps.group = n;
            caps.augmentation = n;
            return Ok(caps);
        }
        for part in spec.split(',') {
            let (key, value) =
                part.split_once('=').ok_or_else(|| format!("{CAP_VAR}: expected key=value, got {part:?}"))?;
            let bad = || format!("{CAP_VAR}: {key} needs a non-negative integer, got {value:?}");
            match key.trim() {
                "dim" => caps.dim = value.trim().parse().map_err(|_| bad())?,
                "group" => caps.group = value.trim().parse().map_err(|_| bad())?,
                "augmentation" => caps.augmentation = value.trim().parse().map_err(|_| bad())?,
                "weyl" => caps.weyl = value.trim().parse().map_err(|_| bad())?,
                other => return Err(format!("{CAP_VAR}: unknown cap {other:?}")),
            }
        }
        Ok(caps)
    }

    pub fn from_env() -> Result<Caps, String> {
        match std::env::var(CAP_VAR) {
            Ok(s) => Caps::parse(&s),
            Err(std::env::VarError::NotPresent) => Ok(Caps::default()),
            Err(e) => Err(format!("{CAP_VAR}: {e}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

/// The resolved configuration, embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub type_label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nmax: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub galois: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pages: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verify: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<usize>>,
    pub format: Format,
    pub jobs: Option<usize>,
    pub caps: Caps,
}

impl RunConfig {
    pub fn new(command: Command, format: Format, jobs: Option<usize>, caps: Caps) -> Self {
        RunConfig {
            command,
            type_label: None,
            rank: None,
            d: None,
            p: None,
            k: None,
            degree: None,
            nmax: None,
            galois: None,
            oracle: None,
            pages: None,
            input: None,
            verify: Vec::new(),
            target: None,
            format,
            jobs,
            caps,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_parsing() {
        assert_eq!(Caps::parse("").unwrap(), Caps::default());
        let c = Caps::parse("5000").unwrap();
        assert_eq!((c.group, c.augmentation, c.dim), (5000, 5000, DEFAULT_DIMENSION_CAP));
        let c = Caps::parse("dim=9, weyl=100").unwrap();
        assert_eq!((c.dim, c.weyl, c.group), (9, 100, DEFAULT_GROUP_CAP));
        assert!(Caps::parse("size=3").is_err());
        assert!(Caps::parse("dim=x").is_err());
        assert!(Caps::parse("dim").is_err());
    }
}
