//! Settings resolution: flags, then `NAMBU_FORGE_*` variables (both handled
//! by clap), then the TOML config file, then built-in defaults.

use std::path::Path;

use serde::Deserialize;

use crate::error::CliError;

pub const DEFAULT_NU_ORDER: u32 = 8;
pub const DEFAULT_T_ORDER: usize = 6;

#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    #[serde(alias = "nu_order")]
    pub nu_order: Option<u32>,
    #[serde(alias = "t_order")]
    pub t_order: Option<usize>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Values as given on the command line or in the environment.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub nu_order: Option<u32>,
    pub t_order: Option<usize>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub nu_order: u32,
    pub t_order: usize,
    pub seed: u64,
    pub jobs: usize,
}

pub fn resolve(over: &Overrides, file: Option<&FileConfig>) -> Settings {
    let empty = FileConfig::default();
    let file = file.unwrap_or(&empty);
    Settings {
        nu_order: over.nu_order.or(file.nu_order).unwrap_or(DEFAULT_NU_ORDER),
        t_order: over.t_order.or(file.t_order).unwrap_or(DEFAULT_T_ORDER),
        seed: over.seed.or(file.seed).unwrap_or(0),
        jobs: over.jobs.or(file.jobs).unwrap_or(1).max(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let file: FileConfig = toml::from_str("nu-order = 4\nt_order = 3\nseed = 9").unwrap();
        let over = Overrides {
            nu_order: Some(10),
            ..Overrides::default()
        };
        let s = resolve(&over, Some(&file));
        assert_eq!(s.nu_order, 10);
        assert_eq!(s.t_order, 3);
        assert_eq!(s.seed, 9);
        assert_eq!(s.jobs, 1);
        let d = resolve(&Overrides::default(), None);
        assert_eq!((d.nu_order, d.t_order), (DEFAULT_NU_ORDER, DEFAULT_T_ORDER));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }
}
