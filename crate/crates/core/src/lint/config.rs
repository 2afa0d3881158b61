use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use super::rules;
use crate::diagnostic::Severity;
use crate::langtag::RegistrySnapshot;

pub const DEFAULT_NOTATIONS: &[&str] = &["ipa", "xsampa", "private"];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown rule id {0:?}")]
    UnknownRule(String),
    #[error("unknown severity {0:?}; expected error, warning or info")]
    UnknownSeverity(String),
    #[error("cannot read rule config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("rule config is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Which rules run and how loudly.
#[derive(Debug, Clone)]
pub struct RuleConfig {
    pub severity_overrides: BTreeMap<String, Severity>,
    pub disabled_rules: BTreeSet<String>,
    pub max_chain_length: usize,
    pub check_registry: bool,
    pub known_notations: BTreeSet<String>,
    /// Snapshot for the registration check; the bundled one when absent.
    pub registry: Option<Arc<RegistrySnapshot>>,
}

impl Default for RuleConfig {
    fn default() -> Self {
        Self {
            severity_overrides: BTreeMap::new(),
            disabled_rules: BTreeSet::new(),
            max_chain_length: 1024,
            check_registry: true,
            known_notations: DEFAULT_NOTATIONS.iter().map(|s| s.to_string()).collect(),
            registry: None,
        }
    }
}

/// On-disk shape of a rule config file. Every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleConfigFile {
    #[serde(default)]
    pub severity_overrides: BTreeMap<String, String>,
    #[serde(default)]
    pub disabled_rules: Vec<String>,
    pub max_chain_length: Option<usize>,
    pub check_registry: Option<bool>,
    /// Added to the default notation list.
    #[serde(default)]
    pub known_notations: Vec<String>,
}

fn known(id: &str) -> Result<(), ConfigError> {
    rules::lookup(id)
        .map(|_| ())
        .ok_or_else(|| ConfigError::UnknownRule(id.to_string()))
}

impl RuleConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let file: RuleConfigFile = serde_json::from_str(text)?;
        let mut cfg = Self::default();
        cfg.apply(file)?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Layer a config file over this config.
    pub fn apply(&mut self, file: RuleConfigFile) -> Result<(), ConfigError> {
        for (id, sev) in file.severity_overrides {
            known(&id)?;
            let sev = Severity::parse(&sev).ok_or(ConfigError::UnknownSeverity(sev))?;
            self.severity_overrides.insert(id, sev);
        }
        for id in file.disabled_rules {
            known(&id)?;
            self.disabled_rules.insert(id);
        }
        if let Some(n) = file.max_chain_length {
            self.max_chain_length = n;
        }
        if let Some(b) = file.check_registry {
            self.check_registry = b;
        }
        self.known_notations.extend(file.known_notations);
        Ok(())
    }

    pub fn override_severity(&mut self, id: &str, sev: Severity) -> Result<(), ConfigError> {
        known(id)?;
        self.severity_overrides.insert(id.to_string(), sev);
        Ok(())
    }

    pub fn disable(&mut self, id: &str) -> Result<(), ConfigError> {
        known(id)?;
        self.disabled_rules.insert(id.to_string());
        Ok(())
    }

    pub fn is_enabled(&self, id: &str) -> bool {
        !self.disabled_rules.contains(id)
    }

    pub fn severity_of(&self, id: &str) -> Severity {
        self.severity_overrides
            .get(id)
            .copied()
            .unwrap_or_else(|| rules::info(id).severity)
    }

    pub fn registry(&self) -> &RegistrySnapshot {
        match &self.registry {
            Some(r) => r,
            None => RegistrySnapshot::bundled(),
        }
    }
}
