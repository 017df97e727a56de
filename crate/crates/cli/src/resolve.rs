//! Input resolution: rule/distribution/configuration specs from files or
//! `gallery:` references, and small argument parsers.

use std::fs;
use std::path::{Path, PathBuf};

use nuca_core::gallery::{build_entry, GalleryEntry};
use nuca_core::io;
use nuca_core::{Alphabet, Configuration, Error, IntervalDomain, RuleDistribution, RuleSet, Symbol};

#[derive(Debug)]
pub enum CliError {
    /// Unusable input: bad files, bad references, bad parameters.
    Input(String),
    /// The requested enumeration exceeds the budget.
    Cap(String),
    /// A shipped invariant failed to re-verify.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Cap(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))
}

/// `LO:HI` with either bound negative.
pub fn parse_interval(spec: &str) -> CliResult<IntervalDomain> {
    let (lo, hi) = spec
        .split_once(':')
        .ok_or_else(|| input_err(format!("expected LO:HI, got `{spec}`")))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| input_err(format!("bad integer `{lo}` in `{spec}`")))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| input_err(format!("bad integer `{hi}` in `{spec}`")))?;
    if lo > hi {
        return Err(input_err(format!("bounds out of order in `{spec}`")));
    }
    Ok(IntervalDomain::new(lo, hi))
}

pub fn parse_glyph(alphabet: &Alphabet, spec: &str) -> CliResult<Symbol> {
    let mut chars = spec.chars();
    match (chars.next(), chars.next()) {
        (Some(g), None) => Ok(alphabet.symbol_of(g)?),
        _ => Err(input_err(format!("expected a single glyph, got `{spec}`"))),
    }
}

/// A resolved distribution plus, for `gallery:` references, the entry it
/// came from (its reference configurations stay addressable).
pub struct DistributionSource {
    pub distribution: RuleDistribution,
    pub entry: Option<GalleryEntry>,
}

pub fn load_ruleset(rule_files: &[PathBuf]) -> CliResult<Option<RuleSet>> {
    if rule_files.is_empty() {
        return Ok(None);
    }
    let mut rules = Vec::new();
    for path in rule_files {
        rules.extend(io::parse_rules(&read_file(path)?)?);
    }
    let alphabet = rules[0].alphabet().clone();
    Ok(Some(RuleSet::new(alphabet, rules)?))
}

pub fn load_distribution(spec: &str, rule_files: &[PathBuf]) -> CliResult<DistributionSource> {
    if let Some(name) = spec.strip_prefix("gallery:") {
        let entry = build_entry(name)?;
        return Ok(DistributionSource {
            distribution: entry.distribution.clone(),
            entry: Some(entry),
        });
    }
    let ruleset = load_ruleset(rule_files)?.ok_or_else(|| {
        input_err("a distribution file needs its rules: pass --rules <file>")
    })?;
    let text = read_file(Path::new(spec))?;
    Ok(DistributionSource {
        distribution: io::parse_distribution(&text, &ruleset)?,
        entry: None,
    })
}

/// `gallery:<entry>/<config>`, `<path>` (single config), or `<path>#<name>`.
pub fn load_configuration(spec: &str) -> CliResult<Configuration> {
    if let Some(reference) = spec.strip_prefix("gallery:") {
        let (entry_name, config_name) = reference.split_once('/').ok_or_else(|| {
            input_err(format!("expected gallery:<entry>/<config>, got `{spec}`"))
        })?;
        let entry = build_entry(entry_name)?;
        return entry
            .configuration(config_name)
            .cloned()
            .ok_or_else(|| input_err(format!("entry `{entry_name}` has no configuration `{config_name}`")));
    }
    let (path, wanted) = match spec.split_once('#') {
        Some((path, name)) => (path, Some(name)),
        None => (spec, None),
    };
    let configs = io::parse_configurations(&read_file(Path::new(path))?)?;
    match wanted {
        Some(name) => configs
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| input_err(format!("{path} has no configuration `{name}`"))),
        None => {
            if configs.len() > 1 {
                return Err(input_err(format!(
                    "{path} holds {} configurations; pick one with `{path}#<name>`",
                    configs.len()
                )));
            }
            Ok(configs.into_iter().next().expect("parser rejects empty files"))
        }
    }
}

pub fn check_alphabets(theta: &RuleDistribution, c: &Configuration) -> CliResult<()> {
    if theta.alphabet() != c.alphabet() {
        return Err(input_err(format!(
            "alphabet mismatch: distribution `{}` uses {}, configuration `{}` uses {}",
            theta.name(),
            theta.alphabet().glyph_string(),
            c.name(),
            c.alphabet().glyph_string()
        )));
    }
    Ok(())
}
