//! Text formats for rules, distributions, configurations and experiment
//! specs, with line-numbered parse errors.

use crate::alphabet::{Alphabet, Symbol};
use crate::config::Configuration;
use crate::distribution::{DistributionKind, RuleDistribution};
use crate::domain::IntervalDomain;
use crate::error::{Error, Result};
use crate::rule::{LocalRule, RuleSet};
use crate::words::{decode_word, word_count, word_code};

fn tokens(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn is_noise(line: &str) -> bool {
    let trimmed = line.trim();
    trimmed.is_empty() || trimmed.starts_with('#')
}

struct RuleHeader {
    name: String,
    radius: usize,
    alphabet: Alphabet,
    line: usize,
}

struct RuleBuilder {
    header: RuleHeader,
    entries: Vec<Option<Symbol>>,
    default: Option<Symbol>,
}

impl RuleBuilder {
    fn new(header: RuleHeader) -> Self {
        let count = word_count(header.alphabet.size(), 2 * header.radius as u64 + 1) as usize;
        RuleBuilder {
            header,
            entries: vec![None; count],
            default: None,
        }
    }

    fn finish(self) -> Result<LocalRule> {
        let missing = self.entries.iter().filter(|e| e.is_none()).count();
        if missing > 0 && self.default.is_none() {
            return Err(Error::parse(
                self.header.line,
                format!(
                    "rule `{}` leaves {missing} windows unlisted and has no default",
                    self.header.name
                ),
            ));
        }
        let default = self.default.unwrap_or(0);
        let table = self
            .entries
            .into_iter()
            .map(|e| e.unwrap_or(default))
            .collect();
        LocalRule::from_table(self.header.name, &self.header.alphabet, self.header.radius, table)
    }
}

/// Parses one or more `rule` sections.
pub fn parse_rules(text: &str) -> Result<Vec<LocalRule>> {
    let mut rules = Vec::new();
    let mut current: Option<RuleBuilder> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if is_noise(raw) {
            continue;
        }
        let toks = tokens(raw);
        match toks[0] {
            "rule" => {
                if let Some(builder) = current.take() {
                    rules.push(builder.finish()?);
                }
                if toks.len() != 6 || toks[2] != "radius" || toks[4] != "alphabet" {
                    return Err(Error::parse(
                        line_no,
                        "expected `rule <name> radius <r> alphabet <glyphs>`",
                    ));
                }
                let radius: usize = toks[3]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad radius `{}`", toks[3])))?;
                let alphabet = Alphabet::parse(toks[5])
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                current = Some(RuleBuilder::new(RuleHeader {
                    name: toks[1].to_string(),
                    radius,
                    alphabet,
                    line: line_no,
                }));
            }
            "default" => {
                let builder = current
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, "table row before any `rule` header"))?;
                if toks.len() != 3 || toks[1] != "->" {
                    return Err(Error::parse(line_no, "expected `default -> <symbol>`"));
                }
                let sym = parse_symbol(toks[2], &builder.header.alphabet, line_no)?;
                if builder.default.replace(sym).is_some() {
                    return Err(Error::parse(line_no, "duplicate `default` row"));
                }
            }
            window if window.starts_with('"') => {
                let builder = current
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, "table row before any `rule` header"))?;
                if toks.len() != 3 || toks[1] != "->" {
                    return Err(Error::parse(line_no, "expected `\"<window>\" -> <symbol>`"));
                }
                let quoted = window
                    .strip_prefix('"')
                    .and_then(|w| w.strip_suffix('"'))
                    .ok_or_else(|| Error::parse(line_no, "window must be quoted"))?;
                let word = builder
                    .header
                    .alphabet
                    .read(quoted)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                if word.len() != 2 * builder.header.radius + 1 {
                    return Err(Error::parse(
                        line_no,
                        format!(
                            "window `{quoted}` has length {}, radius {} needs {}",
                            word.len(),
                            builder.header.radius,
                            2 * builder.header.radius + 1
                        ),
                    ));
                }
                let sym = parse_symbol(toks[2], &builder.header.alphabet, line_no)?;
                let code = word_code(&word, builder.header.alphabet.size());
                if builder.entries[code].replace(sym).is_some() {
                    return Err(Error::parse(line_no, format!("duplicate window `{quoted}`")));
                }
            }
            other => {
                return Err(Error::parse(line_no, format!("unexpected token `{other}`")));
            }
        }
    }
    if let Some(builder) = current.take() {
        rules.push(builder.finish()?);
    }
    if rules.is_empty() {
        return Err(Error::parse(1, "no `rule` sections found"));
    }
    Ok(rules)
}

fn parse_symbol(tok: &str, alphabet: &Alphabet, line: usize) -> Result<Symbol> {
    let mut chars = tok.chars();
    match (chars.next(), chars.next()) {
        (Some(g), None) => alphabet
            .symbol_of(g)
            .map_err(|e| Error::parse(line, e.to_string())),
        _ => Err(Error::parse(line, format!("expected a single glyph, got `{tok}`"))),
    }
}

/// Writes rule sections with full tables in lexicographic window order.
pub fn write_rules(rules: &[LocalRule]) -> String {
    let mut out = String::new();
    for rule in rules {
        let a = rule.alphabet();
        out.push_str(&format!(
            "rule {} radius {} alphabet {}\n",
            rule.name(),
            rule.radius(),
            a.glyph_string()
        ));
        for (code, &sym) in rule.table().iter().enumerate() {
            let window = decode_word(code, a.size(), rule.window_len());
            out.push_str(&format!("\"{}\" -> {}\n", a.render(&window), a.glyph(sym)));
        }
        out.push('\n');
    }
    out
}

fn parse_name_word(tok: &str) -> Vec<String> {
    if tok == "." {
        Vec::new()
    } else {
        tok.split(',').map(str::to_string).collect()
    }
}

/// Parses a single `distribution` section against a rule set.
pub fn parse_distribution(text: &str, ruleset: &RuleSet) -> Result<RuleDistribution> {
    let mut name: Option<(String, usize)> = None;
    let mut kind: Option<DistributionKind> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if is_noise(raw) {
            continue;
        }
        let toks = tokens(raw);
        match toks[0] {
            "distribution" => {
                if toks.len() != 2 {
                    return Err(Error::parse(line_no, "expected `distribution <name>`"));
                }
                if name.is_some() {
                    return Err(Error::parse(line_no, "more than one `distribution` section"));
                }
                name = Some((toks[1].to_string(), line_no));
            }
            "kind" => {
                if name.is_none() {
                    return Err(Error::parse(line_no, "`kind` before `distribution` header"));
                }
                if kind.is_some() {
                    return Err(Error::parse(line_no, "more than one `kind` line"));
                }
                kind = Some(parse_kind(&toks, line_no)?);
            }
            other => return Err(Error::parse(line_no, format!("unexpected token `{other}`"))),
        }
    }
    let (name, header_line) = name.ok_or_else(|| Error::parse(1, "no `distribution` section found"))?;
    let kind = kind.ok_or_else(|| Error::parse(header_line, "missing `kind` line"))?;
    RuleDistribution::new(name, ruleset.clone(), kind)
}

fn parse_kind(toks: &[&str], line: usize) -> Result<DistributionKind> {
    match toks.get(1) {
        Some(&"uniform") => {
            if toks.len() != 4 || toks[2] != "rule" {
                return Err(Error::parse(line, "expected `kind uniform rule <name>`"));
            }
            Ok(DistributionKind::Uniform {
                rule: toks[3].to_string(),
            })
        }
        Some(&"two_sided") => {
            if toks.len() != 10
                || toks[2] != "left"
                || toks[4] != "center"
                || toks[6] != "anchor"
                || toks[8] != "right"
            {
                return Err(Error::parse(
                    line,
                    "expected `kind two_sided left <word> center <word-or-.> anchor <int> right <word>`",
                ));
            }
            let anchor: i64 = toks[7]
                .parse()
                .map_err(|_| Error::parse(line, format!("bad anchor `{}`", toks[7])))?;
            Ok(DistributionKind::TwoSided {
                left: parse_name_word(toks[3]),
                center: parse_name_word(toks[5]),
                anchor,
                right: parse_name_word(toks[9]),
            })
        }
        Some(&"mirrored_pyramid") => {
            if toks.len() != 8 || toks[2] != "fr" || toks[4] != "g" || toks[6] != "fl" {
                return Err(Error::parse(
                    line,
                    "expected `kind mirrored_pyramid fr <name> g <name> fl <name>`",
                ));
            }
            Ok(DistributionKind::MirroredPyramid {
                fr: toks[3].to_string(),
                g: toks[5].to_string(),
                fl: toks[7].to_string(),
            })
        }
        _ => Err(Error::parse(line, "unknown distribution kind")),
    }
}

fn name_word(names: &[String]) -> String {
    if names.is_empty() {
        ".".to_string()
    } else {
        names.join(",")
    }
}

pub fn write_distribution(dist: &RuleDistribution) -> String {
    let kind = match dist.kind() {
        DistributionKind::Uniform { rule } => format!("kind uniform rule {rule}"),
        DistributionKind::TwoSided {
            left,
            center,
            anchor,
            right,
        } => format!(
            "kind two_sided left {} center {} anchor {} right {}",
            name_word(&left),
            name_word(&center),
            anchor,
            name_word(&right)
        ),
        DistributionKind::MirroredPyramid { fr, g, fl } => {
            format!("kind mirrored_pyramid fr {fr} g {g} fl {fl}")
        }
    };
    format!("distribution {}\n{kind}\n", dist.name())
}

fn parse_glyph_word(tok: &str, alphabet: &Alphabet, line: usize) -> Result<Vec<Symbol>> {
    if tok == "." {
        Ok(Vec::new())
    } else {
        alphabet
            .read(tok)
            .map_err(|e| Error::parse(line, e.to_string()))
    }
}

/// Parses one or more `config` sections.
pub fn parse_configurations(text: &str) -> Result<Vec<Configuration>> {
    let mut configs = Vec::new();
    let mut header: Option<(String, Alphabet, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if is_noise(raw) {
            continue;
        }
        let toks = tokens(raw);
        match toks[0] {
            "config" => {
                if let Some((name, _, line)) = header.take() {
                    return Err(Error::parse(
                        line,
                        format!("config `{name}` has no `kind` line"),
                    ));
                }
                if toks.len() != 4 || toks[2] != "alphabet" {
                    return Err(Error::parse(line_no, "expected `config <name> alphabet <glyphs>`"));
                }
                let alphabet = Alphabet::parse(toks[3])
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                header = Some((toks[1].to_string(), alphabet, line_no));
            }
            "kind" => {
                let (name, alphabet, _) = header
                    .take()
                    .ok_or_else(|| Error::parse(line_no, "`kind` before `config` header"))?;
                if toks.len() != 10
                    || toks[1] != "two_sided"
                    || toks[2] != "left"
                    || toks[4] != "center"
                    || toks[6] != "anchor"
                    || toks[8] != "right"
                {
                    return Err(Error::parse(
                        line_no,
                        "expected `kind two_sided left <word> center <word-or-.> anchor <int> right <word>`",
                    ));
                }
                let anchor: i64 = toks[7]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad anchor `{}`", toks[7])))?;
                let left = parse_glyph_word(toks[3], &alphabet, line_no)?;
                let center = parse_glyph_word(toks[5], &alphabet, line_no)?;
                let right = parse_glyph_word(toks[9], &alphabet, line_no)?;
                configs.push(Configuration::two_sided(name, alphabet, left, center, anchor, right)?);
            }
            other => return Err(Error::parse(line_no, format!("unexpected token `{other}`"))),
        }
    }
    if let Some((name, _, line)) = header {
        return Err(Error::parse(line, format!("config `{name}` has no `kind` line")));
    }
    if configs.is_empty() {
        return Err(Error::parse(1, "no `config` sections found"));
    }
    Ok(configs)
}

fn glyph_word(word: &[Symbol], alphabet: &Alphabet) -> String {
    if word.is_empty() {
        ".".to_string()
    } else {
        alphabet.render(word)
    }
}

pub fn write_configurations(configs: &[Configuration]) -> String {
    let mut out = String::new();
    for c in configs {
        let a = c.alphabet();
        out.push_str(&format!("config {} alphabet {}\n", c.name(), a.glyph_string()));
        out.push_str(&format!(
            "kind two_sided left {} center {} anchor {} right {}\n\n",
            glyph_word(c.left_period(), a),
            glyph_word(c.center(), a),
            c.anchor(),
            glyph_word(c.right_period(), a)
        ));
    }
    out
}

/// An experiment spec: distribution and base configuration referenced by
/// name, a cylinder domain `D`, an observation window `E`, probe
/// backgrounds, and a time bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub name: String,
    pub distribution: String,
    pub base: String,
    pub domain: IntervalDomain,
    pub observed: IntervalDomain,
    /// Glyph words; resolved against the distribution's alphabet at run time.
    pub probes: Vec<String>,
    pub t_max: u32,
}

pub fn parse_experiment(text: &str) -> Result<ExperimentSpec> {
    let mut name = None;
    let mut distribution = None;
    let mut base = None;
    let mut domain = None;
    let mut observed = None;
    let mut probes = None;
    let mut t_max = None;
    let parse_interval = |toks: &[&str], line: usize| -> Result<IntervalDomain> {
        if toks.len() != 3 {
            return Err(Error::parse(line, "expected `<key> <lo> <hi>`"));
        }
        let lo: i64 = toks[1]
            .parse()
            .map_err(|_| Error::parse(line, format!("bad integer `{}`", toks[1])))?;
        let hi: i64 = toks[2]
            .parse()
            .map_err(|_| Error::parse(line, format!("bad integer `{}`", toks[2])))?;
        if lo > hi {
            return Err(Error::parse(line, format!("bounds out of order: {lo} > {hi}")));
        }
        Ok(IntervalDomain::new(lo, hi))
    };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if is_noise(raw) {
            continue;
        }
        let toks = tokens(raw);
        match toks[0] {
            "experiment" if toks.len() == 2 => name = Some(toks[1].to_string()),
            "distribution" if toks.len() == 2 => distribution = Some(toks[1].to_string()),
            "base" if toks.len() == 2 => base = Some(toks[1].to_string()),
            "D" => domain = Some(parse_interval(&toks, line_no)?),
            "E" => observed = Some(parse_interval(&toks, line_no)?),
            "probes" if toks.len() == 2 => {
                probes = Some(toks[1].split(',').map(str::to_string).collect())
            }
            "tmax" if toks.len() == 2 => {
                t_max = Some(toks[1].parse().map_err(|_| {
                    Error::parse(line_no, format!("bad time bound `{}`", toks[1]))
                })?)
            }
            other => return Err(Error::parse(line_no, format!("unexpected line `{other} …`"))),
        }
    }
    let missing = |what: &str| Error::parse(1, format!("experiment spec is missing `{what}`"));
    Ok(ExperimentSpec {
        name: name.ok_or_else(|| missing("experiment"))?,
        distribution: distribution.ok_or_else(|| missing("distribution"))?,
        base: base.ok_or_else(|| missing("base"))?,
        domain: domain.ok_or_else(|| missing("D"))?,
        observed: observed.ok_or_else(|| missing("E"))?,
        probes: probes.ok_or_else(|| missing("probes"))?,
        t_max: t_max.ok_or_else(|| missing("tmax"))?,
    })
}
